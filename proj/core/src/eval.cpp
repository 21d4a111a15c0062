#include "rsm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "rsm/math.hpp"
#include "rsm/rng.hpp"

namespace rsm {

std::span<const double> default_recall_levels() {
  static const double levels[] = {0.001, 0.002, 0.005, 0.01, 0.02,
                                  0.05,  0.1,   0.2,   0.5,  1.0};
  return levels;
}

FeatureMatrix extract_features(const RsmParams& params, const Corpus& corpus,
                               const TransformFlags& trained_with) {
  if (!(corpus.transforms == trained_with)) {
    throw std::runtime_error(
        "corpus transforms do not match the transforms the model was trained with");
  }
  if (corpus.vocab_size != params.vocab()) {
    throw std::runtime_error("corpus vocabulary does not match the model");
  }
  FeatureMatrix fm;
  fm.rows.resize(static_cast<Eigen::Index>(corpus.num_docs()), params.hidden());
  for (std::size_t i = 0; i < corpus.num_docs(); ++i) {
    fm.rows.row(static_cast<Eigen::Index>(i)) =
        hidden_posterior(params, corpus.docs[i]).probs.transpose();
  }
  fm.labels = corpus.labels;
  return fm;
}

RetrievalReport retrieve(const FeatureMatrix& queries, const FeatureMatrix& index,
                         std::span<const double> recall_levels) {
  if (index.size() == 0) throw std::runtime_error("retrieval index is empty");
  if (queries.rows.cols() != index.rows.cols()) {
    throw std::runtime_error("query and index feature widths differ");
  }
  if (queries.labels.size() != queries.size() || index.labels.size() != index.size()) {
    throw std::runtime_error("retrieval requires labels on both sides");
  }

  const auto n_index = static_cast<Eigen::Index>(index.size());
  Eigen::VectorXd index_norms(n_index);
  for (Eigen::Index i = 0; i < n_index; ++i) index_norms[i] = index.rows.row(i).norm();

  RetrievalReport report;
  report.num_queries = queries.size();
  report.pr_curve.resize(recall_levels.size());
  for (std::size_t g = 0; g < recall_levels.size(); ++g) {
    report.pr_curve[g].recall = recall_levels[g];
  }
  std::vector<double> interp_sum(recall_levels.size(), 0.0);

  double ap_sum = 0.0;
  std::vector<Eigen::Index> ranking(static_cast<std::size_t>(n_index));
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const Eigen::RowVectorXd& row = queries.rows.row(static_cast<Eigen::Index>(q));
    const double qnorm = row.norm();
    Eigen::VectorXd sims = index.rows * row.transpose();
    for (Eigen::Index i = 0; i < n_index; ++i) {
      const double denom = qnorm * index_norms[i];
      sims[i] = denom > 0.0 ? sims[i] / denom : 0.0;
    }
    std::iota(ranking.begin(), ranking.end(), 0);
    std::stable_sort(ranking.begin(), ranking.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return sims[a] > sims[b]; });

    const int label = queries.labels[q];
    long long total_relevant = 0;
    for (Eigen::Index i = 0; i < n_index; ++i) {
      if (index.labels[static_cast<std::size_t>(i)] == label) ++total_relevant;
    }

    double ap = 0.0;
    long long hits = 0;
    // Max precision over the tail of the ranking, per recall level.
    std::vector<double> recall_at(ranking.size());
    std::vector<double> precision_at(ranking.size());
    for (std::size_t r = 0; r < ranking.size(); ++r) {
      if (index.labels[static_cast<std::size_t>(ranking[r])] == label) {
        ++hits;
        ap += static_cast<double>(hits) / static_cast<double>(r + 1);
      }
      recall_at[r] = total_relevant > 0
                         ? static_cast<double>(hits) / static_cast<double>(total_relevant)
                         : 0.0;
      precision_at[r] = static_cast<double>(hits) / static_cast<double>(r + 1);
    }
    if (total_relevant > 0) ap_sum += ap / static_cast<double>(total_relevant);

    for (std::size_t g = 0; g < recall_levels.size(); ++g) {
      double best = 0.0;
      for (std::size_t r = 0; r < ranking.size(); ++r) {
        if (recall_at[r] >= recall_levels[g]) best = std::max(best, precision_at[r]);
      }
      interp_sum[g] += best;
    }
  }

  if (report.num_queries > 0) {
    report.map = ap_sum / static_cast<double>(report.num_queries);
    for (std::size_t g = 0; g < recall_levels.size(); ++g) {
      report.pr_curve[g].precision = interp_sum[g] / static_cast<double>(report.num_queries);
    }
  }
  return report;
}

namespace {

Eigen::VectorXd class_log_probs(const Classifier& cls, const Eigen::RowVectorXd& x) {
  Eigen::VectorXd logits = cls.W * x.transpose() + cls.bias;
  const double lse = logsumexp(logits);
  logits.array() -= lse;
  return logits;
}

void check_labels(const FeatureMatrix& data, int classes) {
  for (int label : data.labels) {
    if (label < 0 || label >= classes) {
      throw std::runtime_error("label " + std::to_string(label) +
                               " outside [0, " + std::to_string(classes) + ")");
    }
  }
}

}  // namespace

double classifier_loss(const Classifier& cls, const FeatureMatrix& data, double l2) {
  if (data.size() == 0) throw std::runtime_error("empty dataset");
  check_labels(data, static_cast<int>(cls.bias.size()));
  double loss = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Eigen::VectorXd logp =
        class_log_probs(cls, data.rows.row(static_cast<Eigen::Index>(i)));
    loss -= logp[data.labels[i]];
  }
  loss /= static_cast<double>(data.size());
  loss += 0.5 * l2 * (cls.W.squaredNorm() + cls.bias.squaredNorm());
  return loss;
}

Classifier classifier_gradient(const Classifier& cls, const FeatureMatrix& data,
                               double l2) {
  if (data.size() == 0) throw std::runtime_error("empty dataset");
  check_labels(data, static_cast<int>(cls.bias.size()));
  Classifier grad;
  grad.W = Eigen::MatrixXd::Zero(cls.W.rows(), cls.W.cols());
  grad.bias = Eigen::VectorXd::Zero(cls.bias.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Eigen::RowVectorXd& x = data.rows.row(static_cast<Eigen::Index>(i));
    Eigen::VectorXd p = class_log_probs(cls, x).array().exp();
    p[data.labels[i]] -= 1.0;
    grad.W += p * x;
    grad.bias += p;
  }
  const double inv = 1.0 / static_cast<double>(data.size());
  grad.W = inv * grad.W + l2 * cls.W;
  grad.bias = inv * grad.bias + l2 * cls.bias;
  return grad;
}

Classifier train_classifier(const FeatureMatrix& train, int classes, double l2,
                            int epochs, double lr, std::uint64_t seed) {
  if (classes < 2) throw std::runtime_error("classifier needs at least two classes");
  if (train.size() == 0) throw std::runtime_error("empty training set");
  if (train.labels.size() != train.size()) {
    throw std::runtime_error("training features lack aligned labels");
  }
  check_labels(train, classes);
  if (std::set<int>(train.labels.begin(), train.labels.end()).size() < 2) {
    throw std::runtime_error("training set contains a single class");
  }

  Classifier cls;
  cls.W = Eigen::MatrixXd::Zero(classes, train.rows.cols());
  cls.bias = Eigen::VectorXd::Zero(classes);

  const std::size_t n = train.size();
  const std::size_t batch = std::min<std::size_t>(64, n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= epochs; ++epoch) {
    Rng rng(derive_seed(seed, 0xC1A5, static_cast<std::uint64_t>(epoch)));
    shuffle(order, rng);
    for (std::size_t lo = 0; lo < n; lo += batch) {
      const std::size_t hi = std::min(n, lo + batch);
      Eigen::MatrixXd gw = Eigen::MatrixXd::Zero(classes, train.rows.cols());
      Eigen::VectorXd gb = Eigen::VectorXd::Zero(classes);
      for (std::size_t i = lo; i < hi; ++i) {
        const Eigen::RowVectorXd& x = train.rows.row(static_cast<Eigen::Index>(order[i]));
        Eigen::VectorXd p = class_log_probs(cls, x).array().exp();
        p[train.labels[order[i]]] -= 1.0;
        gw += p * x;
        gb += p;
      }
      const double inv = 1.0 / static_cast<double>(hi - lo);
      cls.W -= lr * (inv * gw + l2 * cls.W);
      cls.bias -= lr * (inv * gb + l2 * cls.bias);
    }
  }
  return cls;
}

double classify_accuracy(const Classifier& cls, const FeatureMatrix& test) {
  if (test.size() == 0) throw std::runtime_error("empty test set");
  if (test.labels.size() != test.size()) {
    throw std::runtime_error("test features lack aligned labels");
  }
  long long correct = 0;
  for (std::size_t i = 0; i < test.size(); ++i) {
    Eigen::Index argmax = 0;
    (cls.W * test.rows.row(static_cast<Eigen::Index>(i)).transpose() + cls.bias)
        .maxCoeff(&argmax);
    if (static_cast<int>(argmax) == test.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

}  // namespace rsm
