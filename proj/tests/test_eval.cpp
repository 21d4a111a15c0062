#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rsm/eval.hpp"
#include "rsm/synthetic.hpp"

using rsm::Classifier;
using rsm::Corpus;
using rsm::FeatureMatrix;
using rsm::RsmParams;

namespace {

RsmParams zero_params(int vocab, int hidden) {
  RsmParams p;
  p.W = Eigen::MatrixXd::Zero(hidden, vocab);
  p.b = Eigen::VectorXd::Zero(vocab);
  p.a = Eigen::VectorXd::Zero(hidden);
  return p;
}

FeatureMatrix features_of(const std::vector<std::vector<double>>& rows,
                          const std::vector<int>& labels) {
  FeatureMatrix f;
  f.rows.resize(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      f.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  f.labels = labels;
  return f;
}

}  // namespace

TEST_CASE("feature extraction") {
  Corpus corpus = rsm::make_unigram_corpus(4, 6, 3, 6, 91);
  SUBCASE("zero parameters give flat 0.5 features") {
    const FeatureMatrix f = rsm::extract_features(zero_params(4, 3), corpus, {});
    CHECK(f.rows.rows() == 6);
    CHECK(f.rows.cols() == 3);
    CHECK((f.rows.array() == 0.5).all());
  }
  SUBCASE("labels ride along") {
    corpus.labels = {0, 1, 0, 1, 0, 1};
    const FeatureMatrix f = rsm::extract_features(zero_params(4, 3), corpus, {});
    CHECK(f.labels == corpus.labels);
  }
  SUBCASE("transform mismatch is rejected") {
    rsm::TransformFlags trained;
    trained.log_count = true;
    CHECK_THROWS(rsm::extract_features(zero_params(4, 3), corpus, trained));
  }
  SUBCASE("vocabulary mismatch is rejected") {
    CHECK_THROWS(rsm::extract_features(zero_params(5, 3), corpus, {}));
  }
}

TEST_CASE("retrieval on perfectly separated features") {
  const FeatureMatrix index = features_of(
      {{1.0, 0.0}, {0.99, 0.01}, {0.0, 1.0}, {0.01, 0.99}}, {0, 0, 1, 1});
  const FeatureMatrix queries = features_of({{0.98, 0.02}, {0.02, 0.98}}, {0, 1});
  const auto report = rsm::retrieve(queries, index);
  CHECK(report.map == doctest::Approx(1.0));
  CHECK(report.num_queries == 2);
  for (const auto& pt : report.pr_curve) CHECK(pt.precision == doctest::Approx(1.0));
}

TEST_CASE("retrieval hand-worked three-document case") {
  // Ranking for the query: exact match (hit), off-topic (miss), hit.
  // AP = (1/1 + 2/3) / 2; interpolated precision is 1 at recall 0.5 and
  // 2/3 at recall 1.
  const FeatureMatrix index =
      features_of({{1.0, 0.0}, {0.8, 0.6}, {0.6, 0.8}}, {0, 1, 0});
  const FeatureMatrix queries = features_of({{1.0, 0.0}}, {0});
  const std::vector<double> levels{0.5, 1.0};
  const auto report = rsm::retrieve(queries, index, levels);
  CHECK(report.map == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  REQUIRE(report.pr_curve.size() == 2);
  CHECK(report.pr_curve[0].recall == 0.5);
  CHECK(report.pr_curve[0].precision == doctest::Approx(1.0));
  CHECK(report.pr_curve[1].recall == 1.0);
  CHECK(report.pr_curve[1].precision == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("cosine ranking ignores vector scale") {
  const FeatureMatrix index =
      features_of({{1.0, 0.0}, {0.8, 0.6}, {0.6, 0.8}}, {0, 1, 0});
  const FeatureMatrix q1 = features_of({{1.0, 0.0}}, {0});
  const FeatureMatrix q2 = features_of({{10.0, 0.0}}, {0});
  CHECK(rsm::retrieve(q1, index).map == doctest::Approx(rsm::retrieve(q2, index).map));
}

TEST_CASE("queries with no relevant documents score zero") {
  const FeatureMatrix index = features_of({{1.0, 0.0}, {0.0, 1.0}}, {0, 1});
  const FeatureMatrix queries = features_of({{1.0, 0.0}}, {7});
  const auto report = rsm::retrieve(queries, index);
  CHECK(report.map == 0.0);
  for (const auto& pt : report.pr_curve) CHECK(pt.precision == 0.0);
}

TEST_CASE("zero-norm queries fall back to index order") {
  // All similarities are 0, so ties keep index order and the relevant doc
  // sits at rank 2.
  const FeatureMatrix index = features_of({{1.0, 0.0}, {0.9, 0.1}}, {1, 0});
  const FeatureMatrix queries = features_of({{0.0, 0.0}}, {0});
  const auto report = rsm::retrieve(queries, index);
  CHECK(report.map == doctest::Approx(0.5));
}

TEST_CASE("classifier gradient matches finite differences") {
  Classifier cls;
  rsm::Rng rng(7);
  cls.W.resize(2, 3);
  cls.bias.resize(2);
  for (int i = 0; i < 2; ++i) {
    cls.bias[i] = rng.next_double() - 0.5;
    for (int j = 0; j < 3; ++j) cls.W(i, j) = rng.next_double() - 0.5;
  }
  FeatureMatrix data = features_of({{0.2, 0.7, 0.1},
                                    {0.9, 0.3, 0.5},
                                    {0.4, 0.4, 0.8},
                                    {0.6, 0.1, 0.2},
                                    {0.3, 0.9, 0.6}},
                                   {0, 1, 0, 1, 1});
  const double l2 = 0.3;
  const Classifier g = rsm::classifier_gradient(cls, data, l2);
  const double h = 1e-6;
  double max_gap = 0.0;
  const auto probe = [&](double& slot, double analytic) {
    const double saved = slot;
    slot = saved + h;
    const double up = rsm::classifier_loss(cls, data, l2);
    slot = saved - h;
    const double down = rsm::classifier_loss(cls, data, l2);
    slot = saved;
    max_gap = std::max(max_gap, std::abs((up - down) / (2.0 * h) - analytic));
  };
  for (int i = 0; i < 2; ++i) {
    probe(cls.bias[i], g.bias[i]);
    for (int j = 0; j < 3; ++j) probe(cls.W(i, j), g.W(i, j));
  }
  CHECK(max_gap < 1e-6);
}

TEST_CASE("training separates linearly separable classes") {
  std::vector<std::vector<double>> rows;
  std::vector<int> labels;
  rsm::Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    const int c = i % 2;
    const double jitter = 0.05 * rng.next_double();
    if (c == 0) {
      rows.push_back({0.9 - jitter, 0.1 + jitter});
    } else {
      rows.push_back({0.1 + jitter, 0.9 - jitter});
    }
    labels.push_back(c);
  }
  const FeatureMatrix data = features_of(rows, labels);
  const Classifier cls = rsm::train_classifier(data, 2, 1e-4, 200, 0.5, 3);
  CHECK(rsm::classify_accuracy(cls, data) == doctest::Approx(1.0));
  const Classifier zero{Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2)};
  CHECK(rsm::classifier_loss(cls, data, 1e-4) <
        rsm::classifier_loss(zero, data, 1e-4));
}

TEST_CASE("crushing regularization shrinks the weights to zero") {
  const FeatureMatrix data =
      features_of({{0.9, 0.1}, {0.1, 0.9}, {0.8, 0.2}, {0.2, 0.8}}, {0, 1, 0, 1});
  // lr * l2 = 1 keeps the decay step stable; the stationary weights are
  // bounded by lr * |cross-entropy gradient| <= 1e-4.
  const Classifier cls = rsm::train_classifier(data, 2, 1e4, 100, 1e-4, 3);
  CHECK(cls.W.cwiseAbs().maxCoeff() < 1e-3);
  CHECK(cls.bias.cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("accuracy is an exact fraction of correct predictions") {
  Classifier cls;
  cls.W.resize(2, 2);
  cls.W << 1.0, 0.0, 0.0, 1.0;
  cls.bias = Eigen::VectorXd::Zero(2);
  const FeatureMatrix test = features_of(
      {{0.9, 0.1}, {0.2, 0.8}, {0.7, 0.3}, {0.6, 0.4}}, {0, 1, 1, 0});
  CHECK(rsm::classify_accuracy(cls, test) == doctest::Approx(0.75));
}

TEST_CASE("classifier input validation") {
  SUBCASE("single-class training set") {
    const FeatureMatrix data = features_of({{0.1, 0.2}, {0.3, 0.4}}, {0, 0});
    CHECK_THROWS(rsm::train_classifier(data, 2, 0.01, 10, 0.1, 1));
  }
  SUBCASE("fewer than two classes requested") {
    const FeatureMatrix data = features_of({{0.1, 0.2}, {0.3, 0.4}}, {0, 1});
    CHECK_THROWS(rsm::train_classifier(data, 1, 0.01, 10, 0.1, 1));
  }
  SUBCASE("label outside the class range") {
    const FeatureMatrix data = features_of({{0.1, 0.2}, {0.3, 0.4}}, {0, 5});
    CHECK_THROWS(rsm::train_classifier(data, 2, 0.01, 10, 0.1, 1));
  }
  SUBCASE("empty test set") {
    Classifier cls;
    cls.W = Eigen::MatrixXd::Zero(2, 2);
    cls.bias = Eigen::VectorXd::Zero(2);
    FeatureMatrix empty;
    empty.rows.resize(0, 2);
    CHECK_THROWS(rsm::classify_accuracy(cls, empty));
  }
}
