#include "rsm/model.hpp"

#include <cmath>
#include <stdexcept>

#include "rsm/math.hpp"

namespace rsm {

namespace {

/// z = W v + D a accumulated over the document's nonzero terms.
Eigen::VectorXd hidden_input(const RsmParams& params, const BowDocument& doc) {
  Eigen::VectorXd z = doc.size() * params.a;
  for (const auto& e : doc.entries) z += e.value * params.W.col(e.term);
  return z;
}

}  // namespace

FreeEnergyGradient FreeEnergyGradient::zero(int hidden, int vocab) {
  FreeEnergyGradient g;
  g.dW = Eigen::MatrixXd::Zero(hidden, vocab);
  g.db = Eigen::VectorXd::Zero(vocab);
  g.da = Eigen::VectorXd::Zero(hidden);
  return g;
}

void FreeEnergyGradient::add_scaled(const FreeEnergyGradient& other, double scale) {
  dW += scale * other.dW;
  db += scale * other.db;
  da += scale * other.da;
}

double FreeEnergyGradient::squared_norm() const {
  return dW.squaredNorm() + db.squaredNorm() + da.squaredNorm();
}

RsmParams init_params(int vocab, int hidden, const Eigen::VectorXd& unigram, Rng& rng) {
  if (vocab <= 0 || hidden <= 0) {
    throw std::runtime_error("model dimensions must be positive");
  }
  if (unigram.size() != vocab) {
    throw std::runtime_error("unigram distribution length does not match vocabulary");
  }
  RsmParams params;
  params.W.resize(hidden, vocab);
  for (int j = 0; j < hidden; ++j) {
    for (int k = 0; k < vocab; ++k) params.W(j, k) = 0.01 * rng.next_normal();
  }
  params.b.resize(vocab);
  for (int k = 0; k < vocab; ++k) {
    params.b[k] = std::log(std::max(unigram[k], 1e-12));
  }
  params.a = Eigen::VectorXd::Zero(hidden);
  return params;
}

double free_energy(const RsmParams& params, const BowDocument& doc) {
  double f = 0.0;
  for (const auto& e : doc.entries) f -= e.value * params.b[e.term];
  const Eigen::VectorXd z = hidden_input(params, doc);
  for (int j = 0; j < z.size(); ++j) f -= softplus(z[j]);
  if (!std::isfinite(f)) {
    throw std::runtime_error("parameter blow-up: free energy is not finite");
  }
  return f;
}

double energy(const RsmParams& params, const BowDocument& doc,
              const Eigen::VectorXd& h) {
  if (h.size() != params.a.size()) {
    throw std::runtime_error("hidden vector length does not match model");
  }
  double e = 0.0;
  Eigen::VectorXd wv = Eigen::VectorXd::Zero(params.hidden());
  for (const auto& entry : doc.entries) {
    e -= entry.value * params.b[entry.term];
    wv += entry.value * params.W.col(entry.term);
  }
  e -= h.dot(wv);
  e -= doc.size() * params.a.dot(h);
  return e;
}

HiddenPosterior hidden_posterior(const RsmParams& params, const BowDocument& doc) {
  Eigen::VectorXd z = hidden_input(params, doc);
  for (int j = 0; j < z.size(); ++j) z[j] = sigmoid(z[j]);
  return HiddenPosterior{std::move(z)};
}

Eigen::VectorXd visible_softmax(const RsmParams& params, const Eigen::VectorXd& h) {
  if (h.size() != params.a.size()) {
    throw std::runtime_error("hidden vector length does not match model");
  }
  Eigen::VectorXd logits = params.W.transpose() * h + params.b;
  softmax_inplace(logits);
  return logits;
}

FreeEnergyGradient free_energy_gradient(const RsmParams& params, const BowDocument& doc) {
  FreeEnergyGradient g = FreeEnergyGradient::zero(params.hidden(), params.vocab());
  accumulate_neg_free_energy_gradient(g, params, doc, -1.0);
  return g;
}

void accumulate_neg_free_energy_gradient(FreeEnergyGradient& acc,
                                         const RsmParams& params,
                                         const BowDocument& doc, double coeff) {
  Eigen::VectorXd s = hidden_input(params, doc);
  for (int j = 0; j < s.size(); ++j) s[j] = sigmoid(s[j]);
  acc.da += (coeff * doc.size()) * s;
  for (const auto& e : doc.entries) {
    acc.db[e.term] += coeff * e.value;
    acc.dW.col(e.term) += (coeff * e.value) * s;
  }
}

FrozenPartition freeze_partition(const RsmParams& params) {
  FrozenPartition fp;
  fp.hidden_term = params.hidden() * std::log(2.0);
  fp.visible_term = logsumexp(params.b);
  return fp;
}

double log_partition_constant(const RsmParams& params, double doc_length) {
  if (doc_length < 0.0) {
    throw std::runtime_error("document length must be non-negative");
  }
  return freeze_partition(params).log_z(doc_length);
}

double log_prob(const RsmParams& params, const BowDocument& doc) {
  return -free_energy(params, doc) - log_partition_constant(params, doc.size());
}

}  // namespace rsm
