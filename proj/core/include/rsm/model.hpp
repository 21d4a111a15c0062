#pragma once

#include <Eigen/Dense>

#include "rsm/corpus.hpp"
#include "rsm/rng.hpp"

namespace rsm {

/// Shared parameters of the tied RBM family: one hidden layer against K
/// softmax visible units replicated D times per document.
struct RsmParams {
  Eigen::MatrixXd W;  // H x K, row j = weights of hidden unit j
  Eigen::VectorXd b;  // visible bias, length K
  Eigen::VectorXd a;  // hidden bias, length H

  int hidden() const { return static_cast<int>(a.size()); }
  int vocab() const { return static_cast<int>(b.size()); }
};

struct HiddenPosterior {
  Eigen::VectorXd probs;  // length H, sigma(W_j . v + D a_j), entries in (0,1)
};

struct FreeEnergyGradient {
  Eigen::MatrixXd dW;
  Eigen::VectorXd db;
  Eigen::VectorXd da;

  static FreeEnergyGradient zero(int hidden, int vocab);
  void add_scaled(const FreeEnergyGradient& other, double scale);
  double squared_norm() const;
};

/// W ~ Normal(0, 0.01^2), b = log unigram (floored at 1e-12), a = 0.
/// Starting b at the empirical log-unigram makes the initial model close
/// to the noise distribution.
RsmParams init_params(int vocab, int hidden, const Eigen::VectorXd& unigram, Rng& rng);

/// F(V) = -b.v - sum_j softplus(W_j.v + D a_j); P(V) proportional to e^-F.
/// Throws on a non-finite result (parameter blow-up).
double free_energy(const RsmParams& params, const BowDocument& doc);

/// E(V, h) = -h^T W v - b.v - D (a.h) with h in {0,1}^H.
double energy(const RsmParams& params, const BowDocument& doc,
              const Eigen::VectorXd& h);

HiddenPosterior hidden_posterior(const RsmParams& params, const BowDocument& doc);

/// Softmax over terms given a hidden configuration: p_k proportional to
/// exp(W_k.h + b_k).
Eigen::VectorXd visible_softmax(const RsmParams& params, const Eigen::VectorXd& h);

/// dF/db_k = -v_k; dF/da_j = -D s_j; dF/dW_jk = -s_j v_k with
/// s = hidden_posterior(doc).
FreeEnergyGradient free_energy_gradient(const RsmParams& params, const BowDocument& doc);

/// acc += coeff * (-grad F(doc)). The rank-one dW update touches only the
/// document's nonzero columns.
void accumulate_neg_free_energy_gradient(FreeEnergyGradient& acc,
                                         const RsmParams& params,
                                         const BowDocument& doc, double coeff);

/// Snapshot of the frozen partition approximation
/// log Z_D^c = H ln 2 + D logsumexp(b). Taken from the current b, then
/// treated as a constant: no gradient flows through it. The formula is
/// exact only at W = 0, a = 0.
struct FrozenPartition {
  double hidden_term = 0.0;   // H ln 2
  double visible_term = 0.0;  // logsumexp(b)

  double log_z(double doc_length) const {
    return hidden_term + doc_length * visible_term;
  }
};

FrozenPartition freeze_partition(const RsmParams& params);

/// log Z_D^c for the current parameters. Accepts real-valued lengths for
/// weighted documents.
double log_partition_constant(const RsmParams& params, double doc_length);

/// log P(V) = -F(V) - log Z_D^c with D = doc.size().
double log_prob(const RsmParams& params, const BowDocument& doc);

}  // namespace rsm
