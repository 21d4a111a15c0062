#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "rsm/corpus.hpp"
#include "rsm/model.hpp"

namespace rsm {

/// Hidden-posterior features, one row per document.
struct FeatureMatrix {
  Eigen::MatrixXd rows;     // n x H, entries in (0,1)
  std::vector<int> labels;  // aligned with rows; may be empty for export-only use

  std::size_t size() const { return static_cast<std::size_t>(rows.rows()); }
};

struct PrPoint {
  double recall = 0.0;
  double precision = 0.0;
};

struct RetrievalReport {
  std::vector<PrPoint> pr_curve;  // interpolated precision at fixed recall levels
  double map = 0.0;
  std::size_t num_queries = 0;
};

/// The 1-2-5 ladder used for precision-recall reporting.
std::span<const double> default_recall_levels();

/// Row i = hidden posterior of corpus doc i. The corpus transforms must
/// match the flags the model was trained with.
FeatureMatrix extract_features(const RsmParams& params, const Corpus& corpus,
                               const TransformFlags& trained_with);

/// Ranks index rows per query by cosine similarity (ties keep index
/// order; zero-norm vectors score 0). A hit is a label match. Average
/// precision = mean precision at relevant ranks over the total relevant
/// count; the curve takes the max precision at recall >= level.
RetrievalReport retrieve(const FeatureMatrix& queries, const FeatureMatrix& index,
                         std::span<const double> recall_levels = default_recall_levels());

/// Multinomial logistic regression on feature rows.
struct Classifier {
  Eigen::MatrixXd W;     // classes x H
  Eigen::VectorXd bias;  // classes
};

/// Mean cross-entropy plus (l2/2) * (|W|^2 + |bias|^2).
double classifier_loss(const Classifier& cls, const FeatureMatrix& data, double l2);

/// Full-batch gradient of classifier_loss.
Classifier classifier_gradient(const Classifier& cls, const FeatureMatrix& data,
                               double l2);

/// Minibatch SGD on classifier_loss. Deterministic by seed. Requires at
/// least two distinct labels in the training set.
Classifier train_classifier(const FeatureMatrix& train, int classes, double l2,
                            int epochs, double lr, std::uint64_t seed);

/// Fraction of test rows whose argmax score matches the label.
double classify_accuracy(const Classifier& cls, const FeatureMatrix& test);

}  // namespace rsm
