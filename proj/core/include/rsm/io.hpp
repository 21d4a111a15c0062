#pragma once

#include <string>
#include <vector>

#include "rsm/corpus.hpp"
#include "rsm/eval.hpp"
#include "rsm/model.hpp"

namespace rsm {

std::vector<std::string> read_lines(const std::string& path);

/// One integer class id per line, aligned with a corpus text file.
std::vector<int> read_labels(const std::string& path);

/// Vocabulary file: one token per line. A companion <path>.df records
/// "#T=<documents>" and one document frequency per line; without it a
/// loaded vocabulary cannot provide idf weights.
void save_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

/// Sparse bag-of-words: "#K=<K> T=<docs>" header, then
/// doc_id<TAB>term_id<TAB>value rows. Values print as integers when
/// integral, otherwise with 17 significant digits.
void save_bow(const Corpus& corpus, const std::string& path);
Corpus load_bow(const std::string& path);

/// Model file contents. Exactly one of vocab_tokens / vocab_reference is
/// typically set; both may be empty for synthetic models.
struct ModelFile {
  RsmParams params;
  TransformFlags transforms;
  std::vector<std::string> vocab_tokens;  // embedded word list
  std::string vocab_reference;            // path to a vocabulary file
};

/// JSON with 17-significant-digit reals: load(save(m)) is bit-exact.
void save_model(const ModelFile& model, const std::string& path);
ModelFile load_model(const std::string& path);

/// recall,precision rows followed by a MAP summary line.
void save_retrieval_csv(const RetrievalReport& report, const std::string& path);

/// {accuracy, n_test, classes} as a structured text record.
void save_classification_report(double accuracy, std::size_t n_test, int classes,
                                const std::string& path);

/// doc_id,h0..h{H-1} rows for feature export.
void save_features_csv(const FeatureMatrix& features, const std::string& path);

}  // namespace rsm
