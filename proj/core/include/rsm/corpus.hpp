#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rsm {

struct BowEntry {
  int term = 0;
  double value = 0.0;
};

/// Sparse bag of words. Entries are sorted by term id, values positive.
/// With raw or log-count values the entries are integral; idf weighting
/// turns them into reals.
struct BowDocument {
  std::vector<BowEntry> entries;

  double size() const {
    double total = 0.0;
    for (const auto& e : entries) total += e.value;
    return total;
  }
};

struct TransformFlags {
  bool log_count = false;
  bool idf = false;

  bool operator==(const TransformFlags&) const = default;
};

struct Corpus {
  int vocab_size = 0;
  std::vector<BowDocument> docs;
  std::vector<int> labels;              // empty when unlabeled
  std::vector<std::size_t> source_lines;  // original line index per kept doc
  TransformFlags transforms;

  std::size_t num_docs() const { return docs.size(); }
};

struct Vocabulary {
  std::vector<std::string> tokens;
  std::unordered_map<std::string, int> index;
  std::vector<long long> doc_freq;  // documents containing each term
  long long num_docs = 0;           // documents seen when building

  int size() const { return static_cast<int>(tokens.size()); }
  int lookup(std::string_view token) const;
};

/// Lowercases, splits on whitespace, strips leading and trailing
/// non-alphanumeric bytes from each piece. Pieces that strip to nothing
/// are dropped.
std::vector<std::string> tokenize(std::string_view line);

/// Ranks terms by total count (ties broken lexicographically) and keeps
/// the top max_terms. max_terms <= 0 keeps everything.
Vocabulary build_vocabulary(const std::vector<std::string>& lines, int max_terms);

/// Counts in-vocabulary tokens per line. Lines with no in-vocabulary
/// tokens are skipped with a warning on stderr; labels, when given, must
/// align with lines and are dropped in sync.
Corpus vectorize(const std::vector<std::string>& lines, const Vocabulary& vocab,
                 const std::vector<int>& labels = {});

/// Replaces each count c by ceil(log(1 + c)), keeping counts integral.
/// Refuses to run twice on the same corpus.
void apply_log_count(Corpus& corpus);

/// Scales counts for term k by log(num_docs / doc_freq[k]) using the
/// frequencies recorded in vocab. Refuses to run twice.
void apply_idf(Corpus& corpus, const Vocabulary& vocab);

/// Per-term idf weights as used by apply_idf.
Eigen::VectorXd idf_weights(const Vocabulary& vocab);

/// Scales one document by precomputed idf weights, dropping terms whose
/// weight is zero.
void apply_idf(BowDocument& doc, const Eigen::VectorXd& weights);

/// Normalized term distribution pooled over all documents. Requires the
/// corpus to be in count space (idf not applied).
Eigen::VectorXd empirical_distribution(const Corpus& corpus);

}  // namespace rsm
