#include "rsm/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rsm/alias_sampler.hpp"
#include "rsm/rng.hpp"

namespace rsm {

namespace {

void check_args(int vocab, int num_docs, int len_min, int len_max) {
  if (vocab < 1 || num_docs < 1) throw std::runtime_error("corpus dimensions must be positive");
  if (len_min < 1 || len_max < len_min) throw std::runtime_error("bad document length range");
}

BowDocument draw_doc(const AliasTable& table, long long length, Rng& rng) {
  std::vector<std::uint32_t> tokens;
  sample_many(table, static_cast<std::size_t>(length), rng, tokens);
  std::sort(tokens.begin(), tokens.end());
  BowDocument doc;
  for (std::size_t i = 0; i < tokens.size();) {
    std::size_t j = i;
    while (j < tokens.size() && tokens[j] == tokens[i]) ++j;
    doc.entries.push_back({static_cast<int>(tokens[i]), static_cast<double>(j - i)});
    i = j;
  }
  return doc;
}

long long draw_length(int len_min, int len_max, Rng& rng) {
  return len_min + static_cast<long long>(rng.next_below(
                       static_cast<std::uint64_t>(len_max - len_min + 1)));
}

}  // namespace

Corpus make_unigram_corpus(int vocab, int num_docs, int len_min, int len_max,
                           std::uint64_t seed) {
  check_args(vocab, num_docs, len_min, len_max);
  std::vector<double> weights(static_cast<std::size_t>(vocab));
  for (int k = 0; k < vocab; ++k) weights[static_cast<std::size_t>(k)] = 1.0 / (1.0 + k);
  const AliasTable table = build_alias(weights);

  Corpus corpus;
  corpus.vocab_size = vocab;
  corpus.docs.reserve(static_cast<std::size_t>(num_docs));
  for (int d = 0; d < num_docs; ++d) {
    Rng rng(derive_seed(seed, 0xD0C, static_cast<std::uint64_t>(d)));
    corpus.docs.push_back(draw_doc(table, draw_length(len_min, len_max, rng), rng));
    corpus.source_lines.push_back(static_cast<std::size_t>(d));
  }
  return corpus;
}

Corpus make_topic_corpus(int vocab, int num_docs, int num_topics, int len_min,
                         int len_max, double background, std::uint64_t seed) {
  check_args(vocab, num_docs, len_min, len_max);
  if (num_topics < 1 || num_topics > vocab) throw std::runtime_error("bad topic count");
  if (!(background >= 0.0 && background <= 1.0)) {
    throw std::runtime_error("background mass must lie in [0, 1]");
  }

  std::vector<AliasTable> topic_tables;
  topic_tables.reserve(static_cast<std::size_t>(num_topics));
  const int slice = vocab / num_topics;
  for (int t = 0; t < num_topics; ++t) {
    const int lo = t * slice;
    const int hi = t == num_topics - 1 ? vocab : lo + slice;
    std::vector<double> weights(static_cast<std::size_t>(vocab),
                                background / static_cast<double>(vocab));
    for (int k = lo; k < hi; ++k) {
      weights[static_cast<std::size_t>(k)] +=
          (1.0 - background) / static_cast<double>(hi - lo);
    }
    topic_tables.push_back(build_alias(weights));
  }

  Corpus corpus;
  corpus.vocab_size = vocab;
  corpus.docs.reserve(static_cast<std::size_t>(num_docs));
  for (int d = 0; d < num_docs; ++d) {
    const int topic = d % num_topics;
    Rng rng(derive_seed(seed, 0xD0C, static_cast<std::uint64_t>(d)));
    corpus.docs.push_back(draw_doc(topic_tables[static_cast<std::size_t>(topic)],
                                   draw_length(len_min, len_max, rng), rng));
    corpus.labels.push_back(topic);
    corpus.source_lines.push_back(static_cast<std::size_t>(d));
  }
  return corpus;
}

}  // namespace rsm
