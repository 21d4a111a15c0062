#pragma once

#include <cstdint>

#include "rsm/corpus.hpp"

namespace rsm {

/// Documents drawn iid from one Zipf-shaped unigram distribution over the
/// vocabulary. Lengths are uniform in [len_min, len_max]. Used by the
/// timing benchmarks, where only corpus shape matters.
Corpus make_unigram_corpus(int vocab, int num_docs, int len_min, int len_max,
                           std::uint64_t seed);

/// Topic-structured corpus: the vocabulary splits into num_topics equal
/// slices; a document of topic t draws tokens from a mixture of the
/// uniform distribution over slice t and `background` mass spread over
/// the whole vocabulary. Topics rotate round-robin and become labels.
Corpus make_topic_corpus(int vocab, int num_docs, int num_topics, int len_min,
                         int len_max, double background, std::uint64_t seed);

}  // namespace rsm
