#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "rsm/corpus.hpp"

using rsm::Corpus;
using rsm::Vocabulary;

TEST_CASE("tokenize") {
  SUBCASE("lowercases and splits on whitespace") {
    const auto toks = rsm::tokenize("The  Quick\tFOX");
    REQUIRE(toks.size() == 3);
    CHECK(toks[0] == "the");
    CHECK(toks[1] == "quick");
    CHECK(toks[2] == "fox");
  }
  SUBCASE("strips edge punctuation but keeps it inside") {
    const auto toks = rsm::tokenize("...hello!! (quick-brown) don't");
    REQUIRE(toks.size() == 3);
    CHECK(toks[0] == "hello");
    CHECK(toks[1] == "quick-brown");
    CHECK(toks[2] == "don't");
  }
  SUBCASE("pure punctuation pieces vanish") {
    CHECK(rsm::tokenize("--- ?! ..").empty());
  }
  SUBCASE("multibyte UTF-8 words survive") {
    const auto toks = rsm::tokenize("caf\xc3\xa9, \xc3\xa9t\xc3\xa9");
    REQUIRE(toks.size() == 2);
    CHECK(toks[0] == "caf\xc3\xa9");
    CHECK(toks[1] == "\xc3\xa9t\xc3\xa9");
  }
  SUBCASE("digits count as word bytes") {
    const auto toks = rsm::tokenize("v2.0 (3rd)");
    REQUIRE(toks.size() == 2);
    CHECK(toks[0] == "v2.0");
    CHECK(toks[1] == "3rd");
  }
}

TEST_CASE("build_vocabulary ranks by count then keeps ids lexicographic") {
  const std::vector<std::string> lines{"b b b a a c", "a c", "   "};
  SUBCASE("unlimited keeps everything") {
    const Vocabulary v = rsm::build_vocabulary(lines, 0);
    REQUIRE(v.size() == 3);
    CHECK(v.tokens == std::vector<std::string>{"a", "b", "c"});
    CHECK(v.lookup("a") == 0);
    CHECK(v.lookup("b") == 1);
    CHECK(v.lookup("c") == 2);
    CHECK(v.lookup("zzz") == -1);
    CHECK(v.num_docs == 2);  // blank line contributes no document
    CHECK(v.doc_freq[0] == 2);
    CHECK(v.doc_freq[1] == 1);
    CHECK(v.doc_freq[2] == 2);
  }
  SUBCASE("max_terms cuts the rank list, ties break lexicographically") {
    // Counts: a=3, b=3, c=2. The a/b tie keeps a first, so the cut drops c.
    const Vocabulary v = rsm::build_vocabulary(lines, 2);
    REQUIRE(v.size() == 2);
    CHECK(v.tokens == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("cut below the tie keeps the lexicographically smaller term") {
    const Vocabulary v = rsm::build_vocabulary(lines, 1);
    REQUIRE(v.size() == 1);
    CHECK(v.tokens[0] == "a");
  }
}

TEST_CASE("vectorize") {
  const std::vector<std::string> lines{"a b a", "zzz zzz", "b c"};
  const Vocabulary v = rsm::build_vocabulary({"a b", "b c"}, 0);  // vocab: a,b,c

  SUBCASE("counts repeated tokens") {
    const Corpus c = rsm::vectorize({"a b a"}, v);
    REQUIRE(c.num_docs() == 1);
    REQUIRE(c.docs[0].entries.size() == 2);
    CHECK(c.docs[0].entries[0].term == 0);
    CHECK(c.docs[0].entries[0].value == 2.0);
    CHECK(c.docs[0].entries[1].term == 1);
    CHECK(c.docs[0].entries[1].value == 1.0);
    CHECK(c.vocab_size == 3);
  }
  SUBCASE("out-of-vocabulary documents are skipped and labels stay aligned") {
    const Corpus c = rsm::vectorize(lines, v, {10, 20, 30});
    REQUIRE(c.num_docs() == 2);
    CHECK(c.labels == std::vector<int>{10, 30});
    CHECK(c.source_lines == std::vector<std::size_t>{0, 2});
  }
  SUBCASE("unlabeled corpora have no labels") {
    const Corpus c = rsm::vectorize(lines, v);
    CHECK(c.labels.empty());
  }
  SUBCASE("misaligned labels throw") {
    CHECK_THROWS(rsm::vectorize(lines, v, {1, 2}));
  }
}

TEST_CASE("log-count transform rounds up and stays integral") {
  const Vocabulary v = rsm::build_vocabulary({"a b c"}, 0);
  Corpus c = rsm::vectorize({"a", "b b b", "c c c c c c c"}, v);
  rsm::apply_log_count(c);
  CHECK(c.transforms.log_count);
  CHECK(c.docs[0].entries[0].value == 1.0);  // ceil(log 2)
  CHECK(c.docs[1].entries[0].value == 2.0);  // ceil(log 4)
  CHECK(c.docs[2].entries[0].value == 3.0);  // ceil(log 8)
  SUBCASE("running twice is an error") {
    CHECK_THROWS(rsm::apply_log_count(c));
  }
  SUBCASE("running after idf is an error") {
    Corpus fresh = rsm::vectorize({"a b", "b c"}, v);
    rsm::apply_idf(fresh, v);
    CHECK_THROWS(rsm::apply_log_count(fresh));
  }
}

TEST_CASE("idf weighting") {
  // b appears in both documents so its idf weight is zero.
  const Vocabulary v = rsm::build_vocabulary({"a b", "b c"}, 0);
  SUBCASE("weights are log(N/df)") {
    const Eigen::VectorXd w = rsm::idf_weights(v);
    CHECK(w[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(0.0));
    CHECK(w[2] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("scales counts and drops zero-weight terms") {
    Corpus c = rsm::vectorize({"a a b"}, v);
    rsm::apply_idf(c, v);
    CHECK(c.transforms.idf);
    REQUIRE(c.docs[0].entries.size() == 1);
    CHECK(c.docs[0].entries[0].term == 0);
    CHECK(c.docs[0].entries[0].value == doctest::Approx(2.0 * std::log(2.0)));
  }
  SUBCASE("running twice is an error") {
    Corpus c = rsm::vectorize({"a a b"}, v);
    rsm::apply_idf(c, v);
    CHECK_THROWS(rsm::apply_idf(c, v));
  }
  SUBCASE("vocabulary mismatch is an error") {
    Corpus c = rsm::vectorize({"a a b"}, v);
    const Vocabulary other = rsm::build_vocabulary({"a b c d"}, 0);
    CHECK_THROWS(rsm::apply_idf(c, other));
  }
  SUBCASE("vocabulary without document counts cannot derive idf") {
    Vocabulary bare = v;
    bare.num_docs = 0;
    CHECK_THROWS(rsm::idf_weights(bare));
  }
}

TEST_CASE("empirical distribution pools counts") {
  const Vocabulary v = rsm::build_vocabulary({"a b c"}, 0);
  Corpus c = rsm::vectorize({"a a b", "c"}, v);
  const Eigen::VectorXd p = rsm::empirical_distribution(c);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(0.25));
  CHECK(p[2] == doctest::Approx(0.25));
  CHECK(p.sum() == doctest::Approx(1.0));
  SUBCASE("refuses idf-weighted corpora") {
    rsm::apply_idf(c, v);
    CHECK_THROWS(rsm::empirical_distribution(c));
  }
  SUBCASE("refuses empty corpora") {
    Corpus empty;
    empty.vocab_size = 3;
    CHECK_THROWS(rsm::empirical_distribution(empty));
  }
}
