#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "rsm/math.hpp"
#include "rsm/model.hpp"

using rsm::BowDocument;
using rsm::RsmParams;

namespace {

RsmParams zero_params(int vocab, int hidden) {
  RsmParams p;
  p.W = Eigen::MatrixXd::Zero(hidden, vocab);
  p.b = Eigen::VectorXd::Zero(vocab);
  p.a = Eigen::VectorXd::Zero(hidden);
  return p;
}

}  // namespace

TEST_CASE("free energy of the zero model is -H ln 2") {
  const RsmParams p = zero_params(3, 4);
  const BowDocument doc{{{0, 2.0}, {2, 1.0}}};
  CHECK(rsm::free_energy(p, doc) == doctest::Approx(-4.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("free energy closed form for a one-unit model") {
  RsmParams p = zero_params(1, 1);
  p.W(0, 0) = 1.0;
  const BowDocument doc{{{0, 1.0}}};
  CHECK(rsm::free_energy(p, doc) ==
        doctest::Approx(-std::log(1.0 + std::exp(1.0))).epsilon(1e-12));
}

TEST_CASE("free energy agrees with hidden-state enumeration") {
  rsm::Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int vocab = 1 + static_cast<int>(rng.next_below(3));
    const int hidden = 1 + static_cast<int>(rng.next_below(3));
    const int length = 1 + static_cast<int>(rng.next_below(3));
    const RsmParams p = oracle::random_params(vocab, hidden, 1.0, rng);
    const BowDocument doc = oracle::random_doc(vocab, length, rng);
    const double expected = -oracle::log_boltzmann_sum(p, doc);
    CHECK(rsm::free_energy(p, doc) == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("energy matches its defining formula") {
  const BowDocument doc{{{1, 2.0}, {2, 1.0}}};
  SUBCASE("all-zero parameters give zero energy") {
    const RsmParams p = zero_params(3, 2);
    CHECK(rsm::energy(p, doc, Eigen::VectorXd::Ones(2)) == 0.0);
  }
  SUBCASE("h = 0 leaves only the visible bias term") {
    rsm::Rng rng(3);
    const RsmParams p = oracle::random_params(3, 2, 1.0, rng);
    const double expected = -(p.b[1] * 2.0 + p.b[2] * 1.0);
    CHECK(rsm::energy(p, doc, Eigen::VectorXd::Zero(2)) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("random instance matches the oracle") {
    rsm::Rng rng(9);
    const RsmParams p = oracle::random_params(3, 2, 1.0, rng);
    for (const auto& h : oracle::all_hidden(2)) {
      CHECK(rsm::energy(p, doc, h) ==
            doctest::Approx(oracle::energy_direct(p, doc, h)).epsilon(1e-12));
    }
  }
  SUBCASE("dimension mismatch throws") {
    const RsmParams p = zero_params(3, 2);
    CHECK_THROWS(rsm::energy(p, doc, Eigen::VectorXd::Zero(5)));
  }
}

TEST_CASE("hidden posterior") {
  const BowDocument doc{{{0, 1.0}, {1, 2.0}}};
  SUBCASE("zero parameters give 0.5 everywhere") {
    const auto post = rsm::hidden_posterior(zero_params(2, 3), doc);
    for (int j = 0; j < 3; ++j) CHECK(post.probs[j] == doctest::Approx(0.5));
  }
  SUBCASE("large hidden bias saturates") {
    RsmParams p = zero_params(2, 1);
    p.a[0] = 30.0;
    CHECK(rsm::hidden_posterior(p, doc).probs[0] > 1.0 - 1e-9);
  }
  SUBCASE("doubling counts doubles the pre-activation") {
    rsm::Rng rng(11);
    const RsmParams p = oracle::random_params(2, 3, 0.7, rng);
    BowDocument twice = doc;
    for (auto& e : twice.entries) e.value *= 2.0;
    const auto post = rsm::hidden_posterior(p, twice);
    for (int j = 0; j < 3; ++j) {
      const double z = p.W(j, 0) * 1.0 + p.W(j, 1) * 2.0 + 3.0 * p.a[j];
      CHECK(post.probs[j] == doctest::Approx(rsm::sigmoid(2.0 * z)).epsilon(1e-12));
    }
  }
  SUBCASE("entries stay strictly inside (0,1)") {
    rsm::Rng rng(13);
    const RsmParams p = oracle::random_params(2, 3, 2.0, rng);
    const auto post = rsm::hidden_posterior(p, doc);
    for (int j = 0; j < 3; ++j) {
      CHECK(post.probs[j] > 0.0);
      CHECK(post.probs[j] < 1.0);
    }
  }
}

TEST_CASE("visible softmax") {
  SUBCASE("zero parameters give the uniform distribution") {
    const auto p = rsm::visible_softmax(zero_params(4, 2), Eigen::VectorXd::Zero(2));
    for (int k = 0; k < 4; ++k) CHECK(p[k] == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("log-odds bias recovers the stated probabilities") {
    RsmParams params = zero_params(2, 1);
    params.b[0] = std::log(3.0);
    params.b[1] = std::log(1.0);
    const auto p = rsm::visible_softmax(params, Eigen::VectorXd::Zero(1));
    CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("shifting every logit leaves the distribution unchanged") {
    rsm::Rng rng(17);
    RsmParams params = oracle::random_params(5, 2, 1.0, rng);
    Eigen::VectorXd h(2);
    h << 1.0, 0.0;
    const auto p1 = rsm::visible_softmax(params, h);
    params.b.array() += 7.5;
    const auto p2 = rsm::visible_softmax(params, h);
    for (int k = 0; k < 5; ++k) CHECK(p1[k] == doctest::Approx(p2[k]).epsilon(1e-12));
    CHECK(p2.sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("free energy gradient closed form at zero parameters") {
  const RsmParams p = zero_params(3, 2);
  const BowDocument doc{{{0, 1.0}}};
  const auto g = rsm::free_energy_gradient(p, doc);
  CHECK(g.db[0] == doctest::Approx(-1.0));
  CHECK(g.db[1] == 0.0);
  CHECK(g.db[2] == 0.0);
  for (int j = 0; j < 2; ++j) {
    CHECK(g.da[j] == doctest::Approx(-0.5));
    CHECK(g.dW(j, 0) == doctest::Approx(-0.5));
    CHECK(g.dW(j, 1) == 0.0);
  }
}

TEST_CASE("free energy gradient matches finite differences") {
  rsm::Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int vocab = 1 + static_cast<int>(rng.next_below(4));
    const int hidden = 1 + static_cast<int>(rng.next_below(4));
    const int length = 1 + static_cast<int>(rng.next_below(5));
    const RsmParams p = oracle::random_params(vocab, hidden, 1.0, rng);
    const BowDocument doc = oracle::random_doc(vocab, length, rng);
    const auto analytic = rsm::free_energy_gradient(p, doc);
    const auto fd = oracle::finite_difference(
        p, [&](const RsmParams& q) { return rsm::free_energy(q, doc); }, 1e-5);
    CHECK(oracle::relative_l2_gap(fd, analytic) < 1e-5);
  }
}

TEST_CASE("free energy gradient of an empty doc is zero") {
  rsm::Rng rng(29);
  const RsmParams p = oracle::random_params(3, 2, 1.0, rng);
  const auto g = rsm::free_energy_gradient(p, BowDocument{});
  CHECK(g.squared_norm() == 0.0);
}

TEST_CASE("frozen partition constant") {
  SUBCASE("zero bias arithmetic") {
    const RsmParams p = zero_params(3, 2);
    CHECK(rsm::log_partition_constant(p, 2.0) ==
          doctest::Approx(std::log(36.0)).epsilon(1e-12));
    CHECK(rsm::log_partition_constant(p, 0.0) ==
          doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("exact against enumeration when W = 0, a = 0") {
    rsm::Rng rng(31);
    RsmParams p = zero_params(2, 1);
    p.b[0] = 2.0 * rng.next_double() - 1.0;
    p.b[1] = 2.0 * rng.next_double() - 1.0;
    CHECK(rsm::log_partition_constant(p, 2.0) ==
          doctest::Approx(oracle::log_true_partition(p, 2, 2)).epsilon(1e-10));
  }
  SUBCASE("not exact in general") {
    rsm::Rng rng(37);
    const RsmParams p = oracle::random_params(2, 2, 1.0, rng);
    const double frozen = rsm::log_partition_constant(p, 2.0);
    const double truth = oracle::log_true_partition(p, 2, 2);
    CHECK(std::abs(frozen - truth) > 1e-6);
  }
}

TEST_CASE("log prob of the uniform model is -D ln K") {
  const RsmParams p = zero_params(2, 3);
  const BowDocument doc{{{1, 1.0}}};
  CHECK(rsm::log_prob(p, doc) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("probabilities normalize under the enumerated partition") {
  rsm::Rng rng(41);
  const int vocab = 3;
  const int length = 2;
  const RsmParams p = oracle::random_params(vocab, 2, 1.0, rng);
  const double log_z = oracle::log_true_partition(p, vocab, length);
  double total = 0.0;
  for (const auto& doc : oracle::all_ordered_docs(vocab, length)) {
    total += std::exp(-rsm::free_energy(p, doc) - log_z);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("log prob accepts real-valued weighted lengths") {
  rsm::Rng rng(43);
  const RsmParams p = oracle::random_params(3, 2, 0.5, rng);
  const BowDocument doc{{{0, 0.9}, {2, 0.6}}};  // weighted doc, D = 1.5
  const double expected =
      -rsm::free_energy(p, doc) - rsm::log_partition_constant(p, 1.5);
  CHECK(rsm::log_prob(p, doc) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("initialization shapes and values") {
  rsm::Rng rng(47);
  Eigen::VectorXd unigram(3);
  unigram << 0.5, 0.3, 0.2;
  const RsmParams p = rsm::init_params(3, 4, unigram, rng);
  CHECK(p.W.rows() == 4);
  CHECK(p.W.cols() == 3);
  CHECK(p.a.isZero());
  for (int k = 0; k < 3; ++k) {
    CHECK(p.b[k] == doctest::Approx(std::log(unigram[k])).epsilon(1e-12));
  }
  CHECK(p.W.cwiseAbs().maxCoeff() < 0.1);  // N(0, 0.01^2) stays small
}

TEST_CASE("non-finite parameters are reported as blow-up") {
  RsmParams p = zero_params(2, 1);
  p.b[0] = std::numeric_limits<double>::infinity();
  const BowDocument doc{{{0, 1.0}}};
  CHECK_THROWS_WITH_AS(rsm::free_energy(p, doc),
                       doctest::Contains("blow-up"), std::runtime_error);
}
