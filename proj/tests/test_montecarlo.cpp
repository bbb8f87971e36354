#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "core/channels.hpp"
#include "core/dense.hpp"
#include "core/estimates.hpp"
#include "core/montecarlo.hpp"
#include "core/otoc.hpp"
#include "helpers.hpp"

using namespace botoc;
using testutil::random_haar;

namespace {

EnsembleSpec haar_local(int da, int db) {
  EnsembleSpec e;
  e.kind = EnsembleKind::HaarLocal;
  e.dims = BipartiteDims{da, db};
  return e;
}

EnsembleSpec pauli_ens(int na, int nb) {
  EnsembleSpec e;
  e.kind = EnsembleKind::PauliFactorized;
  e.dims = BipartiteDims{1 << na, 1 << nb};
  e.n_sites_a = na;
  e.n_sites_b = nb;
  return e;
}

bool same_stats(const SampleStats& a, const SampleStats& b) {
  return a.n_samples == b.n_samples && a.mean == b.mean &&
         a.variance == b.variance && a.reference == b.reference &&
         a.deviations.counts == b.deviations.counts &&
         a.deviations.edges == b.deviations.edges;
}

}  // namespace

TEST_CASE("ensemble validation") {
  REQUIRE_NOTHROW(haar_local(2, 3).validate());
  EnsembleSpec bad = pauli_ens(1, 2);
  bad.dims = BipartiteDims{2, 3};  // 2^2 != 3
  REQUIRE_THROWS_AS(bad.validate(), Error);
  EnsembleSpec neg = pauli_ens(1, 1);
  neg.n_sites_a = -1;
  REQUIRE_THROWS_AS(neg.validate(), Error);
  const Matrix u = random_haar(4, 1000);
  REQUIRE_THROWS_AS(sample_otoc(u, haar_local(2, 2), 0, RngStream(1, 0)),
                    Error);
}

TEST_CASE("sampling is reproducible and thread-count independent") {
  const Matrix u = random_haar(8, 1001);
  const EnsembleSpec ens = haar_local(2, 4);
  const RngStream rng(42, 7);
  const SampleStats one = sample_otoc(u, ens, 257, rng, 1);
  const SampleStats four = sample_otoc(u, ens, 257, rng, 4);
  const SampleStats again = sample_otoc(u, ens, 257, rng, 3);
  REQUIRE(same_stats(one, four));
  REQUIRE(same_stats(one, again));
  const SampleStats other = sample_otoc(u, ens, 257, RngStream(43, 7), 1);
  REQUIRE(one.mean != other.mean);

  const SampleStats e1 =
      entropy_production_estimate(u, ens.dims, Factor::A, 120, rng, 1);
  const SampleStats e4 =
      entropy_production_estimate(u, ens.dims, Factor::A, 120, rng, 4);
  REQUIRE(same_stats(e1, e4));
}

TEST_CASE("local haar sampling estimates the correlator") {
  const Matrix u = random_haar(8, 1002);
  const EnsembleSpec ens = haar_local(2, 4);
  const SampleStats st = sample_otoc(u, ens, 4000, RngStream(5, 0), 4);
  REQUIRE(st.n_samples == 4000);
  REQUIRE(st.reference ==
          g_exact(OtocRequest{u, ens.dims, 0.0, std::nullopt}));
  const double se = std::sqrt(st.variance / double(st.n_samples));
  REQUIRE(std::abs(st.mean - st.reference) < 4.0 * se);
  // histogram accounts for every sample
  std::uint64_t total = 0;
  for (auto c : st.deviations.counts) total += c;
  REQUIRE(total == st.n_samples);
  REQUIRE(st.deviations.edges.size() == st.deviations.counts.size() + 1);
  REQUIRE(st.deviations.edges.front() == 0.0);
  REQUIRE(st.deviations.edges.back() == 2.0);
}

TEST_CASE("pauli sampling estimates the correlator") {
  const Matrix u = random_haar(8, 1003);
  const EnsembleSpec ens = pauli_ens(1, 2);
  const SampleStats st = sample_otoc(u, ens, 4000, RngStream(6, 0), 2);
  REQUIRE(st.reference ==
          g_exact(OtocRequest{u, ens.dims, 0.0, std::nullopt}));
  const double se = std::sqrt(st.variance / double(st.n_samples));
  REQUIRE(std::abs(st.mean - st.reference) < 4.0 * se);
}

TEST_CASE("global haar sampling estimates the ensemble mean") {
  const EnsembleSpec ens = haar_local(2, 3);
  EnsembleSpec global = ens;
  global.kind = EnsembleKind::HaarGlobal;
  const Matrix u = random_haar(6, 1004);  // only sets the arena dimensions
  const SampleStats st = sample_otoc(u, global, 3000, RngStream(7, 0), 4);
  REQUIRE(st.reference == haar_estimate(ens.dims));
  const double se = std::sqrt(st.variance / double(st.n_samples));
  REQUIRE(std::abs(st.mean - st.reference) < 4.0 * se);
}

TEST_CASE("custom histogram layout") {
  const Matrix u = random_haar(4, 1005);
  HistogramSpec hs;
  hs.bins = 10;
  hs.lo = 0.0;
  hs.hi = 1.0;
  const SampleStats st =
      sample_otoc(u, haar_local(2, 2), 100, RngStream(8, 0), 1, hs);
  REQUIRE(st.deviations.counts.size() == 10);
  REQUIRE(st.deviations.edges.size() == 11);
  REQUIRE(st.deviations.edges[10] == 1.0);
  HistogramSpec bad;
  bad.bins = 0;
  REQUIRE_THROWS_AS(
      sample_otoc(u, haar_local(2, 2), 10, RngStream(8, 0), 1, bad), Error);
}

TEST_CASE("exhaustive pauli average reproduces the correlator") {
  for (auto [na, nb] : {std::pair{1, 1}, {1, 2}}) {
    const EnsembleSpec ens = pauli_ens(na, nb);
    const Matrix u = random_haar(ens.dims.d(), 1010 + nb);
    const double avg = pauli_exhaustive_average(u, ens);
    const double g = g_exact(OtocRequest{u, ens.dims, 0.0, std::nullopt});
    REQUIRE(std::abs(avg - g) < 1e-10);
  }
  REQUIRE_THROWS_AS(
      pauli_exhaustive_average(random_haar(4, 1012), haar_local(2, 2)), Error);
}

TEST_CASE("entropy production estimator") {
  const BipartiteDims dims{2, 4};
  const Matrix u = random_haar(8, 1020);
  const SampleStats st =
      entropy_production_estimate(u, dims, Factor::A, 3000, RngStream(9, 0), 4);
  const double g = g_exact(OtocRequest{u, dims, 0.0, std::nullopt});
  REQUIRE(std::abs(st.reference - 2.0 / 3.0 * g) < 1e-15);
  const double se = std::sqrt(st.variance / double(st.n_samples));
  REQUIRE(std::abs(st.mean - st.reference) < 4.0 * se);
}

TEST_CASE("swap evolution produces a flat entropy distribution") {
  const BipartiteDims dims{4, 4};
  const SampleStats st = entropy_production_estimate(
      swap_replica(4), dims, Factor::A, 500, RngStream(10, 0), 2);
  REQUIRE(std::abs(st.reference - 0.75) < 1e-14);
  REQUIRE(std::abs(st.mean - 0.75) < 1e-12);
  REQUIRE(st.variance < 1e-24);
}

TEST_CASE("two-copy swap measurement returns the output purity") {
  const BipartiteDims dims{2, 4};
  const Matrix u = random_haar(8, 1030);
  RngStream rng(1031, 0);
  for (int i = 0; i < 5; ++i) {
    const Vector psi = haar_state(2, rng);
    const double sv = swap_protocol_sim(u, dims, Factor::A, psi);
    const ChannelRep ch = reduced_channel(u, dims, Factor::A);
    const Matrix sigma = apply_channel(ch, psi * psi.adjoint());
    REQUIRE(std::abs(sv - (1.0 - linear_entropy(sigma))) < 1e-12);
    REQUIRE(sv >= 1.0 / 2.0 - 1e-12);  // purity of a qubit state
    REQUIRE(sv <= 1.0 + 1e-12);
  }
  Vector unnorm = Vector::Ones(2);
  REQUIRE_THROWS_AS(swap_protocol_sim(u, dims, Factor::A, unnorm), Error);
  REQUIRE_THROWS_AS(
      swap_protocol_sim(Matrix::Identity(256, 256), BipartiteDims{128, 2},
                        Factor::A, Vector::Unit(128, 0)),
      Error);
}

TEST_CASE("operator concentration rows") {
  const BipartiteDims dims{2, 32};
  const Matrix u = random_haar(64, 1040);
  const EnsembleSpec ens = haar_local(2, 32);
  const std::vector<double> grid{0.25, 0.75, 1.5};
  const auto rows =
      concentration_experiment(u, ens, 800, grid, RngStream(11, 0),
                               ConcentrationVariant::Otoc, 4);
  REQUIRE(rows.size() == 3);
  for (size_t i = 0; i < rows.size(); ++i) {
    const double eps = grid[i];
    REQUIRE(rows[i].epsilon == eps);
    const double expect = 2.0 * std::exp(-eps * eps * 32.0 / 64.0);
    REQUIRE(std::abs(rows[i].bound - expect) < 1e-15);
    REQUIRE(rows[i].vacuous == (rows[i].bound > 1.0));
    REQUIRE(rows[i].empirical_p >= 0.0);
    REQUIRE(rows[i].empirical_p <= 1.0);
    // the tail bound holds within binomial sampling error
    const double se =
        std::sqrt(std::max(rows[i].bound * (1.0 - rows[i].bound), 0.25e-4) /
                  800.0);
    if (!rows[i].vacuous) {
      REQUIRE(rows[i].empirical_p <= rows[i].bound + 3.0 * se);
    }
  }
  // exceedance can only shrink as the window widens
  REQUIRE(rows[0].empirical_p >= rows[1].empirical_p);
  REQUIRE(rows[1].empirical_p >= rows[2].empirical_p);
}

TEST_CASE("state concentration rows") {
  const BipartiteDims dims{8, 2};
  const Matrix u = random_haar(16, 1041);
  EnsembleSpec ens;
  ens.kind = EnsembleKind::HaarLocal;
  ens.dims = dims;
  const std::vector<double> grid{0.5, 1.0};
  const auto rows = concentration_experiment(
      u, ens, 600, grid, RngStream(12, 0), ConcentrationVariant::State, 2,
      Factor::A);
  for (size_t i = 0; i < rows.size(); ++i) {
    const double expect = std::exp(-grid[i] * grid[i] * 8.0 / 64.0);
    REQUIRE(std::abs(rows[i].bound - expect) < 1e-15);
  }
  // produced entropies live in [0, 1 - 1/8]: a unit deviation cannot occur
  REQUIRE(rows[1].empirical_p == 0.0);
}

TEST_CASE("concentration experiment validation") {
  const Matrix u = random_haar(4, 1042);
  REQUIRE_THROWS_AS(
      concentration_experiment(u, pauli_ens(1, 1), 10, {0.5}, RngStream(1, 0),
                               ConcentrationVariant::Otoc),
      Error);
  REQUIRE_THROWS_AS(
      concentration_experiment(u, haar_local(2, 2), 10, {}, RngStream(1, 0)),
      Error);
  REQUIRE_THROWS_AS(concentration_experiment(u, haar_local(2, 2), 10, {-0.5},
                                             RngStream(1, 0)),
                    Error);
}
