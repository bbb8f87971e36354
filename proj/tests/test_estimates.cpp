#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/dense.hpp"
#include "core/estimates.hpp"
#include "core/models.hpp"
#include "core/otoc.hpp"
#include "helpers.hpp"

using namespace botoc;
using testutil::random_haar;
using testutil::random_hermitian;

namespace {

Matrix bell_basis_hamiltonian() {
  // H = sum_k E_k |bell_k><bell_k| with pairwise-distinct gaps
  Matrix b(4, 4);
  const double r = 1.0 / std::sqrt(2.0);
  b.col(0) << r, 0, 0, r;    // phi+
  b.col(1) << r, 0, 0, -r;   // phi-
  b.col(2) << 0, r, r, 0;    // psi+
  b.col(3) << 0, r, -r, 0;   // psi-
  RealVector e(4);
  e << 0.0, 1.0, 3.0, 7.0;
  return b * e.asDiagonal() * b.adjoint();
}

// Independent route to the long-time average: enumerate every ordered pair
// of eigenstate pairs, keep the resonant ones, and accumulate the squared
// overlaps of the reduced cross operators built with partial_trace.
double brute_time_average(const SpectralData& spec, const BipartiteDims& dims,
                          double tol_gap = 1e-9) {
  const int d = spec.d();
  std::vector<Matrix> cross(static_cast<size_t>(d) * d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const Matrix outer =
          spec.eigenvectors.col(p) * spec.eigenvectors.col(q).adjoint();
      cross[static_cast<size_t>(p) * d + q] =
          partial_trace(outer, dims, Factor::A);
    }
  }
  const double thresh = tol_gap * std::max(spec.spectral_range, 1.0);
  double total = 0.0;
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      const double g1 = spec.eigenvalues(p) - spec.eigenvalues(q);
      for (int r = 0; r < d; ++r) {
        for (int s = 0; s < d; ++s) {
          const double g2 = spec.eigenvalues(r) - spec.eigenvalues(s);
          if (std::abs(g1 - g2) > thresh) continue;
          const Complex ov = hs_inner(cross[static_cast<size_t>(p) * d + q],
                                      cross[static_cast<size_t>(r) * d + s]);
          total += std::norm(ov);
        }
      }
    }
  }
  return 1.0 - total / (static_cast<double>(d) * d);
}

SpectralData chain_spectrum(ModelKind kind, int n,
                            std::map<std::string, double> params) {
  HamiltonianSpec hs;
  hs.kind = kind;
  hs.n_sites = n;
  hs.params = std::move(params);
  return eigendecompose(build_hamiltonian(hs));
}

}  // namespace

TEST_CASE("haar average closed form") {
  REQUIRE(haar_estimate(BipartiteDims{2, 2}) == 0.6);
  REQUIRE(haar_estimate(BipartiteDims{1, 5}) == 0.0);
  REQUIRE(haar_estimate(BipartiteDims{1, 1}) == 0.0);
  REQUIRE(haar_estimate_asymptote(2) == 0.75);
  REQUIRE(haar_estimate_asymptote(1) == 0.0);
  REQUIRE_THROWS_AS(haar_estimate_asymptote(0), Error);
  // monotone approach to the asymptote in d_b
  double prev = 0.0;
  for (int db : {2, 4, 8, 64}) {
    const double v = haar_estimate(BipartiteDims{2, db});
    REQUIRE(v > prev);
    REQUIRE(v < 0.75);
    prev = v;
  }
}

TEST_CASE("haar average matches sampled unitaries") {
  const BipartiteDims dims{2, 3};
  RngStream rng(900, 0);
  const int n = 300;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix u = haar_unitary(6, rng);
    const double g = g_exact(OtocRequest{u, dims, 0.0, std::nullopt});
    sum += g;
    sumsq += g * g;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sumsq / n - mean * mean) / n);
  REQUIRE(std::abs(mean - haar_estimate(dims)) < 4.0 * se);
}

TEST_CASE("gram matrices carry the exchange symmetries") {
  for (auto [da, db] : {std::pair{2, 4}, {4, 2}, {3, 3}}) {
    const BipartiteDims dims{da, db};
    const SpectralData spec = eigendecompose(random_hermitian(da * db, 910));
    const GramData g = gram_matrices(spec, dims);
    const int d = dims.d();
    REQUIRE(g.r_a.rows() == d);
    REQUIRE(g.r_b.rows() == d);
    REQUIRE((g.r_a - g.r_a.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE((g.r_b - g.r_b.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    REQUIRE(g.r_a.minCoeff() >= 0.0);
    REQUIRE(g.r_b.minCoeff() >= 0.0);
    // both factors share the mutual purity on the diagonal
    REQUIRE((g.r_a.diagonal() - g.r_b.diagonal()).cwiseAbs().maxCoeff() <
            1e-12);
    REQUIRE((g.diag - g.r_a.diagonal()).cwiseAbs().maxCoeff() == 0.0);
    // row sums count the dimension of the discarded factor
    for (int k = 0; k < d; ++k) {
      REQUIRE(std::abs(g.r_a.row(k).sum() - db) < 1e-8);
      REQUIRE(std::abs(g.r_b.row(k).sum() - da) < 1e-8);
    }
  }
}

TEST_CASE("gram entries match partial_trace overlaps") {
  const BipartiteDims dims{2, 3};
  const SpectralData spec = eigendecompose(random_hermitian(6, 911));
  const GramData g = gram_matrices(spec, dims);
  for (int k = 0; k < 6; ++k) {
    for (int l = 0; l < 6; ++l) {
      const Matrix pk = spec.eigenvectors.col(k) *
                        spec.eigenvectors.col(k).adjoint();
      const Matrix pl = spec.eigenvectors.col(l) *
                        spec.eigenvectors.col(l).adjoint();
      const Matrix ra_k = partial_trace(pk, dims, Factor::A);
      const Matrix ra_l = partial_trace(pl, dims, Factor::A);
      const Matrix rb_k = partial_trace(pk, dims, Factor::B);
      const Matrix rb_l = partial_trace(pl, dims, Factor::B);
      REQUIRE(std::abs(g.r_a(k, l) - hs_inner(ra_k, ra_l).real()) < 1e-12);
      REQUIRE(std::abs(g.r_b(k, l) - hs_inner(rb_k, rb_l).real()) < 1e-12);
    }
  }
}

TEST_CASE("nonresonance estimate of frozen bases") {
  const BipartiteDims dims{2, 2};
  // a maximally entangled eigenbasis
  const SpectralData bell = eigendecompose(bell_basis_hamiltonian());
  REQUIRE(std::abs(nrc_estimate(bell, dims) - 9.0 / 16.0) < 1e-10);
  // a product eigenbasis
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = 0.0;
  h(1, 1) = 1.0;
  h(2, 2) = 3.0;
  h(3, 3) = 7.0;
  const SpectralData prod = eigendecompose(h);
  REQUIRE(std::abs(nrc_estimate(prod, dims) - 0.25) < 1e-10);
}

TEST_CASE("refined estimate collapses without degeneracy") {
  for (auto [da, db] : {std::pair{2, 3}, {2, 4}}) {
    const BipartiteDims dims{da, db};
    const SpectralData spec =
        eigendecompose(random_hermitian(da * db, 920 + db));
    REQUIRE(nrc_report(spec).levels_nondegenerate);
    REQUIRE(std::abs(nrc_plus_estimate(spec, dims) - nrc_estimate(spec, dims)) <
            1e-10);
  }
}

TEST_CASE("refined estimate handles degenerate spectra") {
  const BipartiteDims dims{2, 2};
  // a flat spectrum freezes the evolution entirely
  const SpectralData flat = eigendecompose(Matrix::Zero(4, 4));
  REQUIRE(std::abs(nrc_plus_estimate(flat, dims)) < 1e-12);
  REQUIRE(std::abs(exact_time_average(flat, dims)) < 1e-12);
  // the plain estimate ignores the degeneracy and can only sit higher
  REQUIRE(nrc_estimate(flat, dims) >= -1e-12);
  // partial degeneracy: two level classes
  Matrix h = Matrix::Zero(4, 4);
  h(2, 2) = 1.0;
  h(3, 3) = 1.0;
  const SpectralData part = eigendecompose(h);
  const double plus = nrc_plus_estimate(part, dims);
  REQUIRE(plus <= nrc_estimate(part, dims) + 1e-12);
  REQUIRE(std::abs(plus - exact_time_average(part, dims)) < 1e-12);
}

TEST_CASE("exact average matches the quadruple-loop oracle") {
  for (auto [da, db] : {std::pair{2, 3}, {3, 2}}) {
    const BipartiteDims dims{da, db};
    const SpectralData spec =
        eigendecompose(random_hermitian(da * db, 930 + da));
    REQUIRE(std::abs(exact_time_average(spec, dims) -
                     brute_time_average(spec, dims)) < 1e-10);
  }
  // a chaotic chain at d = 16
  const SpectralData spec =
      chain_spectrum(ModelKind::TFIM, 4, {{"g", -1.05}, {"h", 0.5}});
  const BipartiteDims dims{2, 8};
  REQUIRE(std::abs(exact_time_average(spec, dims) -
                   brute_time_average(spec, dims)) < 1e-10);
  // degenerate diagonal case hits multi-member classes
  Matrix h = Matrix::Zero(6, 6);
  h(0, 0) = 0.0;
  h(1, 1) = 0.0;
  h(2, 2) = 1.0;
  h(3, 3) = 1.0;
  h(4, 4) = 2.5;
  h(5, 5) = 4.0;
  const SpectralData deg = eigendecompose(h);
  REQUIRE(std::abs(exact_time_average(deg, BipartiteDims{2, 3}) -
                   brute_time_average(deg, BipartiteDims{2, 3})) < 1e-10);
}

TEST_CASE("exact average matches the sampled long-time mean") {
  const BipartiteDims dims{2, 3};
  const SpectralData spec = eigendecompose(random_hermitian(6, 940));
  const double target = exact_time_average(spec, dims);
  RngStream rng(941, 0);
  const int n = 4000;
  const double horizon = 20000.0;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = horizon * rng.next_uniform();
    const Matrix u = evolution(spec, t);
    sum += g_exact(OtocRequest{u, dims, 0.0, std::nullopt});
  }
  REQUIRE(std::abs(sum / n - target) < 5e-3);
}

TEST_CASE("estimate hierarchy on a spin chain") {
  const SpectralData spec =
      chain_spectrum(ModelKind::TFIM, 6, {{"g", -1.05}, {"h", 0.5}});
  const BipartiteDims dims{2, 32};
  const EstimateReport rep = hierarchy_report(spec, dims, "tfim-chaotic");
  REQUIRE(rep.model_tag == "tfim-chaotic");
  REQUIRE(rep.dims.d_a == 2);
  REQUIRE(rep.dims.d_b == 32);
  REQUIRE(rep.hierarchy_ok);
  REQUIRE(rep.haar >= rep.nrc - 1e-8);
  REQUIRE(rep.nrc >= rep.nrc_plus - 1e-8);
  REQUIRE(rep.nrc_plus >= rep.exact - 1e-8);
  REQUIRE(rep.nrc_flags.nrc);
  // all four sit between 0 and the haar ceiling
  for (double v : {rep.nrc, rep.nrc_plus, rep.exact}) {
    REQUIRE(v > 0.0);
    REQUIRE(v <= rep.haar + 1e-8);
  }
}

TEST_CASE("entanglement profile of frozen bases") {
  const BipartiteDims dims{2, 2};
  const SpectralData bell = eigendecompose(bell_basis_hamiltonian());
  const RealVector pb = eigenstate_entanglement_profile(bell, dims);
  REQUIRE(pb.size() == 4);
  for (int k = 0; k < 4; ++k) REQUIRE(std::abs(pb(k) - 0.5) < 1e-12);
  Matrix h = Matrix::Zero(4, 4);
  h(1, 1) = 1.0;
  h(2, 2) = 3.0;
  h(3, 3) = 7.0;
  const RealVector pp = eigenstate_entanglement_profile(eigendecompose(h), dims);
  for (int k = 0; k < 4; ++k) REQUIRE(std::abs(pp(k)) < 1e-14);
  // asymmetric cut reduces on the smaller side: bounded by 1 - 1/d_min
  const SpectralData wide = eigendecompose(random_hermitian(8, 950));
  const RealVector pw =
      eigenstate_entanglement_profile(wide, BipartiteDims{2, 4});
  for (int k = 0; k < 8; ++k) {
    REQUIRE(pw(k) >= 0.0);
    REQUIRE(pw(k) <= 0.5 + 1e-12);
  }
}

TEST_CASE("profile bound frozen arithmetic") {
  const BipartiteDims dims{2, 2};
  RealVector me(4);
  me << 0.5, 0.5, 0.5, 0.5;
  const ProfileBound full = profile_bound(me, dims, 0.1, 9.0 / 16.0);
  REQUIRE(full.alpha == 1.0);
  REQUIRE(std::abs(full.j_term - 0.325) < 1e-15);
  REQUIRE(std::abs(full.bound - 0.325) < 1e-15);
  REQUIRE(std::abs(full.g_me_nrc - 0.5625) < 1e-15);
  REQUIRE(full.nrc_deviation.has_value());
  REQUIRE(*full.nrc_deviation < 1e-12);
  REQUIRE(*full.nrc_deviation <= full.bound);

  RealVector zero = RealVector::Zero(4);
  const ProfileBound none = profile_bound(zero, dims, 0.1);
  REQUIRE(none.alpha == 0.0);
  const double k_expect = 2.0 + 0.5 + 4.0 * (0.1 + std::sqrt(0.1));
  REQUIRE(std::abs(none.k_term - k_expect) < 1e-14);
  REQUIRE(std::abs(none.bound - k_expect) < 1e-14);
  REQUIRE_FALSE(none.nrc_deviation.has_value());
  // widening the window pulls every state inside
  REQUIRE(profile_bound(zero, dims, 0.5).alpha == 1.0);

  REQUIRE_THROWS_AS(profile_bound(RealVector::Zero(3), dims, 0.1), Error);
  REQUIRE_THROWS_AS(profile_bound(zero, dims, -0.1), Error);
}

TEST_CASE("profile bound covers a chaotic chain") {
  const SpectralData spec =
      chain_spectrum(ModelKind::TFIM, 6, {{"g", -1.05}, {"h", 0.5}});
  const BipartiteDims dims{8, 8};  // symmetric cut of six sites
  const RealVector profile = eigenstate_entanglement_profile(spec, dims);
  const double e_max = 1.0 - 1.0 / dims.d_max();
  std::vector<double> deficit(profile.data(), profile.data() + profile.size());
  for (double& v : deficit) v = e_max - v;
  std::sort(deficit.begin(), deficit.end());
  const double eps = deficit[deficit.size() * 9 / 10];  // 90th percentile
  const double nrc = nrc_estimate(spec, dims);
  const ProfileBound b = profile_bound(profile, dims, eps, nrc);
  REQUIRE(b.alpha >= 0.9 - 1e-12);
  REQUIRE(b.nrc_deviation.has_value());
  REQUIRE(*b.nrc_deviation <= b.bound);
}
