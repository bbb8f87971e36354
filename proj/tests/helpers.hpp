#pragma once

// Shared fixtures: slow reference implementations that the fast library
// routes are tested against, plus small construction shortcuts.

#include <cstdint>

#include "core/dense.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace testutil {

using botoc::BipartiteDims;
using botoc::Complex;
using botoc::Matrix;
using botoc::RngStream;
using botoc::Vector;

inline Matrix random_haar(int d, std::uint64_t seed, std::uint64_t stream = 0) {
  RngStream rng(seed, stream);
  return botoc::haar_unitary(d, rng);
}

inline Vector random_state(int d, std::uint64_t seed, std::uint64_t stream = 0) {
  RngStream rng(seed, stream);
  return botoc::haar_state(d, rng);
}

inline Matrix random_hermitian(int d, std::uint64_t seed) {
  RngStream rng(seed, 0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.next_complex_gaussian();
  return Matrix((g + g.adjoint()) / 2.0);
}

// Swap of the first factor of the two copies, on the literal doubled space
// H_AB (x) H_A'B' with joint index (a*d_b + b)*d + (a'*d_b + b').
inline Matrix doubled_swap_aa(const BipartiteDims& dims) {
  const int d = dims.d();
  const int da = dims.d_a;
  const int db = dims.d_b;
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int ap = 0; ap < da; ++ap)
        for (int bp = 0; bp < db; ++bp)
          s((ap * db + b) * d + (a * db + bp),
            (a * db + b) * d + (ap * db + bp)) = 1.0;
  return s;
}

// Correlator through the literal doubled-space trace; O(d^6), small d only.
inline double g_doubled_space(const Matrix& u, const BipartiteDims& dims) {
  const int d = dims.d();
  const Matrix s = doubled_swap_aa(dims);
  const Matrix u2 = botoc::kron(u, u);
  const Complex tr = (s * u2 * s * u2.adjoint()).trace();
  return 1.0 - tr.real() / (static_cast<double>(d) * d);
}

// Thermal correlator on the doubled space with an explicit input state on
// the first copy.
inline double g_thermal_doubled(const Matrix& u, const BipartiteDims& dims,
                                const Matrix& rho) {
  const int d = dims.d();
  const Matrix s = doubled_swap_aa(dims);
  const Matrix u2 = botoc::kron(u, u);
  const Matrix lhs = botoc::kron(rho, Matrix::Identity(d, d));
  const Complex tr = (lhs * u2.adjoint() * s * u2 * s).trace();
  return 1.0 - tr.real() / static_cast<double>(d);
}

// Gibbs state exp(-beta H)/Z through the eigensystem.
inline Matrix gibbs_state(const Matrix& h, double beta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  botoc::RealVector w(h.rows());
  const double e_min = es.eigenvalues().minCoeff();
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    w(k) = std::exp(-beta * (es.eigenvalues()(k) - e_min));
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

// Commutator correlator from the definition: embed the local operators,
// conjugate one by the evolution, take the squared commutator norm.
inline double commutator_direct(const Matrix& u, const Matrix& v_a,
                                const Matrix& w_b, const BipartiteDims& dims) {
  const Matrix v = botoc::kron(v_a, Matrix::Identity(dims.d_b, dims.d_b));
  const Matrix w = botoc::kron(Matrix::Identity(dims.d_a, dims.d_a), w_b);
  const Matrix vt = u.adjoint() * v * u;
  const Matrix comm = vt * w - w * vt;
  return comm.squaredNorm() / (2.0 * dims.d());
}

}  // namespace testutil
