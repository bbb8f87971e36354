#include "core/otoc.hpp"

#include <cmath>

#include "core/channels.hpp"
#include "core/dense.hpp"

namespace botoc {

void OtocRequest::validate() const {
  dims.validate();
  require_dims(unitary, dims, "evolution operator");
  require_unitary(unitary, 1e-10, "evolution operator");
  if (beta < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "beta must be nonnegative");
  }
  if (beta > 0.0) {
    if (!hamiltonian) {
      throw Error(ErrorCode::InvalidArgument,
                  "thermal weighting requires a hamiltonian");
    }
    require_dims(*hamiltonian, dims, "hamiltonian");
    require_hermitian(*hamiltonian, 1e-10, "hamiltonian");
  }
}

double g_exact(const OtocRequest& req, ReplicaSide side) {
  req.validate();
  if (req.beta != 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "g_exact is the infinite-temperature form; use g_thermal");
  }
  const Matrix r = realign_aa(req.unitary, req.dims);
  const bool use_aa =
      side == ReplicaSide::AA ||
      (side == ReplicaSide::Auto && req.dims.d_a <= req.dims.d_b);
  // Tr(S U^(x2) S U^dag(x2)) = |R R^dag|_F^2 = |R^dag R|_F^2; the Gram on
  // the contracted side is the smaller square matrix.
  const Matrix m = use_aa ? Matrix(r * r.adjoint()) : Matrix(r.adjoint() * r);
  const double d = static_cast<double>(req.dims.d());
  return 1.0 - m.squaredNorm() / (d * d);
}

double g_reduced(const OtocRequest& req) {
  req.validate();
  if (req.beta != 0.0) {
    throw Error(ErrorCode::InvalidArgument,
                "g_reduced is the infinite-temperature form");
  }
  const ChannelRep ch =
      reduced_channel(req.unitary, req.dims, req.dims.smaller());
  double sum = 0.0;
  for (const Matrix& m : ch.action) sum += m.squaredNorm();
  const double dchi2 = static_cast<double>(ch.dim) * ch.dim;
  return 1.0 - sum / dchi2;
}

double g_thermal(const OtocRequest& req) {
  req.validate();
  const BipartiteDims& dims = req.dims;
  const int d = dims.d();
  const int da = dims.d_a;
  const int db = dims.d_b;
  const Matrix& u = req.unitary;

  Matrix rho;
  if (req.beta == 0.0) {
    rho = Matrix::Identity(d, d) / static_cast<double>(d);
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(*req.hamiltonian);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::Numerical,
                  "eigendecomposition of the hamiltonian failed");
    }
    const RealVector& e = es.eigenvalues();
    RealVector w(d);
    const double e_min = e.minCoeff();
    for (int k = 0; k < d; ++k) w(k) = std::exp(-req.beta * (e(k) - e_min));
    w /= w.sum();
    rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  }

  // Row blocks R_i = <i|_A U pick the A-index of the output; the doubled
  // trace collapses to d_a^2 products of partial traces:
  //   T = sum_ij Tr[ Tr_B(rho R_i^dag R_j) Tr_B(R_j^dag R_i) ].
  std::vector<Matrix> y(static_cast<size_t>(da));  // y[i] = rho R_i^dag
  for (int i = 0; i < da; ++i) {
    y[static_cast<size_t>(i)] = rho * u.middleRows(i * db, db).adjoint();
  }
  Complex t(0.0, 0.0);
  Matrix m1(da, da), m2(da, da);
  for (int i = 0; i < da; ++i) {
    const auto ri = u.middleRows(i * db, db);
    const Matrix& yi = y[static_cast<size_t>(i)];
    for (int j = 0; j < da; ++j) {
      const auto rj = u.middleRows(j * db, db);
      for (int a = 0; a < da; ++a) {
        for (int c = 0; c < da; ++c) {
          Complex s1(0.0, 0.0);
          Complex s2(0.0, 0.0);
          for (int b = 0; b < db; ++b) {
            s1 += (yi.row(a * db + b) * rj.col(c * db + b)).value();
            s2 += rj.col(a * db + b).dot(ri.col(c * db + b));
          }
          m1(a, c) = s1;
          m2(a, c) = s2;
        }
      }
      t += (m1 * m2).trace();
    }
  }
  return 1.0 - t.real() / static_cast<double>(d);
}

namespace detail {

// out = (v (x) I_B) m, using the block structure of the local factor.
static Matrix left_mul_a(const Matrix& v, const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (int a = 0; a < da; ++a) {
    for (int ap = 0; ap < da; ++ap) {
      const Complex c = v(a, ap);
      if (c != Complex(0.0, 0.0)) {
        out.middleRows(a * db, db) += c * m.middleRows(ap * db, db);
      }
    }
  }
  return out;
}

// out = m (v (x) I_B).
static Matrix right_mul_a(const Matrix& m, const Matrix& v, int da, int db) {
  Matrix out = Matrix::Zero(m.rows(), m.cols());
  for (int a = 0; a < da; ++a) {
    for (int ap = 0; ap < da; ++ap) {
      const Complex c = v(ap, a);
      if (c != Complex(0.0, 0.0)) {
        out.middleCols(a * db, db) += c * m.middleCols(ap * db, db);
      }
    }
  }
  return out;
}

// out = (I_A (x) w) m.
static Matrix left_mul_b(const Matrix& w, const Matrix& m, int da, int db) {
  Matrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a) {
    out.middleRows(a * db, db) = w * m.middleRows(a * db, db);
  }
  return out;
}

double commutator_otoc_unchecked(const Matrix& u, const Matrix& v_a,
                                 const Matrix& w_b,
                                 const BipartiteDims& dims) {
  const int da = dims.d_a;
  const int db = dims.d_b;
  // C = 1 - Re Tr(V P V^dag P^dag)/d with P = U (I (x) w) U^dag; the trace
  // is the entrywise overlap of V P with P V.
  const Matrix p = u * left_mul_b(w_b, u.adjoint(), da, db);
  const Matrix vp = left_mul_a(v_a, p, da, db);
  const Matrix pv = right_mul_a(p, v_a, da, db);
  const Complex tr = (pv.conjugate().cwiseProduct(vp)).sum();
  return 1.0 - tr.real() / static_cast<double>(dims.d());
}

}  // namespace detail

double commutator_otoc(const Matrix& u, const Matrix& v_a, const Matrix& w_b,
                       const BipartiteDims& dims) {
  dims.validate();
  require_dims(u, dims, "evolution operator");
  require_unitary(u, 1e-10, "evolution operator");
  require_square(v_a, "first local operator");
  require_square(w_b, "second local operator");
  if (v_a.rows() != dims.d_a) {
    throw Error(ErrorCode::DimensionMismatch,
                "first local operator must act on the first factor");
  }
  if (w_b.rows() != dims.d_b) {
    throw Error(ErrorCode::DimensionMismatch,
                "second local operator must act on the second factor");
  }
  require_unitary(v_a, 1e-10, "first local operator");
  require_unitary(w_b, 1e-10, "second local operator");
  return detail::commutator_otoc_unchecked(u, v_a, w_b, dims);
}

double operator_entanglement(const Matrix& u, const BipartiteDims& dims) {
  dims.validate();
  require_dims(u, dims, "unitary");
  require_unitary(u, 1e-10, "unitary");
  const int da = dims.d_a;
  const int db = dims.d_b;
  const double d = static_cast<double>(dims.d());
  const double inv_sqrt_d = 1.0 / std::sqrt(d);
  // Vectorize U against the maximally entangled pairing, then regroup the
  // four legs as (a a') x (b b') and trace out the second pair.
  Matrix v(da * da, db * db);
  for (int a = 0; a < da; ++a) {
    for (int b = 0; b < db; ++b) {
      for (int ap = 0; ap < da; ++ap) {
        for (int bp = 0; bp < db; ++bp) {
          v(a * da + ap, b * db + bp) =
              u(a * db + b, ap * db + bp) * inv_sqrt_d;
        }
      }
    }
  }
  const Matrix sigma = v * v.adjoint();
  return linear_entropy(sigma);
}

double entangling_power(const Matrix& u, const BipartiteDims& dims) {
  dims.validate();
  if (dims.d_a != dims.d_b) {
    throw Error(ErrorCode::Unsupported,
                "entangling power is defined for symmetric bipartitions");
  }
  require_dims(u, dims, "unitary");
  require_unitary(u, 1e-10, "unitary");
  const Matrix s = swap_replica(dims.d_a);
  OtocRequest base{u, dims, 0.0, std::nullopt};
  OtocRequest swapped{Matrix(u * s), dims, 0.0, std::nullopt};
  OtocRequest swap_only{s, dims, 0.0, std::nullopt};
  const double d = static_cast<double>(dims.d());
  const double root = std::sqrt(d);
  const double prefactor = d / ((root + 1.0) * (root + 1.0));
  return prefactor *
         (g_exact(base) + g_exact(swapped) - g_exact(swap_only));
}

}  // namespace botoc
