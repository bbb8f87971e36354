#include "core/dense.hpp"

#include <cmath>

namespace botoc {

// ---------------------------------------------------------------- validation

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  Matrix g = u.adjoint() * u;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols()) return false;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must be square");
}

void require_unitary(const Matrix& u, double tol, const char* what) {
  require_square(u, what);
  if (!is_unitary(u, tol))
    throw Error(ErrorCode::NotUnitary, std::string(what) + " is not unitary");
}

void require_hermitian(const Matrix& h, double tol, const char* what) {
  require_square(h, what);
  if (!is_hermitian(h, tol))
    throw Error(ErrorCode::NotHermitian,
                std::string(what) + " is not hermitian");
}

void require_dims(const Matrix& m, const BipartiteDims& dims, const char* what) {
  dims.validate();
  if (m.rows() != dims.d() || m.cols() != dims.d())
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " does not match the bipartite dimension");
}

// ------------------------------------------------------------- constructions

Matrix identity(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  return Matrix::Identity(d, d);
}

Matrix pauli(int k) {
  Matrix m(2, 2);
  const Complex i(0.0, 1.0);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default:
      throw Error(ErrorCode::InvalidArgument, "pauli index must be 0..3");
  }
  return m;
}

// ------------------------------------------------------- bipartite primitives

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& x, const BipartiteDims& dims, Factor keep) {
  require_dims(x, dims, "partial_trace input");
  const int da = dims.d_a, db = dims.d_b;
  if (keep == Factor::A) {
    Matrix out = Matrix::Zero(da, da);
    for (int a = 0; a < da; ++a)
      for (int c = 0; c < da; ++c)
        for (int b = 0; b < db; ++b) out(a, c) += x(a * db + b, c * db + b);
    return out;
  }
  Matrix out = Matrix::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int e = 0; e < db; ++e)
      for (int a = 0; a < da; ++a) out(b, e) += x(a * db + b, a * db + e);
  return out;
}

Matrix swap_replica(int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Matrix s = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

Matrix permute_bipartite(const Matrix& u, const BipartiteDims& dims,
                         const std::array<int, 4>& perm) {
  require_dims(u, dims, "permute_bipartite input");
  {
    std::array<bool, 4> seen{false, false, false, false};
    for (int p : perm) {
      if (p < 0 || p > 3 || seen[p])
        throw Error(ErrorCode::InvalidArgument,
                    "permutation must be a bijection of the four tensor legs");
      seen[p] = true;
    }
  }
  const int size[4] = {dims.d_a, dims.d_b, dims.d_a, dims.d_b};
  Matrix out(size[perm[0]] * size[perm[1]], size[perm[2]] * size[perm[3]]);
  int idx[4];
  for (idx[0] = 0; idx[0] < size[0]; ++idx[0])
    for (idx[1] = 0; idx[1] < size[1]; ++idx[1])
      for (idx[2] = 0; idx[2] < size[2]; ++idx[2])
        for (idx[3] = 0; idx[3] < size[3]; ++idx[3])
          out(idx[perm[0]] * size[perm[1]] + idx[perm[1]],
              idx[perm[2]] * size[perm[3]] + idx[perm[3]]) =
              u(idx[0] * size[1] + idx[1], idx[2] * size[3] + idx[3]);
  return out;
}

Matrix realign_aa(const Matrix& u, const BipartiteDims& dims) {
  return permute_bipartite(u, dims, {0, 2, 1, 3});
}

Matrix reduced_density(const Vector& psi, const BipartiteDims& dims,
                       Factor keep) {
  dims.validate();
  if (psi.size() != dims.d())
    throw Error(ErrorCode::DimensionMismatch,
                "state length does not match the bipartite dimension");
  using RowMajor =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> v(psi.data(), dims.d_a, dims.d_b);
  if (keep == Factor::A) return v * v.adjoint();
  return v.transpose() * v.conjugate();
}

// ---------------------------------------------------------------- functionals

Complex hs_inner(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw Error(ErrorCode::DimensionMismatch, "hs_inner shapes differ");
  return (x.conjugate().cwiseProduct(y)).sum();
}

double linear_entropy(const Matrix& rho) {
  require_square(rho, "density operator");
  if (!is_hermitian(rho, 1e-10))
    throw Error(ErrorCode::NotHermitian, "density operator is not hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-8)
    throw Error(ErrorCode::InvalidArgument, "density operator trace is not 1");
  return 1.0 - rho.squaredNorm();  // Tr(rho^2) = |rho|_2^2 for hermitian rho
}

// ------------------------------------------------------------- random objects

Matrix haar_unitary(int d, RngStream& rng) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Matrix z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = rng.next_complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  // Fix the phase gauge so the distribution is exactly Haar: rescale each
  // column by the phase of the matching diagonal entry of R.
  for (int j = 0; j < d; ++j) {
    Complex rjj = qr.matrixQR()(j, j);
    double m = std::abs(rjj);
    q.col(j) *= (m > 0.0) ? rjj / m : Complex(1.0, 0.0);
  }
  return q;
}

Vector haar_state(int d, RngStream& rng) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.next_complex_gaussian();
  double n = v.norm();
  if (n == 0.0) throw Error(ErrorCode::Numerical, "degenerate gaussian draw");
  return v / n;
}

}  // namespace botoc
