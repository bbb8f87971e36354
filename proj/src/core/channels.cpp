#include "core/channels.hpp"

#include <cmath>
#include <string>

#include "core/dense.hpp"
#include "core/estimates.hpp"
#include "core/otoc.hpp"

namespace botoc {

ChannelRep reduced_channel(const Matrix& u, const BipartiteDims& dims,
                           Factor keep) {
  dims.validate();
  require_dims(u, dims, "unitary");
  require_unitary(u, 1e-10, "unitary");
  const int dchi = dims.dim(keep);
  const int dbar = dims.dim(other_factor(keep));
  const int db = dims.d_b;
  const double inv_dbar = 1.0 / static_cast<double>(dbar);

  // Column blocks c[i] = U (|i> (x) I_bar); Lambda(|i><j|) is then the
  // partial trace of c[i] c[j]^dag over the discarded factor, scaled by the
  // maximally mixed input on that factor.
  std::vector<Matrix> c(static_cast<size_t>(dchi));
  if (keep == Factor::A) {
    for (int i = 0; i < dchi; ++i) {
      c[static_cast<size_t>(i)] = u.middleCols(i * db, db);
    }
  } else {
    for (int i = 0; i < dchi; ++i) {
      Matrix block(dims.d(), dbar);
      for (int a = 0; a < dbar; ++a) block.col(a) = u.col(a * db + i);
      c[static_cast<size_t>(i)] = std::move(block);
    }
  }

  ChannelRep ch;
  ch.dim = dchi;
  ch.keep = keep;
  ch.action.resize(static_cast<size_t>(dchi) * dchi);
  for (int i = 0; i < dchi; ++i) {
    for (int j = 0; j < dchi; ++j) {
      const Matrix& ci = c[static_cast<size_t>(i)];
      const Matrix& cj = c[static_cast<size_t>(j)];
      Matrix lam(dchi, dchi);
      for (int x = 0; x < dchi; ++x) {
        for (int y = 0; y < dchi; ++y) {
          Complex s(0.0, 0.0);
          if (keep == Factor::A) {
            s = (ci.middleRows(x * db, db)
                     .cwiseProduct(cj.middleRows(y * db, db).conjugate()))
                    .sum();
          } else {
            for (int a = 0; a < dbar; ++a) {
              s += (ci.row(a * db + x)
                        .cwiseProduct(cj.row(a * db + y).conjugate()))
                       .sum();
            }
          }
          lam(x, y) = s * inv_dbar;
        }
      }
      ch.action[static_cast<size_t>(i) * dchi + j] = std::move(lam);
    }
  }

  ch.choi = Matrix::Zero(dchi * dchi, dchi * dchi);
  const double inv_dchi = 1.0 / static_cast<double>(dchi);
  for (int i = 0; i < dchi; ++i) {
    for (int j = 0; j < dchi; ++j) {
      const Matrix& lam = ch.entry(i, j);
      for (int x = 0; x < dchi; ++x) {
        for (int y = 0; y < dchi; ++y) {
          ch.choi(x * dchi + i, y * dchi + j) = lam(x, y) * inv_dchi;
        }
      }
    }
  }
  return ch;
}

Matrix apply_channel(const ChannelRep& ch, const Matrix& rho) {
  if (ch.dim <= 0 || ch.action.size() !=
                         static_cast<size_t>(ch.dim) * ch.dim) {
    throw Error(ErrorCode::InvalidArgument, "channel is not initialized");
  }
  require_square(rho, "channel input");
  if (rho.rows() != ch.dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "channel input has the wrong dimension");
  }
  Matrix out = Matrix::Zero(ch.dim, ch.dim);
  for (int i = 0; i < ch.dim; ++i) {
    for (int j = 0; j < ch.dim; ++j) {
      const Complex c = rho(i, j);
      if (c != Complex(0.0, 0.0)) out += c * ch.entry(i, j);
    }
  }
  return out;
}

Matrix choi_state(const ChannelRep& ch) {
  if (ch.choi.rows() != static_cast<Eigen::Index>(ch.dim) * ch.dim) {
    throw Error(ErrorCode::InvalidArgument, "channel is not initialized");
  }
  return ch.choi;
}

void certify_channel(const ChannelRep& ch, double tol) {
  const int n = ch.dim;
  if (n <= 0 || ch.action.size() != static_cast<size_t>(n) * n) {
    throw Error(ErrorCode::InvalidArgument, "channel is not initialized");
  }
  // Trace preservation: Tr Lambda(|i><j|) = delta_ij.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex tr = ch.entry(i, j).trace();
      const Complex want = i == j ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
      if (std::abs(tr - want) > tol) {
        throw Error(ErrorCode::Numerical,
                    "channel is not trace preserving at unit (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  // Unitality: sum_i Lambda(|i><i|) = I.
  Matrix unital = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) unital += ch.entry(i, i);
  if ((unital - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::Numerical, "channel is not unital");
  }
  // Complete positivity: the Choi state is a density matrix.
  if (!is_hermitian(ch.choi, tol)) {
    throw Error(ErrorCode::Numerical, "choi matrix is not hermitian");
  }
  if (std::abs(ch.choi.trace() - Complex(1.0, 0.0)) > tol) {
    throw Error(ErrorCode::Numerical, "choi matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(ch.choi);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::Numerical, "choi eigendecomposition failed");
  }
  if (es.eigenvalues().minCoeff() < -tol) {
    throw Error(ErrorCode::Numerical, "choi matrix is not positive");
  }
  // Tr_out of the Choi state is maximally mixed on the input copy.
  Matrix in_marginal = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      in_marginal(i, j) = ch.entry(i, j).trace() / static_cast<double>(n);
    }
  }
  if ((in_marginal - Matrix::Identity(n, n) / static_cast<double>(n))
          .cwiseAbs()
          .maxCoeff() > tol) {
    throw Error(ErrorCode::Numerical,
                "choi input marginal is not maximally mixed");
  }
}

ChoiCheck choi_distance_check(const Matrix& u, const BipartiteDims& dims,
                              Factor keep) {
  ChoiCheck out;
  OtocRequest req{u, dims, 0.0, std::nullopt};
  out.g = g_exact(req);
  const ChannelRep ch = reduced_channel(u, dims, keep);
  const double dchi2 = static_cast<double>(ch.dim) * ch.dim;
  out.g_max = 1.0 - 1.0 / dchi2;
  const Matrix delta =
      ch.choi - Matrix::Identity(ch.choi.rows(), ch.choi.cols()) / dchi2;
  out.distance_sq = delta.squaredNorm();
  return out;
}

DiamondBounds diamond_bounds(const Matrix& u, const BipartiteDims& dims,
                             Factor keep) {
  const ChoiCheck chk = choi_distance_check(u, dims, keep);
  DiamondBounds b;
  b.lower = std::sqrt(std::max(0.0, chk.g_max - chk.g));
  const double dchi = static_cast<double>(dims.dim(keep));
  b.upper = std::pow(dchi, 1.5) * b.lower;
  return b;
}

double markov_fraction_bound(double haar_avg, double exact_avg,
                             const BipartiteDims& dims, Factor keep,
                             double epsilon) {
  dims.validate();
  if (epsilon <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  }
  const double dchi = static_cast<double>(dims.dim(keep));
  const double dbar = static_cast<double>(dims.dim(other_factor(keep)));
  const double gap = std::max(0.0, haar_avg - exact_avg);
  const double kappa = std::sqrt(1.0 + 0.5 * dbar * dbar * gap);
  return 2.0 * std::pow(dchi, 1.5) * kappa / (epsilon * dbar);
}

double markov_fraction_bound(const EstimateReport& report, double epsilon,
                             Factor keep) {
  return markov_fraction_bound(report.haar, report.exact, report.dims, keep,
                               epsilon);
}

}  // namespace botoc
