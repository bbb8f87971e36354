#include "core/estimates.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "core/dense.hpp"

namespace botoc {

namespace {

using StateMap = Eigen::Map<
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                        Eigen::RowMajor>>;

// Eigenvector k reshaped so that the row index is the first factor.
StateMap state_matrix(const SpectralData& spec, int k,
                      const BipartiteDims& dims) {
  return StateMap(spec.eigenvectors.col(k).data(), dims.d_a, dims.d_b);
}

void check_spec_dims(const SpectralData& spec, const BipartiteDims& dims) {
  dims.validate();
  if (spec.d() != dims.d()) {
    throw Error(ErrorCode::DimensionMismatch,
                "spectral data does not match the bipartition");
  }
}

// Frobenius overlaps |<x_u, x_v>|^2 summed over all row pairs of the stack
// of flattened operators.
double gram_norm_sq(const Matrix& stack) {
  const Matrix gram = stack.conjugate() * stack.transpose();
  return gram.squaredNorm();
}

}  // namespace

double haar_estimate(const BipartiteDims& dims) {
  dims.validate();
  const double da2 = static_cast<double>(dims.d_a) * dims.d_a;
  const double db2 = static_cast<double>(dims.d_b) * dims.d_b;
  const double d2 = da2 * db2;
  if (dims.d() == 1) return 0.0;
  return (da2 - 1.0) * (db2 - 1.0) / (d2 - 1.0);
}

double haar_estimate_asymptote(int d_a) {
  if (d_a < 1) {
    throw Error(ErrorCode::InvalidArgument, "factor dimension must be >= 1");
  }
  const double da2 = static_cast<double>(d_a) * d_a;
  return 1.0 - 1.0 / da2;
}

GramData gram_matrices(const SpectralData& spec, const BipartiteDims& dims) {
  check_spec_dims(spec, dims);
  const int d = dims.d();
  const int da = dims.d_a;
  const int db = dims.d_b;

  GramData out;
  // The reduced states of the smaller factor are stacked and contracted in
  // one product; the other Gram matrix is filled pairwise through the
  // cross-operator identity Tr(rho_k^B rho_l^B) = |V_k V_l^dag|_F^2, which
  // keeps every intermediate on the smaller factor.
  if (da <= db) {
    Matrix stack(d, da * da);
    for (int k = 0; k < d; ++k) {
      const Matrix rho = state_matrix(spec, k, dims) *
                         state_matrix(spec, k, dims).adjoint();
      stack.row(k) = Eigen::Map<const Vector>(rho.data(), da * da);
    }
    out.r_a = (stack.conjugate() * stack.transpose()).real();
    out.r_b.resize(d, d);
    for (int k = 0; k < d; ++k) {
      for (int l = k; l < d; ++l) {
        const Matrix cross = state_matrix(spec, k, dims) *
                             state_matrix(spec, l, dims).adjoint();
        const double v = cross.squaredNorm();
        out.r_b(k, l) = v;
        out.r_b(l, k) = v;
      }
    }
  } else {
    Matrix stack(d, db * db);
    for (int k = 0; k < d; ++k) {
      const Matrix rho = state_matrix(spec, k, dims).transpose() *
                         state_matrix(spec, k, dims).conjugate();
      stack.row(k) = Eigen::Map<const Vector>(rho.data(), db * db);
    }
    out.r_b = (stack.conjugate() * stack.transpose()).real();
    out.r_a.resize(d, d);
    for (int k = 0; k < d; ++k) {
      for (int l = k; l < d; ++l) {
        const Matrix cross = state_matrix(spec, k, dims).adjoint() *
                             state_matrix(spec, l, dims);
        const double v = cross.squaredNorm();
        out.r_a(k, l) = v;
        out.r_a(l, k) = v;
      }
    }
  }
  out.diag = out.r_a.diagonal();
  return out;
}

double nrc_estimate(const SpectralData& spec, const BipartiteDims& dims) {
  const GramData g = gram_matrices(spec, dims);
  const double d2 = static_cast<double>(dims.d()) * dims.d();
  return 1.0 - (g.r_a.squaredNorm() + g.r_b.squaredNorm() -
                g.diag.squaredNorm()) /
                   d2;
}

double nrc_plus_estimate(const SpectralData& spec, const BipartiteDims& dims) {
  check_spec_dims(spec, dims);
  const int da = dims.d_a;
  const double d2 = static_cast<double>(dims.d()) * dims.d();
  const auto& classes = spec.level_classes;
  const int nc = static_cast<int>(classes.size());

  // Stack of all within-class cross operators V_k V_m^dag, one contiguous
  // block per level class, flattened on the first factor.
  std::vector<Eigen::Index> offset(static_cast<size_t>(nc) + 1, 0);
  for (int c = 0; c < nc; ++c) {
    const auto n = static_cast<Eigen::Index>(classes[c].size());
    offset[static_cast<size_t>(c) + 1] = offset[static_cast<size_t>(c)] + n * n;
  }
  Matrix within(offset[static_cast<size_t>(nc)], da * da);
  for (int c = 0; c < nc; ++c) {
    Eigen::Index r = offset[static_cast<size_t>(c)];
    for (int k : classes[static_cast<size_t>(c)]) {
      for (int m : classes[static_cast<size_t>(c)]) {
        const Matrix cross = state_matrix(spec, k, dims) *
                             state_matrix(spec, m, dims).adjoint();
        within.row(r++) = Eigen::Map<const Vector>(cross.data(), da * da);
      }
    }
  }
  const Matrix gram = within.conjugate() * within.transpose();
  const double s1 = gram.squaredNorm();

  // Between-class contribution; the pair (Q,P) mirrors (P,Q), and the P = Q
  // terms cancel against the double-counting correction.
  double s_between = 0.0;
  for (int p = 0; p < nc; ++p) {
    const auto& cp = classes[static_cast<size_t>(p)];
    for (int q = p + 1; q < nc; ++q) {
      const auto& cq = classes[static_cast<size_t>(q)];
      Matrix stack(static_cast<Eigen::Index>(cp.size()) *
                       static_cast<Eigen::Index>(cq.size()),
                   da * da);
      Eigen::Index r = 0;
      for (int a : cp) {
        for (int b : cq) {
          const Matrix cross = state_matrix(spec, a, dims) *
                               state_matrix(spec, b, dims).adjoint();
          stack.row(r++) = Eigen::Map<const Vector>(cross.data(), da * da);
        }
      }
      s_between += gram_norm_sq(stack);
    }
  }
  return 1.0 - (s1 + 2.0 * s_between) / d2;
}

double exact_time_average(const SpectralData& spec,
                          const BipartiteDims& dims) {
  check_spec_dims(spec, dims);
  const int da = dims.d_a;
  const double d2 = static_cast<double>(dims.d()) * dims.d();
  double total = 0.0;
  for (const auto& cls : spec.gap_classes) {
    Matrix stack(static_cast<Eigen::Index>(cls.index_pair_count), da * da);
    Eigen::Index r = 0;
    for (const auto& [kc, mc] : cls.level_pairs) {
      for (int k : spec.level_classes[static_cast<size_t>(kc)]) {
        for (int m : spec.level_classes[static_cast<size_t>(mc)]) {
          const Matrix cross = state_matrix(spec, k, dims) *
                               state_matrix(spec, m, dims).adjoint();
          stack.row(r++) = Eigen::Map<const Vector>(cross.data(), da * da);
        }
      }
    }
    if (r != stack.rows()) {
      throw Error(ErrorCode::Internal, "gap class pair count is inconsistent");
    }
    total += gram_norm_sq(stack);
  }
  return 1.0 - total / d2;
}

EstimateReport hierarchy_report(const SpectralData& spec,
                                const BipartiteDims& dims,
                                const std::string& model_tag) {
  EstimateReport rep;
  rep.haar = haar_estimate(dims);
  rep.nrc = nrc_estimate(spec, dims);
  rep.nrc_plus = nrc_plus_estimate(spec, dims);
  rep.exact = exact_time_average(spec, dims);
  rep.model_tag = model_tag;
  rep.dims = dims;
  rep.nrc_flags = nrc_report(spec);
  const double slack = 1e-8;
  rep.hierarchy_ok = rep.haar >= rep.nrc - slack &&
                     rep.nrc >= rep.nrc_plus - slack &&
                     rep.nrc_plus >= rep.exact - slack;
  return rep;
}

RealVector eigenstate_entanglement_profile(const SpectralData& spec,
                                           const BipartiteDims& dims) {
  check_spec_dims(spec, dims);
  const int d = dims.d();
  RealVector out(d);
  for (int k = 0; k < d; ++k) {
    const auto v = state_matrix(spec, k, dims);
    double purity = 0.0;
    if (dims.d_a <= dims.d_b) {
      purity = Matrix(v * v.adjoint()).squaredNorm();
    } else {
      purity = Matrix(v.adjoint() * v).squaredNorm();
    }
    out(k) = 1.0 - purity;
  }
  return out;
}

ProfileBound profile_bound(const RealVector& profile,
                           const BipartiteDims& dims, double epsilon,
                           std::optional<double> nrc_value) {
  dims.validate();
  if (profile.size() != dims.d()) {
    throw Error(ErrorCode::DimensionMismatch,
                "profile length does not match the bipartition");
  }
  if (epsilon < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be nonnegative");
  }
  const double d = static_cast<double>(dims.d());
  const double d_min = static_cast<double>(dims.d_min());
  const double d_max = static_cast<double>(dims.d_max());
  const double lambda = dims.aspect();
  const double e_max = 1.0 - 1.0 / d_max;

  ProfileBound out;
  Eigen::Index near = 0;
  for (Eigen::Index k = 0; k < profile.size(); ++k) {
    if (e_max - profile(k) <= epsilon) ++near;
  }
  out.alpha = static_cast<double>(near) / d;
  out.j_term = 6.0 * epsilon / d_min + 2.5 * epsilon * epsilon +
               2.0 * (lambda * lambda - 1.0) / (d_max * d_max);
  out.k_term = (1.0 + 2.0 / d_min) * (1.0 - out.alpha) + 2.0 / d +
               4.0 * (epsilon + std::sqrt(epsilon));
  out.bound = out.alpha * out.j_term + (1.0 - out.alpha) * out.k_term;
  out.g_me_nrc = (1.0 - 1.0 / d) * (1.0 - 1.0 / d);
  if (nrc_value) out.nrc_deviation = std::abs(out.g_me_nrc - *nrc_value);
  return out;
}

}  // namespace botoc
