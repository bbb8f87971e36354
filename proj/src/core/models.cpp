#include "core/models.hpp"

#include <algorithm>
#include <cmath>

#include "core/dense.hpp"
#include "core/matrix_io.hpp"

namespace botoc {

namespace {

double take_param(const HamiltonianSpec& spec, const char* name) {
  auto it = spec.params.find(name);
  if (it == spec.params.end())
    throw Error(ErrorCode::InvalidArgument,
                std::string("missing model parameter '") + name + "'");
  return it->second;
}

void check_param_keys(const HamiltonianSpec& spec,
                      std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : spec.params) {
    (void)value;
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok)
      throw Error(ErrorCode::InvalidArgument,
                  "unknown model parameter '" + key + "'");
  }
}

Matrix build_chain(const HamiltonianSpec& spec) {
  if (spec.n_sites < 2)
    throw Error(ErrorCode::InvalidArgument,
                "chain models need at least two sites");
  if (spec.n_sites > 24)
    throw Error(ErrorCode::Resource, "chain dimension 2^n too large");
  const int n = spec.n_sites;
  const long d = 1L << n;
  const auto mask = [n](int site) { return 1L << (n - 1 - site); };
  const auto zsign = [&](long s, int site) {
    return (s & mask(site)) ? -1.0 : 1.0;
  };
  Matrix h = Matrix::Zero(d, d);

  if (spec.kind == ModelKind::TFIM) {
    check_param_keys(spec, {"g", "h"});
    const double g = take_param(spec, "g");
    const double hz = take_param(spec, "h");
    for (long s = 0; s < d; ++s) {
      double diag = 0.0;
      for (int i = 0; i + 1 < n; ++i) diag -= zsign(s, i) * zsign(s, i + 1);
      for (int i = 0; i < n; ++i) diag -= hz * zsign(s, i);
      h(s, s) = diag;
      for (int i = 0; i < n; ++i) h(s ^ mask(i), s) -= g;
    }
    return h;
  }

  check_param_keys(spec, {"J", "delta"});
  const double J = take_param(spec, "J");
  const double delta = take_param(spec, "delta");
  for (long s = 0; s < d; ++s) {
    double diag = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      diag -= J * delta * zsign(s, i) * zsign(s, i + 1);
      // xx + yy flips antiparallel neighbors with amplitude 2
      if (zsign(s, i) * zsign(s, i + 1) < 0.0)
        h(s ^ (mask(i) | mask(i + 1)), s) -= 2.0 * J;
    }
    h(s, s) = diag;
  }
  return h;
}

}  // namespace

Matrix build_hamiltonian(const HamiltonianSpec& spec) {
  if (spec.kind == ModelKind::CustomMatrix) {
    Matrix h;
    if (spec.custom_matrix)
      h = *spec.custom_matrix;
    else if (!spec.custom_path.empty())
      h = load_matrix(spec.custom_path);
    else
      throw Error(ErrorCode::InvalidArgument,
                  "custom model needs a matrix or a file path");
    require_square(h, "custom hamiltonian");
    if (!is_hermitian(h, 1e-10))
      throw Error(ErrorCode::NotHermitian, "custom hamiltonian is not hermitian");
    return h;
  }
  return build_chain(spec);
}

namespace {

// Single-linkage clustering of sorted values: a new class starts wherever
// consecutive values are separated by more than the threshold.
std::vector<std::vector<int>> cluster_sorted(const std::vector<double>& values,
                                             const std::vector<int>& order,
                                             double threshold) {
  std::vector<std::vector<int>> classes;
  for (size_t i = 0; i < order.size(); ++i) {
    if (i == 0 ||
        values[order[i]] - values[order[i - 1]] > threshold)
      classes.emplace_back();
    classes.back().push_back(order[i]);
  }
  return classes;
}

}  // namespace

SpectralData eigendecompose(const Matrix& h, double tol_level, double tol_gap) {
  require_hermitian(h, 1e-10);
  if (tol_level < 0 || tol_gap < 0)
    throw Error(ErrorCode::InvalidArgument, "tolerances must be nonnegative");

  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::Numerical, "eigendecomposition failed");

  SpectralData spec;
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  spec.tol_level = tol_level;
  spec.tol_gap = tol_gap;
  const int d = spec.d();
  spec.spectral_range = spec.eigenvalues(d - 1) - spec.eigenvalues(0);

  // Level classes: eigenvalues are already ascending.
  const double thr_level = tol_level * spec.spectral_range;
  spec.level_classes.emplace_back();
  spec.level_classes.back().push_back(0);
  for (int k = 1; k < d; ++k) {
    if (spec.eigenvalues(k) - spec.eigenvalues(k - 1) > thr_level)
      spec.level_classes.emplace_back();
    spec.level_classes.back().push_back(k);
  }
  const int n_levels = int(spec.level_classes.size());
  spec.level_of.assign(d, -1);
  spec.class_energy.assign(n_levels, 0.0);
  for (int c = 0; c < n_levels; ++c) {
    double sum = 0.0;
    for (int k : spec.level_classes[c]) {
      spec.level_of[k] = c;
      sum += spec.eigenvalues(k);
    }
    spec.class_energy[c] = sum / double(spec.level_classes[c].size());
  }

  // Gap classes over ordered level pairs, keyed by representative gaps.
  // Differences of identical representatives are identical doubles, so
  // exact degeneracies can never straddle a class boundary.
  const long n_pairs = long(n_levels) * n_levels;
  std::vector<double> gap(n_pairs);
  std::vector<int> order(n_pairs);
  for (int k = 0; k < n_levels; ++k)
    for (int m = 0; m < n_levels; ++m)
      gap[long(k) * n_levels + m] = spec.class_energy[k] - spec.class_energy[m];
  for (long i = 0; i < n_pairs; ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (gap[x] != gap[y]) return gap[x] < gap[y];
    return x < y;  // deterministic tie-break: (K, M) lexicographic
  });

  const double thr_gap = tol_gap * spec.spectral_range;
  auto grouped = cluster_sorted(gap, order, thr_gap);
  spec.gap_classes.reserve(grouped.size());
  for (auto& members : grouped) {
    SpectralData::GapClass cls;
    double sum = 0.0;
    for (int pair_id : members) {
      const int k = pair_id / n_levels;
      const int m = pair_id % n_levels;
      cls.level_pairs.emplace_back(k, m);
      cls.index_pair_count += long(spec.level_classes[k].size()) *
                              long(spec.level_classes[m].size());
      sum += gap[pair_id];
      if (k == m) spec.zero_class = int(spec.gap_classes.size());
    }
    cls.value = sum / double(members.size());
    spec.gap_classes.push_back(std::move(cls));
  }
  return spec;
}

Matrix evolution(const SpectralData& spec, double t) {
  const int d = spec.d();
  Vector phases(d);
  for (int k = 0; k < d; ++k) {
    const double angle = -spec.eigenvalues(k) * t;
    phases(k) = Complex(std::cos(angle), std::sin(angle));
  }
  return spec.eigenvectors * phases.asDiagonal() * spec.eigenvectors.adjoint();
}

NrcReport nrc_report(const SpectralData& spec) {
  NrcReport rep;
  rep.n_level_classes = int(spec.level_classes.size());
  rep.n_gap_classes = int(spec.gap_classes.size());
  for (const auto& cls : spec.level_classes)
    if (cls.size() > 1) ++rep.degenerate_level_count;
  rep.levels_nondegenerate = rep.degenerate_level_count == 0;

  for (int c = 0; c < rep.n_gap_classes; ++c) {
    if (c == spec.zero_class) continue;
    const auto& cls = spec.gap_classes[c];
    if (cls.index_pair_count > 1) ++rep.degenerate_gap_count;
    if (cls.level_pairs.size() > 1) ++rep.nrc_plus_violation_count;
  }
  rep.gaps_nondegenerate = rep.degenerate_gap_count == 0;
  rep.nrc = rep.levels_nondegenerate && rep.gaps_nondegenerate;
  rep.nrc_plus = rep.nrc_plus_violation_count == 0;
  rep.basis_dependent_warning = !rep.levels_nondegenerate;
  return rep;
}

}  // namespace botoc
