#include "core/montecarlo.hpp"

#include <cmath>

#include "core/channels.hpp"
#include "core/dense.hpp"
#include "core/estimates.hpp"
#include "core/otoc.hpp"
#include "core/parallel.hpp"

namespace botoc {

void EnsembleSpec::validate() const {
  dims.validate();
  if (kind == EnsembleKind::PauliFactorized) {
    if (n_sites_a < 0 || n_sites_b < 0 || n_sites_a > 30 || n_sites_b > 30) {
      throw Error(ErrorCode::InvalidArgument, "site counts out of range");
    }
    if ((1 << n_sites_a) != dims.d_a || (1 << n_sites_b) != dims.d_b) {
      throw Error(ErrorCode::InvalidArgument,
                  "factorized ensemble requires qubit factors matching the "
                  "site counts");
    }
  }
}

namespace {

Matrix pauli_string(int n_sites, RngStream& rng) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < n_sites; ++s) {
    // 4 divides 2^64, so the low bits are exactly uniform.
    out = kron(out, pauli(static_cast<int>(rng.next_u64() & 3)));
  }
  return out;
}

std::vector<double> otoc_samples(const Matrix& u, const EnsembleSpec& ens,
                                 std::uint64_t n, const RngStream& rng,
                                 int n_threads, double* reference) {
  ens.validate();
  require_dims(u, ens.dims, "evolution operator");
  require_unitary(u, 1e-10, "evolution operator");
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  }
  if (ens.kind == EnsembleKind::HaarGlobal) {
    *reference = haar_estimate(ens.dims);
  } else {
    *reference = g_exact(OtocRequest{u, ens.dims, 0.0, std::nullopt});
  }
  const BipartiteDims dims = ens.dims;
  std::vector<double> xs(n);
  parallel_for(n, n_threads, [&](std::uint64_t i) {
    RngStream s = rng.child(i);
    Matrix v, w;
    Matrix global;
    const Matrix* evo = &u;
    switch (ens.kind) {
      case EnsembleKind::HaarLocal:
        v = haar_unitary(dims.d_a, s);
        w = haar_unitary(dims.d_b, s);
        break;
      case EnsembleKind::PauliFactorized:
        v = pauli_string(ens.n_sites_a, s);
        w = pauli_string(ens.n_sites_b, s);
        break;
      case EnsembleKind::HaarGlobal:
        global = haar_unitary(dims.d(), s);
        v = haar_unitary(dims.d_a, s);
        w = haar_unitary(dims.d_b, s);
        evo = &global;
        break;
    }
    xs[i] = detail::commutator_otoc_unchecked(*evo, v, w, dims);
  });
  return xs;
}

std::vector<double> entropy_samples(const Matrix& u, const BipartiteDims& dims,
                                    Factor keep, std::uint64_t n,
                                    const RngStream& rng, int n_threads,
                                    double* reference) {
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  }
  const ChannelRep ch = reduced_channel(u, dims, keep);
  const double dchi = static_cast<double>(ch.dim);
  *reference = dchi / (dchi + 1.0) *
               g_exact(OtocRequest{u, dims, 0.0, std::nullopt});
  std::vector<double> xs(n);
  parallel_for(n, n_threads, [&](std::uint64_t i) {
    RngStream s = rng.child(i);
    const Vector psi = haar_state(ch.dim, s);
    const Matrix rho_out = apply_channel(ch, psi * psi.adjoint());
    xs[i] = linear_entropy(rho_out);
  });
  return xs;
}

SampleStats make_stats(const std::vector<double>& xs, double reference,
                       const HistogramSpec& hist) {
  if (hist.bins < 1 || !(hist.hi > hist.lo)) {
    throw Error(ErrorCode::InvalidArgument, "bad histogram layout");
  }
  SampleStats st;
  st.n_samples = xs.size();
  st.reference = reference;
  double sum = 0.0;
  for (double x : xs) sum += x;
  st.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - st.mean) * (x - st.mean);
    st.variance = ss / static_cast<double>(xs.size() - 1);
  }
  const double width =
      (hist.hi - hist.lo) / static_cast<double>(hist.bins);
  st.deviations.edges.resize(static_cast<size_t>(hist.bins) + 1);
  for (int k = 0; k <= hist.bins; ++k) {
    st.deviations.edges[static_cast<size_t>(k)] = hist.lo + k * width;
  }
  st.deviations.counts.assign(static_cast<size_t>(hist.bins), 0);
  for (double x : xs) {
    const double dev = std::abs(x - reference);
    auto idx = static_cast<long>(std::floor((dev - hist.lo) / width));
    if (idx < 0) idx = 0;
    if (idx >= hist.bins) idx = hist.bins - 1;
    ++st.deviations.counts[static_cast<size_t>(idx)];
  }
  return st;
}

}  // namespace

SampleStats sample_otoc(const Matrix& u, const EnsembleSpec& ens,
                        std::uint64_t n, const RngStream& rng, int n_threads,
                        const HistogramSpec& hist) {
  double reference = 0.0;
  const std::vector<double> xs =
      otoc_samples(u, ens, n, rng, n_threads, &reference);
  return make_stats(xs, reference, hist);
}

double pauli_exhaustive_average(const Matrix& u, const EnsembleSpec& ens) {
  ens.validate();
  if (ens.kind != EnsembleKind::PauliFactorized) {
    throw Error(ErrorCode::InvalidArgument,
                "exhaustive average needs the factorized Pauli ensemble");
  }
  require_dims(u, ens.dims, "evolution operator");
  require_unitary(u, 1e-10, "evolution operator");
  const int total_sites = ens.n_sites_a + ens.n_sites_b;
  if (2 * total_sites > 20) {
    throw Error(ErrorCode::Resource,
                "exhaustive Pauli average limited to 10 sites");
  }
  const auto na_count = static_cast<std::uint64_t>(1)
                        << (2 * ens.n_sites_a);
  const auto nb_count = static_cast<std::uint64_t>(1)
                        << (2 * ens.n_sites_b);

  auto string_for = [](std::uint64_t code, int sites) {
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 0; s < sites; ++s) {
      out = kron(out, pauli(static_cast<int>((code >> (2 * (sites - 1 - s))) &
                                             3)));
    }
    return out;
  };

  std::vector<Matrix> vs(static_cast<size_t>(na_count));
  for (std::uint64_t c = 0; c < na_count; ++c) {
    vs[static_cast<size_t>(c)] = string_for(c, ens.n_sites_a);
  }
  // Kahan accumulation keeps the enumeration exact to the last digit even
  // at a million terms.
  double sum = 0.0;
  double comp = 0.0;
  for (std::uint64_t cw = 0; cw < nb_count; ++cw) {
    const Matrix w = string_for(cw, ens.n_sites_b);
    for (std::uint64_t cv = 0; cv < na_count; ++cv) {
      const double x = detail::commutator_otoc_unchecked(
          u, vs[static_cast<size_t>(cv)], w, ens.dims);
      const double y = x - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum / (static_cast<double>(na_count) * static_cast<double>(nb_count));
}

SampleStats entropy_production_estimate(const Matrix& u,
                                        const BipartiteDims& dims, Factor keep,
                                        std::uint64_t n, const RngStream& rng,
                                        int n_threads,
                                        const HistogramSpec& hist) {
  dims.validate();
  double reference = 0.0;
  const std::vector<double> xs =
      entropy_samples(u, dims, keep, n, rng, n_threads, &reference);
  return make_stats(xs, reference, hist);
}

double swap_protocol_sim(const Matrix& u, const BipartiteDims& dims,
                         Factor keep, const Vector& psi) {
  dims.validate();
  const int dchi = dims.dim(keep);
  if (psi.size() != dchi) {
    throw Error(ErrorCode::DimensionMismatch,
                "input state does not live on the kept factor");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "input state is not normalized");
  }
  const double copies = static_cast<double>(dchi) * dchi;
  if (copies * copies > static_cast<double>(1 << 24)) {
    throw Error(ErrorCode::Resource,
                "two-copy simulation too large for this factor");
  }
  const ChannelRep ch = reduced_channel(u, dims, keep);
  const Matrix sigma = apply_channel(ch, psi * psi.adjoint());
  const Matrix two = kron(sigma, sigma);
  const Matrix s = swap_replica(dchi);
  return hs_inner(s, two).real();
}

std::vector<ConcentrationRow> concentration_experiment(
    const Matrix& u, const EnsembleSpec& ens, std::uint64_t n,
    const std::vector<double>& eps_grid, const RngStream& rng,
    ConcentrationVariant variant, int n_threads,
    std::optional<Factor> state_keep) {
  if (eps_grid.empty()) {
    throw Error(ErrorCode::InvalidArgument, "epsilon grid is empty");
  }
  for (double e : eps_grid) {
    if (e <= 0.0) {
      throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    }
  }
  double reference = 0.0;
  std::vector<double> xs;
  double scale = 0.0;   // multiplier inside the exponent
  double prefac = 0.0;  // prefactor of the tail bound
  if (variant == ConcentrationVariant::Otoc) {
    if (ens.kind != EnsembleKind::HaarLocal) {
      throw Error(ErrorCode::InvalidArgument,
                  "the operator tail bound holds for Haar pairs");
    }
    xs = otoc_samples(u, ens, n, rng, n_threads, &reference);
    scale = static_cast<double>(ens.dims.d_max()) / 64.0;
    prefac = 2.0;
  } else {
    const Factor keep = state_keep.value_or(ens.dims.smaller());
    xs = entropy_samples(u, ens.dims, keep, n, rng, n_threads, &reference);
    scale = static_cast<double>(ens.dims.dim(keep)) / 64.0;
    prefac = 1.0;
  }
  std::vector<ConcentrationRow> rows;
  rows.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    ConcentrationRow row;
    row.epsilon = eps;
    std::uint64_t hits = 0;
    for (double x : xs) {
      if (std::abs(x - reference) >= eps) ++hits;
    }
    row.empirical_p = static_cast<double>(hits) / static_cast<double>(n);
    row.bound = prefac * std::exp(-eps * eps * scale);
    row.vacuous = row.bound > 1.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace botoc
