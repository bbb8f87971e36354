#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace botoc {

enum class EnsembleKind {
  HaarLocal,        // independent Haar pairs (V, W) on the two factors
  PauliFactorized,  // uniform tensor products of single-site Paulis
  HaarGlobal,       // fresh global Haar evolution with fresh local Haar pair
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::HaarLocal;
  BipartiteDims dims;
  // PauliFactorized only: qubit counts per factor, d_a = 2^n_sites_a etc.
  int n_sites_a = 0;
  int n_sites_b = 0;

  void validate() const;
};

struct Histogram {
  std::vector<double> edges;           // size() == counts.size() + 1
  std::vector<std::uint64_t> counts;
};

struct HistogramSpec {
  int bins = 64;
  double lo = 0.0;
  double hi = 2.0;
};

struct SampleStats {
  std::uint64_t n_samples = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased; 0 when n_samples < 2
  Histogram deviations;   // histogram of |sample - reference|
  double reference = 0.0;
};

// Draws n commutator correlators with operators from the ensemble. The
// reference is the value the sample mean estimates: the correlator of u for
// the local ensembles, the Haar expectation when the evolution itself is
// resampled. Sample i depends only on rng.child(i), so results are
// byte-identical for any thread count.
SampleStats sample_otoc(const Matrix& u, const EnsembleSpec& ens,
                        std::uint64_t n, const RngStream& rng,
                        int n_threads = 1, const HistogramSpec& hist = {});

// Average of the commutator correlator over every Pauli-string pair of the
// factorized ensemble; equals the correlator of u exactly.
double pauli_exhaustive_average(const Matrix& u, const EnsembleSpec& ens);

// Samples the linear entropy produced by the reduced channel on Haar-random
// pure inputs; the reference is d_chi/(d_chi+1) times the correlator.
SampleStats entropy_production_estimate(const Matrix& u,
                                        const BipartiteDims& dims, Factor keep,
                                        std::uint64_t n, const RngStream& rng,
                                        int n_threads = 1,
                                        const HistogramSpec& hist = {});

// Literal two-copy swap measurement <S> = Tr[S (sigma (x) sigma)] for
// sigma = Lambda(|psi><psi|); the purity the swap test estimates.
double swap_protocol_sim(const Matrix& u, const BipartiteDims& dims,
                         Factor keep, const Vector& psi);

enum class ConcentrationVariant { Otoc, State };

struct ConcentrationRow {
  double epsilon = 0.0;
  double empirical_p = 0.0;  // fraction of samples with |x - ref| >= epsilon
  double bound = 0.0;        // measure-concentration tail bound
  bool vacuous = false;      // bound exceeds 1
};

// Empirical exceedance probabilities against the analytic tail bounds, for
// the commutator correlator over Haar pairs (Otoc) or the produced entropy
// over Haar states (State).
std::vector<ConcentrationRow> concentration_experiment(
    const Matrix& u, const EnsembleSpec& ens, std::uint64_t n,
    const std::vector<double>& eps_grid, const RngStream& rng,
    ConcentrationVariant variant = ConcentrationVariant::Otoc,
    int n_threads = 1, std::optional<Factor> state_keep = std::nullopt);

}  // namespace botoc
