#pragma once

#include <optional>
#include <string>

#include "core/models.hpp"
#include "core/types.hpp"

namespace botoc {

// Gram matrices of the reduced eigenstate ensembles on both factors,
// R^X_{kl} = Tr(rho_k^X rho_l^X). Both share the same diagonal (the mutual
// purities), and R^X / d_bar(X) is doubly stochastic.
struct GramData {
  RealMatrix r_a;
  RealMatrix r_b;
  RealVector diag;
};

// Expected long-time average for Haar-random evolution,
// (d_a^2 - 1)(d_b^2 - 1) / (d^2 - 1).
double haar_estimate(const BipartiteDims& dims);

// Limit of haar_estimate for fixed d_a as d_b grows: 1 - 1/d_a^2.
double haar_estimate_asymptote(int d_a);

GramData gram_matrices(const SpectralData& spec, const BipartiteDims& dims);

// Long-time average assuming no resonance conditions beyond the trivial
// ones: 1 - (|R^A|^2 + |R^B|^2 - |diag|^2) / d^2.
double nrc_estimate(const SpectralData& spec, const BipartiteDims& dims);

// Refinement that keeps the resonances implied by the spectral degeneracy
// classes; collapses to nrc_estimate for a fully nondegenerate spectrum.
double nrc_plus_estimate(const SpectralData& spec, const BipartiteDims& dims);

// Exact infinite-time average of the correlator, summed over the resonant
// classes of spectral gaps.
double exact_time_average(const SpectralData& spec, const BipartiteDims& dims);

struct EstimateReport {
  double haar = 0.0;
  double nrc = 0.0;
  double nrc_plus = 0.0;
  double exact = 0.0;
  std::string model_tag;
  BipartiteDims dims;
  NrcReport nrc_flags;
  bool hierarchy_ok = false;  // haar >= nrc >= nrc_plus >= exact within slack
};

EstimateReport hierarchy_report(const SpectralData& spec,
                                const BipartiteDims& dims,
                                const std::string& model_tag = "");

// Linear entanglement entropy of every eigenstate across the cut, reduced to
// the smaller factor.
RealVector eigenstate_entanglement_profile(const SpectralData& spec,
                                           const BipartiteDims& dims);

struct ProfileBound {
  double alpha = 0.0;   // fraction of near-maximally entangled eigenstates
  double j_term = 0.0;  // deviation budget for the entangled fraction
  double k_term = 0.0;  // deviation budget for the remainder
  double bound = 0.0;   // alpha*J + (1-alpha)*K
  double g_me_nrc = 0.0;  // (1 - 1/d)^2, the maximally entangled reference
  std::optional<double> nrc_deviation;  // |g_me_nrc - nrc| when nrc is given
};

// Bound on |nrc_estimate - (1 - 1/d)^2| from the eigenstate entanglement
// profile: states within epsilon of maximal entanglement contribute J, the
// rest contribute K.
ProfileBound profile_bound(const RealVector& profile,
                           const BipartiteDims& dims, double epsilon,
                           std::optional<double> nrc_value = std::nullopt);

}  // namespace botoc
