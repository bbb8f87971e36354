#pragma once

#include <vector>

#include "core/types.hpp"

namespace botoc {

struct EstimateReport;

// Action of the reduced channel Lambda(X) = (1/d_bar) Tr_bar[U (X (x) I) U^dag]
// stored on the matrix-unit basis of the kept factor.
struct ChannelRep {
  int dim = 0;  // dimension of the kept factor
  Factor keep = Factor::A;
  std::vector<Matrix> action;  // action[i*dim + j] = Lambda(|i><j|)
  Matrix choi;                 // (1/dim) sum_ij Lambda(|i><j|) (x) |i><j|

  const Matrix& entry(int i, int j) const {
    return action[static_cast<size_t>(i) * dim + j];
  }
};

ChannelRep reduced_channel(const Matrix& u, const BipartiteDims& dims,
                           Factor keep);

Matrix apply_channel(const ChannelRep& ch, const Matrix& rho);

Matrix choi_state(const ChannelRep& ch);

// Throws Numerical if the stored action is not completely positive, trace
// preserving, and unital within tol.
void certify_channel(const ChannelRep& ch, double tol = 1e-10);

struct ChoiCheck {
  double g = 0.0;            // correlator of the evolution
  double g_max = 0.0;        // 1 - 1/d_chi^2
  double distance_sq = 0.0;  // |rho_Lambda - I/d_chi^2|_F^2
};

// Evaluates both sides of g_max - G = |rho_Lambda - I/d_chi^2|_F^2.
ChoiCheck choi_distance_check(const Matrix& u, const BipartiteDims& dims,
                              Factor keep);

struct DiamondBounds {
  double lower = 0.0;  // Frobenius distance of the Choi state to maximal mixing
  double upper = 0.0;  // d_chi^(3/2) times the lower bound
};

// Two-sided bounds on |rho_Lambda - rho_depol|_1, the trace-norm witness for
// the distance of Lambda from the fully depolarizing channel.
DiamondBounds diamond_bounds(const Matrix& u, const BipartiteDims& dims,
                             Factor keep);

// Upper bound on the fraction of time the correlator sits more than epsilon
// below its Haar value, from the gap between the Haar and exact long-time
// averages. Returned raw; values above 1 carry no information.
double markov_fraction_bound(double haar_avg, double exact_avg,
                             const BipartiteDims& dims, Factor keep,
                             double epsilon);
double markov_fraction_bound(const EstimateReport& report, double epsilon,
                             Factor keep);

}  // namespace botoc
