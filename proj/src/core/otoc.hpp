#pragma once

#include <optional>

#include "core/types.hpp"

namespace botoc {

struct OtocRequest {
  Matrix unitary;  // the evolution U_t
  BipartiteDims dims;
  double beta = 0.0;                  // inverse temperature
  std::optional<Matrix> hamiltonian;  // required when beta > 0

  void validate() const;
};

enum class ReplicaSide { Auto, AA, BB };

// G = 1 - (1/d^2) Tr(S U^(x2) S U^dag(x2)) with S the swap of the chosen
// factor against its replica, evaluated through realignment 2-norms so the
// doubled space is never materialized. Auto contracts over the smaller
// factor; both sides agree and stay available for the agreement test.
double g_exact(const OtocRequest& req, ReplicaSide side = ReplicaSide::Auto);

// Same value through the reduced channel on the smaller factor:
// 1 - (1/d_chi^2) sum_ij |Lambda(|i><j|)|_2^2.
double g_reduced(const OtocRequest& req);

// Thermal variant 1 - (1/d) Re Tr[(rho_beta (x) I) U^dag(x2) S U^(x2) S];
// reduces to g_exact at beta = 0.
double g_thermal(const OtocRequest& req);

// Single-pair commutator C = 1 - Re Tr(V^dag(t) W^dag V(t) W)/d with
// V = v_a (x) I and W = I (x) w_b.
double commutator_otoc(const Matrix& u, const Matrix& v_a, const Matrix& w_b,
                       const BipartiteDims& dims);

// Linear entropy of Tr_BB' |U><U| with |U> = (U (x) I)|phi+>.
double operator_entanglement(const Matrix& u, const BipartiteDims& dims);

// Mean entanglement generated on random product inputs, from the three-term
// combination of G values; defined for symmetric bipartitions only.
double entangling_power(const Matrix& u, const BipartiteDims& dims);

namespace detail {
// commutator_otoc body without input validation, for samplers that have
// already validated u and draw v/w from constructions that are unitary.
double commutator_otoc_unchecked(const Matrix& u, const Matrix& v_a,
                                 const Matrix& w_b, const BipartiteDims& dims);
}  // namespace detail

}  // namespace botoc
