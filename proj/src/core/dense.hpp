#pragma once

#include <array>

#include "core/rng.hpp"
#include "core/types.hpp"

namespace botoc {

// ---- validation helpers ----

bool is_unitary(const Matrix& u, double tol = 1e-10);
bool is_hermitian(const Matrix& h, double tol = 1e-10);
void require_square(const Matrix& m, const char* what);
void require_unitary(const Matrix& u, double tol = 1e-10,
                     const char* what = "matrix");
void require_hermitian(const Matrix& h, double tol = 1e-10,
                       const char* what = "matrix");
void require_dims(const Matrix& m, const BipartiteDims& dims, const char* what);

// ---- elementary constructions ----

Matrix identity(int d);
Matrix pauli(int k);  // k = 0..3: I, sigma_x, sigma_y, sigma_z

// ---- bipartite primitives ----

Matrix kron(const Matrix& a, const Matrix& b);
Matrix partial_trace(const Matrix& x, const BipartiteDims& dims, Factor keep);

// Swap operator S on C^d (x) C^d with S(|i>|j>) = |j>|i>.
Matrix swap_replica(int d);

// Reinterpret u as a rank-4 tensor with legs (row-A, row-B, col-A, col-B),
// numbered 0..3, and regroup: output rows pair legs (perm[0], perm[1]),
// output columns pair legs (perm[2], perm[3]).
Matrix permute_bipartite(const Matrix& u, const BipartiteDims& dims,
                         const std::array<int, 4>& perm);

// Realignment across the AA' cut: R[(a,c),(b,d)] = u[(a,b),(c,d)].
// Equals permute_bipartite(u, dims, {0,2,1,3}).
Matrix realign_aa(const Matrix& u, const BipartiteDims& dims);

// Reduction of a pure state without forming the outer product.
Matrix reduced_density(const Vector& psi, const BipartiteDims& dims,
                       Factor keep);

// ---- scalar functionals ----

Complex hs_inner(const Matrix& x, const Matrix& y);  // Tr(x^dag y)
double linear_entropy(const Matrix& rho);            // 1 - Tr(rho^2)

// ---- random objects ----

Matrix haar_unitary(int d, RngStream& rng);
Vector haar_state(int d, RngStream& rng);

}  // namespace botoc
