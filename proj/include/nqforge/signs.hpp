#pragma once

// Sign conventions used by the CE differential, the Q^2 = 0 argument and the
// morphism correspondence. Degrees are written X_j = deg of the j-th section
// (negative on the E side), k the degree of the form. Indices are 0-based.

#include <vector>

#include "nqforge/graded.hpp"

namespace nqforge::signs {

// ---- suspension ----

// l_i(sX_1..sX_i) = transfer_sign(x) s l'_i(X_1..X_i); exponent i(i-1)/2 + Σ_j (i-j) x_j
int transfer_sign(const std::vector<int>& degrees);

// ---- shuffle identities ----

// antialgebra side: ε(σ)
int anti_shuffle_sign(const Permutation& sigma, const std::vector<int>& degrees);
// algebra side: (-1)^{i(j-1)} χ(σ)
int algebra_shuffle_sign(int i, int j, const Permutation& sigma, const std::vector<int>& degrees);

// ---- CE differential on generators ----

// (Q^{1,1} ω_0)(X) = -ρ'(X) ω_0
constexpr int ce_function_sign() { return -1; }
// (Q^{k+1,r} ω_k)(X..) = (-1)^k ω_k(l'_r(X..))
int ce_bracket_sign(int k);
// (ρ'⊙ω_k)(X1,X2) = (-1)^k ρ'(X1)ω_k(X2) + (-1)^{a1 a2 + k} ρ'(X2)ω_k(X1)
int ce_anchor_first(int k);
int ce_anchor_second(int k, int a1, int a2);
// generic s: (ρ'⊙ω)(X_1..X_{s+1}) = Σ_i (-1)^{k + x_i(x_1+..+x_{i-1})} ρ'(X_i) ω(..î..)
int ce_anchor_slot(int k, const std::vector<int>& degrees, int i);

// ---- Q^2 = 0 bookkeeping ----

// first term of the first displayed sum: -ε(σ)
int signs1_first(int eps);
// the four terms of the second displayed sum, for slot i
int signs2_term1(const std::vector<int>& x, int i, int k);
int signs2_term2(const std::vector<int>& x, int i, int k);
int signs2_term3(const std::vector<int>& x, int i, int k);
int signs2_term4(const std::vector<int>& x, int i, int k);
// r = 3 expansion: prefactor (-1)^{(X1+k)(X2+X3)} and inner signs (-1)^{X2}, (-1)^{(X2+1)X3}
int signs4_prefactor(const std::vector<int>& x, int k);
int signs4_inner_first(const std::vector<int>& x);
int signs4_inner_second(const std::vector<int>& x);

// ---- Lie algebroid de Rham form ----

// (-1)^{(r-s+1)(s-1)}
int shifted_ce_sign(int r, int s);

// ---- morphisms ----

// second row of the bracket condition: (-1)^{X_i(X_1+..+X_{i-1})+1}
int morphism_anchor_row(const std::vector<int>& x, int i);
// signs of the equivariance computation
int pm1(int k, int eps);
int pm2(const std::vector<int>& x, int i, int k);
int pm3(int k, int eps);

// ---- over a point, shifted form ----
// y = degrees of the Y_j = sX_j (sE side)

// c_A = (-1)^{s(r-1)} sign(σ) ε_y(σ) in front of φ_r(l_s(Y_σ..), Y_σ..)
int shifted_morphism_lhs_sign(int s, int r, const Permutation& sigma, const std::vector<int>& y);
// c_B = sign(σ) ε_y(σ) (-1)^{r(r-1)/2 + Σ_j t_j(r-j) + Σ_j |Y^j|(r-j+t_{j+1}+..+t_r)}, j = 1..r,
// for the blocks of a set partition concatenated into σ
int shifted_morphism_rhs_sign(const std::vector<std::vector<int>>& blocks, const std::vector<int>& y);

}  // namespace nqforge::signs
