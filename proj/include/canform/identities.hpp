#pragma once

#include "canform/graph.hpp"
#include "canform/typenu.hpp"

#include <string>
#include <utility>
#include <vector>

namespace canform {

// Ordered list of index pairs (s_i, t_i); repeats allowed across pairs.
using PairSet = std::vector<std::pair<int, int>>;

struct IdentityWitness {
    bool ok = false;
    std::string detail;  // the two sides, on failure
    explicit operator bool() const { return ok; }
};

// P_{p,q}(B) = perm(B_{S_p,S_q}) with multiset row/column selection;
// 0 whenever a component of p or q is negative.
MultiPoly permanent_poly(const std::vector<int>& p, const std::vector<int>& q,
                         const PolyMatrix& B);

// (Phi_nu)_{ij} = (q_j + delta_ij - 1) * P_{q+e_i-e_j-1, p-1}(B).
PolyMatrix phi_matrix(const TypeNu& nu, const PolyMatrix& B);

// (B Omega_nu)^{2n-1} = det(B) * Phi_nu(B) * omega_nu, both sides exact.
IdentityWitness theorem1_check(const TypeNu& nu, const PolyMatrix& B);

// An element of D^k_m: k unordered pairs {I_a, J_a} of equal-size disjoint
// blocks covering {1..m}. Blocks are stored ascending, I_a holding the
// smallest element of I_a u J_a.
struct DkPartition {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
};
std::vector<DkPartition> enumerate_dk(int m, int k);

// Interleaved index tuple E_I = (s_{i1}, t_{i1}, s_{i2}, t_{i2}, ...).
std::vector<int> pairset_tuple(const PairSet& E, const std::vector<int>& I);

// Sigma(B,E) = sum_k (-2)^k k! sum_{D^k} prod_a det B_{E_{I_a},E_{J_a}};
// B symmetric, |E| even (Sigma(B, {}) = 1).
MultiPoly sigma_poly(const PolyMatrix& B, const PairSet& E);

// Full antisymmetrisation sum_{g in (Z/2)^m} chi(g) g(perm B_{S,T}) over
// the involutions swapping s_i and t_i.
MultiPoly antisym_perm_bruteforce(const PolyMatrix& B, const std::vector<int>& S,
                                  const std::vector<int>& T);

// The -1/2 sum_{i,j} pi_{i,j}(det * perm|_{t_j=t_i}) recursion.
MultiPoly antisym_perm_recursive(const PolyMatrix& B, const std::vector<int>& S,
                                 const std::vector<int>& T);

// The matching recursion for Sigma.
MultiPoly sigma_recursive(const PolyMatrix& B, const PairSet& E);

// Two-row determinant expansion engine behind sigma_recursive:
// det B_{E,F} as a sum over column pair extractions. Exposed for testing.
MultiPoly det_two_row_expansion(const PolyMatrix& B, const PairSet& E, const PairSet& F);

// tr((B Upsilon_nu)^{2n-1}) for upper-triangular nu containing diag_n:
// (2n-1) det(B) Sigma(B, nu \ diag_n) omega_nu for odd n, zero for even n.
ExtForm symmetric_trace(const TypeNu& nu, const PolyMatrix& B);

// sigma(I) = (-1)^(sum I) sgn(sorting permutation); 0 on repeats.
int jacobi_sign(const std::vector<int>& I);

// det((A^-1)_{I,J}) = sigma(I) sigma(J) det(A^{J,I}) / det(A).
IdentityWitness jacobi_minor_check(const RatMatrix& A, const std::vector<int>& I,
                                   const std::vector<int>& J);

// Q_k(A,E) = sum_{D^k_m} prod_a sigma(E_{I_a}) sigma(E_{J_a}) det A^{E_{I_a},E_{J_a}}
// (superscripts delete rows/columns). Blocks with repeated indices are pruned.
MultiPoly qk_poly(const PolyMatrix& A, const PairSet& E, int k);

// Leading terms of tr((A^-1 dA)^{2n-1}) for symmetric invertible A, n odd:
//   sum over (E,k) of  coeff / det(A)^{k+1} * omega_{diag_n u E}(dA),
// where coeff = (2n-1) (-2)^k k! Q_k(A,E). Terms with zero omega_sign,
// zero Q_k, or E touching an identically-zero entry of A are dropped.
// n even: empty (every term of that degree vanishes).
struct CanonicalTerm {
    PairSet E;
    int k;
    MultiPoly coeff;
};
std::vector<CanonicalTerm> canonical_form_symmetric(const PolyMatrix& A);

// The same expansion for a graph Laplacian on the chart x_chart = 1,
// collapsed onto the top cell: omega_G^{2n-1} restricted to the chart equals
//   sum_k numerator_k / Psi^{k+1} * dx_asc,
// with dx_asc the ascending wedge of all edge differentials except chart.
struct GraphCanonicalForm {
    int n = 0;  // loop number
    int chart = 0;
    std::vector<std::pair<int, MultiPoly>> numerators;  // (k, N_k), N_k != 0
    MultiPoly psi;                                      // det Lambda(T)|_{x_chart=1}
    std::string text;                                   // "N1/Psi^2 + N2/Psi^3 + ..."
};
GraphCanonicalForm canonical_form_graph(const Graph& g, const std::vector<int>& tree,
                                        int chart_edge);

// Exterior-algebra oracle: B = Lambda(x)^-1 exactly at a rational point
// (x_chart forced to 1), differentials kept symbolic, then
// tr((B dLambda)^{2n-1}) over dx generators. Throws on singular Lambda(x).
ExtForm canonical_form_direct_at_point(const Graph& g, const std::vector<int>& tree,
                                       int chart_edge, const std::vector<Rational>& x);

// dLambda(T) on the chart as a matrix of one-forms over dx_gen_table(|E|)
// with dx_chart killed; shared by the direct oracle and the brute-force tests.
FormMatrix laplacian_differential(const LaplacianMatrix& L, int chart_edge,
                                  const GenTablePtr& dx_table);

}  // namespace canform
