#pragma once

#include "canform/identities.hpp"

#include <vector>

namespace canform {

// A tuple A_1..A_k of square matrices of uniform dimension, entries
// rational constants or polynomials.
using MatrixTuple = std::vector<PolyMatrix>;

// [A_1,...,A_k] = sum_{pi in S_k} sgn(pi) A_{pi(1)}...A_{pi(k)}.
// Refuses k > 8 (k! products) with a cost estimate. Constant-entry tuples
// take a fast exact-rational path.
PolyMatrix antisymmetrize_bruteforce(const MatrixTuple& ms);

// c(p)_i = prod_{r : p_r + delta_ir >= 1} (p_r + delta_ir - 1)!,
// the empty product being 1. i is 1-based; indices beyond p contribute
// nothing (p is padded by zeros).
Rational coefficient_cp(const std::vector<int>& p, int i);

// Coefficient matrix F_nu of the type-nu component of Omega^{2n-1} at the
// identity: (F_nu)_{ij} = delta_{p(nu)-e_i, q(nu)-e_j} c(p(nu))_j omega_sign(nu).
// Requires |nu| = 2n-1.
RatMatrix f_nu_identity(const TypeNu& nu);

// Independent oracle for F_nu: the signed count of oriented walks from i
// to j traversing every edge of the directed graph of nu exactly once,
// signs taken relative to the lexicographic edge order.
RatMatrix f_nu_pathcount(const TypeNu& nu);

// Closed antisymmetrization of exactly 2n-1 matrices of size n x n:
//   [A_1,...,A_{2n-1}] = sum_nu F_nu det((A_r)_{ab})_{r, (a,b) in nu},
// the k x k determinant taking row r from A_r and columns from the pairs
// of nu in lexicographic order. The type loop is pruned to those nu with
// p(nu) - q(nu) zero or e_i - e_j.
PolyMatrix antisymmetrize_closed(const MatrixTuple& ms);

}  // namespace canform
