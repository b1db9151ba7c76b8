#pragma once

#include "canform/extform.hpp"

#include <utility>
#include <vector>

namespace canform {

// A type of rank n: a set of distinct index pairs (i,j), 1 <= i,j <= n,
// stored in lexicographic order. The canonical-form pipeline uses types of
// cardinality 2n-1, but any size is representable (the cocycle identity
// works with 2n pairs, the recursion shrinks the rank).
class TypeNu {
public:
    TypeNu(int rank, std::vector<std::pair<int, int>> pairs);

    int rank() const { return rank_; }
    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int size() const { return static_cast<int>(pairs_.size()); }
    bool contains(int i, int j) const;

    // Weight vectors, cached: p_i = #pairs with first index i,
    // q_j = #pairs with second index j.
    const std::vector<int>& p() const { return p_; }
    const std::vector<int>& q() const { return q_; }

    TypeNu without(int i, int j) const;
    TypeNu with(int i, int j) const;

    std::string str() const;  // "{(i,j),...}"

    friend bool operator==(const TypeNu& a, const TypeNu& b) {
        return a.rank_ == b.rank_ && a.pairs_ == b.pairs_;
    }
    friend bool operator<(const TypeNu& a, const TypeNu& b) {
        return a.pairs_ < b.pairs_;
    }
    size_t hash_value() const;

private:
    int rank_;
    std::vector<std::pair<int, int>> pairs_;
    std::vector<int> p_, q_;
};

struct WeightVectors {
    std::vector<int> p, q;
};

WeightVectors weight(const TypeNu& nu);

// Signed edge-vertex incidence matrix: |pairs| x 2n, row for (i,j) has a -1
// in column i and a +1 in column n+j (columns 1-based in the maths, 0-based
// in storage). Rows follow the lexicographic pair order.
std::vector<std::vector<int>> incidence_matrix(const TypeNu& nu);

// (-1)^(C(n,2)+k-1) det(M_nu with column k deleted), k in 1..2n.
// Independent of k; always in {-1,0,1}. Defined for |pairs| = 2n-1.
int omega_sign(const TypeNu& nu, int deleted_column);
int omega_sign(const TypeNu& nu);  // k = 2n

// omega_nu = omega_sign(nu) * (lex-ordered wedge of the generators w_ij).
// The table must be omega_gen_table(rank) or share its layout
// (generator index of (i,j) is (i-1)*n + (j-1)).
ExtForm omega_form(const TypeNu& nu, GenTablePtr table);
ExtForm omega_form(const TypeNu& nu);

// Inductive evaluation: peel off a single-entry column c and then a
// single-entry row r, omega_nu = (-1)^(c+r) w_ic ^ w_rj ^ omega_nu', where
// nu' has rank n-1. Returns the overall sign together with the wedge order
// the recursion produced; sign 0 when the reduction certifies omega_nu = 0.
struct OmegaExpansion {
    int sign = 0;
    std::vector<std::pair<int, int>> chain;
};
OmegaExpansion omega_expand_recursive(const TypeNu& nu);

// The expansion assembled into a form, directly comparable with omega_form.
ExtForm omega_form_recursive(const TypeNu& nu, GenTablePtr table);

// All C(n^2, size) types in lexicographic order; size defaults to 2n-1.
std::vector<TypeNu> enumerate_types(int n);
std::vector<TypeNu> enumerate_types(int n, int size);

// Kill every generator whose pair is outside nu (the R -> R_nu projection).
ExtForm isotypical_project(const ExtForm& f, const TypeNu& nu);
FormMatrix isotypical_project(const FormMatrix& F, const TypeNu& nu);

}  // namespace canform

template <>
struct std::hash<canform::TypeNu> {
    size_t operator()(const canform::TypeNu& nu) const { return nu.hash_value(); }
};
