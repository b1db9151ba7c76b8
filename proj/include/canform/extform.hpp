#pragma once

#include "canform/polymatrix.hpp"

#include <cstdint>
#include <map>

namespace canform {

// Ordered table of 1-form generator names. Unlike variable tables the order
// is supplied by the caller and never re-sorted: it fixes the sign convention.
// At most 64 generators so wedge monomials pack into one bitmask.
using GenTable = std::vector<std::string>;
using GenTablePtr = std::shared_ptr<const GenTable>;

GenTablePtr make_gen_table(std::vector<std::string> names);
// "w11","w12",...,"wnn" in row-major (lexicographic pair) order.
GenTablePtr omega_gen_table(int n);
// "dx1",...,"dxN".
GenTablePtr dx_gen_table(int count);

// Element of the exterior algebra over MultiPoly coefficients. A wedge
// monomial is the set of generators it contains (strictly increasing index
// order is the canonical representative; signs are absorbed into the
// coefficient when terms are built).
class ExtForm {
public:
    using TermMap = std::map<uint64_t, MultiPoly>;

    ExtForm();
    static ExtForm zero(GenTablePtr t);
    static ExtForm scalar(const MultiPoly& c, GenTablePtr t);
    static ExtForm generator(int index, GenTablePtr t);
    static ExtForm monomial(GenTablePtr t, uint64_t mask, const MultiPoly& c);

    const GenTable& table() const { return *table_; }
    const GenTablePtr& table_ptr() const { return table_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    // Largest wedge degree present; -1 when zero.
    int degree() const;
    bool is_homogeneous() const;
    ExtForm component(int deg) const;
    MultiPoly coeff(uint64_t mask) const;

    ExtForm& operator+=(const ExtForm& o);
    ExtForm& operator-=(const ExtForm& o);
    friend ExtForm operator+(ExtForm a, const ExtForm& b) { return a += b; }
    friend ExtForm operator-(ExtForm a, const ExtForm& b) { return a -= b; }
    friend ExtForm operator-(const ExtForm& a);

    ExtForm& operator*=(const MultiPoly& c);
    ExtForm& operator*=(const Rational& c);
    friend ExtForm operator*(ExtForm a, const MultiPoly& c) { return a *= c; }
    friend ExtForm operator*(const MultiPoly& c, ExtForm a) { return a *= c; }
    friend ExtForm operator*(ExtForm a, const Rational& c) { return a *= c; }
    friend ExtForm operator*(const Rational& c, ExtForm a) { return a *= c; }

    friend bool operator==(const ExtForm& a, const ExtForm& b);
    friend bool operator!=(const ExtForm& a, const ExtForm& b) { return !(a == b); }

    void add_term(uint64_t mask, const MultiPoly& c);

    // Kill every wedge monomial containing a generator outside allowed_mask.
    ExtForm projected_to(uint64_t allowed_mask) const;

    std::string str() const;

private:
    GenTablePtr table_;
    TermMap terms_;
};

// Graded product a^b. Sign from counting inversions of the concatenation.
ExtForm wedge(const ExtForm& a, const ExtForm& b);
inline ExtForm operator*(const ExtForm& a, const ExtForm& b) { return wedge(a, b); }

// Substitute generator i by images[i] (forms over a common target table);
// coefficients are carried across by multiplication.
ExtForm subst_generators(const ExtForm& f, const std::vector<ExtForm>& images);

// Matrix over the exterior algebra (degree-0 entries embed PolyMatrix).
class FormMatrix {
public:
    FormMatrix() : rows_(0), cols_(0) {}
    FormMatrix(int rows, int cols, GenTablePtr t);

    static FormMatrix from_poly(const PolyMatrix& M, GenTablePtr t);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const GenTablePtr& table_ptr() const { return table_; }
    const ExtForm& at(int i, int j) const { return e_[idx(i, j)]; }
    ExtForm& at(int i, int j) { return e_[idx(i, j)]; }

    FormMatrix operator+(const FormMatrix& o) const;
    FormMatrix operator-(const FormMatrix& o) const;
    friend bool operator==(const FormMatrix& a, const FormMatrix& b);
    friend bool operator!=(const FormMatrix& a, const FormMatrix& b) { return !(a == b); }

    ExtForm trace() const;
    bool is_zero() const;

    FormMatrix projected_to(uint64_t allowed_mask) const;

    std::string str() const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }

    int rows_, cols_;
    GenTablePtr table_;
    std::vector<ExtForm> e_;
};

// Serial reference product, kept as the oracle for the parallel kernel.
FormMatrix form_matrix_mul_serial(const FormMatrix& a, const FormMatrix& b);
// OpenMP-parallel product over output entries; exact arithmetic makes the
// result identical to the serial reference for any thread count.
FormMatrix form_matrix_mul(const FormMatrix& a, const FormMatrix& b);
inline FormMatrix operator*(const FormMatrix& a, const FormMatrix& b) {
    return form_matrix_mul(a, b);
}

// (B * Omega)^k by left-fold multiplication (factors do not commute, and the
// fold keeps intermediate sparsity highest for isotypically projected input).
FormMatrix form_matrix_power(const PolyMatrix& B, const FormMatrix& Omega, int k);

// Thread count honored by the parallel kernels: CANFORM_THREADS if set,
// otherwise the OpenMP default. Returns 1 when built without OpenMP.
int effective_threads();

}  // namespace canform
