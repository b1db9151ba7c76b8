#pragma once

#include "canform/poly.hpp"

#include <functional>
#include <vector>

namespace canform {

enum class DetMethod { cofactor, fraction_free };

// Dense matrix of polynomials, row-major, 0-based indexing.
// Index lists passed to minor helpers are 1-based to match the usual
// mathematical notation A^{I,J} (deleted rows I, deleted columns J).
class PolyMatrix {
public:
    PolyMatrix() : rows_(0), cols_(0) {}
    PolyMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

    static PolyMatrix identity(int n);
    // Generic matrix of fresh variables, e.g. prefix "b" -> b11..bnn.
    static PolyMatrix generic(int n, const std::string& prefix);
    // Generic symmetric matrix: entry (i,j) = entry (j,i) = prefix+min+max.
    static PolyMatrix generic_symmetric(int n, const std::string& prefix);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const MultiPoly& at(int i, int j) const { return e_[idx(i, j)]; }
    MultiPoly& at(int i, int j) { return e_[idx(i, j)]; }

    PolyMatrix transpose() const;
    bool is_symmetric() const;

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    PolyMatrix operator*(const MultiPoly& s) const;
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

    // Keep the listed rows/columns (1-based), in the given order.
    PolyMatrix submatrix(const std::vector<int>& rows1, const std::vector<int>& cols1) const;
    // Delete the listed rows/columns (1-based): A^{I,J}.
    PolyMatrix minor_deleting(const std::vector<int>& rows1, const std::vector<int>& cols1) const;

    // Rows/columns selected with multiplicity from a weight vector:
    // row i repeated p[i] times (used by the permanent polynomials).
    PolyMatrix weighted_selection(const std::vector<long>& p, const std::vector<long>& q) const;

    // Entry-wise substitution of one variable (the affine-chart operation).
    PolyMatrix substituted(const std::string& name, const Rational& value) const;

    std::string str() const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }

    int rows_, cols_;
    std::vector<MultiPoly> e_;
};

// Exact determinant. Cofactor expansion with memoized minors by default;
// Bareiss fraction-free elimination (exact polynomial division) on request.
MultiPoly poly_det(const PolyMatrix& M, DetMethod method = DetMethod::cofactor);

// Adjugate via cofactors: adj(M)*M = det(M)*I.
PolyMatrix poly_adjugate(const PolyMatrix& M);

// Exact permanent: permutation sum for n <= 4, Ryser inclusion-exclusion above.
MultiPoly poly_perm(const PolyMatrix& M);

// Reference implementations (always permutation sums); oracles for tests.
MultiPoly poly_det_permsum(const PolyMatrix& M);
MultiPoly poly_perm_permsum(const PolyMatrix& M);

// Dense exact rational matrix for numeric work (inversions, Jacobi checks).
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {}

    static RatMatrix identity(int n);
    // Entry-wise evaluation of a polynomial matrix at a point.
    static RatMatrix eval(const PolyMatrix& M, const std::vector<Rational>& values);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rational& at(int i, int j) const { return e_[idx(i, j)]; }
    Rational& at(int i, int j) { return e_[idx(i, j)]; }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
    friend bool operator==(const RatMatrix& a, const RatMatrix& b);

    Rational det() const;                  // Gaussian elimination, exact
    RatMatrix inverse() const;             // Gauss-Jordan; throws on singular
    RatMatrix minor_deleting(const std::vector<int>& rows1, const std::vector<int>& cols1) const;
    RatMatrix submatrix(const std::vector<int>& rows1, const std::vector<int>& cols1) const;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * cols_ + j; }

    int rows_, cols_;
    std::vector<Rational> e_;
};

}  // namespace canform
