#include "canform/polymatrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace canform {

namespace {

void require_square(int rows, int cols, const char* who) {
    if (rows != cols)
        throw std::invalid_argument(std::string(who) + ": matrix is not square");
}

std::vector<int> to_zero_based(const std::vector<int>& idx1, int limit, const char* who) {
    std::vector<int> out;
    out.reserve(idx1.size());
    for (int v : idx1) {
        if (v < 1 || v > limit)
            throw std::out_of_range(std::string(who) + ": index out of range");
        out.push_back(v - 1);
    }
    return out;
}

}  // namespace

PolyMatrix PolyMatrix::identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = MultiPoly(1);
    return m;
}

PolyMatrix PolyMatrix::generic(int n, const std::string& prefix) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            names.push_back(prefix + std::to_string(i) + std::to_string(j));
    VarTablePtr t = make_var_table(names);
    PolyMatrix m(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m.at(i - 1, j - 1) =
                MultiPoly::var(prefix + std::to_string(i) + std::to_string(j), t);
    return m;
}

PolyMatrix PolyMatrix::generic_symmetric(int n, const std::string& prefix) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            names.push_back(prefix + std::to_string(i) + std::to_string(j));
    VarTablePtr t = make_var_table(names);
    PolyMatrix m(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            int a = std::min(i, j), b = std::max(i, j);
            m.at(i - 1, j - 1) =
                MultiPoly::var(prefix + std::to_string(a) + std::to_string(b), t);
        }
    return m;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
}

bool PolyMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("PolyMatrix: dimension mismatch in +");
    PolyMatrix m(a.rows_, a.cols_);
    for (size_t k = 0; k < m.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
    return m;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("PolyMatrix: dimension mismatch in -");
    PolyMatrix m(a.rows_, a.cols_);
    for (size_t k = 0; k < m.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
    return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("PolyMatrix: dimension mismatch in *");
    PolyMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            MultiPoly acc;
            for (int k = 0; k < a.cols_; ++k) acc += a.at(i, k) * b.at(k, j);
            m.at(i, j) = std::move(acc);
        }
    return m;
}

PolyMatrix PolyMatrix::operator*(const MultiPoly& s) const {
    PolyMatrix m(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] * s;
    return m;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (size_t k = 0; k < a.e_.size(); ++k)
        if (a.e_[k] != b.e_[k]) return false;
    return true;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<int>& rows1,
                                 const std::vector<int>& cols1) const {
    auto ri = to_zero_based(rows1, rows_, "PolyMatrix::submatrix");
    auto ci = to_zero_based(cols1, cols_, "PolyMatrix::submatrix");
    PolyMatrix m(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
    for (size_t i = 0; i < ri.size(); ++i)
        for (size_t j = 0; j < ci.size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = at(ri[i], ci[j]);
    return m;
}

PolyMatrix PolyMatrix::minor_deleting(const std::vector<int>& rows1,
                                      const std::vector<int>& cols1) const {
    std::vector<int> keep_r, keep_c;
    for (int i = 1; i <= rows_; ++i)
        if (std::find(rows1.begin(), rows1.end(), i) == rows1.end()) keep_r.push_back(i);
    for (int j = 1; j <= cols_; ++j)
        if (std::find(cols1.begin(), cols1.end(), j) == cols1.end()) keep_c.push_back(j);
    return submatrix(keep_r, keep_c);
}

PolyMatrix PolyMatrix::weighted_selection(const std::vector<long>& p,
                                          const std::vector<long>& q) const {
    std::vector<int> rows1, cols1;
    for (size_t i = 0; i < p.size(); ++i)
        for (long r = 0; r < p[i]; ++r) rows1.push_back(static_cast<int>(i) + 1);
    for (size_t j = 0; j < q.size(); ++j)
        for (long r = 0; r < q[j]; ++r) cols1.push_back(static_cast<int>(j) + 1);
    return submatrix(rows1, cols1);
}

PolyMatrix PolyMatrix::substituted(const std::string& name, const Rational& value) const {
    PolyMatrix m(rows_, cols_);
    for (size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k].subst(name, value);
    return m;
}

std::string PolyMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[ ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << " | ";
            os << at(i, j).str();
        }
        os << " ]\n";
    }
    return os.str();
}

namespace {

// Cofactor expansion with minors memoized on the set of surviving columns.
// Row n-|S| is expanded against column set S, so each subset is computed once.
class CofactorDet {
public:
    explicit CofactorDet(const PolyMatrix& M) : M_(M), n_(M.rows()) {}

    MultiPoly run() {
        uint64_t all = (n_ >= 64) ? ~uint64_t{0} : ((uint64_t{1} << n_) - 1);
        return minor_det(all);
    }

private:
    MultiPoly minor_det(uint64_t colmask) {
        int size = __builtin_popcountll(colmask);
        if (size == 0) return MultiPoly(1);
        auto it = memo_.find(colmask);
        if (it != memo_.end()) return it->second;
        int row = n_ - size;
        MultiPoly acc;
        int pos = 0;
        for (int j = 0; j < n_; ++j) {
            if (!(colmask & (uint64_t{1} << j))) continue;
            const MultiPoly& entry = M_.at(row, j);
            if (!entry.is_zero()) {
                MultiPoly sub = minor_det(colmask & ~(uint64_t{1} << j));
                MultiPoly term = entry * sub;
                if (pos % 2) acc -= term;
                else acc += term;
            }
            ++pos;
        }
        memo_.emplace(colmask, acc);
        return acc;
    }

    const PolyMatrix& M_;
    int n_;
    std::unordered_map<uint64_t, MultiPoly> memo_;
};

MultiPoly det_bareiss(PolyMatrix M) {
    int n = M.rows();
    if (n == 0) return MultiPoly(1);
    MultiPoly prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M.at(k, k).is_zero()) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i)
                if (!M.at(i, k).is_zero()) { swap_row = i; break; }
            if (swap_row < 0) return MultiPoly();  // zero column: singular
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(swap_row, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly num = M.at(k, k) * M.at(i, j) - M.at(i, k) * M.at(k, j);
                M.at(i, j) = num.exact_div(prev);
            }
            M.at(i, k) = MultiPoly();
        }
        prev = M.at(k, k);
    }
    MultiPoly d = M.at(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d;
}

}  // namespace

MultiPoly poly_det(const PolyMatrix& M, DetMethod method) {
    require_square(M.rows(), M.cols(), "poly_det");
    if (M.rows() > 63) throw std::invalid_argument("poly_det: dimension > 63 unsupported");
    if (method == DetMethod::fraction_free) return det_bareiss(M);
    return CofactorDet(M).run();
}

PolyMatrix poly_adjugate(const PolyMatrix& M) {
    require_square(M.rows(), M.cols(), "poly_adjugate");
    int n = M.rows();
    if (n == 1) {
        PolyMatrix one(1, 1);
        one.at(0, 0) = MultiPoly(Rational(1));
        return one;
    }
    PolyMatrix adj(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            MultiPoly c = poly_det(M.minor_deleting({i}, {j}));
            adj.at(j - 1, i - 1) = ((i + j) % 2) ? -c : c;
        }
    return adj;
}

MultiPoly poly_det_permsum(const PolyMatrix& M) {
    require_square(M.rows(), M.cols(), "poly_det_permsum");
    int n = M.rows();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly acc;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        MultiPoly prod(1);
        for (int i = 0; i < n; ++i) prod *= M.at(i, perm[i]);
        if (inv % 2) acc -= prod;
        else acc += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

MultiPoly poly_perm_permsum(const PolyMatrix& M) {
    require_square(M.rows(), M.cols(), "poly_perm_permsum");
    int n = M.rows();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly acc;
    do {
        MultiPoly prod(1);
        for (int i = 0; i < n; ++i) prod *= M.at(i, perm[i]);
        acc += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

namespace {

// Ryser: perm(M) = (-1)^n sum_{S nonempty} (-1)^{|S|} prod_i sum_{j in S} M_ij.
MultiPoly perm_ryser(const PolyMatrix& M) {
    int n = M.rows();
    MultiPoly acc;
    for (uint64_t mask = 1; mask < (uint64_t{1} << n); ++mask) {
        MultiPoly prod(1);
        for (int i = 0; i < n && !prod.is_zero(); ++i) {
            MultiPoly rowsum;
            for (int j = 0; j < n; ++j)
                if (mask & (uint64_t{1} << j)) rowsum += M.at(i, j);
            prod *= rowsum;
        }
        int parity = __builtin_popcountll(mask) % 2;
        if (parity != n % 2) acc -= prod;
        else acc += prod;
    }
    return acc;
}

}  // namespace

MultiPoly poly_perm(const PolyMatrix& M) {
    require_square(M.rows(), M.cols(), "poly_perm");
    int n = M.rows();
    if (n == 0) return MultiPoly(1);
    if (n <= 4) return poly_perm_permsum(M);
    if (n > 25) throw std::invalid_argument("poly_perm: dimension too large");
    return perm_ryser(M);
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
}

RatMatrix RatMatrix::eval(const PolyMatrix& M, const std::vector<Rational>& values) {
    RatMatrix m(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) m.at(i, j) = M.at(i, j).eval(values);
    return m;
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("RatMatrix: dimension mismatch in *");
    RatMatrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) {
            Rational acc(0);
            for (int k = 0; k < a.cols_; ++k) acc += a.at(i, k) * b.at(k, j);
            m.at(i, j) = acc;
        }
    return m;
}

bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

Rational RatMatrix::det() const {
    require_square(rows_, cols_, "RatMatrix::det");
    RatMatrix M = *this;
    int n = rows_;
    Rational d(1);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!M.at(i, k).is_zero()) { pivot = i; break; }
        if (pivot < 0) return Rational(0);
        if (pivot != k) {
            for (int j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(pivot, j));
            d = -d;
        }
        d *= M.at(k, k);
        Rational inv = M.at(k, k).reciprocal();
        for (int i = k + 1; i < n; ++i) {
            if (M.at(i, k).is_zero()) continue;
            Rational f = M.at(i, k) * inv;
            for (int j = k; j < n; ++j) M.at(i, j) -= f * M.at(k, j);
        }
    }
    return d;
}

RatMatrix RatMatrix::inverse() const {
    require_square(rows_, cols_, "RatMatrix::inverse");
    int n = rows_;
    RatMatrix M = *this;
    RatMatrix I = identity(n);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!M.at(i, k).is_zero()) { pivot = i; break; }
        if (pivot < 0) throw std::domain_error("RatMatrix::inverse: singular matrix");
        if (pivot != k)
            for (int j = 0; j < n; ++j) {
                std::swap(M.at(k, j), M.at(pivot, j));
                std::swap(I.at(k, j), I.at(pivot, j));
            }
        Rational inv = M.at(k, k).reciprocal();
        for (int j = 0; j < n; ++j) {
            M.at(k, j) *= inv;
            I.at(k, j) *= inv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k || M.at(i, k).is_zero()) continue;
            Rational f = M.at(i, k);
            for (int j = 0; j < n; ++j) {
                M.at(i, j) -= f * M.at(k, j);
                I.at(i, j) -= f * I.at(k, j);
            }
        }
    }
    return I;
}

RatMatrix RatMatrix::submatrix(const std::vector<int>& rows1,
                               const std::vector<int>& cols1) const {
    auto ri = to_zero_based(rows1, rows_, "RatMatrix::submatrix");
    auto ci = to_zero_based(cols1, cols_, "RatMatrix::submatrix");
    RatMatrix m(static_cast<int>(ri.size()), static_cast<int>(ci.size()));
    for (size_t i = 0; i < ri.size(); ++i)
        for (size_t j = 0; j < ci.size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = at(ri[i], ci[j]);
    return m;
}

RatMatrix RatMatrix::minor_deleting(const std::vector<int>& rows1,
                                    const std::vector<int>& cols1) const {
    std::vector<int> keep_r, keep_c;
    for (int i = 1; i <= rows_; ++i)
        if (std::find(rows1.begin(), rows1.end(), i) == rows1.end()) keep_r.push_back(i);
    for (int j = 1; j <= cols_; ++j)
        if (std::find(cols1.begin(), cols1.end(), j) == cols1.end()) keep_c.push_back(j);
    return submatrix(keep_r, keep_c);
}

}  // namespace canform
