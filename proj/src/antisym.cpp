#include "canform/antisym.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace canform {

namespace {

int checked_dimension(const MatrixTuple& ms, const char* where) {
    if (ms.empty()) throw std::invalid_argument(std::string(where) + ": empty matrix tuple");
    int n = ms.front().rows();
    for (const PolyMatrix& m : ms)
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument(std::string(where) +
                                        ": matrices must all be square of equal size");
    return n;
}

bool all_constant(const MatrixTuple& ms) {
    for (const PolyMatrix& m : ms)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                if (!m.at(i, j).is_zero() && !m.at(i, j).is_constant()) return false;
    return true;
}

RatMatrix to_rat(const PolyMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero()) r.at(i, j) = m.at(i, j).constant_value();
    return r;
}

PolyMatrix to_poly(const RatMatrix& m) {
    PolyMatrix p(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) p.at(i, j) = MultiPoly(m.at(i, j));
    return p;
}

// Permutation enumeration sharing prefix products: each recursion level
// multiplies the running product by one more matrix. Appending index c with
// u smaller indices still unused contributes u inversions to the parity.
template <typename Mat, typename Mul, typename Add>
void antisym_rec(const std::vector<Mat>& ms, const Mat& prefix, unsigned used, int sign,
                 Mat& acc, const Mul& mul, const Add& add) {
    int k = static_cast<int>(ms.size());
    bool leaf = true;
    for (int c = 0; c < k; ++c) {
        if (used & (1u << c)) continue;
        leaf = false;
        int u = 0;
        for (int d = 0; d < c; ++d)
            if (!(used & (1u << d))) ++u;
        antisym_rec(ms, mul(prefix, ms[c]), used | (1u << c), (u % 2) ? -sign : sign, acc,
                    mul, add);
    }
    if (leaf) add(acc, prefix, sign);
}

// The (i,j) slot a type contributes to: (-1,-1) kept/diagonal when p = q,
// (i,j) when p - q = e_i - e_j, and absent otherwise.
struct TypeSlot {
    bool contributes = false;
    bool diagonal = false;
    int i = -1, j = -1;  // 0-based, off-diagonal case
};

TypeSlot type_slot(const TypeNu& nu) {
    TypeSlot slot;
    const std::vector<int>&p = nu.p(), &q = nu.q();
    int plus = -1, minus = -1;
    for (int r = 0; r < nu.rank(); ++r) {
        int d = p[r] - q[r];
        if (d == 0) continue;
        if (d == 1 && plus < 0)
            plus = r;
        else if (d == -1 && minus < 0)
            minus = r;
        else
            return slot;  // some |d| > 1 or a second +1/-1: no contribution
    }
    if (plus < 0 && minus < 0) {
        slot.contributes = true;
        slot.diagonal = true;
    } else if (plus >= 0 && minus >= 0) {
        slot.contributes = true;
        slot.i = plus;
        slot.j = minus;
    }
    return slot;
}

}  // namespace

PolyMatrix antisymmetrize_bruteforce(const MatrixTuple& ms) {
    int n = checked_dimension(ms, "antisymmetrize_bruteforce");
    int k = static_cast<int>(ms.size());
    if (k > 8)
        throw std::invalid_argument(
            "antisymmetrize_bruteforce: k = " + std::to_string(k) + " needs " +
            factorial_z(k).get_str() + " matrix products; the brute-force limit is k <= 8");

    if (all_constant(ms)) {
        std::vector<RatMatrix> rs;
        for (const PolyMatrix& m : ms) rs.push_back(to_rat(m));
        RatMatrix acc(n, n);
        antisym_rec(
            rs, RatMatrix::identity(n), 0u, 1, acc,
            [](const RatMatrix& a, const RatMatrix& b) { return a * b; },
            [n](RatMatrix& a, const RatMatrix& t, int sign) {
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        a.at(i, j) += sign > 0 ? t.at(i, j) : -t.at(i, j);
            });
        return to_poly(acc);
    }

    PolyMatrix acc(n, n);
    antisym_rec(
        ms, PolyMatrix::identity(n), 0u, 1, acc,
        [](const PolyMatrix& a, const PolyMatrix& b) { return a * b; },
        [n](PolyMatrix& a, const PolyMatrix& t, int sign) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (sign > 0)
                        a.at(i, j) += t.at(i, j);
                    else
                        a.at(i, j) -= t.at(i, j);
                }
        });
    return acc;
}

Rational coefficient_cp(const std::vector<int>& p, int i) {
    if (i < 1) throw std::invalid_argument("coefficient_cp: index must be >= 1");
    Rational c(1);
    for (int r = 1; r <= static_cast<int>(p.size()); ++r) {
        int v = p[r - 1] + (r == i ? 1 : 0);
        if (v >= 1) c *= Rational(factorial_z(v - 1));
    }
    return c;
}

RatMatrix f_nu_identity(const TypeNu& nu) {
    int n = nu.rank();
    if (nu.size() != 2 * n - 1)
        throw std::invalid_argument("f_nu_identity: type must have 2n-1 pairs");
    RatMatrix F(n, n);
    int sign = omega_sign(nu);
    if (sign == 0) return F;
    TypeSlot slot = type_slot(nu);
    if (!slot.contributes) return F;
    if (slot.diagonal) {
        for (int i = 0; i < n; ++i)
            F.at(i, i) = Rational(sign) * coefficient_cp(nu.p(), i + 1);
    } else {
        F.at(slot.i, slot.j) = Rational(sign) * coefficient_cp(nu.p(), slot.j + 1);
    }
    return F;
}

RatMatrix f_nu_pathcount(const TypeNu& nu) {
    int n = nu.rank();
    if (nu.size() != 2 * n - 1)
        throw std::invalid_argument("f_nu_pathcount: type must have 2n-1 pairs");
    const auto& edges = nu.pairs();
    int k = nu.size();
    RatMatrix F(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            long total = 0;
            auto rec = [&](auto&& self, int at, unsigned used, int sign) -> void {
                if (used == (1u << k) - 1) {
                    if (at == j) total += sign;
                    return;
                }
                for (int e = 0; e < k; ++e) {
                    if (used & (1u << e)) continue;
                    if (edges[e].first != at) continue;
                    int u = 0;
                    for (int d = 0; d < e; ++d)
                        if (!(used & (1u << d))) ++u;
                    self(self, edges[e].second, used | (1u << e),
                         (u % 2) ? -sign : sign);
                }
            };
            rec(rec, i, 0u, 1);
            F.at(i - 1, j - 1) = Rational(total);
        }
    return F;
}

PolyMatrix antisymmetrize_closed(const MatrixTuple& ms) {
    int n = checked_dimension(ms, "antisymmetrize_closed");
    int k = static_cast<int>(ms.size());
    if (k != 2 * n - 1)
        throw std::invalid_argument("antisymmetrize_closed: need exactly 2n-1 matrices of size n x n, got " +
                                    std::to_string(k) + " of size " + std::to_string(n));

    bool constant = all_constant(ms);
    std::vector<RatMatrix> rs;
    if (constant)
        for (const PolyMatrix& m : ms) rs.push_back(to_rat(m));

    PolyMatrix result(n, n);
    for (const TypeNu& nu : enumerate_types(n)) {
        TypeSlot slot = type_slot(nu);
        if (!slot.contributes) continue;
        int sign = omega_sign(nu);
        if (sign == 0) continue;

        MultiPoly det;
        if (constant) {
            RatMatrix D(k, k);
            for (int c = 0; c < k; ++c) {
                const auto& [a, b] = nu.pairs()[c];
                for (int r = 0; r < k; ++r) D.at(r, c) = rs[r].at(a - 1, b - 1);
            }
            det = MultiPoly(D.det());
        } else {
            PolyMatrix D(k, k);
            for (int c = 0; c < k; ++c) {
                const auto& [a, b] = nu.pairs()[c];
                for (int r = 0; r < k; ++r) D.at(r, c) = ms[r].at(a - 1, b - 1);
            }
            det = poly_det(D);
        }
        if (det.is_zero()) continue;

        if (slot.diagonal) {
            for (int i = 0; i < n; ++i)
                result.at(i, i) +=
                    det * (Rational(sign) * coefficient_cp(nu.p(), i + 1));
        } else {
            result.at(slot.i, slot.j) +=
                det * (Rational(sign) * coefficient_cp(nu.p(), slot.j + 1));
        }
    }
    return result;
}

}  // namespace canform
