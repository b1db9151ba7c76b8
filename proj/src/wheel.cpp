#include "canform/wheel.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace canform {

namespace {

std::string slash_form(const Rational& r) {
    return r.num().get_str() + "/" + r.den().get_str();
}

void require_even_m(int m) {
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("cmk: m must be even and >= 2, got " + std::to_string(m));
}

}  // namespace

ZetaCombo ZetaCombo::zeta(int s, const Rational& coeff) {
    if (s < 2) throw std::invalid_argument("ZetaCombo: zeta argument must be >= 2");
    ZetaCombo z;
    if (!coeff.is_zero()) z.terms_[s] = coeff;
    return z;
}

Rational ZetaCombo::coeff(int s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
}

ZetaCombo& ZetaCombo::operator+=(const ZetaCombo& o) {
    constant_ += o.constant_;
    for (const auto& [s, c] : o.terms_) {
        Rational& slot = terms_[s];
        slot += c;
        if (slot.is_zero()) terms_.erase(s);
    }
    return *this;
}

ZetaCombo& ZetaCombo::operator*=(const Rational& c) {
    if (c.is_zero()) {
        constant_ = Rational(0);
        terms_.clear();
        return *this;
    }
    constant_ *= c;
    for (auto& [s, v] : terms_) v *= c;
    return *this;
}

std::string ZetaCombo::str() const {
    if (is_zero()) return "0";
    std::string out;
    auto append = [&out](const Rational& c, const std::string& tail) {
        if (out.empty()) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        out += slash_form(c.abs()) + tail;
    };
    for (const auto& [s, c] : terms_) append(c, "*zeta(" + std::to_string(s) + ")");
    if (!constant_.is_zero()) append(constant_, "");
    return out;
}

std::ostream& operator<<(std::ostream& os, const ZetaCombo& z) { return os << z.str(); }

EvenPolynomial::EvenPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
}

void EvenPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

EvenPolynomial EvenPolynomial::p2k(int k) {
    if (k < 0) throw std::invalid_argument("EvenPolynomial::p2k: k must be >= 0");
    std::vector<Rational> c{Rational(1)};
    for (int l = 1; l <= k; ++l) {
        std::vector<Rational> next(c.size() + 1);
        Rational lsq(static_cast<long>(l) * l);
        for (size_t j = 0; j < c.size(); ++j) {
            next[j + 1] += c[j];
            next[j] -= lsq * c[j];
        }
        c = std::move(next);
    }
    return EvenPolynomial(std::move(c));
}

Rational EvenPolynomial::eval(const Rational& x) const {
    Rational xsq = x * x;
    Rational acc;
    for (size_t j = coeffs_.size(); j-- > 0;) acc = acc * xsq + coeffs_[j];
    return acc;
}

EvenPolynomial& EvenPolynomial::operator+=(const EvenPolynomial& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
    trim();
    return *this;
}

EvenPolynomial& EvenPolynomial::operator*=(const Rational& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& v : coeffs_) v *= c;
    return *this;
}

Rational cmk(int m, int k) {
    require_even_m(m);
    if (k < 1) throw std::invalid_argument("cmk: k must be >= 1");
    mpz_class sum = 0;
    for (int r = 1; r <= k; ++r) {
        mpz_class term = binomial_z(2 * k, k - r) * pow_z(r, m);
        if ((k - r) % 2 != 0) term = -term;
        sum += term;
    }
    return Rational(2 * sum, pow_z(2, k));
}

Rational cmk_multinomial(int m, int k) {
    require_even_m(m);
    if (k < 1) throw std::invalid_argument("cmk: k must be >= 1");
    // Compositions m = 2p_1 + ... + 2p_k with p_i >= 1, i.e. of m/2 into k
    // ordered positive parts; each contributes m!/prod (2p_i)!.
    Rational total;
    mpz_class mfact = factorial_z(m);
    std::vector<int> parts(k);
    auto recurse = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == k - 1) {
            parts[pos] = remaining;
            mpz_class den = 1;
            for (int p : parts) den *= factorial_z(2 * p);
            total += Rational(mfact, den);
            return;
        }
        for (int p = 1; remaining - p >= k - 1 - pos; ++p) {
            parts[pos] = p;
            self(self, pos + 1, remaining - p);
        }
    };
    if (m / 2 >= k) recurse(recurse, 0, m / 2);
    return total;
}

CentralFactorialRow central_factorial_row(int m) {
    require_even_m(m);
    CentralFactorialRow row;
    row.m = m;
    for (int k = 1; k <= m / 2; ++k) row.values.push_back(cmk(m, k));
    return row;
}

std::vector<Rational> central_factorial_numbers(int mu) {
    if (mu < 1) throw std::invalid_argument("central_factorial_numbers: mu must be >= 1");
    std::vector<Rational> t;
    for (int k = 1; k <= mu; ++k)
        t.push_back(Rational(pow_z(2, k), factorial_z(2 * k)) * cmk(2 * mu, k));
    return t;
}

MultiPoly wheel_minor(int n, const PairSet& I, const PairSet& J) {
    if (n < 3) throw std::invalid_argument("wheel_minor: n must be >= 3");
    if (I.empty() || I.size() != J.size())
        throw std::invalid_argument("wheel_minor: need nonempty pair sets of equal size");
    auto firsts = [n](const PairSet& P) {
        std::vector<int> f;
        for (const auto& [a, b] : P) {
            if (a < 1 || a > n - 1 || b != a + 1)
                throw std::invalid_argument("wheel_minor: pairs must be consecutive (i, i+1), 1 <= i <= n-1");
            f.push_back(a);
        }
        std::sort(f.begin(), f.end());
        return f;
    };
    std::vector<int> fi = firsts(I), fj = firsts(J);
    for (int a : fi)
        if (std::binary_search(fj.begin(), fj.end(), a))
            throw std::invalid_argument("wheel_minor: pair sets must be disjoint");

    std::vector<std::string> names;
    for (int e = 1; e <= 2 * n; ++e) names.push_back("x" + std::to_string(e));
    VarTablePtr table = make_var_table(std::move(names));

    // A repeated row (or column) index in the flattening, i.e. adjacent rim
    // pairs within one set, is excluded from the expansion: return 0.
    auto has_adjacent = [](const std::vector<int>& f) {
        for (size_t a = 1; a < f.size(); ++a)
            if (f[a] == f[a - 1] + 1 || f[a] == f[a - 1]) return true;
        return false;
    };
    if (has_adjacent(fi) || has_adjacent(fj)) return MultiPoly::zero(table);

    if (fj.front() < fi.front()) std::swap(fi, fj);
    bool interlaced = true;
    for (size_t a = 0; a < fi.size(); ++a) {
        if (!(fi[a] < fj[a])) interlaced = false;
        if (a + 1 < fi.size() && !(fj[a] < fi[a + 1])) interlaced = false;
    }
    if (!interlaced) return MultiPoly::zero(table);

    std::vector<bool> removed(n + 1, false);
    for (int a : fi) removed[a] = true;
    for (int a : fj) removed[a] = true;
    MultiPoly::Exps e(table->size(), 0);
    for (int r = 1; r <= n; ++r)
        if (!removed[r]) e[n + r - 1] = 1;  // spoke variable x_{n+r}
    return MultiPoly::monomial(table, std::move(e), Rational(-1));
}

std::vector<WheelIntegrandTerm> wheel_integrand(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("wheel_integrand: n must be odd and >= 3");
    int m = n - 1;
    Rational sign((m / 2) % 2 == 0 ? 1 : -1);
    std::vector<WheelIntegrandTerm> terms;
    for (int k = 1; k <= m / 2; ++k) {
        WheelIntegrandTerm t;
        t.k = k;
        t.coeff = sign * Rational(2 * n - 1) * Rational(pow_z(2, k)) * cmk(m, k);
        terms.push_back(std::move(t));
    }
    return terms;
}

ZetaCombo weighted_period_zeta(int n, int k) {
    if (n < 3) throw std::invalid_argument("weighted_period_zeta: n must be >= 3");
    if (k < 1 || k > n - 2)
        throw std::invalid_argument("weighted_period_zeta: need 1 <= k <= n-2");
    EvenPolynomial p = EvenPolynomial::p2k(k - 1);
    ZetaCombo combo;
    for (size_t j = 0; j < p.coeffs().size(); ++j)
        combo += ZetaCombo::zeta(2 * n - 3 - 2 * static_cast<int>(j), p.coeffs()[j]);
    Rational prefactor = Rational(binomial_z(2 * n - 2, n - 1)) /
                         (Rational(factorial_z(2 * k - 1)) *
                          pow_q(Rational(factorial_z(k - 1)), n - 1));
    return combo * prefactor;
}

ZetaCombo wheel_integral_exact(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("wheel_integral_exact: n must be odd and >= 3");
    int m = n - 1;
    ZetaCombo total;
    for (int k = 1; k <= m / 2; ++k) {
        Rational factor = Rational(pow_z(2, k)) * cmk(m, k) *
                          pow_q(Rational(factorial_z(k - 1)), n) / Rational(factorial_z(k));
        total += weighted_period_zeta(n, k) * factor;
    }
    total *= Rational(2 * n - 1);
    ZetaCombo expected = ZetaCombo::zeta(n, Rational(n) * Rational(binomial_z(2 * n, n)));
    if (total != expected)
        throw std::logic_error("wheel_integral_exact: sum did not collapse to n*C(2n,n)*zeta(n); got " +
                               total.str());
    return total;
}

IdentityWitness central_identity_check(int m) {
    require_even_m(m);
    EvenPolynomial lhs;
    for (int k = 1; k <= m / 2; ++k)
        lhs += EvenPolynomial::p2k(k - 1) *
               (Rational(pow_z(2, k), factorial_z(2 * k)) * cmk(m, k));
    std::vector<Rational> xpow(m / 2);
    xpow[m / 2 - 1] = Rational(1);
    EvenPolynomial rhs(std::move(xpow));
    IdentityWitness w;
    w.ok = lhs == rhs;
    if (!w.ok) {
        std::ostringstream os;
        os << "lhs coeffs:";
        for (const auto& c : lhs.coeffs()) os << " " << c;
        os << " | rhs coeffs:";
        for (const auto& c : rhs.coeffs()) os << " " << c;
        w.detail = os.str();
    }
    return w;
}

ZetaCombo feynman_residue_zeta(int n) {
    if (n < 3) throw std::invalid_argument("feynman_residue_zeta: n must be >= 3");
    return ZetaCombo::zeta(2 * n - 3, Rational(binomial_z(2 * n - 2, n - 1)));
}

}  // namespace canform
