#pragma once

#include "canform/identities.hpp"

#include <map>
#include <string>
#include <vector>

namespace canform {

// Exact linear combination  constant + sum_s coeff_s * zeta(s), s >= 2.
// Canonical: zero coefficients are never stored.
class ZetaCombo {
public:
    ZetaCombo() = default;
    explicit ZetaCombo(const Rational& constant) : constant_(constant) {}

    static ZetaCombo zeta(int s, const Rational& coeff = Rational(1));

    const Rational& constant() const { return constant_; }
    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coeff(int s) const;
    bool is_zero() const { return constant_.is_zero() && terms_.empty(); }
    // True when the combination is exactly coeff * zeta(s), nothing else.
    bool is_single_zeta() const { return constant_.is_zero() && terms_.size() == 1; }

    ZetaCombo& operator+=(const ZetaCombo& o);
    ZetaCombo& operator*=(const Rational& c);
    friend ZetaCombo operator+(ZetaCombo a, const ZetaCombo& b) { return a += b; }
    friend ZetaCombo operator*(ZetaCombo a, const Rational& c) { return a *= c; }
    friend ZetaCombo operator*(const Rational& c, ZetaCombo a) { return a *= c; }
    friend bool operator==(const ZetaCombo& a, const ZetaCombo& b) {
        return a.constant_ == b.constant_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const ZetaCombo& a, const ZetaCombo& b) { return !(a == b); }

    // "num/den*zeta(s) + ..." ascending in s, constant term (as "num/den")
    // last; the denominator is always written. Zero prints "0".
    std::string str() const;

private:
    Rational constant_;
    std::map<int, Rational> terms_;
};

std::ostream& operator<<(std::ostream& os, const ZetaCombo& z);

// Polynomial in x^2 with exact rational coefficients: sum_j coeffs[j] x^{2j}.
class EvenPolynomial {
public:
    EvenPolynomial() = default;
    explicit EvenPolynomial(std::vector<Rational> coeffs);

    // p_{2k}(x) = prod_{l=1}^k (x^2 - l^2); p_0 = 1.
    static EvenPolynomial p2k(int k);

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    // Degree in x (always even); -1 for the zero polynomial.
    int degree() const { return coeffs_.empty() ? -1 : 2 * (static_cast<int>(coeffs_.size()) - 1); }
    bool is_zero() const { return coeffs_.empty(); }
    Rational eval(const Rational& x) const;

    EvenPolynomial& operator+=(const EvenPolynomial& o);
    EvenPolynomial& operator*=(const Rational& c);
    friend EvenPolynomial operator+(EvenPolynomial a, const EvenPolynomial& b) { return a += b; }
    friend EvenPolynomial operator*(EvenPolynomial a, const Rational& c) { return a *= c; }
    friend EvenPolynomial operator*(const Rational& c, EvenPolynomial a) { return a *= c; }
    friend bool operator==(const EvenPolynomial& a, const EvenPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const EvenPolynomial& a, const EvenPolynomial& b) { return !(a == b); }

private:
    void trim();
    std::vector<Rational> coeffs_;
};

// Number of ordered partitions of an m-set into k nonempty even-size blocks,
// by the alternating binomial formula (2/2^k) sum_{r=1..k} (-1)^{k-r} C(2k,k-r) r^m.
Rational cmk(int m, int k);

// Independent oracle for the same count: the multinomial sum over
// compositions m = 2p_1 + ... + 2p_k, p_i >= 1, of m!/prod (2p_i)!.
Rational cmk_multinomial(int m, int k);

// The full row c_{m,1..m/2}.
struct CentralFactorialRow {
    int m = 0;
    std::vector<Rational> values;  // values[k-1] = c_{m,k}
};
CentralFactorialRow central_factorial_row(int m);

// Central factorial numbers t_{mu,k} = 2^k/(2k)! c_{2mu,k} for k = 1..mu.
std::vector<Rational> central_factorial_numbers(int mu);

// det Lambda_{W_n}(T)^{I,J} in closed form over variables x1..x{2n}:
//   -S(x) / prod_k x_{n+i_k} x_{n+j_k}   when I and J interlace,
//   0                                    otherwise,
// where S(x) = x_{n+1}...x_{2n} and the superscripts delete the flattened
// row indices of I and the column indices of J. I, J are sets of consecutive
// rim pairs (i, i+1), 1 <= i <= n-1, disjoint as pair sets, |I| = |J| >= 1.
// A repeated index inside the flattening of I or of J gives 0.
MultiPoly wheel_minor(int n, const PairSet& I, const PairSet& J);

// Coefficients of the restricted canonical form of the odd wheel:
//   sum_k  coeff_k * S(x)^{k-1} / Psi^{k+1}  (top-cell wedge implied),
// coeff_k = (-1)^{m/2} (2n-1) 2^k c_{m,k},  m = n-1,  k = 1..m/2.
struct WheelIntegrandTerm {
    int k = 0;
    Rational coeff;
};
std::vector<WheelIntegrandTerm> wheel_integrand(int n);

// Feynman period of the weighted wheel in 2k+2 dimensions as an exact zeta
// combination: C(2n-2,n-1)/((2k-1)!(k-1)!^{n-1}) sum_r p_{2k-2}(r)/r^{2n-3}
// expanded termwise into zeta(2n-3-2j). Requires 1 <= k <= n-2.
ZetaCombo weighted_period_zeta(int n, int k);

// The canonical wheel integral for odd n >= 3:
//   (2n-1) sum_{k=1..m/2} 2^k c_{m,k} (k-1)!^n / k! * weighted_period_zeta(n,k),
// which collapses to the single term n*C(2n,n)*zeta(n).
ZetaCombo wheel_integral_exact(int n);

// Verifies sum_{k=1..m/2} 2^k/(2k)! c_{m,k} p_{2k-2}(x) = x^{m-2} exactly.
IdentityWitness central_identity_check(int m);

// Unweighted wheel Feynman residue C(2n-2,n-1)*zeta(2n-3), n >= 3.
ZetaCombo feynman_residue_zeta(int n);

}  // namespace canform
