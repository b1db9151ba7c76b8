#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace canform {

// Arbitrary-precision rational, always reduced, denominator >= 1.
// Thin wrapper over GMP's mpq_class so expression templates never leak
// into user code and the canonical-form invariant is kept in one place.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(long long n) { v_ = make_mpz(n); }
    Rational(const mpz_class& z) : v_(z) {}
    Rational(long num, long den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }
    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num) / mpq_class(den);
    }

    // Accepts "a" or "a/b", optional leading '-'.
    static Rational from_string(const std::string& s);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational abs() const { Rational r; r.v_ = ::abs(v_); return r; }
    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: division by zero");
        Rational r; r.v_ = 1 / v_; return r;
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    double to_double() const { return v_.get_d(); }

    // "n" when integral, "n/d" otherwise.
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
    static mpz_class make_mpz(long long n) {
        mpz_class z;
        // GMP has no long long ctor on all platforms; go through string only
        // when the value does not fit in a long.
        if (n >= -0x7fffffffffffLL && n <= 0x7fffffffffffLL) {
            z = static_cast<long>(n);
        } else {
            z = mpz_class(std::to_string(n));
        }
        return z;
    }

    mpq_class v_;
};

// Exact integer helpers used throughout the combinatorial formulas.
mpz_class factorial_z(unsigned long k);
mpz_class binomial_z(unsigned long n, unsigned long k);
mpz_class pow_z(const mpz_class& base, unsigned long exp);
Rational pow_q(const Rational& base, long exp);

}  // namespace canform
