#pragma once

#include "canform/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace canform {

// Variable tables are always sorted (numeric-aware) and deduplicated, so a
// table is determined by its set of names and merges are order-stable.
using VarTable = std::vector<std::string>;
using VarTablePtr = std::shared_ptr<const VarTable>;

// "x2" < "x10", "b11" < "b12": alphabetic prefix first, numeric suffix second.
bool var_name_less(const std::string& a, const std::string& b);

VarTablePtr make_var_table(std::vector<std::string> names);
VarTablePtr merge_var_tables(const VarTablePtr& a, const VarTablePtr& b);
VarTablePtr empty_var_table();

// Graded lexicographic order on exponent vectors: total degree first, then
// lex with earlier variables more significant. This is the canonical term
// order for serialization (terms printed largest first).
struct GradedLexLess {
    bool operator()(const std::vector<uint32_t>& a,
                    const std::vector<uint32_t>& b) const {
        uint64_t da = std::accumulate(a.begin(), a.end(), uint64_t{0});
        uint64_t db = std::accumulate(b.begin(), b.end(), uint64_t{0});
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: no zero terms; every exponent vector has the table's length.
class MultiPoly {
public:
    using Exps = std::vector<uint32_t>;
    using TermMap = std::map<Exps, Rational, GradedLexLess>;

    MultiPoly() : vars_(empty_var_table()) {}
    explicit MultiPoly(const Rational& c) : vars_(empty_var_table()) {
        if (!c.is_zero()) terms_.emplace(Exps{}, c);
    }
    MultiPoly(int c) : MultiPoly(Rational(c)) {}

    static MultiPoly zero(VarTablePtr t);
    static MultiPoly constant(const Rational& c, VarTablePtr t);
    static MultiPoly var(const std::string& name);
    static MultiPoly var(const std::string& name, VarTablePtr t);
    static MultiPoly monomial(VarTablePtr t, Exps e, const Rational& c);

    const VarTable& vars() const { return *vars_; }
    const VarTablePtr& vars_ptr() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value when is_constant(); throws otherwise.
    Rational constant_value() const;
    size_t term_count() const { return terms_.size(); }
    // -1 for the zero polynomial.
    long total_degree() const;

    Rational coeff(const Exps& e) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a);
    MultiPoly& operator*=(const Rational& c);
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

    // Exact equality after embedding both sides into the merged table.
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    // Re-express over a table that contains every variable of this one.
    MultiPoly embedded(const VarTablePtr& bigger) const;

    // Substitute one variable by a rational value (table unchanged).
    MultiPoly subst(const std::string& name, const Rational& value) const;
    // Full evaluation; values aligned with the variable table.
    Rational eval(const std::vector<Rational>& values) const;

    // Exact division: throws std::domain_error unless divisor divides exactly.
    MultiPoly exact_div(const MultiPoly& divisor) const;

    MultiPoly pow(unsigned long e) const;

    // Canonical text: terms in descending graded-lex order,
    // "c*x1^a*x2^b" pieces joined by " + " / " - ". Zero prints "0".
    std::string str() const;

    // Round-trip parser for the same grammar. The table-less overload infers
    // the table from the variable names appearing in the text.
    static MultiPoly parse(const std::string& text, VarTablePtr table);
    static MultiPoly parse(const std::string& text);

private:
    void add_term(const Exps& e, const Rational& c);

    VarTablePtr vars_;
    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

}  // namespace canform
