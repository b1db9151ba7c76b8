#include "canform/poly.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace canform {

namespace {

// Split "ab12" into ("ab", 12); suffix -1 when absent.
std::pair<std::string, long> split_name(const std::string& s) {
    size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    if (i == s.size()) return {s, -1};
    // Guard against absurd suffixes; fall back to string order.
    if (s.size() - i > 12) return {s, -1};
    return {s.substr(0, i), std::stol(s.substr(i))};
}

}  // namespace

bool var_name_less(const std::string& a, const std::string& b) {
    auto [pa, na] = split_name(a);
    auto [pb, nb] = split_name(b);
    if (pa != pb) return pa < pb;
    if (na != nb) return na < nb;
    return a < b;
}

VarTablePtr make_var_table(std::vector<std::string> names) {
    std::sort(names.begin(), names.end(), var_name_less);
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return std::make_shared<const VarTable>(std::move(names));
}

VarTablePtr empty_var_table() {
    static const VarTablePtr t = std::make_shared<const VarTable>();
    return t;
}

VarTablePtr merge_var_tables(const VarTablePtr& a, const VarTablePtr& b) {
    if (a == b || *a == *b) return a;
    if (a->empty()) return b;
    if (b->empty()) return a;
    std::vector<std::string> merged;
    merged.reserve(a->size() + b->size());
    std::set_union(a->begin(), a->end(), b->begin(), b->end(),
                   std::back_inserter(merged), var_name_less);
    if (merged == *a) return a;
    if (merged == *b) return b;
    return std::make_shared<const VarTable>(std::move(merged));
}

MultiPoly MultiPoly::zero(VarTablePtr t) {
    MultiPoly p;
    p.vars_ = std::move(t);
    return p;
}

MultiPoly MultiPoly::constant(const Rational& c, VarTablePtr t) {
    MultiPoly p = zero(std::move(t));
    if (!c.is_zero()) p.terms_.emplace(Exps(p.vars_->size(), 0), c);
    return p;
}

MultiPoly MultiPoly::var(const std::string& name) {
    return var(name, make_var_table({name}));
}

MultiPoly MultiPoly::var(const std::string& name, VarTablePtr t) {
    MultiPoly p = zero(std::move(t));
    auto it = std::find(p.vars_->begin(), p.vars_->end(), name);
    if (it == p.vars_->end())
        throw std::invalid_argument("MultiPoly::var: " + name + " not in table");
    Exps e(p.vars_->size(), 0);
    e[static_cast<size_t>(it - p.vars_->begin())] = 1;
    p.terms_.emplace(std::move(e), Rational(1));
    return p;
}

MultiPoly MultiPoly::monomial(VarTablePtr t, Exps e, const Rational& c) {
    MultiPoly p = zero(std::move(t));
    if (e.size() != p.vars_->size())
        throw std::invalid_argument("MultiPoly::monomial: exponent length mismatch");
    if (!c.is_zero()) p.terms_.emplace(std::move(e), c);
    return p;
}

bool MultiPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

Rational MultiPoly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw std::domain_error("MultiPoly: not a constant");
    return terms_.begin()->second;
}

long MultiPoly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.rbegin()->first;  // graded order: last term has max degree
    return static_cast<long>(std::accumulate(e.begin(), e.end(), uint64_t{0}));
}

Rational MultiPoly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exps& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MultiPoly MultiPoly::embedded(const VarTablePtr& bigger) const {
    if (bigger == vars_ || *bigger == *vars_) {
        MultiPoly p = *this;
        p.vars_ = bigger;
        return p;
    }
    std::vector<size_t> where(vars_->size());
    for (size_t i = 0; i < vars_->size(); ++i) {
        auto it = std::find(bigger->begin(), bigger->end(), (*vars_)[i]);
        if (it == bigger->end())
            throw std::invalid_argument("MultiPoly::embedded: variable " + (*vars_)[i] +
                                        " missing from target table");
        where[i] = static_cast<size_t>(it - bigger->begin());
    }
    MultiPoly p = zero(bigger);
    for (const auto& [e, c] : terms_) {
        Exps big(bigger->size(), 0);
        for (size_t i = 0; i < e.size(); ++i) big[where[i]] = e[i];
        p.terms_.emplace(std::move(big), c);
    }
    return p;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    VarTablePtr merged = merge_var_tables(vars_, o.vars_);
    if (merged != vars_) *this = embedded(merged);
    const MultiPoly* rhs = &o;
    MultiPoly tmp;
    if (merged != o.vars_ && *merged != *o.vars_) {
        tmp = o.embedded(merged);
        rhs = &tmp;
    }
    for (const auto& [e, c] : rhs->terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    return *this += -o;
}

MultiPoly operator-(const MultiPoly& a) {
    MultiPoly p = a;
    for (auto& [e, c] : p.terms_) c = -c;
    return p;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    VarTablePtr merged = merge_var_tables(a.vars_, b.vars_);
    const MultiPoly& x = (merged == a.vars_) ? a : a.embedded(merged);
    const MultiPoly& y = (merged == b.vars_) ? b : b.embedded(merged);
    MultiPoly p = MultiPoly::zero(merged);
    MultiPoly::Exps e(merged->size());
    for (const auto& [ea, ca] : x.terms_) {
        for (const auto& [eb, cb] : y.terms_) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    }
    return p;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    *this = *this * o;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_ || *a.vars_ == *b.vars_) return a.terms_ == b.terms_;
    VarTablePtr merged = merge_var_tables(a.vars_, b.vars_);
    return a.embedded(merged).terms_ == b.embedded(merged).terms_;
}

MultiPoly MultiPoly::subst(const std::string& name, const Rational& value) const {
    auto it = std::find(vars_->begin(), vars_->end(), name);
    if (it == vars_->end()) return *this;
    size_t idx = static_cast<size_t>(it - vars_->begin());
    MultiPoly p = zero(vars_);
    for (const auto& [e, c] : terms_) {
        Rational nc = c * pow_q(value, e[idx]);
        Exps ne = e;
        ne[idx] = 0;
        p.add_term(ne, nc);
    }
    return p;
}

Rational MultiPoly::eval(const std::vector<Rational>& values) const {
    if (values.size() != vars_->size())
        throw std::invalid_argument("MultiPoly::eval: wrong number of values");
    Rational total(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) t *= pow_q(values[i], e[i]);
        total += t;
    }
    return total;
}

MultiPoly MultiPoly::pow(unsigned long e) const {
    MultiPoly r = constant(Rational(1), vars_);
    MultiPoly b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

MultiPoly MultiPoly::exact_div(const MultiPoly& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("MultiPoly: division by zero");
    VarTablePtr merged = merge_var_tables(vars_, divisor.vars_);
    MultiPoly r = embedded(merged);
    MultiPoly d = divisor.embedded(merged);
    MultiPoly q = zero(merged);
    const auto& [de, dc] = *d.terms_.rbegin();  // leading term, graded-lex max
    while (!r.is_zero()) {
        const auto& [re, rc] = *r.terms_.rbegin();
        Exps qe(re.size());
        for (size_t i = 0; i < re.size(); ++i) {
            if (re[i] < de[i]) throw std::domain_error("MultiPoly: not exactly divisible");
            qe[i] = re[i] - de[i];
        }
        Rational qc = rc / dc;
        MultiPoly t = monomial(merged, qe, qc);
        q += t;
        r -= t * d;
    }
    return q;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (first) {
            if (c.sign() < 0) os << "-";
            first = false;
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        Rational mag = c.abs();
        bool has_var = std::any_of(e.begin(), e.end(), [](uint32_t x) { return x != 0; });
        bool coeff_shown = !mag.is_one() || !has_var;
        if (coeff_shown) os << mag.str();
        bool need_star = coeff_shown;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) os << "*";
            os << (*vars_)[i];
            if (e[i] > 1) os << "^" << e[i];
            need_star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    return os << p.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::invalid_argument("MultiPoly::parse: " + what + " at position " +
                                    std::to_string(i) + " in \"" + s + "\"");
    }

    mpz_class parse_uint() {
        skip_ws();
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) fail("expected number");
        return mpz_class(s.substr(start, i - start));
    }

    std::string parse_name() {
        skip_ws();
        size_t start = i;
        if (i >= s.size() || !(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            fail("expected variable name");
        ++i;
        while (i < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            ++i;
        return s.substr(start, i - start);
    }

    // term := factor ('*' factor)*, factors are numbers or var^exp
    void parse_term(Rational& coeff, std::map<std::string, uint32_t>& exps) {
        coeff = Rational(1);
        exps.clear();
        while (true) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                mpz_class num = parse_uint();
                mpz_class den = 1;
                if (peek() == '/') {
                    ++i;
                    den = parse_uint();
                }
                coeff *= Rational(num, den);
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = parse_name();
                uint32_t e = 1;
                if (peek() == '^') {
                    ++i;
                    e = static_cast<uint32_t>(parse_uint().get_ui());
                }
                exps[name] += e;
            } else {
                fail("expected factor");
            }
            if (peek() == '*') {
                ++i;
                continue;
            }
            break;
        }
    }

    MultiPoly run(const VarTablePtr& tbl) {
        MultiPoly p = MultiPoly::zero(tbl);
        bool first = true;
        while (!eof()) {
            int sign = 1;
            char c = peek();
            if (c == '+' || c == '-') {
                sign = (c == '-') ? -1 : 1;
                ++i;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Rational coeff;
            std::map<std::string, uint32_t> exps;
            parse_term(coeff, exps);
            if (sign < 0) coeff = -coeff;
            MultiPoly::Exps e(tbl->size(), 0);
            for (const auto& [name, ex] : exps) {
                auto it = std::find(tbl->begin(), tbl->end(), name);
                if (it == tbl->end()) fail("unknown variable " + name);
                e[static_cast<size_t>(it - tbl->begin())] += ex;
            }
            p += MultiPoly::monomial(tbl, std::move(e), coeff);
            first = false;
        }
        return p;
    }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::string& text, VarTablePtr table) {
    if (text.find_first_not_of(" \t\n") == std::string::npos)
        throw std::invalid_argument("MultiPoly::parse: empty input");
    if (text == "0") return zero(table);
    Parser p{text, 0};
    return p.run(table);
}

MultiPoly MultiPoly::parse(const std::string& text) {
    // scan pass: collect identifiers, then parse against the inferred table
    std::vector<std::string> names;
    size_t i = 0;
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isalpha(c) || c == '_') {
            size_t start = i++;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            names.push_back(text.substr(start, i - start));
        } else {
            ++i;
        }
    }
    return parse(text, make_var_table(std::move(names)));
}

}  // namespace canform
