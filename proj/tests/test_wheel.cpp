#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "canform/wheel.hpp"

#include <algorithm>
#include <random>
#include <vector>

using namespace canform;

namespace {

// Evaluate a polynomial whose variables are edge variables "x<e>" at the
// point x (1-based edge indexing), regardless of which table it lives in.
Rational eval_poly(const MultiPoly& f, const std::vector<Rational>& x) {
    std::vector<Rational> vals;
    for (const std::string& name : f.vars()) {
        size_t e = std::stoul(name.substr(1));
        vals.push_back(x.at(e - 1));
    }
    return f.eval(vals);
}

// All size-p subsets of the n-1 rim pairs (1,2)..(n-1,n), as PairSets.
std::vector<PairSet> rim_pair_subsets(int n, int p) {
    std::vector<int> firsts(n - 1);
    for (int i = 0; i < n - 1; ++i) firsts[i] = i + 1;
    std::vector<PairSet> out;
    std::vector<int> idx(p);
    auto rec = [&](auto&& self, int pos, int from) -> void {
        if (pos == p) {
            PairSet s;
            for (int a : idx) s.push_back({a, a + 1});
            out.push_back(std::move(s));
            return;
        }
        for (int a = from; a <= n - 1; ++a) {
            idx[pos] = a;
            self(self, pos + 1, a + 1);
        }
    };
    rec(rec, 0, 1);
    return out;
}

std::vector<int> flatten(const PairSet& P) {
    std::vector<int> f;
    for (const auto& [a, b] : P) {
        f.push_back(a);
        f.push_back(b);
    }
    std::sort(f.begin(), f.end());
    return f;
}

bool has_repeat(const std::vector<int>& f) {
    return std::adjacent_find(f.begin(), f.end()) != f.end();
}

bool pairs_disjoint(const PairSet& I, const PairSet& J) {
    for (const auto& p : I)
        if (std::find(J.begin(), J.end(), p) != J.end()) return false;
    return true;
}

// Compare the closed form against the literal determinant whenever the
// flattenings are repeat-free; the closed form must vanish otherwise.
void check_minor_pair(const PolyMatrix& lap, int n, const PairSet& I, const PairSet& J) {
    MultiPoly closed = wheel_minor(n, I, J);
    std::vector<int> rows = flatten(I), cols = flatten(J);
    if (has_repeat(rows) || has_repeat(cols)) {
        CHECK(closed.is_zero());
        return;
    }
    CHECK(closed == poly_det(lap.minor_deleting(rows, cols)));
}

MultiPoly spoke_product(int n, bool chart) {
    MultiPoly S(1);
    for (int r = 1; r <= (chart ? n - 1 : n); ++r)
        S *= MultiPoly::var("x" + std::to_string(n + r));
    return S;
}

}  // namespace

TEST_CASE("zeta combinations") {
    ZetaCombo z = ZetaCombo::zeta(5, Rational(1260));
    CHECK(z.str() == "1260/1*zeta(5)");
    CHECK(z.is_single_zeta());
    CHECK(z.coeff(5) == Rational(1260));
    CHECK(z.coeff(3) == Rational(0));

    ZetaCombo mixed = ZetaCombo::zeta(3, Rational(35, 3)) + ZetaCombo::zeta(7, Rational(-2));
    CHECK(mixed.str() == "35/3*zeta(3) - 2/1*zeta(7)");
    CHECK_FALSE(mixed.is_single_zeta());
    mixed += ZetaCombo(Rational(1, 2));
    CHECK(mixed.str() == "35/3*zeta(3) - 2/1*zeta(7) + 1/2");
    CHECK(mixed.constant() == Rational(1, 2));

    // Cancellation restores canonical form.
    ZetaCombo cancel = ZetaCombo::zeta(9, Rational(4)) + ZetaCombo::zeta(9, Rational(-4));
    CHECK(cancel.is_zero());
    CHECK(cancel.str() == "0");
    CHECK(cancel.terms().empty());

    CHECK((ZetaCombo::zeta(3) * Rational(0)).is_zero());
    CHECK((Rational(3) * ZetaCombo::zeta(3, Rational(2))).coeff(3) == Rational(6));
    CHECK(ZetaCombo::zeta(3, Rational(0)).is_zero());
    CHECK(ZetaCombo::zeta(4, Rational(-1)).str() == "-1/1*zeta(4)");

    CHECK_THROWS_AS(ZetaCombo::zeta(1), std::invalid_argument);
    CHECK_THROWS_AS(ZetaCombo::zeta(0), std::invalid_argument);
}

TEST_CASE("even polynomials in x^2") {
    EvenPolynomial p0 = EvenPolynomial::p2k(0);
    CHECK(p0.coeffs() == std::vector<Rational>{Rational(1)});
    CHECK(p0.degree() == 0);

    EvenPolynomial p2 = EvenPolynomial::p2k(1);
    CHECK(p2.coeffs() == std::vector<Rational>{Rational(-1), Rational(1)});

    EvenPolynomial p4 = EvenPolynomial::p2k(2);
    // (x^2-1)(x^2-4) = 4 - 5x^2 + x^4
    CHECK(p4.coeffs() == std::vector<Rational>{Rational(4), Rational(-5), Rational(1)});
    CHECK(p4.degree() == 4);
    CHECK(p4.eval(Rational(1)) == Rational(0));
    CHECK(p4.eval(Rational(2)) == Rational(0));
    CHECK(p4.eval(Rational(3)) == Rational(40));
    CHECK(p4.eval(Rational(-3)) == Rational(40));

    for (int k = 0; k <= 8; ++k) {
        EvenPolynomial p = EvenPolynomial::p2k(k);
        CHECK(p.degree() == 2 * k);
        // monic, and vanishing exactly at x = 1..k
        CHECK(p.coeffs().back() == Rational(1));
        for (int l = 1; l <= k; ++l) CHECK(p.eval(Rational(l)) == Rational(0));
        CHECK(p.eval(Rational(k + 1)) != Rational(0));
    }

    EvenPolynomial sum = p2 + p2 * Rational(-1);
    CHECK(sum.is_zero());
    CHECK(sum.degree() == -1);
    CHECK((p2 * Rational(0)).is_zero());
    CHECK_THROWS_AS(EvenPolynomial::p2k(-1), std::invalid_argument);
}

TEST_CASE("even-block partition counts: two formulas agree") {
    // Alternating binomial formula vs the multinomial composition sum,
    // independently coded, for every m <= 14.
    for (int m = 2; m <= 14; m += 2)
        for (int k = 1; k <= m / 2; ++k) {
            CAPTURE(m);
            CAPTURE(k);
            Rational c = cmk(m, k);
            CHECK(c == cmk_multinomial(m, k));
            CHECK(c.is_integer());
            CHECK(c.sign() > 0);
        }

    // c_{m,1} = 1 for all even m >= 2.
    for (int m = 2; m <= 12; m += 2) CHECK(cmk(m, 1) == Rational(1));
    CHECK(cmk(4, 2) == Rational(6));

    // Closed forms for k = 2, 3.
    for (int m = 4; m <= 12; m += 2)
        CHECK(cmk(m, 2) == Rational(pow_z(2, m), 2) - Rational(2));
    for (int m = 6; m <= 12; m += 2)
        CHECK(cmk(m, 3) == Rational(pow_z(3, m), 4) - Rational(3) * Rational(pow_z(2, m), 2) +
                               Rational(15, 4));

    // The alternating formula extends by zero beyond k = m/2.
    CHECK(cmk(2, 2) == Rational(0));
    CHECK(cmk(4, 3) == Rational(0));
    CHECK(cmk_multinomial(4, 3) == Rational(0));

    CHECK_THROWS_AS(cmk(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(cmk(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(cmk(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(cmk_multinomial(5, 1), std::invalid_argument);
}

TEST_CASE("central factorial rows and numbers") {
    CentralFactorialRow row = central_factorial_row(10);
    CHECK(row.m == 10);
    CHECK(row.values.size() == 5);
    CHECK(row.values[0] == Rational(1));
    for (int k = 1; k <= 5; ++k) CHECK(row.values[k - 1] == cmk_multinomial(10, k));

    // t_{mu,k} = 2^k c_{2mu,k}/(2k)! reproduces the triangle
    // (1), (1,1), (1,5,1), (1,21,14,1), (1,85,147,30,1), (1,341,1408,627,55,1).
    using V = std::vector<Rational>;
    auto R = [](std::initializer_list<long> v) {
        V out;
        for (long x : v) out.push_back(Rational(x));
        return out;
    };
    CHECK(central_factorial_numbers(1) == R({1}));
    CHECK(central_factorial_numbers(2) == R({1, 1}));
    CHECK(central_factorial_numbers(3) == R({1, 5, 1}));
    CHECK(central_factorial_numbers(4) == R({1, 21, 14, 1}));
    CHECK(central_factorial_numbers(5) == R({1, 85, 147, 30, 1}));
    CHECK(central_factorial_numbers(6) == R({1, 341, 1408, 627, 55, 1}));
    for (int mu = 1; mu <= 8; ++mu) {
        V t = central_factorial_numbers(mu);
        for (const Rational& v : t) CHECK(v.is_integer());
        CHECK(t.front() == Rational(1));
        CHECK(t.back() == Rational(1));
    }
    CHECK_THROWS_AS(central_factorial_numbers(0), std::invalid_argument);
}

TEST_CASE("central factorial identity") {
    // sum_k 2^k/(2k)! c_{m,k} p_{2k-2}(x) = x^{m-2}, exactly, for m = 2..16.
    for (int m = 2; m <= 16; m += 2) {
        CAPTURE(m);
        IdentityWitness w = central_identity_check(m);
        CHECK_MESSAGE(w.ok, w.detail);
    }

    // m = 4 by hand: 1 + 1*(x^2 - 1) = x^2, using 2^2 c_{4,2}/4! = 1.
    CHECK(Rational(pow_z(2, 2), factorial_z(4)) * cmk(4, 2) == Rational(1));

    CHECK_THROWS_AS(central_identity_check(3), std::invalid_argument);
    CHECK_THROWS_AS(central_identity_check(0), std::invalid_argument);
}

TEST_CASE("wheel minors: closed form vs literal determinants") {
    // Exhaustive over |I| = |J| <= 2 for n = 3..7, plus the full |I| = 3
    // split at n = 7 (I and a disjoint J of size 3 exhaust the 6 rim pairs).
    for (int n = 3; n <= 7; ++n) {
        CAPTURE(n);
        WheelData w = wheel(n);
        PolyMatrix lap = laplacian(w.graph, w.basis).mat;
        for (int p = 1; p <= 2; ++p) {
            if (2 * p > n - 1) continue;
            auto subsets = rim_pair_subsets(n, p);
            for (const PairSet& I : subsets)
                for (const PairSet& J : subsets) {
                    if (!pairs_disjoint(I, J)) continue;
                    check_minor_pair(lap, n, I, J);
                }
        }
        if (n == 7) {
            auto subsets = rim_pair_subsets(7, 3);
            for (const PairSet& I : subsets)
                for (const PairSet& J : subsets) {
                    if (!pairs_disjoint(I, J)) continue;
                    check_minor_pair(lap, 7, I, J);
                }
        }
    }

    // Randomized larger case: n = 9, |I| = |J| in {2, 3, 4}.
    {
        WheelData w = wheel(9);
        PolyMatrix lap = laplacian(w.graph, w.basis).mat;
        std::mt19937_64 rng(20260814);
        for (int trial = 0; trial < 12; ++trial) {
            int p = 2 + static_cast<int>(trial % 3);
            std::vector<int> firsts{1, 2, 3, 4, 5, 6, 7, 8};
            std::shuffle(firsts.begin(), firsts.end(), rng);
            PairSet I, J;
            for (int a = 0; a < p; ++a) I.push_back({firsts[a], firsts[a] + 1});
            for (int a = p; a < 2 * p; ++a) J.push_back({firsts[a], firsts[a] + 1});
            check_minor_pair(lap, 9, I, J);
        }
    }
}

TEST_CASE("wheel minors: worked cases and validation") {
    WheelData w = wheel(5);
    PolyMatrix lap = laplacian(w.graph, w.basis).mat;

    // det L^{12,23} * det L^{34,45} = x6 x7 x8 x9 on the chart x10 = 1.
    MultiPoly prod = wheel_minor(5, {{1, 2}}, {{2, 3}}) * wheel_minor(5, {{3, 4}}, {{4, 5}});
    MultiPoly expect = MultiPoly::parse("x6*x7*x8*x9*x10^2");
    CHECK(prod == expect);
    CHECK(prod.subst("x10", Rational(1)) == MultiPoly::parse("x6*x7*x8*x9"));

    // All three interlaced splits of {1,2,3,4} give the same product.
    CHECK(wheel_minor(5, {{1, 2}, {3, 4}}, {{2, 3}, {4, 5}}) ==
          poly_det(lap.minor_deleting({1, 2, 3, 4}, {2, 3, 4, 5})));
    CHECK(wheel_minor(5, {{1, 2}, {3, 4}}, {{2, 3}, {4, 5}}) == -MultiPoly::var("x10"));
    CHECK(wheel_minor(5, {{1, 2}}, {{2, 3}}) * wheel_minor(5, {{3, 4}}, {{4, 5}}) ==
          wheel_minor(5, {{1, 2}}, {{3, 4}}) * wheel_minor(5, {{2, 3}}, {{4, 5}}));
    CHECK(wheel_minor(5, {{1, 2}}, {{4, 5}}) * wheel_minor(5, {{2, 3}}, {{3, 4}}) ==
          MultiPoly::parse("x6*x7*x8*x9*x10^2"));

    // Repeated index inside one flattening: excluded, gives zero.
    CHECK(wheel_minor(5, {{1, 2}, {2, 3}}, {{3, 4}, {4, 5}}).is_zero());

    // Non-interlaced but repeat-free: zero, and the literal minor agrees.
    MultiPoly ni = wheel_minor(7, {{1, 2}, {3, 4}}, {{5, 6}, {6, 7}});
    CHECK(ni.is_zero());

    // Order of I and J does not matter (the Laplacian is symmetric).
    CHECK(wheel_minor(5, {{2, 3}}, {{1, 2}}) == wheel_minor(5, {{1, 2}}, {{2, 3}}));

    CHECK_THROWS_AS(wheel_minor(5, {{1, 3}}, {{2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(wheel_minor(5, {{1, 2}}, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(wheel_minor(5, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(wheel_minor(5, {{1, 2}, {3, 4}}, {{2, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(wheel_minor(5, {{5, 6}}, {{1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(wheel_minor(2, {{1, 2}}, {{1, 2}}), std::invalid_argument);
}

TEST_CASE("wheel block determinants reproduce the counting formula") {
    // Q_k(Lambda_Wn(T), E) = (-1)^k c_{m,k}/k! S(x)^{k-1} x_{2n} with
    // E = {(1,2),...,(n-1,n)}, computed through the generic Q_k machinery.
    for (int n : {3, 5, 7}) {
        CAPTURE(n);
        WheelData w = wheel(n);
        PolyMatrix lap = laplacian(w.graph, w.basis).mat;
        PairSet E;
        for (int i = 1; i <= n - 1; ++i) E.push_back({i, i + 1});
        int m = n - 1;
        MultiPoly S = spoke_product(n, false);
        for (int k = 1; k <= m / 2; ++k) {
            CAPTURE(k);
            Rational c = cmk(m, k) / Rational(factorial_z(k)) * Rational(k % 2 ? -1 : 1);
            MultiPoly expect = MultiPoly::var("x" + std::to_string(2 * n)) * S.pow(k - 1) * c;
            CHECK(qk_poly(lap, E, k) == expect);
        }
    }
}

TEST_CASE("wheel integrand coefficients") {
    auto coeffs = [](int n) {
        std::vector<Rational> out;
        for (const auto& t : wheel_integrand(n)) out.push_back(t.coeff);
        return out;
    };
    CHECK(coeffs(3) == std::vector<Rational>{Rational(-10)});
    CHECK(coeffs(5) == std::vector<Rational>{Rational(18), Rational(216)});
    CHECK(coeffs(7) ==
          std::vector<Rational>{Rational(-26), Rational(-1560), Rational(-9360)});
    CHECK(coeffs(7) == std::vector<Rational>{Rational(-26) * Rational(1),
                                             Rational(-26) * Rational(60),
                                             Rational(-26) * Rational(360)});

    // Sign-definiteness: every coefficient carries the sign (-1)^{m/2}.
    for (int n = 3; n <= 11; n += 2) {
        int expect_sign = ((n - 1) / 2) % 2 == 0 ? 1 : -1;
        auto terms = wheel_integrand(n);
        CHECK(terms.size() == static_cast<size_t>((n - 1) / 2));
        for (size_t i = 0; i < terms.size(); ++i) {
            CHECK(terms[i].k == static_cast<int>(i) + 1);
            CHECK(terms[i].coeff.sign() == expect_sign);
        }
    }

    CHECK_THROWS_AS(wheel_integrand(4), std::invalid_argument);
    CHECK_THROWS_AS(wheel_integrand(1), std::invalid_argument);
}

TEST_CASE("wheel integrand matches the generic closed-form pipeline") {
    // Fully symbolic for n = 3, 5, 7: the graph pipeline's numerators are
    // exactly coeff_k * S(x)^{k-1} restricted to the chart x_{2n} = 1.
    for (int n : {3, 5, 7}) {
        CAPTURE(n);
        WheelData w = wheel(n);
        GraphCanonicalForm cf = canonical_form_graph(w.graph, w.spokes, 2 * n);
        auto terms = wheel_integrand(n);
        REQUIRE(cf.numerators.size() == terms.size());
        MultiPoly S_chart = spoke_product(n, true);
        for (size_t i = 0; i < terms.size(); ++i) {
            CHECK(cf.numerators[i].first == terms[i].k);
            CHECK(cf.numerators[i].second ==
                  MultiPoly(terms[i].coeff) * S_chart.pow(terms[i].k - 1));
        }
    }

    // n = 7 again at random positive rational points.
    {
        WheelData w = wheel(7);
        GraphCanonicalForm cf = canonical_form_graph(w.graph, w.spokes, 14);
        auto terms = wheel_integrand(7);
        std::mt19937_64 rng(777);
        std::uniform_int_distribution<long> num(1, 12), den(1, 7);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<Rational> x;
            for (int e = 1; e <= 14; ++e) x.push_back(Rational(num(rng), den(rng)));
            x[13] = Rational(1);
            Rational S1;
            {
                Rational s(1);
                for (int r = 1; r <= 6; ++r) s *= x[7 + r - 1];
                S1 = s;
            }
            for (size_t i = 0; i < terms.size(); ++i) {
                Rational lhs = eval_poly(cf.numerators[i].second, x);
                Rational rhs = terms[i].coeff * pow_q(S1, terms[i].k - 1);
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("weighted wheel periods as exact zeta combinations") {
    CHECK(weighted_period_zeta(3, 1) == ZetaCombo::zeta(3, Rational(6)));
    CHECK(weighted_period_zeta(5, 1) == ZetaCombo::zeta(7, Rational(70)));
    CHECK(weighted_period_zeta(4, 1) == ZetaCombo::zeta(5, Rational(20)));

    // n=5, k=2: C(8,4)/3! * sum_r (r^2-1)/r^7 = 35/3 (zeta(5) - zeta(7)).
    ZetaCombo p52 = weighted_period_zeta(5, 2);
    CHECK(p52.coeff(5) == Rational(35, 3));
    CHECK(p52.coeff(7) == Rational(-35, 3));
    CHECK(p52.constant() == Rational(0));
    CHECK(p52.terms().size() == 2);
    CHECK(p52.str() == "35/3*zeta(5) - 35/3*zeta(7)");

    // Every zeta argument stays odd and >= 3 across the allowed range.
    for (int n = 3; n <= 13; ++n)
        for (int k = 1; k <= n - 2; ++k) {
            ZetaCombo p = weighted_period_zeta(n, k);
            CHECK(p.constant() == Rational(0));
            for (const auto& [s, c] : p.terms()) {
                CHECK(s >= 3);
                CHECK(s % 2 == 1);
                CHECK_FALSE(c.is_zero());
            }
        }

    CHECK_THROWS_AS(weighted_period_zeta(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(weighted_period_zeta(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(weighted_period_zeta(2, 1), std::invalid_argument);
}

TEST_CASE("exact canonical wheel integrals") {
    CHECK(wheel_integral_exact(3) == ZetaCombo::zeta(3, Rational(60)));
    CHECK(wheel_integral_exact(5) == ZetaCombo::zeta(5, Rational(1260)));
    CHECK(wheel_integral_exact(7) == ZetaCombo::zeta(7, Rational(24024)));
    CHECK(wheel_integral_exact(9) == ZetaCombo::zeta(9, Rational(437580)));
    CHECK(wheel_integral_exact(3).str() == "60/1*zeta(3)");
    CHECK(wheel_integral_exact(5).str() == "1260/1*zeta(5)");

    for (int n = 3; n <= 13; n += 2) {
        CAPTURE(n);
        ZetaCombo I = wheel_integral_exact(n);
        CHECK(I.is_single_zeta());
        CHECK(I.coeff(n) == Rational(n) * Rational(binomial_z(2 * n, n)));
    }

    CHECK_THROWS_AS(wheel_integral_exact(4), std::invalid_argument);
    CHECK_THROWS_AS(wheel_integral_exact(2), std::invalid_argument);
}

TEST_CASE("unweighted wheel residues") {
    CHECK(feynman_residue_zeta(3) == ZetaCombo::zeta(3, Rational(6)));
    CHECK(feynman_residue_zeta(4) == ZetaCombo::zeta(5, Rational(20)));
    CHECK(feynman_residue_zeta(5) == ZetaCombo::zeta(7, Rational(70)));

    // 10 x the W_3 residue is the canonical W_3 integral.
    CHECK(feynman_residue_zeta(3) * Rational(10) == wheel_integral_exact(3));

    // The residue coincides with the k = 1 weighted period for every n.
    for (int n = 3; n <= 10; ++n)
        CHECK(feynman_residue_zeta(n) == weighted_period_zeta(n, 1));

    CHECK_THROWS_AS(feynman_residue_zeta(2), std::invalid_argument);
}
