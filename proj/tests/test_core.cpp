#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "canform/polymatrix.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <set>

using namespace canform;

TEST_CASE("rational arithmetic and canonical form") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(7).str() == "7");
    CHECK(Rational::from_string("-22/11") == Rational(-2));
    CHECK(Rational(5, 7).reciprocal() == Rational(7, 5));
    CHECK_THROWS(Rational(1, 2) / Rational(0));
    CHECK(factorial_z(6) == 720);
    CHECK(binomial_z(10, 5) == 252);
    CHECK(pow_q(Rational(2, 3), -2) == Rational(9, 4));
}

TEST_CASE("poly_arith examples") {
    MultiPoly x1 = MultiPoly::var("x1");
    MultiPoly x2 = MultiPoly::var("x2");
    CHECK((x1 + x2) + (-x2) == x1);
    CHECK((x1 + x2) * (x1 - x2) == x1 * x1 - x2 * x2);

    // canonicalization is idempotent through text round trip
    std::string s = "b12*b23 + b13*b22";
    MultiPoly p = MultiPoly::parse(s);
    CHECK(p.str() == s);
    CHECK(MultiPoly::parse(p.str()) == p);
}

TEST_CASE("canonical text form, graded-lex descending") {
    MultiPoly x1 = MultiPoly::var("x1");
    MultiPoly x2 = MultiPoly::var("x2");
    MultiPoly p = (x1 + x2) * (x1 + x2);
    CHECK(p.str() == "x1^2 + 2*x1*x2 + x2^2");
    CHECK((x1 * x1 + x2).str() == "x1^2 + x2");
    CHECK((MultiPoly(1) - x1).str() == "-x1 + 1");
    CHECK((-(x1 * x1)).str() == "-x1^2");
    CHECK(MultiPoly().str() == "0");
    CHECK(MultiPoly::parse("0").is_zero());
    // numeric-aware variable order: x2 before x10
    MultiPoly q = MultiPoly::var("x10") + MultiPoly::var("x2");
    CHECK(q.str() == "x2 + x10");
    // coefficient display
    MultiPoly r = MultiPoly::parse("-3/2*x1^2 + x1 - 5");
    CHECK(r.str() == "-3/2*x1^2 + x1 - 5");
    CHECK(MultiPoly::parse(r.str()) == r);
}

TEST_CASE("poly round trip randomized") {
    std::mt19937_64 rng(12345);
    VarTablePtr t = make_var_table({"x1", "x2", "y3", "b11"});
    for (int it = 0; it < 200; ++it) {
        MultiPoly p = testutil::random_poly(t, 6, 4, rng);
        CHECK(MultiPoly::parse(p.str(), t) == p);
    }
}

TEST_CASE("poly mul commutative and associative randomized") {
    std::mt19937_64 rng(777);
    VarTablePtr t = make_var_table({"x1", "x2", "x3"});
    for (int it = 0; it < 50; ++it) {
        MultiPoly a = testutil::random_poly(t, 4, 3, rng);
        MultiPoly b = testutil::random_poly(t, 4, 3, rng);
        MultiPoly c = testutil::random_poly(t, 4, 3, rng);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("merged variable tables") {
    MultiPoly p = MultiPoly::var("x1") * MultiPoly::var("b11");
    CHECK(p.vars() == VarTable{"b11", "x1"});
    MultiPoly q = MultiPoly::parse("b11*x1");
    CHECK(p == q);
}

TEST_CASE("substitution and evaluation") {
    MultiPoly p = MultiPoly::parse("x1^2*x2 + 3*x2 - 1");
    MultiPoly sub = p.subst("x1", Rational(2));
    CHECK(sub == MultiPoly::parse("7*x2 - 1"));
    VarTablePtr t = p.vars_ptr();
    CHECK(p.eval({Rational(2), Rational(1, 2)}) == Rational(2) + Rational(3, 2) - Rational(1));
}

TEST_CASE("exact division") {
    MultiPoly a = MultiPoly::parse("x1^2 - x2^2");
    MultiPoly b = MultiPoly::parse("x1 - x2");
    CHECK(a.exact_div(b) == MultiPoly::parse("x1 + x2"));
    CHECK_THROWS_AS(MultiPoly::parse("x1^2 + x2").exact_div(b), std::domain_error);
    std::mt19937_64 rng(99);
    VarTablePtr t = make_var_table({"x1", "x2", "x3"});
    for (int it = 0; it < 30; ++it) {
        MultiPoly u = testutil::random_poly(t, 4, 3, rng);
        MultiPoly v = testutil::random_poly(t, 4, 3, rng);
        if (v.is_zero()) continue;
        CHECK((u * v).exact_div(v) == u);
    }
}

TEST_CASE("poly_det examples") {
    // 1x1
    PolyMatrix one(1, 1);
    one.at(0, 0) = MultiPoly::parse("p1");
    CHECK(poly_det(one) == MultiPoly::parse("p1"));

    // det B_{12,23} for symmetric generic B
    PolyMatrix B = PolyMatrix::generic_symmetric(3, "b");
    PolyMatrix m = B.submatrix({1, 2}, {2, 3});
    CHECK(poly_det(m) == MultiPoly::parse("b12*b23 - b13*b22"));
    CHECK(poly_det(m, DetMethod::fraction_free) == MultiPoly::parse("b12*b23 - b13*b22"));

    CHECK_THROWS(poly_det(PolyMatrix(2, 3)));
}

TEST_CASE("det of wheel-3 Laplacian matrix has 16 spanning-tree monomials") {
    // the 3x3 matrix of linear forms for the wheel with 3 spokes
    PolyMatrix L(3, 3);
    L.at(0, 0) = MultiPoly::parse("x1 + x4 + x6");
    L.at(1, 1) = MultiPoly::parse("x2 + x4 + x5");
    L.at(2, 2) = MultiPoly::parse("x3 + x5 + x6");
    L.at(0, 1) = L.at(1, 0) = -MultiPoly::var("x4");
    L.at(1, 2) = L.at(2, 1) = -MultiPoly::var("x5");
    L.at(0, 2) = L.at(2, 0) = -MultiPoly::var("x6");
    MultiPoly psi = poly_det(L);

    CHECK(psi.term_count() == 16);
    for (const auto& [e, c] : psi.terms()) {
        CHECK(c == Rational(1));
        uint32_t deg = 0;
        for (uint32_t x : e) {
            CHECK(x <= 1);
            deg += x;
        }
        CHECK(deg == 3);
    }

    // matrix-tree oracle: brute-force spanning trees of the wheel on vertices
    // {0=hub,1,2,3}. Spoke 3+i attaches at the vertex shared by rim edges i, i+1.
    std::vector<std::pair<int, int>> edges = {{1, 2}, {2, 3}, {3, 1}, {2, 0}, {3, 0}, {1, 0}};
    std::set<MultiPoly::Exps> expected;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            for (int c = b + 1; c < 6; ++c) {
                // union-find over 4 vertices
                std::vector<int> parent = {0, 1, 2, 3};
                auto find = [&](int v) {
                    while (parent[v] != v) v = parent[v] = parent[parent[v]];
                    return v;
                };
                int merges = 0;
                for (int e : {a, b, c}) {
                    int u = find(edges[e].first), w = find(edges[e].second);
                    if (u != w) {
                        parent[u] = w;
                        ++merges;
                    }
                }
                if (merges == 3) {
                    // complement of tree: monomial over x1..x6
                    MultiPoly::Exps e(6, 1);
                    e[a] = e[b] = e[c] = 0;
                    expected.insert(e);
                }
            }
    CHECK(expected.size() == 16);
    std::set<MultiPoly::Exps> got;
    for (const auto& [e, c] : psi.terms()) got.insert(e);
    CHECK(got == expected);
}

TEST_CASE("cofactor and fraction-free determinants agree on random matrices") {
    std::mt19937_64 rng(4242);
    for (int n = 1; n <= 6; ++n)
        for (int it = 0; it < 10; ++it) {
            PolyMatrix M = testutil::random_int_matrix(n, rng);
            CHECK(poly_det(M, DetMethod::cofactor) == poly_det(M, DetMethod::fraction_free));
        }
    // also on a symbolic matrix with polynomial entries
    VarTablePtr t = make_var_table({"x1", "x2"});
    for (int it = 0; it < 5; ++it) {
        PolyMatrix M(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M.at(i, j) = testutil::random_poly(t, 2, 2, rng);
        CHECK(poly_det(M, DetMethod::cofactor) == poly_det(M, DetMethod::fraction_free));
    }
}

TEST_CASE("det and perm match permutation sums up to n = 4") {
    std::mt19937_64 rng(31415);
    for (int n = 1; n <= 4; ++n)
        for (int it = 0; it < 8; ++it) {
            PolyMatrix M = testutil::random_int_matrix(n, rng, -4, 4);
            CHECK(poly_det(M) == poly_det_permsum(M));
            CHECK(poly_perm(M) == poly_perm_permsum(M));
        }
}

TEST_CASE("poly_perm examples") {
    PolyMatrix B = PolyMatrix::generic_symmetric(3, "b");
    CHECK(poly_perm(B.submatrix({1, 2}, {2, 3})) == MultiPoly::parse("b12*b23 + b13*b22"));
    CHECK(poly_perm(B.submatrix({2, 2}, {2, 3})) == MultiPoly::parse("2*b22*b23"));

    for (int n = 1; n <= 6; ++n) {
        PolyMatrix ones(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ones.at(i, j) = MultiPoly(1);
        CHECK(poly_perm(ones) == MultiPoly(Rational(factorial_z(n))));
    }
    CHECK_THROWS(poly_perm(PolyMatrix(2, 3)));
}

TEST_CASE("ryser agrees with permutation sum at the switch point and above") {
    std::mt19937_64 rng(2718);
    for (int n = 5; n <= 6; ++n)
        for (int it = 0; it < 4; ++it) {
            PolyMatrix M = testutil::random_int_matrix(n, rng, -3, 3);
            CHECK(poly_perm(M) == poly_perm_permsum(M));
        }
}

TEST_CASE("rational matrix inverse and det") {
    std::mt19937_64 rng(5150);
    for (int it = 0; it < 20; ++it) {
        RatMatrix A = testutil::random_rat_matrix(4, rng);
        if (A.det().is_zero()) continue;
        CHECK(A * A.inverse() == RatMatrix::identity(4));
    }
    // det consistency against the polynomial path
    for (int it = 0; it < 10; ++it) {
        PolyMatrix M = testutil::random_int_matrix(5, rng, -6, 6);
        RatMatrix R(5, 5);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) R.at(i, j) = M.at(i, j).constant_value();
        CHECK(MultiPoly(R.det()) == poly_det(M));
    }
}
