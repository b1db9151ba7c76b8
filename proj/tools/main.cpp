// canform: command-line interface for the exact symbolic-numeric toolkit.
//
// Subcommands: laplacian, integrand, wheel, verify, amitsur, mc, zeta-table.
// Every subcommand runs a set of named internal checks; the exit code is
//   0  all checks passed
//   1  at least one check failed (an identity did not hold)
//   2  usage error (bad flags, unknown graph file, invalid arguments)
// `--output json` emits {command, inputs, result, assertions, timing_ms}.
//
// Monte-Carlo normalization convention (mc subcommand): the projective
// integral of a degree-zero integrand such as Omega_{2n}/Psi^2 restricted
// to {sum x = 1} equals the Lebesgue integral of 1/Psi^2 there; samples are
// drawn uniformly as normalized exponentials, so the estimate is
// mean(f)/(E-1)!.  Thread count: CANFORM_THREADS (symbolic subcommands run
// single-threaded unless --parallel or CANFORM_THREADS is given).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "canform/antisym.hpp"
#include "canform/extform.hpp"
#include "canform/graph.hpp"
#include "canform/identities.hpp"
#include "canform/numeric.hpp"
#include "canform/poly.hpp"
#include "canform/polymatrix.hpp"
#include "canform/typenu.hpp"
#include "canform/wheel.hpp"

using namespace canform;
using json = nlohmann::ordered_json;

namespace {

struct Report {
    std::string command;
    json inputs = json::object();
    json result = json::object();
    std::vector<std::pair<std::string, bool>> checks;
    std::vector<std::string> lines;

    void check(const std::string& name, bool pass) { checks.emplace_back(name, pass); }
    void line(const std::string& text) { lines.push_back(text); }
};

int finish(Report& report, bool json_output,
           std::chrono::steady_clock::time_point start) {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    bool all_pass = true;
    for (const auto& [name, pass] : report.checks) all_pass = all_pass && pass;
    if (json_output) {
        json doc;
        doc["command"] = report.command;
        doc["inputs"] = report.inputs;
        doc["result"] = report.result;
        doc["assertions"] = json::array();
        for (const auto& [name, pass] : report.checks)
            doc["assertions"].push_back({{"name", name}, {"pass", pass}});
        doc["timing_ms"] = ms;
        std::printf("%s\n", doc.dump(2).c_str());
    } else {
        for (const std::string& text : report.lines) std::printf("%s\n", text.c_str());
        if (all_pass) {
            std::printf("ok (%zu checks, %.1f ms)\n", report.checks.size(), ms);
        } else {
            std::string failed;
            for (const auto& [name, pass] : report.checks)
                if (!pass) failed += (failed.empty() ? "" : ", ") + name;
            std::printf("FAIL: %s (%.1f ms)\n", failed.c_str(), ms);
        }
    }
    return all_pass ? 0 : 1;
}

// Evaluate a polynomial in the edge variables x1..xE at a point indexed by
// edge number (tables may mention only a subset of the edges).
Rational eval_edge_poly(const MultiPoly& f, const std::vector<Rational>& x) {
    std::vector<Rational> vals;
    for (const std::string& name : f.vars()) {
        size_t e = std::stoul(name.substr(1));
        vals.push_back(x.at(e - 1));
    }
    return f.eval(vals);
}

std::vector<Rational> parse_point(const std::string& text) {
    std::vector<Rational> point;
    std::string item;
    for (std::istringstream in(text); std::getline(in, item, ',');)
        point.push_back(Rational::from_string(item));
    return point;
}

std::vector<Rational> random_positive_point(int edges, std::mt19937_64& rng) {
    std::vector<Rational> x;
    for (int e = 0; e < edges; ++e)
        x.emplace_back(1 + static_cast<int>(rng() % 11),
                       1 + static_cast<int>(rng() % 3));
    return x;
}

PolyMatrix random_int_matrix(int n, std::mt19937_64& rng) {
    PolyMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            B.at(i, j) = MultiPoly(Rational(static_cast<int>(rng() % 9) - 4));
    return B;
}

PolyMatrix random_symmetric_int_matrix(int n, std::mt19937_64& rng) {
    PolyMatrix B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            MultiPoly v{Rational(static_cast<int>(rng() % 9) - 4)};
            B.at(i, j) = v;
            B.at(j, i) = v;
        }
    return B;
}

// Upsilon_nu over the w-generators with the symmetric placement w_ij = w_ji.
FormMatrix symmetric_upsilon(const TypeNu& nu, GenTablePtr t) {
    const int n = nu.rank();
    FormMatrix U(n, n, t);
    for (const auto& [i, j] : nu.pairs()) {
        ExtForm g = ExtForm::generator((i - 1) * n + (j - 1), t);
        U.at(i - 1, j - 1) = g;
        U.at(j - 1, i - 1) = g;
    }
    return U;
}

json matrix_json(const PolyMatrix& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M.at(i, j).str());
        rows.push_back(row);
    }
    return rows;
}

std::string point_str(const std::vector<Rational>& x) {
    std::string out;
    for (size_t i = 0; i < x.size(); ++i)
        out += (i ? "," : "") + x[i].str();
    return out;
}

// ------------------------------------------------------------ laplacian ----

int run_laplacian(const std::string& graph_spec, int chart, bool json_output,
                  std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "laplacian";
    report.inputs = {{"graph", graph_spec}, {"chart", chart}};

    GraphSource src = load_graph_source(graph_spec);
    CycleBasis basis = cycle_basis_from_tree(src.graph, src.tree);
    LaplacianMatrix L = laplacian(src.graph, basis);
    MultiPoly psi = graph_polynomial(src.graph, basis);
    auto trees = spanning_trees(src.graph);
    PolyMatrix shown = chart > 0 ? L.chart(chart, Rational(1)) : L.mat;

    const int n = src.graph.loop_number();
    report.line("Lambda_G for " + graph_spec + " (loop number " + std::to_string(n) +
                ", " + std::to_string(src.graph.edge_count()) + " edges" +
                (chart > 0 ? ", chart x" + std::to_string(chart) + " = 1" : "") + "):");
    for (int i = 0; i < shown.rows(); ++i) {
        std::string row = "  [ ";
        for (int j = 0; j < shown.cols(); ++j)
            row += shown.at(i, j).str() + (j + 1 < shown.cols() ? " | " : "");
        report.line(row + " ]");
    }
    report.line("Psi = det Lambda = " + psi.str());
    report.line("spanning trees: " + std::to_string(trees.size()));

    report.check("det-equals-matrix-tree", poly_det(L.mat) == matrix_tree_polynomial(src.graph));
    report.check("one-psi-term-per-spanning-tree", psi.term_count() == trees.size());

    report.result = {{"loop_number", n},
                     {"edges", src.graph.edge_count()},
                     {"matrix", matrix_json(shown)},
                     {"psi", psi.str()},
                     {"spanning_trees", trees.size()}};
    return finish(report, json_output, start);
}

// ------------------------------------------------------------ integrand ----

int run_integrand(const std::string& graph_spec, int chart, const std::string& mode,
                  const std::string& point_text, std::uint64_t seed, bool json_output,
                  std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "integrand";

    GraphSource src = load_graph_source(graph_spec);
    if (chart <= 0) chart = src.tree.back();
    report.inputs = {{"graph", graph_spec}, {"chart", chart}, {"mode", mode}};

    GraphCanonicalForm cf = canonical_form_graph(src.graph, src.tree, chart);
    report.result = {{"loop_number", cf.n}, {"chart", cf.chart}, {"text", cf.text},
                     {"psi", cf.psi.str()}};

    if (mode == "closed") {
        report.line(cf.text);
        report.line("Psi = " + cf.psi.str());
        json numerators = json::array();
        for (const auto& [k, N] : cf.numerators) {
            report.line("  N_" + std::to_string(k) + " (over Psi^" +
                        std::to_string(k + 1) + ") = " + N.str());
            numerators.push_back({{"k", k}, {"numerator", N.str()}});
        }
        report.result["numerators"] = numerators;
        report.check("chart-psi-matches-matrix-tree",
                     cf.psi == matrix_tree_polynomial(src.graph)
                                   .subst("x" + std::to_string(chart), Rational(1)));
        return finish(report, json_output, start);
    }

    // direct-at-point: exterior-algebra oracle against the closed form.
    std::vector<Rational> x;
    if (!point_text.empty()) {
        x = parse_point(point_text);
        if (static_cast<int>(x.size()) != src.graph.edge_count())
            throw std::invalid_argument("--point needs one value per edge (" +
                                        std::to_string(src.graph.edge_count()) + ")");
    } else {
        std::mt19937_64 rng(seed);
        x = random_positive_point(src.graph.edge_count(), rng);
    }
    x[chart - 1] = Rational(1);
    report.inputs["point"] = point_str(x);

    ExtForm direct = canonical_form_direct_at_point(src.graph, src.tree, chart, x);
    std::uint64_t mask = 0;
    for (int e = 1; e <= src.graph.edge_count(); ++e)
        if (e != chart) mask |= std::uint64_t{1} << (e - 1);
    bool top_cell = direct.terms().size() <= 1;
    Rational got;
    for (const auto& [mk, c] : direct.terms()) {
        top_cell = top_cell && mk == mask;
        got = c.constant_value();
    }
    Rational psi_at = eval_edge_poly(cf.psi, x);
    Rational expect;
    for (const auto& [k, N] : cf.numerators) {
        Rational denom(1);
        for (int i = 0; i <= k; ++i) denom = denom * psi_at;
        expect = expect + eval_edge_poly(N, x) / denom;
    }
    report.line("point: (" + point_str(x) + ")");
    report.line("direct tr((Lambda^-1 dLambda)^" + std::to_string(2 * cf.n - 1) +
                ") top-cell coefficient = " + got.str());
    report.line("closed form " + cf.text + " evaluates to " + expect.str());
    report.check("direct-is-top-cell", top_cell);
    report.check("closed-equals-direct-at-point", got == expect);
    report.result["direct_value"] = got.str();
    report.result["closed_value"] = expect.str();
    return finish(report, json_output, start);
}

// ---------------------------------------------------------------- wheel ----

int run_wheel(int n, const std::string& mode, bool json_output,
              std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "wheel";
    report.inputs = {{"n", n}, {"mode", mode}};
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument(
            "wheel: odd n >= 3 required (the canonical form of an even wheel "
            "vanishes)");

    if (mode == "exact") {
        ZetaCombo value = wheel_integral_exact(n);
        report.line(value.str());
        Rational coefficient = Rational(n) * Rational(binomial_z(2 * n, n));
        report.check("single-zeta-value", value.is_single_zeta());
        report.check("coefficient-is-n-binomial-2n-n", value.coeff(n) == coefficient);
        ZetaCombo residue = feynman_residue_zeta(n);
        report.line("residue (weight-1 period) = " + residue.str());
        report.result = {{"n", n}, {"integral", value.str()},
                         {"coefficient", coefficient.str()}, {"zeta_argument", n},
                         {"residue", residue.str()}};
        return finish(report, json_output, start);
    }

    if (mode == "integrand") {
        std::vector<WheelIntegrandTerm> terms = wheel_integrand(n);
        report.line("omega^" + std::to_string(2 * n - 1) + " on the chart x" +
                    std::to_string(2 * n) + " = 1, with S = x" + std::to_string(n + 1) +
                    "*...*x" + std::to_string(2 * n - 1) + ":");
        json rows = json::array();
        bool uniform_sign = true;
        for (const auto& term : terms) {
            report.line("  (" + term.coeff.str() + ") * S^" + std::to_string(term.k - 1) +
                        " / Psi^" + std::to_string(term.k + 1));
            rows.push_back({{"k", term.k}, {"coefficient", term.coeff.str()}});
            uniform_sign = uniform_sign && (term.coeff.sign() ==
                                            terms.front().coeff.sign());
        }
        report.check("coefficients-share-one-sign", uniform_sign);
        report.check("k-bounded-by-half-m",
                     terms.empty() || 2 * terms.back().k <= n - 1);
        report.result = {{"n", n}, {"terms", rows}};
        return finish(report, json_output, start);
    }

    // coeffs: the even-block partition counts c_{m,k} for m = n-1.
    const int m = n - 1;
    if (m < 2 || m % 2 != 0)
        throw std::invalid_argument("wheel --mode coeffs needs odd n >= 3 (m = n-1 even)");
    report.line("even-block ordered partition counts c_{" + std::to_string(m) + ",k}:");
    json rows = json::array();
    bool agree = true;
    for (int k = 1; 2 * k <= m; ++k) {
        Rational direct = cmk(m, k);
        agree = agree && direct == cmk_multinomial(m, k);
        report.line("  c_{" + std::to_string(m) + "," + std::to_string(k) +
                    "} = " + direct.str());
        rows.push_back({{"k", k}, {"value", direct.str()}});
    }
    std::string scaled = "central-factorial row (2^k c/(2k)!):";
    json row_json = json::array();
    for (const Rational& v : central_factorial_numbers(m / 2)) {
        scaled += " " + v.str();
        row_json.push_back(v.str());
    }
    report.line(scaled);
    report.check("alternating-sum-equals-composition-count", agree);
    report.result = {{"m", m}, {"coefficients", rows}, {"central_factorial_row", row_json}};
    return finish(report, json_output, start);
}

// --------------------------------------------------------------- verify ----

struct SuiteCount {
    int instances = 0;
    int failures = 0;
    void tally(bool ok) {
        ++instances;
        if (!ok) ++failures;
    }
};

SuiteCount verify_thm1(int n, int trials, std::uint64_t seed) {
    SuiteCount count;
    if (n <= 3) {
        PolyMatrix B = PolyMatrix::generic(n, "b");
        for (const TypeNu& nu : enumerate_types(n)) count.tally(theorem1_check(nu, B).ok);
        return count;
    }
    std::mt19937_64 rng(seed);
    std::vector<TypeNu> types = enumerate_types(n);
    for (int t = 0; t < trials; ++t) {
        const TypeNu& nu = types[rng() % types.size()];
        count.tally(theorem1_check(nu, random_int_matrix(n, rng)).ok);
    }
    return count;
}

SuiteCount verify_perm_sigma(int trials, std::uint64_t seed) {
    SuiteCount count;
    std::mt19937_64 rng(seed);
    auto suite = [&count](const PolyMatrix& B, int m) {
        std::vector<int> S, T;
        PairSet E;
        for (int i = 1; i <= m; ++i) {
            S.push_back(2 * i - 1);
            T.push_back(2 * i);
            E.emplace_back(2 * i - 1, 2 * i);
        }
        MultiPoly bf = antisym_perm_bruteforce(B, S, T);
        count.tally(bf == sigma_poly(B, E) && bf == antisym_perm_recursive(B, S, T) &&
                    bf == sigma_recursive(B, E));
    };
    for (int m : {2, 4}) suite(PolyMatrix::generic_symmetric(2 * m, "b"), m);
    for (int t = 0; t < trials; ++t) suite(random_symmetric_int_matrix(12, rng), 6);
    // odd length: the antisymmetrisation cancels identically
    for (int m : {1, 3, 5}) {
        PolyMatrix B = PolyMatrix::generic_symmetric(2 * m, "b");
        std::vector<int> S, T;
        for (int i = 1; i <= m; ++i) {
            S.push_back(2 * i - 1);
            T.push_back(2 * i);
        }
        count.tally(antisym_perm_bruteforce(B, S, T).is_zero());
    }
    return count;
}

SuiteCount verify_sym_trace(int trials, std::uint64_t seed) {
    SuiteCount count;
    std::mt19937_64 rng(seed);
    GenTablePtr t3 = omega_gen_table(3);
    std::vector<TypeNu> types;
    std::vector<std::pair<int, int>> upper{{1, 2}, {1, 3}, {2, 3}};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            types.emplace_back(3, std::vector<std::pair<int, int>>{
                                      {1, 1}, {2, 2}, {3, 3}, upper[a], upper[b]});
    // exhaustive upper-triangular types at rank 3, symbolic B
    PolyMatrix B3 = PolyMatrix::generic_symmetric(3, "b");
    for (const TypeNu& nu : types)
        count.tally(symmetric_trace(nu, B3) ==
                    form_matrix_power(B3, symmetric_upsilon(nu, t3), 5).trace());
    // even rank vanishes
    {
        TypeNu nu(2, {{1, 1}, {1, 2}, {2, 2}});
        PolyMatrix B2 = PolyMatrix::generic_symmetric(2, "b");
        GenTablePtr t2 = omega_gen_table(2);
        count.tally(symmetric_trace(nu, B2).is_zero() &&
                    form_matrix_power(B2, symmetric_upsilon(nu, t2), 3).trace().is_zero());
    }
    // randomized integer B over the rank-3 types
    for (int t = 0; t < trials; ++t) {
        const TypeNu& nu = types[rng() % types.size()];
        PolyMatrix B = random_symmetric_int_matrix(3, rng);
        count.tally(symmetric_trace(nu, B) ==
                    form_matrix_power(B, symmetric_upsilon(nu, t3), 5).trace());
    }
    return count;
}

SuiteCount verify_jacobi(int trials, std::uint64_t seed) {
    SuiteCount count;
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const int n = 3 + static_cast<int>(rng() % 3);
        RatMatrix A = RatMatrix::identity(n);
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    A.at(i, j) = Rational(static_cast<int>(rng() % 11) - 5,
                                          1 + static_cast<int>(rng() % 3));
        } while (A.det().is_zero());
        const int size = 1 + static_cast<int>(rng() % n);
        std::vector<int> I, J;
        for (int i = 0; i < size; ++i) {
            I.push_back(1 + static_cast<int>(rng() % n));
            J.push_back(1 + static_cast<int>(rng() % n));
        }
        count.tally(jacobi_minor_check(A, I, J).ok);
    }
    return count;
}

SuiteCount verify_closed_vs_direct(const std::string& graph_spec, int chart, int trials,
                                   std::uint64_t seed) {
    SuiteCount count;
    GraphSource src = load_graph_source(graph_spec);
    if (chart <= 0) chart = src.tree.back();
    GraphCanonicalForm cf = canonical_form_graph(src.graph, src.tree, chart);
    std::uint64_t mask = 0;
    for (int e = 1; e <= src.graph.edge_count(); ++e)
        if (e != chart) mask |= std::uint64_t{1} << (e - 1);
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        std::vector<Rational> x = random_positive_point(src.graph.edge_count(), rng);
        x[chart - 1] = Rational(1);
        ExtForm direct = canonical_form_direct_at_point(src.graph, src.tree, chart, x);
        bool ok = direct.terms().size() <= 1;
        Rational got;
        for (const auto& [mk, c] : direct.terms()) {
            ok = ok && mk == mask;
            got = c.constant_value();
        }
        Rational psi_at = eval_edge_poly(cf.psi, x);
        ok = ok && !psi_at.is_zero();
        Rational expect;
        for (const auto& [k, N] : cf.numerators) {
            Rational denom(1);
            for (int i = 0; i <= k; ++i) denom = denom * psi_at;
            expect = expect + eval_edge_poly(N, x) / denom;
        }
        count.tally(ok && got == expect);
    }
    return count;
}

int run_verify(const std::string& identity, int n, int trials, std::uint64_t seed,
               const std::string& graph_spec, int chart, bool json_output,
               std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "verify";
    report.inputs = {{"identity", identity}, {"n", n}, {"trials", trials},
                     {"seed", seed}};

    SuiteCount count;
    if (identity == "thm1") {
        count = verify_thm1(n, trials, seed);
    } else if (identity == "perm-sigma") {
        count = verify_perm_sigma(trials, seed);
    } else if (identity == "sym-trace") {
        count = verify_sym_trace(trials, seed);
    } else if (identity == "jacobi") {
        count = verify_jacobi(trials, seed);
    } else {  // closed-vs-direct
        report.inputs["graph"] = graph_spec;
        count = verify_closed_vs_direct(graph_spec, chart, trials, seed);
    }

    report.line("identity " + identity + ": " + std::to_string(count.instances) +
                " instances, " + std::to_string(count.failures) + " failures");
    report.check(identity + "-all-instances", count.failures == 0);
    report.result = {{"identity", identity}, {"instances", count.instances},
                     {"failures", count.failures}};
    return finish(report, json_output, start);
}

// -------------------------------------------------------------- amitsur ----

int run_amitsur(int n, int trials, std::uint64_t seed, bool json_output,
                std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "amitsur";
    report.inputs = {{"n", n}, {"trials", trials}, {"seed", seed}};

    SuiteCount closed_count, vanish_count;
    std::mt19937_64 rng(seed);
    if (n == 2) {
        MatrixTuple symbolic{PolyMatrix::generic(2, "a"), PolyMatrix::generic(2, "b"),
                             PolyMatrix::generic(2, "c")};
        closed_count.tally(antisymmetrize_closed(symbolic) ==
                           antisymmetrize_bruteforce(symbolic));
    }
    for (int t = 0; t < trials; ++t) {
        MatrixTuple ms;
        for (int i = 0; i < 2 * n - 1; ++i) ms.push_back(random_int_matrix(n, rng));
        closed_count.tally(antisymmetrize_closed(ms) == antisymmetrize_bruteforce(ms));
    }
    // Amitsur-Levitzki: 2n matrices of rank n antisymmetrize to zero.
    for (int t = 0; t < std::max(1, trials / 10); ++t) {
        MatrixTuple ms;
        for (int i = 0; i < 2 * n; ++i) ms.push_back(random_int_matrix(n, rng));
        PolyMatrix zero = antisymmetrize_bruteforce(ms);
        bool is_zero = true;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) is_zero = is_zero && zero.at(i, j).is_zero();
        vanish_count.tally(is_zero);
    }

    report.line("closed vs brute force [2n-1 = " + std::to_string(2 * n - 1) +
                " matrices]: " + std::to_string(closed_count.instances) + " instances, " +
                std::to_string(closed_count.failures) + " failures");
    report.line("2n-fold antisymmetrization vanishing: " +
                std::to_string(vanish_count.instances) + " instances, " +
                std::to_string(vanish_count.failures) + " failures");
    report.check("closed-equals-bruteforce", closed_count.failures == 0);
    report.check("rank-n-2n-fold-vanishing", vanish_count.failures == 0);
    report.result = {{"n", n},
                     {"closed_vs_bruteforce",
                      {{"instances", closed_count.instances},
                       {"failures", closed_count.failures}}},
                     {"vanishing",
                      {{"instances", vanish_count.instances},
                       {"failures", vanish_count.failures}}}};
    return finish(report, json_output, start);
}

// ------------------------------------------------------------------- mc ----

int run_mc(const std::string& graph_spec, int chart, const std::string& mode,
           std::uint64_t samples, std::uint64_t seed, double ref, double tol,
           bool have_ref, bool json_output,
           std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "mc";
    report.inputs = {{"graph", graph_spec}, {"mode", mode}, {"samples", samples},
                     {"seed", seed}};

    GraphSource src = load_graph_source(graph_spec);
    SimplexIntegrand f;
    if (mode == "residue") {
        f = residue_integrand(src.graph, src.tree);
    } else if (mode == "canonical") {
        if (chart <= 0) chart = src.tree.back();
        report.inputs["chart"] = chart;
        f = canonical_integrand(src.graph, src.tree, chart);
    } else {  // volume
        f = constant_one_integrand(src.graph.edge_count());
    }

    McEstimate est = mc_integrate(f, samples, seed);
    char buffer[256];
    std::snprintf(buffer, sizeof buffer, "%s on %s: estimate = %.10g", f.label.c_str(),
                  graph_spec.c_str(), est.value);
    report.line(buffer);
    std::snprintf(buffer, sizeof buffer,
                  "stderr ~ %.3g, samples = %llu, seed = %llu, resampled = %llu",
                  est.stderr_est, static_cast<unsigned long long>(est.samples),
                  static_cast<unsigned long long>(est.seed),
                  static_cast<unsigned long long>(est.resampled));
    report.line(buffer);
    if (have_ref) {
        std::snprintf(buffer, sizeof buffer, "reference %.10g, tolerance %.3g", ref, tol);
        report.line(buffer);
        report.check("within-tolerance", std::fabs(est.value - ref) <= tol * std::fabs(ref));
    }
    report.result = {{"value", est.value},      {"stderr", est.stderr_est},
                     {"samples", est.samples},  {"seed", est.seed},
                     {"resampled", est.resampled}, {"method", est.method},
                     {"integrand", f.label},    {"edges", f.edges}};
    return finish(report, json_output, start);
}

// ----------------------------------------------------------- zeta-table ----

int run_zeta_table(int max_s, int digits, bool json_output,
                   std::chrono::steady_clock::time_point start) {
    Report report;
    report.command = "zeta-table";
    report.inputs = {{"max_s", max_s}, {"digits", digits}};

    json rows = json::array();
    double previous = 0.0;
    bool monotone = true;
    char buffer[64];
    for (int s = 2; s <= max_s; ++s) {
        double z = zeta_numeric(s, digits);
        std::snprintf(buffer, sizeof buffer, "zeta(%2d) = %.15g", s, z);
        report.line(buffer);
        rows.push_back({{"s", s}, {"value", z}});
        if (s > 2) monotone = monotone && z < previous;
        previous = z;
    }
    report.check("monotone-decreasing-to-one", monotone && previous > 1.0);
    // cross-check against the truncated series plus its tail bound
    for (int s : {3, 5, 7, 9}) {
        if (s > max_s) continue;
        double partial = 0.0, comp = 0.0;
        const long N = 100000;
        for (long r = N; r >= 1; --r) {
            double term = std::pow(static_cast<double>(r), -static_cast<double>(s));
            double y = term - comp, t = partial + y;
            comp = (t - partial) - y;
            partial = t;
        }
        double bound = std::pow(static_cast<double>(N), 1.0 - s) / (s - 1.0);
        double z = zeta_numeric(s, digits);
        report.check("partial-sum-consistency-s" + std::to_string(s),
                     z >= partial - 1e-12 && z <= partial + bound + 1e-12);
    }
    report.result = {{"values", rows}};
    return finish(report, json_output, start);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "canform: exact canonical differential forms of graphs.\n"
        "Computes tr((Lambda^-1 dLambda)^(2n-1)) by closed formula and\n"
        "brute-force exterior algebra, exact wheel integrals as zeta\n"
        "combinations, and Monte-Carlo cross-checks on the simplex."};
    app.require_subcommand(1);

    std::string output = "text";
    bool parallel = false;
    std::string graph_spec = "wheel:3";
    std::string integrand_mode = "closed";
    std::string wheel_mode = "exact";
    std::string mc_mode = "residue";
    std::string identity;
    std::string point_text;
    int chart = 0;
    int n = 3;
    int trials = 50;
    int max_s = 13;
    int digits = 14;
    std::uint64_t seed = 20260814;
    std::uint64_t samples = 1000000;
    double ref = 0.0;
    double tol = 0.10;

    auto add_common = [&](CLI::App* sub, bool symbolic) {
        sub->add_option("--output", output, "Report format")
            ->check(CLI::IsMember({"text", "json"}));
        if (symbolic)
            sub->add_flag("--parallel", parallel,
                          "Allow OpenMP in symbolic kernels (default: single thread "
                          "unless CANFORM_THREADS is set)");
    };

    CLI::App* lap = app.add_subcommand(
        "laplacian", "Cycle-space Laplacian, Psi = det Lambda, spanning trees");
    lap->add_option("--graph", graph_spec, "Graph source: wheel:n or a JSON file")
        ->required();
    lap->add_option("--chart", chart, "Substitute x_chart = 1 in the printed matrix");
    add_common(lap, true);

    CLI::App* integrand = app.add_subcommand(
        "integrand", "Canonical form omega^(2n-1) on a chart: closed formula or "
                     "exterior-algebra evaluation at a point");
    integrand->add_option("--graph", graph_spec, "Graph source: wheel:n or a JSON file")
        ->required();
    integrand->add_option("--chart", chart,
                          "Chart edge (default: last tree edge; 2n for wheels)");
    integrand->add_option("--mode", integrand_mode, "closed | direct-at-point")
        ->check(CLI::IsMember({"closed", "direct-at-point"}));
    integrand->add_option("--point", point_text,
                          "Comma-separated rational edge values for direct-at-point");
    integrand->add_option("--seed", seed, "Random point seed for direct-at-point");
    add_common(integrand, true);

    CLI::App* wheel_cmd = app.add_subcommand(
        "wheel", "Exact wheel data: canonical integral as a zeta combination, "
                 "integrand coefficients, or partition counts c_{m,k}");
    wheel_cmd->add_option("--n", n, "Number of spokes")->required();
    wheel_cmd->add_option("--mode", wheel_mode, "exact | integrand | coeffs")
        ->check(CLI::IsMember({"exact", "integrand", "coeffs"}));
    add_common(wheel_cmd, true);

    CLI::App* verify = app.add_subcommand(
        "verify", "Replay an identity suite and count failing instances");
    verify->add_option("--identity", identity,
                       "thm1 | perm-sigma | sym-trace | jacobi | closed-vs-direct")
        ->required()
        ->check(CLI::IsMember(
            {"thm1", "perm-sigma", "sym-trace", "jacobi", "closed-vs-direct"}));
    verify->add_option("--n", n, "Rank for thm1 (exhaustive for n <= 3)");
    verify->add_option("--trials", trials, "Randomized instance count");
    verify->add_option("--seed", seed, "Random seed");
    verify->add_option("--graph", graph_spec, "Graph for closed-vs-direct");
    verify->add_option("--chart", chart, "Chart edge for closed-vs-direct");
    add_common(verify, true);

    CLI::App* amitsur = app.add_subcommand(
        "amitsur", "Closed antisymmetrization of 2n-1 matrices vs brute force, "
                   "plus the 2n-fold vanishing");
    amitsur->add_option("--n", n, "Matrix size")->check(CLI::Range(2, 4));
    amitsur->add_option("--trials", trials, "Random tuple count");
    amitsur->add_option("--seed", seed, "Random seed");
    add_common(amitsur, true);

    CLI::App* mc = app.add_subcommand(
        "mc", "Monte-Carlo simplex integration of the residue 1/Psi^2, the "
              "canonical integrand, or the constant 1 (volume calibration)");
    mc->add_option("--graph", graph_spec, "Graph source: wheel:n or a JSON file");
    mc->add_option("--chart", chart, "Chart edge for canonical mode");
    mc->add_option("--mode", mc_mode, "residue | canonical | volume")
        ->check(CLI::IsMember({"residue", "canonical", "volume"}));
    mc->add_option("--samples", samples, "Sample count (>= 32)");
    mc->add_option("--seed", seed, "RNG seed; fixed seed gives bit-identical "
                                   "results at any thread count");
    CLI::Option* ref_opt = mc->add_option("--ref", ref, "Reference value to check against");
    mc->add_option("--tol", tol, "Relative tolerance for --ref");
    add_common(mc, false);

    CLI::App* zt = app.add_subcommand("zeta-table",
                                      "zeta(s) for s = 2..max-s by series plus "
                                      "Euler-Maclaurin tail");
    zt->add_option("--max-s", max_s, "Largest argument")->check(CLI::Range(2, 200));
    zt->add_option("--digits", digits, "Significant digits (<= 15)");
    add_common(zt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage error contract
    }

    // Symbolic subcommands default to one thread; mc stays parallel.
    const bool symbolic = !mc->parsed();
    if (symbolic && !parallel) setenv("CANFORM_THREADS", "1", 0);

    const bool json_output = output == "json";
    const auto start = std::chrono::steady_clock::now();
    try {
        if (lap->parsed()) return run_laplacian(graph_spec, chart, json_output, start);
        if (integrand->parsed())
            return run_integrand(graph_spec, chart, integrand_mode, point_text, seed, json_output,
                                 start);
        if (wheel_cmd->parsed()) return run_wheel(n, wheel_mode, json_output, start);
        if (verify->parsed())
            return run_verify(identity, n, trials, seed, graph_spec, chart, json_output,
                              start);
        if (amitsur->parsed()) return run_amitsur(n, trials, seed, json_output, start);
        if (mc->parsed())
            return run_mc(graph_spec, chart, mc_mode, samples, seed, ref, tol,
                          ref_opt->count() > 0, json_output, start);
        if (zt->parsed()) return run_zeta_table(max_s, digits, json_output, start);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
