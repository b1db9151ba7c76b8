#include "canform/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "canform/extform.hpp"  // effective_threads()
#include "canform/identities.hpp"
#include "canform/poly.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace canform {

namespace {

// ---------------------------------------------------------------- zeta ----

// Bernoulli numbers B_2, B_4, ..., B_16; enough for the Euler-Maclaurin
// tail to fall below double round-off at cutoff N = 64 for every s >= 2.
constexpr double kBernoulli2j[] = {
    1.0 / 6.0,        -1.0 / 30.0,     1.0 / 42.0,  -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0,
};

}  // namespace

double zeta_numeric(int s, int digits) {
    if (s < 2) throw std::invalid_argument("zeta_numeric: require s >= 2");
    if (digits < 1 || digits > 15)
        throw std::invalid_argument(
            "zeta_numeric: digits must lie in [1, 15] (double precision)");
    const int N = 64;  // series cutoff; tail correction error < 1e-30 relative
    // Compensated direct series sum_{r<N} r^-s, summed smallest-first.
    double sum = 0.0, comp = 0.0;
    for (int r = N - 1; r >= 1; --r) {
        double term = std::pow(static_cast<double>(r), -static_cast<double>(s));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // Euler-Maclaurin tail: sum_{r>=N} r^-s.
    const double Nd = static_cast<double>(N);
    double tail = std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -static_cast<double>(s));
    double rising = static_cast<double>(s);       // s(s+1)...(s+2j-2)
    double npow = std::pow(Nd, -1.0 - s);         // N^{1-s-2j}
    double factorial = 2.0;                       // (2j)!
    for (int j = 1; j <= 8; ++j) {
        tail += kBernoulli2j[j - 1] / factorial * rising * npow;
        // advance to j+1: two more rising factors, two more factorial
        // factors, two more powers of 1/N
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        factorial *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
        npow /= Nd * Nd;
    }
    return sum + tail;
}

// ---------------------------------------------------- counter-based RNG ----

namespace {

// splitmix64 finalizer; fin(key + k * GAMMA) over counters k is the
// splitmix64 output sequence, used here as a stateless PRF so every draw
// is a pure function of (seed, counter).
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform draw in (0, 1] for a given global counter.
inline double unit_draw(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t z = mix64(key + counter * kGamma);
    return static_cast<double>((z >> 11) + 1) * 0x1.0p-53;
}

// Fill x with a uniform point of the open simplex {x_i > 0, sum = 1}:
// normalized exponentials.  `draw_index` identifies the E-block of
// counters consumed.
inline void simplex_point(std::uint64_t key, std::uint64_t draw_index, int edges,
                          double* x) {
    double total = 0.0;
    const std::uint64_t base = draw_index * static_cast<std::uint64_t>(edges);
    for (int c = 0; c < edges; ++c) {
        double e = -std::log(unit_draw(key, base + c));
        x[c] = e;
        total += e;
    }
    for (int c = 0; c < edges; ++c) x[c] /= total;
}

// ------------------------------------------------- compiled polynomials ----

// Double-precision evaluator compiled once from an exact MultiPoly; the
// variable named "x<e>" maps to coordinate e-1.
struct CompiledPoly {
    struct Term {
        double coeff;
        std::vector<std::pair<int, std::uint32_t>> powers;  // (slot, exponent)
    };
    std::vector<Term> terms;

    double eval(const double* x) const {
        double acc = 0.0;
        for (const Term& t : terms) {
            double m = t.coeff;
            for (const auto& [slot, exp] : t.powers)
                for (std::uint32_t i = 0; i < exp; ++i) m *= x[slot];
            acc += m;
        }
        return acc;
    }
};

int edge_slot(const std::string& name, int edges) {
    if (name.size() < 2 || name[0] != 'x')
        throw std::logic_error("mc integrand: unexpected variable name " + name);
    int e = std::atoi(name.c_str() + 1);
    if (e < 1 || e > edges)
        throw std::logic_error("mc integrand: variable " + name +
                               " outside the edge range");
    return e - 1;
}

// `pad_slot`/`pad_to`: re-homogenize each monomial to total degree `pad_to`
// with powers of the pad variable (chart restoration); pad_to < 0 disables.
CompiledPoly compile_poly(const MultiPoly& p, int edges, int pad_slot = -1,
                          long pad_to = -1) {
    CompiledPoly out;
    const VarTable& table = p.vars();
    std::vector<int> slot(table.size());
    for (size_t v = 0; v < table.size(); ++v) slot[v] = edge_slot(table[v], edges);
    for (const auto& [exps, coeff] : p.terms()) {
        CompiledPoly::Term term;
        term.coeff = coeff.to_double();
        long degree = 0;
        for (size_t v = 0; v < exps.size(); ++v) {
            if (exps[v] == 0) continue;
            term.powers.emplace_back(slot[v], exps[v]);
            degree += exps[v];
        }
        if (pad_to >= 0) {
            if (degree > pad_to)
                throw std::logic_error(
                    "mc integrand: chart numerator degree exceeds the "
                    "projective degree; cannot re-homogenize");
            if (degree < pad_to)
                term.powers.emplace_back(pad_slot,
                                         static_cast<std::uint32_t>(pad_to - degree));
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

MultiPoly full_graph_polynomial(const Graph& g, const std::vector<int>& tree,
                                int* loops_out) {
    CycleBasis basis = cycle_basis_from_tree(g, tree);
    if (loops_out) *loops_out = static_cast<int>(basis.cycles.size());
    return graph_polynomial(g, basis);
}

}  // namespace

SimplexIntegrand constant_one_integrand(int edges) {
    if (edges < 2)
        throw std::invalid_argument("constant_one_integrand: need >= 2 edges");
    SimplexIntegrand f;
    f.edges = edges;
    f.label = "1";
    f.eval = [](const double*) { return 1.0; };
    return f;
}

SimplexIntegrand residue_integrand(const Graph& g, const std::vector<int>& tree) {
    int n = 0;
    MultiPoly psi = full_graph_polynomial(g, tree, &n);
    const int edges = static_cast<int>(g.edges().size());
    if (edges != 2 * n)
        throw std::invalid_argument(
            "residue_integrand: 1/Psi^2 has projective degree zero only for "
            "log-divergent graphs (|E| = 2n)");
    SimplexIntegrand f;
    f.edges = edges;
    f.label = "1/Psi^2";
    f.eval = [poly = compile_poly(psi, edges)](const double* x) {
        const double p = poly.eval(x);
        return 1.0 / (p * p);
    };
    return f;
}

SimplexIntegrand canonical_integrand(const Graph& g, const std::vector<int>& tree,
                                     int chart_edge) {
    GraphCanonicalForm cf = canonical_form_graph(g, tree, chart_edge);
    int n = 0;
    MultiPoly psi_full = full_graph_polynomial(g, tree, &n);
    const int edges = static_cast<int>(g.edges().size());
    const int chart_slot = chart_edge - 1;
    // Terms N_k/Psi^{k+1} with N_k re-homogenized to degree n(k+1)-|E|.
    std::vector<std::pair<int, CompiledPoly>> numerators;
    for (const auto& [k, poly] : cf.numerators) {
        const long target = static_cast<long>(n) * (k + 1) - edges;
        if (target < 0)
            throw std::invalid_argument(
                "canonical_integrand: integrand is not homogeneous of degree "
                "zero for this graph");
        numerators.emplace_back(k, compile_poly(poly, edges, chart_slot, target));
    }
    SimplexIntegrand f;
    f.edges = edges;
    f.label = "|" + cf.text + "|";
    f.eval = [psi = compile_poly(psi_full, edges),
              numerators](const double* x) {
        const double p = psi.eval(x);
        double acc = 0.0;
        int have = 1;           // current exponent of pe
        double pe = p;          // p^have
        for (const auto& [k, num] : numerators) {
            for (; have < k + 1; ++have) pe *= p;
            acc += num.eval(x) / pe;
        }
        return std::fabs(acc);
    };
    return f;
}

McEstimate mc_integrate(const SimplexIntegrand& f, std::uint64_t samples,
                        std::uint64_t seed) {
    constexpr int kBlocks = 32;
    constexpr int kMaxResample = 64;
    if (!f.eval || f.edges < 2)
        throw std::invalid_argument("mc_integrate: empty integrand");
    if (samples < kBlocks)
        throw std::invalid_argument("mc_integrate: need at least 32 samples");

    const std::uint64_t key = mix64(seed + kGamma);
    double block_mean[kBlocks];
    std::uint64_t block_resampled[kBlocks];

#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_threads())
#endif
    for (int b = 0; b < kBlocks; ++b) {
        const std::uint64_t lo = samples * static_cast<std::uint64_t>(b) / kBlocks;
        const std::uint64_t hi =
            samples * static_cast<std::uint64_t>(b + 1) / kBlocks;
        std::vector<double> x(static_cast<size_t>(f.edges));
        double sum = 0.0, comp = 0.0;  // Kahan, fixed sample order
        std::uint64_t resampled = 0;
        for (std::uint64_t s = lo; s < hi; ++s) {
            // Each attempt consumes its own counter block, so the draw is a
            // pure function of (seed, sample, attempt).
            double value = 0.0;
            int attempt = 0;
            for (; attempt < kMaxResample; ++attempt) {
                simplex_point(key, s * kMaxResample + attempt, f.edges, x.data());
                value = f.eval(x.data());
                if (std::isfinite(value)) break;
                ++resampled;
            }
            if (attempt == kMaxResample)
                throw std::runtime_error(
                    "mc_integrate: integrand singular on 64 consecutive draws");
            double y = value - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        block_mean[b] = sum / static_cast<double>(hi - lo);
        block_resampled[b] = resampled;
    }

    // Fixed-order, deterministic combination of the 32 block results.
    double sorted[kBlocks];
    std::copy(block_mean, block_mean + kBlocks, sorted);
    std::sort(sorted, sorted + kBlocks);
    const double median = 0.5 * (sorted[kBlocks / 2 - 1] + sorted[kBlocks / 2]);

    double mean = 0.0;
    for (double m : block_mean) mean += m;
    mean /= kBlocks;
    double var = 0.0;
    for (double m : block_mean) var += (m - mean) * (m - mean);
    var /= (kBlocks - 1);

    // Normalize: mean over the uniform simplex -> Lebesgue integral.
    double norm = 1.0;
    for (int i = 2; i < f.edges; ++i) norm *= i;  // (E-1)!

    McEstimate est;
    est.value = median / norm;
    est.stderr_est = std::sqrt(var / kBlocks) / norm;
    est.samples = samples;
    est.seed = seed;
    for (std::uint64_t r : block_resampled) est.resampled += r;
    return est;
}

}  // namespace canform
