#pragma once
// Floating-point verification layer: Riemann zeta values via direct series
// plus Euler-Maclaurin tail acceleration, and Monte-Carlo integration of
// degree-zero projective graph integrands over the positive coordinate
// simplex.  Everything here is a numerical cross-check of the exact
// ZetaCombo results; tolerances are therefore loose by design.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "canform/graph.hpp"

namespace canform {

// zeta(s) for integer s >= 2, accurate to at least `digits` significant
// digits (12 guaranteed, ~15 typical; capped by double precision).
// Direct compensated series up to a cutoff, then the Euler-Maclaurin tail
//   sum_{r>=N} r^-s = N^{1-s}/(s-1) + N^-s/2
//                   + sum_j B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{1-s-2j}.
// Throws std::invalid_argument for s < 2 or digits outside [1, 15].
double zeta_numeric(int s, int digits = 14);

// A homogeneous degree-zero integrand restricted to the open simplex
// {x_e > 0, sum_e x_e = 1}; `edges` is the number of coordinates.
struct SimplexIntegrand {
    int edges = 0;
    std::string label;
    std::function<double(const double*)> eval;
};

// f == 1; integrates to the simplex volume 1/(E-1)!, calibrating the
// estimator normalization (0.5 on the 2-simplex).
SimplexIntegrand constant_one_integrand(int edges);

// 1/Psi_G(x)^2, the Feynman residue integrand.  Requires a log-divergent
// graph (|E| = 2n, n the loop number) so the integrand has degree zero.
SimplexIntegrand residue_integrand(const Graph& g, const std::vector<int>& tree);

// |sum_k N_k(x)/Psi(x)^{k+1}| with N_k re-homogenized from the chart
// representation produced by canonical_form_graph (each chart monomial is
// padded with powers of x_chart up to degree n(k+1)-|E|).  The absolute
// value reflects the convention that the domain is oriented so the
// canonical integral is nonnegative; on wheels the integrand has uniform
// sign on the open simplex.
SimplexIntegrand canonical_integrand(const Graph& g, const std::vector<int>& tree,
                                     int chart_edge);

struct McEstimate {
    double value = 0.0;       // median-of-means estimate of the integral
    double stderr_est = 0.0;  // std dev of block means / sqrt(#blocks)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t resampled = 0;  // singular draws replaced (logged count)
    std::string method = "uniform-simplex median-of-means";
};

// Monte-Carlo estimate of the projective integral of f: the restriction to
// {sum x = 1} is integrated with uniform Dirichlet samples (normalized
// exponentials of counter-based uniforms), so the integral with respect to
// the drop-one-coordinate Lebesgue measure is mean(f)/(E-1)!.  The sample
// mean is replaced by the median of 32 block means for heavy-tail
// robustness.  Bit-reproducible for fixed (seed, samples) at any thread
// count: every sample is a pure function of (seed, sample index), blocks
// accumulate in index order with compensated summation, and block means
// combine in a fixed order.  Parallel over blocks honoring CANFORM_THREADS.
// Throws std::invalid_argument if samples < 32 or f is empty.
McEstimate mc_integrate(const SimplexIntegrand& f, std::uint64_t samples,
                        std::uint64_t seed);

}  // namespace canform
