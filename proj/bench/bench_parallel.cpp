// Benchmark comparing the serial and OpenMP exterior-algebra kernels.
//
// Two product chains exercise form_matrix_mul_serial against form_matrix_mul
// on the same inputs:
//
//   wheel  -- the (2n-1)-fold product of adj(A) dLambda on the wheel W_n
//             chart, whose trace is the canonical-form numerator
//   omega  -- the 2n-fold product (B Omega)^{2n} for an n x n generic
//             symbolic B, which must vanish identically
//
// Every pair of runs must agree term by term; any mismatch makes the
// benchmark exit non-zero.  Timings report the best of --reps runs.
// The OpenMP thread count follows CANFORM_THREADS when set.
//
// Usage: canform_bench [--n N] [--reps R]

#include "canform/identities.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>

using namespace canform;

namespace {

using MulFn = FormMatrix (*)(const FormMatrix&, const FormMatrix&);

FormMatrix chain_power(const FormMatrix& M, int k, MulFn mul) {
    FormMatrix acc = M;
    for (int i = 1; i < k; ++i) acc = mul(acc, M);
    return acc;
}

template <class F>
double best_ms(int reps, F&& run) {
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        run();
        auto t1 = std::chrono::steady_clock::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

struct BenchRow {
    std::string label;
    double serial_ms = 0;
    double parallel_ms = 0;
    bool equal = false;
    std::string note;
};

BenchRow bench_wheel(int n, int reps) {
    WheelData w = wheel(n);
    LaplacianMatrix L = laplacian(w.graph, w.basis);
    const int chart = 2 * n;
    PolyMatrix A = L.chart(chart, Rational(1));
    GenTablePtr t = dx_gen_table(2 * n);
    FormMatrix dL = laplacian_differential(L, chart, t);
    FormMatrix M =
        form_matrix_mul_serial(FormMatrix::from_poly(poly_adjugate(A), t), dL);

    BenchRow row;
    row.label = "wheel W_" + std::to_string(n) + " chain (adj A dA)^" +
                std::to_string(2 * n - 1);
    FormMatrix rs, rp;
    row.serial_ms =
        best_ms(reps, [&] { rs = chain_power(M, 2 * n - 1, form_matrix_mul_serial); });
    row.parallel_ms =
        best_ms(reps, [&] { rp = chain_power(M, 2 * n - 1, form_matrix_mul); });
    row.equal = (rs == rp);
    row.note = row.equal ? "equal" : "MISMATCH";
    return row;
}

BenchRow bench_omega(int rank, int reps) {
    PolyMatrix B = PolyMatrix::generic(rank, "b");
    GenTablePtr t = omega_gen_table(rank);
    FormMatrix Om(rank, rank, t);
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            Om.at(i, j) = ExtForm::generator(i * rank + j, t);
    FormMatrix M = form_matrix_mul_serial(FormMatrix::from_poly(B, t), Om);

    BenchRow row;
    row.label = "omega rank " + std::to_string(rank) + " chain (B Omega)^" +
                std::to_string(2 * rank);
    FormMatrix rs, rp;
    row.serial_ms =
        best_ms(reps, [&] { rs = chain_power(M, 2 * rank, form_matrix_mul_serial); });
    row.parallel_ms =
        best_ms(reps, [&] { rp = chain_power(M, 2 * rank, form_matrix_mul); });
    row.equal = (rs == rp);
    if (!row.equal)
        row.note = "MISMATCH";
    else
        row.note = rs.is_zero() ? "equal, zero" : "equal, NOT ZERO";
    return row;
}

void usage() {
    std::printf("usage: canform_bench [--n N] [--reps R]\n");
    std::printf("  --n N     odd wheel size >= 3 (also the omega rank); default 3\n");
    std::printf("  --reps R  timing repetitions per kernel; default 3\n");
}

}  // namespace

int main(int argc, char** argv) {
    int n = 3;
    int reps = 3;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        auto next_int = [&]() {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "error: %s needs a value\n", a.c_str());
                std::exit(2);
            }
            return std::atoi(argv[++i]);
        };
        if (a == "--n")
            n = next_int();
        else if (a == "--reps")
            reps = next_int();
        else if (a == "--help" || a == "-h") {
            usage();
            return 0;
        } else {
            std::fprintf(stderr, "error: unknown option %s\n", a.c_str());
            usage();
            return 2;
        }
    }
    if (n < 3 || n % 2 == 0) {
        std::fprintf(stderr, "error: --n must be odd and >= 3\n");
        return 2;
    }
    if (reps < 1) reps = 1;

    std::printf("exterior-kernel benchmark: serial vs OpenMP multiplication\n");
    std::printf("threads: %d (set CANFORM_THREADS to override), reps: %d\n\n",
                effective_threads(), reps);
    std::printf("%-36s %12s %12s %9s   %s\n", "workload", "serial ms", "openmp ms",
                "speedup", "result");

    BenchRow rows[] = {bench_wheel(n, reps), bench_omega(n, reps)};
    bool all_equal = true;
    for (const BenchRow& r : rows) {
        double speedup = r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0;
        std::printf("%-36s %12.2f %12.2f %8.2fx   %s\n", r.label.c_str(),
                    r.serial_ms, r.parallel_ms, speedup, r.note.c_str());
        all_equal = all_equal && r.equal;
    }

    if (!all_equal) {
        std::printf("\nkernel results differ\n");
        return 1;
    }
    std::printf("\nall kernel results identical\n");
    return 0;
}
