// Minimal library walkthrough: build a step function, compare the truncated
// exponential-vector series against the closed-form kernel, and print the
// dominated-convergence table for a Gaussian profile.

#include <cstdio>

#include "swnfock/swnfock.hpp"

using namespace swnfock;

int main() {
    auto f = indicator(0.0, 1.0, 0.25);
    auto diag = series_vs_closed(f, f, 1.0, 40, 1e-10);
    std::printf("closed form      : %.15g\n", diag.closed_form->value.real());
    std::printf("series at M = 40 : %.15g\n", to_std(diag.partial_sums.back()).real());
    std::printf("verdict          : %s\n\n", to_string(diag.verdict));

    auto g = sample_fn(-4.0, 4.0, 1024, [](double t) {
        return std::complex<double>(0.45 * std::exp(-t * t), 0.0);
    });
    KernelConfig cfg;
    auto rep = convergence_report(g, ApproxSchedule{{16, 64, 256, 1024}}, cfg);
    std::printf("%8s %12s %12s\n", "level", "l2_error", "kernel");
    for (const auto& row : rep.rows)
        std::printf("%8.0f %12.3e %12.9f\n", row[0], row[1], row[2]);
    std::printf("pass: %s\n", rep.pass() ? "yes" : "no");
    return rep.pass() ? 0 : 1;
}
