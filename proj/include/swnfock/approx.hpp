#pragma once

#include "swnfock/kernel.hpp"
#include "swnfock/report.hpp"
#include "swnfock/testfn.hpp"

namespace swnfock {

/// Dyadically nested grid sizes for the dominated approximation sequence.
struct ApproxSchedule {
    std::vector<int> levels;

    bool valid() const {
        if (levels.empty() || levels.front() <= 0) return false;
        for (size_t i = 1; i < levels.size(); ++i) {
            if (levels[i] <= levels[i - 1]) return false;
            if (levels[i] % levels.front() != 0) return false;
            int q = levels[i] / levels.front();
            while (q % 2 == 0) q /= 2;
            if (q != 1) return false;
        }
        return true;
    }
};

/// Step approximation on an n-cell grid with |f_n| <= |f| at every sample:
/// per coarse cell, modulus = min sample modulus, phase from the central
/// sample (zero if that sample vanishes).
inline StepFunction<double> dominated_step(const SampledFunction& f, int n) {
    if (n <= 0 || f.n % n != 0)
        throw std::invalid_argument("dominated_step: level must divide the sample grid");
    const int k = f.n / n;  // samples per step cell
    const double w = (f.hi - f.lo) / n;

    StepFunction<double> out;
    out.dim = 1;
    for (int j = 0; j < n; ++j) {
        double minmod = std::numeric_limits<double>::infinity();
        for (int i = j * k; i < (j + 1) * k; ++i)
            minmod = std::min(minmod, std::abs(f.values[i]));
        std::complex<double> mid = f.values[j * k + k / 2];
        std::complex<double> val{0.0, 0.0};
        if (minmod > 0.0 && std::abs(mid) > 0.0) val = minmod * (mid / std::abs(mid));
        if (val != std::complex<double>{0.0, 0.0})
            out.cells.push_back({interval(f.lo + j * w, f.lo + (j + 1) * w),
                                 cplx<double>{val.real(), val.imag()}});
    }
    return out;
}

/// ||f - f_n||_2 at sample resolution.
inline double l2_error(const SampledFunction& f, const StepFunction<double>& fn) {
    double acc = 0.0;
    for (int i = 0; i < f.n; ++i)
        acc += std::norm(f.values[i] - to_std(fn.value_at({f.sample_point(i)})));
    return std::sqrt(acc * f.cell_width());
}

/// Dominated-convergence table: per level ||f - f_n||_2 and K(f_n, f_n),
/// against the quadrature value K(f, f).
inline VerificationReport convergence_report(const SampledFunction& f,
                                             const ApproxSchedule& sched,
                                             const KernelConfig& cfg) {
    if (!sched.valid()) throw std::invalid_argument("convergence_report: bad schedule");
    if (2.0 * sup_norm(f) >= 1.0)
        throw DomainViolation("convergence_report: sup|f| >= 1/2");

    VerificationReport rep;
    rep.title = "dominated_convergence";
    rep.columns = {"level", "l2_error", "kernel"};

    KernelValue target = kernel_quad(f, f, cfg);
    double prev = 0.0;
    bool monotone = true, dominated = true;
    for (int n : sched.levels) {
        auto fn = dominated_step(f, n);
        double kv = kernel_step(fn, fn, cfg).value.real();
        rep.rows.push_back({static_cast<double>(n), l2_error(f, fn), kv});
        if (kv + 1e-15 < prev) monotone = false;
        if (kv > target.value.real() * (1.0 + 1e-12)) dominated = false;
        prev = kv;
    }
    double gap = std::abs(prev - target.value.real());
    rep.scalar("kernel_quad", target.value.real());
    rep.scalar("final_gap", gap);
    rep.check("kernel_non_decreasing", monotone);
    rep.check("kernel_dominated_by_quad", dominated);
    rep.check("final_gap_within_tol", gap <= 10.0 * cfg.tol * std::abs(target.value.real()) + 1e-15);
    return rep;
}

}  // namespace swnfock
