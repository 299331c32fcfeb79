#pragma once

#include <complex>
#include <limits>
#include <stdexcept>

#include "swnfock/testfn.hpp"

namespace swnfock {

/// Inputs outside the admissible region |4 conj(f) g| < 1.
struct DomainViolation : std::domain_error {
    using std::domain_error::domain_error;
};

/// Quadrature failed to reach the requested tolerance.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KernelConfig {
    double c = 1.0;         // the SWN constant, > 0
    int quad_cells = 32;    // coarsest subsample size for the refinement ladder
    int refine_limit = 24;  // maximum number of dyadic refinements
    double tol = 1e-10;     // quadrature tolerance on the log-integral
};

struct KernelValue {
    std::complex<double> value{1.0, 0.0};
    double abs_log_bound = 0.0;   // bound on |log value|; inf if no global bound applies
    double error_estimate = 0.0;  // 0 for exact step evaluation
};

/// M_delta with |ln(1+x)| <= M_delta |x| for all complex |x| <= 1 - delta.
inline double log_bound_constant(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("log_bound_constant: delta must lie in (0,1)");
    return -std::log(delta) / (1.0 - delta);
}

namespace detail {

inline double integrability_bound(double c, double supf, double supg, double l1_fg) {
    if (l1_fg == 0.0) return 0.0;
    double prod = 4.0 * supf * supg;
    if (prod >= 1.0)
        throw DomainViolation("integrability_check: 4 sup|f| sup|g| >= 1");
    double delta = 1.0 - prod;
    return (c / 2.0) * log_bound_constant(delta) * 4.0 * l1_fg;
}

}  // namespace detail

/// (c/2) M_delta 4 ||conj(f) g||_1 with delta = 1 - 4 sup|f| sup|g|.
template <class S>
double integrability_check(const StepFunction<S>& f, const StepFunction<S>& g,
                           const KernelConfig& cfg) {
    auto r = refine_common(f, g);
    return detail::integrability_bound(cfg.c, sup_norm(f), sup_norm(g),
                                       to_double(l1_product_norm(r)));
}

inline double integrability_check(const SampledFunction& f, const SampledFunction& g,
                                  const KernelConfig& cfg) {
    double l1 = 0.0;
    for (size_t i = 0; i < f.values.size(); ++i)
        l1 += std::abs(f.values[i]) * std::abs(g.values[i]);
    l1 *= f.cell_width();
    return detail::integrability_bound(cfg.c, sup_norm(f), sup_norm(g), l1);
}

/// <psi(f), psi(g)> for step functions: exact cell product
/// prod (1 - 4 conj(a) b)^(-c vol / 2), principal branch.
template <class S>
KernelValue kernel_step(const StepFunction<S>& f, const StepFunction<S>& g,
                        const KernelConfig& cfg) {
    auto r = refine_common(f, g);
    const S one(1);
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        // |4 conj(a) b| >= 1  <=>  16 |a|^2 |b|^2 >= 1, exact in rational mode
        if (!(S(16) * r.a[i].norm_sq() * r.b[i].norm_sq() < one))
            throw DomainViolation("kernel_step: |4 conj(f) g| >= 1 on a cell");
    }
    KernelValue out;
    std::complex<double> log_acc{0.0, 0.0};
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        std::complex<double> z = 1.0 - 4.0 * std::conj(to_std(r.a[i])) * to_std(r.b[i]);
        log_acc += to_double(r.volumes[i]) * std::log(z);
    }
    out.value = std::exp(-(cfg.c / 2.0) * log_acc);
    double supp = 4.0 * sup_norm(f) * sup_norm(g);
    out.abs_log_bound = supp < 1.0
        ? detail::integrability_bound(cfg.c, sup_norm(f), sup_norm(g),
                                      to_double(l1_product_norm(r)))
        : std::numeric_limits<double>::infinity();
    out.error_estimate = 0.0;
    return out;
}

/// Midpoint quadrature of the log-integrand on the sampling grid, with a
/// dyadic subsampling ladder for the error estimate. The full-resolution
/// midpoint sum is the returned value.
inline KernelValue kernel_quad(const SampledFunction& f, const SampledFunction& g,
                               const KernelConfig& cfg) {
    if (f.dim != g.dim) throw DimensionMismatch("kernel_quad: dimension mismatch");
    if (f.n != g.n || f.lo != g.lo || f.hi != g.hi)
        throw std::invalid_argument("kernel_quad: sampling grids differ");

    std::vector<std::complex<double>> integrand(f.n);
    for (int i = 0; i < f.n; ++i) {
        std::complex<double> p = std::conj(f.values[i]) * g.values[i];
        if (4.0 * std::abs(p) >= 1.0)
            throw DomainViolation("kernel_quad: |4 conj(f) g| >= 1 at a sample");
        integrand[i] = std::log(1.0 - 4.0 * p);
    }
    const double h = f.cell_width();

    int stride = 1;
    while (stride * 2 * std::max(1, cfg.quad_cells) <= f.n) stride *= 2;

    auto strided_sum = [&](int s) {
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i < f.n; i += s) acc += integrand[i];
        return acc * (h * s);
    };

    std::complex<double> est = strided_sum(stride);
    double change = std::numeric_limits<double>::infinity();
    int refinements = 0;
    while (stride > 1 && refinements < cfg.refine_limit) {
        stride /= 2;
        ++refinements;
        std::complex<double> next = strided_sum(stride);
        change = std::abs(next - est);
        est = next;
        if (change < cfg.tol) {
            // finish on the full grid so step-aligned inputs agree with
            // kernel_step bit-for-bit up to rounding
            est = strided_sum(1);
            stride = 1;
            break;
        }
    }
    if (stride > 1 || !(change < cfg.tol || f.n <= cfg.quad_cells))
        throw NoConvergence("kernel_quad: refinement limit reached");

    KernelValue out;
    out.value = std::exp(-(cfg.c / 2.0) * est);
    out.error_estimate = std::isfinite(change) ? change : 0.0;
    double supp = 4.0 * sup_norm(f) * sup_norm(g);
    out.abs_log_bound = supp < 1.0 ? integrability_check(f, g, cfg)
                                   : std::numeric_limits<double>::infinity();
    return out;
}

/// Mixed kernel K(step, sampled): the step function is evaluated on the
/// sampling grid of the second argument.
inline KernelValue kernel_mixed(const StepFunction<double>& f, const SampledFunction& g,
                                const KernelConfig& cfg) {
    return kernel_quad(sample_step(f, g.lo, g.hi, g.n), g, cfg);
}

}  // namespace swnfock
