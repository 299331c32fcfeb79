#pragma once

#include <optional>

#include "swnfock/approx.hpp"
#include "swnfock/kernel.hpp"
#include "swnfock/report.hpp"
#include "swnfock/swnalg.hpp"

namespace swnfock {

enum class Verdict { Converged, Diverging, Undetermined };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Converged: return "Converged";
        case Verdict::Diverging: return "Diverging";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

/// Truncated-series diagnostics for <psi(f), psi(g)>. Partial sums are kept
/// in the library scalar type; residuals are always doubles.
template <class S>
struct SeriesDiagnostics {
    std::vector<cplx<S>> partial_sums;  // index = truncation M'
    std::optional<KernelValue> closed_form;
    std::vector<double> residuals;
    Verdict verdict = Verdict::Undetermined;
};

/// Sum_{m<=M} <B_f^{*m} Phi, B_g^{*m} Phi> / (m!)^2. Cross terms vanish by
/// grading, so this is the truncated exponential-vector inner product.
template <class S>
cplx<S> truncated_inner(const StepFunction<S>& f, const StepFunction<S>& g, const S& c, int M) {
    auto terms = series_weights(f, g, c, M);
    cplx<S> acc;
    for (const auto& t : terms) acc += t;
    return acc;
}

template <class S>
SeriesDiagnostics<S> series_vs_closed(const StepFunction<S>& f, const StepFunction<S>& g,
                                      const S& c, int M, double tol) {
    if (2.0 * sup_norm(f) >= 1.0 || 2.0 * sup_norm(g) >= 1.0)
        throw DomainViolation("series_vs_closed: sup norm >= 1/2");
    KernelConfig cfg;
    cfg.c = to_double(c);
    SeriesDiagnostics<S> out;
    out.closed_form = kernel_step(f, g, cfg);

    auto terms = series_weights(f, g, c, M);
    cplx<S> acc;
    const double closed_abs = std::abs(out.closed_form->value);
    for (int m = 0; m <= M; ++m) {
        acc += terms[m];
        out.partial_sums.push_back(acc);
        out.residuals.push_back(std::abs(to_std(acc) - out.closed_form->value) /
                                (closed_abs > 0 ? closed_abs : 1.0));
    }
    out.verdict = out.residuals.back() < tol ? Verdict::Converged : Verdict::Undetermined;
    return out;
}

/// Exchange-of-limits table T[n][M'] of truncated norms of the dominated
/// approximations f_n, with the domination bound and iterated-limit checks.
inline VerificationReport exchange_limits_report(const SampledFunction& f,
                                                 const ApproxSchedule& sched, double c, int M,
                                                 double tol = 1e-4) {
    if (!sched.valid()) throw std::invalid_argument("exchange_limits_report: bad schedule");
    if (2.0 * sup_norm(f) >= 1.0)
        throw DomainViolation("exchange_limits_report: sup|f| >= 1/2");
    KernelConfig cfg;
    cfg.c = c;

    VerificationReport rep;
    rep.title = "exchange_of_limits";
    rep.columns = {"level"};
    for (int m = 0; m <= M; ++m) rep.columns.push_back("M" + std::to_string(m));

    const double kq = kernel_quad(f, f, cfg).value.real();
    const double bound = kq + 1.0;

    bool rows_monotone = true, bounded = true;
    std::vector<double> row_limits;
    std::vector<double> last_column;
    for (int n : sched.levels) {
        auto fn = dominated_step(f, n);
        auto terms = series_weights(fn, fn, c, M);
        std::vector<double> row{static_cast<double>(n)};
        double acc = 0.0, prev = -1.0;
        for (int m = 0; m <= M; ++m) {
            acc += to_double(terms[m].re);
            if (acc + 1e-15 < prev) rows_monotone = false;
            if (acc > bound * (1.0 + 1e-12)) bounded = false;
            prev = acc;
            row.push_back(acc);
        }
        row_limits.push_back(acc);
        rep.rows.push_back(std::move(row));
    }
    for (size_t i = 0; i < sched.levels.size(); ++i)
        last_column.push_back(rep.rows[i].back());

    // iterated limits: column-at-M limit in n, and row limits followed by n
    const double lim_M_then_n = last_column.back();
    const double lim_n_then_M = row_limits.back();
    const double scale = std::max(1.0, std::abs(kq));

    rep.scalar("kernel_quad", kq);
    rep.scalar("dominating_bound", bound);
    rep.scalar("iterated_limit_M_then_n", lim_M_then_n);
    rep.scalar("iterated_limit_n_then_M", lim_n_then_M);
    rep.check("rows_non_decreasing_in_M", rows_monotone);
    rep.check("entries_within_dominating_bound", bounded);
    rep.check("iterated_limits_agree",
              std::abs(lim_M_then_n - lim_n_then_M) / scale < tol);
    rep.check("limits_match_kernel",
              std::abs(lim_M_then_n - kq) / scale < tol &&
              std::abs(lim_n_then_M - kq) / scale < tol);
    return rep;
}

/// ||psi(f) - psi(f_n)||^2 = K(f,f) - 2 Re K(f_n,f) + K(f_n,f_n).
inline double difference_norm_sq(const SampledFunction& f, const StepFunction<double>& fn,
                                 const KernelConfig& cfg) {
    if (2.0 * sup_norm(f) >= 1.0 || 2.0 * sup_norm(fn) >= 1.0)
        throw DomainViolation("difference_norm_sq: sup norm >= 1/2");
    double kff = kernel_quad(f, f, cfg).value.real();
    double knn = kernel_step(fn, fn, cfg).value.real();
    double knf = kernel_mixed(fn, f, cfg).value.real();
    double d = kff - 2.0 * knf + knn;
    if (d < 0.0 && d > -cfg.tol) d = 0.0;  // quadrature round-off
    return d;
}

inline double difference_norm_sq(const StepFunction<double>& f, const StepFunction<double>& fn,
                                 const KernelConfig& cfg) {
    if (2.0 * sup_norm(f) >= 1.0 || 2.0 * sup_norm(fn) >= 1.0)
        throw DomainViolation("difference_norm_sq: sup norm >= 1/2");
    double kff = kernel_step(f, f, cfg).value.real();
    double knn = kernel_step(fn, fn, cfg).value.real();
    double knf = kernel_step(fn, f, cfg).value.real();
    double d = kff - 2.0 * knf + knn;
    if (d < 0.0 && d > -cfg.tol) d = 0.0;
    return d;
}

struct GramReport {
    std::vector<std::vector<std::complex<double>>> matrix;
    double psd_shift = -1.0;  // first successful diagonal shift, -1 if none
    Verdict verdict = Verdict::Undetermined;
};

namespace detail {

/// Cholesky of a Hermitian matrix; true iff all pivots stay positive.
inline bool cholesky_ok(std::vector<std::vector<std::complex<double>>> a) {
    const size_t n = a.size();
    for (size_t k = 0; k < n; ++k) {
        double pivot = a[k][k].real();
        for (size_t j = 0; j < k; ++j) pivot -= std::norm(a[k][j]);
        if (!(pivot > 0.0)) return false;
        double l = std::sqrt(pivot);
        a[k][k] = l;
        for (size_t i = k + 1; i < n; ++i) {
            std::complex<double> s = a[i][k];
            for (size_t j = 0; j < k; ++j) s -= a[i][j] * std::conj(a[k][j]);
            a[i][k] = s / l;
        }
    }
    return true;
}

}  // namespace detail

/// Gram matrix of exponential-vector kernels with a shifted-Cholesky
/// positivity check.
inline GramReport gram(const std::vector<StepFunction<double>>& fs, double c) {
    KernelConfig cfg;
    cfg.c = c;
    GramReport out;
    const size_t n = fs.size();
    out.matrix.assign(n, std::vector<std::complex<double>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            auto k = kernel_step(fs[i], fs[j], cfg).value;
            out.matrix[i][j] = k;
            out.matrix[j][i] = std::conj(k);
        }
    for (double shift : {0.0, 1e-12, 1e-10}) {
        auto m = out.matrix;
        for (size_t i = 0; i < n; ++i) m[i][i] += shift;
        if (detail::cholesky_ok(std::move(m))) {
            out.psd_shift = shift;
            out.verdict = Verdict::Converged;
            return out;
        }
    }
    out.verdict = Verdict::Undetermined;
    return out;
}

/// Partial sums of the norm series without admissibility checks; flags
/// divergence at and beyond the boundary sup|f| = 1/2.
template <class S>
SeriesDiagnostics<S> divergence_probe(const StepFunction<S>& f, const S& c, int M_max) {
    SeriesDiagnostics<S> out;
    auto terms = series_weights(f, f, c, M_max);
    cplx<S> acc;
    for (int m = 0; m <= M_max; ++m) {
        acc += terms[m];
        out.partial_sums.push_back(acc);
    }
    KernelConfig cfg;
    cfg.c = to_double(c);
    bool admissible = true;
    try {
        out.closed_form = kernel_step(f, f, cfg);
    } catch (const DomainViolation&) {
        admissible = false;
    }

    const double last = to_double(out.partial_sums.back().re);
    const double half = to_double(out.partial_sums[M_max / 2].re);
    const double last_term = to_double(terms[M_max].re);
    if (admissible && last_term < 1e-12 * std::max(1.0, last)) {
        out.verdict = Verdict::Converged;
        if (out.closed_form) {
            double ca = std::abs(out.closed_form->value);
            out.residuals.push_back(std::abs(last - out.closed_form->value.real()) / ca);
        }
    } else if (half > 0.0 && last / half > 1.5) {
        out.verdict = Verdict::Diverging;
    } else {
        out.verdict = Verdict::Undetermined;
    }
    return out;
}

}  // namespace swnfock
