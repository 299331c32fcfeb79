#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "swnfock/numeric.hpp"

namespace swnfock {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Half-open axis-aligned box [lo, hi) in R^d.
template <class S>
struct Box {
    std::vector<S> lo;
    std::vector<S> hi;

    int dim() const { return static_cast<int>(lo.size()); }

    S volume() const {
        S v(1);
        for (size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
        return v;
    }

    bool valid() const {
        if (lo.size() != hi.size() || lo.empty()) return false;
        for (size_t i = 0; i < lo.size(); ++i)
            if (!(lo[i] < hi[i])) return false;
        return true;
    }

    bool contains(const std::vector<S>& x) const {
        for (size_t i = 0; i < lo.size(); ++i)
            if (x[i] < lo[i] || !(x[i] < hi[i])) return false;
        return true;
    }

    std::vector<S> midpoint() const {
        std::vector<S> m(lo.size());
        for (size_t i = 0; i < lo.size(); ++i) m[i] = (lo[i] + hi[i]) / S(2);
        return m;
    }

    friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
};

inline Box<double> interval(double a, double b) { return {{a}, {b}}; }

template <class S>
Box<S> interval_s(S a, S b) { return {{std::move(a)}, {std::move(b)}}; }

/// Piecewise-constant complex function on finitely many disjoint boxes.
/// Cells with value 0 are dropped on normalization; nothing observable
/// depends on them.
template <class S>
struct StepFunction {
    int dim = 1;
    std::vector<std::pair<Box<S>, cplx<S>>> cells;

    StepFunction() = default;
    StepFunction(int d, std::vector<std::pair<Box<S>, cplx<S>>> cs)
        : dim(d), cells(std::move(cs)) {
        normalize();
    }

    void normalize() {
        std::erase_if(cells, [](const auto& c) { return c.second.is_zero(); });
    }

    bool is_zero() const {
        return std::all_of(cells.begin(), cells.end(),
                           [](const auto& c) { return c.second.is_zero(); });
    }

    cplx<S> value_at(const std::vector<S>& x) const {
        for (const auto& [box, v] : cells)
            if (box.contains(x)) return v;
        return {};
    }
};

/// One constant cell: value * indicator of box.
template <class S>
StepFunction<S> indicator(const Box<S>& box, const cplx<S>& value) {
    return StepFunction<S>(box.dim(), {{box, value}});
}

inline StepFunction<double> indicator(double a, double b, std::complex<double> v) {
    return indicator<double>(interval(a, b), cplx<double>{v.real(), v.imag()});
}

/// A pair of step functions expressed on one shared cell list.
template <class S>
struct RefinedPair {
    std::vector<Box<S>> boxes;
    std::vector<cplx<S>> a;  // values of the first function
    std::vector<cplx<S>> b;  // values of the second
    std::vector<S> volumes;
};

namespace detail {

template <class S>
void enumerate_cells(const std::vector<std::vector<S>>& breaks, size_t axis,
                     Box<S>& scratch, std::vector<Box<S>>& out) {
    if (axis == breaks.size()) {
        out.push_back(scratch);
        return;
    }
    for (size_t i = 0; i + 1 < breaks[axis].size(); ++i) {
        scratch.lo[axis] = breaks[axis][i];
        scratch.hi[axis] = breaks[axis][i + 1];
        enumerate_cells(breaks, axis + 1, scratch, out);
    }
}

}  // namespace detail

/// Common refinement: the elementary grid spanned by all box coordinates of
/// both inputs. Cells where both functions vanish are omitted.
template <class S>
RefinedPair<S> refine_common(const StepFunction<S>& f, const StepFunction<S>& g) {
    if (f.dim != g.dim) throw DimensionMismatch("refine: dimension mismatch");
    const int d = f.dim;

    std::vector<std::set<S>> axis_breaks(d);
    auto collect = [&](const StepFunction<S>& h) {
        for (const auto& [box, v] : h.cells) {
            if (box.dim() != d) throw DimensionMismatch("refine: cell dimension mismatch");
            for (int i = 0; i < d; ++i) {
                axis_breaks[i].insert(box.lo[i]);
                axis_breaks[i].insert(box.hi[i]);
            }
        }
    };
    collect(f);
    collect(g);

    std::vector<std::vector<S>> breaks(d);
    for (int i = 0; i < d; ++i) breaks[i].assign(axis_breaks[i].begin(), axis_breaks[i].end());

    RefinedPair<S> out;
    if (std::any_of(breaks.begin(), breaks.end(), [](const auto& v) { return v.size() < 2; }))
        return out;  // both functions are zero

    std::vector<Box<S>> grid;
    Box<S> scratch;
    scratch.lo.resize(d);
    scratch.hi.resize(d);
    detail::enumerate_cells(breaks, 0, scratch, grid);

    for (auto& box : grid) {
        auto mid = box.midpoint();
        cplx<S> va = f.value_at(mid);
        cplx<S> vb = g.value_at(mid);
        if (va.is_zero() && vb.is_zero()) continue;
        out.volumes.push_back(box.volume());
        out.boxes.push_back(std::move(box));
        out.a.push_back(std::move(va));
        out.b.push_back(std::move(vb));
    }
    return out;
}

template <class S>
std::pair<StepFunction<S>, StepFunction<S>> refine(const StepFunction<S>& f,
                                                   const StepFunction<S>& g) {
    auto r = refine_common(f, g);
    StepFunction<S> rf, rg;
    rf.dim = rg.dim = f.dim;
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        rf.cells.emplace_back(r.boxes[i], r.a[i]);
        rg.cells.emplace_back(r.boxes[i], r.b[i]);
    }
    return {std::move(rf), std::move(rg)};
}

template <class S>
StepFunction<S> pointwise_mul(const StepFunction<S>& f, const StepFunction<S>& g) {
    auto r = refine_common(f, g);
    StepFunction<S> out;
    out.dim = f.dim;
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        cplx<S> v = r.a[i] * r.b[i];
        if (!v.is_zero()) out.cells.emplace_back(r.boxes[i], v);
    }
    return out;
}

template <class S>
StepFunction<S> conj(const StepFunction<S>& f) {
    StepFunction<S> out = f;
    for (auto& [box, v] : out.cells) v = v.conj();
    return out;
}

template <class S>
StepFunction<S> scale(const cplx<S>& alpha, const StepFunction<S>& f) {
    StepFunction<S> out = f;
    for (auto& [box, v] : out.cells) v = alpha * v;
    out.normalize();
    return out;
}

/// <f, g> = sum over refined cells of conj(a) * b * volume.
/// Conjugate-linear in f, linear in g.
template <class S>
cplx<S> l2_inner(const StepFunction<S>& f, const StepFunction<S>& g) {
    auto r = refine_common(f, g);
    cplx<S> acc;
    for (size_t i = 0; i < r.boxes.size(); ++i)
        acc += r.a[i].conj() * r.b[i] * r.volumes[i];
    return acc;
}

template <class S>
S l2_norm_sq(const StepFunction<S>& f) {
    S acc(0);
    for (const auto& [box, v] : f.cells) acc += v.norm_sq() * box.volume();
    return acc;
}

template <class S>
double l2_norm(const StepFunction<S>& f) {
    return std::sqrt(to_double(l2_norm_sq(f)));
}

template <class S>
S sup_norm_sq(const StepFunction<S>& f) {
    S m(0);
    for (const auto& [box, v] : f.cells) m = std::max(m, v.norm_sq());
    return m;
}

template <class S>
double sup_norm(const StepFunction<S>& f) {
    return std::sqrt(to_double(sup_norm_sq(f)));
}

template <class S>
S l1_product_norm(const RefinedPair<S>& r) {
    S acc(0);
    for (size_t i = 0; i < r.boxes.size(); ++i) {
        // |a| |b| vol without square roots is not representable exactly;
        // callers needing exactness work with the squared form instead.
        acc += r.volumes[i] * scalar_from_double<S>(abs_value(r.a[i]) * abs_value(r.b[i]));
    }
    return acc;
}

/// Complex function sampled at the midpoints of a uniform 1-d grid.
struct SampledFunction {
    int dim = 1;
    double lo = 0.0;
    double hi = 1.0;
    int n = 0;
    std::vector<std::complex<double>> values;
    std::optional<double> supnorm_hint;

    double cell_width() const { return (hi - lo) / n; }
    double sample_point(int i) const { return lo + (i + 0.5) * cell_width(); }

    bool valid() const {
        return dim == 1 && n > 0 && hi > lo && static_cast<int>(values.size()) == n;
    }
};

inline double sup_norm(const SampledFunction& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    if (f.supnorm_hint) m = std::max(m, *f.supnorm_hint);
    return m;
}

inline double l2_norm(const SampledFunction& f) {
    double acc = 0.0;
    for (const auto& v : f.values) acc += std::norm(v);
    return std::sqrt(acc * f.cell_width());
}

/// Build a sampled function from a callable on [lo, hi).
template <class F>
SampledFunction sample_fn(double lo, double hi, int n, F&& fn) {
    SampledFunction s;
    s.lo = lo;
    s.hi = hi;
    s.n = n;
    s.values.resize(n);
    for (int i = 0; i < n; ++i) s.values[i] = fn(s.sample_point(i));
    return s;
}

/// Evaluate a step function on a sampling grid (d = 1).
inline SampledFunction sample_step(const StepFunction<double>& f, double lo, double hi, int n) {
    if (f.dim != 1) throw DimensionMismatch("sample_step: d = 1 only");
    return sample_fn(lo, hi, n, [&](double t) {
        return to_std(f.value_at({t}));
    });
}

}  // namespace swnfock
