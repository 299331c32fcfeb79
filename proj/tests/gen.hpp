#pragma once

// Randomized input generators shared by the property tests and the
// acceptance suite. All draws are seeded, so every run is reproducible.

#include <random>

#include "swnfock/swnfock.hpp"

namespace swnfock::gen {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}

    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(eng);
    }
    int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(eng); }

    std::complex<double> disk(double max_mod) {
        double r = uniform(0.0, max_mod);
        double phi = uniform(0.0, 6.283185307179586);
        return std::polar(r, phi);
    }
};

/// Random d = 1 step function: up to max_cells disjoint intervals inside
/// [0, 4] with complex values of modulus at most max_mod.
inline StepFunction<double> step_function(Rng& rng, int max_cells, double max_mod) {
    int ncells = rng.uniform_int(1, max_cells);
    // disjoint intervals from sorted breakpoints
    std::vector<double> pts;
    for (int i = 0; i < 2 * ncells; ++i) pts.push_back(rng.uniform(0.0, 4.0));
    std::sort(pts.begin(), pts.end());
    StepFunction<double> f;
    f.dim = 1;
    for (int i = 0; i < ncells; ++i) {
        double a = pts[2 * i], b = pts[2 * i + 1];
        if (!(a < b)) continue;
        auto v = rng.disk(max_mod);
        f.cells.push_back({interval(a, b), cplx<double>{v.real(), v.imag()}});
    }
    if (f.cells.empty())
        f.cells.push_back({interval(0.0, 1.0), cplx<double>{rng.disk(max_mod).real(), 0.0}});
    f.normalize();
    return f;
}

/// Rational-mode variant: breakpoints on a 1/8 grid, values with small
/// rational parts, modulus capped by max_mod.
inline StepFunction<rational> step_function_rational(Rng& rng, int max_cells, double max_mod) {
    int ncells = rng.uniform_int(1, max_cells);
    std::vector<int> pts;
    while (static_cast<int>(pts.size()) < 2 * ncells) {
        int p = rng.uniform_int(0, 32);
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    StepFunction<rational> f;
    f.dim = 1;
    int denom = 40;  // values k/40, |k| <= max_mod * 40
    int kmax = static_cast<int>(max_mod * denom / 1.5);  // margin for |re + i im|
    for (int i = 0; i < ncells; ++i) {
        rational lo(pts[2 * i], 8), hi(pts[2 * i + 1], 8);
        cplx<rational> v{rational(rng.uniform_int(-kmax, kmax), denom),
                         rational(rng.uniform_int(-kmax, kmax), denom)};
        f.cells.push_back({interval_s(lo, hi), v});
    }
    f.normalize();
    if (f.cells.empty())
        f.cells.push_back({interval_s(rational(0), rational(1)), cplx<rational>{rational(1, 4)}});
    return f;
}

}  // namespace swnfock::gen
