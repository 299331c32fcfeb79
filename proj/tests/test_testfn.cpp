#include <catch2/catch_amalgamated.hpp>

#include "gen.hpp"
#include "swnfock/testfn.hpp"

using namespace swnfock;
using Catch::Approx;

TEST_CASE("refine splits overlapping intervals") {
    auto f = indicator(0.0, 2.0, 1.0);
    auto g = indicator(1.0, 3.0, 1.0);
    auto [rf, rg] = refine(f, g);
    REQUIRE(rf.cells.size() == 3);
    REQUIRE(rg.cells.size() == 3);
    CHECK(rf.cells[0].first == interval(0.0, 1.0));
    CHECK(rf.cells[1].first == interval(1.0, 2.0));
    CHECK(rf.cells[2].first == interval(2.0, 3.0));
    CHECK(to_std(rf.cells[0].second) == std::complex<double>(1.0, 0.0));
    CHECK(to_std(rf.cells[2].second) == std::complex<double>(0.0, 0.0));
    CHECK(to_std(rg.cells[0].second) == std::complex<double>(0.0, 0.0));
    CHECK(to_std(rg.cells[2].second) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("refine is idempotent on equal inputs") {
    StepFunction<double> f;
    f.dim = 1;
    f.cells.push_back({interval(0.0, 1.0), {0.5, 0.0}});
    f.cells.push_back({interval(2.0, 3.0), {0.0, 0.25}});
    auto [rf, rg] = refine(f, f);
    REQUIRE(rf.cells.size() == 2);
    CHECK(rf.cells[0].first == interval(0.0, 1.0));
    CHECK(rf.cells[1].first == interval(2.0, 3.0));
    CHECK(rf.cells[0].second == rg.cells[0].second);
}

TEST_CASE("refine of disjoint supports keeps complementary zeros") {
    auto f = indicator(0.0, 1.0, 1.0);
    auto g = indicator(2.0, 3.0, 1.0);
    auto [rf, rg] = refine(f, g);
    REQUIRE(rf.cells.size() == 2);
    CHECK(to_std(rf.cells[1].second) == std::complex<double>(0.0, 0.0));
    CHECK(to_std(rg.cells[0].second) == std::complex<double>(0.0, 0.0));
}

TEST_CASE("refine rejects dimension mismatch") {
    StepFunction<double> f2;
    f2.dim = 2;
    f2.cells.push_back({Box<double>{{0.0, 0.0}, {1.0, 1.0}}, {1.0, 0.0}});
    CHECK_THROWS_AS(refine(f2, indicator(0.0, 1.0, 1.0)), DimensionMismatch);
}

TEST_CASE("pointwise operations on constant cells") {
    auto f = indicator(0.0, 1.0, {0.5, 0.5});
    auto g = indicator(0.0, 1.0, {0.25, 0.0});
    auto fg = pointwise_mul(f, g);
    REQUIRE(fg.cells.size() == 1);
    CHECK(to_std(fg.cells[0].second) == std::complex<double>(0.125, 0.125));

    auto cf = conj(indicator(0.0, 1.0, {2.0, 1.0}));
    CHECK(to_std(cf.cells[0].second) == std::complex<double>(2.0, -1.0));

    auto disj = pointwise_mul(indicator(0.0, 1.0, 1.0), indicator(2.0, 3.0, 1.0));
    CHECK(disj.is_zero());
}

TEST_CASE("l2_inner on indicators") {
    auto one3 = indicator(0.0, 3.0, 1.0);
    CHECK(to_std(l2_inner(one3, one3)).real() == Approx(3.0));

    auto fi = indicator(0.0, 1.0, {0.0, 1.0});
    auto g1 = indicator(0.0, 1.0, 1.0);
    auto v = to_std(l2_inner(fi, g1));
    CHECK(v.real() == Approx(0.0).margin(1e-15));
    CHECK(v.imag() == Approx(-1.0));

    CHECK(to_std(l2_inner(indicator(0.0, 1.0, 1.0), indicator(2.0, 3.0, 1.0))).real() == 0.0);
}

TEST_CASE("norms") {
    StepFunction<double> f;
    f.dim = 1;
    f.cells.push_back({interval(0.0, 1.0), {0.25, 0.0}});
    f.cells.push_back({interval(1.0, 2.0), {0.4, 0.0}});
    CHECK(sup_norm(f) == Approx(0.4));
    CHECK(sup_norm(StepFunction<double>{}) == 0.0);
    CHECK(l2_norm(indicator(0.0, 4.0, 0.5)) == Approx(1.0));
}

TEST_CASE("rational mode is exact") {
    using R = rational;
    StepFunction<R> f;
    f.dim = 1;
    f.cells.push_back({interval_s(R(0), R(1)), cplx<R>{R(1, 4), R(0)}});
    f.cells.push_back({interval_s(R(1), R(3)), cplx<R>{R(1, 3), R(1, 5)}});
    CHECK(l2_norm_sq(f) == R(1, 16) + R(2) * (R(1, 9) + R(1, 25)));
    CHECK(l2_inner(f, f).im == R(0));
}

TEST_CASE("property: refinement preserves inner products and norms") {
    gen::Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = gen::step_function(rng, 4, 1.0);
        auto g = gen::step_function(rng, 4, 1.0);
        auto [rf, rg] = refine(f, g);
        CHECK(std::abs(to_std(l2_inner(f, g)) - to_std(l2_inner(rf, rg))) < 1e-12);
        CHECK(sup_norm(f) == Approx(sup_norm(rf)).margin(1e-15));
        CHECK(l2_norm(g) == Approx(l2_norm(rg)).margin(1e-12));
    }
}

TEST_CASE("property: conjugate symmetry and Cauchy-Schwarz") {
    gen::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        auto f = gen::step_function(rng, 4, 1.0);
        auto g = gen::step_function(rng, 4, 1.0);
        auto fg = to_std(l2_inner(f, g));
        auto gf = to_std(l2_inner(g, f));
        CHECK(std::abs(fg - std::conj(gf)) < 1e-12);
        CHECK(std::abs(fg) <= l2_norm(f) * l2_norm(g) + 1e-12);
    }
}

TEST_CASE("property: pointwise_mul algebra") {
    gen::Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = gen::step_function(rng, 3, 1.0);
        auto g = gen::step_function(rng, 3, 1.0);
        auto h = gen::step_function(rng, 3, 1.0);
        // commutativity and associativity up to refinement: compare inner
        // products against a fixed witness
        auto w = indicator(0.0, 4.0, 1.0);
        auto ab = to_std(l2_inner(w, pointwise_mul(f, g)));
        auto ba = to_std(l2_inner(w, pointwise_mul(g, f)));
        CHECK(std::abs(ab - ba) < 1e-12);
        auto a_bc = to_std(l2_inner(w, pointwise_mul(f, pointwise_mul(g, h))));
        auto ab_c = to_std(l2_inner(w, pointwise_mul(pointwise_mul(f, g), h)));
        CHECK(std::abs(a_bc - ab_c) < 1e-12);
        CHECK(sup_norm(pointwise_mul(f, g)) <= sup_norm(f) * sup_norm(g) + 1e-12);
    }
}

TEST_CASE("2-d boxes refine and integrate") {
    StepFunction<double> f, g;
    f.dim = g.dim = 2;
    f.cells.push_back({Box<double>{{0.0, 0.0}, {2.0, 2.0}}, {1.0, 0.0}});
    g.cells.push_back({Box<double>{{1.0, 1.0}, {3.0, 3.0}}, {1.0, 0.0}});
    // overlap is the unit square [1,2)^2
    CHECK(to_std(l2_inner(f, g)).real() == Approx(1.0));
    CHECK(to_std(l2_inner(f, f)).real() == Approx(4.0));
}

TEST_CASE("sampled function basics") {
    auto s = sample_fn(-4.0, 4.0, 64, [](double t) { return std::complex<double>(0.4 * std::exp(-t * t), 0.0); });
    CHECK(s.valid());
    CHECK(sup_norm(s) == Approx(0.4).epsilon(1e-2));
    s.supnorm_hint = 0.5;
    CHECK(sup_norm(s) == 0.5);

    auto step = sample_step(indicator(0.0, 2.0, 0.3), 0.0, 2.0, 8);
    for (auto v : step.values) CHECK(v == std::complex<double>(0.3, 0.0));
    CHECK(l2_norm(step) == Approx(0.3 * std::sqrt(2.0)));
}
