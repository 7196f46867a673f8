#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muskat/diagnostics.hpp"
#include "muskat/vorticity.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace muskat;
using oracles::kPi;

namespace {
const FluidParams kEqual{1.0, 1.0, 0.0, 1.0, 1.0, 1.0};
const FluidParams kContrast{3.0, 1.0, 0.0, 1.0, 1.0, 1.0};
const FluidParams kUnstable{1.0, 1.0, 1.0, 0.0, 1.0, 1.0}; // rho2 < rho1
} // namespace

TEST_CASE("sigma on the flat stable curve is the constant g (rho2 - rho1)") {
    const int n = 64;
    auto flat = Curve::flat(n);
    auto w = SpectralField::zeros(n);
    auto s = sigma_field(flat, w, kContrast);
    for (int j = 0; j < n; ++j)
        CHECK(s[j] == doctest::Approx(kContrast.g * (kContrast.rho2 - kContrast.rho1))
                          .epsilon(1e-14));
}

TEST_CASE("equal viscosities: sigma = g (rho2 - rho1) dz1 exactly") {
    const int n = 128;
    auto c = oracles::wavy_curve(n);
    auto vs = solve_vorticity(c, kEqual);
    auto s = sigma_field(c, vs.w, kEqual);
    for (int j = 0; j < n; ++j)
        CHECK(s[j] == doctest::Approx(1.0 * c.dz1()[j]).epsilon(1e-13));
}

TEST_CASE("sigma integral identity on random smooth curves") {
    const int n = 256;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto c = oracles::random_curve(n, 700 + seed);
        auto vs = solve_vorticity(c, kContrast);
        auto s = sigma_field(c, vs.w, kContrast);
        const double integral = 2.0 * kPi * s.mean();
        const double expect = 2.0 * kPi * kContrast.g * (kContrast.rho2 - kContrast.rho1);
        CHECK(std::abs(integral - expect) <= 1e-7);
    }
}

TEST_CASE("min sigma: flat values and the Rayleigh-Taylor sign flip") {
    const int n = 64;
    auto flat = Curve::flat(n);
    auto w = SpectralField::zeros(n);
    CHECK(min_sigma(flat, w, kContrast).value == doctest::Approx(1.0));
    CHECK(min_sigma(flat, w, kUnstable).value == doctest::Approx(-1.0));
}

TEST_CASE("min sigma sub-grid refinement beats the raw grid minimum") {
    const int n = 64;
    auto c = oracles::graph_curve(n, [](double a) { return 0.2 * std::cos(a); });
    auto vs = solve_vorticity(c, kContrast);
    auto s = sigma_field(c, vs.w, kContrast);
    double grid_min = s[0];
    for (int j = 1; j < n; ++j) grid_min = std::min(grid_min, s[j]);
    const MinSigma ms = min_sigma(c, vs.w, kContrast);
    CHECK(ms.value <= grid_min + 1e-15);
    // the refined minimum agrees with a dense scan of the interpolant
    double dense = 1e300;
    for (int m = 0; m < 20000; ++m)
        dense = std::min(dense, s.interp(-kPi + m * (2 * kPi / 20000)));
    CHECK(ms.value == doctest::Approx(dense).epsilon(1e-6));
}

TEST_CASE("velocity off the curve: zero amplitude gives zero") {
    auto flat = Curve::flat(64);
    auto v = velocity_at(flat, SpectralField::zeros(64), 0.3, 0.5);
    CHECK(v[0] == 0.0);
    CHECK(v[1] == 0.0);
}

TEST_CASE("pressure on the flat curve: hydrostatic slopes on both sides") {
    const int n = 128;
    auto flat = Curve::flat(n);
    auto w = SpectralField::zeros(n);
    FluidParams p{1.0, 1.0, 1.0, 2.0, 1.0, 1.0};
    // gradient of p must be -(0, g rho_side) where v = 0 (Darcy)
    const double pa1 = pressure_at(flat, w, p, 0.3, 1.0);
    const double pa2 = pressure_at(flat, w, p, 0.3, 1.5);
    CHECK((pa2 - pa1) / 0.5 == doctest::Approx(-p.g * p.rho1).epsilon(1e-8));
    const double pb1 = pressure_at(flat, w, p, 0.3, -1.0);
    const double pb2 = pressure_at(flat, w, p, 0.3, -1.5);
    CHECK((pb2 - pb1) / (-0.5) == doctest::Approx(-p.g * p.rho2).epsilon(1e-8));
}

TEST_CASE("pressure on the flat curve does not depend on x1") {
    const int n = 128;
    auto flat = Curve::flat(n);
    auto w = SpectralField::zeros(n);
    const double ref = pressure_at(flat, w, kContrast, 0.0, 0.7);
    for (double x1 : {-2.0, -0.4, 1.1, 3.0})
        CHECK(pressure_at(flat, w, kContrast, x1, 0.7) ==
              doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("points too close to the interface are rejected with advice") {
    auto flat = Curve::flat(64);
    auto w = SpectralField::from_function(64, [](double a) { return std::cos(a); });
    CHECK_THROWS_AS(velocity_at(flat, w, 0.1, 1e-7), std::invalid_argument);
    CHECK_THROWS_AS(pressure_at(flat, w, kContrast, 0.1, 1e-7), std::invalid_argument);
}

TEST_CASE("boundary limits converge at first order in the standoff") {
    const int n = 128;
    auto c = oracles::regression_curve(n);
    auto vs = solve_vorticity(c, kContrast);
    const BoundaryLimits b2 = boundary_limits(c, vs.w, kContrast, 1e-2);
    const BoundaryLimits b3 = boundary_limits(c, vs.w, kContrast, 1e-3);
    // first order: a decade of offset gains a factor close to ten
    CHECK(b3.velocity_jump_residual <= 0.2 * b2.velocity_jump_residual);
    CHECK(b3.velocity_avg_residual <= 0.2 * b2.velocity_avg_residual);
    CHECK(b3.pressure_jump_max <= 0.2 * b2.pressure_jump_max);
    CHECK(b2.velocity_jump_residual > 0.0);
}

TEST_CASE("flat-curve jump relation has the closed form") {
    const int n = 128;
    auto flat = Curve::flat(n);
    auto w = SpectralField::from_function(n, [](double a) { return std::cos(a); });
    const double h = 1e-3;
    // v(below) - v(above) = w dz/|dz|^2 = (cos a, 0)
    const int j = 37;
    const double a = flat.node(j);
    auto vb = velocity_at(flat, w, a, -h);
    auto va = velocity_at(flat, w, a, +h);
    CHECK(vb[0] - va[0] == doctest::Approx(std::cos(a)).epsilon(2e-3));
    CHECK(std::abs(vb[1] - va[1]) <= 1e-10);
    // average -> BR = (0, H(w)/2)
    CHECK(0.5 * (vb[1] + va[1]) == doctest::Approx(0.5 * std::sin(a)).epsilon(2e-3));
}

TEST_CASE("pointwise Lambda inequality") {
    auto c = SpectralField::constant(64, 3.0);
    auto r = lambda_pointwise_check(c);
    CHECK(r.min_value == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.ok);

    auto f = SpectralField::from_function(64, [](double a) { return std::cos(a); });
    CHECK(lambda_pointwise_check(f).ok);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = oracles::random_field(256, 256 / 4, 900 + seed, 1.0, 0.3);
        CHECK(lambda_pointwise_check(g).ok);
    }
}

TEST_CASE("energy report on the flat state") {
    const int n = 64;
    auto flat = Curve::flat(n);
    auto w = SpectralField::zeros(n);
    const DiagnosticsRecord r = energy_report(flat, w, kContrast, 0.0);
    CHECK(r.sobolev_norms[3] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.sup_F == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.min_sigma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.sigma_integral == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(r.tangent_dev <= 1e-14);
    CHECK(r.lambda_inequality_min >= -1e-10);
    CHECK(std::abs(r.sigma_weighted_k3_form) <= 1e-14);
}

TEST_CASE("sigma-weighted k=3 form is dissipative where sigma > 0") {
    const int n = 128;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        auto c = oracles::random_curve(n, 40 + seed, 0.15);
        auto vs = solve_vorticity(c, kContrast);
        const MinSigma ms = min_sigma(c, vs.w, kContrast);
        REQUIRE(ms.value > 0.0);
        const DiagnosticsRecord r = energy_report(c, vs.w, kContrast);
        CHECK(r.sigma_weighted_k3_form >= -1e-8);
    }
}

TEST_CASE("records are reproducible bit for bit") {
    const int n = 64;
    auto c = oracles::wavy_curve(n);
    auto vs = solve_vorticity(c, kContrast);
    const DiagnosticsRecord a = energy_report(c, vs.w, kContrast, 0.25);
    const DiagnosticsRecord b = energy_report(c, vs.w, kContrast, 0.25);
    CHECK(a.sup_F == b.sup_F);
    CHECK(a.min_sigma == b.min_sigma);
    CHECK(a.sigma_integral == b.sigma_integral);
    CHECK(a.velocity_jump_residual == b.velocity_jump_residual);
    CHECK(a.pressure_jump_max == b.pressure_jump_max);
    CHECK(a.sigma_weighted_k3_form == b.sigma_weighted_k3_form);
    CHECK(a.b_t == b.b_t);
}
