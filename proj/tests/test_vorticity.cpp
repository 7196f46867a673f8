#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muskat/vorticity.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace muskat;

namespace {
const FluidParams kContrast{3.0, 1.0, 0.0, 1.0, 1.0, 1.0}; // A_mu = 1/2
const FluidParams kEqual{1.0, 1.0, 0.0, 1.0, 1.0, 1.0};    // A_mu = 0
} // namespace

TEST_CASE("equal viscosities: w = -G dz2 exactly, zero iterations") {
    const int n = 128;
    auto c = oracles::regression_curve(n);
    auto vs = solve_vorticity(c, kEqual, SolveMethod::neumann);
    CHECK(vs.iterations == 0);
    CHECK(vs.residual == 0.0);
    const double G = kEqual.gravity_coeff();
    for (int j = 0; j < n; ++j)
        CHECK(vs.w[j] == doctest::Approx(-G * c.dz2()[j]).epsilon(1e-14));
}

TEST_CASE("flat curve: w = 0 for any parameters") {
    auto flat = Curve::flat(64);
    for (const auto& p : {kContrast, kEqual}) {
        auto vs = solve_vorticity(flat, p);
        CHECK(vs.w.max_abs() == 0.0);
        CHECK(vs.residual == 0.0);
    }
}

TEST_CASE("dense and neumann solutions agree") {
    const int n = 128;
    auto c = oracles::graph_curve(n, [](double a) { return 0.3 * std::cos(a); });
    auto nm = solve_vorticity(c, kContrast, SolveMethod::neumann);
    auto dn = solve_vorticity(c, kContrast, SolveMethod::dense);
    CHECK(nm.residual <= 1e-10);
    CHECK(dn.residual <= 1e-9);
    CHECK((nm.w - dn.w).max_abs() <= 1e-9);
    CHECK(nm.method == SolveMethod::neumann);
    CHECK(dn.method == SolveMethod::dense);
    CHECK(nm.iterations > 0);
}

TEST_CASE("residual of the returned amplitude in the original equation form") {
    // -2 A_mu BR(z,w).dz - G dz2 - w must vanish (consistency of the two
    // printed forms of the amplitude equation)
    const int n = 128;
    auto c = oracles::wavy_curve(n);
    auto vs = solve_vorticity(c, kContrast);
    auto br = birkhoff_rott(c, vs.w);
    const double amu = kContrast.atwood();
    const double G = kContrast.gravity_coeff();
    double res = 0.0;
    for (int j = 0; j < n; ++j) {
        const double tw = 2.0 * (br.x[j] * c.dz1()[j] + br.y[j] * c.dz2()[j]);
        res = std::max(res, std::abs(-amu * tw - G * c.dz2()[j] - vs.w[j]));
    }
    CHECK(res <= 1e-8);
}

TEST_CASE("solution scales linearly with G") {
    const int n = 64;
    auto c = oracles::regression_curve(n);
    FluidParams doubled = kContrast;
    doubled.rho2 = 2.0 * kContrast.rho2; // rho2 - rho1 doubles, so G doubles
    auto a = solve_vorticity(c, kContrast, SolveMethod::dense);
    auto b = solve_vorticity(c, doubled, SolveMethod::dense);
    CHECK((b.w - 2.0 * a.w).max_abs() <= 1e-12 * std::max(1.0, b.w.max_abs()));
}

TEST_CASE("neumann converges when the contraction bound holds") {
    // spectral radius of A_mu M << 1 on the regression curve, so the
    // iteration count stays small
    const int n = 128;
    auto c = oracles::regression_curve(n);
    auto vs = solve_vorticity(c, kContrast, SolveMethod::neumann);
    CHECK(vs.iterations < 50);
    CHECK_FALSE(vs.fell_back);
}

TEST_CASE("mollified solve: A_mu = 0 closed form and eps -> 0 consistency") {
    const int n = 256;
    auto c = oracles::regression_curve(n);

    auto m0 = solve_vorticity_mollified(c, kEqual, 0.05);
    const double G = kEqual.gravity_coeff();
    auto expect = -G * double_mollify(c.dz2(), 0.05);
    CHECK((m0.w - expect).max_abs() <= 1e-13);

    auto flat = Curve::flat(n);
    CHECK(solve_vorticity_mollified(flat, kContrast, 0.05).w.max_abs() == 0.0);

    auto base = solve_vorticity(c, kContrast);
    double prev = 1e9;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
        auto m = solve_vorticity_mollified(c, kContrast, eps);
        const double d = (m.w - base.w).max_abs();
        CHECK(d < prev); // monotone approach to the unmollified solve
        prev = d;
    }
    CHECK(prev <= 1e-6); // eps = 1e-3 within 1e-6 on the regression curve
    CHECK_THROWS_AS(solve_vorticity_mollified(c, kContrast, 0.0), std::invalid_argument);
}

TEST_CASE("mollified dense and neumann agree") {
    const int n = 128;
    auto c = oracles::wavy_curve(n);
    auto nm = solve_vorticity_mollified(c, kContrast, 0.01, SolveMethod::neumann);
    auto dn = solve_vorticity_mollified(c, kContrast, 0.01, SolveMethod::dense);
    CHECK((nm.w - dn.w).max_abs() <= 1e-9);
}

TEST_CASE("resolvent sweep: identity at xi = 0, finite at the endpoints") {
    const int n = 128;
    auto flat = Curve::flat(n);
    auto cs = resolvent_sweep(flat, {0.0, 1.0, -1.0});
    CHECK(cs[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isfinite(cs[1]));
    CHECK(std::isfinite(cs[2]));

    auto c = oracles::regression_curve(n);
    for (double cond : resolvent_sweep(c, {-1.0, -0.5, 0.0, 0.5, 1.0})) {
        CHECK(std::isfinite(cond));
        CHECK(cond >= 1.0);
    }
    CHECK_THROWS_AS(resolvent_sweep(c, {1.5}), std::invalid_argument);
}
