#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "muskat/kernels.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace muskat;
using oracles::kPi;

TEST_CASE("fluid parameter derived quantities") {
    FluidParams p{3.0, 1.0, 0.0, 1.0, 2.0, 9.8};
    CHECK(p.atwood() == doctest::Approx(0.5));
    CHECK(p.gravity_coeff() == doctest::Approx(2.0 * 2.0 * 9.8 * 1.0 / 4.0));
    CHECK(std::abs(p.atwood()) <= 1.0);
    CHECK_THROWS_AS((FluidParams{-1.0, 1.0, 0.0, 1.0, 1.0, 1.0}.validate()),
                    std::invalid_argument);
    // the two sign conventions of the amplitude equation agree through
    // FluidParams: -2 A_mu with A_mu=(mu1-mu2)/(mu1+mu2) vs (mu2-mu1) form
    CHECK(-2.0 * p.atwood() ==
          doctest::Approx(2.0 * (p.mu2 - p.mu1) / (p.mu2 + p.mu1)));
}

TEST_CASE("kernel_V: flat curve, zero limit, |V2| <= 1") {
    auto flat = Curve::flat(32);
    for (int j : {1, 5, 17}) {
        auto s = kernel_V(flat, 0, j);
        CHECK(s.V1 ==
              doctest::Approx(std::tan(0.5 * (flat.node(0) - flat.node(j)))));
        CHECK(s.V2 == 0.0);
        CHECK(s.W2 == 0.0);
    }
    CHECK_THROWS_AS(kernel_V(flat, 3, 3), std::invalid_argument);

    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        auto c = oracles::random_curve(64, seed, 0.8);
        for (int i = 0; i < 64; i += 5)
            for (int j = 0; j < 64; j += 3)
                if (i != j) CHECK(std::abs(kernel_V(c, i, j).V2) <= 1.0);
    }
}

TEST_CASE("flat-interface reduction: BR = (0, H(w)/2)") {
    const int n = 128;
    auto flat = Curve::flat(n);
    for (int k : {1, 3, 10}) {
        auto w = SpectralField::from_function(n, [&](double a) { return std::cos(k * a); });
        auto br = birkhoff_rott(flat, w);
        CHECK(br.x.max_abs() <= 1e-14);
        for (int j = 0; j < n; j += 7)
            CHECK(br.y[j] ==
                  doctest::Approx(0.5 * std::sin(k * flat.node(j))).epsilon(1e-12));
        // cross-check against the spectral Hilbert transform
        auto hw = hilbert(w);
        for (int j = 0; j < n; ++j)
            CHECK(br.y[j] == doctest::Approx(0.5 * hw[j]).epsilon(1e-12));
    }
    auto zero = SpectralField::zeros(n);
    auto br0 = birkhoff_rott(flat, zero);
    CHECK(br0.x.max_abs() == 0.0);
    CHECK(br0.y.max_abs() == 0.0);
}

TEST_CASE("vertical translation leaves BR unchanged") {
    const int n = 64;
    auto c = oracles::regression_curve(n);
    auto shifted = Curve(c.q1(), c.q2() + SpectralField::constant(n, 0.37));
    auto w = oracles::random_field(n, 10, 5);
    auto a = birkhoff_rott(c, w);
    auto b = birkhoff_rott(shifted, w);
    CHECK((a.x - b.x).max_abs() <= 1e-13);
    CHECK((a.y - b.y).max_abs() <= 1e-13);
}

TEST_CASE("BR is linear in the amplitude") {
    const int n = 64;
    auto c = oracles::wavy_curve(n);
    auto u = oracles::random_field(n, 12, 7);
    auto v = oracles::random_field(n, 12, 8);
    auto lhs = birkhoff_rott(c, u + 2.0 * v);
    auto a = birkhoff_rott(c, u);
    auto b = birkhoff_rott(c, v);
    CHECK((lhs.x - (a.x + 2.0 * b.x)).max_abs() <= 1e-13);
    CHECK((lhs.y - (a.y + 2.0 * b.y)).max_abs() <= 1e-13);
}

TEST_CASE("delta-regularized BR: delta = 0 exact, large delta kills, amplitude shrinks") {
    const int n = 128;
    auto flat = Curve::flat(n);
    auto w = SpectralField::from_function(n, [](double a) { return std::cos(a); });

    auto plain = birkhoff_rott(flat, w);
    auto d0 = birkhoff_rott_delta(flat, w, 0.0);
    CHECK((plain.x - d0.x).max_abs() == 0.0);
    CHECK((plain.y - d0.y).max_abs() == 0.0);

    auto huge = birkhoff_rott_delta(flat, w, 1e8);
    CHECK(huge.x.max_abs() <= 1e-8);
    CHECK(huge.y.max_abs() <= 1e-8);

    // delta = 0.1 on the flat curve: same phase as H(w)/2, smaller amplitude;
    // high-resolution quadrature oracle of the regularized kernel
    auto d = birkhoff_rott_delta(flat, w, 0.1);
    const int m = 200001;
    const int j = 13;
    const double alpha = flat.node(j);
    double want = 0.0;
    const double hb = 2.0 * kPi / m;
    for (int q = 0; q < m; ++q) {
        const double beta = -kPi + (q + 0.5) * hb;
        const double t = std::tan(0.5 * (alpha - beta));
        want += std::cos(beta) * t / (t * t + 0.1);
    }
    want *= hb / (4.0 * kPi);
    CHECK(d.y[j] == doctest::Approx(want).epsilon(1e-6));
    CHECK(std::abs(d.y[j]) < std::abs(plain.y[j]));
    CHECK(d.y[j] * plain.y[j] > 0.0);
}

TEST_CASE("spectral accuracy: BR error collapses under refinement") {
    // steep enough that N = 64 is not yet at the roundoff floor
    auto q2f = [](double a) { return 0.5 * std::cos(3 * a); };
    auto wf = [](double a) { return std::cos(a); };
    std::vector<double> errs;
    for (int n : {64, 128, 256}) {
        auto c = oracles::graph_curve(n, q2f);
        auto c2 = oracles::graph_curve(2 * n, q2f);
        auto br = birkhoff_rott(c, SpectralField::from_function(n, wf));
        auto br2 = birkhoff_rott(c2, SpectralField::from_function(2 * n, wf));
        double err = 0.0;
        for (int j = 0; j < n; ++j) {
            err = std::max(err, std::abs(br.x[j] - br2.x[2 * j]));
            err = std::max(err, std::abs(br.y[j] - br2.y[2 * j]));
        }
        errs.push_back(err);
    }
    // faster than N^-4 between N = 64 and N = 256
    CHECK(errs[2] < errs[0] * std::pow(64.0 / 256.0, 4));
    CHECK(errs[2] <= 1e-8);
}

TEST_CASE("op_T: flat curve gives zero, zero amplitude gives zero") {
    const int n = 64;
    auto flat = Curve::flat(n);
    auto u = oracles::random_field(n, 10, 17);
    CHECK(op_T(flat, u).max_abs() <= 1e-14);
    CHECK(op_T(oracles::regression_curve(n), SpectralField::zeros(n)).max_abs() == 0.0);
}

TEST_CASE("op_T has mean zero on random amplitudes") {
    const int n = 128;
    auto c = oracles::regression_curve(n);
    auto cw = oracles::wavy_curve(n);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto u = oracles::random_field(n, 20, 100 + seed);
        CHECK(std::abs(op_T(c, u).mean()) <= 1e-8);
        CHECK(std::abs(op_T(cw, u).mean()) <= 1e-8);
    }
}

TEST_CASE("adjointness against the dense-matrix oracle") {
    const int n = 128;
    for (auto curve : {oracles::regression_curve(n), oracles::wavy_curve(n)}) {
        const Eigen::MatrixXd m = assemble_T_matrix(curve);
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            auto u = oracles::random_field(n, 20, 200 + seed);
            auto v = oracles::random_field(n, 20, 300 + seed);
            auto tu = op_T(curve, u);
            auto tsv = op_T_adjoint(curve, v);
            double lhs = 0.0, rhs = 0.0;
            for (int j = 0; j < n; ++j) {
                lhs += tu[j] * v[j];
                rhs += u[j] * tsv[j];
            }
            lhs *= curve.spacing();
            rhs *= curve.spacing();
            CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(std::abs(lhs), 1e-12));

            // oracle: discrete adjoint of the assembled matrix
            Eigen::VectorXd ve(n);
            for (int j = 0; j < n; ++j) ve(j) = v[j];
            const Eigen::VectorXd mtv = m.transpose() * ve;
            double dmax = 0.0;
            for (int j = 0; j < n; ++j) dmax = std::max(dmax, std::abs(mtv(j) - tsv[j]));
            CHECK(dmax <= 1e-12);
        }
    }
}

TEST_CASE("op_T_adjoint: zero in, zero out; range consistency with mean-zero T") {
    const int n = 128;
    auto c = oracles::regression_curve(n);
    CHECK(op_T_adjoint(c, SpectralField::zeros(n)).max_abs() == 0.0);
    // <T* u, 1> = <u, T 1> and T has mean-zero range; quadrature tolerance
    auto u = oracles::random_field(n, 15, 404);
    auto t1 = op_T(c, SpectralField::constant(n, 1.0));
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += u[j] * t1[j];
    CHECK(std::abs(op_T_adjoint(c, u).mean() * 2.0 * kPi -
                   inner * c.spacing()) <= 1e-10);
}

TEST_CASE("assembled matrix reproduces op_T to 1e-12") {
    const int n = 64;
    auto c = oracles::wavy_curve(n);
    const Eigen::MatrixXd m = assemble_T_matrix(c);
    for (std::uint64_t seed : {9u, 10u}) {
        auto u = oracles::random_field(n, 20, seed);
        auto tu = op_T(c, u);
        Eigen::VectorXd ue(n);
        for (int j = 0; j < n; ++j) ue(j) = u[j];
        const Eigen::VectorXd mu = m * ue;
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(mu(j) - tu[j]) <= 1e-12);
    }
    // column-by-column application agrees with the analytic assembly
    for (int col : {0, 7, 33}) {
        std::vector<double> e(n, 0.0);
        e[col] = 1.0;
        auto te = op_T(c, SpectralField(std::move(e)));
        for (int j = 0; j < n; ++j)
            CHECK(std::abs(m(j, col) - te[j]) <= 1e-14);
    }
    CHECK_THROWS_AS(assemble_T_matrix(Curve::flat(64), 32), std::invalid_argument);
}

TEST_CASE("spectral radius of T matrix below 1") {
    const int n = 128;
    for (auto curve : {Curve::flat(n), oracles::regression_curve(n)}) {
        const Eigen::MatrixXd m = assemble_T_matrix(curve);
        const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(m, false).eigenvalues();
        double rho = 0.0;
        for (int j = 0; j < n; ++j) rho = std::max(rho, std::abs(ev(j)));
        CHECK(rho < 1.0);
    }
}

TEST_CASE("kernel decompositions: flat A1 vanishes, boundedness on the regression curve") {
    const int n = 256;
    auto flat = Curve::flat(n);
    auto w = SpectralField::from_function(n, [](double a) { return std::cos(a); });
    for (int j : {1, 3, 11}) {
        auto kd = kernel_decompositions(flat, w, j, j - 1);
        CHECK(kd.A1 == doctest::Approx(0.0).epsilon(1e-14));
    }

    // beta -> 0 along the grid: |A2| stays bounded (the 1/beta parts cancel)
    double prev = 0.0;
    for (int nn : {64, 256, 1024, 4096}) {
        auto c = oracles::regression_curve(nn);
        auto wn = SpectralField::from_function(nn, [](double a) { return std::cos(a); });
        double a2max = 0.0, cbeta = 0.0;
        const double beta = 2.0 * kPi / nn;
        for (int i = 0; i < nn; ++i) {
            auto kd = kernel_decompositions(c, wn, i, (i + nn - 1) % nn);
            a2max = std::max(a2max, std::abs(kd.A2));
            cbeta = std::max(cbeta, kd.C_norm * beta);
        }
        CHECK(std::isfinite(a2max));
        CHECK(a2max < 1.0);  // the lemma-scale bound on this curve
        CHECK(cbeta < 10.0); // |C| * |beta| bounded
        prev = a2max;
    }
    (void)prev;
}
