#include "muskat/curve.hpp"

#include "muskat/parallel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;
}

Curve::Curve(SpectralField q1, SpectralField q2)
    : q1_(std::move(q1)),
      q2_(std::move(q2)),
      dz1_(SpectralField::constant(q1_.size(), 1.0) + spectral_derivative(q1_, 1)),
      dz2_(spectral_derivative(q2_, 1)) {
    if (q1_.size() != q2_.size())
        throw std::invalid_argument("Curve: q1/q2 size mismatch");
}

Curve Curve::flat(int n) {
    return Curve(SpectralField::zeros(n), SpectralField::zeros(n));
}

std::pair<SpectralField, SpectralField> tangent(const Curve& c) {
    return {c.dz1(), c.dz2()};
}

ArcChordReport arc_chord(const Curve& c, int n_beta) {
    const int n = c.size();
    if (n_beta < n) throw std::invalid_argument("arc_chord: n_beta must be >= N");

    std::vector<double> diag(n);
    for (int j = 0; j < n; ++j) diag[j] = 1.0 / c.speed2(j);

    struct RowMax {
        double value = 0.0;
        int j = 0;
        bool degenerate = false;
    };
    std::vector<RowMax> rows(n_beta);
    const double hb = 2.0 * kPi / n_beta;

    parallel_for(n_beta, [&](std::size_t m) {
        const double beta = -kPi + (double(m) + 0.5) * hb;
        // z samples at alpha_j - beta via a spectral phase shift.
        const SpectralField q1s = c.q1().shifted(beta);
        const SpectralField q2s = c.q2().shifted(beta);
        RowMax best;
        for (int j = 0; j < n; ++j) {
            const double d1 = 0.5 * (beta + c.q1()[j] - q1s[j]);
            const double d2 = 0.5 * (c.q2()[j] - q2s[j]);
            const double t1 = std::tan(d1);
            const double t2 = std::tanh(d2);
            const double denom = t1 * t1 + t2 * t2;
            if (denom == 0.0) {
                best.degenerate = true;
                best.j = j;
                best.value = std::numeric_limits<double>::infinity();
                break;
            }
            const double F = (beta * beta / 4.0) / denom;
            if (F > best.value) {
                best.value = F;
                best.j = j;
            }
        }
        rows[m] = best;
    });

    ArcChordReport rep{0.0, SpectralField(std::move(diag)), 0.0, 0.0, false};
    for (int j = 0; j < n; ++j) {
        if (rep.diag_F[j] > rep.sup_F) {
            rep.sup_F = rep.diag_F[j];
            rep.argmax_alpha = c.node(j);
            rep.argmax_beta = 0.0;
        }
    }
    for (int m = 0; m < n_beta; ++m) {
        const RowMax& r = rows[m];
        if (r.degenerate) {
            rep.degenerate = true;
            rep.sup_F = std::numeric_limits<double>::infinity();
            rep.argmax_alpha = c.node(r.j);
            rep.argmax_beta = -kPi + (double(m) + 0.5) * hb;
            return rep;
        }
        if (r.value > rep.sup_F) {
            rep.sup_F = r.value;
            rep.argmax_alpha = c.node(r.j);
            rep.argmax_beta = -kPi + (double(m) + 0.5) * hb;
        }
    }
    return rep;
}

double tangent_speed_deviation(const Curve& c) {
    const int n = c.size();
    double mean = 0.0;
    for (int j = 0; j < n; ++j) mean += c.speed2(j);
    mean /= n;
    double dev = 0.0;
    for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(c.speed2(j) - mean));
    return dev / mean;
}

Curve reparametrize_uniform(const Curve& c) {
    const int n = c.size();

    std::vector<double> sp(n);
    for (int j = 0; j < n; ++j) sp[j] = std::sqrt(c.speed2(j));
    const SpectralField speed(std::move(sp));
    const double length = 2.0 * kPi * speed.mean();
    const SpectralField srest = periodic_antiderivative(speed);

    // arclength from -pi: s(a) = mean * (a + pi) + srest(a) - srest(-pi)
    const double s0 = srest.interp(-kPi);
    auto arclen = [&](double a) {
        return speed.mean() * (a + kPi) + srest.interp(a) - s0;
    };

    const double tol = 1e-13 * std::max(1.0, length);
    std::vector<double> alpha_star(n);
    double worst = 0.0;
    bool failed = false;
    for (int j = 0; j < n; ++j) {
        const double target = j * length / n;
        double a = c.node(j);
        double res = arclen(a) - target;
        int it = 0;
        while (std::abs(res) > tol && it < 50) {
            a -= res / speed.interp(a);
            res = arclen(a) - target;
            ++it;
        }
        if (std::abs(res) > tol) {
            failed = true;
            worst = std::max(worst, std::abs(res));
        }
        alpha_star[j] = a;
    }
    if (failed)
        throw std::runtime_error(
            "reparametrize_uniform: Newton did not converge, worst residual " +
            std::to_string(worst));

    std::vector<double> nq1(n), nq2(n);
    for (int j = 0; j < n; ++j) {
        nq1[j] = alpha_star[j] + c.q1().interp(alpha_star[j]) - c.node(j);
        nq2[j] = c.q2().interp(alpha_star[j]);
    }
    return Curve(SpectralField(std::move(nq1)), SpectralField(std::move(nq2)));
}

} // namespace muskat
