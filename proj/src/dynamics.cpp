#include "muskat/dynamics.hpp"

#include "muskat/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace muskat {

namespace {
constexpr double kPi = std::numbers::pi;
}

double SimConfig::resolved_dt(const FluidParams& p) const {
    if (dt > 0.0) return dt;
    return 0.5 / (std::max(1.0, std::abs(p.gravity_coeff())) * n);
}

int SimConfig::step_count(const FluidParams& p) const {
    return static_cast<int>(std::llround(t_end / resolved_dt(p)));
}

void SimConfig::validate() const {
    if (n < 16 || n % 2 != 0)
        throw std::invalid_argument("SimConfig: n must be even and >= 16");
    if (dt < 0.0) throw std::invalid_argument("SimConfig: dt must be >= 0");
    if (t_end < 0.0) throw std::invalid_argument("SimConfig: t_end must be >= 0");
    if (eps < 0.0 || delta < 0.0)
        throw std::invalid_argument("SimConfig: eps and delta must be >= 0");
    if (cadence < 0) throw std::invalid_argument("SimConfig: cadence must be >= 0");
    if (solver_tol <= 0.0) throw std::invalid_argument("SimConfig: solver_tol must be > 0");
    if (tracked_mode < 0 || tracked_mode > n / 2)
        throw std::invalid_argument("SimConfig: tracked_mode out of range");
}

SimState make_state(Curve c, const FluidParams& p, double eps, double delta,
                    double t, SolveMethod method, double tol) {
    VorticitySolve vs = eps > 0.0 ? solve_vorticity_mollified(c, p, eps, method, tol)
                                  : solve_vorticity(c, p, method, tol);
    return SimState{std::move(c), std::move(vs.w), t, p, eps, delta, vs.residual};
}

SpectralField tangential_velocity(const Curve& c, const BrVelocity& br) {
    const int n = c.size();
    const SpectralField dbx = spectral_derivative(br.x, 1);
    const SpectralField dby = spectral_derivative(br.y, 1);
    std::vector<double> g(n);
    for (int j = 0; j < n; ++j)
        g[j] = (c.dz1()[j] * dbx[j] + c.dz2()[j] * dby[j]) / c.speed2(j);
    // c(a) = (a+pi)/(2pi) int g - int_{-pi}^a g; the mean parts cancel and
    // only the periodic antiderivative of g - mean(g) survives.
    const SpectralField anti = periodic_antiderivative(SpectralField(std::move(g)));
    std::vector<double> cv(n);
    for (int j = 0; j < n; ++j) cv[j] = anti[0] - anti[j];
    return SpectralField(std::move(cv));
}

double log_stretch_rate(const Curve& c, const BrVelocity& br) {
    const int n = c.size();
    const SpectralField dbx = spectral_derivative(br.x, 1);
    const SpectralField dby = spectral_derivative(br.y, 1);
    double a_mean = 0.0, integ = 0.0;
    for (int j = 0; j < n; ++j) {
        a_mean += c.speed2(j);
        integ += c.dz1()[j] * dbx[j] + c.dz2()[j] * dby[j];
    }
    a_mean /= n;
    integ *= c.spacing();
    return integ / (2.0 * kPi * a_mean);
}

RhsEval eval_rhs(const Curve& curve, const FluidParams& p, double eps, double delta,
                 SolveMethod method, double tol) {
    VorticitySolve vs = eps > 0.0
                            ? solve_vorticity_mollified(curve, p, eps, method, tol)
                            : solve_vorticity(curve, p, method, tol);
    BrVelocity br = delta > 0.0 ? birkhoff_rott_delta(curve, vs.w, delta)
                                : birkhoff_rott(curve, vs.w);
    SpectralField c = tangential_velocity(curve, br);
    const int n = curve.size();
    std::vector<double> vx(n), vy(n);
    for (int j = 0; j < n; ++j) {
        vx[j] = br.x[j] + c[j] * curve.dz1()[j];
        vy[j] = br.y[j] + c[j] * curve.dz2()[j];
    }
    return RhsEval{{SpectralField(std::move(vx)), SpectralField(std::move(vy))},
                   std::move(br), std::move(c), std::move(vs)};
}

RhsEval rhs(const SimState& s, SolveMethod method, double tol) {
    return eval_rhs(s.curve, s.params, s.eps, s.delta, method, tol);
}

StepResult step(const SimState& s, double dt, TimeScheme scheme,
                SolveMethod method, double tol) {
    if (dt <= 0.0) throw std::invalid_argument("step: dt must be > 0");
    try {
        const Curve& c0 = s.curve;
        Curve next = [&] {
            if (scheme == TimeScheme::euler) {
                RhsEval k1 = eval_rhs(c0, s.params, s.eps, s.delta, method, tol);
                return Curve(c0.q1() + dt * k1.velocity.x, c0.q2() + dt * k1.velocity.y);
            }
            RhsEval k1 = eval_rhs(c0, s.params, s.eps, s.delta, method, tol);
            Curve c2(c0.q1() + 0.5 * dt * k1.velocity.x, c0.q2() + 0.5 * dt * k1.velocity.y);
            RhsEval k2 = eval_rhs(c2, s.params, s.eps, s.delta, method, tol);
            Curve c3(c0.q1() + 0.5 * dt * k2.velocity.x, c0.q2() + 0.5 * dt * k2.velocity.y);
            RhsEval k3 = eval_rhs(c3, s.params, s.eps, s.delta, method, tol);
            Curve c4(c0.q1() + dt * k3.velocity.x, c0.q2() + dt * k3.velocity.y);
            RhsEval k4 = eval_rhs(c4, s.params, s.eps, s.delta, method, tol);
            const double w6 = dt / 6.0;
            SpectralField q1 = c0.q1() + w6 * (k1.velocity.x + 2.0 * k2.velocity.x +
                                               2.0 * k3.velocity.x + k4.velocity.x);
            SpectralField q2 = c0.q2() + w6 * (k1.velocity.y + 2.0 * k2.velocity.y +
                                               2.0 * k3.velocity.y + k4.velocity.y);
            return Curve(std::move(q1), std::move(q2));
        }();
        SimState out = make_state(std::move(next), s.params, s.eps, s.delta,
                                  s.t + dt, method, tol);
        return {std::move(out), true, {}};
    } catch (const std::exception& e) {
        return {s, false, e.what()};
    }
}

RunResult run(const SimConfig& cfg, const FluidParams& p, const Curve& initial) {
    cfg.validate();
    p.validate();
    if (initial.size() != cfg.n)
        throw std::invalid_argument("run: initial curve size does not match config n");

    const double dt = cfg.resolved_dt(p);
    const int nsteps = cfg.step_count(p);
    const int cadence = cfg.cadence > 0 ? cfg.cadence : std::max(1, nsteps);

    RunResult out;
    SimState state = make_state(reparametrize_uniform(initial), p, cfg.eps, cfg.delta,
                                0.0, cfg.solver, cfg.solver_tol);
    const SpectralField q1_0 = state.curve.q1();
    const SpectralField q2_0 = state.curve.q2();
    const double q1_mean0 = q1_0.mean();
    out.lambda_min_overall = std::numeric_limits<double>::max();

    auto observe = [&](const SimState& s) -> StepDiagnostics {
        StepDiagnostics d;
        d.t = s.t;
        d.sup_F = arc_chord(s.curve, s.curve.size()).sup_F;
        d.min_sigma = min_sigma(s.curve, s.w, p).value;
        d.h3_norm = std::hypot(sobolev_norm(s.curve.q1(), 3), sobolev_norm(s.curve.q2(), 3));
        d.tangent_dev = tangent_speed_deviation(s.curve);
        d.residual = s.solve_residual;
        d.b_t = 2.0 * log_stretch_rate(s.curve, birkhoff_rott(s.curve, s.w));
        d.mode_amp = s.curve.q2().mode_amplitude(cfg.tracked_mode);

        const double lmin = std::min(lambda_pointwise_check(s.w).min_value,
                                     lambda_pointwise_check(s.curve.q2()).min_value);
        out.lambda_min_overall = std::min(out.lambda_min_overall, lmin);
        out.max_displacement =
            std::max(out.max_displacement,
                     std::max((s.curve.q1() - q1_0).max_abs(),
                              (s.curve.q2() - q2_0).max_abs()));
        out.q1_mean_drift = std::max(out.q1_mean_drift,
                                     std::abs(s.curve.q1().mean() - q1_mean0));
        return d;
    };

    StepDiagnostics d0 = observe(state);
    out.sup_F0 = d0.sup_F;
    out.stable_run = d0.min_sigma > 0.0;
    out.series.push_back(d0);
    out.snapshots.push_back(state);

    for (int k = 1; k <= nsteps; ++k) {
        StepResult sr = step(state, dt, cfg.scheme, cfg.solver, cfg.solver_tol);
        if (!sr.ok) {
            out.breakdown = "step_failure: " + sr.error;
            break;
        }
        state = std::move(sr.state);
        StepDiagnostics d = observe(state);
        out.series.push_back(d);
        out.steps_taken = k;
        if (k % cadence == 0 || k == nsteps) out.snapshots.push_back(state);

        if (!std::isfinite(d.sup_F) || d.sup_F > cfg.arc_chord_cap * out.sup_F0) {
            out.breakdown = "arc_chord_blowup";
            break;
        }
        if (out.stable_run && d.min_sigma <= 0.0) {
            out.breakdown = "rayleigh_taylor_sign_lost";
            break;
        }
        if (out.lambda_min_overall < -1e-10) {
            out.breakdown = "lambda_inequality_violation";
            break;
        }
    }
    return out;
}

} // namespace muskat
