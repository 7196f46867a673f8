#ifndef MUSKAT_DYNAMICS_HPP
#define MUSKAT_DYNAMICS_HPP

#include "muskat/curve.hpp"
#include "muskat/kernels.hpp"
#include "muskat/spectral_field.hpp"
#include "muskat/vorticity.hpp"

#include <string>
#include <vector>

namespace muskat {

enum class TimeScheme { rk4, euler };

/// Numerical knobs of a run. dt = 0 picks the stability-safe default
/// 0.5 / (max(1, |G|) n): the linearized operator is first order in Lambda,
/// so explicit stepping only needs dt ~ 1/(G n).
struct SimConfig {
    int n = 256;
    double dt = 0.0;
    double t_end = 0.1;
    TimeScheme scheme = TimeScheme::rk4;
    double eps = 0.0;   // vorticity mollification (0 = off)
    double delta = 0.0; // kernel regularization (0 = off)
    int cadence = 0;    // snapshot every this many steps (0 = final only)
    double solver_tol = 1e-10;
    SolveMethod solver = SolveMethod::neumann;
    double arc_chord_cap = 1e6; // halt when sup_F exceeds cap * initial
    int tracked_mode = 1;       // q2 mode amplitude logged per step

    double resolved_dt(const FluidParams& p) const;
    int step_count(const FluidParams& p) const;
    void validate() const;
};

struct SimState {
    Curve curve;
    SpectralField w;
    double t = 0.0;
    FluidParams params;
    double eps = 0.0;
    double delta = 0.0;
    double solve_residual = 0.0;
};

/// Builds a state at time t from a curve: solves the (mollified, if eps > 0)
/// vorticity equation and stores the residual.
SimState make_state(Curve c, const FluidParams& p, double eps, double delta,
                    double t = 0.0, SolveMethod method = SolveMethod::neumann,
                    double tol = 1e-10);

/// Tangential reparametrization velocity c(a) for a given interface velocity
/// field br. Both integrals of the defining formula are evaluated spectrally:
/// the linear-in-alpha parts of the two terms cancel identically, which makes
/// c periodic with c(-pi) = 0 exactly at the first node.
SpectralField tangential_velocity(const Curve& c, const BrVelocity& br);

/// A'(t)/(2A(t)) = (1/(2 pi A)) int dz . d(br) da; b(t) is twice this.
double log_stretch_rate(const Curve& c, const BrVelocity& br);

struct RhsEval {
    BrVelocity velocity; // z_t samples
    BrVelocity br;       // Birkhoff-Rott part (delta-regularized if delta > 0)
    SpectralField c;     // tangential correction
    VorticitySolve solve;
};

/// Full right-hand side z_t = BR + c dz. The mollifier acts inside the
/// amplitude equation only; the delta regularization acts on the velocity
/// kernel only.
RhsEval eval_rhs(const Curve& curve, const FluidParams& p, double eps, double delta,
                 SolveMethod method = SolveMethod::neumann, double tol = 1e-10);

/// Convenience wrapper matching the state.
RhsEval rhs(const SimState& s, SolveMethod method = SolveMethod::neumann,
            double tol = 1e-10);

struct StepResult {
    SimState state; // advanced state, or the input state on failure
    bool ok = true;
    std::string error;
};

/// One explicit step; the amplitude is re-solved at every stage. Failures
/// (solver, non-finite values) leave the input state untouched and carry the
/// reason.
StepResult step(const SimState& s, double dt, TimeScheme scheme,
                SolveMethod method = SolveMethod::neumann, double tol = 1e-10);

/// One row of the per-step diagnostics series.
struct StepDiagnostics {
    double t = 0.0;
    double sup_F = 0.0;
    double min_sigma = 0.0;
    double h3_norm = 0.0;
    double tangent_dev = 0.0;
    double residual = 0.0;
    double b_t = 0.0;
    double mode_amp = 0.0;
};

struct RunResult {
    std::vector<SimState> snapshots;
    std::vector<StepDiagnostics> series; // one row per step, including t = 0
    std::string breakdown;               // empty when t_end was reached
    bool stable_run = false;             // min sigma > 0 at t = 0
    double sup_F0 = 0.0;
    double max_displacement = 0.0; // sup over steps of |q - q(0)|_inf
    double q1_mean_drift = 0.0;
    double lambda_min_overall = 0.0;
    int steps_taken = 0;
};

/// Steps the (reparametrized) initial curve to t_end or breakdown. Halts,
/// never silently, when the arc-chord supremum exceeds its cap, when the
/// Rayleigh-Taylor sign is lost on a run that started stable, on a pointwise
/// Lambda-inequality violation, or on a solver failure.
RunResult run(const SimConfig& cfg, const FluidParams& p, const Curve& initial);

} // namespace muskat

#endif
