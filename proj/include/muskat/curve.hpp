#ifndef MUSKAT_CURVE_HPP
#define MUSKAT_CURVE_HPP

#include "muskat/spectral_field.hpp"

#include <utility>

namespace muskat {

/// The 2 pi periodic interface z(a) = (a + q1(a), q2(a)). Storing the
/// periodic parts (q1, q2) makes z1(a) - a periodic by construction, and
/// mode 0 of d/da q1 vanishes, so the discrete integral of d/da z1 is exactly
/// 2 pi. Tangent fields are precomputed; the object is immutable.
class Curve {
public:
    Curve(SpectralField q1, SpectralField q2);

    static Curve flat(int n);

    int size() const { return q1_.size(); }
    const SpectralField& q1() const { return q1_; }
    const SpectralField& q2() const { return q2_; }

    double node(int j) const { return q1_.node(j); }
    double spacing() const { return q1_.spacing(); }
    double z1(int j) const { return node(j) + q1_[j]; }
    double z2(int j) const { return q2_[j]; }

    /// d/da z = (1 + d/da q1, d/da q2).
    const SpectralField& dz1() const { return dz1_; }
    const SpectralField& dz2() const { return dz2_; }

    /// |d/da z|^2 at node j.
    double speed2(int j) const { return dz1_[j] * dz1_[j] + dz2_[j] * dz2_[j]; }

private:
    SpectralField q1_, q2_;
    SpectralField dz1_, dz2_;
};

std::pair<SpectralField, SpectralField> tangent(const Curve& c);

struct ArcChordReport {
    double sup_F = 0.0;            // +inf sentinel on a degenerate pair
    SpectralField diag_F;          // F(a, 0) = 1 / |d/da z|^2
    double argmax_alpha = 0.0;
    double argmax_beta = 0.0;
    bool degenerate = false;
};

/// Evaluates the arc-chord function F on the (alpha_j, beta_m) lattice where
/// beta runs over the uniform grid of n_beta points shifted by half a step
/// (so beta = 0 is never sampled), plus the analytic diagonal. A vanishing
/// denominator (self-intersection at lattice resolution) is reported through
/// the +inf sentinel rather than an exception.
ArcChordReport arc_chord(const Curve& c, int n_beta);

/// max_a | |d/da z|^2 - A | / A with A the grid mean of |d/da z|^2.
double tangent_speed_deviation(const Curve& c);

/// Resamples the same geometric curve so that |d/da z| is constant: the
/// cumulative arclength is computed spectrally and inverted by Newton
/// iteration on the trigonometric interpolants.
/// Throws if Newton fails to reach tolerance within 50 iterations.
Curve reparametrize_uniform(const Curve& c);

} // namespace muskat

#endif
