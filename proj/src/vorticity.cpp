#include "muskat/vorticity.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace muskat {

namespace {

SpectralField apply_D_eps(const SpectralField& f, double eps) {
    return eps > 0.0 ? double_mollify(f, eps) : f;
}

VorticitySolve solve_impl(const Curve& c, const FluidParams& p, double eps,
                          SolveMethod method, double tol) {
    p.validate();
    const double amu = p.atwood();
    const int n = c.size();

    const SpectralField rhs = -p.gravity_coeff() * apply_D_eps(c.dz2(), eps);

    auto apply_op = [&](const SpectralField& u) {
        // A_mu (D_eps) T u; skipping the quadrature on the zero field keeps
        // flat-interface stepping cheap.
        if (amu == 0.0 || u.max_abs() == 0.0) return SpectralField::zeros(n);
        return amu * apply_D_eps(op_T(c, u), eps);
    };

    if (method == SolveMethod::neumann) {
        if (amu == 0.0) return {rhs, 0.0, SolveMethod::neumann, 0, false};
        SpectralField w = rhs;
        int count = 0;
        while (count < 500) {
            SpectralField wn = rhs - apply_op(w);
            const double res = (w - wn).max_abs(); // residual of the iterate w
            if (res < tol) return {std::move(w), res, SolveMethod::neumann, count, false};
            w = std::move(wn);
            ++count;
        }
        VorticitySolve dense = solve_impl(c, p, eps, SolveMethod::dense, tol);
        dense.fell_back = true;
        return dense;
    }

    Eigen::MatrixXd m = assemble_T_matrix(c);
    if (eps > 0.0) {
        // Columns are grid fields; mollify them in place.
        for (int j = 0; j < n; ++j) {
            std::vector<double> col(n);
            for (int i = 0; i < n; ++i) col[i] = m(i, j);
            const SpectralField mc = double_mollify(SpectralField(std::move(col)), eps);
            for (int i = 0; i < n; ++i) m(i, j) = mc[i];
        }
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + amu * m;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    // A vanishing pivot signals a numerically degenerate configuration,
    // contradicting the solvability of the continuous equation; the failed
    // curve is worth reporting upstream.
    if (!(std::abs(lu.determinant()) > 0.0))
        throw std::runtime_error("solve_vorticity: dense factorization singular");

    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b(i) = rhs[i];
    const Eigen::VectorXd x = lu.solve(b);
    std::vector<double> wv(n);
    for (int i = 0; i < n; ++i) wv[i] = x(i);
    VorticitySolve out{SpectralField(std::move(wv)), 0.0, SolveMethod::dense, 0, false};
    out.residual = (out.w + apply_op(out.w) - rhs).max_abs();
    return out;
}

} // namespace

VorticitySolve solve_vorticity(const Curve& c, const FluidParams& p,
                               SolveMethod method, double tol) {
    return solve_impl(c, p, 0.0, method, tol);
}

VorticitySolve solve_vorticity_mollified(const Curve& c, const FluidParams& p,
                                         double eps, SolveMethod method, double tol) {
    if (eps <= 0.0)
        throw std::invalid_argument("solve_vorticity_mollified: eps must be > 0");
    return solve_impl(c, p, eps, method, tol);
}

std::vector<double> resolvent_sweep(const Curve& c, const std::vector<double>& xi_list) {
    for (double xi : xi_list)
        if (std::abs(xi) > 1.0)
            throw std::invalid_argument("resolvent_sweep: |xi| must be <= 1");
    const Eigen::MatrixXd m = assemble_T_matrix(c);
    const int n = c.size();
    std::vector<double> out;
    out.reserve(xi_list.size());
    for (double xi : xi_list) {
        const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - xi * m;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const double smax = svd.singularValues()(0);
        const double smin = svd.singularValues()(n - 1);
        out.push_back(smin > 0.0 ? smax / smin
                                 : std::numeric_limits<double>::infinity());
    }
    return out;
}

} // namespace muskat
