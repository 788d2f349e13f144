#include "hawkes/estimate.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "hawkes/errors.hpp"

namespace hawkes {

double HawkesEstimate::kernel_at(double t) const { return alpha_hat.dot(eval_basis(t, basis)); }

RegressorTrajectory propagate_regressors(const EventStream& stream,
                                         const StateSpaceModel& model) {
    if (stream.empty()) {
        throw ParameterError("estimation needs at least one observed event");
    }
    const auto& times = stream.times();
    const double T = stream.horizon();
    if (times.back() > T) throw ParameterError("last event time exceeds horizon T");

    const int P = model.order();
    const auto n = times.size();
    RegressorTrajectory traj;
    traj.chi_pre.reserve(n);
    traj.chi_post.reserve(n);

    Vector chi = Vector::Zero(P);
    for (std::size_t r = 0; r < n; ++r) {
        if (r > 0) chi = expm_apply(model, times[r] - times[r - 1], traj.chi_post.back());
        traj.chi_pre.push_back(chi);
        traj.chi_post.push_back(chi + model.B());
    }
    traj.chi_T = expm_apply(model, T - times.back(), traj.chi_post.back());
    // Integrating d chi = A chi dt + B dN over [0, T] with chi(0) = 0.
    traj.chi_bar = solve_A(model, traj.chi_T - static_cast<double>(n) * model.B()) / T;
    traj.lambda_hat = static_cast<double>(n) / T;
    traj.horizon = T;
    return traj;
}

Vector empirical_cross_covariance(const RegressorTrajectory& traj) {
    Vector sum = Vector::Zero(traj.chi_bar.size());
    for (const auto& chi : traj.chi_pre) sum += chi;
    return sum / traj.horizon - traj.lambda_hat * traj.chi_bar;
}

namespace {

struct Spectrum {
    double min;
    double max;
};

Spectrum symmetric_spectrum(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(M, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

}  // namespace

GramSystem empirical_gram(const RegressorTrajectory& traj, const StateSpaceModel& model,
                          const Vector& s_hat) {
    const double T = traj.horizon;
    const Vector& B = model.B();
    const Vector& chi_bar = traj.chi_bar;
    const Vector tail = traj.chi_T - chi_bar;

    GramSystem g;
    g.D_T = (chi_bar * chi_bar.transpose() - tail * tail.transpose()) / T;
    Matrix Q = traj.lambda_hat * B * B.transpose() + B * s_hat.transpose() +
               s_hat * B.transpose() + g.D_T;
    Q = 0.5 * (Q + Q.transpose()).eval();

    g.R_hat = solve_lyapunov(model, Q);
    g.s_hat = s_hat;
    g.lambda_hat = traj.lambda_hat;
    g.chi_bar = chi_bar;
    g.horizon = T;
    g.n_events = traj.chi_pre.size();

    const auto spec = symmetric_spectrum(g.R_hat);
    if (!(spec.max > 0.0) || spec.min <= kPositiveDefiniteTol * spec.max) {
        std::ostringstream msg;
        msg << "empirical Gram matrix is not positive definite (eigenvalues in [" << spec.min
            << ", " << spec.max << "]); use a longer observation window or a smaller order P";
        throw DegeneracyError(msg.str());
    }
    return g;
}

double cls_objective(const GramSystem& gram, const Vector& alpha) {
    return 0.5 * alpha.dot(gram.R_hat * alpha) - alpha.dot(gram.s_hat);
}

HawkesEstimate cls_estimate(const GramSystem& gram, const KernelBasis& basis) {
    if (gram.R_hat.rows() != basis.order()) {
        throw ParameterError("Gram system order does not match basis order");
    }
    const auto spec = symmetric_spectrum(gram.R_hat);
    if (!(spec.max > 0.0) || spec.min <= kPositiveDefiniteTol * spec.max) {
        throw DegeneracyError("empirical Gram matrix is not positive definite");
    }
    Eigen::LLT<Matrix> llt(gram.R_hat);
    if (llt.info() != Eigen::Success) {
        throw DegeneracyError("Cholesky factorization of the Gram matrix failed");
    }

    Vector alpha = llt.solve(gram.s_hat);
    const double c_hat = gram.lambda_hat - gram.chi_bar.dot(alpha);
    const double gamma_hat = basis_mass(basis).dot(alpha);

    EstimateDiagnostics diag;
    diag.condition_number = spec.max / spec.min;
    diag.n_events = gram.n_events;
    diag.horizon = gram.horizon;
    const double s_norm = gram.s_hat.norm();
    const double r_norm = (gram.R_hat * alpha - gram.s_hat).norm();
    diag.residual = s_norm > 0.0 ? r_norm / s_norm : r_norm;

    if (gamma_hat >= 1.0) {
        diag.warnings.push_back("estimated branching ratio >= 1 (non-stationary fit)");
    }
    if (c_hat <= 0.0) {
        diag.warnings.push_back("estimated background rate is not positive");
    }
    if (diag.condition_number > 1e12) {
        diag.warnings.push_back("Gram matrix is severely ill-conditioned");
    }
    // Unconstrained fit: the kernel may change sign.
    const double step = 0.01 / basis.beta();
    for (int i = 0; i <= 5000; ++i) {
        if (alpha.dot(eval_basis(i * step, basis)) < 0.0) {
            diag.warnings.push_back("fitted kernel takes negative values");
            break;
        }
    }

    return HawkesEstimate{std::move(alpha), c_hat, gamma_hat, gram.lambda_hat, basis,
                          std::move(diag)};
}

HawkesEstimate estimate_from_stream(const EventStream& stream, const KernelBasis& basis) {
    const StateSpaceModel model(basis);
    const auto traj = propagate_regressors(stream, model);
    const Vector s_hat = empirical_cross_covariance(traj);
    const auto gram = empirical_gram(traj, model, s_hat);
    return cls_estimate(gram, basis);
}

}  // namespace hawkes
