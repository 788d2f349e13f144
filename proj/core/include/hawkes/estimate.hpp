#pragma once

#include <string>
#include <vector>

#include "hawkes/basis.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/statespace.hpp"

namespace hawkes {

/// Memory regressor chi(t) = int_0^{t-} q(t - u) dN_u sampled at the events
/// and at the horizon, plus its time average.
struct RegressorTrajectory {
    std::vector<Vector> chi_pre;   // chi(t_r), left limit; chi_pre[0] = 0
    std::vector<Vector> chi_post;  // chi(t_r+) = chi(t_r) + B
    Vector chi_T;                  // chi(T)
    Vector chi_bar;                // (1/T) int_0^T chi(t) dt
    double lambda_hat = 0.0;       // n / T
    double horizon = 0.0;
};

/// Empirical quantities entering the centered least-squares problem.
struct GramSystem {
    Matrix R_hat;   // empirical Gram matrix (covariance of chi over [0, T])
    Vector s_hat;   // empirical cross-covariance
    double lambda_hat = 0.0;
    Vector chi_bar;
    Matrix D_T;     // boundary term of the Lyapunov identity
    double horizon = 0.0;
    std::size_t n_events = 0;
};

struct EstimateDiagnostics {
    double condition_number = 0.0;
    std::size_t n_events = 0;
    double horizon = 0.0;
    double residual = 0.0;  // ||R alpha - s|| / ||s||
    std::vector<std::string> warnings;
};

struct HawkesEstimate {
    Vector alpha_hat;
    double c_hat = 0.0;
    double gamma_hat = 0.0;
    double lambda_hat = 0.0;
    KernelBasis basis;
    EstimateDiagnostics diagnostics;

    /// Fitted kernel alpha_hat^T q(t).
    double kernel_at(double t) const;
};

RegressorTrajectory propagate_regressors(const EventStream& stream,
                                         const StateSpaceModel& model);

Vector empirical_cross_covariance(const RegressorTrajectory& traj);

/// Gram matrix from the Lyapunov identity
/// A R + R A^T + Lambda B B^T + B s^T + s B^T + D_T = 0.
/// Throws DegeneracyError unless R is positive definite.
GramSystem empirical_gram(const RegressorTrajectory& traj, const StateSpaceModel& model,
                          const Vector& s_hat);

HawkesEstimate cls_estimate(const GramSystem& gram, const KernelBasis& basis);

HawkesEstimate estimate_from_stream(const EventStream& stream, const KernelBasis& basis);

/// Centered LS objective 0.5 a^T R a - a^T s.
double cls_objective(const GramSystem& gram, const Vector& alpha);

/// Smallest eigenvalue ratio below which a symmetric matrix is treated as
/// not positive definite.
inline constexpr double kPositiveDefiniteTol = 1e-12;

}  // namespace hawkes
