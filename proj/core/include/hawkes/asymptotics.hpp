#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hawkes/basis.hpp"
#include "hawkes/statespace.hpp"

namespace hawkes {

/// Second-order description of a stationary Hawkes process through the
/// Laplace transform of its kernel.
///
/// The covariance-density spectrum is C(w) = Lambda / |1 - phi_bar(i w)|^2.
class SpectralModel {
public:
    using Transform = std::function<std::complex<double>(std::complex<double>)>;

    SpectralModel(Transform phi_bar, double Lambda, double Gamma);

    std::complex<double> phi_bar(std::complex<double> s) const { return phi_bar_(s); }
    double covariance_spectrum(double omega) const;
    double Lambda() const noexcept { return Lambda_; }
    double Gamma() const noexcept { return Gamma_; }
    double background_rate() const noexcept { return Lambda_ * (1.0 - Gamma_); }

private:
    Transform phi_bar_;
    double Lambda_;
    double Gamma_;
};

/// phi(t) = Gamma beta e^{-beta t}.
SpectralModel exponential_truth(double Gamma, double beta, double Lambda);

/// phi(t) = sum_k a_k e^{-b_k t}; terms are (a_k, b_k) with b_k > 0.
SpectralModel exponential_mixture_truth(const std::vector<std::pair<double, double>>& terms,
                                        double Lambda);

/// phi(t) = alpha^T q(t).
SpectralModel basis_truth(const Vector& alpha, const KernelBasis& basis, double Lambda);

struct SpectralOptions {
    double abs_tol = 1e-9;  // per entry
    int max_panels = 4000;
};

struct SpectralMatrix {
    Matrix value;
    double error_estimate = 0.0;
};

/// Asymptotic Gram matrix R* = (1/2pi) int q_bar(iw) C(w) q_bar(iw)^H dw.
Matrix spectral_gram(const SpectralModel& spec, const KernelBasis& basis,
                     const SpectralOptions& opts = {});
SpectralMatrix spectral_gram_with_error(const SpectralModel& spec, const KernelBasis& basis,
                                        const SpectralOptions& opts = {});

/// Asymptotic cross-covariance (1/2pi) int q_bar(iw) C(w) conj(phi_bar(iw)) dw.
Vector spectral_cross(const SpectralModel& spec, const KernelBasis& basis,
                      const SpectralOptions& opts = {});

struct AsymptoticResult {
    Matrix R_star;
    Vector R_star_cross;
    Vector alpha_star;
    double c_star = 0.0;
    double gamma_star = 0.0;
    double eig_min = 0.0;
    double eig_max = 0.0;
    double cond = 0.0;
    double Lambda = 0.0;
};

/// Pseudo-true parameters alpha* = R*^{-1} R*_cross, c* = Lambda (1 - Gamma*).
/// Throws DegeneracyError if R* is not positive definite in double precision.
AsymptoticResult pseudo_true(const SpectralModel& spec, const KernelBasis& basis,
                             const SpectralOptions& opts = {});

/// Same, from precomputed spectral integrals.
AsymptoticResult pseudo_true_from(const Matrix& R_star, const Vector& R_star_cross,
                                  const KernelBasis& basis, double Lambda);

/// C-weighted squared projection error (1/2pi) int |phi_bar - a^T q_bar|^2 C dw,
/// the quantity alpha* minimizes.
double weighted_projection_error(const SpectralModel& spec, const KernelBasis& basis,
                                 const Vector& alpha, const SpectralOptions& opts = {});

struct ClosedLoopReport {
    Eigen::VectorXcd eigenvalues;  // of A + B alpha*^T
    bool is_hurwitz = false;
    double lyapunov_residual = 0.0;  // ||A_cl R* + R* A_cl^T + Lambda B B^T||_F
};

ClosedLoopReport closed_loop_check(const AsymptoticResult& result, const StateSpaceModel& model);

struct ConditioningRow {
    int P = 0;
    double cond_laguerre = 0.0;
    std::optional<double> cond_erlang;  // empty: indefinite in double precision
    double bound_laguerre = 0.0;        // ((1 + Gamma) / (1 - Gamma))^2, upper bound
    double bound_erlang = 0.0;          // 4^{P-1} ((1 - Gamma) / (1 + Gamma))^2, lower bound
    double sigma_min_sq_L = 0.0;
    double sigma_max_sq_L = 0.0;
    double eig_min_laguerre = 0.0;
    double eig_max_laguerre = 0.0;
};

/// Erlang Gram conditioning beyond this is reported as indefinite-in-double.
inline constexpr double kMaxRepresentableCondition = 1e15;

std::vector<ConditioningRow> conditioning_study(const SpectralModel& spec, double beta,
                                                const std::vector<int>& orders,
                                                const SpectralOptions& opts = {});

/// Exponential-truth study as in the classical comparison.
std::vector<ConditioningRow> conditioning_study(double Gamma, double beta, double Lambda,
                                                const std::vector<int>& orders,
                                                const SpectralOptions& opts = {});

}  // namespace hawkes
