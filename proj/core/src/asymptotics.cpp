#include "hawkes/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hawkes/errors.hpp"
#include "hawkes/quadrature.hpp"

namespace hawkes {

SpectralModel::SpectralModel(Transform phi_bar, double Lambda, double Gamma)
    : phi_bar_(std::move(phi_bar)), Lambda_(Lambda), Gamma_(Gamma) {
    if (!(Lambda > 0.0) || !std::isfinite(Lambda)) {
        throw ParameterError("stationary rate Lambda must be positive");
    }
    if (!(Gamma < 1.0)) {
        throw ParameterError("stationarity requires branching ratio Gamma < 1, got " +
                             std::to_string(Gamma));
    }
}

double SpectralModel::covariance_spectrum(double omega) const {
    return Lambda_ / std::norm(1.0 - phi_bar_({0.0, omega}));
}

SpectralModel exponential_truth(double Gamma, double beta, double Lambda) {
    if (!(beta > 0.0)) throw ParameterError("kernel decay beta must be positive");
    if (!(Gamma >= 0.0)) throw ParameterError("exponential kernel needs Gamma >= 0");
    return SpectralModel(
        [Gamma, beta](std::complex<double> s) { return Gamma * beta / (s + beta); }, Lambda,
        Gamma);
}

SpectralModel exponential_mixture_truth(const std::vector<std::pair<double, double>>& terms,
                                        double Lambda) {
    if (terms.empty()) throw ParameterError("exponential mixture needs at least one term");
    double Gamma = 0.0;
    for (const auto& [a, b] : terms) {
        if (!(b > 0.0)) throw ParameterError("mixture decay rates must be positive");
        if (!(a >= 0.0)) throw ParameterError("mixture amplitudes must be non-negative");
        Gamma += a / b;
    }
    return SpectralModel(
        [terms](std::complex<double> s) {
            std::complex<double> acc = 0.0;
            for (const auto& [a, b] : terms) acc += a / (s + b);
            return acc;
        },
        Lambda, Gamma);
}

SpectralModel basis_truth(const Vector& alpha, const KernelBasis& basis, double Lambda) {
    if (alpha.size() != basis.order()) {
        throw ParameterError("kernel weight vector length must equal basis order P");
    }
    const double Gamma = basis_mass(basis).dot(alpha);
    return SpectralModel(
        [alpha, basis](std::complex<double> s) -> std::complex<double> {
            const ComplexVector q = basis_laplace_at(s, basis);
            return (q.array() * alpha.array().cast<std::complex<double>>()).sum();
        },
        Lambda, Gamma);
}

namespace {

// The substitution w = beta tan(theta) maps [0, inf) onto [0, pi/2). The
// Laplace transforms decay like 1/w, so every integrand below stays bounded
// after multiplying by dw/dtheta = beta / cos^2(theta) and no tail truncation
// is needed. Conjugate symmetry folds (-inf, 0] onto [0, inf): 1/(2 pi) over
// the real line becomes 1/pi times the real part over the half line.
struct HalfLine {
    double beta;

    double omega(double theta) const { return beta * std::tan(theta); }
    double weight(double theta) const {
        const double c = std::cos(theta);
        return beta / (c * c) / std::numbers::pi;
    }
};

constexpr double kHalfPi = std::numbers::pi / 2.0;

KernelBasis laguerre_like(const KernelBasis& basis) {
    return KernelBasis(BasisFamily::Laguerre, basis.beta(), basis.order());
}

SpectralMatrix laguerre_gram(const SpectralModel& spec, const KernelBasis& basis,
                             const SpectralOptions& opts) {
    const int P = basis.order();
    const HalfLine map{basis.beta()};
    const int packed = P * (P + 1) / 2;

    auto integrand = [&](double theta) {
        const double omega = map.omega(theta);
        const ComplexVector q = basis_laplace(omega, basis);
        const double scale = spec.covariance_spectrum(omega) * map.weight(theta);
        Eigen::VectorXd out(packed);
        int idx = 0;
        for (int i = 0; i < P; ++i) {
            for (int j = 0; j <= i; ++j) {
                out(idx++) = scale * (q(i) * std::conj(q(j))).real();
            }
        }
        return out;
    };
    const auto quad = integrate_adaptive(integrand, 0.0, kHalfPi, opts.abs_tol, opts.max_panels);

    SpectralMatrix result{Matrix(P, P), quad.error};
    int idx = 0;
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j <= i; ++j) {
            result.value(i, j) = quad.value(idx);
            result.value(j, i) = quad.value(idx);
            ++idx;
        }
    }
    return result;
}

Vector laguerre_cross(const SpectralModel& spec, const KernelBasis& basis,
                      const SpectralOptions& opts) {
    const HalfLine map{basis.beta()};
    auto integrand = [&](double theta) {
        const double omega = map.omega(theta);
        const ComplexVector q = basis_laplace(omega, basis);
        const std::complex<double> phi = spec.phi_bar({0.0, omega});
        const double scale = spec.covariance_spectrum(omega) * map.weight(theta);
        return Eigen::VectorXd((q * std::conj(phi)).real() * scale);
    };
    return integrate_adaptive(integrand, 0.0, kHalfPi, opts.abs_tol, opts.max_panels).value;
}

struct Spectrum {
    double min;
    double max;
};

Spectrum symmetric_spectrum(const Matrix& M) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(M, Eigen::EigenvaluesOnly);
    return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

}  // namespace

SpectralMatrix spectral_gram_with_error(const SpectralModel& spec, const KernelBasis& basis,
                                        const SpectralOptions& opts) {
    auto result = laguerre_gram(spec, laguerre_like(basis), opts);
    if (basis.family() == BasisFamily::Erlang) {
        // R*_g = L R*_h L^T exactly.
        const Matrix L = erlang_transform(basis.order(), basis.beta()).L;
        result.value = L * result.value * L.transpose();
        result.value = 0.5 * (result.value + result.value.transpose()).eval();
        result.error_estimate *= L.squaredNorm();
    }
    return result;
}

Matrix spectral_gram(const SpectralModel& spec, const KernelBasis& basis,
                     const SpectralOptions& opts) {
    return spectral_gram_with_error(spec, basis, opts).value;
}

Vector spectral_cross(const SpectralModel& spec, const KernelBasis& basis,
                      const SpectralOptions& opts) {
    Vector cross = laguerre_cross(spec, laguerre_like(basis), opts);
    if (basis.family() == BasisFamily::Erlang) {
        cross = erlang_transform(basis.order(), basis.beta()).L * cross;
    }
    return cross;
}

AsymptoticResult pseudo_true_from(const Matrix& R_star, const Vector& R_star_cross,
                                  const KernelBasis& basis, double Lambda) {
    AsymptoticResult r;
    r.R_star = R_star;
    r.R_star_cross = R_star_cross;
    r.Lambda = Lambda;

    const auto spec = symmetric_spectrum(R_star);
    r.eig_min = spec.min;
    r.eig_max = spec.max;
    r.cond = spec.max / spec.min;
    if (!(spec.max > 0.0) || spec.min <= 1e-12 * spec.max) {
        throw DegeneracyError("asymptotic Gram matrix is not positive definite in double precision "
                              "(" + std::string(to_string(basis.family())) +
                              " basis, P = " + std::to_string(basis.order()) + ")");
    }
    Eigen::LLT<Matrix> llt(R_star);
    if (llt.info() != Eigen::Success) {
        throw DegeneracyError("Cholesky factorization of the asymptotic Gram matrix failed (P = " +
                              std::to_string(basis.order()) + ")");
    }
    r.alpha_star = llt.solve(R_star_cross);
    r.gamma_star = basis_mass(basis).dot(r.alpha_star);
    r.c_star = Lambda * (1.0 - r.gamma_star);
    return r;
}

AsymptoticResult pseudo_true(const SpectralModel& spec, const KernelBasis& basis,
                             const SpectralOptions& opts) {
    return pseudo_true_from(spectral_gram(spec, basis, opts), spectral_cross(spec, basis, opts),
                            basis, spec.Lambda());
}

double weighted_projection_error(const SpectralModel& spec, const KernelBasis& basis,
                                 const Vector& alpha, const SpectralOptions& opts) {
    const HalfLine map{basis.beta()};
    const Eigen::VectorXcd a = alpha.cast<std::complex<double>>();
    auto integrand = [&](double theta) {
        const double omega = map.omega(theta);
        const std::complex<double> fit = basis_laplace(omega, basis).transpose() * a;
        const std::complex<double> diff = spec.phi_bar({0.0, omega}) - fit;
        Eigen::VectorXd out(1);
        out(0) = std::norm(diff) * spec.covariance_spectrum(omega) * map.weight(theta);
        return out;
    };
    return integrate_adaptive(integrand, 0.0, kHalfPi, opts.abs_tol, opts.max_panels).value(0);
}

ClosedLoopReport closed_loop_check(const AsymptoticResult& result, const StateSpaceModel& model) {
    const Matrix A_cl = model.A() + model.B() * result.alpha_star.transpose();
    Eigen::EigenSolver<Matrix> eig(A_cl, false);

    ClosedLoopReport report;
    report.eigenvalues = eig.eigenvalues();
    report.is_hurwitz = (report.eigenvalues.real().array() < 0.0).all();
    const Matrix residual = A_cl * result.R_star + result.R_star * A_cl.transpose() +
                            result.Lambda * model.B() * model.B().transpose();
    report.lyapunov_residual = residual.norm();
    return report;
}

std::vector<ConditioningRow> conditioning_study(const SpectralModel& spec, double beta,
                                                const std::vector<int>& orders,
                                                const SpectralOptions& opts) {
    if (orders.empty()) return {};
    for (int P : orders) {
        if (P < 1) throw ParameterError("study orders must be >= 1");
    }
    // Bases are nested, so every order's Gram matrix is a leading block of
    // the largest one.
    const int P_max = *std::max_element(orders.begin(), orders.end());
    const Matrix R_full = spectral_gram(spec, KernelBasis(BasisFamily::Laguerre, beta, P_max), opts);
    const double G = spec.Gamma();

    std::vector<ConditioningRow> rows;
    rows.reserve(orders.size());
    for (int P : orders) {
        ConditioningRow row;
        row.P = P;
        const Matrix R_h = R_full.topLeftCorner(P, P);
        const auto lag = symmetric_spectrum(R_h);
        row.eig_min_laguerre = lag.min;
        row.eig_max_laguerre = lag.max;
        row.cond_laguerre = lag.max / lag.min;
        row.bound_laguerre = std::pow((1.0 + G) / (1.0 - G), 2);
        row.bound_erlang = std::ldexp(1.0, 2 * (P - 1)) * std::pow((1.0 - G) / (1.0 + G), 2);

        const Matrix L = erlang_transform(P, beta).L;
        Matrix R_g = L * R_h * L.transpose();
        R_g = 0.5 * (R_g + R_g.transpose()).eval();
        const auto erl = symmetric_spectrum(R_g);
        if (erl.min > 0.0 && erl.max / erl.min <= kMaxRepresentableCondition) {
            row.cond_erlang = erl.max / erl.min;
        }

        Eigen::JacobiSVD<Matrix> svd(L);
        const auto& sv = svd.singularValues();
        row.sigma_max_sq_L = sv(0) * sv(0);
        row.sigma_min_sq_L = sv(sv.size() - 1) * sv(sv.size() - 1);
        rows.push_back(row);
    }
    return rows;
}

std::vector<ConditioningRow> conditioning_study(double Gamma, double beta, double Lambda,
                                                const std::vector<int>& orders,
                                                const SpectralOptions& opts) {
    return conditioning_study(exponential_truth(Gamma, beta, Lambda), beta, orders, opts);
}

}  // namespace hawkes
