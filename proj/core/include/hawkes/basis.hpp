#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Core>

namespace hawkes {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;

enum class BasisFamily { Laguerre, Erlang };

std::string_view to_string(BasisFamily family);
BasisFamily parse_family(std::string_view name);

/// A causal kernel basis q_0..q_{P-1} sharing a single pole at -beta.
///
/// Laguerre: h_j(t) = beta e^{-beta t} u_j(t), orthonormal in L2[0, inf).
/// Erlang:   g_j(t) = beta e^{-beta t} (beta t)^j / j!, the gamma densities.
/// Both span the same function space and are related by g = L h.
class KernelBasis {
public:
    KernelBasis(BasisFamily family, double beta, int order);

    BasisFamily family() const noexcept { return family_; }
    double beta() const noexcept { return beta_; }
    int order() const noexcept { return order_; }

    friend bool operator==(const KernelBasis&, const KernelBasis&) = default;

private:
    BasisFamily family_;
    double beta_;
    int order_;
};

/// Three-term recursion coefficients of the orthonormal Laguerre polynomials:
/// u_{j+1} = (rho t - kappa) u_j - gamma u_{j-1}.
struct RecursionCoeffs {
    double rho;
    double kappa;
    double gamma;
};

RecursionCoeffs recursion_coeffs(int j, double beta);

/// u_0(t)..u_{P-1}(t) by forward recursion.
Vector eval_laguerre_polys(double t, double beta, int order);

/// Basis values q(t) for t >= 0. Returns zeros for t < 0 (causality).
Vector eval_basis(double t, const KernelBasis& basis);

/// Laplace transform q-bar(s) evaluated at s = i*omega.
ComplexVector basis_laplace(double omega, const KernelBasis& basis);

/// Laplace transform at an arbitrary complex point s with Re(s) > -beta.
ComplexVector basis_laplace_at(std::complex<double> s, const KernelBasis& basis);

/// Integrals of each basis function over [0, inf).
Vector basis_mass(const KernelBasis& basis);

/// Symmetric tridiagonal Jacobi matrix J_m of the Laguerre recursion.
Matrix jacobi_matrix(int m, double beta);

/// Lower-triangular change of basis from Laguerre to Erlang, g(t) = L h(t),
/// together with its closed-form inverse.
struct ErlangTransform {
    Matrix L;
    Matrix L_inverse;
};

ErlangTransform erlang_transform(int order, double beta);

/// Binomial coefficient C(n, k) in double precision via the multiplicative
/// recurrence. Exact for n <= 50 or so; relative error ~ k * eps beyond.
double binomial(int n, int k);

}  // namespace hawkes
