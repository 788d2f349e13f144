#include "hawkes/basis.hpp"

#include <cmath>
#include <string>

#include "hawkes/errors.hpp"

namespace hawkes {

std::string_view to_string(BasisFamily family) {
    switch (family) {
        case BasisFamily::Laguerre: return "laguerre";
        case BasisFamily::Erlang: return "erlang";
    }
    return "unknown";
}

BasisFamily parse_family(std::string_view name) {
    if (name == "laguerre") return BasisFamily::Laguerre;
    if (name == "erlang") return BasisFamily::Erlang;
    throw ParameterError("basis family must be 'laguerre' or 'erlang', got '" +
                         std::string(name) + "'");
}

namespace {

void require_beta(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw ParameterError("beta must be a positive finite rate, got " + std::to_string(beta));
    }
}

void require_order(int order) {
    if (order < 1) {
        throw ParameterError("basis order P must be >= 1, got " + std::to_string(order));
    }
}

}  // namespace

KernelBasis::KernelBasis(BasisFamily family, double beta, int order)
    : family_(family), beta_(beta), order_(order) {
    require_beta(beta);
    require_order(order);
}

RecursionCoeffs recursion_coeffs(int j, double beta) {
    require_beta(beta);
    if (j < 0) throw ParameterError("recursion index must be >= 0");
    const double jp1 = j + 1.0;
    return {2.0 * beta / jp1, (2.0 * j + 1.0) / jp1, j / jp1};
}

Vector eval_laguerre_polys(double t, double beta, int order) {
    require_beta(beta);
    require_order(order);
    Vector u(order);
    u(0) = std::sqrt(2.0 / beta);
    double prev = 0.0;  // u_{-1}
    for (int j = 0; j + 1 < order; ++j) {
        const auto c = recursion_coeffs(j, beta);
        u(j + 1) = (c.rho * t - c.kappa) * u(j) - c.gamma * prev;
        prev = u(j);
    }
    return u;
}

Vector eval_basis(double t, const KernelBasis& basis) {
    const int P = basis.order();
    const double beta = basis.beta();
    if (t < 0.0) return Vector::Zero(P);

    const double w = beta * std::exp(-beta * t);
    if (basis.family() == BasisFamily::Laguerre) {
        return w * eval_laguerre_polys(t, beta, P);
    }
    Vector g(P);
    g(0) = w;
    const double bt = beta * t;
    for (int j = 1; j < P; ++j) g(j) = g(j - 1) * bt / j;
    return g;
}

ComplexVector basis_laplace_at(std::complex<double> s, const KernelBasis& basis) {
    const int P = basis.order();
    const double beta = basis.beta();
    ComplexVector out(P);
    if (basis.family() == BasisFamily::Laguerre) {
        const std::complex<double> allpass = (beta - s) / (beta + s);
        out(0) = std::sqrt(2.0 * beta) / (s + beta);
        for (int j = 1; j < P; ++j) out(j) = out(j - 1) * allpass;
    } else {
        const std::complex<double> pole = beta / (s + beta);
        out(0) = pole;
        for (int j = 1; j < P; ++j) out(j) = out(j - 1) * pole;
    }
    return out;
}

ComplexVector basis_laplace(double omega, const KernelBasis& basis) {
    return basis_laplace_at({0.0, omega}, basis);
}

Vector basis_mass(const KernelBasis& basis) {
    const int P = basis.order();
    if (basis.family() == BasisFamily::Laguerre) {
        return Vector::Constant(P, std::sqrt(2.0 / basis.beta()));
    }
    return Vector::Ones(P);
}

Matrix jacobi_matrix(int m, double beta) {
    require_beta(beta);
    require_order(m);
    Matrix J = Matrix::Zero(m, m);
    for (int j = 0; j < m; ++j) {
        const auto c = recursion_coeffs(j, beta);
        J(j, j) = c.kappa / c.rho;
        if (j + 1 < m) {
            J(j, j + 1) = 1.0 / c.rho;
            J(j + 1, j) = 1.0 / c.rho;
        }
    }
    return J;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    // Each partial product is C(n-k+i, i), an integer, so this is exact
    // until the result exceeds 2^53.
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

ErlangTransform erlang_transform(int order, double beta) {
    require_beta(beta);
    require_order(order);
    const double scale = std::sqrt(beta / 2.0);
    Matrix L = Matrix::Zero(order, order);
    Matrix Linv = Matrix::Zero(order, order);
    for (int i = 0; i < order; ++i) {
        const double two_i = std::ldexp(1.0, i);
        for (int j = 0; j <= i; ++j) {
            const double c = binomial(i, j);
            L(i, j) = scale * c / two_i;
            const double sign = ((i - j) % 2 == 0) ? 1.0 : -1.0;
            Linv(i, j) = sign * std::ldexp(c, j) / scale;
        }
    }
    return {std::move(L), std::move(Linv)};
}

}  // namespace hawkes
