#include "hawkes/statespace.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "hawkes/errors.hpp"

namespace hawkes {

StateSpaceModel::StateSpaceModel(const KernelBasis& basis)
    : basis_(basis) {
    const int P = basis.order();
    const double beta = basis.beta();
    A_ = Matrix::Zero(P, P);
    B_ = Vector::Zero(P);

    if (basis.family() == BasisFamily::Laguerre) {
        const double root = std::sqrt(2.0 * beta);
        for (int i = 0; i < P; ++i) {
            B_(i) = (i % 2 == 0) ? root : -root;
            A_(i, i) = -beta;
            // k-th lower subdiagonal carries (-1)^{k+1} 2 beta
            for (int j = 0; j < i; ++j) {
                const int k = i - j;
                A_(i, j) = (k % 2 == 1) ? 2.0 * beta : -2.0 * beta;
            }
        }
    } else {
        B_(0) = beta;
        for (int i = 0; i < P; ++i) {
            A_(i, i) = -beta;
            if (i > 0) A_(i, i - 1) = beta;
        }
    }
    N_ = A_ + beta * Matrix::Identity(P, P);
}

StateSpaceModel build_state_space(const KernelBasis& basis) {
    return StateSpaceModel(basis);
}

namespace {

// e^{-beta dt} dt^k / k!, evaluated in log space so large dt underflows
// cleanly instead of producing inf * 0.
double series_weight(double beta, double dt, int k) {
    if (dt == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(-beta * dt + k * std::log(dt) - std::lgamma(k + 1.0));
}

void require_dt(double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt)) {
        throw ParameterError("expm: dt must be finite and non-negative");
    }
}

}  // namespace

Matrix expm(const StateSpaceModel& model, double dt) {
    require_dt(dt);
    const int P = model.order();
    Matrix power = Matrix::Identity(P, P);
    Matrix out = series_weight(model.beta(), dt, 0) * power;
    for (int k = 1; k < P; ++k) {
        power = model.nilpotent() * power;
        out += series_weight(model.beta(), dt, k) * power;
    }
    return out;
}

Vector expm_apply(const StateSpaceModel& model, double dt, const Vector& x) {
    require_dt(dt);
    const int P = model.order();
    const auto N = model.nilpotent().triangularView<Eigen::StrictlyLower>();
    Vector term = x;
    Vector out = series_weight(model.beta(), dt, 0) * x;
    for (int k = 1; k < P; ++k) {
        term = N * term;
        out += series_weight(model.beta(), dt, k) * term;
    }
    return out;
}

Vector solve_A(const StateSpaceModel& model, const Vector& y) {
    return model.A().triangularView<Eigen::Lower>().solve(y);
}

Vector expm_integral_apply(const StateSpaceModel& model, double dt, const Vector& x) {
    return solve_A(model, expm_apply(model, dt, x) - x);
}

Matrix solve_lyapunov(const StateSpaceModel& model, const Matrix& Q) {
    const int P = model.order();
    if (Q.rows() != P || Q.cols() != P) {
        throw ParameterError("solve_lyapunov: Q must be P x P");
    }
    const double scale = std::max(Q.cwiseAbs().maxCoeff(), 1e-300);
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw ParameterError("solve_lyapunov: Q is not symmetric");
    }

    const Matrix& A = model.A();
    Matrix X = Matrix::Zero(P, P);
    // (AX + XA^T)_ij = sum_{k<=i} A_ik X_kj + sum_{k<=j} X_ik A_jk. Sweeping
    // i ascending and j = 0..i, every X entry on the right is already known
    // (directly or by symmetry).
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j <= i; ++j) {
            double acc = Q(i, j);
            for (int k = 0; k < i; ++k) acc += A(i, k) * X(k, j);
            for (int k = 0; k < j; ++k) acc += X(i, k) * A(j, k);
            X(i, j) = -acc / (A(i, i) + A(j, j));
            X(j, i) = X(i, j);
        }
    }
    return X;
}

Matrix controllability_matrix(const StateSpaceModel& model) {
    const int P = model.order();
    Matrix C(P, P);
    Vector col = model.B();
    for (int k = 0; k < P; ++k) {
        C.col(k) = col;
        col = model.A() * col;
    }
    return C;
}

int numeric_rank(const Matrix& M, double rel_tol) {
    Eigen::JacobiSVD<Matrix> svd(M);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > rel_tol * s(0)) ++rank;
    }
    return rank;
}

}  // namespace hawkes
