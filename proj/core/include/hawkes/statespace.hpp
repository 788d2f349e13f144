#pragma once

#include "hawkes/basis.hpp"

namespace hawkes {

/// Continuous-time realization of a kernel basis: q'(t) = A q(t), q(0) = B.
///
/// A is lower triangular with every diagonal entry equal to -beta, so
/// A = -beta I + N with N strictly lower triangular (nilpotent). The
/// memory regressor then obeys d chi = A chi dt + B dN.
class StateSpaceModel {
public:
    explicit StateSpaceModel(const KernelBasis& basis);

    const KernelBasis& basis() const noexcept { return basis_; }
    const Matrix& A() const noexcept { return A_; }
    const Vector& B() const noexcept { return B_; }
    int order() const noexcept { return basis_.order(); }
    double beta() const noexcept { return basis_.beta(); }

    /// Strictly lower-triangular part, A + beta I.
    const Matrix& nilpotent() const noexcept { return N_; }

private:
    KernelBasis basis_;
    Matrix A_;
    Vector B_;
    Matrix N_;
};

StateSpaceModel build_state_space(const KernelBasis& basis);

/// e^{A dt} via the finite nilpotent series e^{-beta dt} sum_k (N dt)^k / k!.
Matrix expm(const StateSpaceModel& model, double dt);

/// e^{A dt} x without forming the matrix; O(P^3) worst case, O(P^2) per term.
Vector expm_apply(const StateSpaceModel& model, double dt, const Vector& x);

/// A^{-1} (e^{A dt} - I) x = integral_0^dt e^{A s} x ds.
Vector expm_integral_apply(const StateSpaceModel& model, double dt, const Vector& x);

/// Solves A^{-1} y by forward substitution (A is lower triangular).
Vector solve_A(const StateSpaceModel& model, const Vector& y);

/// Unique symmetric X with A X + X A^T + Q = 0, by a forward sweep over
/// the lower triangle. Q must be symmetric to within 1e-12 (relative).
Matrix solve_lyapunov(const StateSpaceModel& model, const Matrix& Q);

/// Controllability matrix [B, AB, ..., A^{P-1} B].
Matrix controllability_matrix(const StateSpaceModel& model);

/// Numeric rank with singular values counted above rel_tol * sigma_max.
int numeric_rank(const Matrix& M, double rel_tol = 1e-8);

}  // namespace hawkes
