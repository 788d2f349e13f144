#pragma once

#include <functional>

#include <Eigen/Core>

namespace hawkes {

struct QuadratureResult {
    Eigen::VectorXd value;
    double error = 0.0;  // sum over panels of max-norm |K15 - G7|
    int evaluations = 0;
    bool converged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of a vector-valued
/// integrand on [a, b]. The panel with the largest error is bisected until
/// the total error estimate falls below abs_tol or max_panels is reached.
QuadratureResult integrate_adaptive(const std::function<Eigen::VectorXd(double)>& f, double a,
                                    double b, double abs_tol, int max_panels = 4000);

}  // namespace hawkes
