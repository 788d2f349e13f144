// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hawkes/asymptotics.hpp"
#include "hawkes/estimate.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/statespace.hpp"
#include "support/oracles.hpp"

using namespace hawkes;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

Eigen::VectorXd eigenvalues(const Matrix& M) {
    return Eigen::SelfAdjointEigenSolver<Matrix>(M, Eigen::EigenvaluesOnly).eigenvalues();
}

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

EventStream prefix(const EventStream& s, double T) {
    std::vector<double> kept;
    for (double t : s.times()) {
        if (t > T) break;
        kept.push_back(t);
    }
    return EventStream(kept, T, s.seed());
}

GramSystem gram_for(const EventStream& s, const KernelBasis& basis) {
    const auto m = build_state_space(basis);
    const auto traj = propagate_regressors(s, m);
    return empirical_gram(traj, m, empirical_cross_covariance(traj));
}

// Consistency setup shared by several criteria.
constexpr double kC0 = 0.5, kGamma = 0.5, kBeta = 1.0;
const KernelBasis kBasis(BasisFamily::Laguerre, kBeta, 3);

// =============================================================================
// Criteria
// =============================================================================

Outcome orthonormality() {
    double worst = 0.0;
    for (int P : {5, 10, 20}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const KernelBasis basis(BasisFamily::Laguerre, beta, P);
            const double t_max = oracle::basis_tail_cutoff(beta, P);
            for (int j = 0; j < P; ++j)
                for (int k = 0; k <= j; ++k) {
                    const double v = oracle::integrate(
                        [&](double t) {
                            const Vector h = eval_basis(t, basis);
                            return h(j) * h(k);
                        },
                        0.0, t_max, 1e-12);
                    worst = std::max(worst, std::abs(v - (j == k ? 1.0 : 0.0)));
                }
        }
    }
    return {worst < 1e-8, fmt("max |<h_j,h_k> - delta_jk| = %.2e (tol 1e-8)", worst)};
}

Outcome state_space_identity() {
    const KernelBasis basis(BasisFamily::Laguerre, 1.0, 8);
    const auto m = build_state_space(basis);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = 0.01 * i;
        worst = std::max(worst,
                         (expm_apply(m, t, m.B()) - eval_basis(t, basis)).cwiseAbs().maxCoeff());
    }
    return {worst < 1e-10, fmt("max_t ||e^{At}B - h(t)||_inf = %.2e (tol 1e-10)", worst)};
}

Outcome lyapunov_vs_quadrature() {
    const auto s = simulate_exponential(kC0, kGamma, kBeta, 1000.0, 2024);
    const auto g = gram_for(s, kBasis);
    const oracle::ExplicitBasis ref(BasisFamily::Laguerre, kBeta, 3);
    const auto direct = oracle::direct_moments(ref, s.times(), s.horizon(), 1e-3);
    const Matrix want = direct.second - direct.mean * direct.mean.transpose();
    const double rel = (g.R_hat - want).norm() / want.norm();
    return {rel < 1e-5, std::to_string(s.size()) + " events, " +
                            fmt("relative Frobenius error %.2e (tol 1e-5)", rel)};
}

Outcome poisson_identity() {
    double worst = 0.0;
    const double Lambda = 1.0;
    const auto spec = exponential_truth(0.0, 1.0, Lambda);
    for (int P = 1; P <= 15; ++P) {
        const Matrix R = spectral_gram(spec, KernelBasis(BasisFamily::Laguerre, 1.0, P));
        worst = std::max(worst, (R - Lambda * Matrix::Identity(P, P)).cwiseAbs().maxCoeff());
    }
    return {worst < 1e-8, fmt("max |R* - Lambda I| = %.2e over P <= 15 (tol 1e-8)", worst)};
}

Outcome laguerre_conditioning() {
    const auto spec = exponential_truth(kGamma, kBeta, 1.0);
    double lo = INFINITY, hi = 0.0, worst_cond = 0.0;
    for (int P = 1; P <= 15; ++P) {
        const auto ev = eigenvalues(spectral_gram(spec, KernelBasis(BasisFamily::Laguerre, kBeta, P)));
        lo = std::min(lo, ev.minCoeff());
        hi = std::max(hi, ev.maxCoeff());
        worst_cond = std::max(worst_cond, ev.maxCoeff() / ev.minCoeff());
    }
    const bool pass = lo >= 4.0 / 9.0 && hi <= 4.0 && worst_cond <= 9.0;
    return {pass, fmt("eig in [%.4f, ", lo) + fmt("%.4f] vs [0.4444, 4]; ", hi) +
                      fmt("max cond %.4f (<= 9)", worst_cond)};
}

Outcome erlang_ill_conditioning() {
    std::vector<int> orders;
    for (int P = 1; P <= 10; ++P) orders.push_back(P);
    const auto rows = conditioning_study(kGamma, kBeta, 1.0, orders);
    bool pass = true;
    int computable = 0;
    double min_ratio = INFINITY;
    for (const auto& row : rows) {
        if (!row.cond_erlang) continue;
        ++computable;
        const double bound = std::pow(4.0, row.P - 1) / 9.0;
        min_ratio = std::min(min_ratio, *row.cond_erlang / bound);
        pass = pass && *row.cond_erlang >= bound;
    }
    int sigma_ok = 0;
    for (int P = 1; P <= 20; ++P) {
        for (double beta : {0.5, 1.0, 2.0}) {
            const auto sv = Eigen::JacobiSVD<Matrix>(erlang_transform(P, beta).L).singularValues();
            const double smin2 = std::pow(sv(P - 1), 2), smax2 = std::pow(sv(0), 2);
            const bool ok = smin2 <= (beta / 2.0) * std::pow(4.0, -(P - 1)) * (1.0 + 1e-12) &&
                            smax2 >= (beta / 2.0) * (1.0 - 1e-12);
            sigma_ok += ok;
            pass = pass && ok;
        }
    }
    return {pass, std::to_string(computable) + "/10 orders computable, " +
                      fmt("min cond/bound = %.3g; ", min_ratio) + "sigma bounds hold for " +
                      std::to_string(sigma_ok) + "/60 (P <= 20, beta in {0.5,1,2})"};
}

struct ConsistencyData {
    std::vector<double> horizons{1e3, 1e4, 1e5};
    std::vector<std::vector<HawkesEstimate>> estimates;
    AsymptoticResult oracle;
};

ConsistencyData run_consistency() {
    ConsistencyData d;
    d.oracle = pseudo_true(exponential_truth(kGamma, kBeta, kC0 / (1.0 - kGamma)), kBasis);
    const std::vector<int> seeds_per_T{20, 20, 20};
    for (std::size_t i = 0; i < d.horizons.size(); ++i) {
        std::vector<HawkesEstimate> row;
        for (int k = 0; k < seeds_per_T[i]; ++k) {
            const auto s = simulate_exponential(kC0, kGamma, kBeta, d.horizons[i], 1000 + k);
            row.push_back(estimate_from_stream(s, kBasis));
        }
        d.estimates.push_back(std::move(row));
    }
    return d;
}

Outcome consistency() {
    const auto d = run_consistency();
    std::vector<double> medians;
    for (const auto& row : d.estimates) {
        std::vector<double> err;
        for (const auto& e : row) err.push_back(std::abs(e.gamma_hat - kGamma));
        medians.push_back(median(err));
    }
    const bool decreasing = medians[0] > medians[1] && medians[1] > medians[2];
    double worst_gamma = 0.0, worst_c = 0.0, worst_alpha = 0.0;
    for (const auto& e : d.estimates.back()) {
        worst_gamma = std::max(worst_gamma, std::abs(e.gamma_hat - kGamma));
        worst_c = std::max(worst_c, std::abs(e.c_hat - kC0));
        worst_alpha = std::max(worst_alpha, (e.alpha_hat - d.oracle.alpha_star).norm());
    }
    const bool pass = decreasing && worst_gamma < 0.03 && worst_c < 0.03 && worst_alpha < 0.05;
    return {pass, fmt("median |dGamma| %.4f", medians[0]) + fmt(" > %.4f", medians[1]) +
                      fmt(" > %.4f", medians[2]) + "; at T=1e5 over 20 seeds max " +
                      fmt("|dGamma| %.4f, ", worst_gamma) + fmt("|dc| %.4f, ", worst_c) +
                      fmt("||dalpha|| %.4f", worst_alpha)};
}

Outcome empirical_to_spectral() {
    const double Lambda = kC0 / (1.0 - kGamma);
    const auto spec = exponential_truth(kGamma, kBeta, Lambda);
    const Matrix R_star = spectral_gram(spec, kBasis);
    const Vector cross = spectral_cross(spec, kBasis);

    // Monte-Carlo spread at T = 1e4, scaled to T = 1e5 by 1/sqrt(10).
    const int seeds = 10;
    std::vector<GramSystem> small;
    for (int k = 0; k < seeds; ++k)
        small.push_back(gram_for(simulate_exponential(kC0, kGamma, kBeta, 1e4, 500 + k), kBasis));
    auto spread = [&](const std::function<double(const GramSystem&)>& f) {
        double mean = 0.0, sq = 0.0;
        for (const auto& g : small) mean += f(g) / seeds;
        for (const auto& g : small) sq += std::pow(f(g) - mean, 2);
        return std::sqrt(sq / (seeds - 1)) / std::sqrt(10.0);
    };

    const auto big = gram_for(simulate_exponential(kC0, kGamma, kBeta, 1e5, 777), kBasis);
    double worst_z = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double se = spread([j](const GramSystem& g) { return g.s_hat(j); });
        worst_z = std::max(worst_z, std::abs(big.s_hat(j) - cross(j)) / se);
        for (int k = 0; k <= j; ++k) {
            const double se_r = spread([j, k](const GramSystem& g) { return g.R_hat(j, k); });
            worst_z = std::max(worst_z, std::abs(big.R_hat(j, k) - R_star(j, k)) / se_r);
        }
    }
    return {worst_z < 4.0, fmt("max |empirical - spectral| / s.e. = %.2f over 9 entries (< 4)", worst_z)};
}

Outcome boundary_term_vanishes() {
    const auto full = simulate_exponential(kC0, kGamma, kBeta, 1e5, 4242);
    std::vector<double> norms;
    for (double T : {1e3, 1e4, 1e5}) norms.push_back(gram_for(prefix(full, T), kBasis).D_T.norm());
    const bool pass = norms[0] > norms[1] && norms[1] > norms[2];
    return {pass, fmt("||D_T||_F = %.3e", norms[0]) + fmt(" > %.3e", norms[1]) + fmt(" > %.3e", norms[2])};
}

Outcome closed_loop() {
    const auto res = pseudo_true(exponential_truth(kGamma, kBeta, kC0 / (1.0 - kGamma)), kBasis);
    const auto report = closed_loop_check(res, build_state_space(kBasis));
    const double max_re = report.eigenvalues.real().maxCoeff();
    const bool pass = report.is_hurwitz && max_re < 0.0 && report.lyapunov_residual < 1e-5;
    return {pass, fmt("max Re(eig A_cl) = %.4f, ", max_re) +
                      fmt("Lyapunov residual %.2e (tol 1e-5)", report.lyapunov_residual)};
}

Outcome time_rescaling() {
    const TrueKernel exp_truth{kC0, ExponentialKernel{kGamma, kBeta}};
    const auto s1 = simulate(exp_truth, 1.2e4, 91);
    const auto taus1 = rescaled_intervals(s1, exp_truth);
    const double p1 = oracle::ks_p_value(oracle::ks_statistic_exp1(taus1), taus1.size());

    // Sign-indefinite weights, nonnegative kernel sqrt(2) e^{-t}(0.45 - 0.4t + 0.1t^2).
    const TrueKernel lag_truth{1.0, BasisKernel{(Vector(3) << 0.3, -0.1, 0.05).finished(),
                                                KernelBasis(BasisFamily::Laguerre, 1.0, 3)}};
    const auto s2 = simulate(lag_truth, 1.2e4, 92);
    const auto taus2 = rescaled_intervals(s2, lag_truth);
    const double p2 = oracle::ks_p_value(oracle::ks_statistic_exp1(taus2), taus2.size());

    const bool pass = taus1.size() >= 10000 && taus2.size() >= 10000 && p1 > 0.01 && p2 > 0.01;
    return {pass, "exponential n=" + std::to_string(taus1.size()) + fmt(" p=%.3f; ", p1) +
                      "Laguerre n=" + std::to_string(taus2.size()) + fmt(" p=%.3f (level 0.01)", p2)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "Orthonormality", 5, orthonormality},
        {2, "State-space identity", 1, state_space_identity},
        {3, "Lyapunov vs quadrature", 30, lyapunov_vs_quadrature},
        {4, "Poisson spectral identity", 10, poisson_identity},
        {5, "Laguerre conditioning bound", 30, laguerre_conditioning},
        {6, "Erlang ill-conditioning", 10, erlang_ill_conditioning},
        {7, "Estimator consistency", 600, consistency},
        {8, "Empirical-to-spectral convergence", 600, empirical_to_spectral},
        {9, "D_T vanishing", 600, boundary_term_vanishes},
        {10, "Closed-loop stability", 5, closed_loop},
        {11, "Time-rescaling simulator validation", 120, time_rescaling},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            o.pass = false;
            o.detail += fmt("; over runtime budget of %.0f s", c.budget_seconds);
        }
        failures += !o.pass;
        std::printf("[%s] %2d %-36s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
