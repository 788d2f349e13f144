#include "hawkes/simulate.hpp"

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "hawkes/errors.hpp"
#include "hawkes/statespace.hpp"

namespace hawkes {

EventStream::EventStream(std::vector<double> times, double horizon, std::uint64_t seed)
    : times_(std::move(times)), horizon_(horizon), seed_(seed) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ParameterError("event stream horizon T must be positive and finite");
    }
    double prev = 0.0;
    for (std::size_t r = 0; r < times_.size(); ++r) {
        const double t = times_[r];
        if (!std::isfinite(t) || t <= prev) {
            throw ParameterError("event times must be finite, > 0 and strictly increasing (index " +
                                 std::to_string(r) + ")");
        }
        prev = t;
    }
    if (!times_.empty() && times_.back() > horizon_) {
        throw ParameterError("last event time exceeds horizon T");
    }
}

double TrueKernel::branching_ratio() const {
    return std::visit(
        [](const auto& k) -> double {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return k.gamma;
            } else {
                return basis_mass(k.basis).dot(k.alpha);
            }
        },
        kernel);
}

double TrueKernel::stationary_rate() const { return c0 / (1.0 - branching_ratio()); }

namespace {

// Portable variate transforms on top of mt19937_64 so that a (params, seed)
// pair yields the same stream regardless of the standard library in use.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

private:
    std::mt19937_64 engine_;
};

void check_common(double c0, double gamma, double horizon) {
    if (!(c0 > 0.0) || !std::isfinite(c0)) {
        throw ParameterError("background rate c0 must be positive");
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ParameterError("horizon T must be positive and finite");
    }
    if (!(gamma < 1.0)) {
        throw ParameterError("stationarity requires branching ratio Gamma < 1, got " +
                             std::to_string(gamma));
    }
    const double expected = c0 * horizon / (1.0 - gamma);
    if (expected > kMaxExpectedEvents) {
        throw ParameterError("expected event count " + std::to_string(expected) +
                             " exceeds the 1e8 resource limit");
    }
}

}  // namespace

EventStream simulate_exponential(double c0, double gamma, double beta, double horizon,
                                 std::uint64_t seed) {
    if (!(gamma >= 0.0)) throw ParameterError("exponential kernel needs Gamma >= 0");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive");
    check_common(c0, gamma, horizon);

    Rng rng(seed);
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(1.1 * c0 * horizon / (1.0 - gamma)) + 16);

    // excitation = sum_r gamma beta e^{-beta (t - t_r)}, right-continuous
    double t = 0.0;
    double excitation = 0.0;
    const double jump = gamma * beta;
    while (true) {
        // Intensity only decays until the next event, so its current value
        // dominates the whole gap.
        const double bound = c0 + excitation;
        const double w = rng.exponential(bound);
        const double candidate = t + w;
        if (candidate > horizon) break;
        excitation *= std::exp(-beta * w);
        t = candidate;
        const double lambda = c0 + excitation;
        if (rng.uniform() * bound <= lambda) {
            if (!times.empty() && times.back() >= t) continue;
            times.push_back(t);
            excitation += jump;
        }
    }
    return EventStream(std::move(times), horizon, seed);
}

namespace {

// Sup-norm envelope of ||e^{A s}||_2 on s in [0, 1/beta], tabulated once per
// model and queried for prefixes [0, delta].
class PropagatorEnvelope {
public:
    static constexpr int kGrid = 64;

    explicit PropagatorEnvelope(const StateSpaceModel& model) : beta_(model.beta()) {
        const bool contractive = model.basis().family() == BasisFamily::Laguerre;
        double running = 0.0;
        for (int i = 0; i <= kGrid; ++i) {
            const double s = i / (kGrid * beta_);
            Eigen::JacobiSVD<Matrix> svd(expm(model, s));
            running = std::max(running, svd.singularValues()(0));
            // Laguerre realization satisfies A + A^T = -B B^T, hence
            // ||e^{As}||_2 <= 1 exactly.
            prefix_max_[i] = contractive ? std::min(1.0, 1.1 * running) : 1.1 * running;
        }
    }

    double over_window(double delta) const {
        const int idx = std::min(kGrid, static_cast<int>(std::ceil(delta * beta_ * kGrid)));
        return prefix_max_[idx];
    }

private:
    double beta_;
    std::array<double, kGrid + 1> prefix_max_{};
};

void validate_basis_kernel(double c, const Vector& alpha, const KernelBasis& basis,
                           double horizon) {
    if (alpha.size() != basis.order()) {
        throw ParameterError("kernel weight vector length must equal basis order P");
    }
    const double step = 1e-3 / basis.beta();
    const double end = 50.0 / basis.beta();
    const auto n_grid = static_cast<long>(std::ceil(end / step));
    for (long i = 0; i <= n_grid; ++i) {
        const double t = i * step;
        const double phi = alpha.dot(eval_basis(t, basis));
        if (phi < -1e-12) {
            throw ParameterError("kernel alpha^T q(t) is negative at t = " + std::to_string(t) +
                                 "; a Hawkes kernel must be non-negative");
        }
    }
    check_common(c, basis_mass(basis).dot(alpha), horizon);
}

}  // namespace

EventStream simulate_laguerre(double c, const Vector& alpha, const KernelBasis& basis,
                              double horizon, std::uint64_t seed) {
    validate_basis_kernel(c, alpha, basis, horizon);

    const StateSpaceModel model(basis);
    const PropagatorEnvelope envelope(model);
    const double alpha_norm = alpha.norm();
    const double max_window = 1.0 / basis.beta();

    Rng rng(seed);
    std::vector<double> times;
    Vector chi = Vector::Zero(basis.order());
    double t = 0.0;

    while (t < horizon) {
        const double lambda_now = std::max(0.0, c + alpha.dot(chi));
        const double delta = std::min(1.0 / (c + lambda_now), max_window);
        const double bound = c + alpha_norm * chi.norm() * envelope.over_window(delta);

        const double w = rng.exponential(bound);
        if (w > delta) {
            if (t + delta > horizon) break;
            chi = expm_apply(model, delta, chi);
            t += delta;
            continue;
        }
        const double candidate = t + w;
        if (candidate > horizon) break;
        chi = expm_apply(model, w, chi);
        t = candidate;

        const double lambda = std::max(0.0, c + alpha.dot(chi));
        if (lambda > bound * (1.0 + 1e-9)) {
            throw std::logic_error("thinning bound violated: intensity exceeds dominating rate");
        }
        if (rng.uniform() * bound <= lambda) {
            if (!times.empty() && times.back() >= t) continue;
            times.push_back(t);
            chi += model.B();
        }
    }
    return EventStream(std::move(times), horizon, seed);
}

EventStream simulate(const TrueKernel& truth, double horizon, std::uint64_t seed) {
    return std::visit(
        [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return simulate_exponential(truth.c0, k.gamma, k.beta, horizon, seed);
            } else {
                return simulate_laguerre(truth.c0, k.alpha, k.basis, horizon, seed);
            }
        },
        truth.kernel);
}

std::vector<double> rescaled_intervals(const EventStream& stream, const TrueKernel& truth) {
    std::vector<double> out;
    out.reserve(stream.size());
    const double c0 = truth.c0;

    if (const auto* k = std::get_if<ExponentialKernel>(&truth.kernel)) {
        double excitation = 0.0;
        double prev = 0.0;
        for (double t : stream.times()) {
            const double dt = t - prev;
            const double decay = std::exp(-k->beta * dt);
            out.push_back(c0 * dt + excitation * (1.0 - decay) / k->beta);
            excitation = excitation * decay + k->gamma * k->beta;
            prev = t;
        }
        return out;
    }

    const auto& bk = std::get<BasisKernel>(truth.kernel);
    const StateSpaceModel model(bk.basis);
    Vector chi = Vector::Zero(bk.basis.order());
    double prev = 0.0;
    for (double t : stream.times()) {
        const double dt = t - prev;
        out.push_back(c0 * dt + bk.alpha.dot(expm_integral_apply(model, dt, chi)));
        chi = expm_apply(model, dt, chi) + model.B();
        prev = t;
    }
    return out;
}

}  // namespace hawkes
