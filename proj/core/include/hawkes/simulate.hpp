#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "hawkes/basis.hpp"

namespace hawkes {

/// Observed event times on (0, T], strictly increasing.
class EventStream {
public:
    EventStream(std::vector<double> times, double horizon, std::uint64_t seed = 0);

    const std::vector<double>& times() const noexcept { return times_; }
    double horizon() const noexcept { return horizon_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }

    friend bool operator==(const EventStream&, const EventStream&) = default;

private:
    std::vector<double> times_;
    double horizon_;
    std::uint64_t seed_;
};

/// phi(t) = gamma * beta * e^{-beta t}; branching ratio gamma.
struct ExponentialKernel {
    double gamma;
    double beta;
};

/// phi(t) = alpha^T q(t) for a kernel basis q.
struct BasisKernel {
    Vector alpha;
    KernelBasis basis;
};

/// Background rate plus excitation kernel of a Hawkes process.
struct TrueKernel {
    double c0;
    std::variant<ExponentialKernel, BasisKernel> kernel;

    double branching_ratio() const;
    /// Stationary rate c0 / (1 - Gamma).
    double stationary_rate() const;
};

/// Streams whose expected size exceeds this are refused.
inline constexpr double kMaxExpectedEvents = 1e8;

EventStream simulate_exponential(double c0, double gamma, double beta, double horizon,
                                 std::uint64_t seed);

EventStream simulate_laguerre(double c, const Vector& alpha, const KernelBasis& basis,
                              double horizon, std::uint64_t seed);

/// Dispatches on the kernel alternative.
EventStream simulate(const TrueKernel& truth, double horizon, std::uint64_t seed);

/// Compensator increments int_{t_{r-1}}^{t_r} lambda(t) dt for r = 1..n
/// (t_0 = 0), computed in closed form. Under the true model these are
/// i.i.d. Exp(1).
std::vector<double> rescaled_intervals(const EventStream& stream, const TrueKernel& truth);

}  // namespace hawkes
