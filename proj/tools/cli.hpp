#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hawkes::cli {

enum ExitCode : int {
    kSuccess = 0,
    kValidationError = 2,
    kNumericalDegeneracy = 3,
    kIoError = 4,
};

struct SimulateConfig {
    std::string kernel = "exp";  // exp | laguerre
    double c0 = 0.0;
    std::optional<double> gamma;
    double beta = 1.0;
    std::string basis = "laguerre";  // basis family for --kernel laguerre
    std::vector<double> alpha;
    double horizon = 0.0;
    std::uint64_t seed = 0;
    std::string out;

    void validate() const;
};

struct EstimateConfig {
    std::string input;
    std::string basis = "laguerre";
    int order = 3;
    double beta = 1.0;
    std::string out;

    void validate() const;
};

struct AsymptoticsConfig {
    double gamma = 0.0;
    double beta = 1.0;
    std::optional<double> kernel_beta;
    double lambda = 1.0;
    std::string orders = "3";
    std::string basis = "laguerre";
    std::string mixture;  // "a:b,a:b"; replaces the exponential truth
    bool study = false;
    double abs_tol = 1e-9;
    std::string out;

    void validate() const;
};

/// "5" -> {5}; "1:4" -> {1,2,3,4}; "2,4,8" -> {2,4,8}.
std::vector<int> parse_orders(const std::string& text);

/// "a1:b1,a2:b2" -> {(a1,b1),(a2,b2)}.
std::vector<std::pair<double, double>> parse_mixture(const std::string& text);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hawkes::cli
