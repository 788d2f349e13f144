#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "hawkes/asymptotics.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/estimate.hpp"
#include "hawkes/io.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes::cli {

namespace {

[[noreturn]] void reject(const std::string& field, const std::string& why) {
    throw ParameterError(field + ": " + why);
}

double parse_number(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) reject(field, "'" + text + "' is not a number");
        return v;
    } catch (const std::logic_error&) {
        reject(field, "'" + text + "' is not a number");
    }
}

int parse_int(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) reject(field, "'" + text + "' is not an integer");
        return v;
    } catch (const std::logic_error&) {
        reject(field, "'" + text + "' is not an integer");
    }
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(text);
    while (std::getline(in, part, sep)) parts.push_back(part);
    return parts;
}

void require_family(const std::string& field, const std::string& name) {
    if (name != "laguerre" && name != "erlang") reject(field, "must be 'laguerre' or 'erlang'");
}

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
    auto logger = std::make_shared<spdlog::logger>("hawkes", sink);
    logger->set_pattern("[%l] %v");
    logger->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("HAWKES_LOG")) {
        const std::string level(env);
        if (level == "debug") logger->set_level(spdlog::level::debug);
        else if (level == "info") logger->set_level(spdlog::level::info);
    }
    return logger;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> orders;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        const int lo = parse_int("--P", text.substr(0, colon));
        const int hi = parse_int("--P", text.substr(colon + 1));
        if (lo > hi) reject("--P", "range '" + text + "' is empty");
        for (int p = lo; p <= hi; ++p) orders.push_back(p);
    } else {
        for (const auto& part : split(text, ',')) orders.push_back(parse_int("--P", part));
    }
    if (orders.empty()) reject("--P", "no model order given");
    for (int p : orders) {
        if (p < 1) reject("--P", "model order must be >= 1, got " + std::to_string(p));
    }
    return orders;
}

std::vector<std::pair<double, double>> parse_mixture(const std::string& text) {
    std::vector<std::pair<double, double>> terms;
    for (const auto& part : split(text, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) reject("--mix", "terms must look like a:b, got '" + part + "'");
        const double a = parse_number("--mix", part.substr(0, colon));
        const double b = parse_number("--mix", part.substr(colon + 1));
        if (!(a >= 0.0)) reject("--mix", "amplitudes must be non-negative");
        if (!(b > 0.0)) reject("--mix", "decay rates must be positive");
        terms.emplace_back(a, b);
    }
    if (terms.empty()) reject("--mix", "no terms given");
    return terms;
}

void SimulateConfig::validate() const {
    if (kernel != "exp" && kernel != "laguerre") reject("--kernel", "must be 'exp' or 'laguerre'");
    if (!(c0 > 0.0)) reject("--c0", "background rate must be positive");
    if (!(beta > 0.0)) reject("--beta", "decay rate must be positive");
    if (!(horizon > 0.0)) reject("--T", "horizon must be positive");
    if (kernel == "exp") {
        if (!gamma) reject("--gamma", "required for --kernel exp");
        if (!(*gamma >= 0.0)) reject("--gamma", "branching ratio must be non-negative");
        if (!(*gamma < 1.0)) reject("--gamma", "stationarity requires branching ratio Gamma < 1");
        if (!alpha.empty()) reject("--alpha", "only valid with --kernel laguerre");
    } else {
        if (alpha.empty()) reject("--alpha", "required for --kernel laguerre");
        if (gamma) reject("--gamma", "implied by --alpha for --kernel laguerre");
        require_family("--basis", basis);
    }
}

void EstimateConfig::validate() const {
    if (input.empty()) reject("input", "an event stream file is required");
    require_family("--basis", basis);
    if (order < 1) reject("--P", "model order must be >= 1");
    if (!(beta > 0.0)) reject("--beta", "decay rate must be positive");
}

void AsymptoticsConfig::validate() const {
    if (mixture.empty()) {
        if (!(gamma >= 0.0)) reject("--gamma", "branching ratio must be non-negative");
        if (!(gamma < 1.0)) reject("--gamma", "stationarity requires branching ratio Gamma < 1");
    }
    if (!(beta > 0.0)) reject("--beta", "decay rate must be positive");
    if (kernel_beta && !(*kernel_beta > 0.0)) reject("--kernel-beta", "decay rate must be positive");
    if (!(lambda > 0.0)) reject("--lambda", "stationary rate must be positive");
    if (!(abs_tol > 0.0)) reject("--tol", "quadrature tolerance must be positive");
    require_family("--basis", basis);
    const auto ps = parse_orders(orders);
    if (!study && ps.size() != 1) reject("--P", "a single order is required without --study");
}

namespace {

int cmd_simulate(const SimulateConfig& cfg, std::ostream& out, spdlog::logger& log) {
    cfg.validate();
    TrueKernel truth{cfg.c0, ExponentialKernel{cfg.gamma.value_or(0.0), cfg.beta}};
    if (cfg.kernel == "laguerre") {
        const KernelBasis basis(parse_family(cfg.basis), cfg.beta, static_cast<int>(cfg.alpha.size()));
        truth.kernel = BasisKernel{Eigen::Map<const Vector>(cfg.alpha.data(), cfg.alpha.size()), basis};
    }
    log.info("simulating {} kernel, Gamma = {}, horizon {}", cfg.kernel, truth.branching_ratio(),
             cfg.horizon);
    const auto stream = simulate(truth, cfg.horizon, cfg.seed);
    log.info("generated {} events", stream.size());

    if (cfg.out.empty()) {
        write_stream(out, stream);
        return kSuccess;
    }
    write_stream_file(cfg.out, stream);

    nlohmann::json meta = {{"kernel", cfg.kernel},
                           {"c0", cfg.c0},
                           {"beta", cfg.beta},
                           {"T", cfg.horizon},
                           {"seed", cfg.seed},
                           {"branching_ratio", truth.branching_ratio()},
                           {"expected_rate", truth.stationary_rate()},
                           {"n_events", stream.size()}};
    if (cfg.kernel == "exp") {
        meta["gamma"] = *cfg.gamma;
    } else {
        meta["alpha"] = cfg.alpha;
        meta["basis"] = cfg.basis;
    }
    write_text(cfg.out + ".json", meta.dump(2) + "\n");
    return kSuccess;
}

int cmd_estimate(const EstimateConfig& cfg, std::ostream& out, spdlog::logger& log) {
    cfg.validate();
    const auto stream = read_stream_file(cfg.input);
    const KernelBasis basis(parse_family(cfg.basis), cfg.beta, cfg.order);
    log.info("estimating {} basis, P = {}, on {} events", cfg.basis, cfg.order, stream.size());

    const auto est = estimate_from_stream(stream, basis);
    for (const auto& w : est.diagnostics.warnings) log.warn("{}", w);
    log.debug("cond(R) = {}, residual = {}", est.diagnostics.condition_number,
              est.diagnostics.residual);

    const std::string doc = estimate_to_json(est) + "\n";
    if (cfg.out.empty()) out << doc;
    else write_text(cfg.out, doc);
    return kSuccess;
}

int cmd_asymptotics(const AsymptoticsConfig& cfg, std::ostream& out, spdlog::logger& log) {
    cfg.validate();
    const auto orders = parse_orders(cfg.orders);
    const SpectralModel spec =
        cfg.mixture.empty()
            ? exponential_truth(cfg.gamma, cfg.kernel_beta.value_or(cfg.beta), cfg.lambda)
            : exponential_mixture_truth(parse_mixture(cfg.mixture), cfg.lambda);
    const SpectralOptions opts{cfg.abs_tol};
    log.info("truth: Gamma = {}, Lambda = {}", spec.Gamma(), spec.Lambda());

    if (cfg.study) {
        const auto rows = conditioning_study(spec, cfg.beta, orders, opts);
        const StudyMetadata meta{spec.Gamma(), cfg.beta, spec.Lambda(), cfg.abs_tol,
                                 kMaxRepresentableCondition};
        for (const auto& row : rows) {
            if (!row.cond_erlang) log.warn("Erlang Gram indefinite in double precision at P = {}", row.P);
        }
        if (cfg.out.empty()) {
            out << "# " << study_metadata_json(meta) << '\n';
            write_study_csv(out, rows);
        } else {
            std::ostringstream csv;
            write_study_csv(csv, rows);
            write_text(cfg.out, csv.str());
            write_text(cfg.out + ".json", study_metadata_json(meta, 2) + "\n");
        }
        return kSuccess;
    }

    const KernelBasis basis(parse_family(cfg.basis), cfg.beta, orders.front());
    const auto result = pseudo_true(spec, basis, opts);
    const auto loop = closed_loop_check(result, StateSpaceModel(basis));
    if (!loop.is_hurwitz) log.warn("closed loop A + B alpha*^T is not Hurwitz");

    const std::string doc = asymptotic_result_to_json(result, basis, &loop) + "\n";
    if (cfg.out.empty()) out << doc;
    else write_text(cfg.out, doc);
    return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hawkes kernel identification in orthonormal Laguerre bases", "hawkes"};
    app.require_subcommand(1);

    SimulateConfig sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate a stationary Hawkes event stream");
    sim_cmd->add_option("--kernel", sim.kernel, "Kernel family: exp | laguerre")
        ->capture_default_str();
    sim_cmd->add_option("--c0", sim.c0, "Background rate")->required();
    sim_cmd->add_option("--gamma", sim.gamma, "Branching ratio of the exponential kernel");
    sim_cmd->add_option("--beta", sim.beta, "Kernel / basis decay rate")->capture_default_str();
    sim_cmd->add_option("--basis", sim.basis, "Basis family for --kernel laguerre")
        ->capture_default_str();
    sim_cmd->add_option("--alpha", sim.alpha, "Basis weights, comma separated")->delimiter(',');
    sim_cmd->add_option("--T", sim.horizon, "Observation horizon")->required();
    sim_cmd->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
    sim_cmd->add_option("--out", sim.out, "Output stream file (default: stdout)");

    EstimateConfig est;
    auto* est_cmd = app.add_subcommand("estimate", "Centered least-squares kernel estimate");
    est_cmd->add_option("input,--in", est.input, "Event stream file")->required();
    est_cmd->add_option("--basis", est.basis, "laguerre | erlang")->capture_default_str();
    est_cmd->add_option("--P", est.order, "Model order")->capture_default_str();
    est_cmd->add_option("--beta", est.beta, "Basis decay rate")->capture_default_str();
    est_cmd->add_option("--out", est.out, "Write JSON here instead of stdout");

    AsymptoticsConfig asy;
    auto* asy_cmd = app.add_subcommand("asymptotics", "Spectral Gram matrices and pseudo-true values");
    auto* gamma_opt =
        asy_cmd->add_option("--gamma", asy.gamma, "Branching ratio of the exponential truth");
    asy_cmd->add_option("--beta", asy.beta, "Basis decay rate")->required();
    asy_cmd->add_option("--kernel-beta", asy.kernel_beta, "Decay of the exponential truth (default: --beta)");
    asy_cmd->add_option("--lambda", asy.lambda, "Stationary event rate")->required();
    asy_cmd->add_option("--P", asy.orders, "Order, range lo:hi or list a,b,c")->required();
    asy_cmd->add_option("--basis", asy.basis, "laguerre | erlang")->capture_default_str();
    asy_cmd->add_option("--mix", asy.mixture, "Exponential-mixture truth a:b,... (phi = sum a e^{-b t})")
        ->excludes(gamma_opt);
    asy_cmd->add_option("--tol", asy.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
    asy_cmd->add_flag("--study", asy.study, "Laguerre vs Erlang conditioning sweep (CSV)");
    asy_cmd->add_option("--out", asy.out, "Write output here instead of stdout");

    auto logger = make_logger(err);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kValidationError;
    }

    try {
        if (sim_cmd->parsed()) return cmd_simulate(sim, out, *logger);
        if (est_cmd->parsed()) return cmd_estimate(est, out, *logger);
        return cmd_asymptotics(asy, out, *logger);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const DegeneracyError& e) {
        err << "error: numerical degeneracy: " << e.what() << '\n';
        return kNumericalDegeneracy;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace hawkes::cli
