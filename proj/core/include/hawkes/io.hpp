#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hawkes/asymptotics.hpp"
#include "hawkes/estimate.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes {

// Event stream text format:
//
//   # hawkes-stream T=<float> seed=<int>
//   <t_1>
//   ...
//
// Times are written with 17 significant digits so they round-trip exactly.
// Blank lines and further '#' comment lines are ignored on read; seed= is
// optional.

void write_stream(std::ostream& out, const EventStream& stream);
void write_stream_file(const std::filesystem::path& path, const EventStream& stream);

/// Throws ParameterError on malformed content.
EventStream read_stream(std::istream& in);
/// Throws IoError if the file cannot be opened.
EventStream read_stream_file(const std::filesystem::path& path);

/// printf("%.17g").
std::string format_double(double value);

std::string estimate_to_json(const HawkesEstimate& estimate, int indent = 2);

std::string asymptotic_result_to_json(const AsymptoticResult& result, const KernelBasis& basis,
                                      const ClosedLoopReport* closed_loop = nullptr,
                                      int indent = 2);

/// Header plus one row per order; non-representable Erlang conditioning is
/// written as "indefinite-in-double".
void write_study_csv(std::ostream& out, const std::vector<ConditioningRow>& rows);

struct StudyMetadata {
    double Gamma;
    double beta;
    double Lambda;
    double abs_tol;
    double max_condition;
};

std::string study_metadata_json(const StudyMetadata& meta, int indent = -1);

}  // namespace hawkes
