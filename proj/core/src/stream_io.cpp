#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string_view>

#include "hawkes/errors.hpp"
#include "hawkes/io.hpp"

namespace hawkes {

std::string format_double(double value) {
    char buf[32];
    const int len = std::snprintf(buf, sizeof(buf), "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(len));
}

void write_stream(std::ostream& out, const EventStream& stream) {
    out << "# hawkes-stream T=" << format_double(stream.horizon()) << " seed=" << stream.seed()
        << '\n';
    for (double t : stream.times()) out << format_double(t) << '\n';
}

void write_stream_file(const std::filesystem::path& path, const EventStream& stream) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    write_stream(out, stream);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::size_t line_no) {
    // strtod rather than from_chars: libstdc++ 11 lacks floating from_chars.
    const std::string owned(text);
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size()) {
        throw ParameterError("line " + std::to_string(line_no) + ": '" + owned +
                             "' is not a number");
    }
    return v;
}

}  // namespace

EventStream read_stream(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<double> horizon;
    std::uint64_t seed = 0;
    std::vector<double> times;

    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            std::istringstream fields{std::string(body.substr(1))};
            std::string tok;
            fields >> tok;
            if (tok != "hawkes-stream") continue;
            while (fields >> tok) {
                if (tok.rfind("T=", 0) == 0) {
                    horizon = parse_double(std::string_view(tok).substr(2), line_no);
                } else if (tok.rfind("seed=", 0) == 0) {
                    const std::string_view v = std::string_view(tok).substr(5);
                    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
                    if (ec != std::errc() || ptr != v.data() + v.size()) {
                        throw ParameterError("line " + std::to_string(line_no) +
                                             ": malformed seed '" + std::string(v) + "'");
                    }
                }
            }
            continue;
        }
        times.push_back(parse_double(body, line_no));
    }
    if (in.bad()) throw IoError("read error while parsing event stream");
    if (!horizon) {
        throw ParameterError("event stream is missing the '# hawkes-stream T=<float>' header");
    }
    return EventStream(std::move(times), *horizon, seed);
}

EventStream read_stream_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return read_stream(in);
}

}  // namespace hawkes
