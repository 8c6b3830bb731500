#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "hepbell/errors.hpp"
#include "hepbell/mesonlab.hpp"

namespace hepbell::mesonlab {

namespace {

bool parse_flag(std::string_view s, std::size_t line) {
    if (s == "0") return false;
    if (s == "1") return true;
    throw InvalidArgument("line " + std::to_string(line) + ": flag must be 0 or 1");
}

}  // namespace

void write_events_csv(std::ostream& out, const std::vector<EventRecord>& events) {
    out << kEventCsvHeader << '\n';
    char phi[32];
    for (const auto& e : events) {
        std::snprintf(phi, sizeof phi, "%.9g", e.phi);
        out << e.event_id << ',' << phi << ',' << int{e.detected_1} << ',' << int{e.detected_2} << ','
            << int{e.is_background} << '\n';
    }
}

void write_events_csv(const std::filesystem::path& path, const std::vector<EventRecord>& events) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_events_csv(out, events);
    if (!out) throw Error("failed writing " + path.string());
}

std::vector<EventRecord> read_events_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kEventCsvHeader) throw InvalidArgument("missing or unexpected CSV header");
    std::vector<EventRecord> events;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest(line);
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1))
            f.push_back(rest.substr(0, pos));
        f.push_back(rest);
        if (f.size() != 5) throw InvalidArgument("line " + std::to_string(lineno) + ": expected 5 fields");

        EventRecord e;
        auto [p1, ec1] = std::from_chars(f[0].data(), f[0].data() + f[0].size(), e.event_id);
        auto [p2, ec2] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), e.phi);
        if (ec1 != std::errc{} || p1 != f[0].data() + f[0].size() || ec2 != std::errc{} ||
            p2 != f[1].data() + f[1].size())
            throw InvalidArgument("line " + std::to_string(lineno) + ": malformed number");
        if (e.event_id != events.size())
            throw InvalidArgument("line " + std::to_string(lineno) + ": event_id must increase by one from 0");
        // Nine significant digits can round an angle just below 2π up past it.
        if (e.phi >= kTwoPi && e.phi < kTwoPi + 1e-8) e.phi = std::nextafter(kTwoPi, 0.0);
        if (!(e.phi >= 0.0 && e.phi < kTwoPi)) throw InvalidArgument("line " + std::to_string(lineno) + ": phi out of [0, 2π)");
        e.detected_1 = parse_flag(f[2], lineno);
        e.detected_2 = parse_flag(f[3], lineno);
        e.is_background = parse_flag(f[4], lineno);
        events.push_back(e);
    }
    return events;
}

std::vector<EventRecord> read_events_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return read_events_csv(in);
}

}  // namespace hepbell::mesonlab
