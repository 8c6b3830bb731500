#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hepbell/errors.hpp"
#include "hepbell/inequality.hpp"
#include "hepbell/mesonlab.hpp"

namespace hepbell::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kMissingInput = 3,
    kInsufficientStatistics = 4,
};

class AngleSyntaxError : public InvalidArgument {
public:
    explicit AngleSyntaxError(const std::string& token)
        : InvalidArgument("malformed angle '" + token + "' (expected radians or Npi/M)"), token_(token) {}
    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

// Radians from "0.37", "-1e-3", "pi", "3pi/8", "3*pi/8", "0.5pi", "-pi/2".
double parse_angle(std::string_view token);

// Comma-separated angle list, e.g. "0,3pi/4,3pi/8,pi/8".
std::vector<double> parse_angle_list(std::string_view text);

struct RunConfig {
    std::uint64_t seed = 42;
    std::uint64_t n_events = 1'000'000;
    unsigned workers = 1;
    mesonlab::DetectorModel detector;
    mesonlab::KinematicsConfig kinematics;
    std::array<double, 3> hardy_settings{3 * kPi / 8, kPi / 4, 5 * kPi / 8};  // alpha, beta, gamma
    std::array<double, 4> ch_settings{0.0, 3 * kPi / 4, 3 * kPi / 8, kPi / 8};  // t1, t1p, t2, t2p
    double bin_width = kTwoPi / 64;
    double ch_window = 0.02;
    double search_tol = 1e-9;
    std::array<int, 3> labeling{1, 2, 3};
    bool symmetrized = true;
    double grid_step = kPi / 32;
    double refine_tol = 1e-12;
    std::filesystem::path output_dir = ".";
    std::filesystem::path events_file;  // empty: output_dir/events.csv

    std::filesystem::path resolved_events_file() const;
    // Throws InvalidArgument when an embedded invariant fails.
    void validate() const;
};

nlohmann::json to_json(const RunConfig& c);
// Unknown keys are rejected; angle fields accept numbers or angle strings.
RunConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const InequalityReport& r);
nlohmann::json to_json(const mesonlab::HistogramEstimate& h);

// Runs one CLI invocation; args exclude the program name. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hepbell::cli
