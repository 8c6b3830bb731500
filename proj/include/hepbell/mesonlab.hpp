/*
 * Monte Carlo emulation of the η_c → V₁V₂ → (PP)(PP) polarization
 * correlation measurement.
 *
 * Only the azimuthal angle φ between the two decay planes carries the
 * correlation: for the transverse state
 *   |Ψ> = (|ε_x>|ε'_y> - |ε_y>|ε'_x>)/√2
 * the rate is ∝ P(n₁,n₂) = ½ sin²φ, i.e. the normalized density on [0, 2π)
 * is f(φ) = sin²φ / π. Histogram counts are turned back into P(n₁,n₂) with
 *   P̂(φ) = κ · [N(φ+Δφ) - N(φ)] / (N Δφ),   κ = π/2.
 *
 * Decay directions are not chosen by the experimenter, so CH settings are
 * realized passively as relative-angle windows of the φ histogram. This
 * only tests a restricted class of local-realistic models.
 *
 * Random numbers: Philox4x32-10 keyed by the seed, counter = (event index,
 * block). Event i is a pure function of (seed, i), so the output is the
 * same for every worker count.
 */
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hepbell/angle.hpp"
#include "hepbell/inequality.hpp"
#include "hepbell/qcore.hpp"

namespace hepbell::mesonlab {

inline constexpr double kKappa = kPi / 2.0;
inline constexpr double kSpaceLikeBetaBound = 0.59;
inline constexpr double kEtaCMass = 2.980;      // GeV
inline constexpr double kPhiMass = 1.019461;    // GeV
inline constexpr double kBrPhiToKK = 0.492;     // φ → K⁺K⁻
inline constexpr double kBrRhoToPiPi = 1.0;     // ρ → ππ

struct EventRecord {
    std::uint64_t event_id = 0;
    double phi = 0.0;  // [0, 2π)
    bool detected_1 = false;
    bool detected_2 = false;
    bool is_background = false;

    bool coincidence() const noexcept { return detected_1 && detected_2; }
    friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct DetectorModel {
    double eta_1 = 1.0;
    double eta_2 = 1.0;
    double background_fraction = 0.0;
    double br_weight = 1.0;

    static DetectorModel perfect() { return {}; }
    // Throws InvalidArgument unless every field lies in [0, 1].
    void validate() const;
};

struct KinematicsConfig {
    double m_parent = kEtaCMass;
    double m_vector = kPhiMass;
};

struct HistogramEstimate {
    std::vector<double> bin_edges;
    std::vector<std::uint64_t> counts;
    std::vector<double> p_hat;
    std::vector<double> stat_err;
    double kappa = kKappa;
    std::uint64_t total = 0;  // coincidences entering the histogram
    double bin_width = 0.0;
};

// (|x>|y> - |y>|x>)/√2 over transverse polarization labels.
qcore::StateVector transverse_state();

// |<n₁|<n₂|Ψ>|² for in-plane directions at angles θ₁, θ₂, via the Born rule.
double transverse_joint_probability(Angle theta1, Angle theta2);

// sin²φ / π
double angular_density(Angle phi);

// ∫₀^φ f = (2φ - sin 2φ) / (4π) for φ ∈ [0, 2π].
double angular_cdf(double phi);

// Inverse of angular_cdf on [0, 1).
double sample_angle(double u);

std::vector<EventRecord> generate_events(std::uint64_t n, const DetectorModel& det, std::uint64_t seed,
                                         unsigned worker_count = 1);

// Single event i of the stream; generate_events is a fold over this.
EventRecord generate_event(std::uint64_t index, const DetectorModel& det, std::uint64_t seed);

// Histogram of coincidences with half-open bins [φ, φ+Δφ) covering [0, 2π).
// Empty bins report the 68% one-sided Poisson upper limit (1.148 events) as stat_err.
HistogramEstimate estimate_probability(const std::vector<EventRecord>& events, double bin_width);

// Histogram-style estimate on a single window [start, start + width) (wrapping at 2π).
struct WindowEstimate {
    double start = 0.0;
    double width = 0.0;
    std::uint64_t count = 0;
    double p_hat = 0.0;
    double stat_err = 0.0;
};
WindowEstimate estimate_window(const std::vector<EventRecord>& events, double start, double width);

struct ChSettings {
    Angle t1, t1p, t2, t2p;
};

inline ChSettings optimal_ch_settings() {
    return {Angle(0.0), Angle::pi_fraction(3, 4), Angle::pi_fraction(3, 8), Angle::pi_fraction(1, 8)};
}

struct ChEventResult {
    InequalityReport report;              // S(η) = η₁η₂·J - (η₁·½ + η₂·½) against bound 0
    double joint_combination = 0.0;       // J from the φ windows
    double joint_combination_err = 0.0;
    std::array<WindowEstimate, 4> windows;
};

// Joint terms are read from windows of width `window` centered on the
// relative setting angles θ₂ - θ₁. Throws InsufficientStatistics naming the
// window if any is empty, NoData without coincidences.
ChEventResult ch_from_events(const std::vector<EventRecord>& events, const ChSettings& settings,
                             const DetectorModel& det, double window = 0.02);

// S(η) = η²·J - η·(P(n₁') + P(n₂)) maximized over settings.
struct EfficiencyOptions {
    double search_tol = 1e-9;
    bool cap_joint_at_classical = false;  // J ≤ P(n₁') + P(n₂)
    double grid_step = kPi / 8.0;
};
double max_s_of_eta(double eta, const EfficiencyOptions& opt);

// Smallest η with max S(η) > 0; 1.0 when no η ≤ 1 violates.
double efficiency_threshold(double search_tol = 1e-9);
double efficiency_threshold(const EfficiencyOptions& opt);

struct BetaResult {
    double beta = 0.0;
    bool above_space_like_bound = false;
};

// β = √(1 - 4 m_V² / M²). Throws BelowThreshold if M ≤ 2 m_V.
BetaResult two_body_beta(const KinematicsConfig& k);

// n · br_weight · η₁ · η₂, rounded to the nearest integer.
std::uint64_t effective_statistics(std::uint64_t n_produced, const DetectorModel& det);

// ── Event file I/O ───────────────────────────────────────────────────────────

inline constexpr const char* kEventCsvHeader = "event_id,phi,detected_1,detected_2,is_background";

void write_events_csv(std::ostream& out, const std::vector<EventRecord>& events);
void write_events_csv(const std::filesystem::path& path, const std::vector<EventRecord>& events);
// Throws InvalidArgument on malformed rows or non-increasing ids.
std::vector<EventRecord> read_events_csv(std::istream& in);
std::vector<EventRecord> read_events_csv(const std::filesystem::path& path);

}  // namespace hepbell::mesonlab
