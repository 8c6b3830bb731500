/*
 * Classical side of both inequalities.
 *
 * Local hidden-variable models are mixtures of deterministic strategies, so
 * the classical maximum of any linear combination of probabilities is
 * attained at a deterministic strategy. Enumerating all of them certifies
 * the bound exactly.
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hepbell/inequality.hpp"

namespace hepbell::lhv {

// Per photon: linear answer (0 = H, 1 = V) and circular answer (0 = R, 1 = L).
struct DeterministicStrategy3Gamma {
    std::array<int, 3> linear{};
    std::array<int, 3> circular{};

    static constexpr std::size_t kCount = 64;
    // Canonical order: lexicographic in (lin₁, circ₁, lin₂, circ₂, lin₃, circ₃), H<V, R<L.
    static DeterministicStrategy3Gamma from_index(std::size_t index);
    std::size_t index() const;
    std::string describe() const;
};

// Side 1 answers for J_x and J_β, side 2 for J_γ and J_α; each in {-1, 0, +1}.
struct DeterministicStrategySpin1 {
    int x = 0;
    int beta = 0;
    int gamma = 0;
    int alpha = 0;

    static constexpr std::size_t kCount = 81;
    // Canonical order: lexicographic in (x, β, γ, α) with -1 < 0 < +1.
    static DeterministicStrategySpin1 from_index(std::size_t index);
    std::size_t index() const;
    std::string describe() const;
};

// Per-term indicator values of the fixed-label (1,2,3) CH expression.
InequalityReport ch_3gamma_report(const DeterministicStrategy3Gamma& s);
// LHS - RHS of the Hardy constraint; terms are P(x=0,γ=0), P(x=0,α≠0), P(β≠0,γ=0), P(β=0,α=0).
InequalityReport hardy_spin1_report(const DeterministicStrategySpin1& s);

template <typename Strategy>
struct LhvMaximum {
    double value = 0.0;
    Strategy witness;
};

// Exhaustive maximum; the witness is the first maximizer in canonical order.
LhvMaximum<DeterministicStrategy3Gamma> max_ch_3gamma_lhv();
LhvMaximum<DeterministicStrategySpin1> max_hardy_spin1_lhv();

enum class Game { Tripartite, HardySpin1 };

std::size_t strategy_count(Game g);
// Deterministic value of strategy `index` in canonical order.
double strategy_value(Game g, std::size_t index);
// Σ wᵢ · value(i).
double mixture_expectation(Game g, std::span<const double> weights);

struct LhvStreamSummary {
    std::uint64_t n = 0;
    std::vector<std::string> term_names;
    std::vector<double> term_frequency;  // empirical indicator means
    std::vector<double> coefficients;
    double value = 0.0;                  // empirical inequality value
    double stat_err = 0.0;               // standard error of the mean
    std::vector<std::uint64_t> strategy_counts;
};

// Samples n strategies i.i.d. from the mixture (Philox keyed by seed,
// counter = trial index) and accumulates the inequality terms.
// Throws InvalidArgument for negative weights, wrong length or Σw ≠ 1 (1e-12).
LhvStreamSummary lhv_event_stream(Game g, std::span<const double> weights, std::uint64_t n, std::uint64_t seed);

}  // namespace hepbell::lhv
