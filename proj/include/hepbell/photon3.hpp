/*
 * Three-photon polarization state of ortho-positronium decay.
 *
 * Helicity basis (site order photon 1, 2, 3; index 0 = R, 1 = L):
 *   |3γ> = (|RRL> + |RLR> + |LRR> + |LLR> + |LRL> + |RLL>) / √6
 *
 * Circular and linear kets are related by
 *   (|R>, |L>)ᵀ = T (|H>, |V>)ᵀ,   T = (1/√2) [[1, i], [1, -i]]
 * so circular amplitudes map to linear ones through Tᵀ. Under this
 * convention the linear-basis form is (3|HHH> + |HVV> + |VHV> + |VVH>)/√12
 * exactly, including phase.
 */
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "hepbell/inequality.hpp"
#include "hepbell/qcore.hpp"

namespace hepbell::photon3 {

enum class PolBasis { Circular, Linear };
enum class Linear { H = 0, V = 1 };
enum class Circular { R = 0, L = 1 };

// (1/√2)[[1, i], [1, -i]]: row r expands circular ket r in (|H>, |V>).
qcore::Matrix circular_linear_transform();

// (|xy> - |yx>)/√2 over linear polarization labels x, y.
qcore::StateVector make_para_ps_state();

qcore::StateVector make_ortho_ps_state(const std::array<PolBasis, 3>& basis = {PolBasis::Circular, PolBasis::Circular,
                                                                                PolBasis::Circular});

// Re-expresses any three-photon state (labels R/L or H/V per site) in the requested bases.
qcore::StateVector to_basis(const qcore::StateVector& state, const std::array<PolBasis, 3>& basis);

// ── Events ───────────────────────────────────────────────────────────────────

enum class Relation { Equal, NotEqual };

// One detection event on the three photons. Each photon is either left
// unmeasured, fixed to a linear or circular outcome, or belongs to the
// circular correlation group whose members must satisfy `relation`.
class TripartiteOutcomeSpec {
public:
    struct Entry {
        enum class Kind { Marginal, FixedLinear, FixedCircular, CircularGroup } kind = Kind::Marginal;
        int outcome = 0;  // Linear or Circular index for the fixed kinds
    };

    TripartiteOutcomeSpec() = default;

    // Photon indices are 1-based, matching the physics notation.
    TripartiteOutcomeSpec& linear(int photon, Linear value);
    TripartiteOutcomeSpec& circular(int photon, Circular value);
    TripartiteOutcomeSpec& same_circular(int photon_a, int photon_b);
    TripartiteOutcomeSpec& different_circular(int photon_a, int photon_b);
    TripartiteOutcomeSpec& all_same_circular();

    const std::array<Entry, 3>& entries() const noexcept { return entries_; }
    Relation relation() const noexcept { return relation_; }

    // Basis required at each photon, or nullopt if unmeasured.
    std::optional<PolBasis> basis_of(std::size_t site) const;
    // Whether a full outcome tuple (indices in the bases chosen by basis_of) belongs to the event.
    bool contains(const std::array<std::size_t, 3>& outcome) const;

private:
    void set_group(int a, int b, Relation r);
    Entry& at(int photon);

    std::array<Entry, 3> entries_{};
    Relation relation_ = Relation::Equal;
};

// Probability of the conjunction of `events` on `state`.
// Throws InvalidArgument if two events demand different bases on one photon.
double event_probability(const qcore::StateVector& state, const std::vector<TripartiteOutcomeSpec>& events);

// Joint or conditional probability on |3γ>.
// Throws ConditionOnNullEvent if the condition has probability < 1e-12.
double outcome_probability(const TripartiteOutcomeSpec& event,
                           const std::optional<TripartiteOutcomeSpec>& conditional_on = std::nullopt);

// Same, on an arbitrary three-photon state.
double outcome_probability(const qcore::StateVector& state, const TripartiteOutcomeSpec& event,
                           const std::optional<TripartiteOutcomeSpec>& conditional_on = std::nullopt);

// P(exactly two photons V) summed over the three pairs.
double two_vertical_probability(const qcore::StateVector& state);

// CH-type expression
//   P(i=V, j=V) - P(i=V, C_j≠C_k) - P(C_i≠C_k, j=V) - P(C_i=C_j=C_k) ≤ 0
// for labeling (i, j, k), a permutation of (1, 2, 3). With `symmetrized`
// the first term becomes the probability that some two photons are V.
InequalityReport ch_value_3gamma(const std::array<int, 3>& labeling = {1, 2, 3}, bool symmetrized = false);
InequalityReport ch_value_3gamma(const qcore::StateVector& state, const std::array<int, 3>& labeling,
                                 bool symmetrized);

// ── 3-tangle ─────────────────────────────────────────────────────────────────

enum class SloccClass { GHZClass, NotCertified };

struct TangleReport {
    double tau = 0.0;
    SloccClass slocc_class = SloccClass::NotCertified;
};

inline constexpr double kGhzTauThreshold = 1e-9;

// Residual tangle from the Cayley hyperdeterminant of the eight amplitudes.
TangleReport three_tangle(const qcore::StateVector& state);

}  // namespace hepbell::photon3
