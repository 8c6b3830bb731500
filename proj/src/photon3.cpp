#include "hepbell/photon3.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hepbell/errors.hpp"

namespace hepbell::photon3 {

using qcore::Complex;
using qcore::Matrix;
using qcore::StateVector;

namespace {

const std::vector<std::string> kCircularLabels{"R", "L"};
const std::vector<std::string> kLinearLabels{"H", "V"};
constexpr Complex kI{0.0, 1.0};

PolBasis basis_from_labels(const std::vector<std::string>& labels) {
    if (labels == kCircularLabels) return PolBasis::Circular;
    if (labels == kLinearLabels) return PolBasis::Linear;
    throw InvalidArgument("site is not labeled R/L or H/V");
}

const std::vector<std::string>& labels_of(PolBasis b) {
    return b == PolBasis::Circular ? kCircularLabels : kLinearLabels;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) t(c, r) = m(r, c);
    return t;
}

void check_photon(int photon) {
    if (photon < 1 || photon > 3) throw InvalidArgument("photon index must be 1, 2 or 3");
}

}  // namespace

Matrix circular_linear_transform() {
    const double s = 1.0 / std::sqrt(2.0);
    return Matrix(2, {s, s * kI, s, -s * kI});
}

StateVector make_para_ps_state() {
    const double s = 1.0 / std::sqrt(2.0);
    return StateVector({2, 2}, {0.0, s, -s, 0.0}, {{"x", "y"}, {"x", "y"}});
}

StateVector make_ortho_ps_state(const std::array<PolBasis, 3>& basis) {
    std::vector<Complex> amps(8);
    const double s = 1.0 / std::sqrt(6.0);
    for (std::size_t i = 0; i < 8; ++i) {
        const int ls = static_cast<int>((i >> 2 & 1) + (i >> 1 & 1) + (i & 1));
        if (ls == 1 || ls == 2) amps[i] = s;  // exactly one or two L photons
    }
    StateVector helicity({2, 2, 2}, std::move(amps), {kCircularLabels, kCircularLabels, kCircularLabels});
    return to_basis(helicity, basis);
}

StateVector to_basis(const StateVector& state, const std::array<PolBasis, 3>& basis) {
    if (state.dims() != std::vector<std::size_t>{2, 2, 2}) throw DimensionError("three-photon state must be 2x2x2");
    const Matrix t = circular_linear_transform();
    const Matrix to_linear = transpose(t);
    const Matrix to_circular = to_linear.adjoint();
    StateVector out = state;
    for (std::size_t site = 0; site < 3; ++site) {
        const PolBasis have = basis_from_labels(out.labels()[site]);
        if (have == basis[site]) continue;
        out = qcore::change_site_basis(out, site, have == PolBasis::Circular ? to_linear : to_circular,
                                       labels_of(basis[site]));
    }
    return out;
}

// ── TripartiteOutcomeSpec ────────────────────────────────────────────────────

TripartiteOutcomeSpec::Entry& TripartiteOutcomeSpec::at(int photon) {
    check_photon(photon);
    auto& e = entries_[static_cast<std::size_t>(photon - 1)];
    if (e.kind != Entry::Kind::Marginal) throw InvalidArgument("photon " + std::to_string(photon) + " already constrained");
    return e;
}

TripartiteOutcomeSpec& TripartiteOutcomeSpec::linear(int photon, Linear value) {
    at(photon) = {Entry::Kind::FixedLinear, static_cast<int>(value)};
    return *this;
}

TripartiteOutcomeSpec& TripartiteOutcomeSpec::circular(int photon, Circular value) {
    at(photon) = {Entry::Kind::FixedCircular, static_cast<int>(value)};
    return *this;
}

void TripartiteOutcomeSpec::set_group(int a, int b, Relation r) {
    check_photon(a);
    check_photon(b);
    if (a == b) throw InvalidArgument("circular pair needs two distinct photons");
    if (std::any_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.kind == Entry::Kind::CircularGroup; }))
        throw InvalidArgument("at most one circular correlation group per event");
    at(a) = {Entry::Kind::CircularGroup, 0};
    at(b) = {Entry::Kind::CircularGroup, 0};
    relation_ = r;
}

TripartiteOutcomeSpec& TripartiteOutcomeSpec::same_circular(int a, int b) {
    set_group(a, b, Relation::Equal);
    return *this;
}

TripartiteOutcomeSpec& TripartiteOutcomeSpec::different_circular(int a, int b) {
    set_group(a, b, Relation::NotEqual);
    return *this;
}

TripartiteOutcomeSpec& TripartiteOutcomeSpec::all_same_circular() {
    set_group(1, 2, Relation::Equal);
    at(3) = {Entry::Kind::CircularGroup, 0};
    return *this;
}

std::optional<PolBasis> TripartiteOutcomeSpec::basis_of(std::size_t site) const {
    switch (entries_.at(site).kind) {
        case Entry::Kind::Marginal:
            return std::nullopt;
        case Entry::Kind::FixedLinear:
            return PolBasis::Linear;
        default:
            return PolBasis::Circular;
    }
}

bool TripartiteOutcomeSpec::contains(const std::array<std::size_t, 3>& outcome) const {
    std::optional<std::size_t> first;
    bool all_equal = true;
    for (std::size_t s = 0; s < 3; ++s) {
        const auto& e = entries_[s];
        switch (e.kind) {
            case Entry::Kind::Marginal:
                break;
            case Entry::Kind::FixedLinear:
            case Entry::Kind::FixedCircular:
                if (outcome[s] != static_cast<std::size_t>(e.outcome)) return false;
                break;
            case Entry::Kind::CircularGroup:
                if (!first) first = outcome[s];
                else if (*first != outcome[s]) all_equal = false;
                break;
        }
    }
    if (!first) return true;
    return relation_ == Relation::Equal ? all_equal : !all_equal;
}

// ── Probabilities ────────────────────────────────────────────────────────────

double event_probability(const StateVector& state, const std::vector<TripartiteOutcomeSpec>& events) {
    std::array<std::optional<PolBasis>, 3> need{};
    for (const auto& ev : events) {
        for (std::size_t s = 0; s < 3; ++s) {
            const auto b = ev.basis_of(s);
            if (!b) continue;
            if (need[s] && *need[s] != *b)
                throw InvalidArgument("photon " + std::to_string(s + 1) + " cannot be measured in both bases");
            need[s] = b;
        }
    }
    std::array<PolBasis, 3> basis{};
    for (std::size_t s = 0; s < 3; ++s) basis[s] = need[s].value_or(PolBasis::Circular);
    const StateVector in_basis = to_basis(state, basis);

    double p = 0.0;
    for (std::size_t flat = 0; flat < 8; ++flat) {
        const std::array<std::size_t, 3> out{flat >> 2 & 1, flat >> 1 & 1, flat & 1};
        if (std::all_of(events.begin(), events.end(), [&](const auto& ev) { return ev.contains(out); }))
            p += std::norm(in_basis.amps()[flat]);
    }
    if (!std::isfinite(p)) throw InternalInconsistency("non-finite event probability");
    return std::clamp(p, 0.0, 1.0);
}

double outcome_probability(const StateVector& state, const TripartiteOutcomeSpec& event,
                           const std::optional<TripartiteOutcomeSpec>& conditional_on) {
    if (!conditional_on) return event_probability(state, {event});
    const double pc = event_probability(state, {*conditional_on});
    if (pc < 1e-12) throw ConditionOnNullEvent("conditioning event has probability " + std::to_string(pc));
    return std::clamp(event_probability(state, {event, *conditional_on}) / pc, 0.0, 1.0);
}

double outcome_probability(const TripartiteOutcomeSpec& event, const std::optional<TripartiteOutcomeSpec>& conditional_on) {
    return outcome_probability(make_ortho_ps_state(), event, conditional_on);
}

double two_vertical_probability(const StateVector& state) {
    double p = 0.0;
    for (int h = 1; h <= 3; ++h) {
        TripartiteOutcomeSpec ev;
        for (int k = 1; k <= 3; ++k) ev.linear(k, k == h ? Linear::H : Linear::V);
        p += event_probability(state, {ev});
    }
    return p;
}

InequalityReport ch_value_3gamma(const StateVector& state, const std::array<int, 3>& labeling, bool symmetrized) {
    auto sorted = labeling;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{1, 2, 3}) throw InvalidArgument("labeling must be a permutation of (1,2,3)");
    const auto [i, j, k] = labeling;
    const std::string si = std::to_string(i), sj = std::to_string(j), sk = std::to_string(k);

    std::vector<InequalityTerm> terms;
    if (symmetrized) {
        terms.push_back({"P(two photons V)", 1.0, two_vertical_probability(state), std::nullopt});
    } else {
        terms.push_back({"P(" + si + "=V," + sj + "=V)", 1.0,
                         event_probability(state, {TripartiteOutcomeSpec().linear(i, Linear::V).linear(j, Linear::V)}),
                         std::nullopt});
    }
    terms.push_back({"P(" + si + "=V,C" + sj + "!=C" + sk + ")", -1.0,
                     event_probability(state, {TripartiteOutcomeSpec().linear(i, Linear::V).different_circular(j, k)}),
                     std::nullopt});
    terms.push_back({"P(C" + si + "!=C" + sk + "," + sj + "=V)", -1.0,
                     event_probability(state, {TripartiteOutcomeSpec().different_circular(i, k).linear(j, Linear::V)}),
                     std::nullopt});
    terms.push_back({"P(C1=C2=C3)", -1.0, event_probability(state, {TripartiteOutcomeSpec().all_same_circular()}),
                     std::nullopt});
    return make_report(std::move(terms), 0.0);
}

InequalityReport ch_value_3gamma(const std::array<int, 3>& labeling, bool symmetrized) {
    return ch_value_3gamma(make_ortho_ps_state(), labeling, symmetrized);
}

// ── 3-tangle ─────────────────────────────────────────────────────────────────

TangleReport three_tangle(const StateVector& state) {
    if (state.dims() != std::vector<std::size_t>{2, 2, 2}) throw DimensionError("3-tangle needs a three-qubit state");
    const auto& a = state.amps();
    auto c = [&](int i, int j, int k) { return a[static_cast<std::size_t>(i * 4 + j * 2 + k)]; };

    const Complex d1 = c(0, 0, 0) * c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 1) + c(0, 0, 1) * c(0, 0, 1) * c(1, 1, 0) * c(1, 1, 0) +
                       c(0, 1, 0) * c(0, 1, 0) * c(1, 0, 1) * c(1, 0, 1) + c(1, 0, 0) * c(1, 0, 0) * c(0, 1, 1) * c(0, 1, 1);
    const Complex d2 = c(0, 0, 0) * c(1, 1, 1) * c(0, 1, 1) * c(1, 0, 0) + c(0, 0, 0) * c(1, 1, 1) * c(1, 0, 1) * c(0, 1, 0) +
                       c(0, 0, 0) * c(1, 1, 1) * c(1, 1, 0) * c(0, 0, 1) + c(0, 1, 1) * c(1, 0, 0) * c(1, 0, 1) * c(0, 1, 0) +
                       c(0, 1, 1) * c(1, 0, 0) * c(1, 1, 0) * c(0, 0, 1) + c(1, 0, 1) * c(0, 1, 0) * c(1, 1, 0) * c(0, 0, 1);
    const Complex d3 = c(0, 0, 0) * c(1, 1, 0) * c(1, 0, 1) * c(0, 1, 1) + c(1, 1, 1) * c(0, 0, 1) * c(0, 1, 0) * c(1, 0, 0);

    TangleReport r;
    r.tau = 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
    if (!std::isfinite(r.tau)) throw InternalInconsistency("non-finite 3-tangle");
    r.tau = std::clamp(r.tau, 0.0, 1.0);
    r.slocc_class = r.tau > kGhzTauThreshold ? SloccClass::GHZClass : SloccClass::NotCertified;
    return r;
}

}  // namespace hepbell::photon3
