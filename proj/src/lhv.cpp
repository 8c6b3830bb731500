#include "hepbell/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hepbell/errors.hpp"
#include "hepbell/philox.hpp"

namespace hepbell::lhv {

namespace {

double ind(bool b) { return b ? 1.0 : 0.0; }

template <typename Strategy, typename Report>
LhvMaximum<Strategy> enumerate_max(Report report) {
    LhvMaximum<Strategy> best{report(Strategy::from_index(0)).value, Strategy::from_index(0)};
    for (std::size_t i = 1; i < Strategy::kCount; ++i) {
        const auto s = Strategy::from_index(i);
        const double v = report(s).value;
        if (v > best.value) best = {v, s};
    }
    return best;
}

InequalityReport report_for(Game g, std::size_t index) {
    return g == Game::Tripartite ? ch_3gamma_report(DeterministicStrategy3Gamma::from_index(index))
                                 : hardy_spin1_report(DeterministicStrategySpin1::from_index(index));
}

}  // namespace

// ── Tripartite ───────────────────────────────────────────────────────────────

DeterministicStrategy3Gamma DeterministicStrategy3Gamma::from_index(std::size_t index) {
    if (index >= kCount) throw InvalidArgument("strategy index out of range");
    DeterministicStrategy3Gamma s;
    for (std::size_t p = 0; p < 3; ++p) {
        const std::size_t shift = 5 - 2 * p;
        s.linear[p] = static_cast<int>(index >> shift & 1);
        s.circular[p] = static_cast<int>(index >> (shift - 1) & 1);
    }
    return s;
}

std::size_t DeterministicStrategy3Gamma::index() const {
    std::size_t idx = 0;
    for (std::size_t p = 0; p < 3; ++p) idx = idx << 2 | static_cast<std::size_t>(linear[p] << 1 | circular[p]);
    return idx;
}

std::string DeterministicStrategy3Gamma::describe() const {
    std::string lin, circ;
    for (std::size_t p = 0; p < 3; ++p) {
        lin += linear[p] ? 'V' : 'H';
        circ += circular[p] ? 'L' : 'R';
    }
    return "linear=" + lin + " circular=" + circ;
}

InequalityReport ch_3gamma_report(const DeterministicStrategy3Gamma& s) {
    const bool v1 = s.linear[0] == 1, v2 = s.linear[1] == 1;
    const auto& c = s.circular;
    return make_report({{"P(1=V,2=V)", 1.0, ind(v1 && v2), std::nullopt},
                        {"P(1=V,C2!=C3)", -1.0, ind(v1 && c[1] != c[2]), std::nullopt},
                        {"P(C1!=C3,2=V)", -1.0, ind(c[0] != c[2] && v2), std::nullopt},
                        {"P(C1=C2=C3)", -1.0, ind(c[0] == c[1] && c[1] == c[2]), std::nullopt}},
                       0.0, 0.0);
}

LhvMaximum<DeterministicStrategy3Gamma> max_ch_3gamma_lhv() {
    return enumerate_max<DeterministicStrategy3Gamma>(ch_3gamma_report);
}

// ── Spin-1 ───────────────────────────────────────────────────────────────────

DeterministicStrategySpin1 DeterministicStrategySpin1::from_index(std::size_t index) {
    if (index >= kCount) throw InvalidArgument("strategy index out of range");
    const auto digit = [&](std::size_t place) { return static_cast<int>(index / place % 3) - 1; };
    return {digit(27), digit(9), digit(3), digit(1)};
}

std::size_t DeterministicStrategySpin1::index() const {
    return static_cast<std::size_t>(((x + 1) * 27) + ((beta + 1) * 9) + ((gamma + 1) * 3) + (alpha + 1));
}

std::string DeterministicStrategySpin1::describe() const {
    return "v(x)=" + std::to_string(x) + " v(beta)=" + std::to_string(beta) + " v(gamma)=" + std::to_string(gamma) +
           " v(alpha)=" + std::to_string(alpha);
}

InequalityReport hardy_spin1_report(const DeterministicStrategySpin1& s) {
    return make_report({{"P(Jx=0,Jg=0)", 1.0, ind(s.x == 0 && s.gamma == 0), std::nullopt},
                        {"P(Jx=0,Ja!=0)", -1.0, ind(s.x == 0 && s.alpha != 0), std::nullopt},
                        {"P(Jb!=0,Jg=0)", -1.0, ind(s.beta != 0 && s.gamma == 0), std::nullopt},
                        {"P(Jb=0,Ja=0)", -1.0, ind(s.beta == 0 && s.alpha == 0), std::nullopt}},
                       0.0, 0.0);
}

LhvMaximum<DeterministicStrategySpin1> max_hardy_spin1_lhv() {
    return enumerate_max<DeterministicStrategySpin1>(hardy_spin1_report);
}

// ── Mixtures ─────────────────────────────────────────────────────────────────

std::size_t strategy_count(Game g) {
    return g == Game::Tripartite ? DeterministicStrategy3Gamma::kCount : DeterministicStrategySpin1::kCount;
}

double strategy_value(Game g, std::size_t index) { return report_for(g, index).value; }

namespace {

void validate_weights(Game g, std::span<const double> w) {
    if (w.size() != strategy_count(g)) throw InvalidArgument("one weight per deterministic strategy required");
    if (std::any_of(w.begin(), w.end(), [](double x) { return !(x >= 0.0) || !std::isfinite(x); }))
        throw InvalidArgument("mixture weights must be finite and nonnegative");
    if (std::abs(std::accumulate(w.begin(), w.end(), 0.0) - 1.0) > 1e-12)
        throw InvalidArgument("mixture weights must sum to 1");
}

}  // namespace

double mixture_expectation(Game g, std::span<const double> weights) {
    validate_weights(g, weights);
    double e = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) e += weights[i] * strategy_value(g, i);
    return e;
}

LhvStreamSummary lhv_event_stream(Game g, std::span<const double> weights, std::uint64_t n, std::uint64_t seed) {
    validate_weights(g, weights);
    if (n < 1) throw InvalidArgument("need at least one trial");
    const std::size_t count = strategy_count(g);

    std::vector<InequalityReport> reports;
    for (std::size_t i = 0; i < count; ++i) reports.push_back(report_for(g, i));
    std::vector<double> cumulative(count);
    std::partial_sum(weights.begin(), weights.end(), cumulative.begin());

    LhvStreamSummary out;
    out.n = n;
    for (const auto& t : reports.front().terms) {
        out.term_names.push_back(t.name);
        out.coefficients.push_back(t.coefficient);
    }
    out.term_frequency.assign(out.term_names.size(), 0.0);
    out.strategy_counts.assign(count, 0);

    const rng::Key key = rng::key_from_seed(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::uint64_t t = 0; t < n; ++t) {
        const auto r = rng::philox4x32_10({static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32), 0u, 0u}, key);
        const double u = rng::to_unit(r[0], r[1]) * cumulative.back();
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        // upper_bound never lands on a zero-weight entry: its cumulative equals its predecessor's.
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), count - 1);
        ++out.strategy_counts[idx];
        const auto& rep = reports[idx];
        for (std::size_t k = 0; k < rep.terms.size(); ++k) out.term_frequency[k] += rep.terms[k].probability;
        sum += rep.value;
        sum_sq += rep.value * rep.value;
    }
    const double nn = static_cast<double>(n);
    for (auto& f : out.term_frequency) f /= nn;
    out.value = sum / nn;
    const double var = std::max(0.0, sum_sq / nn - out.value * out.value);
    out.stat_err = std::sqrt(var / nn);
    return out;
}

}  // namespace hepbell::lhv
