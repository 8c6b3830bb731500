#include <doctest.h>

#include <cmath>
#include <random>

#include "hepbell/errors.hpp"
#include "hepbell/photon3.hpp"

using namespace hepbell;
using namespace hepbell::photon3;
using qcore::Complex;
using qcore::StateVector;

namespace {

constexpr Complex kI{0.0, 1.0};
const double kS = 1.0 / std::sqrt(2.0);

// Independent oracle: expand every helicity ket of |3γ> through
// |R> = (|H> + i|V>)/√2 and |L> = (|H> - i|V>)/√2 at the chosen sites.
std::vector<Complex> expand_by_hand(const std::array<bool, 3>& to_linear) {
    const char* kets[] = {"RRL", "RLR", "LRR", "LLR", "LRL", "RLL"};
    std::vector<Complex> out(8);
    for (const char* ket : kets) {
        for (int idx = 0; idx < 8; ++idx) {
            Complex amp = 1.0 / std::sqrt(6.0);
            for (int site = 0; site < 3; ++site) {
                const int bit = (idx >> (2 - site)) & 1;
                const bool is_r = ket[site] == 'R';
                if (to_linear[static_cast<std::size_t>(site)]) {
                    // bit 0 = H, 1 = V
                    amp *= bit == 0 ? Complex(kS) : (is_r ? kI * kS : -kI * kS);
                } else {
                    // bit 0 = R, 1 = L
                    amp *= (bit == 0) == is_r ? 1.0 : 0.0;
                }
            }
            out[static_cast<std::size_t>(idx)] += amp;
        }
    }
    return out;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

StateVector random_three_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> amps(8);
    for (auto& a : amps) a = {g(rng), g(rng)};
    return StateVector({2, 2, 2}, std::move(amps), {});
}

qcore::Matrix random_unitary2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const double theta = u(rng) / 4.0, a = u(rng), b = u(rng), c = u(rng);
    const Complex ea = std::polar(1.0, a), eb = std::polar(1.0, b), ec = std::polar(1.0, c);
    return qcore::Matrix(2, {ea * std::cos(theta), eb * std::sin(theta), -std::conj(eb) * ec * std::sin(theta),
                             std::conj(ea) * ec * std::cos(theta)});
}

const std::array<PolBasis, 3> kAllLinear{PolBasis::Linear, PolBasis::Linear, PolBasis::Linear};

}  // namespace

TEST_CASE("helicity-basis amplitudes") {
    const auto s = make_ortho_ps_state();
    const double a = 1.0 / std::sqrt(6.0);
    // index bits: photon1 photon2 photon3, R = 0, L = 1
    const std::vector<Complex> expected{0.0, a, a, a, a, a, a, 0.0};
    CHECK(max_diff(s.amps(), expected) < 1e-15);
}

TEST_CASE("linear-basis amplitudes (3,1,1,1)/√12") {
    const auto s = make_ortho_ps_state(kAllLinear);
    const double k = 1.0 / std::sqrt(12.0);
    const std::vector<Complex> expected{3 * k, 0.0, 0.0, k, 0.0, k, k, 0.0};  // HHH, HVV, VHV, VVH
    CHECK(max_diff(s.amps(), expected) < 1e-12);
    CHECK(max_diff(s.amps(), expand_by_hand({true, true, true})) < 1e-12);
}

TEST_CASE("mixed basis: photons 1,2 circular, photon 3 linear") {
    const auto s = make_ortho_ps_state({PolBasis::Circular, PolBasis::Circular, PolBasis::Linear});
    const double k = 1.0 / std::sqrt(12.0);
    // (RR + 2RL + 2LR + LL)H - i(RR - LL)V, index = c1 c2 l3
    const std::vector<Complex> expected{k, -kI * k, 2 * k, 0.0, 2 * k, 0.0, k, kI * k};
    CHECK(max_diff(s.amps(), expected) < 1e-12);
    CHECK(max_diff(s.amps(), expand_by_hand({false, false, true})) < 1e-12);
    CHECK(s.labels()[2] == std::vector<std::string>{"H", "V"});
}

TEST_CASE("circular-linear transform") {
    const auto t = circular_linear_transform();
    const std::array<Complex, 2> h{1.0, 0.0};
    const auto rl = t.apply(h);
    CHECK(std::abs(rl[0] - Complex(kS)) < 1e-15);
    CHECK(std::abs(rl[1] - Complex(kS)) < 1e-15);
    CHECK(qcore::max_abs_diff(t.adjoint() * t, qcore::Matrix::identity(2)) < 1e-12);
    CHECK(qcore::max_abs_diff(t * t.adjoint(), qcore::Matrix::identity(2)) < 1e-12);
}

TEST_CASE("basis round trip returns the helicity state") {
    const auto back = to_basis(make_ortho_ps_state(kAllLinear), {PolBasis::Circular, PolBasis::Circular, PolBasis::Circular});
    CHECK(max_diff(back.amps(), make_ortho_ps_state().amps()) < 1e-12);
}

TEST_CASE("para-positronium state") {
    const auto s = make_para_ps_state();
    const std::array<qcore::SiteOperator, 2> xy{qcore::Projector::onto(std::array<Complex, 2>{1.0, 0.0}),
                                                qcore::Projector::onto(std::array<Complex, 2>{0.0, 1.0})};
    const std::array<qcore::SiteOperator, 2> xx{qcore::Projector::onto(std::array<Complex, 2>{1.0, 0.0}),
                                                qcore::Projector::onto(std::array<Complex, 2>{1.0, 0.0})};
    CHECK(qcore::born_probability(s, xy) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(qcore::born_probability(s, xx) < 1e-15);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < 50; ++i) {
        const double th = u(rng);
        const qcore::Matrix rot(2, {std::cos(th), -std::sin(th), std::sin(th), std::cos(th)});
        auto r = qcore::change_site_basis(s, 0, rot, {"x'", "y'"});
        r = qcore::change_site_basis(r, 1, rot, {"x'", "y'"});
        CHECK(max_diff(r.amps(), s.amps()) < 1e-12);
    }
}

TEST_CASE("Hardy-type probabilities of the three-photon state") {
    using L = Linear;
    for (const auto& [i, j, k] : std::vector<std::array<int, 3>>{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}) {
        CHECK(outcome_probability(TripartiteOutcomeSpec().same_circular(j, k), TripartiteOutcomeSpec().linear(i, L::V)) ==
              doctest::Approx(1.0).epsilon(1e-12));
        CHECK(outcome_probability(TripartiteOutcomeSpec().same_circular(i, k), TripartiteOutcomeSpec().linear(j, L::V)) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(outcome_probability(TripartiteOutcomeSpec().all_same_circular()) < 1e-12);
    const double fixed = outcome_probability(TripartiteOutcomeSpec().linear(1, L::V).linear(2, L::V));
    CHECK(std::abs(fixed - 1.0 / 12.0) < 1e-12);
    CHECK(std::abs(two_vertical_probability(make_ortho_ps_state()) - 0.25) < 1e-12);
}

TEST_CASE("probabilities agree between helicity and linear starting points") {
    using L = Linear;
    const auto helicity = make_ortho_ps_state();
    const auto linear = make_ortho_ps_state(kAllLinear);
    const std::vector<TripartiteOutcomeSpec> events{
        TripartiteOutcomeSpec().linear(1, L::V).linear(2, L::V),
        TripartiteOutcomeSpec().linear(1, L::V).different_circular(2, 3),
        TripartiteOutcomeSpec().different_circular(1, 3).linear(2, L::V),
        TripartiteOutcomeSpec().all_same_circular(),
        TripartiteOutcomeSpec().same_circular(2, 3).linear(1, L::V),
        TripartiteOutcomeSpec().linear(1, L::H).circular(2, Circular::R),
        TripartiteOutcomeSpec().circular(3, Circular::L),
    };
    for (const auto& ev : events) CHECK(std::abs(event_probability(helicity, {ev}) - event_probability(linear, {ev})) < 1e-10);
}

TEST_CASE("outcome constraint errors") {
    CHECK_THROWS_AS(TripartiteOutcomeSpec().same_circular(1, 1), InvalidArgument);
    CHECK_THROWS_AS(TripartiteOutcomeSpec().linear(1, Linear::V).linear(1, Linear::H), InvalidArgument);
    CHECK_THROWS_AS(TripartiteOutcomeSpec().same_circular(1, 2).different_circular(1, 3), InvalidArgument);
    CHECK_THROWS_AS(TripartiteOutcomeSpec().linear(4, Linear::V), InvalidArgument);
    CHECK_THROWS_AS(event_probability(make_ortho_ps_state(),
                                      {TripartiteOutcomeSpec().linear(1, Linear::V), TripartiteOutcomeSpec().circular(1, Circular::R)}),
                    InvalidArgument);
    // |VVV> has zero amplitude
    const auto vvv = TripartiteOutcomeSpec().linear(1, Linear::V).linear(2, Linear::V).linear(3, Linear::V);
    CHECK_THROWS_AS(outcome_probability(TripartiteOutcomeSpec().circular(1, Circular::R), vvv), ConditionOnNullEvent);
}

TEST_CASE("CH-type value: fixed labels and symmetrized") {
    const auto fixed = ch_value_3gamma({1, 2, 3}, false);
    REQUIRE(fixed.terms.size() == 4);
    CHECK(std::abs(fixed.terms[0].probability - 1.0 / 12.0) < 1e-12);
    for (std::size_t t = 1; t < 4; ++t) CHECK(fixed.terms[t].probability < 1e-12);
    CHECK(std::abs(fixed.value - 1.0 / 12.0) < 1e-12);
    CHECK(fixed.bound == 0.0);
    CHECK(fixed.violated);

    const auto sym = ch_value_3gamma({1, 2, 3}, true);
    CHECK(std::abs(sym.value - 0.25) < 1e-12);
    CHECK(sym.violated);
    CHECK(std::abs(fixed.value - sym.value / 3.0) < 1e-12);

    for (const auto& lab : std::vector<std::array<int, 3>>{{1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}})
        CHECK(std::abs(ch_value_3gamma(lab, false).value - 1.0 / 12.0) < 1e-12);
    CHECK_THROWS_AS(ch_value_3gamma({1, 1, 2}, false), InvalidArgument);
}

TEST_CASE("3-tangle reference states") {
    const double s = 1.0 / std::sqrt(2.0), w = 1.0 / std::sqrt(3.0);
    const StateVector ghz({2, 2, 2}, {s, 0, 0, 0, 0, 0, 0, s}, {});
    const StateVector wst({2, 2, 2}, {0, w, w, 0, w, 0, 0, 0}, {});
    CHECK(std::abs(three_tangle(ghz).tau - 1.0) < 1e-9);
    CHECK(three_tangle(ghz).slocc_class == SloccClass::GHZClass);
    CHECK(three_tangle(wst).tau < 1e-9);
    CHECK(three_tangle(wst).slocc_class == SloccClass::NotCertified);

    const auto t = three_tangle(make_ortho_ps_state());
    CHECK(std::abs(t.tau - 1.0 / 3.0) < 1e-9);
    CHECK(t.slocc_class == SloccClass::GHZClass);
    CHECK(std::abs(three_tangle(make_ortho_ps_state(kAllLinear)).tau - 1.0 / 3.0) < 1e-9);

    CHECK_THROWS_AS(three_tangle(make_para_ps_state()), DimensionError);
}

TEST_CASE("3-tangle is invariant under local unitaries") {
    std::mt19937_64 rng(17);
    const auto base = make_ortho_ps_state();
    for (int trial = 0; trial < 100; ++trial) {
        StateVector s = base;
        for (std::size_t site = 0; site < 3; ++site) {
            s = StateVector(s.dims(), qcore::apply_local(s, site, random_unitary2(rng)), {});
        }
        CHECK(std::abs(three_tangle(s).tau - 1.0 / 3.0) < 1e-8);
    }
}

TEST_CASE("3-tangle stays in [0,1] on random states") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 1000; ++trial) {
        const double tau = three_tangle(random_three_qubit(rng)).tau;
        CHECK(tau >= 0.0);
        CHECK(tau <= 1.0 + 1e-12);
    }
}
