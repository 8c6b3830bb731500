#include <doctest.h>

#include <random>

#include "hepbell/errors.hpp"
#include "hepbell/lhv.hpp"

using namespace hepbell;
using namespace hepbell::lhv;

namespace {

// Oracle values straight from the two inequalities, decoding indices by hand.
double tripartite_oracle(std::size_t idx) {
    int lin[3], circ[3];
    for (int p = 0; p < 3; ++p) {
        lin[p] = static_cast<int>(idx >> (5 - 2 * p)) & 1;
        circ[p] = static_cast<int>(idx >> (4 - 2 * p)) & 1;
    }
    const bool v1 = lin[0] == 1, v2 = lin[1] == 1;
    return (v1 && v2) - (v1 && circ[1] != circ[2]) - (circ[0] != circ[2] && v2) -
           (circ[0] == circ[1] && circ[1] == circ[2]);
}

double hardy_oracle(std::size_t idx) {
    const int alpha = static_cast<int>(idx % 3) - 1;
    const int gamma = static_cast<int>(idx / 3 % 3) - 1;
    const int beta = static_cast<int>(idx / 9 % 3) - 1;
    const int x = static_cast<int>(idx / 27 % 3) - 1;
    return (x == 0 && gamma == 0) - (x == 0 && alpha != 0) - (beta != 0 && gamma == 0) - (beta == 0 && alpha == 0);
}

double oracle(Game g, std::size_t i) { return g == Game::Tripartite ? tripartite_oracle(i) : hardy_oracle(i); }

std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> e;
    std::vector<double> w(n);
    double sum = 0.0;
    for (auto& x : w) sum += x = e(rng);
    for (auto& x : w) x /= sum;
    return w;
}

}  // namespace

TEST_CASE("strategy indexing round trips") {
    for (std::size_t i = 0; i < 64; ++i) CHECK(DeterministicStrategy3Gamma::from_index(i).index() == i);
    for (std::size_t i = 0; i < 81; ++i) CHECK(DeterministicStrategySpin1::from_index(i).index() == i);
    CHECK_THROWS_AS(DeterministicStrategy3Gamma::from_index(64), InvalidArgument);
    CHECK_THROWS_AS(DeterministicStrategySpin1::from_index(81), InvalidArgument);
    CHECK(DeterministicStrategy3Gamma::from_index(0).describe() == "linear=HHH circular=RRR");
    CHECK(strategy_count(Game::Tripartite) == 64);
    CHECK(strategy_count(Game::HardySpin1) == 81);
}

TEST_CASE("deterministic values match the oracle") {
    for (auto g : {Game::Tripartite, Game::HardySpin1})
        for (std::size_t i = 0; i < strategy_count(g); ++i) CHECK(strategy_value(g, i) == oracle(g, i));
}

TEST_CASE("exhaustive tripartite maximum") {
    const auto m = max_ch_3gamma_lhv();
    CHECK(m.value == 0.0);
    CHECK(m.witness.describe() == "linear=HHH circular=RRL");

    DeterministicStrategy3Gamma all_r;
    CHECK(ch_3gamma_report(all_r).value == -1.0);

    DeterministicStrategy3Gamma s;
    s.linear = {1, 1, 0};
    s.circular = {0, 0, 1};
    const auto r = ch_3gamma_report(s);
    CHECK(r.terms[0].probability == 1.0);
    CHECK(r.value <= 0.0);
    CHECK_FALSE(r.violated);
    for (std::size_t i = 0; i < 64; ++i) CHECK(strategy_value(Game::Tripartite, i) <= 0.0);
}

TEST_CASE("exhaustive Hardy maximum") {
    const auto m = max_hardy_spin1_lhv();
    CHECK(m.value == 0.0);
    CHECK(m.witness.x == -1);
    CHECK(m.witness.beta == -1);
    CHECK(m.witness.gamma == -1);
    CHECK(m.witness.alpha == -1);

    const DeterministicStrategySpin1 s{0, 1, 0, 0};
    const auto r = hardy_spin1_report(s);
    CHECK(r.terms[0].probability == 1.0);
    CHECK(r.value == 0.0);
    const auto plus = hardy_spin1_report({1, 1, 1, 1});
    CHECK(plus.value == 0.0);
    for (const auto& t : plus.terms) CHECK(t.probability == 0.0);
    for (std::size_t i = 0; i < 81; ++i) CHECK(strategy_value(Game::HardySpin1, i) <= 0.0);
}

TEST_CASE("mixture expectation is the weighted deterministic sum") {
    std::mt19937_64 rng(47);
    for (auto g : {Game::Tripartite, Game::HardySpin1}) {
        const std::size_t n = strategy_count(g);
        for (int trial = 0; trial < 100; ++trial) {
            const auto w = random_weights(n, rng);
            double expected = 0.0;
            for (std::size_t i = 0; i < n; ++i) expected += w[i] * oracle(g, i);
            CHECK(std::abs(mixture_expectation(g, w) - expected) < 1e-12);
            CHECK(mixture_expectation(g, w) <= 1e-12);
        }
    }
}

TEST_CASE("uniform mixture stream") {
    for (auto [g, exact] : {std::pair{Game::Tripartite, -0.5}, std::pair{Game::HardySpin1, -4.0 / 9.0}}) {
        const std::size_t n = strategy_count(g);
        const std::vector<double> w(n, 1.0 / static_cast<double>(n));
        CHECK(std::abs(mixture_expectation(g, w) - exact) < 1e-12);
        const auto s = lhv_event_stream(g, w, 100'000, 42);
        CHECK(s.n == 100'000);
        CHECK(std::abs(s.value - exact) < 3.0 * s.stat_err);
        CHECK(s.value < 3.0 * s.stat_err);
        std::uint64_t total = 0;
        for (auto c : s.strategy_counts) total += c;
        CHECK(total == s.n);
        double recombined = 0.0;
        for (std::size_t t = 0; t < s.term_frequency.size(); ++t) recombined += s.coefficients[t] * s.term_frequency[t];
        CHECK(std::abs(recombined - s.value) < 1e-12);
    }
}

TEST_CASE("random mixtures never show a significant violation") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = trial % 2 ? Game::HardySpin1 : Game::Tripartite;
        const auto w = random_weights(strategy_count(g), rng);
        const auto s = lhv_event_stream(g, w, 1'000'000, 1000 + static_cast<std::uint64_t>(trial));
        CHECK(s.value <= 1e-2);
        CHECK(std::abs(s.value - mixture_expectation(g, w)) < 5.0 * s.stat_err + 1e-12);
    }
}

TEST_CASE("point mass reproduces the deterministic value") {
    for (auto g : {Game::Tripartite, Game::HardySpin1}) {
        for (std::size_t i : {std::size_t{0}, std::size_t{17}, strategy_count(g) - 1}) {
            std::vector<double> w(strategy_count(g), 0.0);
            w[i] = 1.0;
            const auto s = lhv_event_stream(g, w, 1000, 9);
            CHECK(s.value == strategy_value(g, i));
            CHECK(s.strategy_counts[i] == 1000);
            CHECK(s.stat_err == 0.0);
        }
    }
}

TEST_CASE("streams are reproducible") {
    std::mt19937_64 rng(59);
    const auto w = random_weights(64, rng);
    const auto a = lhv_event_stream(Game::Tripartite, w, 10'000, 5);
    const auto b = lhv_event_stream(Game::Tripartite, w, 10'000, 5);
    CHECK(a.strategy_counts == b.strategy_counts);
    CHECK(a.value == b.value);
}

TEST_CASE("invalid weights are rejected") {
    std::vector<double> w(64, 1.0 / 64.0);
    w[0] = -w[0];
    w[1] += 2.0 / 64.0;
    CHECK_THROWS_AS(lhv_event_stream(Game::Tripartite, w, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(mixture_expectation(Game::Tripartite, w), InvalidArgument);
    CHECK_THROWS_AS(lhv_event_stream(Game::Tripartite, std::vector<double>(63, 1.0 / 63.0), 10, 1), InvalidArgument);
    CHECK_THROWS_AS(lhv_event_stream(Game::HardySpin1, std::vector<double>(81, 0.5 / 81.0), 10, 1), InvalidArgument);
}
