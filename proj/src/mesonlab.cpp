#include "hepbell/mesonlab.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "hepbell/errors.hpp"
#include "hepbell/philox.hpp"
#include "hepbell/search.hpp"
#include "hepbell/spin1.hpp"

namespace hepbell::mesonlab {

using qcore::Complex;

void DetectorModel::validate() const {
    auto check = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
    };
    check(eta_1, "eta_1");
    check(eta_2, "eta_2");
    check(background_fraction, "background_fraction");
    check(br_weight, "br_weight");
}

// ── State and density ────────────────────────────────────────────────────────

qcore::StateVector transverse_state() {
    const double s = 1.0 / std::sqrt(2.0);
    return qcore::StateVector({2, 2}, {0.0, s, -s, 0.0}, {{"x", "y"}, {"x", "y"}});
}

double transverse_joint_probability(Angle theta1, Angle theta2) {
    auto direction = [](Angle t) {
        const std::array<Complex, 2> n{std::cos(t.radians()), std::sin(t.radians())};
        return qcore::Projector::onto(n);
    };
    const std::array<qcore::SiteOperator, 2> ops{direction(theta1), direction(theta2)};
    return qcore::born_probability(transverse_state(), ops);
}

double angular_density(Angle phi) {
    const double s = std::sin(phi.radians());
    return s * s / kPi;
}

double angular_cdf(double phi) { return (2.0 * phi - std::sin(2.0 * phi)) / (4.0 * kPi); }

double sample_angle(double u) {
    if (!(u >= 0.0 && u < 1.0)) throw InvalidArgument("uniform variate must lie in [0, 1)");
    // Safeguarded Newton on the monotone CDF.
    double lo = 0.0, hi = kTwoPi;
    double x = kTwoPi * u;
    for (int iter = 0; iter < 200; ++iter) {
        const double g = angular_cdf(x) - u;
        if (g > 0.0) hi = x;
        else lo = x;
        const double s = std::sin(x);
        const double slope = s * s / kPi;
        double next = slope > 1e-12 ? x - g / slope : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) < 1e-15 || hi - lo < 1e-15) {
            x = next;
            break;
        }
        x = next;
    }
    return wrap(x, kTwoPi);
}

// ── Generation ───────────────────────────────────────────────────────────────

EventRecord generate_event(std::uint64_t index, const DetectorModel& det, std::uint64_t seed) {
    const rng::Key key = rng::key_from_seed(seed);
    const auto lo = static_cast<std::uint32_t>(index), hi = static_cast<std::uint32_t>(index >> 32);
    const rng::Counter a = rng::philox4x32_10({lo, hi, 0u, 0u}, key);
    const rng::Counter b = rng::philox4x32_10({lo, hi, 1u, 0u}, key);

    EventRecord ev;
    ev.event_id = index;
    ev.is_background = rng::to_unit(a[2]) < det.background_fraction;
    const double u = rng::to_unit(a[0], a[1]);
    ev.phi = ev.is_background ? wrap(kTwoPi * u, kTwoPi) : sample_angle(u);
    ev.detected_1 = rng::to_unit(b[0], b[1]) < det.eta_1 * det.br_weight;
    ev.detected_2 = rng::to_unit(b[2], b[3]) < det.eta_2 * det.br_weight;
    return ev;
}

std::vector<EventRecord> generate_events(std::uint64_t n, const DetectorModel& det, std::uint64_t seed,
                                         unsigned worker_count) {
    if (n < 1) throw InvalidArgument("need at least one event");
    det.validate();
    std::vector<EventRecord> events(n);
    const std::uint64_t workers = std::clamp<std::uint64_t>(worker_count, 1, n);
    auto fill = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) events[i] = generate_event(i, det, seed);
    };
    if (workers == 1) {
        fill(0, n);
        return events;
    }
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (n + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk, end = std::min(n, begin + chunk);
        if (begin < end) pool.emplace_back(fill, begin, end);
    }
    pool.clear();  // joins
    return events;
}

// ── Estimation ───────────────────────────────────────────────────────────────

namespace {

constexpr double kEmptyBinUpperLimit = 1.148;  // -ln(1 - 0.6827)

std::uint64_t count_coincidences(const std::vector<EventRecord>& events) {
    if (events.empty()) throw NoData("empty event list");
    const auto n = static_cast<std::uint64_t>(
        std::count_if(events.begin(), events.end(), [](const EventRecord& e) { return e.coincidence(); }));
    if (n == 0) throw NoData("no detected coincidences");
    return n;
}

}  // namespace

HistogramEstimate estimate_probability(const std::vector<EventRecord>& events, double bin_width) {
    if (!(bin_width > 0.0)) throw InvalidArgument("bin width must be positive");
    const auto bins = static_cast<std::size_t>(std::llround(kTwoPi / bin_width));
    if (bins == 0 || std::abs(static_cast<double>(bins) * bin_width - kTwoPi) > 1e-9)
        throw InvalidArgument("bin width must divide 2π");
    const std::uint64_t total = count_coincidences(events);

    HistogramEstimate h;
    h.bin_width = bin_width;
    h.total = total;
    h.counts.assign(bins, 0);
    for (std::size_t i = 0; i <= bins; ++i) h.bin_edges.push_back(static_cast<double>(i) * bin_width);
    for (const auto& e : events) {
        if (!e.coincidence()) continue;
        const auto bin = std::min(bins - 1, static_cast<std::size_t>(e.phi / bin_width));
        ++h.counts[bin];
    }
    const double scale = h.kappa / (static_cast<double>(total) * bin_width);
    for (auto c : h.counts) {
        h.p_hat.push_back(scale * static_cast<double>(c));
        h.stat_err.push_back(scale * (c > 0 ? std::sqrt(static_cast<double>(c)) : kEmptyBinUpperLimit));
    }
    return h;
}

WindowEstimate estimate_window(const std::vector<EventRecord>& events, double start, double width) {
    if (!(width > 0.0 && width < kTwoPi)) throw InvalidArgument("window width must lie in (0, 2π)");
    const std::uint64_t total = count_coincidences(events);
    WindowEstimate w;
    w.start = wrap(start, kTwoPi);
    w.width = width;
    for (const auto& e : events)
        if (e.coincidence() && wrap(e.phi - w.start, kTwoPi) < width) ++w.count;
    const double scale = kKappa / (static_cast<double>(total) * width);
    w.p_hat = scale * static_cast<double>(w.count);
    w.stat_err = scale * std::sqrt(static_cast<double>(w.count));
    return w;
}

ChEventResult ch_from_events(const std::vector<EventRecord>& events, const ChSettings& s, const DetectorModel& det,
                             double window) {
    det.validate();
    struct Pair {
        const char* name;
        double coefficient;
        double relative;
    };
    const std::array<Pair, 4> pairs{{
        {"P(n1,n2)", 1.0, s.t2.radians() - s.t1.radians()},
        {"P(n1,n2')", -1.0, s.t2p.radians() - s.t1.radians()},
        {"P(n1',n2)", 1.0, s.t2.radians() - s.t1p.radians()},
        {"P(n1',n2')", 1.0, s.t2p.radians() - s.t1p.radians()},
    }};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (circular_distance(pairs[i].relative, pairs[j].relative, kTwoPi) < window)
                throw InvalidArgument("settings must give four distinct relative angles (windows overlap)");

    ChEventResult out;
    const double eta12 = det.eta_1 * det.eta_2;
    std::vector<InequalityTerm> terms;
    double var = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double centre = wrap(pairs[i].relative, kTwoPi);
        out.windows[i] = estimate_window(events, centre - 0.5 * window, window);
        if (out.windows[i].count == 0) {
            const std::string bin = std::string(pairs[i].name) + " window at phi=" + std::to_string(centre);
            throw InsufficientStatistics(bin, "empty " + bin);
        }
        out.joint_combination += pairs[i].coefficient * out.windows[i].p_hat;
        var += out.windows[i].stat_err * out.windows[i].stat_err;
        terms.push_back({pairs[i].name, pairs[i].coefficient, eta12 * out.windows[i].p_hat,
                         eta12 * out.windows[i].stat_err});
    }
    out.joint_combination_err = std::sqrt(var);
    terms.push_back({"P(n1')", -1.0, 0.5 * det.eta_1, std::nullopt});
    terms.push_back({"P(n2)", -1.0, 0.5 * det.eta_2, std::nullopt});
    out.report = make_report(std::move(terms), 0.0);
    out.report.stat_err = eta12 * out.joint_combination_err;
    return out;
}

// ── Detection efficiency ─────────────────────────────────────────────────────

double max_s_of_eta(double eta, const EfficiencyOptions& opt) {
    const auto objective = [&](std::span<const double> x) {
        double joint = spin1::vv_joint_probability(Angle(x[0]), Angle(x[2])) -
                       spin1::vv_joint_probability(Angle(x[0]), Angle(x[3])) +
                       spin1::vv_joint_probability(Angle(x[1]), Angle(x[2])) +
                       spin1::vv_joint_probability(Angle(x[1]), Angle(x[3]));
        const double singles = 0.5 + 0.5;
        if (opt.cap_joint_at_classical) joint = std::min(joint, singles);
        return eta * eta * joint - eta * singles;
    };
    search::Options so;
    so.grid_step = opt.grid_step;
    so.lower = 0.0;
    so.upper = kPi;
    so.refine_tol = 1e-15;
    so.seeds = 2;
    return search::grid_then_refine(objective, 4, so).value;
}

double efficiency_threshold(const EfficiencyOptions& opt) {
    if (!(opt.search_tol >= 1e-9)) throw InvalidArgument("search tolerance must be at least 1e-9");
    if (max_s_of_eta(1.0, opt) <= 0.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > opt.search_tol) {
        const double mid = 0.5 * (lo + hi);
        if (max_s_of_eta(mid, opt) > 0.0) hi = mid;
        else lo = mid;
    }
    return hi;
}

double efficiency_threshold(double search_tol) {
    EfficiencyOptions opt;
    opt.search_tol = search_tol;
    return efficiency_threshold(opt);
}

// ── Kinematics and yields ────────────────────────────────────────────────────

BetaResult two_body_beta(const KinematicsConfig& k) {
    if (!(k.m_parent > 0.0) || !(k.m_vector >= 0.0)) throw InvalidArgument("masses must be positive");
    if (k.m_parent <= 2.0 * k.m_vector) throw BelowThreshold("parent mass below the two-body threshold");
    const double r = k.m_vector / k.m_parent;
    BetaResult b;
    b.beta = std::sqrt(1.0 - 4.0 * r * r);
    b.above_space_like_bound = b.beta > kSpaceLikeBetaBound;
    return b;
}

std::uint64_t effective_statistics(std::uint64_t n_produced, const DetectorModel& det) {
    det.validate();
    return static_cast<std::uint64_t>(
        std::llround(static_cast<double>(n_produced) * det.br_weight * det.eta_1 * det.eta_2));
}

}  // namespace hepbell::mesonlab
