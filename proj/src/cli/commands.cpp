#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "hepbell/cli.hpp"
#include "hepbell/lhv.hpp"
#include "hepbell/photon3.hpp"
#include "hepbell/spin1.hpp"

namespace hepbell::cli {

using nlohmann::json;

namespace {

// Missing input file; maps to exit code 3.
class MissingInput : public Error {
public:
    explicit MissingInput(const std::filesystem::path& p) : Error("missing input file: " + p.string()) {}
};

// Flag values collected before the config file is applied.
struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> output_dir;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> n;
    std::optional<unsigned> workers;
    std::optional<double> eta1, eta2, background, br_weight;
    std::optional<double> m_parent, m_vector;
    std::optional<std::string> alpha, beta, gamma, settings, bin_width, window, grid_step;
    std::optional<std::string> events, labeling;
    std::optional<bool> symmetrized;
    std::optional<double> search_tol, refine_tol;
    bool optimize = false;
};

std::array<int, 3> parse_labeling(const std::string& text) {
    std::array<int, 3> out{};
    std::size_t pos = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto comma = text.find(',', pos);
        const std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (part.size() != 1 || part[0] < '1' || part[0] > '3') throw InvalidArgument("malformed labeling '" + text + "'");
        out[i] = part[0] - '0';
        if (i < 2 && comma == std::string::npos) throw InvalidArgument("labeling needs three entries");
        pos = comma + 1;
        if (i == 2 && comma != std::string::npos) throw InvalidArgument("labeling needs three entries");
    }
    return out;
}

RunConfig resolve(const Overrides& o) {
    RunConfig c;
    if (o.config_path) {
        std::ifstream in(*o.config_path);
        if (!in) throw MissingInput(*o.config_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::parse_error& e) {
            throw InvalidArgument("config is not valid JSON: " + std::string(e.what()));
        }
        c = config_from_json(j);
    }
    if (o.output_dir) c.output_dir = *o.output_dir;
    if (o.seed) c.seed = *o.seed;
    if (o.n) c.n_events = *o.n;
    if (o.workers) c.workers = *o.workers;
    if (o.eta1) c.detector.eta_1 = *o.eta1;
    if (o.eta2) c.detector.eta_2 = *o.eta2;
    if (o.background) c.detector.background_fraction = *o.background;
    if (o.br_weight) c.detector.br_weight = *o.br_weight;
    if (o.m_parent) c.kinematics.m_parent = *o.m_parent;
    if (o.m_vector) c.kinematics.m_vector = *o.m_vector;
    if (o.alpha) c.hardy_settings[0] = parse_angle(*o.alpha);
    if (o.beta) c.hardy_settings[1] = parse_angle(*o.beta);
    if (o.gamma) c.hardy_settings[2] = parse_angle(*o.gamma);
    if (o.settings) {
        const auto v = parse_angle_list(*o.settings);
        if (v.size() != 4) throw InvalidArgument("--settings needs four angles t1,t1p,t2,t2p");
        std::copy(v.begin(), v.end(), c.ch_settings.begin());
    }
    if (o.bin_width) c.bin_width = parse_angle(*o.bin_width);
    if (o.window) c.ch_window = parse_angle(*o.window);
    if (o.grid_step) c.grid_step = parse_angle(*o.grid_step);
    if (o.events) c.events_file = *o.events;
    if (o.labeling) c.labeling = parse_labeling(*o.labeling);
    if (o.symmetrized) c.symmetrized = *o.symmetrized;
    if (o.search_tol) c.search_tol = *o.search_tol;
    if (o.refine_tol) c.refine_tol = *o.refine_tol;
    c.validate();
    return c;
}

std::filesystem::path output_path(const Overrides& o, const RunConfig& c, const char* default_name) {
    return o.out ? std::filesystem::path(*o.out) : c.output_dir / default_name;
}

void write_json(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error("failed writing " + path.string());
}

std::vector<mesonlab::EventRecord> load_events(const RunConfig& c) {
    const auto path = c.resolved_events_file();
    if (!std::filesystem::exists(path)) throw MissingInput(path);
    return mesonlab::read_events_csv(path);
}

// ── Subcommand bodies ────────────────────────────────────────────────────────

json cmd_tripartite(const RunConfig& c) {
    using photon3::Linear;
    using photon3::TripartiteOutcomeSpec;
    const auto [i, j, k] = c.labeling;
    const auto state = photon3::make_ortho_ps_state();
    const std::string si = std::to_string(i), sj = std::to_string(j), sk = std::to_string(k);

    json probs{
        {"P(" + si + "=V," + sj + "=V)",
         photon3::outcome_probability(state, TripartiteOutcomeSpec().linear(i, Linear::V).linear(j, Linear::V))},
        {"P(two photons V)", photon3::two_vertical_probability(state)},
        {"P(C" + sj + "=C" + sk + "|" + si + "=V)",
         photon3::outcome_probability(state, TripartiteOutcomeSpec().same_circular(j, k),
                                      TripartiteOutcomeSpec().linear(i, Linear::V))},
        {"P(C" + si + "=C" + sk + "|" + sj + "=V)",
         photon3::outcome_probability(state, TripartiteOutcomeSpec().same_circular(i, k),
                                      TripartiteOutcomeSpec().linear(j, Linear::V))},
        {"P(C1=C2=C3)", photon3::outcome_probability(state, TripartiteOutcomeSpec().all_same_circular())},
    };
    const auto fixed = photon3::ch_value_3gamma(state, c.labeling, false);
    const auto sym = photon3::ch_value_3gamma(state, c.labeling, true);
    const auto& headline = c.symmetrized ? sym : fixed;
    const auto tangle = photon3::three_tangle(state);
    const auto classical = lhv::max_ch_3gamma_lhv();
    return json{
        {"labeling", c.labeling},
        {"symmetrized", c.symmetrized},
        {"probabilities", probs},
        {"ch_fixed_label", to_json(fixed)},
        {"ch_symmetrized", to_json(sym)},
        {"value", headline.value},
        {"bound", headline.bound},
        {"violated", headline.violated},
        {"tau", tangle.tau},
        {"slocc_class", tangle.slocc_class == photon3::SloccClass::GHZClass ? "GHZ" : "not certified"},
        {"lhv_maximum", {{"value", classical.value}, {"witness", classical.witness.describe()}}},
    };
}

json hardy_json(const spin1::HardySettings& s) {
    const auto r = spin1::hardy_violation(s);
    return json{
        {"settings", {{"alpha", s.alpha.radians()}, {"beta", s.beta.radians()}, {"gamma", s.gamma.radians()}}},
        {"probabilities",
         {{"P(Jb=0,Ja=0)", r.p_bb_aa}, {"P(Jb!=0,Jg=0)", r.p_bneq_g}, {"P(Jx=0,Ja!=0)", r.p_x_aneq}, {"P(Jx=0,Jg=0)", r.p_x_g}}},
        {"lhs", r.lhs()},
        {"rhs", r.rhs()},
        {"lhs_minus_rhs", r.lhs_minus_rhs},
        {"violated", r.violated},
    };
}

json cmd_hardy(const RunConfig& c, bool optimize) {
    json out;
    if (optimize) {
        spin1::MaximizeOptions opt;
        opt.grid_step = c.grid_step;
        opt.refine_tol = c.refine_tol;
        const auto m = spin1::maximize_violation(opt);
        out = hardy_json(m.settings);
        out["maximizer"] = {{"alpha", m.settings.alpha.radians()},
                            {"beta", m.settings.beta.radians()},
                            {"gamma", m.settings.gamma.radians()},
                            {"value", m.value}};
    } else {
        out = hardy_json({Angle(c.hardy_settings[0]), Angle(c.hardy_settings[1]), Angle(c.hardy_settings[2])});
    }
    out["optimized"] = optimize;
    const auto classical = lhv::max_hardy_spin1_lhv();
    out["lhv_maximum"] = {{"value", classical.value}, {"witness", classical.witness.describe()}};
    return out;
}

json cmd_estimate(const RunConfig& c) {
    const auto events = load_events(c);
    return to_json(mesonlab::estimate_probability(events, c.bin_width));
}

json cmd_chtest(const RunConfig& c) {
    const auto events = load_events(c);
    const mesonlab::ChSettings s{Angle(c.ch_settings[0]), Angle(c.ch_settings[1]), Angle(c.ch_settings[2]),
                                 Angle(c.ch_settings[3])};
    const auto res = mesonlab::ch_from_events(events, s, c.detector, c.ch_window);
    json out = to_json(mesonlab::estimate_probability(events, c.bin_width));
    json windows = json::array();
    for (const auto& w : res.windows)
        windows.push_back({{"start", w.start}, {"width", w.width}, {"count", w.count}, {"p_hat", w.p_hat}, {"stat_err", w.stat_err}});
    const auto closed = spin1::ch_value_vv(s.t1, s.t1p, s.t2, s.t2p);
    out["settings"] = c.ch_settings;
    out["value"] = res.report.value;
    out["value_stat_err"] = res.report.stat_err.value_or(0.0);
    out["bound"] = res.report.bound;
    out["violated"] = res.report.violated;
    out["joint_combination"] = res.joint_combination;
    out["joint_combination_err"] = res.joint_combination_err;
    out["windows"] = windows;
    out["report"] = to_json(res.report);
    out["closed_form_value"] = closed.value;
    return out;
}

json cmd_efficiency(const RunConfig& c) {
    mesonlab::EfficiencyOptions opt;
    opt.search_tol = c.search_tol;
    const double threshold = mesonlab::efficiency_threshold(opt);
    json scan = json::array();
    for (int step = 50; step <= 100; ++step) {
        const double eta = step / 100.0;
        scan.push_back({{"eta", eta}, {"max_s", mesonlab::max_s_of_eta(eta, opt)}});
    }
    return json{{"threshold", threshold},
                {"analytic_threshold", 2.0 * (std::sqrt(2.0) - 1.0)},
                {"search_tol", c.search_tol},
                {"scan", scan}};
}

json cmd_kinematics(const RunConfig& c) {
    const auto b = mesonlab::two_body_beta(c.kinematics);
    return json{{"m_parent", c.kinematics.m_parent},
                {"m_vector", c.kinematics.m_vector},
                {"beta", b.beta},
                {"space_like_bound", mesonlab::kSpaceLikeBetaBound},
                {"pass", b.above_space_like_bound},
                {"n_produced", c.n_events},
                {"effective_statistics", mesonlab::effective_statistics(c.n_events, c.detector)}};
}

void add_detector_flags(CLI::App* sub, Overrides& o) {
    sub->add_option("--eta1", o.eta1, "Detection efficiency, meson 1");
    sub->add_option("--eta2", o.eta2, "Detection efficiency, meson 2");
    sub->add_option("--background", o.background, "Uniform background fraction");
    sub->add_option("--br-weight", o.br_weight, "Product of the reconstructed branching fractions");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum-nonlocality tests in positronium and eta_c decays", "hepbell"};
    app.require_subcommand(1);
    app.fallthrough();
    Overrides o;
    app.add_option("--config", o.config_path, "JSON run configuration");
    app.add_option("--output-dir", o.output_dir, "Directory for output files");
    app.add_option("--out", o.out, "Explicit output file");

    auto* tri = app.add_subcommand("tripartite", "Ortho-positronium three-photon probabilities, CH value and 3-tangle");
    tri->add_option("--labeling", o.labeling, "Photon labeling i,j,k");
    tri->add_option("--symmetrized", o.symmetrized, "Report the symmetrized two-V reading as the headline value");

    auto* hardy = app.add_subcommand("hardy", "Hardy-type spin-1 inequality");
    hardy->add_option("--alpha", o.alpha, "Angle (radians or Npi/M)");
    hardy->add_option("--beta", o.beta, "Angle (radians or Npi/M)");
    hardy->add_option("--gamma", o.gamma, "Angle (radians or Npi/M)");
    hardy->add_option("--grid-step", o.grid_step, "Optimizer grid step");
    hardy->add_option("--refine-tol", o.refine_tol, "Optimizer refinement tolerance");
    hardy->add_flag("--optimize", o.optimize, "Search for the maximal violation");

    auto* gen = app.add_subcommand("generate", "Generate eta_c -> VV -> (PP)(PP) events as CSV");
    gen->add_option("--n", o.n, "Number of events");
    gen->add_option("--seed", o.seed, "Random seed");
    gen->add_option("--workers", o.workers, "Worker threads");
    add_detector_flags(gen, o);

    auto* est = app.add_subcommand("estimate", "Histogram estimate of P(n1,n2) from an event file");
    est->add_option("--events", o.events, "Event CSV file");
    est->add_option("--bin-width", o.bin_width, "Bin width; must divide 2pi");

    auto* ch = app.add_subcommand("chtest", "Event-based CH inequality");
    ch->add_option("--events", o.events, "Event CSV file");
    ch->add_option("--settings", o.settings, "t1,t1p,t2,t2p");
    ch->add_option("--window", o.window, "Width of the relative-angle windows");
    ch->add_option("--bin-width", o.bin_width, "Histogram bin width");
    add_detector_flags(ch, o);

    auto* eff = app.add_subcommand("efficiency", "Detection-efficiency threshold scan");
    eff->add_option("--tol", o.search_tol, "Bisection tolerance");

    auto* kin = app.add_subcommand("kinematics", "Two-body decay velocity and space-like bound");
    kin->add_option("--m-parent", o.m_parent, "Parent mass (GeV)");
    kin->add_option("--m-vector", o.m_vector, "Vector meson mass (GeV)");
    kin->add_option("--n", o.n, "Produced events for the yield estimate");
    add_detector_flags(kin, o);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << app.help();
        return kUsage;
    }

    try {
        const RunConfig cfg = resolve(o);
        const json config_json = to_json(cfg);
        out << config_json.dump(2) << '\n';

        if (gen->parsed()) {
            const auto events = mesonlab::generate_events(cfg.n_events, cfg.detector, cfg.seed, cfg.workers);
            const auto path = o.out ? std::filesystem::path(*o.out) : cfg.resolved_events_file();
            if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
            mesonlab::write_events_csv(path, events);
            err << "wrote " << events.size() << " events to " << path.string() << '\n';
            return kOk;
        }

        json result;
        const char* name = nullptr;
        if (tri->parsed()) {
            result = cmd_tripartite(cfg);
            name = "tripartite.json";
        } else if (hardy->parsed()) {
            result = cmd_hardy(cfg, o.optimize);
            name = "hardy.json";
        } else if (est->parsed()) {
            result = cmd_estimate(cfg);
            name = "estimate.json";
        } else if (ch->parsed()) {
            result = cmd_chtest(cfg);
            name = "chtest.json";
        } else if (eff->parsed()) {
            result = cmd_efficiency(cfg);
            name = "efficiency.json";
        } else {
            result = cmd_kinematics(cfg);
            name = "kinematics.json";
        }
        result["config"] = config_json;
        const auto path = output_path(o, cfg, name);
        write_json(path, result);
        err << "wrote " << path.string() << '\n';
        return kOk;
    } catch (const MissingInput& e) {
        err << e.what() << '\n';
        return kMissingInput;
    } catch (const AngleSyntaxError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const InsufficientStatistics& e) {
        err << "insufficient statistics in " << e.bin() << '\n';
        return kInsufficientStatistics;
    } catch (const NoData& e) {
        err << "insufficient statistics: " << e.what() << '\n';
        return kInsufficientStatistics;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace hepbell::cli
