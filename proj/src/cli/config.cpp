#include <algorithm>
#include <set>

#include "hepbell/cli.hpp"

namespace hepbell::cli {

using nlohmann::json;

namespace {

double angle_field(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_angle(v.get<std::string>());
    throw InvalidArgument("config field '" + key + "' must be a number or an angle string");
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InvalidArgument("config section '" + where + "' must be an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw InvalidArgument("unknown config key '" + where + key + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument(std::string("config field '") + key + "' has the wrong type");
    }
}

}  // namespace

std::filesystem::path RunConfig::resolved_events_file() const {
    return events_file.empty() ? output_dir / "events.csv" : events_file;
}

void RunConfig::validate() const {
    detector.validate();
    if (n_events < 1) throw InvalidArgument("n_events must be at least 1");
    if (workers < 1) throw InvalidArgument("workers must be at least 1");
    if (!(kinematics.m_vector > 0.0) || !(kinematics.m_parent > 2.0 * kinematics.m_vector))
        throw InvalidArgument("kinematics requires m_parent > 2 m_vector > 0");
    if (!(bin_width > 0.0)) throw InvalidArgument("bin_width must be positive");
    if (!(ch_window > 0.0)) throw InvalidArgument("ch_window must be positive");
    auto sorted = labeling;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{1, 2, 3}) throw InvalidArgument("labeling must be a permutation of 1,2,3");
}

json to_json(const RunConfig& c) {
    return json{
        {"seed", c.seed},
        {"n_events", c.n_events},
        {"workers", c.workers},
        {"detector",
         {{"eta_1", c.detector.eta_1},
          {"eta_2", c.detector.eta_2},
          {"background_fraction", c.detector.background_fraction},
          {"br_weight", c.detector.br_weight}}},
        {"kinematics", {{"m_parent", c.kinematics.m_parent}, {"m_vector", c.kinematics.m_vector}}},
        {"settings",
         {{"hardy", {{"alpha", c.hardy_settings[0]}, {"beta", c.hardy_settings[1]}, {"gamma", c.hardy_settings[2]}}},
          {"ch", c.ch_settings}}},
        {"bin_width", c.bin_width},
        {"ch_window", c.ch_window},
        {"search_tol", c.search_tol},
        {"labeling", c.labeling},
        {"symmetrized", c.symmetrized},
        {"grid_step", c.grid_step},
        {"refine_tol", c.refine_tol},
        {"output_dir", c.output_dir.generic_string()},
        {"events_file", c.resolved_events_file().generic_string()},
    };
}

RunConfig config_from_json(const json& j) {
    reject_unknown(j,
                   {"seed", "n_events", "workers", "detector", "kinematics", "settings", "bin_width", "ch_window",
                    "search_tol", "labeling", "symmetrized", "grid_step", "refine_tol", "output_dir", "events_file"},
                   "");
    RunConfig c;
    read(j, "seed", c.seed);
    read(j, "n_events", c.n_events);
    read(j, "workers", c.workers);
    read(j, "search_tol", c.search_tol);
    read(j, "refine_tol", c.refine_tol);
    read(j, "symmetrized", c.symmetrized);
    read(j, "labeling", c.labeling);
    if (j.contains("detector")) {
        const auto& d = j.at("detector");
        reject_unknown(d, {"eta_1", "eta_2", "background_fraction", "br_weight"}, "detector.");
        read(d, "eta_1", c.detector.eta_1);
        read(d, "eta_2", c.detector.eta_2);
        read(d, "background_fraction", c.detector.background_fraction);
        read(d, "br_weight", c.detector.br_weight);
    }
    if (j.contains("kinematics")) {
        const auto& k = j.at("kinematics");
        reject_unknown(k, {"m_parent", "m_vector"}, "kinematics.");
        read(k, "m_parent", c.kinematics.m_parent);
        read(k, "m_vector", c.kinematics.m_vector);
    }
    if (j.contains("settings")) {
        const auto& s = j.at("settings");
        reject_unknown(s, {"hardy", "ch"}, "settings.");
        if (s.contains("hardy")) {
            const auto& h = s.at("hardy");
            reject_unknown(h, {"alpha", "beta", "gamma"}, "settings.hardy.");
            const char* names[] = {"alpha", "beta", "gamma"};
            for (std::size_t i = 0; i < 3; ++i)
                if (h.contains(names[i])) c.hardy_settings[i] = angle_field(h.at(names[i]), names[i]);
        }
        if (s.contains("ch")) {
            const auto& ch = s.at("ch");
            if (!ch.is_array() || ch.size() != 4) throw InvalidArgument("settings.ch must list four angles");
            for (std::size_t i = 0; i < 4; ++i) c.ch_settings[i] = angle_field(ch[i], "settings.ch");
        }
    }
    if (j.contains("bin_width")) c.bin_width = angle_field(j.at("bin_width"), "bin_width");
    if (j.contains("ch_window")) c.ch_window = angle_field(j.at("ch_window"), "ch_window");
    if (j.contains("grid_step")) c.grid_step = angle_field(j.at("grid_step"), "grid_step");
    std::string dir, events;
    read(j, "output_dir", dir);
    read(j, "events_file", events);
    if (!dir.empty()) c.output_dir = dir;
    if (!events.empty()) c.events_file = events;
    return c;
}

json to_json(const InequalityReport& r) {
    json terms = json::array();
    for (const auto& t : r.terms) {
        json jt{{"name", t.name}, {"coefficient", t.coefficient}, {"probability", t.probability}};
        if (t.stat_err) jt["stat_err"] = *t.stat_err;
        terms.push_back(std::move(jt));
    }
    json j{{"terms", std::move(terms)}, {"value", r.value}, {"bound", r.bound}, {"violated", r.violated}};
    if (r.stat_err) j["stat_err"] = *r.stat_err;
    return j;
}

json to_json(const mesonlab::HistogramEstimate& h) {
    return json{{"bin_edges", h.bin_edges}, {"counts", h.counts}, {"p_hat", h.p_hat},   {"stat_err", h.stat_err},
                {"kappa", h.kappa},         {"total", h.total},   {"bin_width", h.bin_width}};
}

}  // namespace hepbell::cli
