#include "ringdelay/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

namespace ringdelay {

void RunConfig::validate() const {
    model.validate();
    classifier.validate();
    roots.validate();
    if (dt && !(*dt > 0.0)) throw ConfigError("integrator.dt must be positive");
    if (root_count < 1) throw ConfigError("roots.count must be >= 1");
    if (workers < 1) throw ConfigError("sweep.workers must be >= 1");
    if (ppm_scale < 1) throw ConfigError("sweep.ppm_scale must be >= 1");
    if (omega_samples < 16) throw ConfigError("crossing.omega_samples must be >= 16");
    if (out.empty()) throw ConfigError("out must not be empty");
    sweep_config().validate();
}

SweepConfig RunConfig::sweep_config() const {
    SweepConfig s;
    s.tau1_range = tau1_range;
    s.tau2_range = tau2_range;
    s.resolution = resolution;
    s.base = model;
    s.seed = seed;
    s.classifier = classifier;
    s.roots = roots;
    s.method = method;
    s.dt = dt;
    return s;
}

DelayWindow RunConfig::window() const noexcept {
    return {tau1_range.lo, tau1_range.hi, tau2_range.lo, tau2_range.hi};
}

nlohmann::json to_json(const RunConfig& c) {
    using nlohmann::json;
    json box = nullptr;
    if (c.roots.search_box) {
        box = {{"re_min", c.roots.search_box->re_min},
               {"re_max", c.roots.search_box->re_max},
               {"im_min", c.roots.search_box->im_min},
               {"im_max", c.roots.search_box->im_max}};
    }
    return {
        {"model", {{"n", c.model.n}, {"k_p", c.model.k_p}, {"k_n", c.model.k_n}, {"tau1", c.model.tau1}, {"tau2", c.model.tau2}}},
        {"integrator", {{"dt", c.dt ? json(*c.dt) : json(nullptr)}}},
        {"classifier",
         {{"horizon", c.classifier.horizon},
          {"consensus_tol", c.classifier.consensus_tol},
          {"blowup_factor", c.classifier.blowup_factor},
          {"rate_window", c.classifier.rate_window},
          {"rate_threshold", c.classifier.rate_threshold}}},
        {"roots",
         {{"discretization_order", c.roots.discretization_order},
          {"newton_max_iter", c.roots.newton_max_iter},
          {"newton_tol", c.roots.newton_tol},
          {"count", c.root_count},
          {"search_box", box}}},
        {"sweep",
         {{"tau1_range", {c.tau1_range.lo, c.tau1_range.hi}},
          {"tau2_range", {c.tau2_range.lo, c.tau2_range.hi}},
          {"resolution", c.resolution},
          {"method", std::string(method_name(c.method))},
          {"workers", c.workers},
          {"ppm_scale", c.ppm_scale}}},
        {"crossing", {{"omega_samples", c.omega_samples}}},
        {"seed", c.seed},
        {"out", c.out},
    };
}

namespace {

void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> known, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown config key '" + where + key + "'");
    }
}

template <typename T>
void read(const nlohmann::json& obj, const char* key, T& target, const std::string& where) {
    if (!obj.contains(key)) return;
    try {
        target = obj.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("bad value for '" + where + key + "': " + e.what());
    }
}

Interval read_interval(const nlohmann::json& obj, const char* key, Interval fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError("'" + where + key + "' must be a [lo, hi] pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& input) {
    const nlohmann::json& doc = input.contains("config") && input.at("config").is_object() ? input.at("config") : input;
    reject_unknown(doc, {"model", "integrator", "classifier", "roots", "sweep", "crossing", "seed", "out"}, "");
    RunConfig c;
    if (doc.contains("model")) {
        const auto& m = doc.at("model");
        reject_unknown(m, {"n", "k_p", "k_n", "tau1", "tau2"}, "model.");
        read(m, "n", c.model.n, "model.");
        read(m, "k_p", c.model.k_p, "model.");
        read(m, "k_n", c.model.k_n, "model.");
        read(m, "tau1", c.model.tau1, "model.");
        read(m, "tau2", c.model.tau2, "model.");
    }
    if (doc.contains("integrator")) {
        const auto& m = doc.at("integrator");
        reject_unknown(m, {"dt"}, "integrator.");
        if (m.contains("dt") && !m.at("dt").is_null()) {
            double dt = 0.0;
            read(m, "dt", dt, "integrator.");
            c.dt = dt;
        }
    }
    if (doc.contains("classifier")) {
        const auto& m = doc.at("classifier");
        reject_unknown(m, {"horizon", "consensus_tol", "blowup_factor", "rate_window", "rate_threshold"}, "classifier.");
        read(m, "horizon", c.classifier.horizon, "classifier.");
        read(m, "consensus_tol", c.classifier.consensus_tol, "classifier.");
        read(m, "blowup_factor", c.classifier.blowup_factor, "classifier.");
        read(m, "rate_window", c.classifier.rate_window, "classifier.");
        read(m, "rate_threshold", c.classifier.rate_threshold, "classifier.");
    }
    if (doc.contains("roots")) {
        const auto& m = doc.at("roots");
        reject_unknown(m, {"discretization_order", "newton_max_iter", "newton_tol", "count", "search_box"}, "roots.");
        read(m, "discretization_order", c.roots.discretization_order, "roots.");
        read(m, "newton_max_iter", c.roots.newton_max_iter, "roots.");
        read(m, "newton_tol", c.roots.newton_tol, "roots.");
        read(m, "count", c.root_count, "roots.");
        if (m.contains("search_box") && !m.at("search_box").is_null()) {
            const auto& b = m.at("search_box");
            reject_unknown(b, {"re_min", "re_max", "im_min", "im_max"}, "roots.search_box.");
            SearchBox box;
            read(b, "re_min", box.re_min, "roots.search_box.");
            read(b, "re_max", box.re_max, "roots.search_box.");
            read(b, "im_min", box.im_min, "roots.search_box.");
            read(b, "im_max", box.im_max, "roots.search_box.");
            c.roots.search_box = box;
        }
    }
    if (doc.contains("sweep")) {
        const auto& m = doc.at("sweep");
        reject_unknown(m, {"tau1_range", "tau2_range", "resolution", "method", "workers", "ppm_scale"}, "sweep.");
        c.tau1_range = read_interval(m, "tau1_range", c.tau1_range, "sweep.");
        c.tau2_range = read_interval(m, "tau2_range", c.tau2_range, "sweep.");
        read(m, "resolution", c.resolution, "sweep.");
        read(m, "workers", c.workers, "sweep.");
        read(m, "ppm_scale", c.ppm_scale, "sweep.");
        if (m.contains("method")) {
            std::string name;
            read(m, "method", name, "sweep.");
            c.method = parse_method(name);
        }
    }
    if (doc.contains("crossing")) {
        const auto& m = doc.at("crossing");
        reject_unknown(m, {"omega_samples"}, "crossing.");
        read(m, "omega_samples", c.omega_samples, "crossing.");
    }
    read(doc, "seed", c.seed, "");
    read(doc, "out", c.out, "");
    c.validate();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file '" + path.string() + "'");
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
    }
    return config_from_json(doc);
}

}  // namespace ringdelay
