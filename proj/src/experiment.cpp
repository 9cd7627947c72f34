#include "saf/experiment.hpp"

#include "saf/dmt.hpp"
#include "saf/errors.hpp"
#include "saf/outage.hpp"

#include <Eigen/Core>

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace saf {

namespace fs = std::filesystem;
using nlohmann::json;

LinkStats NetworkConfig::stats() const {
    LinkStats s = symmetric_network(n_relays, variance);
    if (inter_relay_gain_db) s = with_inter_relay_gain(s, *inter_relay_gain_db);
    return s;
}

namespace {

std::string kind_name(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::OutageSweep: return "outage_sweep";
    case ExperimentKind::DmtCurves: return "dmt_curves";
    case ExperimentKind::PowerGainSweep: return "power_gain_sweep";
    case ExperimentKind::SchedulingCompare: return "scheduling_compare";
    }
    throw ConfigError("unknown experiment kind");
}

ExperimentKind kind_from_name(const std::string& s) {
    if (s == "outage_sweep") return ExperimentKind::OutageSweep;
    if (s == "dmt_curves") return ExperimentKind::DmtCurves;
    if (s == "power_gain_sweep") return ExperimentKind::PowerGainSweep;
    if (s == "scheduling_compare") return ExperimentKind::SchedulingCompare;
    throw ConfigError("unknown experiment kind '" + s + "'");
}

std::string policy_name(SchedulePolicy p) {
    switch (p) {
    case SchedulePolicy::Dumb: return "dumb";
    case SchedulePolicy::Smart: return "smart";
    case SchedulePolicy::Ordered2R3S: return "ordered";
    case SchedulePolicy::Fixed: return "fixed";
    }
    throw ConfigError("unknown schedule policy");
}

SchedulePolicy policy_from_name(const std::string& s) {
    if (s == "dumb") return SchedulePolicy::Dumb;
    if (s == "smart") return SchedulePolicy::Smart;
    if (s == "ordered") return SchedulePolicy::Ordered2R3S;
    if (s == "fixed") return SchedulePolicy::Fixed;
    throw ConfigError("unknown schedule policy '" + s + "'");
}

json scheme_to_json(const SchemeSpec& s) {
    json j;
    switch (s.kind) {
    case SchemeKind::NonCooperative: j["kind"] = "noncoop"; break;
    case SchemeKind::Naf: j["kind"] = "naf"; break;
    case SchemeKind::RelaySelectionNaf: j["kind"] = "selection_naf"; break;
    case SchemeKind::SequentialSaf: j["kind"] = "seq_saf"; break;
    case SchemeKind::GenieAidedSaf: j["kind"] = "genie"; break;
    }
    j["n_slots"] = s.n_slots;
    j["label"] = s.label;
    if (s.kind == SchemeKind::SequentialSaf) {
        j["policy"] = policy_name(s.policy);
        j["relay_isolation"] = s.relay_isolation;
        if (s.fixed_sequence) j["fixed_sequence"] = *s.fixed_sequence;
    }
    return j;
}

SchemeSpec scheme_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    SchemeSpec s;
    if (kind == "noncoop") {
        s = SchemeSpec::non_cooperative();
    } else if (kind == "naf") {
        s = SchemeSpec::naf(j.at("n_slots").get<int>() / 2);
    } else if (kind == "selection_naf") {
        s = SchemeSpec::relay_selection_naf();
    } else if (kind == "seq_saf") {
        const SchedulePolicy pol =
            policy_from_name(j.value("policy", std::string("dumb")));
        s = SchemeSpec::sequential_saf(j.at("n_slots").get<int>(), pol,
                                       j.value("relay_isolation", false));
        if (j.contains("fixed_sequence")) {
            s.fixed_sequence = j.at("fixed_sequence").get<std::vector<int>>();
        }
    } else if (kind == "genie") {
        s = SchemeSpec::genie_aided(j.at("n_slots").get<int>());
    } else {
        throw ConfigError("unknown scheme kind '" + kind + "'");
    }
    if (j.contains("label")) s.label = j.at("label").get<std::string>();
    return s;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s) {
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                c == '_' || c == '.')
                   ? c
                   : '_';
    }
    return out;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EvalError("cannot open output file " + path);
    out << body;
    if (!out) throw EvalError("write failed for " + path);
}

std::string outage_csv(const OutageCurve& curve) {
    std::string body = "snr_db,outage,stderr,n_samples\n";
    for (const OutageEstimate& p : curve.points) {
        body += fmt(p.snr_db) + "," + fmt(p.p_hat) + "," + fmt(p.stderr_) + "," +
                std::to_string(p.n_samples) + "\n";
    }
    return body;
}

std::string dmt_csv(const DmtCurve& curve, int grid) {
    std::string body = "r,d\n";
    for (int i = 0; i < grid; ++i) {
        const double r = static_cast<double>(i) / (grid - 1);
        body += fmt(r) + "," + fmt(curve.eval(r)) + "\n";
    }
    return body;
}

std::vector<double> linspace_db(double lo, double hi, double step) {
    std::vector<double> v;
    for (int i = 0;; ++i) {
        const double x = lo + i * step;
        if (x > hi + 1e-9) break;
        v.push_back(x);
    }
    return v;
}

DmtCurve resolve_curve(const DmtCurveRequest& req) {
    DmtCurve c;
    if (!req.lp_instance.empty()) {
        c = dmt_curve_from_lp(make_exponent_instance(req.lp_instance));
    } else if (req.closed_form == "miso") {
        c = miso_bound(req.n_relays);
    } else if (req.closed_form == "naf") {
        c = naf_dmt(req.n_relays);
    } else if (req.closed_form == "saf_ub") {
        c = saf_upper_bound(req.n_relays, req.n_slots);
    } else if (req.closed_form == "noncoop") {
        c = miso_bound(0);
        c.label = "noncoop";
    } else {
        throw ConfigError("unknown closed form '" + req.closed_form + "'");
    }
    if (!req.label.empty()) c.label = req.label;
    return c;
}

} // namespace

void ExperimentConfig::validate() const {
    network.stats().validate();
    if (kind == ExperimentKind::DmtCurves) {
        if (curves.empty()) throw ConfigError("dmt_curves: empty curve list");
        if (grid < 2) throw ConfigError("dmt_curves: grid must have >= 2 points");
        return;
    }
    if (schemes.empty()) throw ConfigError("experiment: empty scheme list");
    if (snr_db.empty()) throw ConfigError("experiment: empty snr_db sweep");
    if (rates_bpcu.empty()) throw ConfigError("experiment: empty rate list");
    if (n_samples < 1000) throw ConfigError("experiment: n_samples must be >= 1000");
    for (const SchemeSpec& s : schemes) s.validate(network.n_relays);
    if (kind == ExperimentKind::PowerGainSweep ||
        kind == ExperimentKind::SchedulingCompare) {
        if (!baseline) throw ConfigError("experiment: baseline scheme required");
        baseline->validate(network.n_relays);
        if (target_outage <= 0.0 || target_outage >= 1.0) {
            throw ConfigError("experiment: target_outage must be in (0, 1)");
        }
    }
    if (kind == ExperimentKind::PowerGainSweep && inter_relay_gains_db.empty()) {
        throw ConfigError("power_gain_sweep: empty inter-relay gain sweep");
    }
}

json ExperimentConfig::to_json() const {
    json j;
    j["kind"] = kind_name(kind);
    j["label"] = label;
    j["seed"] = seed;
    j["n_samples"] = n_samples;
    j["network"] = {{"n_relays", network.n_relays},
                    {"variance", network.variance}};
    if (network.inter_relay_gain_db) {
        j["network"]["inter_relay_gain_db"] = *network.inter_relay_gain_db;
    }
    j["output_dir"] = output_dir;
    if (!notes.empty()) j["notes"] = notes;
    if (kind == ExperimentKind::DmtCurves) {
        j["grid"] = grid;
        j["curves"] = json::array();
        for (const DmtCurveRequest& c : curves) {
            json jc;
            if (!c.lp_instance.empty()) {
                jc["lp_instance"] = c.lp_instance;
            } else {
                jc["closed_form"] = c.closed_form;
                jc["n_relays"] = c.n_relays;
                if (c.n_slots > 0) jc["n_slots"] = c.n_slots;
            }
            if (!c.label.empty()) jc["label"] = c.label;
            j["curves"].push_back(jc);
        }
        return j;
    }
    j["snr_db"] = snr_db;
    j["rates_bpcu"] = rates_bpcu;
    j["schemes"] = json::array();
    for (const SchemeSpec& s : schemes) j["schemes"].push_back(scheme_to_json(s));
    if (baseline) j["baseline"] = scheme_to_json(*baseline);
    if (kind == ExperimentKind::PowerGainSweep) {
        j["inter_relay_gains_db"] = inter_relay_gains_db;
    }
    if (kind == ExperimentKind::PowerGainSweep ||
        kind == ExperimentKind::SchedulingCompare) {
        j["target_outage"] = target_outage;
    }
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    ExperimentConfig c;
    c.kind = kind_from_name(j.at("kind").get<std::string>());
    c.label = j.value("label", std::string("run"));
    c.seed = j.value("seed", std::uint64_t{1});
    c.n_samples = j.value("n_samples", std::int64_t{1000000});
    const json& net = j.at("network");
    c.network.n_relays = net.at("n_relays").get<int>();
    c.network.variance = net.value("variance", 1.0);
    if (net.contains("inter_relay_gain_db")) {
        c.network.inter_relay_gain_db = net.at("inter_relay_gain_db").get<double>();
    }
    c.output_dir = j.value("output_dir", std::string("."));
    c.notes = j.value("notes", std::string());
    if (c.kind == ExperimentKind::DmtCurves) {
        c.grid = j.value("grid", 101);
        for (const json& jc : j.at("curves")) {
            DmtCurveRequest req;
            if (jc.contains("lp_instance")) {
                req.lp_instance = jc.at("lp_instance").get<std::string>();
            } else {
                req.closed_form = jc.at("closed_form").get<std::string>();
                req.n_relays = jc.value("n_relays", 0);
                req.n_slots = jc.value("n_slots", 0);
            }
            req.label = jc.value("label", std::string());
            c.curves.push_back(req);
        }
        return c;
    }
    c.snr_db = j.at("snr_db").get<std::vector<double>>();
    c.rates_bpcu = j.at("rates_bpcu").get<std::vector<double>>();
    for (const json& js : j.at("schemes")) c.schemes.push_back(scheme_from_json(js));
    if (j.contains("baseline")) c.baseline = scheme_from_json(j.at("baseline"));
    if (j.contains("inter_relay_gains_db")) {
        c.inter_relay_gains_db = j.at("inter_relay_gains_db").get<std::vector<double>>();
    }
    c.target_outage = j.value("target_outage", 1e-3);
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config schema error: ") + e.what());
    }
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.label = name;
    c.seed = 20090216;  // arbitrary fixed default so presets reproduce

    auto closed = [](std::string form, int n, int m, std::string label) {
        DmtCurveRequest r;
        r.closed_form = std::move(form);
        r.n_relays = n;
        r.n_slots = m;
        r.label = std::move(label);
        return r;
    };
    auto lp = [](std::string inst, std::string label) {
        DmtCurveRequest r;
        r.lp_instance = std::move(inst);
        r.label = std::move(label);
        return r;
    };
    auto saf = [](int m, SchedulePolicy pol, std::string label) {
        SchemeSpec s = SchemeSpec::sequential_saf(m, pol);
        s.label = std::move(label);
        return s;
    };

    if (name == "fig1") {
        c.kind = ExperimentKind::DmtCurves;
        for (int n : {1, 2, 4}) {
            c.curves.push_back(closed("miso", n, 0, "miso" + std::to_string(n)));
            c.curves.push_back(closed("naf", n, 0, "naf" + std::to_string(n)));
        }
        c.notes = "decode-and-forward curves omitted: no closed form implemented";
    } else if (name == "fig3") {
        c.kind = ExperimentKind::DmtCurves;
        c.curves.push_back(closed("miso", 3, 0, "miso3"));
        c.curves.push_back(closed("naf", 3, 0, "naf3"));
        for (int m : {2, 4, 8}) {
            c.curves.push_back(
                closed("saf_ub", 3, m, "saf3relay" + std::to_string(m) + "slot"));
        }
        c.notes = "three-relay isolated-relay tradeoffs";
    } else if (name == "fig4") {
        c.kind = ExperimentKind::DmtCurves;
        c.curves.push_back(closed("saf_ub", 2, 3, "ub23"));
        c.curves.push_back(lp("2r3s:ordered", "2r3s_ordered"));
        c.curves.push_back(lp("2r3s:unordered", "2r3s_unordered"));
        c.curves.push_back(closed("naf", 2, 0, "naf2"));
        c.curves.push_back(closed("noncoop", 0, 0, "noncoop"));
    } else if (name == "fig5") {
        c.kind = ExperimentKind::OutageSweep;
        c.network = {2, 1.0, std::nullopt};
        c.snr_db = linspace_db(0.0, 60.0, 2.5);
        c.rates_bpcu = {2, 6, 10};
        c.schemes = {SchemeSpec::non_cooperative(), SchemeSpec::naf(2),
                     saf(3, SchedulePolicy::Dumb, "saf3")};
    } else if (name == "fig7") {
        c.kind = ExperimentKind::OutageSweep;
        c.network = {2, 1.0, std::nullopt};
        c.snr_db = linspace_db(0.0, 50.0, 2.5);
        c.rates_bpcu = {2, 6};
        for (int m : {3, 5, 9, 13}) {
            c.schemes.push_back(
                saf(m, SchedulePolicy::Dumb, "saf" + std::to_string(m)));
        }
    } else if (name == "fig8") {
        c.kind = ExperimentKind::PowerGainSweep;
        c.network = {2, 1.0, std::nullopt};
        c.snr_db = linspace_db(20.0, 55.0, 2.5);
        c.rates_bpcu = {6};
        c.target_outage = 1e-3;
        c.inter_relay_gains_db = {-20, -10, 0, 10, 20};
        c.baseline = SchemeSpec::non_cooperative();
        c.schemes = {SchemeSpec::naf(2), saf(3, SchedulePolicy::Dumb, "saf3"),
                     saf(13, SchedulePolicy::Dumb, "saf13")};
    } else if (name == "fig9") {
        c.kind = ExperimentKind::SchedulingCompare;
        c.network = {12, 1.0, std::nullopt};
        c.snr_db = linspace_db(5.0, 60.0, 2.5);
        c.rates_bpcu = {2, 6, 10};
        c.target_outage = 1e-3;
        c.baseline = SchemeSpec::relay_selection_naf();
        c.schemes = {saf(3, SchedulePolicy::Dumb, "saf3_dumb"),
                     saf(5, SchedulePolicy::Dumb, "saf5_dumb"),
                     saf(5, SchedulePolicy::Smart, "saf5_smart"),
                     saf(13, SchedulePolicy::Dumb, "saf13_dumb"),
                     saf(13, SchedulePolicy::Smart, "saf13_smart")};
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return c;
}

std::vector<std::string> run_experiment(const ExperimentConfig& config) {
    config.validate();
    fs::create_directories(config.output_dir);
    std::vector<std::string> written;
    auto emit = [&](const std::string& stem, const std::string& body) {
        const std::string path =
            (fs::path(config.output_dir) / (sanitize(config.label) + "_" + sanitize(stem) + ".csv"))
                .string();
        write_text(path, body);
        written.push_back(path);
    };

    if (config.kind == ExperimentKind::DmtCurves) {
        for (const DmtCurveRequest& req : config.curves) {
            const DmtCurve curve = resolve_curve(req);
            emit(curve.label, dmt_csv(curve, config.grid));
        }
    } else if (config.kind == ExperimentKind::OutageSweep) {
        const LinkStats stats = config.network.stats();
        for (const SchemeSpec& scheme : config.schemes) {
            for (double rate : config.rates_bpcu) {
                const OutageCurve curve =
                    estimate_curve(scheme, stats, config.snr_db, rate,
                                   config.n_samples, config.seed);
                emit(scheme.label + "_r" + fmt(rate), outage_csv(curve));
            }
        }
    } else if (config.kind == ExperimentKind::PowerGainSweep) {
        const LinkStats base_stats = config.network.stats();
        std::string summary = "label,rate_bpcu,inter_relay_gain_db,power_gain_db\n";
        for (double rate : config.rates_bpcu) {
            const OutageCurve base =
                estimate_curve(*config.baseline, base_stats, config.snr_db, rate,
                               config.n_samples, config.seed);
            emit(config.baseline->label + "_r" + fmt(rate), outage_csv(base));
            for (const SchemeSpec& scheme : config.schemes) {
                for (double gain : config.inter_relay_gains_db) {
                    const LinkStats stats = with_inter_relay_gain(base_stats, gain);
                    const OutageCurve curve =
                        estimate_curve(scheme, stats, config.snr_db, rate,
                                       config.n_samples, config.seed);
                    emit(scheme.label + "_g" + fmt(gain) + "_r" + fmt(rate),
                         outage_csv(curve));
                    summary += scheme.label + "," + fmt(rate) + "," + fmt(gain) +
                               "," +
                               fmt(power_gain_at(config.target_outage, curve, base)) +
                               "\n";
                }
            }
        }
        const std::string path =
            (fs::path(config.output_dir) / (sanitize(config.label) + "_gains.csv")).string();
        write_text(path, summary);
        written.push_back(path);
    } else {  // SchedulingCompare
        const LinkStats stats = config.network.stats();
        std::string summary = "label,rate_bpcu,power_gain_db\n";
        for (double rate : config.rates_bpcu) {
            const OutageCurve base =
                estimate_curve(*config.baseline, stats, config.snr_db, rate,
                               config.n_samples, config.seed);
            emit(config.baseline->label + "_r" + fmt(rate), outage_csv(base));
            for (const SchemeSpec& scheme : config.schemes) {
                const OutageCurve curve =
                    estimate_curve(scheme, stats, config.snr_db, rate,
                                   config.n_samples, config.seed);
                emit(scheme.label + "_r" + fmt(rate), outage_csv(curve));
                summary += scheme.label + "," + fmt(rate) + "," +
                           fmt(power_gain_at(config.target_outage, curve, base)) +
                           "\n";
            }
        }
        const std::string path =
            (fs::path(config.output_dir) / (sanitize(config.label) + "_gains.csv")).string();
        write_text(path, summary);
        written.push_back(path);
    }

    // Manifest sidecar: everything needed to reproduce the run, and nothing
    // time-dependent, so re-runs are byte-identical.
    json manifest;
    json config_json = config.to_json();
    config_json.erase("output_dir");  // a location, not part of the experiment
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(fnv1a(config_json.dump())));
    manifest["config_hash"] = hash_hex;
    manifest["seed"] = config.seed;
    manifest["config"] = config_json;
    manifest["versions"] = {
        {"saf", "1.0.0"},
        {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                      std::to_string(EIGEN_MAJOR_VERSION) + "." +
                      std::to_string(EIGEN_MINOR_VERSION)}};
    manifest["outputs"] = json::array();
    for (const std::string& w : written) {
        manifest["outputs"].push_back(fs::path(w).filename().string());
    }
    if (!config.notes.empty()) manifest["notes"] = config.notes;
    const std::string mpath =
        (fs::path(config.output_dir) / (sanitize(config.label) + "_manifest.json"))
            .string();
    write_text(mpath, manifest.dump(2) + "\n");
    written.push_back(mpath);
    return written;
}

} // namespace saf
