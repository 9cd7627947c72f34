#ifndef SAF_EXPERIMENT_HPP
#define SAF_EXPERIMENT_HPP

#include "saf/channel.hpp"
#include "saf/schemes.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace saf {

enum class ExperimentKind {
    OutageSweep,
    DmtCurves,
    PowerGainSweep,
    SchedulingCompare,
};

/// Symmetric network description, optionally with rescaled inter-relay
/// links (gain in dB relative to the source-relay links).
struct NetworkConfig {
    int n_relays = 1;
    double variance = 1.0;
    std::optional<double> inter_relay_gain_db;

    LinkStats stats() const;
};

/// One curve of a dmt_curves experiment: a closed form ("miso", "naf",
/// "saf_ub", "noncoop") or an exponent-LP instance name.
struct DmtCurveRequest {
    std::string closed_form;  // empty when lp_instance is used
    std::string lp_instance;
    int n_relays = 0;
    int n_slots = 0;
    std::string label;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::OutageSweep;
    std::string label = "run";
    std::uint64_t seed = 1;
    std::int64_t n_samples = 1000000;
    std::vector<double> snr_db;
    std::vector<double> rates_bpcu;
    NetworkConfig network;
    std::vector<SchemeSpec> schemes;
    std::optional<SchemeSpec> baseline;          // gain-sweep / compare kinds
    std::vector<double> inter_relay_gains_db;    // power_gain_sweep
    double target_outage = 1e-3;
    int grid = 101;                              // dmt_curves
    std::vector<DmtCurveRequest> curves;         // dmt_curves
    std::string output_dir = ".";
    std::string notes;

    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig load(const std::string& path);
};

/// Built-in scenarios: fig1, fig3, fig4, fig5, fig7, fig8, fig9.
ExperimentConfig preset(const std::string& name);

/// Runs the experiment and returns the paths of all files written,
/// including the manifest sidecar.
std::vector<std::string> run_experiment(const ExperimentConfig& config);

} // namespace saf

#endif
