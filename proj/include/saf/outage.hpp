#ifndef SAF_OUTAGE_HPP
#define SAF_OUTAGE_HPP

#include "saf/channel.hpp"
#include "saf/schemes.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace saf {

struct OutageEstimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;  // sqrt(p(1-p)/n), normal approximation
    std::int64_t n_samples = 0;
    double snr_db = 0.0;
    double rate_bpcu = 0.0;
};

/// Outage estimates over ascending SNR at one fixed rate.
struct OutageCurve {
    std::string label;
    std::vector<OutageEstimate> points;
};

/// Mutual information of the equivalent channel in bits per channel use:
/// (1/M) log2 det(I + snr Sigma^-1 H H^H).
double mutual_information(const EquivalentChannel& ch, double snr);

/// Number of worker threads the estimator uses. Reads the SAF_WORKERS
/// environment variable, falling back to the hardware concurrency. The
/// estimate itself is bit-identical for any worker count.
int worker_count();

/// Mutual information of one Monte-Carlo draw, running the full pipeline
/// sample -> schedule -> builder -> mutual information.
double sample_mutual_information(const SchemeSpec& scheme, const LinkStats& stats,
                                 double snr, const SampleKey& key);

OutageEstimate estimate_outage(const SchemeSpec& scheme, const LinkStats& stats,
                               double snr_db, double rate_bpcu,
                               std::int64_t n_samples, std::uint64_t seed,
                               int workers = 0);

OutageCurve estimate_curve(const SchemeSpec& scheme, const LinkStats& stats,
                           const std::vector<double>& snr_db, double rate_bpcu,
                           std::int64_t n_samples, std::uint64_t seed,
                           int workers = 0);

/// Least-squares slope of -log10(p) against snr_db/10 over the window,
/// using points with p_hat in (0, 0.1]. Throws EvalError with fewer than
/// two usable points.
double diversity_slope(const OutageCurve& curve, double window_lo_db,
                       double window_hi_db);

/// SNR (dB) at which the curve crosses the target outage, by log-log linear
/// interpolation. Throws EvalError when the curve does not cross.
double snr_at_outage(const OutageCurve& curve, double target_pout);

/// SNR advantage of curve_a over curve_b at the target outage:
/// snr_b(target) - snr_a(target) in dB.
double power_gain_at(double target_pout, const OutageCurve& curve_a,
                     const OutageCurve& curve_b);

} // namespace saf

#endif
