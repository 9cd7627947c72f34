#include "saf/outage.hpp"

#include "saf/errors.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace saf {

double mutual_information(const EquivalentChannel& ch, double snr) {
    const int m = ch.n_slots;
    // log det(I + snr Sigma^-1 H H^H) = log det(Sigma + snr H H^H) - log det(Sigma),
    // both factors Hermitian positive definite, so two Cholesky passes suffice.
    const Eigen::MatrixXcd a =
        ch.noise_cov + snr * (ch.h_matrix * ch.h_matrix.adjoint());
    Eigen::LLT<Eigen::MatrixXcd> llt_a(a);
    Eigen::LLT<Eigen::MatrixXcd> llt_s(ch.noise_cov);
    if (llt_a.info() != Eigen::Success || llt_s.info() != Eigen::Success) {
        throw EvalError("mutual_information: covariance not positive definite");
    }
    double logdet = 0.0;
    for (int i = 0; i < m; ++i) {
        logdet += std::log(llt_a.matrixL()(i, i).real());
        logdet -= std::log(llt_s.matrixL()(i, i).real());
    }
    // Cholesky factors carry half the determinant each.
    return 2.0 * logdet / (m * std::log(2.0));
}

int worker_count() {
    if (const char* env = std::getenv("SAF_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

double sample_mutual_information(const SchemeSpec& scheme, const LinkStats& stats,
                                 double snr, const SampleKey& key) {
    const ChannelRealization real = sample_realization(stats, key);
    return mutual_information(build_channel(real, scheme, snr), snr);
}

OutageEstimate estimate_outage(const SchemeSpec& scheme, const LinkStats& stats,
                               double snr_db, double rate_bpcu,
                               std::int64_t n_samples, std::uint64_t seed,
                               int workers) {
    if (n_samples < 1) throw ConfigError("estimate_outage: need n_samples >= 1");
    scheme.validate(stats.n_relays);
    stats.validate();
    const double snr = std::pow(10.0, snr_db / 10.0);
    if (workers < 1) workers = worker_count();
    workers = static_cast<int>(std::min<std::int64_t>(workers, n_samples));

    // Each draw is keyed by its global index, so the per-worker partition is
    // invisible in the result: only integer outage counts are merged.
    std::vector<std::int64_t> fails(workers, 0);
    auto run_block = [&](int w) {
        const std::int64_t lo = n_samples * w / workers;
        const std::int64_t hi = n_samples * (w + 1) / workers;
        std::int64_t f = 0;
        for (std::int64_t i = lo; i < hi; ++i) {
            const SampleKey key{seed, static_cast<std::uint64_t>(i)};
            if (sample_mutual_information(scheme, stats, snr, key) < rate_bpcu) ++f;
        }
        fails[w] = f;
    };
    if (workers == 1) {
        run_block(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(run_block, w);
        for (auto& t : pool) t.join();
    }

    std::int64_t total_fail = 0;
    for (std::int64_t f : fails) total_fail += f;

    OutageEstimate est;
    est.n_samples = n_samples;
    est.snr_db = snr_db;
    est.rate_bpcu = rate_bpcu;
    est.p_hat = static_cast<double>(total_fail) / static_cast<double>(n_samples);
    est.stderr_ = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(n_samples));
    return est;
}

OutageCurve estimate_curve(const SchemeSpec& scheme, const LinkStats& stats,
                           const std::vector<double>& snr_db, double rate_bpcu,
                           std::int64_t n_samples, std::uint64_t seed,
                           int workers) {
    OutageCurve curve;
    curve.label = scheme.label;
    curve.points.reserve(snr_db.size());
    for (double s : snr_db) {
        curve.points.push_back(
            estimate_outage(scheme, stats, s, rate_bpcu, n_samples, seed, workers));
    }
    return curve;
}

double diversity_slope(const OutageCurve& curve, double window_lo_db,
                       double window_hi_db) {
    // Fit -log10 p = d * (snr_db / 10) + c over usable points in the window.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (const OutageEstimate& pt : curve.points) {
        if (pt.snr_db < window_lo_db || pt.snr_db > window_hi_db) continue;
        if (pt.p_hat <= 0.0 || pt.p_hat > 0.1) continue;
        const double x = pt.snr_db / 10.0;
        const double y = -std::log10(pt.p_hat);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw EvalError("diversity_slope: fewer than two usable points in window");
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw EvalError("diversity_slope: degenerate SNR window");
    return (n * sxy - sx * sy) / denom;
}

double snr_at_outage(const OutageCurve& curve, double target_pout) {
    if (target_pout <= 0.0 || target_pout >= 1.0) {
        throw ConfigError("snr_at_outage: target must be in (0, 1)");
    }
    const double ly = std::log10(target_pout);
    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const OutageEstimate& a = curve.points[i];
        const OutageEstimate& b = curve.points[i + 1];
        if (a.p_hat <= 0.0 || b.p_hat <= 0.0) continue;
        const double la = std::log10(a.p_hat);
        const double lb = std::log10(b.p_hat);
        // Outage decreases with SNR; take the first bracketing segment.
        if ((la - ly) * (lb - ly) <= 0.0 && la != lb) {
            const double t = (ly - la) / (lb - la);
            return a.snr_db + t * (b.snr_db - a.snr_db);
        }
    }
    throw EvalError("snr_at_outage: curve does not cross the target outage");
}

double power_gain_at(double target_pout, const OutageCurve& curve_a,
                     const OutageCurve& curve_b) {
    return snr_at_outage(curve_b, target_pout) - snr_at_outage(curve_a, target_pout);
}

} // namespace saf
