#include "saf/channel.hpp"

#include "saf/errors.hpp"

#include <cmath>

namespace saf {

namespace detail {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

} // namespace

StreamRng::StreamRng(std::uint64_t seed, std::uint64_t index)
    : key_(mix64(seed + kGolden) ^ mix64(index + 0xD1B54A32D192ED03ULL)) {}

std::uint64_t StreamRng::next_u64() {
    return mix64(key_ ^ (++counter_ * kGolden));
}

double StreamRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void StreamRng::next_normal_pair(double& a, double& b) {
    double u, v, s;
    do {
        u = 2.0 * next_unit() - 1.0;
        v = 2.0 * next_unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    a = u * f;
    b = v * f;
}

} // namespace detail

namespace {

void check_variance(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string(what) + " variance must be finite and >= 0");
    }
}

inline std::complex<double> draw_gain(detail::StreamRng& rng, double variance) {
    double re, im;
    rng.next_normal_pair(re, im);
    const double scale = std::sqrt(0.5 * variance);
    return {re * scale, im * scale};
}

} // namespace

void LinkStats::validate() const {
    if (n_relays < 1) throw ConfigError("LinkStats: n_relays must be >= 1");
    if (var_sr.size() != n_relays || var_rd.size() != n_relays ||
        var_rr.rows() != n_relays || var_rr.cols() != n_relays) {
        throw ConfigError("LinkStats: dimensions do not match n_relays");
    }
    check_variance(var_sd, "source-destination");
    for (int i = 0; i < n_relays; ++i) {
        check_variance(var_sr[i], "source-relay");
        check_variance(var_rd[i], "relay-destination");
        for (int j = 0; j < n_relays; ++j) {
            check_variance(var_rr(i, j), "inter-relay");
            if (var_rr(i, j) != var_rr(j, i)) {
                throw ConfigError("LinkStats: var_rr must be symmetric");
            }
        }
        if (var_rr(i, i) != 0.0) {
            throw ConfigError("LinkStats: var_rr diagonal must be zero");
        }
    }
}

LinkStats symmetric_network(int n_relays, double variance) {
    if (n_relays < 1) throw ConfigError("symmetric_network: n_relays must be >= 1");
    if (!(variance > 0.0)) throw ConfigError("symmetric_network: variance must be > 0");
    LinkStats stats;
    stats.n_relays = n_relays;
    stats.var_sd = variance;
    stats.var_sr = Eigen::VectorXd::Constant(n_relays, variance);
    stats.var_rd = Eigen::VectorXd::Constant(n_relays, variance);
    stats.var_rr = Eigen::MatrixXd::Constant(n_relays, n_relays, variance);
    stats.var_rr.diagonal().setZero();
    return stats;
}

LinkStats with_inter_relay_gain(const LinkStats& stats, double gain_db) {
    stats.validate();
    const double ratio = std::pow(10.0, gain_db / 10.0);
    LinkStats out = stats;
    for (int i = 0; i < out.n_relays; ++i) {
        for (int j = 0; j < out.n_relays; ++j) {
            if (i != j) out.var_rr(i, j) = ratio * stats.var_sr[j];
        }
    }
    // Re-symmetrize: gamma_ij and gamma_ji share the larger of the two
    // targets when var_sr is asymmetric.
    for (int i = 0; i < out.n_relays; ++i) {
        for (int j = i + 1; j < out.n_relays; ++j) {
            const double v = std::max(out.var_rr(i, j), out.var_rr(j, i));
            out.var_rr(i, j) = out.var_rr(j, i) = v;
        }
    }
    return out;
}

ChannelRealization sample_realization(const LinkStats& stats, const SampleKey& key) {
    stats.validate();
    detail::StreamRng rng(key.seed, key.index);
    const int n = stats.n_relays;

    ChannelRealization real;
    real.g0 = draw_gain(rng, stats.var_sd);
    real.h.resize(n);
    real.g.resize(n);
    real.gamma = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) real.h[i] = draw_gain(rng, stats.var_sr[i]);
    for (int i = 0; i < n; ++i) real.g[i] = draw_gain(rng, stats.var_rd[i]);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) real.gamma(i, j) = draw_gain(rng, stats.var_rr(i, j));
        }
    }
    return real;
}

} // namespace saf
