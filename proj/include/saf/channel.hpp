#ifndef SAF_CHANNEL_HPP
#define SAF_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace saf {

/// Per-link variances of a quasi-static Rayleigh relay network.
///
/// Indices are 0-based: var_sr[i] is the variance of the source->relay-i
/// gain h_i, var_rd[i] of the relay-i->destination gain g_i, and
/// var_rr(i, j) of the relay-i->relay-j gain gamma_{ij}. The diagonal of
/// var_rr is zero (a relay has no self-link).
struct LinkStats {
    int n_relays = 0;
    double var_sd = 0.0;
    Eigen::VectorXd var_sr;
    Eigen::VectorXd var_rd;
    Eigen::MatrixXd var_rr;

    /// Throws ConfigError on negative/non-finite variances, dimension
    /// mismatches, an asymmetric var_rr or a nonzero var_rr diagonal.
    void validate() const;
};

/// One draw of all complex link gains of an N-relay network.
struct ChannelRealization {
    std::complex<double> g0;
    Eigen::VectorXcd h;      // source -> relay
    Eigen::VectorXcd g;      // relay -> destination
    Eigen::MatrixXcd gamma;  // relay -> relay, zero diagonal
};

/// Identifies one Monte-Carlo draw. The pair (seed, index) fully determines
/// the realization, independently of which worker evaluates it.
struct SampleKey {
    std::uint64_t seed = 0;
    std::uint64_t index = 0;
};

/// All link variances equal to `variance`, zero var_rr diagonal.
LinkStats symmetric_network(int n_relays, double variance);

/// Rescales the inter-relay variances so that E|gamma_ij|^2 / E|h_j|^2
/// equals 10^(gain_db/10). Other links are untouched.
LinkStats with_inter_relay_gain(const LinkStats& stats, double gain_db);

/// Draws one network realization. Pure function of (stats, key): the same
/// key always yields the bit-identical realization. Every gain is an
/// independent circularly-symmetric complex Gaussian whose real and
/// imaginary parts each carry half the configured variance.
ChannelRealization sample_realization(const LinkStats& stats, const SampleKey& key);

namespace detail {

/// Counter-based stream over a 64-bit finalizer hash; every (seed, index)
/// pair keys its own stream so draw order never depends on worker count.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform in [0, 1) with 53 random bits.
    double next_unit();

    /// Two independent standard normals (Marsaglia polar method).
    void next_normal_pair(double& a, double& b);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace detail

} // namespace saf

#endif
