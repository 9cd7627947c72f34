#ifndef SAF_SCHEMES_HPP
#define SAF_SCHEMES_HPP

#include "saf/channel.hpp"
#include "saf/scheduling.hpp"

#include <optional>
#include <string>
#include <vector>

namespace saf {

/// Slot power split: pi[i] is the source power factor in slot i+1, pibar[i]
/// the relayed power factor. pibar[0] == 0 and sum(pi) + sum(pibar) == M.
struct PowerAllocation {
    Eigen::VectorXd pi;
    Eigen::VectorXd pibar;

    void validate() const;

    /// pi_1 = 1, pi_i = pibar_i = 0.5 for i >= 2.
    static PowerAllocation sequential_default(int n_slots);

    /// Full source power in listening slots: pi_odd = 1, pi_even = pibar_even = 0.5.
    /// Avoids allocating relayed power to slots where no relay transmits.
    static PowerAllocation naf_default(int n_slots);
};

/// The exact finite-SNR equivalent linear channel y = sqrt(snr) H x + z,
/// z ~ CN(0, noise_cov).
struct EquivalentChannel {
    Eigen::MatrixXcd h_matrix;
    Eigen::MatrixXcd noise_cov;
    int n_slots = 0;
};

enum class SchemeKind {
    NonCooperative,
    Naf,
    RelaySelectionNaf,
    SequentialSaf,
    GenieAidedSaf,
};

struct SchemeSpec {
    SchemeKind kind = SchemeKind::NonCooperative;
    int n_slots = 1;                 // M; 2N for NAF, 1 for non-cooperative, 2 for selection NAF
    SchedulePolicy policy = SchedulePolicy::Dumb;        // SequentialSaf only
    std::optional<std::vector<int>> fixed_sequence;      // policy == Fixed
    bool relay_isolation = false;                        // SequentialSaf only
    std::optional<PowerAllocation> allocation;           // default per kind when absent
    std::string label;

    PowerAllocation effective_allocation() const;
    void validate(int n_relays) const;

    static SchemeSpec non_cooperative();
    static SchemeSpec naf(int n_relays);
    static SchemeSpec relay_selection_naf();
    static SchemeSpec sequential_saf(int n_slots, SchedulePolicy policy,
                                     bool relay_isolation = false);
    static SchemeSpec genie_aided(int n_slots);
};

/// Processing gains b_i at the effective relays, normalized so that the
/// conditional relayed power E(|b_i y_{r,i}|^2 | gains) is exactly 1.
Eigen::VectorXd relay_amp_gains(const ChannelRealization& real,
                                const PowerAllocation& alloc, double snr,
                                const Schedule& schedule,
                                bool relay_isolation = false);

EquivalentChannel build_noncoop(const ChannelRealization& real, double snr);

EquivalentChannel build_sequential_saf(const ChannelRealization& real,
                                       const SchemeSpec& spec, double snr,
                                       const Schedule& schedule);

EquivalentChannel build_naf(const ChannelRealization& real, const SchemeSpec& spec,
                            double snr);

EquivalentChannel build_relay_selection_naf(const ChannelRealization& real,
                                            const SchemeSpec& spec, double snr);

EquivalentChannel build_genie_aided(const ChannelRealization& real,
                                    const SchemeSpec& spec, double snr);

/// Dispatcher: derives the schedule where the scheme needs one, then calls
/// the matching builder.
EquivalentChannel build_channel(const ChannelRealization& real, const SchemeSpec& spec,
                                double snr);

} // namespace saf

#endif
