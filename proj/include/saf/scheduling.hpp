#ifndef SAF_SCHEDULING_HPP
#define SAF_SCHEDULING_HPP

#include "saf/channel.hpp"

#include <vector>

namespace saf {

enum class SchedulePolicy {
    Dumb,        // round-robin over the cost-sorted relay order
    Smart,       // alternation between the two highest-cost relays
    Ordered2R3S, // two-relay three-slot, worse source-relay link first
    Fixed,       // user-supplied effective-relay sequence
};

/// Map from effective-relay slot to physical relay: sequence[i] is the
/// 0-based relay forwarding slot i+1 into slot i+2. Length M-1.
struct Schedule {
    std::vector<int> sequence;
    SchedulePolicy policy = SchedulePolicy::Fixed;
};

/// Effective relayed-signal SNR of a relay, Ci = snr^2 |b g h|^2 / (1 + snr |b g|^2).
double cost_function(double snr, double bg_sq, double bgh_sq);

/// Cost of every relay, with the two-slot normalization b_i^2 = 1/(1 + snr |h_i|^2)
/// so the costs are schedule-independent.
std::vector<double> relay_costs(const ChannelRealization& real, double snr);

/// Round-robin over relays sorted by descending cost (ties by ascending
/// index), truncated to M-1 effective slots. Requires N >= 2, or N == 1
/// with M == 2 (a single relay cannot forward two consecutive slots).
Schedule dumb_schedule(const std::vector<double>& costs, int n_slots);

/// The two highest-cost relays alternate, best first, for M-1 slots. N >= 2.
Schedule smart_schedule(const std::vector<double>& costs, int n_slots);

/// Two-relay three-slot ordering: the relay with the worse source-relay
/// link transmits first; ties by ascending index.
Schedule ordered_2r3s_schedule(const Eigen::VectorXcd& h);

/// Validates a user-supplied sequence against (N, M).
Schedule fixed_schedule(std::vector<int> sequence, int n_relays, int n_slots);

} // namespace saf

#endif
