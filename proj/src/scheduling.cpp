#include "saf/scheduling.hpp"

#include "saf/errors.hpp"

#include <algorithm>
#include <numeric>

namespace saf {

double cost_function(double snr, double bg_sq, double bgh_sq) {
    return snr * snr * bgh_sq / (1.0 + snr * bg_sq);
}

std::vector<double> relay_costs(const ChannelRealization& real, double snr) {
    const int n = static_cast<int>(real.h.size());
    std::vector<double> costs(n);
    for (int i = 0; i < n; ++i) {
        const double h_sq = std::norm(real.h[i]);
        const double b_sq = 1.0 / (1.0 + snr * h_sq);
        const double g_sq = std::norm(real.g[i]);
        costs[i] = cost_function(snr, b_sq * g_sq, b_sq * g_sq * h_sq);
    }
    return costs;
}

namespace {

// Descending cost, ties by ascending relay index.
std::vector<int> sort_by_cost(const std::vector<double>& costs) {
    std::vector<int> order(costs.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return costs[a] > costs[b]; });
    return order;
}

} // namespace

Schedule dumb_schedule(const std::vector<double>& costs, int n_slots) {
    const int n = static_cast<int>(costs.size());
    const int eff = n_slots - 1;
    if (eff < 1) throw ConfigError("dumb_schedule: need n_slots >= 2");
    if (n < 2 && eff > 1) {
        throw ConfigError("dumb_schedule: one relay cannot cover more than one slot");
    }
    const std::vector<int> order = sort_by_cost(costs);
    Schedule sched;
    sched.policy = SchedulePolicy::Dumb;
    sched.sequence.resize(eff);
    for (int i = 0; i < eff; ++i) sched.sequence[i] = order[i % n];
    return sched;
}

Schedule smart_schedule(const std::vector<double>& costs, int n_slots) {
    if (costs.size() < 2) throw ConfigError("smart_schedule: need at least two relays");
    const int eff = n_slots - 1;
    if (eff < 1) throw ConfigError("smart_schedule: need n_slots >= 2");
    const std::vector<int> order = sort_by_cost(costs);
    Schedule sched;
    sched.policy = SchedulePolicy::Smart;
    sched.sequence.resize(eff);
    for (int i = 0; i < eff; ++i) sched.sequence[i] = order[i % 2];
    return sched;
}

Schedule ordered_2r3s_schedule(const Eigen::VectorXcd& h) {
    if (h.size() != 2) throw ConfigError("ordered_2r3s_schedule: exactly two relays required");
    Schedule sched;
    sched.policy = SchedulePolicy::Ordered2R3S;
    // Worse |h|^2 first; ties keep relay 0 first.
    if (std::norm(h[0]) <= std::norm(h[1])) {
        sched.sequence = {0, 1};
    } else {
        sched.sequence = {1, 0};
    }
    return sched;
}

Schedule fixed_schedule(std::vector<int> sequence, int n_relays, int n_slots) {
    if (static_cast<int>(sequence.size()) != n_slots - 1) {
        throw ConfigError("fixed_schedule: sequence length must be n_slots - 1");
    }
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (sequence[i] < 0 || sequence[i] >= n_relays) {
            throw ConfigError("fixed_schedule: relay index out of range");
        }
        if (i > 0 && n_relays >= 2 && sequence[i] == sequence[i - 1]) {
            throw ConfigError("fixed_schedule: a half-duplex relay cannot forward consecutive slots");
        }
    }
    Schedule sched;
    sched.policy = SchedulePolicy::Fixed;
    sched.sequence = std::move(sequence);
    return sched;
}

} // namespace saf
