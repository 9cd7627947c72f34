#include "saf/schemes.hpp"

#include "saf/errors.hpp"

#include <algorithm>
#include <cmath>

namespace saf {

void PowerAllocation::validate() const {
    const auto m = pi.size();
    if (m < 1 || pibar.size() != m) {
        throw ConfigError("PowerAllocation: pi and pibar must have equal, nonzero length");
    }
    if (pibar[0] != 0.0) throw ConfigError("PowerAllocation: pibar[0] must be 0 (no relay owns slot 1)");
    double total = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (!(pi[i] >= 0.0) || !(pibar[i] >= 0.0)) {
            throw ConfigError("PowerAllocation: factors must be >= 0");
        }
        total += pi[i] + pibar[i];
    }
    if (std::abs(total - static_cast<double>(m)) > 1e-12) {
        throw ConfigError("PowerAllocation: factors must sum to the slot count");
    }
}

PowerAllocation PowerAllocation::sequential_default(int n_slots) {
    PowerAllocation a;
    a.pi = Eigen::VectorXd::Constant(n_slots, 0.5);
    a.pibar = Eigen::VectorXd::Constant(n_slots, 0.5);
    a.pi[0] = 1.0;
    a.pibar[0] = 0.0;
    return a;
}

PowerAllocation PowerAllocation::naf_default(int n_slots) {
    PowerAllocation a;
    a.pi = Eigen::VectorXd::Zero(n_slots);
    a.pibar = Eigen::VectorXd::Zero(n_slots);
    for (int i = 0; i < n_slots; ++i) {
        if (i % 2 == 0) {
            a.pi[i] = 1.0;
        } else {
            a.pi[i] = 0.5;
            a.pibar[i] = 0.5;
        }
    }
    return a;
}

PowerAllocation SchemeSpec::effective_allocation() const {
    if (allocation) return *allocation;
    switch (kind) {
        case SchemeKind::NonCooperative: {
            PowerAllocation a;
            a.pi = Eigen::VectorXd::Constant(1, 1.0);
            a.pibar = Eigen::VectorXd::Zero(1);
            return a;
        }
        case SchemeKind::Naf:
            return PowerAllocation::naf_default(n_slots);
        default:
            return PowerAllocation::sequential_default(n_slots);
    }
}

void SchemeSpec::validate(int n_relays) const {
    if (n_relays < 1) throw ConfigError("SchemeSpec: n_relays must be >= 1");
    switch (kind) {
        case SchemeKind::NonCooperative:
            if (n_slots != 1) throw ConfigError("non-cooperative scheme has exactly one slot");
            break;
        case SchemeKind::Naf:
            if (n_slots != 2 * n_relays) {
                throw ConfigError("NAF is an N-relay 2N-slot scheme; n_slots must equal 2 * n_relays");
            }
            break;
        case SchemeKind::RelaySelectionNaf:
            if (n_slots != 2) throw ConfigError("relay selection NAF has exactly two slots");
            break;
        case SchemeKind::SequentialSaf:
            if (n_slots < 2) {
                throw ConfigError("sequential SAF needs n_slots >= 2; use the non-cooperative scheme for one slot");
            }
            if (policy == SchedulePolicy::Ordered2R3S && (n_relays != 2 || n_slots != 3)) {
                throw ConfigError("ordered scheduling is defined for the two-relay three-slot case");
            }
            if (policy == SchedulePolicy::Smart && n_relays < 2) {
                throw ConfigError("smart scheduling needs at least two relays");
            }
            if (n_relays == 1 && n_slots > 2) {
                throw ConfigError("one half-duplex relay cannot cover more than one effective slot");
            }
            if (policy == SchedulePolicy::Fixed && !fixed_sequence) {
                throw ConfigError("fixed scheduling needs an explicit sequence");
            }
            break;
        case SchemeKind::GenieAidedSaf:
            if (n_slots < 2) throw ConfigError("genie-aided SAF needs n_slots >= 2");
            break;
    }
    const PowerAllocation alloc = effective_allocation();
    alloc.validate();
    if (alloc.pi.size() != n_slots) {
        throw ConfigError("SchemeSpec: allocation length must equal n_slots");
    }
}

SchemeSpec SchemeSpec::non_cooperative() {
    SchemeSpec s;
    s.kind = SchemeKind::NonCooperative;
    s.n_slots = 1;
    s.label = "noncoop";
    return s;
}

SchemeSpec SchemeSpec::naf(int n_relays) {
    SchemeSpec s;
    s.kind = SchemeKind::Naf;
    s.n_slots = 2 * n_relays;
    s.label = "naf";
    return s;
}

SchemeSpec SchemeSpec::relay_selection_naf() {
    SchemeSpec s;
    s.kind = SchemeKind::RelaySelectionNaf;
    s.n_slots = 2;
    s.label = "selection-naf";
    return s;
}

SchemeSpec SchemeSpec::sequential_saf(int n_slots, SchedulePolicy policy, bool relay_isolation) {
    SchemeSpec s;
    s.kind = SchemeKind::SequentialSaf;
    s.n_slots = n_slots;
    s.policy = policy;
    s.relay_isolation = relay_isolation;
    s.label = "seq-saf-" + std::to_string(n_slots) + "slot";
    return s;
}

SchemeSpec SchemeSpec::genie_aided(int n_slots) {
    SchemeSpec s;
    s.kind = SchemeKind::GenieAidedSaf;
    s.n_slots = n_slots;
    s.label = "genie-saf";
    return s;
}

Eigen::VectorXd relay_amp_gains(const ChannelRealization& real,
                                const PowerAllocation& alloc, double snr,
                                const Schedule& schedule, bool relay_isolation) {
    const int eff = static_cast<int>(schedule.sequence.size());
    Eigen::VectorXd b(eff);
    double prev_power = 0.0;  // b_{i-1}^2 * P_{i-1}, and b_0 = 0
    double prev_b_sq = 0.0;
    for (int i = 0; i < eff; ++i) {
        const int relay = schedule.sequence[i];
        // Relay i listens in slot i+1: source power pi[i], incoming relayed
        // power pibar[i] through the inter-relay link.
        double p = 1.0 + alloc.pi[i] * snr * std::norm(real.h[relay]);
        if (i > 0 && !relay_isolation) {
            const int prev_relay = schedule.sequence[i - 1];
            const double gamma_sq = std::norm(real.gamma(prev_relay, relay));
            p += alloc.pibar[i] * snr * gamma_sq * prev_b_sq * prev_power;
        }
        b[i] = 1.0 / std::sqrt(p);
        prev_b_sq = b[i] * b[i];
        prev_power = p;
    }
    return b;
}

EquivalentChannel build_noncoop(const ChannelRealization& real, double /*snr*/) {
    EquivalentChannel ch;
    ch.n_slots = 1;
    ch.h_matrix = Eigen::MatrixXcd::Constant(1, 1, real.g0);
    ch.noise_cov = Eigen::MatrixXcd::Identity(1, 1);
    return ch;
}

EquivalentChannel build_sequential_saf(const ChannelRealization& real,
                                       const SchemeSpec& spec, double snr,
                                       const Schedule& schedule) {
    const int m = spec.n_slots;
    const int eff = m - 1;
    if (static_cast<int>(schedule.sequence.size()) != eff) {
        throw ConfigError("build_sequential_saf: schedule length must be n_slots - 1");
    }
    const PowerAllocation alloc = spec.effective_allocation();
    const Eigen::VectorXd b =
        relay_amp_gains(real, alloc, snr, schedule, spec.relay_isolation);

    // T = U_c (I - U_d)^-1 = U_c (I + U_d + U_d^2 + ...). Effective relay i
    // injects c_i into slot i+1 at the destination and dval_i into the next
    // relay, so T(i+1, k) = c_i * dval_{i-1} * ... * dval_k.
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(m, m);
    Eigen::VectorXcd c(eff), dval(eff);
    for (int i = 0; i < eff; ++i) {
        const int relay = schedule.sequence[i];
        const double amp = std::sqrt(alloc.pibar[i + 1] * snr) * b[i];
        c[i] = amp * real.g[relay];
        if (i + 1 < eff && !spec.relay_isolation) {
            const int next = schedule.sequence[i + 1];
            dval[i] = amp * real.gamma(relay, next);
        } else {
            dval[i] = 0.0;
        }
    }
    for (int i = 0; i < eff; ++i) {
        std::complex<double> path = c[i];
        t(i + 1, i) = path;
        for (int k = i - 1; k >= 0; --k) {
            path *= dval[k];
            t(i + 1, k) = path;
        }
    }

    Eigen::VectorXcd h_eff(m);
    h_eff[m - 1] = 0.0;  // last column of diag(h~) never multiplies anything
    for (int i = 0; i < eff; ++i) h_eff[i] = real.h[schedule.sequence[i]];

    EquivalentChannel ch;
    ch.n_slots = m;
    ch.h_matrix = Eigen::MatrixXcd::Zero(m, m);
    for (int col = 0; col < m; ++col) {
        const double a = std::sqrt(alloc.pi[col]);
        ch.h_matrix(col, col) = real.g0 * a;
        for (int row = col + 1; row < m; ++row) {
            ch.h_matrix(row, col) = t(row, col) * h_eff[col] * a;
        }
    }
    ch.noise_cov = Eigen::MatrixXcd::Identity(m, m) + t * t.adjoint();
    return ch;
}

EquivalentChannel build_naf(const ChannelRealization& real, const SchemeSpec& spec,
                            double snr) {
    const int n = static_cast<int>(real.h.size());
    if (spec.n_slots != 2 * n) {
        throw ConfigError("build_naf: n_slots must equal 2 * n_relays");
    }
    const int m = spec.n_slots;
    const PowerAllocation alloc = spec.effective_allocation();

    EquivalentChannel ch;
    ch.n_slots = m;
    ch.h_matrix = Eigen::MatrixXcd::Zero(m, m);
    ch.noise_cov = Eigen::MatrixXcd::Identity(m, m);
    for (int i = 0; i < n; ++i) {
        const int odd = 2 * i;       // listening slot of relay i
        const int even = 2 * i + 1;  // forwarding slot of relay i
        const double b = 1.0 / std::sqrt(1.0 + alloc.pi[odd] * snr * std::norm(real.h[i]));
        const std::complex<double> relayed =
            std::sqrt(alloc.pibar[even] * snr) * b * real.g[i] *
            std::sqrt(alloc.pi[odd]) * real.h[i];
        ch.h_matrix(odd, odd) = std::sqrt(alloc.pi[odd]) * real.g0;
        ch.h_matrix(even, even) = std::sqrt(alloc.pi[even]) * real.g0;
        ch.h_matrix(even, odd) = relayed;
        ch.noise_cov(even, even) =
            1.0 + alloc.pibar[even] * snr * std::norm(b * real.g[i]);
    }
    return ch;
}

EquivalentChannel build_relay_selection_naf(const ChannelRealization& real,
                                            const SchemeSpec& spec, double snr) {
    const std::vector<double> costs = relay_costs(real, snr);
    const int best = static_cast<int>(
        std::max_element(costs.begin(), costs.end()) - costs.begin());

    SchemeSpec two_slot = spec;
    two_slot.kind = SchemeKind::SequentialSaf;
    two_slot.n_slots = 2;
    Schedule sched;
    sched.sequence = {best};
    return build_sequential_saf(real, two_slot, snr, sched);
}

EquivalentChannel build_genie_aided(const ChannelRealization& real,
                                    const SchemeSpec& spec, double snr) {
    (void)snr;
    const int m = spec.n_slots;
    std::complex<double> g_max = 0.0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < real.g.size(); ++i) {
        if (std::norm(real.g[i]) > best) {
            best = std::norm(real.g[i]);
            g_max = real.g[i];
        }
    }
    EquivalentChannel ch;
    ch.n_slots = m;
    ch.h_matrix = Eigen::MatrixXcd::Zero(m, m);
    ch.h_matrix.diagonal().setConstant(real.g0);
    for (int i = 0; i + 1 < m; ++i) ch.h_matrix(i + 1, i) = g_max;
    ch.noise_cov = Eigen::MatrixXcd::Identity(m, m);
    return ch;
}

EquivalentChannel build_channel(const ChannelRealization& real, const SchemeSpec& spec,
                                double snr) {
    switch (spec.kind) {
        case SchemeKind::NonCooperative:
            return build_noncoop(real, snr);
        case SchemeKind::Naf:
            return build_naf(real, spec, snr);
        case SchemeKind::RelaySelectionNaf:
            return build_relay_selection_naf(real, spec, snr);
        case SchemeKind::GenieAidedSaf:
            return build_genie_aided(real, spec, snr);
        case SchemeKind::SequentialSaf: {
            Schedule sched;
            switch (spec.policy) {
                case SchedulePolicy::Dumb:
                    sched = dumb_schedule(relay_costs(real, snr), spec.n_slots);
                    break;
                case SchedulePolicy::Smart:
                    sched = smart_schedule(relay_costs(real, snr), spec.n_slots);
                    break;
                case SchedulePolicy::Ordered2R3S:
                    sched = ordered_2r3s_schedule(real.h);
                    break;
                case SchedulePolicy::Fixed:
                    sched = fixed_schedule(*spec.fixed_sequence,
                                           static_cast<int>(real.h.size()), spec.n_slots);
                    break;
            }
            return build_sequential_saf(real, spec, snr, sched);
        }
    }
    throw ConfigError("build_channel: unknown scheme kind");
}

} // namespace saf
