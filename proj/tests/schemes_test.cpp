#include "saf/errors.hpp"
#include "saf/outage.hpp"
#include "saf/schemes.hpp"

#include <doctest.h>

#include <random>

using namespace saf;
using cplx = std::complex<double>;

namespace {

std::mt19937_64 test_rng(20240811);

cplx rand_cplx(double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale / std::sqrt(2.0));
    return {n(test_rng), n(test_rng)};
}

ChannelRealization make_realization(int n) {
    ChannelRealization r;
    r.g0 = rand_cplx();
    r.h.resize(n);
    r.g.resize(n);
    r.gamma = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        r.h[i] = rand_cplx();
        r.g[i] = rand_cplx();
        for (int j = 0; j < n; ++j) {
            if (i != j) r.gamma(i, j) = rand_cplx();
        }
    }
    return r;
}

bool lower_triangular(const Eigen::MatrixXcd& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = i + 1; j < m.cols(); ++j) {
            if (m(i, j) != cplx(0.0, 0.0)) return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("power allocation defaults satisfy the sum constraint") {
    const PowerAllocation seq = PowerAllocation::sequential_default(3);
    CHECK(seq.pi[0] == 1.0);
    CHECK(seq.pi[1] == 0.5);
    CHECK(seq.pibar[0] == 0.0);
    CHECK(seq.pibar[2] == 0.5);
    CHECK_NOTHROW(seq.validate());

    const PowerAllocation naf = PowerAllocation::naf_default(4);
    CHECK(naf.pi[0] == 1.0);
    CHECK(naf.pibar[0] == 0.0);
    CHECK(naf.pi[1] == 0.5);
    CHECK(naf.pibar[1] == 0.5);
    CHECK(naf.pi[2] == 1.0);
    CHECK_NOTHROW(naf.validate());

    PowerAllocation bad = seq;
    bad.pi[1] = 0.7;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = seq;
    bad.pibar[0] = 0.1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("relay amplification gains") {
    const PowerAllocation alloc = PowerAllocation::sequential_default(3);
    Schedule sched;
    sched.sequence = {0, 1};

    SUBCASE("noise-only reception gives unit gain") {
        ChannelRealization r = make_realization(2);
        r.h.setZero();
        r.gamma.setZero();
        const Eigen::VectorXd b = relay_amp_gains(r, alloc, 25.0, sched);
        CHECK(b[0] == 1.0);
        CHECK(b[1] == 1.0);
    }

    SUBCASE("two-slot closed form") {
        ChannelRealization r = make_realization(1);
        r.h[0] = 1.0;
        Schedule s2;
        s2.sequence = {0};
        const PowerAllocation a2 = PowerAllocation::sequential_default(2);
        const Eigen::VectorXd b = relay_amp_gains(r, a2, 10.0, s2);
        CHECK(b[0] == doctest::Approx(1.0 / std::sqrt(11.0)).epsilon(1e-12));
    }

    SUBCASE("normalization holds exactly along the chain") {
        const ChannelRealization r = make_realization(2);
        const double snr = 17.0;
        const Eigen::VectorXd b = relay_amp_gains(r, alloc, snr, sched);
        // independent recursion of the received power P_i
        const double p1 = 1.0 + alloc.pi[0] * snr * std::norm(r.h[0]);
        const double p2 = 1.0 + alloc.pi[1] * snr * std::norm(r.h[1]) +
                          alloc.pibar[1] * snr * std::norm(r.gamma(0, 1)) *
                              (b[0] * b[0]) * p1;
        CHECK(b[0] * b[0] * p1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(b[1] * b[1] * p2 == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("simulated relayed power is unit on average") {
        const ChannelRealization r = make_realization(2);
        const double snr = 8.0;
        const Eigen::VectorXd b = relay_amp_gains(r, alloc, snr, sched);
        double acc = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const cplx x0 = rand_cplx(), x1 = rand_cplx();
            const cplx n0 = rand_cplx(), n1 = rand_cplx();
            const cplx y1 = std::sqrt(alloc.pi[0] * snr) * r.h[0] * x0 + n0;
            const cplx y2 = std::sqrt(alloc.pi[1] * snr) * r.h[1] * x1 +
                            std::sqrt(alloc.pibar[1] * snr) * r.gamma(0, 1) *
                                (b[0] * y1) +
                            n1;
            acc += std::norm(b[1] * y2);
        }
        CHECK(acc / n == doctest::Approx(1.0).epsilon(0.01));
    }
}

TEST_CASE("non-cooperative channel") {
    ChannelRealization r = make_realization(1);
    r.g0 = 1.0;
    EquivalentChannel ch = build_noncoop(r, 3.0);
    CHECK(ch.h_matrix(0, 0) == cplx(1.0, 0.0));
    CHECK(ch.noise_cov(0, 0) == cplx(1.0, 0.0));
    CHECK(mutual_information(ch, 3.0) == doctest::Approx(2.0).epsilon(1e-12));

    r.g0 = 0.0;
    CHECK(build_noncoop(r, 3.0).h_matrix(0, 0) == cplx(0.0, 0.0));
}

TEST_CASE("sequential SAF equivalent channel") {
    const double snr = 10.0;
    SchemeSpec spec = SchemeSpec::sequential_saf(3, SchedulePolicy::Fixed);
    spec.fixed_sequence = std::vector<int>{0, 1};
    Schedule sched;
    sched.sequence = {0, 1};

    SUBCASE("relay isolation makes H bidiagonal") {
        SchemeSpec iso = spec;
        iso.relay_isolation = true;
        const ChannelRealization r = make_realization(2);
        const EquivalentChannel ch = build_sequential_saf(r, iso, snr, sched);
        CHECK(ch.h_matrix(2, 0) == cplx(0.0, 0.0));
        CHECK(lower_triangular(ch.h_matrix));
        CHECK(ch.h_matrix(1, 0) != cplx(0.0, 0.0));
        CHECK(ch.h_matrix(2, 1) != cplx(0.0, 0.0));
    }

    SUBCASE("dead relay-destination links degenerate to the direct link") {
        ChannelRealization r = make_realization(2);
        r.g.setZero();
        const EquivalentChannel ch = build_sequential_saf(r, spec, snr, sched);
        const PowerAllocation alloc = spec.effective_allocation();
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(ch.h_matrix(i, i) -
                           r.g0 * std::sqrt(alloc.pi[i])) < 1e-15);
        }
        CHECK(ch.h_matrix(1, 0) == cplx(0.0, 0.0));
        CHECK(ch.noise_cov.isApprox(Eigen::MatrixXcd::Identity(3, 3)));
    }

    SUBCASE("the (3,1) entry carries the g2 gamma12 h1 product") {
        const ChannelRealization r = make_realization(2);
        const PowerAllocation alloc = spec.effective_allocation();
        const Eigen::VectorXd b = relay_amp_gains(r, alloc, snr, sched);
        const EquivalentChannel ch = build_sequential_saf(r, spec, snr, sched);
        const cplx expect = std::sqrt(alloc.pibar[2] * snr) * b[1] * r.g[1] *
                            std::sqrt(alloc.pibar[1] * snr) * b[0] * r.gamma(0, 1) *
                            std::sqrt(alloc.pi[0]) * r.h[0];
        CHECK(std::abs(ch.h_matrix(2, 0) - expect) < 1e-12 * std::abs(expect));
    }

    SUBCASE("schedule length is validated") {
        const ChannelRealization r = make_realization(2);
        Schedule wrong;
        wrong.sequence = {0};
        CHECK_THROWS_AS(build_sequential_saf(r, spec, snr, wrong), ConfigError);
    }
}

TEST_CASE("NAF equivalent channel") {
    const double snr = 10.0;

    SUBCASE("dead relays leave only the direct link") {
        ChannelRealization r = make_realization(2);
        r.g.setZero();
        const SchemeSpec spec = SchemeSpec::naf(2);
        const EquivalentChannel ch = build_naf(r, spec, snr);
        const PowerAllocation alloc = spec.effective_allocation();
        for (int i = 0; i < 4; ++i) {
            CHECK(std::abs(ch.h_matrix(i, i) -
                           r.g0 * std::sqrt(alloc.pi[i])) < 1e-15);
        }
        CHECK(ch.h_matrix(1, 0) == cplx(0.0, 0.0));
        CHECK(ch.noise_cov.isApprox(Eigen::MatrixXcd::Identity(4, 4)));
    }

    SUBCASE("single relay NAF equals the two-slot sequential SAF") {
        const ChannelRealization r = make_realization(1);
        const EquivalentChannel naf = build_naf(r, SchemeSpec::naf(1), snr);
        SchemeSpec seq = SchemeSpec::sequential_saf(2, SchedulePolicy::Fixed);
        seq.fixed_sequence = std::vector<int>{0};
        Schedule sched;
        sched.sequence = {0};
        const EquivalentChannel saf = build_sequential_saf(r, seq, snr, sched);
        CHECK(naf.h_matrix.isApprox(saf.h_matrix, 1e-12));
        CHECK(naf.noise_cov.isApprox(saf.noise_cov, 1e-12));
    }

    SUBCASE("two-relay block layout") {
        const ChannelRealization r = make_realization(2);
        const EquivalentChannel ch = build_naf(r, SchemeSpec::naf(2), snr);
        int nonzero = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                if (ch.h_matrix(i, j) != cplx(0.0, 0.0)) ++nonzero;
            }
        }
        CHECK(nonzero == 6);
        CHECK(ch.h_matrix(1, 0) != cplx(0.0, 0.0));
        CHECK(ch.h_matrix(3, 2) != cplx(0.0, 0.0));
        CHECK(ch.h_matrix(2, 1) == cplx(0.0, 0.0));
    }
}

TEST_CASE("relay selection NAF picks the argmax-cost relay") {
    const double snr = 10.0;
    const SchemeSpec spec = SchemeSpec::relay_selection_naf();

    SUBCASE("single relay coincides with NAF") {
        const ChannelRealization r = make_realization(1);
        const EquivalentChannel sel = build_relay_selection_naf(r, spec, snr);
        const EquivalentChannel naf = build_naf(r, SchemeSpec::naf(1), snr);
        CHECK(sel.h_matrix.isApprox(naf.h_matrix, 1e-12));
        CHECK(sel.noise_cov.isApprox(naf.noise_cov, 1e-12));
    }

    SUBCASE("the better relay's gains appear in H") {
        ChannelRealization r = make_realization(2);
        r.h[0] = 0.1;
        r.g[0] = 0.1;
        r.h[1] = 2.0;
        r.g[1] = 2.0;
        const EquivalentChannel sel = build_relay_selection_naf(r, spec, snr);
        SchemeSpec seq = SchemeSpec::sequential_saf(2, SchedulePolicy::Fixed);
        seq.fixed_sequence = std::vector<int>{1};
        Schedule sched;
        sched.sequence = {1};
        const EquivalentChannel want = build_sequential_saf(r, seq, snr, sched);
        CHECK(sel.h_matrix.isApprox(want.h_matrix, 1e-12));
    }

    SUBCASE("cost ties break toward the lower relay index") {
        ChannelRealization r = make_realization(2);
        r.h[1] = r.h[0];
        r.g[1] = r.g[0];
        r.h[0] = r.h[1];  // identical links -> identical costs
        const EquivalentChannel sel = build_relay_selection_naf(r, spec, snr);
        SchemeSpec seq = SchemeSpec::sequential_saf(2, SchedulePolicy::Fixed);
        seq.fixed_sequence = std::vector<int>{0};
        Schedule sched;
        sched.sequence = {0};
        const EquivalentChannel want = build_sequential_saf(r, seq, snr, sched);
        CHECK(sel.h_matrix.isApprox(want.h_matrix, 1e-12));
    }
}

TEST_CASE("genie-aided channel") {
    const SchemeSpec spec = SchemeSpec::genie_aided(3);

    ChannelRealization r = make_realization(2);
    r.g[0] = 0.5;
    r.g[1] = 2.0;
    EquivalentChannel ch = build_genie_aided(r, spec, 10.0);
    CHECK(ch.h_matrix(1, 0) == cplx(2.0, 0.0));
    CHECK(ch.h_matrix(2, 1) == cplx(2.0, 0.0));
    CHECK(ch.h_matrix(2, 0) == cplx(0.0, 0.0));
    CHECK(ch.noise_cov.isApprox(Eigen::MatrixXcd::Identity(3, 3)));

    r.g.setZero();
    ch = build_genie_aided(r, spec, 10.0);
    CHECK(ch.h_matrix.isApprox(r.g0 * Eigen::MatrixXcd::Identity(3, 3)));
}

TEST_CASE("every builder returns a lower-triangular H") {
    const LinkStats stats = symmetric_network(2, 1.0);
    const ChannelRealization r = sample_realization(stats, {3, 14});
    const double snr = 31.6;
    const std::vector<SchemeSpec> specs = {
        SchemeSpec::non_cooperative(),
        SchemeSpec::naf(2),
        SchemeSpec::relay_selection_naf(),
        SchemeSpec::sequential_saf(3, SchedulePolicy::Dumb),
        SchemeSpec::sequential_saf(5, SchedulePolicy::Smart),
        SchemeSpec::genie_aided(4),
    };
    for (const SchemeSpec& s : specs) {
        const EquivalentChannel ch = build_channel(r, s, snr);
        CHECK(lower_triangular(ch.h_matrix));
        CHECK(ch.noise_cov.isApprox(ch.noise_cov.adjoint()));
    }
}

TEST_CASE("scheme validation rejects inconsistent setups") {
    CHECK_THROWS_AS(SchemeSpec::naf(2).validate(3), ConfigError);
    SchemeSpec m1 = SchemeSpec::sequential_saf(1, SchedulePolicy::Dumb);
    CHECK_THROWS_AS(m1.validate(2), ConfigError);
    SchemeSpec ord = SchemeSpec::sequential_saf(4, SchedulePolicy::Ordered2R3S);
    CHECK_THROWS_AS(ord.validate(2), ConfigError);
    SchemeSpec smart = SchemeSpec::sequential_saf(3, SchedulePolicy::Smart);
    CHECK_THROWS_AS(smart.validate(1), ConfigError);
    SchemeSpec fixed = SchemeSpec::sequential_saf(3, SchedulePolicy::Fixed);
    CHECK_THROWS_AS(fixed.validate(2), ConfigError);  // sequence missing
    CHECK_NOTHROW(SchemeSpec::sequential_saf(13, SchedulePolicy::Dumb).validate(2));
}

TEST_CASE("noise covariance conditioning saturates at high snr") {
    const ChannelRealization r = make_realization(2);
    SchemeSpec spec = SchemeSpec::sequential_saf(4, SchedulePolicy::Fixed);
    spec.fixed_sequence = std::vector<int>{0, 1, 0};
    Schedule sched;
    sched.sequence = {0, 1, 0};
    double prev_cond = 0.0;
    for (int db = 0; db <= 60; db += 5) {
        const double snr = std::pow(10.0, db / 10.0);
        const EquivalentChannel ch = build_sequential_saf(r, spec, snr, sched);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ch.noise_cov);
        const double cond =
            es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
        CHECK(es.eigenvalues().minCoeff() >= 1.0 - 1e-12);
        if (db > 40) CHECK(cond <= prev_cond * 1.01);
        prev_cond = cond;
    }
}

TEST_CASE("three-by-three determinant identity") {
    const int cases = 10000;
    std::uniform_real_distribution<double> rho_dist(0.1, 10.0);
    for (int c = 0; c < cases; ++c) {
        const cplx u11 = rand_cplx(), u21 = rand_cplx(), u22 = rand_cplx();
        const cplx f1 = rand_cplx(), f2 = rand_cplx(), g = rand_cplx();
        const double rho = rho_dist(test_rng);
        Eigen::MatrixXcd h(3, 3);
        h << u11, 0, 0, u21, u22, 0, f1, f2, g;
        const double lhs =
            (Eigen::MatrixXcd::Identity(3, 3) + rho * h * h.adjoint())
                .determinant()
                .real();
        Eigen::MatrixXcd u(2, 2);
        u << u11, 0, u21, u22;
        const double det_u =
            (Eigen::MatrixXcd::Identity(2, 2) + rho * u * u.adjoint())
                .determinant()
                .real();
        const double rhs = (1.0 + rho * std::norm(g)) * det_u +
                           rho * (std::norm(f1) + std::norm(f2)) +
                           rho * rho * std::norm(f2 * u11) +
                           rho * rho * std::norm(u22 * f1 - u21 * f2);
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("bidiagonal determinant lower bound") {
    const int cases = 10000;
    std::uniform_int_distribution<int> size_dist(2, 8);
    for (int c = 0; c < cases; ++c) {
        const int n = size_dist(test_rng);  // n = k + 1
        const int k = n - 1;
        const cplx x0 = rand_cplx();
        Eigen::MatrixXcd g = x0 * Eigen::MatrixXcd::Identity(n, n);
        double prod = 1.0;
        for (int i = 1; i <= k; ++i) {
            const cplx xi = rand_cplx();
            g(i, i - 1) = xi;
            prod *= 1.0 + std::norm(xi);
        }
        const double det =
            (Eigen::MatrixXcd::Identity(n, n) + g * g.adjoint())
                .determinant()
                .real();
        const double bound = std::pow(std::norm(x0), n) + prod;
        CHECK(det >= bound * (1.0 - 1e-9));
    }
}

TEST_CASE("tridiagonal determinant base case") {
    const cplx x0 = rand_cplx(), x1 = rand_cplx();
    Eigen::MatrixXcd g(2, 2);
    g << x0, 0, x1, x0;
    const double det = (Eigen::MatrixXcd::Identity(2, 2) + g * g.adjoint())
                           .determinant()
                           .real();
    const double X0 = std::norm(x0), X1 = std::norm(x1);
    CHECK(det == doctest::Approx(X0 * X0 + 2 * X0 + X1 + 1).epsilon(1e-12));
}
