#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "xsc/channels.hpp"
#include "xsc/xstate.hpp"

using namespace xsc;
using Catch::Approx;

namespace {

BellTriple evolved_triple(const CorrelationParams& c, ChannelKind kind, double pa,
                          double pb, double la, double lb) {
    const ComplexMat4 rho = matrix(from_correlation_params(c));
    const auto ka = kraus_set(kind, pa, la);
    const auto kb = kraus_set(kind, pb, lb);
    const ComplexMat4 evolved = apply_local_channels(rho, ka, kb);
    return effective_bell(to_correlation_params(x_from_matrix(evolved)));
}

} // namespace

TEST_CASE("Kraus sets", "[channels]") {
    SECTION("dephasing at p = 0 is the identity channel") {
        const auto ks = kraus_set(ChannelKind::pd, 0.0);
        REQUIRE(ks.size() == 2);
        REQUIRE(max_abs_entry(ks[0] - ComplexMat2::identity()) <= 1e-15);
        REQUIRE(max_abs_entry(ks[1]) <= 1e-15);
    }
    SECTION("completeness at p = 0.5") {
        REQUIRE(kraus_complete(kraus_set(ChannelKind::pd, 0.5)));
    }
    SECTION("full amplitude damping toward the ground state") {
        const auto ks = kraus_set(ChannelKind::gad, 1.0, 1.0);
        REQUIRE(ks.size() == 4);
        REQUIRE(kraus_complete(ks));
        // E0 = |0><0|, E1 = |0><1|; the lambda = 0 pair vanishes
        REQUIRE(ks[0](0, 0) == cplx(1.0));
        REQUIRE(std::abs(ks[0](1, 1)) <= 1e-15);
        REQUIRE(ks[1](0, 1) == cplx(1.0));
        REQUIRE(max_abs_entry(ks[2]) <= 1e-15);
        REQUIRE(max_abs_entry(ks[3]) <= 1e-15);
    }
    SECTION("completeness holds across the parameter box") {
        SplitMix64 rng(3);
        for (int n = 0; n < 50; ++n) {
            REQUIRE(kraus_complete(kraus_set(ChannelKind::pd, rng.uniform())));
            REQUIRE(kraus_complete(kraus_set(ChannelKind::gad, rng.uniform(), rng.uniform())));
        }
    }
    SECTION("parameters outside [0,1] are rejected") {
        REQUIRE_THROWS_AS(kraus_set(ChannelKind::pd, 1.2), ParameterOutOfRange);
        REQUIRE_THROWS_AS(kraus_set(ChannelKind::pd, -0.1), ParameterOutOfRange);
        REQUIRE_THROWS_AS(kraus_set(ChannelKind::gad, 0.5, 1.5), ParameterOutOfRange);
    }
}

TEST_CASE("operator-sum application", "[channels]") {
    const XDensityMatrix x = from_correlation_params({0.5, 0.2, 0.1, 0.1, 0.2});
    const ComplexMat4 rho = matrix(x);
    SECTION("identity channels leave the state unchanged") {
        const auto ka = kraus_set(ChannelKind::pd, 0.0);
        REQUIRE(max_abs_entry(apply_local_channels(rho, ka, ka) - rho) <= 1e-15);
    }
    SECTION("full dephasing removes the coherences") {
        const auto ka = kraus_set(ChannelKind::pd, 1.0);
        const ComplexMat4 out = apply_local_channels(rho, ka, ka);
        REQUIRE(std::abs(out(3, 0)) <= 1e-15);
        REQUIRE(std::abs(out(2, 1)) <= 1e-15);
        REQUIRE(out(0, 0).real() == Approx(x.rho11));
        REQUIRE(trace(out).real() == Approx(1.0).margin(1e-12));
    }
    SECTION("incomplete sets are rejected") {
        auto ka = kraus_set(ChannelKind::pd, 0.3);
        ka.pop_back();
        const auto kb = kraus_set(ChannelKind::pd, 0.3);
        REQUIRE_THROWS_AS(apply_local_channels(rho, ka, kb), IncompleteKrausSet);
    }
    SECTION("trace, Hermiticity and X structure are preserved") {
        SplitMix64 rng(17);
        for (int n = 0; n < 30; ++n) {
            const ComplexMat4 r = matrix(from_correlation_params(sample_valid_params(rng)));
            const auto ka = kraus_set(ChannelKind::gad, rng.uniform(), rng.uniform());
            const auto kb = kraus_set(ChannelKind::gad, rng.uniform(), rng.uniform());
            const ComplexMat4 out = apply_local_channels(r, ka, kb);
            REQUIRE(trace(out).real() == Approx(1.0).margin(1e-12));
            REQUIRE(hermiticity_defect(out) <= 1e-14);
            for (const auto& [i, j] : detail::kOffXEntries)
                REQUIRE(std::abs(out(i, j)) <= 1e-14);
        }
    }
}

TEST_CASE("Kraus evolution reproduces the closed-form decay table", "[channels]") {
    SplitMix64 rng(29);
    for (int n = 0; n < 100; ++n) {
        const CorrelationParams c = sample_valid_params(rng);
        const double ga = rng.uniform(0.2, 2.0);
        const double gb = rng.uniform(0.2, 2.0);
        const double tau = rng.uniform(0.0, 5.0);
        const double t = tau / (ga + gb);
        const double pa = 1.0 - std::exp(-ga * t);
        const double pb = 1.0 - std::exp(-gb * t);

        const ChannelSpec pd{ChannelKind::pd, ga, gb, 0, 0, DecayConvention::kraus};
        const BellTriple pd_want = markov_params(c, pd, tau);
        const BellTriple pd_got = evolved_triple(c, ChannelKind::pd, pa, pb, 1, 1);
        REQUIRE(pd_got.c1 == Approx(pd_want.c1).margin(1e-12));
        REQUIRE(pd_got.c2 == Approx(pd_want.c2).margin(1e-12));
        REQUIRE(pd_got.c3 == Approx(pd_want.c3).margin(1e-12));

        const ChannelSpec gad{ChannelKind::gad, ga, gb, 0, 0, DecayConvention::kraus};
        const BellTriple gad_want = markov_params(c, gad, tau);
        for (const double lam : {0.0, 0.3, 1.0}) {
            const BellTriple got = evolved_triple(c, ChannelKind::gad, pa, pb, lam, lam);
            REQUIRE(got.c1 == Approx(gad_want.c1).margin(1e-12));
            REQUIRE(got.c2 == Approx(gad_want.c2).margin(1e-12));
            REQUIRE(got.c3 == Approx(gad_want.c3).margin(1e-12));
        }
    }
}

TEST_CASE("GAD effective triple is independent of the bias", "[channels]") {
    SplitMix64 rng(31);
    for (int n = 0; n < 30; ++n) {
        const CorrelationParams c = sample_valid_params(rng);
        const double pa = rng.uniform();
        const double pb = rng.uniform();
        const BellTriple ref = evolved_triple(c, ChannelKind::gad, pa, pb, 0.0, 0.0);
        const BellTriple alt = evolved_triple(c, ChannelKind::gad, pa, pb, 0.3, 0.8);
        REQUIRE(alt.c1 == Approx(ref.c1).margin(1e-12));
        REQUIRE(alt.c2 == Approx(ref.c2).margin(1e-12));
        REQUIRE(alt.c3 == Approx(ref.c3).margin(1e-12));
    }
}

TEST_CASE("closed-form trajectory parameters", "[channels]") {
    const CorrelationParams demo{0.5, 0.2, 0.1, 0.1, 0.2};
    SECTION("tau = 0 returns the initial effective triple") {
        const ChannelSpec spec{ChannelKind::gad, 0.5, 0.5, 0, 0, DecayConvention::kraus};
        const BellTriple t = markov_params(demo, spec, 0.0);
        REQUIRE(t.c1 == Approx(0.5));
        REQUIRE(t.c2 == Approx(0.2));
        REQUIRE(t.c3 == Approx(0.08).margin(1e-15));
    }
    SECTION("dephasing at tau = 1") {
        const ChannelSpec spec{ChannelKind::pd, 0.5, 0.5, 0, 0, DecayConvention::kraus};
        const BellTriple t = markov_params(demo, spec, 1.0);
        REQUIRE(t.c1 == Approx(0.5 * std::exp(-1.0)).margin(1e-15));
        REQUIRE(t.c2 == Approx(0.2 * std::exp(-1.0)).margin(1e-15));
        REQUIRE(t.c1 == Approx(0.18394).margin(1e-5));
        REQUIRE(t.c2 == Approx(0.073576).margin(1e-6));
        REQUIRE(t.c3 == Approx(0.08).margin(1e-15));
    }
    SECTION("amplitude-damping crossing point") {
        const CorrelationParams c{0.28, 0.22, 0.40, 0.10, 0.60};
        const ChannelSpec spec{ChannelKind::gad, 0.5, 0.5, 0, 0, DecayConvention::kraus};
        const double tau_cross = 2.0 * std::log(17.0 / 14.0);
        const BellTriple t = markov_params(c, spec, tau_cross);
        REQUIRE(t.c1 == Approx(0.28 * 14.0 / 17.0).margin(1e-12));
        REQUIRE(t.c1 == Approx(t.c3).margin(1e-12));
        REQUIRE(t.c1 == Approx(0.23059).margin(1e-5));
    }
    SECTION("the halftime convention doubles every exponent") {
        const ChannelSpec kraus{ChannelKind::gad, 0.5, 0.5, 0, 0, DecayConvention::kraus};
        const ChannelSpec half{ChannelKind::gad, 0.5, 0.5, 0, 0, DecayConvention::halftime};
        const BellTriple a = markov_params(demo, half, 0.7);
        const BellTriple b = markov_params(demo, kraus, 1.4);
        REQUIRE(a.c1 == Approx(b.c1).margin(1e-15));
        REQUIRE(a.c3 == Approx(b.c3).margin(1e-15));
    }
}

TEST_CASE("trajectory sampling", "[channels]") {
    const CorrelationParams demo{0.5, 0.2, 0.1, 0.1, 0.2};
    const ChannelSpec pd{ChannelKind::pd, 0.5, 0.5, 0, 0, DecayConvention::kraus};
    const auto traj = markov_trajectory(demo, pd, 4.0, 200);
    REQUIRE(traj.size() == 201);
    REQUIRE(traj.front().tau == 0.0);
    REQUIRE(traj.back().tau == Approx(4.0));

    SECTION("records are internally consistent") {
        for (const auto& rec : traj) {
            REQUIRE(rec.cg == Approx(rec.coeffs.max_abs()).margin(1e-12));
            REQUIRE(rec.tg.has_value());
            REQUIRE(rec.qg.has_value());
        }
    }
    SECTION("constant branch after the crossing") {
        for (const auto& rec : traj)
            if (rec.tau >= std::log(6.25) + 1e-9) REQUIRE(rec.cg == Approx(0.08).margin(1e-12));
    }
    SECTION("decay ratio of the two damped branches is constant") {
        for (const auto& rec : traj)
            REQUIRE(rec.coeffs.c1 / rec.coeffs.c2 == Approx(2.5).margin(1e-12));
    }
    SECTION("pure exponential when the constant branch vanishes") {
        const auto pure = markov_trajectory({0.4, 0.1, 0.0, 0.0, 0.0}, pd, 3.0, 60);
        for (const auto& rec : pure)
            REQUIRE(rec.cg == Approx(0.4 * std::exp(-rec.tau)).margin(1e-12));
    }
    SECTION("GAD trajectories are independent of the bias parameters") {
        ChannelSpec g1{ChannelKind::gad, 0.5, 0.5, 0.0, 0.0, DecayConvention::kraus};
        ChannelSpec g2 = g1;
        g2.lambda_a = 0.9;
        g2.lambda_b = 0.1;
        const auto t1 = markov_trajectory(demo, g1, 3.0, 50);
        const auto t2 = markov_trajectory(demo, g2, 3.0, 50);
        for (std::size_t k = 0; k < t1.size(); ++k) {
            REQUIRE(t1[k].coeffs.c1 == t2[k].coeffs.c1);
            REQUIRE(t1[k].coeffs.c3 == t2[k].coeffs.c3);
        }
    }
}
