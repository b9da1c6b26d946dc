#include <gtest/gtest.h>

#include <random>

#include "dqm/dqm.hpp"

using namespace dqm;

TEST(Properties, ContinuousHahnParity) {
    auto s = make_system(FamilyId::ContinuousHahn, {{0.75, 0.75}, {}, {}});
    for (int n = 0; n <= 8; ++n)
        for (double x : {0.3, 1.1, 2.4}) {
            double sign = n % 2 ? -1.0 : 1.0;
            EXPECT_NEAR(s->P(n, s->point(-x)).real(), sign * s->P(n, s->point(x)).real(),
                        1e-12 * std::max(1.0, std::abs(s->P(n, s->point(x)))));
        }
}

TEST(Properties, MeixnerPollaczekReflection) {
    double phi = 1.1;
    auto s = make_system(FamilyId::MeixnerPollaczek, {{0.7}, {}, phi});
    auto r = make_system(FamilyId::MeixnerPollaczek, {{0.7}, {}, pi - phi});
    for (int n = 0; n <= 8; ++n)
        for (double x : {0.2, 0.9, 2.1}) {
            double sign = n % 2 ? -1.0 : 1.0;
            cplx a = s->P(n, s->point(-x)), b = sign * r->P(n, r->point(x));
            EXPECT_LT(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(a)));
        }
}

TEST(Properties, QHermiteParityUnderXToPiMinusX) {
    auto s = make_system(FamilyId::ContinuousQHermite, {{}, 0.3, {}});
    for (int n = 0; n <= 8; ++n) {
        double sign = n % 2 ? -1.0 : 1.0;
        EXPECT_NEAR(s->P(n, s->point(pi - 0.7)).real(), sign * s->P(n, s->point(0.7)).real(), 1e-12);
    }
}

TEST(Properties, RecurrenceCoefficientsPositive) {
    auto fs = FixtureStore::load_default();
    for (auto id : kAllFamilies)
        for (const auto& name : fs.names(id)) {
            auto s = make_system(id, fs.get(id, name));
            for (int n = 1; n <= 12; ++n) {
                EXPECT_GT(s->b_rec(n).real(), 0.0) << to_string(id) << "/" << name << " n=" << n;
                EXPECT_NEAR(s->b_rec(n).imag(), 0.0, 1e-12);
                EXPECT_GT(s->h0_over_hn(n), 0.0);
            }
        }
}

TEST(Properties, SeriesAndRecurrenceAgreeOnRandomPoints) {
    auto fs = FixtureStore::load_default();
    std::mt19937_64 rng(2024);
    for (auto id : kAllFamilies) {
        auto s = make_system(id, fs.get(id));
        std::uniform_real_distribution<double> u(0.05, 3.0);
        for (int trial = 0; trial < 5; ++trial) {
            double x = u(rng);
            int n = int(rng() % 9);
            cplx w = s->point(x), a = s->P(n, w), b = s->p_series(n, w);
            double scale = std::max(1.0, std::abs(a));
            EXPECT_LT(std::abs(a - b), 1e-9 * scale) << to_string(id) << " n=" << n << " x=" << x;
        }
    }
}

TEST(Properties, ShiftedParametersComposeAdditively) {
    auto fs = FixtureStore::load_default();
    for (auto id : kAllFamilies) {
        auto s = make_system(id, fs.get(id));
        auto two = s->shifted(2), one_one = s->shifted(1)->shifted(1);
        for (int n = 0; n < 4; ++n) EXPECT_NEAR(two->energy(n), one_one->energy(n), 1e-12 * (1 + two->energy(n)));
    }
}

TEST(Properties, VerifierIsDeterministic) {
    auto fs = FixtureStore::load_default();
    VerifyConfig cfg;
    cfg.seed = 11;
    auto a = run_suite("all", FamilyId::AlSalamChihara, fs.get(FamilyId::AlSalamChihara), cfg);
    auto b = run_suite("all", FamilyId::AlSalamChihara, fs.get(FamilyId::AlSalamChihara), cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        EXPECT_EQ(a[k].check_id, b[k].check_id);
        EXPECT_EQ(a[k].max_residual, b[k].max_residual);
        EXPECT_EQ(to_json(a[k]).dump(), to_json(b[k]).dump());
    }
}

TEST(Properties, SeedChangesSamplesButNotVerdicts) {
    auto fs = FixtureStore::load_default();
    for (std::uint64_t seed : {1u, 99u, 12345u}) {
        VerifyConfig cfg;
        cfg.seed = seed;
        for (const auto& r : run_suite("eigen", FamilyId::Wilson, fs.get(FamilyId::Wilson), cfg))
            EXPECT_TRUE(r.passed) << r.check_id << " seed " << seed;
    }
}

TEST(Properties, EnergyFactorisesThroughShifts) {
    auto fs = FixtureStore::load_default();
    for (auto id : kAllFamilies) {
        auto s = make_system(id, fs.get(id));
        for (int n = 1; n <= 10; ++n)
            EXPECT_NEAR(s->f(n) * s->b_shift(n - 1), s->energy(n), 1e-10 * s->energy(n)) << to_string(id);
    }
}
