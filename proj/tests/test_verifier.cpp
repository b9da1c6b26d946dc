#include <gtest/gtest.h>

#include "dqm/dqm.hpp"

using namespace dqm;

namespace {

const FixtureStore& store() {
    static FixtureStore fs = FixtureStore::load_default();
    return fs;
}

class DefaultFixture : public ::testing::TestWithParam<FamilyId> {};

}  // namespace

TEST_P(DefaultFixture, EverySuitePasses) {
    auto rs = run_suite("all", GetParam(), store().get(GetParam()));
    ASSERT_FALSE(rs.empty());
    for (const auto& r : rs) {
        if (r.check_id.rfind("limit.", 0) == 0) continue;
        EXPECT_TRUE(r.passed) << r.check_id << " " << r.max_residual << " > " << r.tolerance << " " << r.note;
        EXPECT_EQ(r.family, GetParam());
    }
}

INSTANTIATE_TEST_SUITE_P(Families, DefaultFixture, ::testing::ValuesIn(kAllFamilies),
                         [](const auto& info) {
                             std::string s(to_string(info.param));
                             for (auto& c : s)
                                 if (c == '-') c = '_';
                             return s;
                         });

TEST(Verifier, UnknownSuiteIsRejected) {
    EXPECT_THROW(run_suite("bogus", FamilyId::ContinuousQHermite, store().get(FamilyId::ContinuousQHermite)),
                 ValidationError);
}

TEST(Verifier, InvalidConfigIsRejected) {
    VerifyConfig cfg;
    cfg.n_max = 0;
    EXPECT_THROW(run_suite("eigen", FamilyId::ContinuousQHermite, store().get(FamilyId::ContinuousQHermite), cfg),
                 DomainError);
    cfg.n_max = 5;
    cfg.tol = -1.0;
    EXPECT_THROW(run_suite("eigen", FamilyId::ContinuousQHermite, store().get(FamilyId::ContinuousQHermite), cfg),
                 DomainError);
}

TEST(Verifier, ToleranceOverrideApplies) {
    VerifyConfig cfg;
    cfg.tol = 1e-30;
    auto rs = run_suite("eigen", FamilyId::MeixnerPollaczek, store().get(FamilyId::MeixnerPollaczek), cfg);
    for (const auto& r : rs) {
        EXPECT_EQ(r.tolerance, 1e-30);
        EXPECT_FALSE(r.passed && r.max_residual > 1e-30);
    }
}

TEST(Verifier, LambdaShiftOnlyWhereDefined) {
    auto rs = run_suite("lambda_shift", FamilyId::MeixnerPollaczek, store().get(FamilyId::MeixnerPollaczek, "half-pi"));
    ASSERT_EQ(rs.size(), 2u);
    for (const auto& r : rs) EXPECT_TRUE(r.passed) << r.check_id;
}

TEST(Verifier, CoherentStateClosedFormQHermite) {
    auto s = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    auto ev = check_coherent(*s, cplx(0.2, 0.1), 0.8);
    ASSERT_TRUE(ev.closed_form.has_value());
    EXPECT_LT(std::abs(ev.partial_sum - *ev.closed_form), 1e-12 * std::abs(*ev.closed_form));
    EXPECT_LT(ev.annihilation_residual, 1e-9);
    EXPECT_GE(ev.truncation_N, 10);
}

TEST(Verifier, NumberOperatorInvertsSpectrum) {
    for (auto id : kAllFamilies) {
        auto r = check_number_operator(*make_system(id, store().get(id)), 10);
        EXPECT_TRUE(r.passed) << to_string(id) << " " << r.max_residual;
    }
}

TEST(Verifier, ShapeInvarianceHelper) {
    auto s = make_system(FamilyId::AskeyWilson, store().get(FamilyId::AskeyWilson));
    auto r = check_shape_invariance(*s, s->sample_points(10));
    EXPECT_TRUE(r.passed) << r.max_residual;
}

// the AW -> Wilson deviations shrink like 1/L, so the final 1e-2 level is out of reach at L = 80 for f_n and b_n
TEST(Verifier, LimitSequencesShrinkMonotonically) {
    auto rs = check_limit_aw_wilson(store().get(FamilyId::Wilson), {20, 40, 80});
    int monotone = 0;
    for (const auto& r : rs) {
        if (r.check_id.find(".monotone") == std::string::npos) continue;
        ++monotone;
        EXPECT_TRUE(r.passed) << r.check_id;
    }
    EXPECT_GT(monotone, 0);
    for (const auto& r : rs) {
        if (r.check_id == "limit.energy.final" || r.check_id == "limit.potential.final") {
            EXPECT_TRUE(r.passed);
        }
        if (r.sequence.size() == 3) {
            EXPECT_GT(r.sequence[0], r.sequence[1]);
            EXPECT_GT(r.sequence[1], r.sequence[2]);
        }
    }
}

TEST(Verifier, LimitArgumentChecks) {
    EXPECT_THROW(check_limit_aw_wilson(store().get(FamilyId::Wilson), {20, 40}), DomainError);
    EXPECT_THROW(check_limit_aw_wilson(store().get(FamilyId::Wilson), {40, 20, 80}), DomainError);
}

TEST(Verifier, JsonReportShape) {
    CheckResult r;
    r.check_id = "x.y";
    r.family = FamilyId::ContinuousQJacobi;
    r.params = store().get(FamilyId::ContinuousQJacobi);
    r.max_residual = std::numeric_limits<double>::infinity();
    r.tolerance = 1e-9;
    auto j = to_json(r);
    EXPECT_TRUE(j["max_residual"].is_null());
    EXPECT_EQ(j["family"], "continuous-q-jacobi");
    EXPECT_DOUBLE_EQ(j["params"]["alpha"].get<double>(), 0.3);
    EXPECT_EQ(j["level_range"].size(), 2u);
    EXPECT_FALSE(j.contains("sequence"));
}
