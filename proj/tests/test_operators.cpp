#include <gtest/gtest.h>

#include "dqm/operators.hpp"

using namespace dqm;

namespace {

struct Case {
    const char* label;
    FamilyId id;
    ParamSet params;
};

std::vector<Case> cases() {
    using F = FamilyId;
    return {{"continuous_hahn", F::ContinuousHahn, {{cplx(0.6, 0.3), cplx(1.1, -0.2)}, {}, {}}},
            {"meixner_pollaczek", F::MeixnerPollaczek, {{0.7}, {}, 1.1}},
            {"wilson", F::Wilson, {{0.6, 1.2, cplx(0.8, 0.3), cplx(0.8, -0.3)}, {}, {}}},
            {"askey_wilson", F::AskeyWilson, {{0.3, 0.5, cplx(0.2, 0.4), cplx(0.2, -0.4)}, 0.5, {}}},
            {"q_hermite", F::ContinuousQHermite, {{}, 0.5, {}}},
            {"q_jacobi", F::ContinuousQJacobi, {{0.3, 0.7}, 0.5, {}}}};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

class Operators : public ::testing::TestWithParam<Case> {
protected:
    void SetUp() override { sys = make_system(GetParam().id, GetParam().params); }
    std::unique_ptr<System> sys;
};

}  // namespace

TEST_P(Operators, EigenpolynomialsOfTildeH) {
    const System& s = *sys;
    for (int n = 0; n <= 6; ++n)
        for (double x : s.sample_points(5)) {
            cplx w = s.point(x);
            EXPECT_LT(rel(apply_tilde_H(s, level_fn(s, n), w), s.energy(n) * s.P(n, w)), 1e-9) << n << " " << x;
        }
}

TEST_P(Operators, TildeHAnnihilatesConstants) {
    const System& s = *sys;
    for (double x : s.sample_points(5)) EXPECT_NEAR(std::abs(apply_tilde_H(s, EtaPolynomial::constant(1.0), x)), 0, 1e-12);
}

TEST_P(Operators, ForwardThenBackwardIsTildeH) {
    const System& s = *sys;
    auto P = level_fn(s, 4);
    auto BF = backward_shift(s, forward_shift(s, P));
    for (double x : s.sample_points(5)) {
        cplx w = s.point(x);
        EXPECT_LT(rel(BF(w), apply_tilde_H(s, P, w)), 1e-9);
    }
}

TEST_P(Operators, LadderMapsBetweenNeighbouringLevels) {
    const System& s = *sys;
    auto xs = s.sample_points(4);
    for (int n = 1; n <= 4; ++n) {
        auto up = ladder(s, LadderSign::Plus, n, level_fn(s, n));
        auto down = ladder(s, LadderSign::Minus, n, level_fn(s, n));
        cplx ru = up(s.point(xs[0])) / s.P(n + 1, s.point(xs[0]));
        cplx rd = down(s.point(xs[0])) / s.P(n - 1, s.point(xs[0]));
        for (double x : xs) {
            cplx w = s.point(x);
            EXPECT_LT(rel(up(w), ru * s.P(n + 1, w)), 1e-9);
            EXPECT_LT(rel(down(w), rd * s.P(n - 1, w)), 1e-9);
        }
    }
}

TEST_P(Operators, PolynomialAndPointFormsAgree) {
    const System& s = *sys;
    auto p = s.poly(3);
    for (double x : s.sample_points(3)) {
        cplx w = s.point(x);
        EXPECT_LT(rel(apply_tilde_H(s, p, x), apply_tilde_H(s, poly_fn(s, p), w)), 1e-13);
        EXPECT_LT(rel(apply_forward_shift(s, p, x), apply_forward_shift(s, level_fn(s, 3), w)), 1e-10);
    }
}

INSTANTIATE_TEST_SUITE_P(Families, Operators, ::testing::ValuesIn(cases()),
                         [](const auto& info) { return std::string(info.param.label); });

TEST(OperatorsEdge, LadderLoweringKillsGroundState) {
    auto s = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    EXPECT_EQ(apply_ladder(*s, LadderSign::Minus, 0, level_fn(*s, 0), s->point(1.0)), cplx(0.0));
}

TEST(OperatorsEdge, SingularPointsRaise) {
    auto w = make_system(FamilyId::Wilson, {{0.6, 0.9, 1.1, 1.4}, {}, {}});
    EXPECT_THROW(apply_tilde_H(*w, level_fn(*w, 1), cplx(0.0)), SingularityError);
    auto qh = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    EXPECT_THROW(apply_tilde_H(*qh, level_fn(*qh, 1), cplx(1.0)), SingularityError);
}

TEST(OperatorsEdge, LambdaShiftRestrictedFamilies) {
    auto mp = make_system(FamilyId::MeixnerPollaczek, {{0.7}, {}, 1.1});
    EXPECT_THROW(lambda_shift_X(*mp, level_fn(*mp, 1), mp->point(0.3)), UnsupportedFamily);
    auto half = make_system(FamilyId::MeixnerPollaczek, {{0.7}, {}, pi / 2});
    EXPECT_NO_THROW(lambda_shift_X(*half, level_fn(*half, 1), half->point(0.3)));
}
