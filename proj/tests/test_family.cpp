#include <gtest/gtest.h>

#include "dqm/family.hpp"

using namespace dqm;

namespace {

struct Golden {
    const char* label;
    FamilyId id;
    ParamSet params;
    int n;
    double x;
    double value;
};

std::vector<Golden> goldens() {
    using F = FamilyId;
    return {
        {"q-hermite", F::ContinuousQHermite, {{}, 0.5, {}}, 4, 0.7, 0.94043210453858766187},
        {"wilson", F::Wilson, {{0.6, 0.9, 1.1, 1.4}, {}, {}}, 2, 0.9, -15.363},
        {"askey-wilson", F::AskeyWilson, {{0.3, 0.4, 0.5, 0.6}, 0.7, {}}, 3, 1.1, 0.12490486105043016313},
        {"meixner-pollaczek", F::MeixnerPollaczek, {{0.7}, {}, 1.1}, 3, 0.4, -0.21401473010138644137},
        {"continuous-hahn", F::ContinuousHahn, {{cplx(0.6, 0.3), cplx(1.1, -0.2)}, {}, {}}, 2, 0.3, -0.0792},
        {"dual-hahn", F::ContinuousDualHahn, {{0.6, cplx(0.9, 0.4), cplx(0.9, -0.4)}, {}, {}}, 3, 0.8, 48.522621},
        {"big-q-hermite", F::ContinuousBigQHermite, {{0.4}, 0.5, {}}, 3, 0.9, -0.19837567140068885779},
        {"al-salam-chihara", F::AlSalamChihara, {{0.3, 0.6}, 0.5, {}}, 3, 0.9, -0.37450852677464631454},
        {"dual-q-hahn", F::ContinuousDualQHahn, {{0.3, cplx(0.2, 0.4), cplx(0.2, -0.4)}, 0.5, {}}, 3, 0.9,
         -0.2055779746873608744},
        {"q-laguerre", F::ContinuousQLaguerre, {{0.5}, 0.5, {}}, 2, 0.9, -0.40016390313904615921},
        {"q-jacobi", F::ContinuousQJacobi, {{0.5, 1.5}, 0.5, {}}, 2, 0.9, 0.044165860796854057987},
    };
}

class PolynomialGolden : public ::testing::TestWithParam<Golden> {};

}  // namespace

TEST_P(PolynomialGolden, RecurrenceMatchesReference) {
    const auto& g = GetParam();
    auto s = make_system(g.id, g.params);
    cplx v = s->P(g.n, s->point(g.x));
    EXPECT_NEAR(v.real(), g.value, 1e-12 * std::max(1.0, std::abs(g.value)));
    EXPECT_NEAR(v.imag(), 0.0, 1e-12 * std::max(1.0, std::abs(g.value)));
}

TEST_P(PolynomialGolden, SeriesMatchesReference) {
    const auto& g = GetParam();
    auto s = make_system(g.id, g.params);
    cplx v = eval_poly_hypergeometric(*s, g.n, s->point(g.x));
    EXPECT_NEAR(v.real(), g.value, 1e-12 * std::max(1.0, std::abs(g.value)));
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, PolynomialGolden, ::testing::ValuesIn(goldens()),
                         [](const auto& info) {
                             std::string s = info.param.label;
                             for (auto& c : s)
                                 if (c == '-') c = '_';
                             return s;
                         });

TEST(Family, LowDegreeClosedForms) {
    auto qh = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    EXPECT_NEAR(qh->P(1, qh->point(1.0)).real(), 2 * std::cos(1.0), 1e-15);
    auto mp = make_system(FamilyId::MeixnerPollaczek, {{1.0}, {}, pi / 2});
    EXPECT_NEAR(mp->P(1, mp->point(2.0)).real(), 4.0, 1e-14);
}

TEST(Family, NormalizationConstants) {
    auto qh = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    EXPECT_NEAR(qh->h0(), 21.757078681845838497, 1e-12);
    EXPECT_NEAR(qh->ground_state(pi / 2), 4.7684620580627434482, 1e-12);
    auto mp = make_system(FamilyId::MeixnerPollaczek, {{0.7}, {}, 1.1});
    EXPECT_NEAR(mp->h0(), 2.4821062924756435377, 1e-12);
}

TEST(Family, GroundEnergyVanishesAndSpectrumIncreases) {
    ParamSet ps[] = {{{cplx(0.6, 0.3), cplx(1.1, -0.2)}, {}, {}},
                     {{0.7}, {}, 1.1},
                     {{0.6, 1.2, cplx(0.8, 0.3), cplx(0.8, -0.3)}, {}, {}},
                     {{0.6, cplx(0.9, 0.4), cplx(0.9, -0.4)}, {}, {}},
                     {{0.3, 0.5, cplx(0.2, 0.4), cplx(0.2, -0.4)}, 0.5, {}},
                     {{0.3, cplx(0.2, 0.4), cplx(0.2, -0.4)}, 0.5, {}},
                     {{cplx(0.3, 0.4), cplx(0.3, -0.4)}, 0.5, {}},
                     {{0.4}, 0.5, {}},
                     {{}, 0.5, {}},
                     {{0.3, 0.7}, 0.5, {}},
                     {{0.3}, 0.5, {}}};
    for (std::size_t k = 0; k < kAllFamilies.size(); ++k) {
        auto s = make_system(kAllFamilies[k], ps[k]);
        EXPECT_EQ(s->energy(0), 0.0) << to_string(kAllFamilies[k]);
        for (int n = 0; n < 8; ++n) EXPECT_LT(s->energy(n), s->energy(n + 1)) << to_string(kAllFamilies[k]);
    }
}

TEST(Family, SlugRoundTrip) {
    for (auto id : kAllFamilies) {
        auto back = family_from_string(to_string(id));
        ASSERT_TRUE(back.has_value());
        EXPECT_EQ(*back, id);
    }
    EXPECT_FALSE(family_from_string("hermite").has_value());
}

TEST(Family, ValidationMessages) {
    auto msg = [](FamilyId id, ParamSet p) {
        try {
            validate_params(id, p);
        } catch (const ValidationError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_NE(msg(FamilyId::AskeyWilson, {{1.2, 0.5, 0.3, 0.2}, 0.5, {}}).find("|a1| >= 1"), std::string::npos);
    EXPECT_NE(msg(FamilyId::Wilson, {{0.6, 1.2, cplx(0.8, 0.3), 0.8}, {}, {}}).find("conjugation"),
              std::string::npos);
    EXPECT_NE(msg(FamilyId::MeixnerPollaczek, {{0.7}, {}, 3.5}).find("phi"), std::string::npos);
    EXPECT_NE(msg(FamilyId::ContinuousQHermite, {{}, 1.0, {}}).find("q"), std::string::npos);
    EXPECT_NE(msg(FamilyId::ContinuousHahn, {{0.6}, {}, {}}).find("expected 2"), std::string::npos);
    EXPECT_EQ(msg(FamilyId::ContinuousQHermite, {{}, 0.5, {}}), "");
}

TEST(Family, SamplePointsStayInsideInterval) {
    for (auto id : {FamilyId::MeixnerPollaczek, FamilyId::Wilson, FamilyId::ContinuousQHermite}) {
        ParamSet p = id == FamilyId::MeixnerPollaczek ? ParamSet{{0.7}, {}, 1.1}
                     : id == FamilyId::Wilson         ? ParamSet{{0.6, 0.9, 1.1, 1.4}, {}, {}}
                                                      : ParamSet{{}, 0.5, {}};
        auto s = make_system(id, p);
        auto xs = s->sample_points(50, 7);
        ASSERT_EQ(xs.size(), 50u);
        for (double x : xs) {
            switch (s->spec().interval) {
                case Interval::WholeLine: EXPECT_TRUE(x > -3.0 && x < 3.0); break;
                case Interval::HalfLine: EXPECT_TRUE(x > 0.0); break;
                case Interval::ZeroPi: EXPECT_TRUE(x > 0.0 && x < pi); break;
            }
        }
        EXPECT_EQ(xs, s->sample_points(50, 7));
        EXPECT_NE(xs, s->sample_points(50, 8));
    }
}

TEST(Family, PotentialSingularities) {
    auto w = make_system(FamilyId::Wilson, {{0.6, 0.9, 1.1, 1.4}, {}, {}});
    EXPECT_THROW(potential(*w, 0.0), SingularityError);
    auto qh = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    EXPECT_THROW(potential(*qh, 0.0), SingularityError);
    EXPECT_NO_THROW(potential(*qh, 1.0));
}

TEST(Family, HighDegreeWarns) {
    auto s = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    Diagnostics d;
    s->poly(31, &d);
    EXPECT_FALSE(d.empty());
}
