#include <gtest/gtest.h>

#include "dqm/quadrature.hpp"

using namespace dqm;

TEST(Quadrature, GaussianMomentOnWholeLine) {
    QuadratureSpec spec = default_quadrature(Interval::WholeLine);
    auto r = integrate([](double x, std::vector<cplx>& out) { out[0] = std::exp(-x * x); out[1] = x * x * std::exp(-x * x); },
                       [](double x) { return std::exp(-x * x); }, 2, spec);
    EXPECT_NEAR(r.values[0].real(), std::sqrt(pi), 1e-12);
    EXPECT_NEAR(r.values[1].real(), std::sqrt(pi) / 2, 1e-12);
}

TEST(Quadrature, TrigonometricOnZeroPi) {
    QuadratureSpec spec = default_quadrature(Interval::ZeroPi);
    auto r = integrate([](double x, std::vector<cplx>& out) { out[0] = std::sin(x) * std::sin(x); },
                       [](double) { return 1.0; }, 1, spec);
    EXPECT_NEAR(r.values[0].real(), pi / 2, 1e-12);
}

TEST(Quadrature, HalfLineExponential) {
    QuadratureSpec spec = default_quadrature(Interval::HalfLine);
    auto r = integrate([](double x, std::vector<cplx>& out) { out[0] = x * x * std::exp(-x); },
                       [](double x) { return std::exp(-x); }, 1, spec);
    EXPECT_NEAR(r.values[0].real(), 2.0, 1e-11);
}

TEST(Orthogonality, QHermiteGramMatrix) {
    auto s = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    auto om = orthogonality_matrix(*s, 4);
    EXPECT_NEAR(om.entries[0][0], 21.757078681845838497, 1e-9);
    EXPECT_LT(om.max_diag_rel, 1e-8);
    EXPECT_LT(om.max_offdiag_rel, 1e-8);
}

TEST(Orthogonality, MeixnerPollaczekGramMatrix) {
    auto s = make_system(FamilyId::MeixnerPollaczek, {{0.7}, {}, 1.1});
    auto om = orthogonality_matrix(*s, 4);
    EXPECT_NEAR(om.entries[0][0], 2.4821062924756435377, 1e-8);
    EXPECT_LT(om.max_offdiag_rel, 1e-8);
}

TEST(Orthogonality, DegreeLimit) {
    auto s = make_system(FamilyId::ContinuousQHermite, {{}, 0.5, {}});
    EXPECT_THROW(orthogonality_matrix(*s, 9), DomainError);
}

TEST(Hermiticity, WilsonPair) {
    auto s = make_system(FamilyId::Wilson, {{0.6, 0.9, 1.1, 1.4}, {}, {}});
    auto P = EtaPolynomial({0.5, 1.0, 1.0});
    auto Q = EtaPolynomial({cplx(0, 1), -2.0, 0.0, 1.0});
    auto h = hermiticity_check(*s, P, Q);
    EXPECT_GT(std::abs(h.g_Hf), 1e-3);
    EXPECT_LT(h.residual, 1e-6);
}

TEST(Hermiticity, InnerProductIsConjugateSymmetric) {
    auto s = make_system(FamilyId::ContinuousHahn, {{cplx(0.6, 0.3), cplx(1.1, -0.2)}, {}, {}});
    RealFn F = [](double x) { return cplx(1.0 + x, 0.3 * x * x); };
    RealFn G = [](double x) { return cplx(x, -1.0); };
    cplx fg = inner_product(*s, F, G), gf = inner_product(*s, G, F);
    EXPECT_NEAR(std::abs(fg - std::conj(gf)), 0.0, 1e-12 * std::abs(fg));
    EXPECT_NEAR(fg.real(), 0.00179126572547956956, 1e-12);
    EXPECT_NEAR(fg.imag(), -1.24771324928011663540, 1e-11);
}
