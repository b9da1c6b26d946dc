#pragma once

#include <functional>

#include "family.hpp"

namespace dqm {

// a function of the natural variable (x, or z = e^{ix} for the cos x families)
using PointFn = std::function<cplx(cplx)>;

inline PointFn poly_fn(const System& s, EtaPolynomial p) {
    return [&s, p = std::move(p)](cplx w) { return p(s.eta(w)); };
}

inline PointFn level_fn(const System& s, int n) {
    return [&s, n](cplx w) { return s.P(n, w); };
}

struct ShiftedEvaluation {
    double x = 0;
    cplx plus_shift, minus_shift, center;
};

inline ShiftedEvaluation shifted_evaluation(const System& s, const PointFn& f, double x) {
    cplx w = s.point(x);
    return {x, f(s.shift(w, 1)), f(s.shift(w, -1)), f(w)};
}

namespace detail {

inline constexpr double kSingularDistance = 1e-8;

inline void check_regular(const System& s, cplx w) {
    bool bad = false;
    switch (s.kind()) {
        case EtaKind::X: break;
        case EtaKind::XSquared:
            bad = std::abs(w) < kSingularDistance || std::abs(w - 0.5 * I) < kSingularDistance ||
                  std::abs(w + 0.5 * I) < kSingularDistance;
            break;
        case EtaKind::CosX:
            bad = std::abs(w * w - 1.0) < kSingularDistance || std::abs(s.q() * w * w - 1.0) < kSingularDistance ||
                  std::abs(w * w - s.q()) < kSingularDistance;
            break;
    }
    if (bad) throw SingularityError("point too close to a pole of V");
}

inline void check_varphi(const System& s, cplx w) {
    if (std::abs(s.varphi(w)) < kSingularDistance) throw SingularityError("varphi vanishes at this point");
}

}  // namespace detail

// V(x)(f(x-i gamma) - f(x)) + V(x)^*(f(x+i gamma) - f(x))
inline cplx apply_tilde_H(const System& s, const PointFn& f, cplx w) {
    detail::check_regular(s, w);
    cplx c = f(w);
    return s.V(w) * (f(s.shift(w, 1)) - c) + s.V_star(w) * (f(s.shift(w, -1)) - c);
}

inline cplx apply_tilde_H(const System& s, const EtaPolynomial& p, double x) {
    return apply_tilde_H(s, poly_fn(s, p), s.point(x));
}

inline PointFn tilde_H(const System& s, PointFn f) {
    return [&s, f = std::move(f)](cplx w) { return apply_tilde_H(s, f, w); };
}

inline cplx apply_forward_shift(const System& s, const PointFn& f, cplx w) {
    detail::check_varphi(s, w);
    return I / s.varphi(w) * (f(s.shift(w, 0.5)) - f(s.shift(w, -0.5)));
}

inline cplx apply_forward_shift(const System& s, const EtaPolynomial& p, double x) {
    return apply_forward_shift(s, poly_fn(s, p), s.point(x));
}

// operand lives at the shifted parameters, V at the unshifted ones
inline cplx apply_backward_shift(const System& s, const PointFn& f, cplx w) {
    detail::check_varphi(s, w);
    detail::check_regular(s, w);
    cplx w1 = s.shift(w, 0.5), w2 = s.shift(w, -0.5);
    return -I * (s.V(w) * s.varphi(w1) * f(w1) - s.V_star(w) * s.varphi(w2) * f(w2));
}

inline cplx apply_backward_shift(const System& s, const EtaPolynomial& p, double x) {
    return apply_backward_shift(s, poly_fn(s, p), s.point(x));
}

inline PointFn forward_shift(const System& s, PointFn f) {
    return [&s, f = std::move(f)](cplx w) { return apply_forward_shift(s, f, w); };
}
inline PointFn backward_shift(const System& s, PointFn f) {
    return [&s, f = std::move(f)](cplx w) { return apply_backward_shift(s, f, w); };
}

inline PointFn times_eta(const System& s, PointFn f) {
    return [&s, f = std::move(f)](cplx w) { return s.eta(w) * f(w); };
}

// H(eta f) - eta H f
inline cplx commutator_H_eta(const System& s, const PointFn& f, cplx w) {
    return apply_tilde_H(s, times_eta(s, f), w) - s.eta(w) * apply_tilde_H(s, f, w);
}

inline cplx commutator_H_eta(const System& s, const EtaPolynomial& p, double x) {
    cplx w = s.point(x);
    return apply_tilde_H(s, poly_fn(s, p.times_eta()), w) - s.eta(w) * apply_tilde_H(s, poly_fn(s, p), w);
}

struct LadderContext {
    int n = 0;
    double E_n = 0, E_n_plus = 0, E_n_minus = 0;
    double alpha_plus = 0, alpha_minus = 0;
    double Rm1_at_En = 0;
};

inline LadderContext make_ladder_context(const System& s, int n) {
    LadderContext c;
    c.n = n;
    c.E_n = s.energy(n);
    c.E_n_plus = s.energy(n + 1);
    c.E_n_minus = s.energy(n - 1);
    c.alpha_plus = c.E_n_plus - c.E_n;
    c.alpha_minus = c.E_n_minus - c.E_n;
    c.Rm1_at_En = s.closure().rm1(c.E_n);
    return c;
}

enum class LadderSign { Plus, Minus };

// level-n action of a^(+) or a^(-) on the polynomial part; f must be the level-n eigenpolynomial
inline cplx apply_ladder(const System& s, LadderSign sign, int n, const PointFn& f, cplx w) {
    if (sign == LadderSign::Minus && n == 0) return 0.0;
    auto c = make_ladder_context(s, n);
    double spread = c.E_n_plus - c.E_n_minus;
    if (spread == 0.0) throw DegeneracyError("E_{n+1} = E_{n-1}");
    cplx fw = f(w), eta = s.eta(w);
    cplx comm = apply_tilde_H(s, times_eta(s, f), w) - c.E_n * eta * fw;
    if (sign == LadderSign::Plus)
        return (comm - c.alpha_minus * eta * fw + c.Rm1_at_En / c.alpha_plus * fw) / spread;
    return -(comm - c.alpha_plus * eta * fw + c.Rm1_at_En / c.alpha_minus * fw) / spread;
}

inline PointFn ladder(const System& s, LadderSign sign, int n, PointFn f) {
    return [&s, sign, n, f = std::move(f)](cplx w) { return apply_ladder(s, sign, n, f, w); };
}

namespace detail {

inline bool has_lambda_shift(const System& s) {
    if (s.id() == FamilyId::ContinuousDualHahn) return true;
    return s.id() == FamilyId::MeixnerPollaczek && std::abs(*s.params().phi - pi / 2) < 1e-12;
}

}  // namespace detail

// phi0(lambda+delta)^{-1} X phi0(lambda) on polynomials at lambda
inline cplx lambda_shift_X(const System& s, const PointFn& f, cplx w) {
    if (!detail::has_lambda_shift(s))
        throw UnsupportedFamily("explicit lambda-shift operators exist only for Meixner-Pollaczek at phi = pi/2 "
                                "and continuous dual Hahn");
    detail::check_varphi(s, w);
    cplx fm = f(s.shift(w, 0.5)), fp = f(s.shift(w, -0.5));
    if (s.id() == FamilyId::MeixnerPollaczek) return 0.25 * (fm + fp) / s.varphi(w);
    cplx cc = 1.0;
    for (auto a : s.params().lambda) cc *= 2.0 * a - 1.0;
    double c = cc.real();
    cplx r = c / (8.0 * (1.0 + w * w));
    cplx coef_p = w - I * s.V_star(s.shift(w, -0.5)) - I * r;
    cplx coef_m = w + I * s.V(s.shift(w, 0.5)) + I * r;
    cplx t = -I * s.V(s.shift(w, 0.5)) * f(s.shift(w, 1.5)) + coef_p * fm +
             I * s.V_star(s.shift(w, -0.5)) * f(s.shift(w, -1.5)) + coef_m * fp;
    return t / s.varphi(w);
}

// phi0(lambda)^{-1} X^dagger phi0(lambda+delta) on polynomials at lambda+delta
inline cplx lambda_shift_Xdag(const System& s, const PointFn& f, cplx w) {
    if (!detail::has_lambda_shift(s))
        throw UnsupportedFamily("explicit lambda-shift operators exist only for Meixner-Pollaczek at phi = pi/2 "
                                "and continuous dual Hahn");
    detail::check_regular(s, w);
    cplx wm = s.shift(w, 0.5), wp = s.shift(w, -0.5);
    cplx Vw = s.V(w), Vs = s.V_star(w);
    if (s.id() == FamilyId::MeixnerPollaczek) return 0.25 * (Vw * f(wm) + Vs * f(wp));
    cplx cc = 1.0;
    for (auto a : s.params().lambda) cc *= 2.0 * a - 1.0;
    double c = cc.real();
    auto r = [c](cplx y) { return c / (8.0 * (1.0 + y * y)); };
    auto coef1 = [&](cplx y) { return y - I * s.V_star(s.shift(y, -0.5)) - I * r(y); };
    auto coef2 = [&](cplx y) { return y + I * s.V(s.shift(y, 0.5)) + I * r(y); };
    cplx wmm = s.shift(w, 1.5), wpp = s.shift(w, -1.5);
    return I * Vw * s.V(s.shift(w, 1)) * s.varphi(wmm) * f(wmm) + Vw * s.varphi(wm) * coef2(wm) * f(wm) -
           I * Vs * s.V_star(s.shift(w, -1)) * s.varphi(wpp) * f(wpp) + Vs * s.varphi(wp) * coef1(wp) * f(wp);
}

}  // namespace dqm
