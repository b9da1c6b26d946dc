#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eta_polynomial.hpp"
#include "specfun.hpp"

namespace dqm {

enum class FamilyId {
    ContinuousHahn,
    MeixnerPollaczek,
    Wilson,
    ContinuousDualHahn,
    AskeyWilson,
    ContinuousDualQHahn,
    AlSalamChihara,
    ContinuousBigQHermite,
    ContinuousQHermite,
    ContinuousQJacobi,
    ContinuousQLaguerre,
};

inline constexpr std::array<FamilyId, 11> kAllFamilies = {
    FamilyId::ContinuousHahn,        FamilyId::MeixnerPollaczek,   FamilyId::Wilson,
    FamilyId::ContinuousDualHahn,    FamilyId::AskeyWilson,        FamilyId::ContinuousDualQHahn,
    FamilyId::AlSalamChihara,        FamilyId::ContinuousBigQHermite, FamilyId::ContinuousQHermite,
    FamilyId::ContinuousQJacobi,     FamilyId::ContinuousQLaguerre,
};

enum class EtaKind { X, XSquared, CosX };
enum class Interval { WholeLine, HalfLine, ZeroPi };
enum class ShiftKind { AddHalf, TimesSqrtQ, AddOne, None };

struct FamilySpec {
    FamilyId id;
    std::string_view slug;
    std::string_view name;
    std::string_view ks_tag;
    EtaKind eta_kind;
    Interval interval;
    ShiftKind delta;
    int n_lambda;
    bool needs_q;
    bool needs_phi;
    std::string_view param_schema;
};

inline constexpr std::array<FamilySpec, 11> kFamilySpecs = {{
    {FamilyId::ContinuousHahn, "continuous-hahn", "continuous Hahn", "KS1.4", EtaKind::X, Interval::WholeLine,
     ShiftKind::AddHalf, 2, false, false, "a1, a2 complex, Re a_i > 0 (a3 = conj a1, a4 = conj a2)"},
    {FamilyId::MeixnerPollaczek, "meixner-pollaczek", "Meixner-Pollaczek", "KS1.7", EtaKind::X,
     Interval::WholeLine, ShiftKind::AddHalf, 1, false, true, "a > 0 real, 0 < phi < pi"},
    {FamilyId::Wilson, "wilson", "Wilson", "KS1.1", EtaKind::XSquared, Interval::HalfLine, ShiftKind::AddHalf, 4,
     false, false, "a1..a4 conjugation-closed set, Re a_i > 0"},
    {FamilyId::ContinuousDualHahn, "continuous-dual-hahn", "continuous dual Hahn", "KS1.3", EtaKind::XSquared,
     Interval::HalfLine, ShiftKind::AddHalf, 3, false, false, "a1..a3 conjugation-closed set, Re a_i > 0"},
    {FamilyId::AskeyWilson, "askey-wilson", "Askey-Wilson", "KS3.1", EtaKind::CosX, Interval::ZeroPi,
     ShiftKind::TimesSqrtQ, 4, true, false, "a1..a4 conjugation-closed set, |a_i| < 1; 0 < q < 1"},
    {FamilyId::ContinuousDualQHahn, "continuous-dual-q-hahn", "continuous dual q-Hahn", "KS3.3", EtaKind::CosX,
     Interval::ZeroPi, ShiftKind::TimesSqrtQ, 3, true, false, "a1..a3 conjugation-closed set, |a_i| < 1; 0 < q < 1"},
    {FamilyId::AlSalamChihara, "al-salam-chihara", "Al-Salam-Chihara", "KS3.8", EtaKind::CosX, Interval::ZeroPi,
     ShiftKind::TimesSqrtQ, 2, true, false, "a1, a2 conjugation-closed set, |a_i| < 1; 0 < q < 1"},
    {FamilyId::ContinuousBigQHermite, "continuous-big-q-hermite", "continuous big q-Hermite", "KS3.18",
     EtaKind::CosX, Interval::ZeroPi, ShiftKind::TimesSqrtQ, 1, true, false, "-1 < a < 1 real; 0 < q < 1"},
    {FamilyId::ContinuousQHermite, "continuous-q-hermite", "continuous q-Hermite", "KS3.26", EtaKind::CosX,
     Interval::ZeroPi, ShiftKind::None, 0, true, false, "no parameters; 0 < q < 1"},
    {FamilyId::ContinuousQJacobi, "continuous-q-jacobi", "continuous q-Jacobi", "KS3.10", EtaKind::CosX,
     Interval::ZeroPi, ShiftKind::AddOne, 2, true, false, "alpha, beta >= -1/2 real; 0 < q < 1"},
    {FamilyId::ContinuousQLaguerre, "continuous-q-laguerre", "continuous q-Laguerre", "KS3.19", EtaKind::CosX,
     Interval::ZeroPi, ShiftKind::AddOne, 1, true, false, "alpha >= -1/2 real; 0 < q < 1"},
}};

inline const FamilySpec& family_spec(FamilyId id) { return kFamilySpecs[static_cast<std::size_t>(id)]; }

inline std::string_view to_string(FamilyId id) { return family_spec(id).slug; }

inline std::optional<FamilyId> family_from_string(std::string_view s) {
    for (const auto& f : kFamilySpecs)
        if (f.slug == s || f.name == s) return f.id;
    if (s == "q-hermite") return FamilyId::ContinuousQHermite;
    if (s == "big-q-hermite") return FamilyId::ContinuousBigQHermite;
    if (s == "q-jacobi") return FamilyId::ContinuousQJacobi;
    if (s == "q-laguerre") return FamilyId::ContinuousQLaguerre;
    if (s == "dual-hahn") return FamilyId::ContinuousDualHahn;
    if (s == "dual-q-hahn") return FamilyId::ContinuousDualQHahn;
    return std::nullopt;
}

inline std::string_view to_string(EtaKind k) {
    switch (k) {
        case EtaKind::X: return "x";
        case EtaKind::XSquared: return "x^2";
        case EtaKind::CosX: return "cos x";
    }
    return "?";
}

inline std::string_view to_string(Interval i) {
    switch (i) {
        case Interval::WholeLine: return "(-inf,inf)";
        case Interval::HalfLine: return "(0,inf)";
        case Interval::ZeroPi: return "(0,pi)";
    }
    return "?";
}

struct ParamSet {
    std::vector<cplx> lambda;
    std::optional<double> q;
    std::optional<double> phi;
};

struct CoefficientBundle {
    int n = 0;
    double E_n = 0, c_n = 0, a_n_rec = 0, b_n_rec = 0;
    double A_n = 0, B_n = 0, C_n = 0;
    double f_n = 0, b_n_shift = 0;
    double h0 = 0, h0_over_hn = 0, N_n = 0;
};

// ascending coefficients in y
struct ClosurePolys {
    std::array<double, 2> R1{};
    std::array<double, 3> R0{};
    std::array<double, 3> Rm1{};

    static double eval(std::span<const double> c, double y) {
        double r = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * y + *it;
        return r;
    }
    double r1(double y) const { return eval(R1, y); }
    double r0(double y) const { return eval(R0, y); }
    double rm1(double y) const { return eval(Rm1, y); }
};

class System;
std::unique_ptr<System> make_system(FamilyId id, const ParamSet& p, bool validate = true);

class System {
public:
    System(FamilyId id, ParamSet p) : spec_(&family_spec(id)), p_(std::move(p)) {
        if (spec_->needs_q) q_ = *p_.q;
    }
    virtual ~System() = default;

    const FamilySpec& spec() const { return *spec_; }
    FamilyId id() const { return spec_->id; }
    const ParamSet& params() const { return p_; }
    EtaKind kind() const { return spec_->eta_kind; }
    double q() const { return q_; }
    double gamma() const { return kind() == EtaKind::CosX ? std::log(q_) : 1.0; }
    double kappa() const { return kind() == EtaKind::CosX ? 1.0 / q_ : 1.0; }

    // natural variable: x itself, or z = e^{ix}
    cplx point(double x) const { return kind() == EtaKind::CosX ? std::exp(I * x) : cplx(x); }
    // x -> x - i s gamma
    cplx shift(cplx w, double s) const {
        if (kind() == EtaKind::CosX) return w * std::pow(q_, s);
        return w - I * s;
    }
    cplx conj_point(cplx w) const { return kind() == EtaKind::CosX ? 1.0 / std::conj(w) : std::conj(w); }
    cplx eta(cplx w) const {
        switch (kind()) {
            case EtaKind::X: return w;
            case EtaKind::XSquared: return w * w;
            case EtaKind::CosX: return 0.5 * (w + 1.0 / w);
        }
        return w;
    }
    cplx varphi(cplx w) const {
        switch (kind()) {
            case EtaKind::X: return 1.0;
            case EtaKind::XSquared: return 2.0 * w;
            case EtaKind::CosX: return -I * (w - 1.0 / w);
        }
        return 1.0;
    }
    // principal inverse of eta
    cplx point_from_eta(cplx e) const {
        switch (kind()) {
            case EtaKind::X: return e;
            case EtaKind::XSquared: return std::sqrt(e);
            case EtaKind::CosX: return std::exp(I * std::acos(e));
        }
        return e;
    }

    virtual cplx V(cplx w) const = 0;
    cplx V_star(cplx w) const { return std::conj(V(conj_point(w))); }

    virtual double energy(int n) const = 0;
    virtual cplx c(int n) const = 0;
    virtual cplx a_rec(int n) const = 0;
    virtual cplx b_rec(int n) const = 0;
    virtual double f(int n) const = 0;
    virtual double b_shift(int n) const = 0;
    virtual double h0() const = 0;
    virtual double h0_over_hn(int n) const = 0;
    virtual ClosurePolys closure() const = 0;
    virtual cplx p_series(int n, cplx w, Diagnostics* diag = nullptr) const = 0;
    // -inf where the ground state vanishes
    virtual double log_phi0(double x) const = 0;

    double ground_state(double x) const {
        double l = log_phi0(x);
        return std::isinf(l) ? 0.0 : std::exp(l);
    }

    ParamSet shifted_params(int s = 1) const {
        ParamSet r = p_;
        for (auto& v : r.lambda) {
            switch (spec_->delta) {
                case ShiftKind::AddHalf: v += 0.5 * s; break;
                case ShiftKind::TimesSqrtQ: v *= std::pow(q_, 0.5 * s); break;
                case ShiftKind::AddOne: v += double(s); break;
                case ShiftKind::None: break;
            }
        }
        return r;
    }
    std::unique_ptr<System> shifted(int s = 1) const { return make_system(id(), shifted_params(s), false); }

    std::array<cplx, 3> ABC(int n) const {
        cplx A = c(n) / c(n + 1);
        cplx B = a_rec(n);
        cplx C = n > 0 ? c(n) / c(n - 1) * b_rec(n) : cplx(0.0);
        return {A, B, C};
    }

    // pointwise ascent of the three-term recurrence
    cplx p_recurrence(int n, cplx e) const {
        if (n < 0) return 0.0;
        cplx prev = 0.0, cur = 1.0;
        for (int k = 0; k < n; ++k) {
            auto [A, B, C] = ABC(k);
            cplx next = ((e - B) * cur - C * prev) / A;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    cplx P(int n, cplx w) const { return p_recurrence(n, eta(w)); }

    EtaPolynomial poly(int n, Diagnostics* diag = nullptr) const {
        if (n > kDegreeCap) warn(diag, "recurrence beyond degree 30, conditioning degrades");
        EtaPolynomial prev = EtaPolynomial::constant(0.0), cur = EtaPolynomial::constant(1.0);
        for (int k = 0; k < n; ++k) {
            auto [A, B, C] = ABC(k);
            if (A == 0.0) throw DegeneracyError("recurrence coefficient A_k vanishes");
            EtaPolynomial next = (1.0 / A) * (cur.times_eta() - B * cur - C * prev);
            prev = std::move(cur);
            cur = std::move(next);
        }
        return cur;
    }

    CoefficientBundle coefficients(int n) const {
        CoefficientBundle cb;
        cb.n = n;
        cb.E_n = energy(n);
        cb.c_n = c(n).real();
        cb.a_n_rec = a_rec(n).real();
        cb.b_n_rec = b_rec(n).real();
        auto [A, B, C] = ABC(n);
        cb.A_n = A.real();
        cb.B_n = B.real();
        cb.C_n = C.real();
        cb.f_n = f(n);
        cb.b_n_shift = b_shift(n);
        cb.h0 = h0();
        cb.h0_over_hn = h0_over_hn(n);
        cb.N_n = std::sqrt(cb.h0_over_hn);
        return cb;
    }

    // deterministic low-discrepancy interior points
    std::vector<double> sample_points(int count, std::uint64_t seed = 0) const {
        constexpr double g = 0.6180339887498949;
        const double offset = std::fmod(0.5 + 0.7548776662466927 * double(seed % 1000003), 1.0);
        std::vector<double> xs;
        xs.reserve(count);
        for (int k = 0; k < count; ++k) {
            double u = std::fmod(offset + g * (k + 1), 1.0);
            switch (spec_->interval) {
                case Interval::WholeLine: xs.push_back(-3.0 + 6.0 * u); break;
                case Interval::HalfLine: xs.push_back(0.1 + 3.4 * u); break;
                case Interval::ZeroPi: xs.push_back(0.05 + (pi - 0.1) * u); break;
            }
        }
        return xs;
    }

protected:
    // decimal digits the terminating series may lose to cancellation
    virtual double lost_digits(int n) const { return 2.5 * n; }
    static void series_warning(int n, Diagnostics* d) {
        if (n > kDegreeCap) warn(d, "series beyond degree 30, conditioning degrades");
    }

    const FamilySpec* spec_;
    ParamSet p_;
    double q_ = 0.0;
};

namespace detail {

inline double lgamma_re(cplx z) { return log_abs_gamma(z); }

inline cplx prod_pairs(const std::vector<cplx>& a, auto fn) {
    cplx r = 1.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t k = j + 1; k < a.size(); ++k) r *= fn(a[j] + a[k], a[j] * a[k]);
    return r;
}

inline cplx esym(const std::vector<cplx>& a, int k) {
    std::vector<cplx> e(k + 1, 0.0);
    e[0] = 1.0;
    for (auto v : a)
        for (int j = k; j >= 1; --j) e[j] += v * e[j - 1];
    return e[k];
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace detail

class MeixnerPollaczekSystem final : public System {
public:
    explicit MeixnerPollaczekSystem(ParamSet p) : System(FamilyId::MeixnerPollaczek, std::move(p)) {
        a_ = p_.lambda.at(0).real();
        phi_ = *p_.phi;
        s_ = std::sin(phi_);
    }
    cplx V(cplx w) const override { return std::exp(I * (pi / 2 - phi_)) * (a_ + I * w); }
    double energy(int n) const override { return 2.0 * n * s_; }
    cplx c(int n) const override { return std::pow(2.0 * s_, n) / detail::factorial(n); }
    cplx a_rec(int n) const override { return -(n + a_) / std::tan(phi_); }
    cplx b_rec(int n) const override { return n * (n + 2 * a_ - 1) / std::pow(2 * s_, 2); }
    double f(int) const override { return 2.0 * s_; }
    double b_shift(int n) const override { return n + 1.0; }
    double h0() const override { return 2 * pi * std::tgamma(2 * a_) / std::pow(2 * s_, 2 * a_); }
    double h0_over_hn(int n) const override { return detail::factorial(n) / pochhammer(2 * a_, n).real(); }
    ClosurePolys closure() const override {
        return {{0, 0}, {4 * s_ * s_, 0, 0}, {2 * a_ * std::sin(2 * phi_), 2 * std::cos(phi_), 0}};
    }
    cplx p_series(int n, cplx w, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            C a(a_), one(1);
            C ph(0, phi_);
            return mp::pochhammer(C(2 * a_), n) / detail::factorial(n) * exp(ph * n) *
                   mp::hypergeometric_F<C>({C(-n), a + C(0, 1) * mp::lift<C>(w)}, {C(2 * a_)}, one - exp(-2 * ph), n);
        });
    }
    double log_phi0(double x) const override { return (phi_ - pi / 2) * x + detail::lgamma_re(a_ + I * x); }
    double a() const { return a_; }
    double phi() const { return phi_; }

private:
    double a_, phi_, s_;
};

class ContinuousHahnSystem final : public System {
public:
    explicit ContinuousHahnSystem(ParamSet p) : System(FamilyId::ContinuousHahn, std::move(p)) {
        a_ = {p_.lambda.at(0), p_.lambda.at(1), std::conj(p_.lambda[0]), std::conj(p_.lambda[1])};
        b1_ = (a_[0] + a_[1] + a_[2] + a_[3]).real();
    }
    cplx V(cplx w) const override { return (a_[0] + I * w) * (a_[1] + I * w); }
    double energy(int n) const override { return n * (n + b1_ - 1); }
    cplx c(int n) const override { return pochhammer(n + b1_ - 1, n) / detail::factorial(n); }
    cplx a_rec(int ni) const override {
        const double n = ni;
        auto [a1, a2, a3, a4] = a_;
        double b1 = b1_;
        cplx t = a1 - (n + b1 - 1) * (n + a1 + a3) * (n + a1 + a4) / ((2 * n + b1 - 1) * (2 * n + b1));
        if (n > 0) t += double(n) * (n + a2 + a3 - 1.0) * (n + a2 + a4 - 1.0) / ((2 * n + b1 - 2) * (2 * n + b1 - 1));
        return I * t;
    }
    cplx b_rec(int ni) const override {
        const double n = ni;
        if (n == 0) return 0.0;
        auto [a1, a2, a3, a4] = a_;
        double b1 = b1_;
        cplx pr = (n + a1 + a3 - 1.0) * (n + a1 + a4 - 1.0) * (n + a2 + a3 - 1.0) * (n + a2 + a4 - 1.0);
        return double(n) * (n + b1 - 2) * pr /
               ((2 * n + b1 - 3) * std::pow(2 * n + b1 - 2, 2) * (2 * n + b1 - 1));
    }
    double f(int n) const override { return n + b1_ - 1; }
    double b_shift(int n) const override { return n + 1.0; }
    double h0() const override {
        cplx pr = 1.0;
        for (int j : {0, 1})
            for (int k : {2, 3}) pr *= complex_gamma(a_[j] + a_[k]);
        return 2 * pi * pr.real() / std::tgamma(b1_);
    }
    double h0_over_hn(int n) const override {
        if (n == 0) return 1.0;
        cplx pr = 1.0;
        for (int j : {0, 1})
            for (int k : {2, 3}) pr *= pochhammer(a_[j] + a_[k], n);
        return ((b1_ + 2 * n - 1) / (b1_ + n - 1) * detail::factorial(n) * pochhammer(b1_, n) / pr).real();
    }
    ClosurePolys closure() const override {
        auto [a1, a2, a3, a4] = a_;
        double r0 = (-I * (b1_ - 2) * (a1 * a2 - a3 * a4)).real();
        double r1 = (-I * (a1 + a2 - a3 - a4)).real();
        return {{2, 0}, {b1_ * (b1_ - 2), 4, 0}, {r0, r1, 0}};
    }
    cplx p_series(int n, cplx w, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            C a1 = mp::lift<C>(a_[0]), a3 = mp::lift<C>(a_[2]), a4 = mp::lift<C>(a_[3]);
            C iw = C(0, 1) * mp::lift<C>(w);
            return mp::lift<C>(std::pow(I, n)) * mp::pochhammer(a1 + a3, n) * mp::pochhammer(a1 + a4, n) /
                   detail::factorial(n) *
                   mp::hypergeometric_F<C>({C(-n), C(n + b1_ - 1), a1 + iw}, {a1 + a3, a1 + a4}, C(1), n);
        });
    }
    double log_phi0(double x) const override {
        return detail::lgamma_re(a_[0] + I * x) + detail::lgamma_re(a_[1] + I * x);
    }
    const std::array<cplx, 4>& a() const { return a_; }

private:
    std::array<cplx, 4> a_;
    double b1_;
};

// Wilson and continuous dual Hahn share V, phi0 and the x^2 coordinate
class WilsonLikeSystem : public System {
public:
    WilsonLikeSystem(FamilyId id, ParamSet p) : System(id, std::move(p)) {
        a_ = p_.lambda;
        b1_ = detail::esym(a_, 1).real();
        b2_ = detail::esym(a_, 2).real();
        b3_ = detail::esym(a_, 3).real();
    }
    cplx V(cplx w) const override {
        cplx pr = 1.0;
        for (auto v : a_) pr *= v + I * w;
        return pr / (2.0 * I * w * (2.0 * I * w + 1.0));
    }
    double log_phi0(double x) const override {
        if (x == 0.0) return -std::numeric_limits<double>::infinity();
        double r = -detail::lgamma_re(2.0 * I * x);
        for (auto v : a_) r += detail::lgamma_re(v + I * x);
        return r;
    }
    const std::vector<cplx>& a() const { return a_; }

protected:
    std::vector<cplx> a_;
    double b1_, b2_, b3_;
};

class WilsonSystem final : public WilsonLikeSystem {
public:
    explicit WilsonSystem(ParamSet p) : WilsonLikeSystem(FamilyId::Wilson, std::move(p)) {}
    double energy(int n) const override { return n * (n + b1_ - 1); }
    cplx c(int n) const override { return std::pow(-1.0, n) * pochhammer(n + b1_ - 1, n); }
    cplx a_rec(int ni) const override {
        const double n = ni;
        const auto& a = a_;
        double b1 = b1_;
        cplx p1 = (n + a[0] + a[1]) * (n + a[0] + a[2]) * (n + a[0] + a[3]);
        cplx t = (n + b1 - 1) * p1 / ((2 * n + b1 - 1) * (2 * n + b1)) - a[0] * a[0];
        if (n > 0) {
            cplx p2 = (n + a[1] + a[2] - 1.0) * (n + a[1] + a[3] - 1.0) * (n + a[2] + a[3] - 1.0);
            t += double(n) * p2 / ((2 * n + b1 - 2) * (2 * n + b1 - 1));
        }
        return t;
    }
    cplx b_rec(int ni) const override {
        const double n = ni;
        if (n == 0) return 0.0;
        cplx pr = detail::prod_pairs(a_, [n](cplx s, cplx) { return n + s - 1.0; });
        return double(n) * (n + b1_ - 2) * pr /
               ((2 * n + b1_ - 3) * std::pow(2 * n + b1_ - 2, 2) * (2 * n + b1_ - 1));
    }
    double f(int n) const override { return -n * (n + b1_ - 1); }
    double b_shift(int) const override { return -1.0; }
    double h0() const override {
        cplx pr = detail::prod_pairs(a_, [](cplx s, cplx) { return complex_gamma(s); });
        return 2 * pi * pr.real() / std::tgamma(b1_);
    }
    double h0_over_hn(int n) const override {
        if (n == 0) return 1.0;
        cplx pr = detail::prod_pairs(a_, [n](cplx s, cplx) { return pochhammer(s, n); });
        return ((b1_ + 2 * n - 1) / (b1_ + n - 1) * pochhammer(b1_, n) / (detail::factorial(n) * pr)).real();
    }
    ClosurePolys closure() const override {
        return {{2, 0}, {b1_ * (b1_ - 2), 4, 0}, {(2 - b1_) * b3_, b1_ - 2 * b2_, -2}};
    }
    cplx p_series(int n, cplx w, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            C a1 = mp::lift<C>(a_[0]), a2 = mp::lift<C>(a_[1]), a3 = mp::lift<C>(a_[2]), a4 = mp::lift<C>(a_[3]);
            C iw = C(0, 1) * mp::lift<C>(w);
            return mp::pochhammer(a1 + a2, n) * mp::pochhammer(a1 + a3, n) * mp::pochhammer(a1 + a4, n) *
                   mp::hypergeometric_F<C>({C(-n), C(n + b1_ - 1), a1 + iw, a1 - iw}, {a1 + a2, a1 + a3, a1 + a4},
                                           C(1), n);
        });
    }
};

class ContinuousDualHahnSystem final : public WilsonLikeSystem {
public:
    explicit ContinuousDualHahnSystem(ParamSet p) : WilsonLikeSystem(FamilyId::ContinuousDualHahn, std::move(p)) {}
    double energy(int n) const override { return n; }
    cplx c(int n) const override { return std::pow(-1.0, n); }
    cplx a_rec(int ni) const override {
        const double n = ni;
        const auto& a = a_;
        return (n + a[0] + a[1]) * (n + a[0] + a[2]) + double(n) * (n + a[1] + a[2] - 1.0) - a[0] * a[0];
    }
    cplx b_rec(int ni) const override {
        const double n = ni;
        return double(n) * detail::prod_pairs(a_, [n](cplx s, cplx) { return n + s - 1.0; });
    }
    double f(int n) const override { return -n; }
    double b_shift(int) const override { return -1.0; }
    double h0() const override {
        return 2 * pi * detail::prod_pairs(a_, [](cplx s, cplx) { return complex_gamma(s); }).real();
    }
    double h0_over_hn(int n) const override {
        cplx pr = detail::prod_pairs(a_, [n](cplx s, cplx) { return pochhammer(s, n); });
        return (1.0 / (detail::factorial(n) * pr)).real();
    }
    ClosurePolys closure() const override { return {{0, 0}, {1, 0, 0}, {-b2_, 1 - 2 * b1_, -2}}; }
    cplx p_series(int n, cplx w, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            C a1 = mp::lift<C>(a_[0]), a2 = mp::lift<C>(a_[1]), a3 = mp::lift<C>(a_[2]);
            C iw = C(0, 1) * mp::lift<C>(w);
            return mp::pochhammer(a1 + a2, n) * mp::pochhammer(a1 + a3, n) *
                   mp::hypergeometric_F<C>({C(-n), a1 + iw, a1 - iw}, {a1 + a2, a1 + a3}, C(1), n);
        });
    }
};

// cos x families: V = prod(1 - a_j z)/((1 - z^2)(1 - q z^2))
class QSystem : public System {
public:
    QSystem(FamilyId id, ParamSet p) : System(id, std::move(p)) {
        check_q(q_);
        k_ = std::pow(1.0 / std::sqrt(q_) - std::sqrt(q_), 2);
    }
    cplx V(cplx z) const override {
        cplx pr = 1.0;
        for (auto v : va_) pr *= 1.0 - v * z;
        return pr / ((1.0 - z * z) * (1.0 - q_ * z * z));
    }
    double log_phi0(double x) const override {
        cplx z = std::exp(I * x);
        cplx num = q_pochhammer_inf(z * z, q_);
        if (num == 0.0) return -std::numeric_limits<double>::infinity();
        double r = std::log(std::abs(num));
        for (auto v : va_) r -= std::log(std::abs(q_pochhammer_inf(v * z, q_)));
        return r;
    }
    double f(int n) const override { return std::pow(q_, n / 2.0) * (std::pow(q_, -n) - 1.0); }
    double b_shift(int n) const override { return std::pow(q_, -(n + 1) / 2.0); }
    double energy(int n) const override { return std::pow(q_, -n) - 1.0; }
    cplx c(int n) const override { return std::pow(2.0, n); }
    // parameters entering V
    const std::vector<cplx>& v_params() const { return va_; }

protected:
    double lost_digits(int n) const override {
        double amin = 1.0;
        for (auto v : va_) amin = std::min(amin, std::abs(v));
        return 0.5 * n * (n + 1) * std::log10(1.0 / q_) + n * std::log10(1.0 / amin) + 2.0;
    }

    std::vector<cplx> va_;
    double k_;
};

class AskeyWilsonSystem final : public QSystem {
public:
    explicit AskeyWilsonSystem(ParamSet p) : QSystem(FamilyId::AskeyWilson, std::move(p)) {
        va_ = p_.lambda;
        b1_ = detail::esym(va_, 1).real();
        b3_ = detail::esym(va_, 3).real();
        b4_ = detail::esym(va_, 4).real();
    }
    double energy(int n) const override { return (std::pow(q_, -n) - 1.0) * (1.0 - b4_ * std::pow(q_, n - 1)); }
    cplx c(int n) const override { return std::pow(2.0, n) * q_pochhammer(b4_ * std::pow(q_, n - 1), q_, n); }
    cplx a_rec(int n) const override {
        const auto& a = va_;
        double q = q_, b4 = b4_, qn = std::pow(q, n);
        cplx p1 = (1.0 - a[0] * a[1] * qn) * (1.0 - a[0] * a[2] * qn) * (1.0 - a[0] * a[3] * qn);
        cplx p2 = (1.0 - a[1] * a[2] * qn / q) * (1.0 - a[1] * a[3] * qn / q) * (1.0 - a[2] * a[3] * qn / q);
        cplx t = a[0] + 1.0 / a[0] -
                 (1.0 - b4 * qn / q) * p1 / (a[0] * (1.0 - b4 * qn * qn / q) * (1.0 - b4 * qn * qn));
        if (n > 0) t -= a[0] * (1.0 - qn) * p2 / ((1.0 - b4 * qn * qn / (q * q)) * (1.0 - b4 * qn * qn / q));
        return 0.5 * t;
    }
    cplx b_rec(int n) const override {
        if (n == 0) return 0.0;
        double q = q_, b4 = b4_, qn = std::pow(q, n);
        cplx pr = detail::prod_pairs(va_, [&](cplx, cplx m) { return 1.0 - m * qn / q; });
        return (1.0 - qn) * (1.0 - b4 * qn / (q * q)) * pr /
               (4.0 * (1.0 - b4 * qn * qn / (q * q * q)) * std::pow(1.0 - b4 * qn * qn / (q * q), 2) *
                (1.0 - b4 * qn * qn / q));
    }
    double f(int n) const override { return std::pow(q_, n / 2.0) * energy(n); }
    double h0() const override {
        cplx pr = detail::prod_pairs(va_, [&](cplx, cplx m) { return q_pochhammer_inf(m, q_); });
        return (2 * pi * q_pochhammer_inf(b4_, q_) / (q_pochhammer_inf(q_, q_) * pr)).real();
    }
    double h0_over_hn(int n) const override {
        cplx pr = detail::prod_pairs(va_, [&](cplx, cplx m) { return q_pochhammer(m, q_, n); });
        double qn = std::pow(q_, n);
        return ((1.0 - b4_ * qn * qn / q_) / (1.0 - b4_ * qn / q_) * q_pochhammer(b4_, q_, n) /
                (q_pochhammer(q_, q_, n) * pr))
            .real();
    }
    ClosurePolys closure() const override {
        double q = q_, k = k_, sh = 1.0 + b4_ / q;
        double u = b1_ + b3_ / q;
        return {{k * sh, k},
                {k * (sh * sh - std::pow(1 + 1 / q, 2) * b4_), 2 * k * sh, k},
                {-k / 2 * (u * sh - (1 + 1 / q) * (b3_ + b1_ * b4_ / q)), -k / 2 * u, 0}};
    }
    cplx p_series(int n, cplx z, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            using R = mp::real_t<C>;
            R q(q_);
            C a1 = mp::lift<C>(va_[0]), a2 = mp::lift<C>(va_[1]), a3 = mp::lift<C>(va_[2]), a4 = mp::lift<C>(va_[3]);
            C Z = mp::lift<C>(z), b4 = a1 * a2 * a3 * a4;
            return pow(a1, -n) * mp::q_pochhammer(a1 * a2, q, n) * mp::q_pochhammer(a1 * a3, q, n) *
                   mp::q_pochhammer(a1 * a4, q, n) *
                   mp::basic_hypergeometric_phi<C>({C(pow(q, -n)), b4 * pow(q, n - 1), a1 * Z, a1 / Z},
                                                   {a1 * a2, a1 * a3, a1 * a4}, q, C(q), n);
        });
    }
    double b4() const { return b4_; }

private:
    double b1_, b3_, b4_;
};

class ContinuousDualQHahnSystem final : public QSystem {
public:
    explicit ContinuousDualQHahnSystem(ParamSet p) : QSystem(FamilyId::ContinuousDualQHahn, std::move(p)) {
        va_ = p_.lambda;
        b1_ = detail::esym(va_, 1).real();
        b3_ = detail::esym(va_, 3).real();
    }
    cplx a_rec(int n) const override {
        const auto& a = va_;
        double qn = std::pow(q_, n);
        cplx t = a[0] + 1.0 / a[0] - (1.0 - a[0] * a[1] * qn) * (1.0 - a[0] * a[2] * qn) / a[0];
        if (n > 0) t -= a[0] * (1.0 - qn) * (1.0 - a[1] * a[2] * qn / q_);
        return 0.5 * t;
    }
    cplx b_rec(int n) const override {
        double qn = std::pow(q_, n);
        return 0.25 * (1.0 - qn) * detail::prod_pairs(va_, [&](cplx, cplx m) { return 1.0 - m * qn / q_; });
    }
    double h0() const override {
        cplx pr = detail::prod_pairs(va_, [&](cplx, cplx m) { return q_pochhammer_inf(m, q_); });
        return (2 * pi / (q_pochhammer_inf(q_, q_) * pr)).real();
    }
    double h0_over_hn(int n) const override {
        cplx pr = detail::prod_pairs(va_, [&](cplx, cplx m) { return q_pochhammer(m, q_, n); });
        return (1.0 / (q_pochhammer(q_, q_, n) * pr)).real();
    }
    ClosurePolys closure() const override {
        double q = q_, k = k_, u = b1_ + b3_ / q;
        return {{k, k}, {k, 2 * k, k}, {-k / 2 * (u - (1 + 1 / q) * b3_), -k / 2 * u, 0}};
    }
    cplx p_series(int n, cplx z, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            using R = mp::real_t<C>;
            R q(q_);
            C a1 = mp::lift<C>(va_[0]), a2 = mp::lift<C>(va_[1]), a3 = mp::lift<C>(va_[2]), Z = mp::lift<C>(z);
            return pow(a1, -n) * mp::q_pochhammer(a1 * a2, q, n) * mp::q_pochhammer(a1 * a3, q, n) *
                   mp::basic_hypergeometric_phi<C>({C(pow(q, -n)), a1 * Z, a1 / Z}, {a1 * a2, a1 * a3}, q, C(q), n);
        });
    }

private:
    double b1_, b3_;
};

class AlSalamChiharaSystem final : public QSystem {
public:
    explicit AlSalamChiharaSystem(ParamSet p) : QSystem(FamilyId::AlSalamChihara, std::move(p)) {
        va_ = p_.lambda;
        s_ = (va_[0] + va_[1]).real();
        m_ = (va_[0] * va_[1]).real();
    }
    cplx a_rec(int n) const override { return 0.5 * s_ * std::pow(q_, n); }
    cplx b_rec(int n) const override { return 0.25 * (1.0 - std::pow(q_, n)) * (1.0 - m_ * std::pow(q_, n - 1)); }
    double h0() const override { return 2 * pi / (q_pochhammer_inf(q_, q_) * q_pochhammer_inf(m_, q_)).real(); }
    double h0_over_hn(int n) const override {
        return 1.0 / (q_pochhammer(q_, q_, n) * q_pochhammer(m_, q_, n)).real();
    }
    ClosurePolys closure() const override { return {{k_, k_}, {k_, 2 * k_, k_}, {-k_ / 2 * s_, -k_ / 2 * s_, 0}}; }
    cplx p_series(int n, cplx z, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            using R = mp::real_t<C>;
            R q(q_);
            C a1 = mp::lift<C>(va_[0]), a2 = mp::lift<C>(va_[1]), Z = mp::lift<C>(z);
            return pow(a1, -n) * mp::q_pochhammer(a1 * a2, q, n) *
                   mp::basic_hypergeometric_phi<C>({C(pow(q, -n)), a1 * Z, a1 / Z}, {a1 * a2, C(0)}, q, C(q), n);
        });
    }

private:
    double s_, m_;
};

class ContinuousQHermiteSystem final : public QSystem {
public:
    explicit ContinuousQHermiteSystem(ParamSet p) : QSystem(FamilyId::ContinuousQHermite, std::move(p)) {}
    cplx a_rec(int) const override { return 0.0; }
    cplx b_rec(int n) const override { return 0.25 * (1.0 - std::pow(q_, n)); }
    double h0() const override { return 2 * pi / q_pochhammer_inf(q_, q_).real(); }
    double h0_over_hn(int n) const override { return 1.0 / q_pochhammer(q_, q_, n).real(); }
    ClosurePolys closure() const override { return {{k_, k_}, {k_, 2 * k_, k_}, {0, 0, 0}}; }
    cplx p_series(int n, cplx z, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) { return hermite_series<decltype(tag)>(q_, n, z); });
    }

    template <class C>
    static C hermite_series(double qd, int n, cplx z) {
        mp::real_t<C> q(qd);
        C Z = mp::lift<C>(z);
        return pow(Z, n) * mp::basic_hypergeometric_phi<C>({C(pow(q, -n)), C(0)}, {}, q, C(pow(q, n)) / (Z * Z), n);
    }
};

class ContinuousBigQHermiteSystem final : public QSystem {
public:
    explicit ContinuousBigQHermiteSystem(ParamSet p) : QSystem(FamilyId::ContinuousBigQHermite, std::move(p)) {
        a_ = p_.lambda.at(0).real();
        va_ = {a_};
    }
    cplx a_rec(int n) const override { return 0.5 * a_ * std::pow(q_, n); }
    cplx b_rec(int n) const override { return 0.25 * (1.0 - std::pow(q_, n)); }
    double h0() const override { return 2 * pi / q_pochhammer_inf(q_, q_).real(); }
    double h0_over_hn(int n) const override { return 1.0 / q_pochhammer(q_, q_, n).real(); }
    ClosurePolys closure() const override { return {{k_, k_}, {k_, 2 * k_, k_}, {-k_ / 2 * a_, -k_ / 2 * a_, 0}}; }
    cplx p_series(int n, cplx z, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            if (a_ == 0.0) return ContinuousQHermiteSystem::hermite_series<C>(q_, n, z);
            mp::real_t<C> q(q_);
            C a(a_), Z = mp::lift<C>(z);
            return C(pow(a, -n) *
                     mp::basic_hypergeometric_phi<C>({C(pow(q, -n)), a * Z, a / Z}, {C(0), C(0)}, q, C(q), n));
        });
    }
    double a() const { return a_; }

private:
    double a_;
};

class ContinuousQJacobiSystem final : public QSystem {
public:
    explicit ContinuousQJacobiSystem(ParamSet p) : QSystem(FamilyId::ContinuousQJacobi, std::move(p)) {
        al_ = p_.lambda.at(0).real();
        be_ = p_.lambda.at(1).real();
        double q = q_;
        va_ = {std::pow(q, (al_ + 0.5) / 2), std::pow(q, (al_ + 1.5) / 2), -std::pow(q, (be_ + 0.5) / 2),
               -std::pow(q, (be_ + 1.5) / 2)};
        h_ = std::pow(q, (al_ + 0.5) / 2);
    }
    double energy(int n) const override {
        return (std::pow(q_, -n) - 1.0) * (1.0 - std::pow(q_, n + al_ + be_ + 1));
    }
    cplx c(int n) const override {
        double q = q_, s = al_ + be_;
        return std::pow(2.0, n) * std::pow(q, (al_ + 0.5) * n / 2) * q_pochhammer(std::pow(q, n + s + 1), q, n) /
               (q_pochhammer(q, q, n) * q_pochhammer(-std::pow(q, (s + 1) / 2), q, n) *
                q_pochhammer(-std::pow(q, (s + 2) / 2), q, n));
    }
    cplx a_rec(int n) const override {
        double q = q_, al = al_, be = be_, s = al + be, h = h_;
        double t1 = (1 - std::pow(q, n + al + 1)) * (1 - std::pow(q, n + s + 1)) * (1 + std::pow(q, n + (s + 1) / 2)) *
                    (1 + std::pow(q, n + (s + 2) / 2)) /
                    (h * (1 - std::pow(q, 2 * n + s + 1)) * (1 - std::pow(q, 2 * n + s + 2)));
        double t2 = 0;
        if (n > 0)
            t2 = h * (1 - std::pow(q, n)) * (1 - std::pow(q, n + be)) * (1 + std::pow(q, n + s / 2)) *
                 (1 + std::pow(q, n + (s + 1) / 2)) / ((1 - std::pow(q, 2 * n + s)) * (1 - std::pow(q, 2 * n + s + 1)));
        return 0.5 * (h + 1 / h - t1 - t2);
    }
    cplx b_rec(int n) const override {
        if (n == 0) return 0.0;
        double q = q_, al = al_, be = be_, s = al + be;
        return (1 - std::pow(q, n)) * (1 - std::pow(q, n + al)) * (1 - std::pow(q, n + be)) *
               (1 - std::pow(q, n + s)) * (1 + std::pow(q, n + (s - 1) / 2)) * std::pow(1 + std::pow(q, n + s / 2), 2) *
               (1 + std::pow(q, n + (s + 1) / 2)) /
               (4 * (1 - std::pow(q, 2 * n + s - 1)) * std::pow(1 - std::pow(q, 2 * n + s), 2) *
                (1 - std::pow(q, 2 * n + s + 1)));
    }
    double f(int n) const override {
        double q = q_, s = al_ + be_;
        return std::pow(q, (al_ + 1.5) / 2) * std::pow(q, -n) * (1 - std::pow(q, n + s + 1)) /
               ((1 + std::pow(q, (s + 1) / 2)) * (1 + std::pow(q, (s + 2) / 2)));
    }
    double b_shift(int n) const override {
        double q = q_, s = al_ + be_;
        return std::pow(q, -(al_ + 1.5) / 2) * std::pow(q, n + 1) * (std::pow(q, -(n + 1)) - 1) *
               (1 + std::pow(q, (s + 1) / 2)) * (1 + std::pow(q, (s + 2) / 2));
    }
    double h0() const override {
        double q = q_, s = al_ + be_;
        cplx num = q_pochhammer_inf(std::pow(q, (s + 2) / 2), q) * q_pochhammer_inf(std::pow(q, (s + 3) / 2), q);
        cplx den = q_pochhammer_inf(q, q) * q_pochhammer_inf(std::pow(q, al_ + 1), q) *
                   q_pochhammer_inf(std::pow(q, be_ + 1), q) * q_pochhammer_inf(-std::pow(q, (s + 1) / 2), q) *
                   q_pochhammer_inf(-std::pow(q, (s + 2) / 2), q);
        return (2 * pi * num / den).real();
    }
    double h0_over_hn(int n) const override {
        double q = q_, s = al_ + be_;
        cplx num = (1 - std::pow(q, 2 * n + s + 1)) * q_pochhammer(q, q, n) * q_pochhammer(std::pow(q, s + 1), q, n) *
                   q_pochhammer(-std::pow(q, (s + 1) / 2), q, n);
        cplx den = (1 - std::pow(q, s + 1)) * q_pochhammer(std::pow(q, al_ + 1), q, n) *
                   q_pochhammer(std::pow(q, be_ + 1), q, n) * q_pochhammer(-std::pow(q, (s + 3) / 2), q, n);
        return (num / den).real() * std::pow(q, -(al_ + 0.5) * n);
    }
    ClosurePolys closure() const override {
        double q = q_, k = k_, s = al_ + be_, sh = 1 + std::pow(q, s + 1);
        double cc = -k / 2 * std::pow(q, 0.25) * (1 + std::sqrt(q)) * (std::pow(q, al_ / 2) - std::pow(q, be_ / 2)) *
                    (1 - std::pow(q, s / 2));
        return {{k * sh, k},
                {k * (sh * sh - std::pow(1 + q, 2) * std::pow(q, s)), 2 * k * sh, k},
                {cc * (sh + (1 + q) * std::pow(q, s / 2)), cc, 0}};
    }
    cplx p_series(int n, cplx z, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            using R = mp::real_t<C>;
            R q(q_), al(al_), s = R(al_) + R(be_);
            C Z = mp::lift<C>(z), h = C(pow(q, (al + R(0.5)) / 2));
            C qa1(pow(q, al + 1));
            return mp::q_pochhammer(qa1, q, n) / mp::q_pochhammer(C(q), q, n) *
                   mp::basic_hypergeometric_phi<C>({C(pow(q, -n)), C(pow(q, n + s + 1)), h * Z, h / Z},
                                                   {qa1, C(-pow(q, (s + 1) / 2)), C(-pow(q, (s + 2) / 2))}, q, C(q),
                                                   n);
        });
    }
    double alpha() const { return al_; }
    double beta() const { return be_; }

private:
    double al_, be_, h_;
};

class ContinuousQLaguerreSystem final : public QSystem {
public:
    explicit ContinuousQLaguerreSystem(ParamSet p) : QSystem(FamilyId::ContinuousQLaguerre, std::move(p)) {
        al_ = p_.lambda.at(0).real();
        va_ = {std::pow(q_, (al_ + 0.5) / 2), std::pow(q_, (al_ + 1.5) / 2)};
        h_ = std::pow(q_, (al_ + 0.5) / 2);
    }
    cplx c(int n) const override {
        return std::pow(2.0, n) * std::pow(q_, (al_ + 0.5) * n / 2) / q_pochhammer(q_, q_, n);
    }
    cplx a_rec(int n) const override { return 0.5 * std::pow(q_, n + (al_ + 0.5) / 2) * (1 + std::sqrt(q_)); }
    cplx b_rec(int n) const override {
        return 0.25 * (1 - std::pow(q_, n)) * (1 - std::pow(q_, n + al_));
    }
    double f(int n) const override { return std::pow(q_, (al_ + 1.5) / 2) * std::pow(q_, -n); }
    double b_shift(int n) const override {
        return std::pow(q_, -(al_ + 1.5) / 2) * std::pow(q_, n + 1) * (std::pow(q_, -(n + 1)) - 1);
    }
    double h0() const override {
        return 2 * pi / (q_pochhammer_inf(q_, q_) * q_pochhammer_inf(std::pow(q_, al_ + 1), q_)).real();
    }
    double h0_over_hn(int n) const override {
        return (q_pochhammer(q_, q_, n) / q_pochhammer(std::pow(q_, al_ + 1), q_, n)).real() *
               std::pow(q_, -(al_ + 0.5) * n);
    }
    ClosurePolys closure() const override {
        double cc = -k_ / 2 * std::pow(q_, (al_ + 0.5) / 2) * (1 + std::sqrt(q_));
        return {{k_, k_}, {k_, 2 * k_, k_}, {cc, cc, 0}};
    }
    cplx p_series(int n, cplx z, Diagnostics* d) const override {
        series_warning(n, d);
        return mp::with_precision(lost_digits(n), d, [&](auto tag) {
            using C = decltype(tag);
            using R = mp::real_t<C>;
            R q(q_), al(al_);
            C Z = mp::lift<C>(z), h = C(pow(q, (al + R(0.5)) / 2));
            C qa1(pow(q, al + 1));
            return mp::q_pochhammer(qa1, q, n) / mp::q_pochhammer(C(q), q, n) *
                   mp::basic_hypergeometric_phi<C>({C(pow(q, -n)), h * Z, h / Z}, {qa1, C(0)}, q, C(q), n);
        });
    }
    double alpha() const { return al_; }

private:
    double al_, h_;
};

namespace detail {

inline bool conjugate_closed(const std::vector<cplx>& a, double tol = 1e-12) {
    std::vector<bool> used(a.size(), false);
    for (std::size_t i = 0; i < a.size(); ++i) {
        bool found = false;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (!used[j] && std::abs(std::conj(a[i]) - a[j]) <= tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

inline std::string idx(std::size_t i) { return std::to_string(i + 1); }

}  // namespace detail

inline void validate_params(FamilyId id, const ParamSet& p) {
    const auto& s = family_spec(id);
    auto fail = [&](const std::string& msg) { throw ValidationError(std::string(s.name) + ": " + msg); };
    if (int(p.lambda.size()) != s.n_lambda)
        fail("expected " + std::to_string(s.n_lambda) + " parameters, got " + std::to_string(p.lambda.size()));
    if (s.needs_q) {
        if (!p.q) fail("q is required");
        if (!(*p.q > 0 && *p.q < 1)) fail("0 < q < 1 violated");
    }
    if (s.needs_phi) {
        if (!p.phi) fail("phi is required");
        if (!(*p.phi > 0 && *p.phi < pi)) fail("0 < phi < pi violated");
    }
    auto require_real = [&](std::size_t i) {
        if (std::abs(p.lambda[i].imag()) > 1e-12) fail("parameter " + detail::idx(i) + " must be real");
    };
    switch (id) {
        case FamilyId::ContinuousHahn:
            for (std::size_t i = 0; i < 2; ++i)
                if (!(p.lambda[i].real() > 0)) fail("Re a" + detail::idx(i) + " > 0 violated");
            break;
        case FamilyId::MeixnerPollaczek:
            require_real(0);
            if (!(p.lambda[0].real() > 0)) fail("a>0 violated");
            break;
        case FamilyId::Wilson:
        case FamilyId::ContinuousDualHahn:
            if (!detail::conjugate_closed(p.lambda)) fail("parameter set not closed under complex conjugation");
            for (std::size_t i = 0; i < p.lambda.size(); ++i)
                if (!(p.lambda[i].real() > 0)) fail("Re a" + detail::idx(i) + " > 0 violated");
            break;
        case FamilyId::AskeyWilson:
        case FamilyId::ContinuousDualQHahn:
        case FamilyId::AlSalamChihara:
            for (std::size_t i = 0; i < p.lambda.size(); ++i)
                if (!(std::abs(p.lambda[i]) < 1)) fail("|a" + detail::idx(i) + "| >= 1 violates |a_i| < 1");
            if (!detail::conjugate_closed(p.lambda)) fail("parameter set not closed under complex conjugation");
            if (id == FamilyId::AskeyWilson && std::abs(p.lambda[0]) == 0.0) fail("a1 = 0 is not supported");
            if (id != FamilyId::AskeyWilson && std::abs(p.lambda[0]) == 0.0) fail("a1 = 0 is not supported");
            break;
        case FamilyId::ContinuousBigQHermite:
            require_real(0);
            if (!(std::abs(p.lambda[0].real()) < 1)) fail("-1 < a < 1 violated");
            break;
        case FamilyId::ContinuousQHermite: break;
        case FamilyId::ContinuousQJacobi:
            require_real(0);
            require_real(1);
            if (!(p.lambda[0].real() >= -0.5)) fail("alpha >= -1/2 violated");
            if (!(p.lambda[1].real() >= -0.5)) fail("beta >= -1/2 violated");
            break;
        case FamilyId::ContinuousQLaguerre:
            require_real(0);
            if (!(p.lambda[0].real() >= -0.5)) fail("alpha >= -1/2 violated");
            break;
    }
}

inline std::unique_ptr<System> make_system(FamilyId id, const ParamSet& p, bool validate) {
    if (validate) validate_params(id, p);
    switch (id) {
        case FamilyId::ContinuousHahn: return std::make_unique<ContinuousHahnSystem>(p);
        case FamilyId::MeixnerPollaczek: return std::make_unique<MeixnerPollaczekSystem>(p);
        case FamilyId::Wilson: return std::make_unique<WilsonSystem>(p);
        case FamilyId::ContinuousDualHahn: return std::make_unique<ContinuousDualHahnSystem>(p);
        case FamilyId::AskeyWilson: return std::make_unique<AskeyWilsonSystem>(p);
        case FamilyId::ContinuousDualQHahn: return std::make_unique<ContinuousDualQHahnSystem>(p);
        case FamilyId::AlSalamChihara: return std::make_unique<AlSalamChiharaSystem>(p);
        case FamilyId::ContinuousBigQHermite: return std::make_unique<ContinuousBigQHermiteSystem>(p);
        case FamilyId::ContinuousQHermite: return std::make_unique<ContinuousQHermiteSystem>(p);
        case FamilyId::ContinuousQJacobi: return std::make_unique<ContinuousQJacobiSystem>(p);
        case FamilyId::ContinuousQLaguerre: return std::make_unique<ContinuousQLaguerreSystem>(p);
    }
    throw UnsupportedFamily("unknown family");
}

// thin functional surface over System
inline cplx potential(const System& s, double x) {
    cplx w = s.point(x);
    if (s.kind() == EtaKind::CosX && std::abs(w * w - 1.0) < 1e-14)
        throw SingularityError("potential singular at z^2 = 1");
    if (s.kind() == EtaKind::XSquared && x == 0.0) throw SingularityError("potential singular at x = 0");
    return s.V(w);
}
inline double energy(const System& s, int n) { return s.energy(n); }
inline ClosurePolys closure_polys(const System& s) { return s.closure(); }
inline CoefficientBundle coefficients(const System& s, int n) { return s.coefficients(n); }
inline double ground_state(const System& s, double x) { return s.ground_state(x); }
inline cplx eval_poly_hypergeometric(const System& s, int n, cplx w, Diagnostics* d = nullptr) {
    return s.p_series(n, w, d);
}
inline EtaPolynomial eval_poly_recurrence(const System& s, int n, Diagnostics* d = nullptr) { return s.poly(n, d); }

}  // namespace dqm
