#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fixtures.hpp"
#include "limits.hpp"
#include "operators.hpp"
#include "quadrature.hpp"

namespace dqm {

struct CheckResult {
    std::string check_id;
    FamilyId family{};
    ParamSet params;
    std::pair<int, int> level_range{0, 0};
    double max_residual = 0;
    double tolerance = 0;
    bool passed = false;
    int samples_used = 0;
    std::string note;
    std::vector<double> sequence;
};

struct VerifyConfig {
    int n_max = 10;
    int n_points = 20;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::vector<double> L_sequence{20.0, 40.0, 80.0};
    int limit_level = 1;
    double limit_x = 0.9;
    std::optional<double> coherent_alpha_bound;
};

inline const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids = {
        "dual_path", "eigen",         "shape_invariance", "closure",         "dual_closure",
        "shifts",    "ladder",        "coherent",         "orthogonality",   "hermiticity",
        "limit",     "number_operator", "spectrum",       "lambda_shift"};
    return ids;
}

struct CoherentStateEval {
    cplx alpha;
    double x = 0;
    int truncation_N = 0;
    cplx partial_sum;
    std::optional<cplx> closed_form;
    double annihilation_residual = 0;
    double tail = 0;
};

namespace detail {

inline double rel_diff(cplx a, cplx b, double scale = 0.0) {
    double d = std::max({std::abs(a), std::abs(b), scale});
    return d > 0 ? std::abs(a - b) / d : 0.0;
}

struct Worst {
    double value = 0;
    int samples = 0;
    void add(double r) {
        ++samples;
        if (std::isnan(value)) return;
        if (!(r <= value)) value = r;
    }
};

// |terms| entering H~ f at w, for relative residuals
inline double tilde_H_scale(const System& s, const PointFn& f, cplx w) {
    cplx c = f(w);
    return std::abs(s.V(w)) * (std::abs(f(s.shift(w, 1))) + std::abs(c)) +
           std::abs(s.V_star(w)) * (std::abs(f(s.shift(w, -1))) + std::abs(c));
}

class Builder {
public:
    Builder(const System& s, const VerifyConfig& cfg) : s_(s), cfg_(cfg) {}

    void add(std::string id, std::pair<int, int> levels, const Worst& w, double tol, std::string note = {}) {
        CheckResult r;
        r.check_id = std::move(id);
        r.family = s_.id();
        r.params = s_.params();
        r.level_range = levels;
        r.max_residual = w.value;
        r.tolerance = cfg_.tol.value_or(tol);
        r.passed = r.max_residual <= r.tolerance;
        r.samples_used = w.samples;
        r.note = std::move(note);
        out_.push_back(std::move(r));
    }
    void add_error(std::string id, std::pair<int, int> levels, double tol, const std::string& what) {
        Worst w;
        w.value = std::numeric_limits<double>::infinity();
        add(std::move(id), levels, w, tol, what);
    }
    CheckResult& last() { return out_.back(); }
    std::vector<CheckResult> take() { return std::move(out_); }

private:
    const System& s_;
    const VerifyConfig& cfg_;
    std::vector<CheckResult> out_;
};

// runs body, turning a library error into a failed check
template <class F>
void guarded(Builder& b, const std::string& id, std::pair<int, int> levels, double tol, F&& body) {
    try {
        body();
    } catch (const Error& e) {
        b.add_error(id, levels, tol, e.what());
    }
}

inline bool unit_q_spectrum(FamilyId id) {
    switch (id) {
        case FamilyId::ContinuousDualQHahn:
        case FamilyId::AlSalamChihara:
        case FamilyId::ContinuousBigQHermite:
        case FamilyId::ContinuousQHermite:
        case FamilyId::ContinuousQLaguerre: return true;
        default: return false;
    }
}

inline double default_alpha_bound(const System& s) {
    if (s.kind() == EtaKind::CosX) return 0.3;
    if (s.id() == FamilyId::MeixnerPollaczek) return 1.0;
    return 0.5;
}

}  // namespace detail

inline CheckResult check_shape_invariance(const System& s, const std::vector<double>& xs, double tol = 1e-10) {
    auto s1 = s.shifted();
    double kappa = s.kappa(), E1 = s.energy(1);
    detail::Worst w;
    for (double x : xs) {
        cplx p = s.point(x);
        cplx l1 = s.V(s.shift(p, 0.5)) * std::conj(s.V(s.shift(p, -0.5)));
        cplx r1 = kappa * kappa * s1->V(p) * std::conj(s1->V(s.shift(p, -1)));
        w.add(detail::rel_diff(l1, r1));
        cplx vb = s.V(s.shift(p, -0.5)), v1 = s1->V(p);
        cplx l2 = vb + std::conj(vb);
        cplx r2 = kappa * (v1 + std::conj(v1)) - E1;
        w.add(std::abs(l2 - r2) / (2 * std::abs(vb) + 2 * kappa * std::abs(v1) + std::abs(E1)));
    }
    CheckResult r;
    r.check_id = "shape.potential_identities";
    r.family = s.id();
    r.params = s.params();
    r.max_residual = w.value;
    r.tolerance = tol;
    r.passed = w.value <= tol;
    r.samples_used = w.samples;
    return r;
}

inline CheckResult check_number_operator(const System& s, int n_max, double tol = 1e-9) {
    double q = s.kind() == EtaKind::CosX ? s.q() : 0.0;
    const auto& lam = s.params().lambda;
    std::function<double(double)> N;
    switch (s.id()) {
        case FamilyId::MeixnerPollaczek:
        case FamilyId::ContinuousDualHahn: {
            double a = s.energy(1);
            if (!(a > 0)) throw DomainError("linear spectrum needs a positive slope");
            N = [a](double H) { return H / a; };
            break;
        }
        case FamilyId::ContinuousHahn:
        case FamilyId::Wilson: {
            cplx b1 = 0.0;
            for (auto a : lam) b1 += s.id() == FamilyId::ContinuousHahn ? a + std::conj(a) : a;
            double b = b1.real() - 1.0;
            if (!(b > 0)) throw DomainError("number operator needs b1 > 1");
            N = [b](double H) { return std::sqrt(H + 0.25 * b * b) - 0.5 * b; };
            break;
        }
        case FamilyId::AskeyWilson: {
            double b4 = detail::esym(lam, 4).real();
            if (!(b4 > 0 && b4 < q)) throw DomainError("number operator needs 0 < b4 < q");
            N = [q, b4](double H) {
                double Hp = H + 1.0 + b4 / q;
                return std::log(q / (2.0 * b4) * (Hp - std::sqrt(Hp * Hp - 4.0 * b4 / q))) / std::log(q);
            };
            break;
        }
        case FamilyId::ContinuousQJacobi: {
            double b = std::pow(q, lam.at(0).real() + lam.at(1).real() + 1.0);
            if (!(b > 0 && b < 1)) throw DomainError("number operator needs 0 < q^(alpha+beta+1) < 1");
            N = [q, b](double H) {
                double Hp = H + 1.0 + b;
                return std::log(0.5 / b * (Hp - std::sqrt(Hp * Hp - 4.0 * b))) / std::log(q);
            };
            break;
        }
        default: N = [q](double H) { return -std::log(H + 1.0) / std::log(q); };
    }
    detail::Worst w;
    for (int n = 0; n <= n_max; ++n) w.add(std::abs(N(s.energy(n)) - n) / std::max(1, n));
    CheckResult r;
    r.check_id = "number_operator.inversion";
    r.family = s.id();
    r.params = s.params();
    r.level_range = {0, n_max};
    r.max_residual = w.value;
    r.tolerance = tol;
    r.passed = w.value <= tol;
    r.samples_used = w.samples;
    return r;
}

// polynomial part of the coherent state closed form, where one is known
inline std::optional<cplx> coherent_closed_form(const System& s, cplx alpha, double x) {
    cplx z = std::exp(I * x);
    const auto& lam = s.params().lambda;
    switch (s.id()) {
        case FamilyId::MeixnerPollaczek: {
            double a = lam[0].real(), phi = *s.params().phi, sn = std::sin(phi);
            return std::exp(I * alpha * (1.0 - std::exp(2.0 * I * phi))) *
                   hypergeometric_series({a + I * x}, {2.0 * a}, -4.0 * I * alpha * sn * sn);
        }
        case FamilyId::ContinuousQHermite: {
            double q = s.q();
            return 1.0 / q_pochhammer_inf({2.0 * alpha * z, 2.0 * alpha / z}, q);
        }
        case FamilyId::ContinuousBigQHermite: {
            double q = s.q();
            return q_pochhammer_inf(2.0 * alpha * lam[0], q) / q_pochhammer_inf({2.0 * alpha * z, 2.0 * alpha / z}, q);
        }
        case FamilyId::AlSalamChihara: {
            double q = s.q();
            return basic_hypergeometric_series({lam[0] * z, lam[1] * z}, {lam[0] * lam[1]}, q, 2.0 * alpha / z) /
                   q_pochhammer_inf(2.0 * alpha * z, q);
        }
        case FamilyId::ContinuousQLaguerre: {
            double q = s.q(), al = lam[0].real();
            cplx u1 = std::pow(q, 0.5 * (al + 0.5)) * z, u2 = std::pow(q, 0.5 * (al + 1.5)) * z;
            return basic_hypergeometric_series({u1, u2}, {std::pow(q, al + 1.0)}, q, 2.0 * alpha / z) /
                   q_pochhammer_inf(2.0 * alpha * z, q);
        }
        default: return std::nullopt;
    }
}

// psi / phi0 = sum alpha^n / prod C_k P_n, truncated once the next term is negligible
inline CoherentStateEval check_coherent(const System& s, cplx alpha, double x, int N_cap = 60,
                                        Diagnostics* diag = nullptr) {
    CoherentStateEval ev;
    ev.alpha = alpha;
    ev.x = x;
    cplx w = s.point(x), e = s.eta(w);
    std::vector<cplx> coef{1.0}, P{1.0};
    cplx prev = 0.0, cur = 1.0;
    // terms through N_cap + 2 so the two terms after the cut are available
    for (int n = 1; n <= N_cap + 2; ++n) {
        auto [A, B, C] = s.ABC(n - 1);
        cplx next = ((e - B) * cur - C * prev) / A;
        prev = cur;
        cur = next;
        coef.push_back(coef.back() * alpha / s.ABC(n)[2]);
        P.push_back(cur);
    }
    auto term = [&](int n) { return coef[n] * P[n]; };
    CompensatedSum sum;
    int N = 0;
    sum.add(1.0);
    for (int n = 1; n <= N_cap; ++n) {
        sum.add(term(n));
        N = n;
        double sabs = std::abs(sum.value());
        // a single tiny term can be an accidental zero of P_n, so two in a row are required
        if (n >= 10 && std::abs(term(n + 1)) < 1e-14 * sabs && std::abs(term(n + 2)) < 1e-14 * sabs) break;
    }
    ev.truncation_N = N;
    ev.partial_sum = sum.value();
    double sabs = std::abs(ev.partial_sum);
    ev.tail = sabs > 0 ? std::max(std::abs(term(N + 1)), std::abs(term(N + 2))) / sabs : 0.0;
    if (ev.tail > 1e-12) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "coherent series not converged: next term %.3e of the sum", ev.tail);
        warn(diag, buf);
    }

    CompensatedSum lowered;
    for (int n = 1; n <= N; ++n)
        lowered.add(coef[n] * apply_ladder(s, LadderSign::Minus, n, level_fn(s, n), w));
    cplx target = alpha * ev.partial_sum;
    ev.annihilation_residual = detail::rel_diff(lowered.value(), target);
    ev.closed_form = coherent_closed_form(s, alpha, x);
    return ev;
}

inline std::vector<CheckResult> check_limit_aw_wilson(const ParamSet& wilson, const std::vector<double>& Ls,
                                                      int n = 1, double x_prime = 0.9) {
    if (Ls.size() < 3) throw DomainError("limit check needs at least three L values");
    for (std::size_t k = 1; k < Ls.size(); ++k)
        if (!(Ls[k] > Ls[k - 1])) throw DomainError("L sequence must increase");
    std::vector<CheckResult> out;
    for (auto k : {LimitQuantity::Energy, LimitQuantity::Potential, LimitQuantity::Fn, LimitQuantity::Bn}) {
        std::vector<double> dev;
        for (double L : Ls) dev.push_back(limit_deviation(k, wilson, L, n, x_prime));
        double worst_ratio = 0;
        for (std::size_t j = 1; j < dev.size(); ++j) worst_ratio = std::max(worst_ratio, dev[j] / dev[j - 1]);
        std::string q(to_string(k));
        CheckResult mono;
        mono.check_id = "limit." + q + ".monotone";
        mono.family = FamilyId::Wilson;
        mono.params = wilson;
        mono.level_range = {n, n};
        // a ratio >= 1 anywhere means the sequence is not strictly decreasing
        mono.max_residual = worst_ratio;
        mono.tolerance = 1.0;
        mono.passed = worst_ratio < 1.0;
        mono.samples_used = int(dev.size());
        mono.sequence = dev;
        mono.note = "max ratio of consecutive deviations";
        CheckResult fin = mono;
        fin.check_id = "limit." + q + ".final";
        fin.max_residual = dev.back();
        fin.tolerance = 1e-2;
        fin.passed = dev.back() <= 1e-2;
        fin.note = "deviation at the largest L";
        out.push_back(std::move(mono));
        out.push_back(std::move(fin));
    }
    return out;
}

namespace detail {

inline void suite_dual_path(const System& s, const VerifyConfig& cfg, Builder& b) {
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    Worst w;
    for (int n = 0; n <= cfg.n_max; ++n) {
        auto poly = s.poly(n);
        std::vector<cplx> a, r;
        double scale = 0;
        for (double x : xs) {
            cplx p = s.point(x);
            a.push_back(s.p_series(n, p));
            r.push_back(poly(s.eta(p)));
            scale = std::max(scale, std::abs(r.back()));
        }
        for (std::size_t k = 0; k < xs.size(); ++k) w.add(rel_diff(a[k], r[k], 1e-3 * scale));
    }
    b.add("poly.dual_path", {0, cfg.n_max}, w, 1e-9);
}

inline void suite_eigen(const System& s, const VerifyConfig& cfg, Builder& b) {
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    Worst w;
    for (int n = 0; n <= cfg.n_max; ++n) {
        auto poly = s.poly(n);
        auto f = poly_fn(s, poly);
        double E = s.energy(n);
        for (double x : xs) {
            cplx p = s.point(x);
            cplx lhs = apply_tilde_H(s, f, p), rhs = E * f(p);
            w.add(rel_diff(lhs, rhs, tilde_H_scale(s, f, p)));
        }
    }
    b.add("eigen.difference_equation", {0, cfg.n_max}, w, 1e-9);

    // coefficients of H~ eta^n recovered on a circle in the eta plane
    double R = s.kind() == EtaKind::X ? 1.0 : s.kind() == EtaKind::XSquared ? 2.0 : 0.5;
    Worst t;
    for (int n = 0; n <= cfg.n_max; ++n) {
        int M = 2 * n + 8;
        auto mono = poly_fn(s, EtaPolynomial::monomial(n));
        std::vector<cplx> g(M);
        for (int k = 0; k < M; ++k) {
            cplx e = R * std::exp(I * (2.0 * pi * (k + 0.25) / M));
            g[k] = apply_tilde_H(s, mono, s.point_from_eta(e));
        }
        double E = s.energy(n), err = 0;
        for (int m = 0; m < M; ++m) {
            cplx c = 0.0;
            for (int k = 0; k < M; ++k) c += g[k] * std::exp(-I * (2.0 * pi * (k + 0.25) * m / M));
            c /= double(M) * std::pow(R, m);
            if (m == n) err = std::max(err, std::abs(c - E));
            if (m > n) err = std::max(err, std::abs(c) * std::pow(R, m - n));
        }
        t.add(err / std::max(std::abs(E), 1.0));
    }
    b.add("eigen.lower_triangular", {0, cfg.n_max}, t, 1e-9);
}

inline void suite_shape(const System& s, const VerifyConfig& cfg, Builder& b) {
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    auto r = check_shape_invariance(s, xs);
    Worst w;
    w.value = r.max_residual;
    w.samples = r.samples_used;
    b.add(r.check_id, {0, 0}, w, 1e-10);

    // A A^dagger = kappa A(lambda+delta)^dagger A(lambda+delta) + E_1 on polynomials at lambda+delta
    auto s1 = s.shifted();
    int n_top = std::min(cfg.n_max, 8);
    Worst o;
    for (int n = 0; n <= n_top; ++n) {
        PointFn g = level_fn(*s1, n);
        PointFn Bg = backward_shift(s, g);
        double ev = s.kappa() * s1->energy(n) + s.energy(1);
        for (double x : xs) {
            cplx p = s.point(x);
            cplx lhs = apply_forward_shift(s, Bg, p), rhs = ev * g(p);
            double scale = (std::abs(Bg(s.shift(p, 0.5))) + std::abs(Bg(s.shift(p, -0.5)))) / std::abs(s.varphi(p));
            o.add(rel_diff(lhs, rhs, scale));
        }
    }
    b.add("shape.factorized_hamiltonian", {0, n_top}, o, 1e-10);
}

inline void suite_closure(const System& s, const VerifyConfig& cfg, Builder& b) {
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    auto cp = s.closure();
    Worst w;
    for (int n = 0; n <= cfg.n_max; ++n) {
        double E = s.energy(n);
        PointFn P = level_fn(s, n);
        PointFn etaP = times_eta(s, P);
        PointFn h1 = tilde_H(s, etaP);
        for (double x : xs) {
            cplx p = s.point(x);
            cplx vh1 = h1(p), vh2 = apply_tilde_H(s, h1, p), ep = etaP(p), pp = P(p);
            cplx lhs = vh2 - 2.0 * E * vh1 + E * E * ep;
            cplx rhs = cp.r0(E) * ep + cp.r1(E) * (vh1 - E * ep) + cp.rm1(E) * pp;
            double scale = tilde_H_scale(s, h1, p) + 2 * std::abs(E * vh1) + std::abs(E * E * ep) +
                           std::abs(cp.r0(E) * ep) + std::abs(cp.r1(E)) * (std::abs(vh1) + std::abs(E * ep)) +
                           std::abs(cp.rm1(E) * pp);
            w.add(std::abs(lhs - rhs) / scale);
        }
    }
    b.add("closure.on_levels", {0, cfg.n_max}, w, 1e-9);

    const double r02 = cp.R0[2], r01 = cp.R0[1], r00 = cp.R0[0];
    const double r11 = cp.R1[1], r10 = cp.R1[0];
    const double m2 = cp.Rm1[2], m1 = cp.Rm1[1], m0 = cp.Rm1[0];
    Worst c1, c1p, c2, c2p, c3, cpp;
    for (double x : xs) {
        cplx p = s.point(x);
        cplx e = s.eta(p), em = s.eta(s.shift(p, 1)), ep = s.eta(s.shift(p, -1));
        cplx emm = s.eta(s.shift(p, 2)), epp = s.eta(s.shift(p, -2));
        // conjugates of values at real x
        cplx V = s.V(p), Vs = std::conj(V);
        cplx Vm = s.V(s.shift(p, 1)), Vp = s.V(s.shift(p, -1));
        cplx Vms = std::conj(Vm), Vps = std::conj(Vp);
        auto resid = [](cplx l, cplx r, double scale) { return std::abs(l - r) / std::max(scale, 1e-300); };

        cplx l = emm - 2.0 * em + e, r = r02 * e + m2 + r11 * (em - e);
        c1.add(resid(l, r, std::abs(emm) + 2 * std::abs(em) + std::abs(e) + std::abs(r02 * e) + std::abs(m2) +
                               std::abs(r11) * (std::abs(em) + std::abs(e))));
        l = epp - 2.0 * ep + e;
        r = r02 * e + m2 + r11 * (ep - e);
        c1p.add(resid(l, r, std::abs(epp) + 2 * std::abs(ep) + std::abs(e) + std::abs(r02 * e) + std::abs(m2) +
                                std::abs(r11) * (std::abs(ep) + std::abs(e))));

        auto second = [&](cplx d, cplx A, cplx B, cplx C, cplx D) {
            cplx lhs = d * (A + B - C - D);
            cplx rhs = -(r02 * e + m2) * (A + B + C + D) - r11 * d * (A + B) + r01 * e + m1 + r10 * d;
            double scale = std::abs(d) * (std::abs(A) + std::abs(B) + std::abs(C) + std::abs(D)) +
                           std::abs(r02 * e + m2) * (std::abs(A) + std::abs(B) + std::abs(C) + std::abs(D)) +
                           std::abs(r11 * d) * (std::abs(A) + std::abs(B)) + std::abs(r01 * e) + std::abs(m1) +
                           std::abs(r10 * d);
            return resid(lhs, rhs, scale);
        };
        c2.add(second(em - e, Vm, Vps, V, Vs));
        c2p.add(second(ep - e, Vms, Vp, Vs, V));

        cplx X = V * Vps, Y = Vs * Vp;
        cplx lhs3 = 2.0 * (e - em) * X + 2.0 * (e - ep) * Y;
        cplx rhs3 = (r02 * e + m2) * (X + Y + (V + Vs) * (V + Vs)) + r11 * (em - e) * X + r11 * (ep - e) * Y -
                    (r01 * e + m1) * (V + Vs) + r00 * e + m0;
        double sc3 = 2 * std::abs((e - em) * X) + 2 * std::abs((e - ep) * Y) +
                     std::abs(r02 * e + m2) * (std::abs(X) + std::abs(Y) + std::norm(std::abs(V) + std::abs(Vs))) +
                     std::abs(r11) * (std::abs((em - e) * X) + std::abs((ep - e) * Y)) +
                     std::abs(r01 * e + m1) * (std::abs(V) + std::abs(Vs)) + std::abs(r00 * e) + std::abs(m0);
        c3.add(resid(lhs3, rhs3, sc3));

        l = em - (2.0 + r11) * e + ep;
        cpp.add(resid(l, m2, std::abs(em) + std::abs((2.0 + r11) * e) + std::abs(ep) + std::abs(m2)));
    }
    b.add("closure.condition_shift_minus", {0, 0}, c1, 1e-9);
    b.add("closure.condition_shift_plus", {0, 0}, c1p, 1e-9);
    b.add("closure.condition_potential_minus", {0, 0}, c2, 1e-9);
    b.add("closure.condition_potential_plus", {0, 0}, c2p, 1e-9);
    b.add("closure.condition_quadratic", {0, 0}, c3, 1e-9);
    b.add("closure.second_difference", {0, 0}, cpp, 1e-9);
}

inline void suite_dual_closure(const System& s, const VerifyConfig& cfg, Builder& b) {
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    PointFn eta = [&s](cplx w) { return s.eta(w); };
    PointFn R1d = [&s](cplx w) { return (s.eta(s.shift(w, 1)) - s.eta(w)) + (s.eta(s.shift(w, -1)) - s.eta(w)); };
    PointFn R0d = [&s](cplx w) { return -(s.eta(s.shift(w, 1)) - s.eta(w)) * (s.eta(s.shift(w, -1)) - s.eta(w)); };
    Worst wst;
    for (int n = 0; n <= cfg.n_max; ++n) {
        PointFn f = level_fn(s, n);
        PointFn ef = [&](cplx w) { return eta(w) * f(w); };
        PointFn eef = [&](cplx w) { return eta(w) * eta(w) * f(w); };
        PointFn r0f = [&](cplx w) { return R0d(w) * f(w); };
        PointFn r1f = [&](cplx w) { return R1d(w) * f(w); };
        PointFn er1f = [&](cplx w) { return eta(w) * R1d(w) * f(w); };
        for (double x : xs) {
            cplx p = s.point(x), e = s.eta(p);
            cplx t1 = e * e * apply_tilde_H(s, f, p), t2 = -2.0 * e * apply_tilde_H(s, ef, p),
                 t3 = apply_tilde_H(s, eef, p);
            cplx u1 = apply_tilde_H(s, r0f, p), u2 = e * apply_tilde_H(s, r1f, p), u3 = -apply_tilde_H(s, er1f, p);
            cplx u4 = (s.V(p) + s.V_star(p)) * R0d(p) * f(p);
            double scale = std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(u1) + std::abs(u2) + std::abs(u3) +
                           std::abs(u4) + std::abs(e) * std::abs(e) * tilde_H_scale(s, f, p) +
                           tilde_H_scale(s, eef, p);
            wst.add(std::abs((t1 + t2 + t3) - (u1 + u2 + u3 + u4)) / scale);
        }
    }
    b.add("dual_closure.on_levels", {0, cfg.n_max}, wst, 1e-9);
}

inline void suite_shifts(const System& s, const VerifyConfig& cfg, Builder& b) {
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    int n_top = std::min(cfg.n_max, 8);
    auto s1 = s.shifted();
    Worst fw, bw, fb, rod;
    for (int n = 0; n <= n_top; ++n) {
        PointFn P = level_fn(s, n), Q = level_fn(*s1, n);
        double fn = s.f(n), bn = s.b_shift(n);
        for (double x : xs) {
            cplx p = s.point(x);
            cplx lhs = apply_forward_shift(s, P, p);
            cplx rhs = n > 0 ? fn * s1->P(n - 1, p) : cplx(0.0);
            double scale = (std::abs(P(s.shift(p, 0.5))) + std::abs(P(s.shift(p, -0.5)))) / std::abs(s.varphi(p));
            fw.add(rel_diff(lhs, rhs, scale));
            lhs = apply_backward_shift(s, Q, p);
            rhs = bn * s.P(n + 1, p);
            cplx w1 = s.shift(p, 0.5), w2 = s.shift(p, -0.5);
            scale = std::abs(s.V(p) * s.varphi(w1) * Q(w1)) + std::abs(s.V_star(p) * s.varphi(w2) * Q(w2));
            bw.add(rel_diff(lhs, rhs, scale));
        }
        if (n >= 1) fb.add(rel_diff(s.f(n) * s.b_shift(n - 1), s.energy(n)));
    }

    // B(lambda) B(lambda+delta) ... B(lambda+(n-1)delta) 1 = prod b_k(lambda+(n-1-k)delta) P_n(lambda)
    std::vector<std::unique_ptr<System>> chain;
    for (int k = 0; k < n_top; ++k) chain.push_back(s.shifted(k));
    for (int n = 0; n <= n_top; ++n) {
        PointFn g = [](cplx) { return cplx(1.0); };
        double pref = 1.0;
        for (int k = n - 1; k >= 0; --k) {
            g = backward_shift(*chain[k], g);
            pref *= chain[k]->b_shift(n - 1 - k);
        }
        for (double x : xs) {
            cplx p = s.point(x);
            rod.add(rel_diff(g(p), pref * s.P(n, p)));
        }
    }
    b.add("shift.forward", {0, n_top}, fw, 1e-9);
    b.add("shift.backward", {0, n_top}, bw, 1e-9);
    b.add("shift.energy_factorization", {1, n_top}, fb, 1e-9);
    b.add("shift.rodrigues_chain", {0, n_top}, rod, 1e-9);
}

inline void suite_ladder(const System& s, const VerifyConfig& cfg, Builder& b) {
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    int n_top = cfg.n_max - 1;
    Worst act, hc, comm, defc, qosc, aq;
    for (int n = 0; n <= n_top; ++n) {
        PointFn P = level_fn(s, n);
        auto [A, B, C] = s.ABC(n);
        auto ctx = make_ladder_context(s, n);
        double spread = std::abs(ctx.E_n_plus - ctx.E_n_minus);
        PointFn up = ladder(s, LadderSign::Plus, n, P), down = ladder(s, LadderSign::Minus, n, P);
        PointFn down_up = ladder(s, LadderSign::Minus, n + 1, up);
        PointFn up_down = ladder(s, LadderSign::Plus, n - 1, down);
        double db = (s.b_rec(n + 1) - s.b_rec(n)).real();
        for (double x : xs) {
            cplx p = s.point(x), e = s.eta(p), Pv = P(p);
            double scale = (tilde_H_scale(s, times_eta(s, P), p) + std::abs(ctx.E_n * e * Pv) +
                            std::abs(ctx.alpha_plus * e * Pv) + std::abs(ctx.alpha_minus * e * Pv) +
                            std::abs(ctx.Rm1_at_En * Pv) / std::min(std::abs(ctx.alpha_plus), std::abs(ctx.alpha_minus))) /
                           spread;
            act.add(rel_diff(up(p), A * s.P(n + 1, p), scale));
            if (n > 0) act.add(rel_diff(down(p), C * s.P(n - 1, p), scale));

            for (auto [fn, target] : {std::pair{&up, ctx.E_n_plus}, std::pair{&down, ctx.E_n_minus}}) {
                if (n == 0 && fn == &down) continue;
                cplx g = (*fn)(p);
                cplx lhs = apply_tilde_H(s, *fn, p) - ctx.E_n * g;
                hc.add(rel_diff(lhs, (target - ctx.E_n) * g, tilde_H_scale(s, *fn, p) + std::abs(ctx.E_n * g)));
            }

            cplx du = down_up(p), ud = n > 0 ? up_down(p) : cplx(0.0);
            comm.add(rel_diff(du - ud, db * Pv, std::abs(du) + std::abs(ud)));

            if (unit_q_spectrum(s.id())) {
                double q = s.q();
                PointFn HP = tilde_H(s, P);
                for (auto sign : {LadderSign::Plus, LadderSign::Minus}) {
                    if (n == 0 && sign == LadderSign::Minus) continue;
                    double k = sign == LadderSign::Plus ? 1.0 / q : q;
                    PointFn a = ladder(s, sign, n, P);
                    cplx lhs = apply_tilde_H(s, a, p) - k * apply_ladder(s, sign, n, HP, p);
                    cplx rhs = (k - 1.0) * a(p);
                    defc.add(rel_diff(lhs, rhs, tilde_H_scale(s, a, p) + k * std::abs(ctx.E_n * a(p))));
                }
            }
            if (s.id() == FamilyId::ContinuousQHermite || s.id() == FamilyId::ContinuousBigQHermite) {
                double q = s.q();
                cplx lhs = du - q * ud;
                qosc.add(rel_diff(lhs, 0.25 * (1.0 - q) * Pv, std::abs(du) + q * std::abs(ud)));
            }
            if (s.id() == FamilyId::ContinuousQHermite) {
                double q = s.q();
                PointFn BP = backward_shift(s, P), FP = forward_shift(s, P);
                cplx fb = apply_forward_shift(s, BP, p), bf = apply_backward_shift(s, FP, p);
                aq.add(rel_diff(fb - bf / q, (1.0 / q - 1.0) * Pv, std::abs(fb) + std::abs(bf) / q));
            }
        }
    }
    b.add("ladder.action", {0, n_top}, act, 1e-10);
    b.add("ladder.hamiltonian_commutator", {0, n_top}, hc, 1e-10);
    b.add("ladder.commutator", {0, n_top}, comm, 1e-10);
    if (unit_q_spectrum(s.id())) b.add("ladder.deformed_hamiltonian_commutator", {0, n_top}, defc, 1e-10);
    if (s.id() == FamilyId::ContinuousQHermite || s.id() == FamilyId::ContinuousBigQHermite)
        b.add("ladder.q_oscillator", {0, n_top}, qosc, 1e-10);
    if (s.id() == FamilyId::ContinuousQHermite) b.add("ladder.shift_q_oscillator", {0, n_top}, aq, 1e-10);
}

inline void suite_coherent(const System& s, const VerifyConfig& cfg, Builder& b) {
    double bound = cfg.coherent_alpha_bound.value_or(default_alpha_bound(s));
    std::vector<cplx> alphas = {0.6 * bound, 0.5 * bound * std::exp(0.9 * I), cplx(0.0, -0.3 * bound)};
    auto xs = s.sample_points(std::min(cfg.n_points, 8), cfg.seed);
    Worst ann, closed, sym;
    int N_top = 0;
    Diagnostics diag;
    for (auto alpha : alphas) {
        for (double x : xs) {
            auto ev = check_coherent(s, alpha, x, 60, &diag);
            N_top = std::max(N_top, ev.truncation_N);
            ann.add(ev.annihilation_residual);
            if (ev.closed_form) closed.add(rel_diff(ev.partial_sum, *ev.closed_form));
            if (s.id() == FamilyId::AlSalamChihara) {
                ParamSet sw = s.params();
                std::swap(sw.lambda[0], sw.lambda[1]);
                auto t = make_system(s.id(), sw, false);
                sym.add(rel_diff(*coherent_closed_form(s, alpha, x), *coherent_closed_form(*t, alpha, x)));
            }
        }
    }
    std::string note = "alpha bound " + std::to_string(bound);
    if (!diag.empty()) note += "; " + diag.warnings.front();
    b.add("coherent.annihilation_eigenvalue", {0, N_top}, ann, 1e-7, note);
    if (closed.samples) b.add("coherent.closed_form", {0, N_top}, closed, 1e-8, note);
    if (sym.samples) b.add("coherent.closed_form_symmetry", {0, 0}, sym, 1e-12);
}

inline void suite_orthogonality(const System& s, const VerifyConfig& cfg, Builder& b) {
    int n_top = std::min(cfg.n_max, 6);
    auto om = orthogonality_matrix(s, n_top);
    Worst d, o;
    d.value = om.max_diag_rel;
    d.samples = n_top + 1;
    o.value = om.max_offdiag_rel;
    o.samples = n_top * (n_top + 1) / 2;
    b.add("ortho.gram_diagonal", {0, n_top}, d, 1e-5);
    b.add("ortho.gram_offdiagonal", {0, n_top}, o, 1e-6);

    std::optional<double> golden;
    if (s.id() == FamilyId::ContinuousQHermite) golden = 2.0 * pi / q_pochhammer_inf(s.q(), s.q()).real();
    if (s.id() == FamilyId::MeixnerPollaczek) {
        double a = s.params().lambda[0].real(), phi = *s.params().phi;
        golden = 2.0 * pi * std::tgamma(2.0 * a) / std::pow(2.0 * std::sin(phi), 2.0 * a);
    }
    if (golden) {
        Worst g;
        g.add(std::abs(om.entries[0][0] - *golden) / *golden);
        b.add("ortho.h0_closed_form", {0, 0}, g, 1e-5);
    }
}

inline void suite_hermiticity(const System& s, const VerifyConfig& cfg, Builder& b) {
    std::mt19937_64 rng(cfg.seed + 17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto random_poly = [&](int deg) {
        std::vector<cplx> c(deg + 1);
        for (auto& v : c) v = {u(rng), u(rng)};
        return EtaPolynomial(c);
    };
    const std::pair<int, int> degrees[] = {{1, 2}, {2, 3}, {3, 5}, {4, 6}, {6, 6}};
    Worst w;
    for (auto [dp, dq] : degrees) w.add(hermiticity_check(s, random_poly(dp), random_poly(dq)).residual);
    b.add("hermiticity.random_pairs", {0, 6}, w, 1e-6);
}

inline void suite_spectrum(const System& s, const VerifyConfig& cfg, Builder& b) {
    Worst w;
    std::vector<std::unique_ptr<System>> chain;
    for (int k = 0; k < cfg.n_max; ++k) chain.push_back(s.shifted(k));
    for (int n = 0; n <= cfg.n_max; ++n) {
        double sum = 0, kap = 1.0;
        for (int k = 0; k < n; ++k, kap *= s.kappa()) sum += kap * chain[k]->energy(1);
        w.add(rel_diff(sum, s.energy(n)));
    }
    b.add("spectrum.generation", {0, cfg.n_max}, w, 1e-10);
}

inline void suite_number_operator(const System& s, const VerifyConfig& cfg, Builder& b) {
    guarded(b, "number_operator.inversion", {0, cfg.n_max}, 1e-9, [&] {
        auto r = check_number_operator(s, cfg.n_max);
        Worst w;
        w.value = r.max_residual;
        w.samples = r.samples_used;
        b.add(r.check_id, r.level_range, w, 1e-9);
    });
}

inline void suite_lambda_shift(const System& s, const VerifyConfig& cfg, Builder& b) {
    if (!has_lambda_shift(s)) return;
    auto xs = s.sample_points(cfg.n_points, cfg.seed);
    auto s1 = s.shifted();
    int n_top = std::min(cfg.n_max, 6);
    Worst X, Xd;
    const auto& a = s.params().lambda;
    for (int n = 0; n <= n_top; ++n) {
        cplx cX = 1.0, cXd = 1.0;
        if (s.id() == FamilyId::MeixnerPollaczek) {
            cX = 0.5;
            cXd = 0.25 * (double(n) + 2.0 * a[0]);
        } else {
            for (std::size_t j = 0; j < a.size(); ++j)
                for (std::size_t k = j + 1; k < a.size(); ++k) cXd *= double(n) + a[j] + a[k];
        }
        for (double x : xs) {
            cplx p = s.point(x);
            X.add(rel_diff(lambda_shift_X(s, level_fn(s, n), p), cX * s1->P(n, p)));
            Xd.add(rel_diff(lambda_shift_Xdag(s, level_fn(*s1, n), p), cXd * s.P(n, p)));
        }
    }
    b.add("lambda_shift.X", {0, n_top}, X, 1e-9);
    b.add("lambda_shift.X_dagger", {0, n_top}, Xd, 1e-9);
}

inline void suite_limit(const System& s, const VerifyConfig& cfg, Builder& b) {
    if (s.id() != FamilyId::Wilson) return;
    for (auto& r : check_limit_aw_wilson(s.params(), cfg.L_sequence, cfg.limit_level, cfg.limit_x)) {
        Worst w;
        w.value = r.max_residual;
        w.samples = r.samples_used;
        b.add(r.check_id, r.level_range, w, r.tolerance, r.note);
        b.last().sequence = r.sequence;
    }
}

}  // namespace detail

inline std::vector<CheckResult> run_suite(const std::string& suite_id, FamilyId family, const ParamSet& params,
                                          const VerifyConfig& cfg = {}) {
    if (cfg.n_max < 1 || cfg.n_max > kDegreeCap) throw DomainError("n_max must lie in [1, 30]");
    if (cfg.n_points < 1) throw DomainError("n_points must be positive");
    if (cfg.tol && !(*cfg.tol > 0)) throw DomainError("tol must be positive");
    auto sys = make_system(family, params);
    const System& s = *sys;
    detail::Builder b(s, cfg);
    using Fn = void (*)(const System&, const VerifyConfig&, detail::Builder&);
    static const std::vector<std::pair<std::string, Fn>> table = {
        {"dual_path", detail::suite_dual_path},
        {"eigen", detail::suite_eigen},
        {"shape_invariance", detail::suite_shape},
        {"closure", detail::suite_closure},
        {"dual_closure", detail::suite_dual_closure},
        {"shifts", detail::suite_shifts},
        {"ladder", detail::suite_ladder},
        {"coherent", detail::suite_coherent},
        {"orthogonality", detail::suite_orthogonality},
        {"hermiticity", detail::suite_hermiticity},
        {"limit", detail::suite_limit},
        {"number_operator", detail::suite_number_operator},
        {"spectrum", detail::suite_spectrum},
        {"lambda_shift", detail::suite_lambda_shift},
    };
    bool found = false;
    for (const auto& [id, fn] : table) {
        if (suite_id != "all" && suite_id != id) continue;
        found = true;
        try {
            fn(s, cfg, b);
        } catch (const Error& e) {
            b.add_error(id + ".error", {0, cfg.n_max}, 0.0, e.what());
        }
    }
    if (!found) throw ValidationError("unknown suite '" + suite_id + "'");
    return b.take();
}

inline nlohmann::json to_json(const CheckResult& r) {
    nlohmann::json j;
    j["check_id"] = r.check_id;
    j["family"] = std::string(to_string(r.family));
    j["params"] = params_to_json(r.family, r.params);
    j["level_range"] = {r.level_range.first, r.level_range.second};
    if (std::isfinite(r.max_residual))
        j["max_residual"] = r.max_residual;
    else
        j["max_residual"] = nullptr;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["samples_used"] = r.samples_used;
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.sequence.empty()) j["sequence"] = r.sequence;
    return j;
}

}  // namespace dqm
