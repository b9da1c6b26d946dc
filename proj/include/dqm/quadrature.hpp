#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "operators.hpp"

namespace dqm {

enum class QuadRule { DoubleExponential, GaussLegendreComposite };

struct QuadratureSpec {
    Interval interval = Interval::WholeLine;
    QuadRule rule = QuadRule::DoubleExponential;
    double abs_tol = 1e-10;
    double truncation_threshold = 1e-18;
    int max_levels = 12;
};

inline QuadratureSpec default_quadrature(Interval iv) {
    QuadratureSpec q;
    q.interval = iv;
    q.rule = iv == Interval::ZeroPi ? QuadRule::GaussLegendreComposite : QuadRule::DoubleExponential;
    return q;
}

struct QuadResult {
    std::vector<cplx> values;
    double error = 0;
    int evaluations = 0;
    int levels = 0;
};

// integrand(x, out) fills out[0..m); weight(x) >= 0 drives the truncation
using VectorIntegrand = std::function<void(double, std::vector<cplx>&)>;

namespace detail {

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double e = 0;
    for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
    return e;
}

inline double max_abs(const std::vector<cplx>& a) {
    double e = 0;
    for (auto v : a) e = std::max(e, std::abs(v));
    return e;
}

struct DeMap {
    Interval iv;
    // x(t) and dx/dt
    std::pair<double, double> operator()(double t) const {
        double s = 0.5 * pi * std::sinh(t), c = 0.5 * pi * std::cosh(t);
        if (iv == Interval::WholeLine) return {std::sinh(s), c * std::cosh(s)};
        double x = std::exp(s);
        return {x, c * x};
    }
};

inline QuadResult integrate_de(const VectorIntegrand& f, const std::function<double(double)>& weight, int m,
                               const QuadratureSpec& spec) {
    DeMap map{spec.interval};
    constexpr double t_max = 6.0;
    std::vector<cplx> buf(m);
    QuadResult r;
    double wmax = 0, fmax = 0;

    // trapezoid over nodes t = k h, visiting only the new odd-k nodes after the first level
    auto sweep = [&](double h, int stride, int offset, std::vector<cplx>& acc) {
        for (int dir : {+1, -1}) {
            int small = 0;
            for (int k = offset; k * h <= t_max; k += stride) {
                if (k == 0 && dir == -1) continue;
                double t = dir * k * h;
                auto [x, dx] = map(t);
                if (!std::isfinite(x) || !std::isfinite(dx) || dx == 0.0) break;
                double wj = weight(x) * dx;
                wmax = std::max(wmax, wj);
                if (wj <= 1e-30 * wmax || (spec.interval == Interval::HalfLine && x < 1e-6)) {
                    if (++small >= 4) break;
                    continue;
                }
                f(x, buf);
                ++r.evaluations;
                double fj = max_abs(buf) * dx;
                fmax = std::max(fmax, fj);
                for (int i = 0; i < m; ++i) acc[i] += buf[i] * dx;
                if (fj < spec.truncation_threshold * fmax) {
                    if (++small >= 4) break;
                } else {
                    small = 0;
                }
            }
        }
    };

    double h = 0.5;
    std::vector<cplx> sum(m, 0.0);
    sweep(h, 1, 0, sum);
    std::vector<cplx> prev(m);
    for (int i = 0; i < m; ++i) prev[i] = sum[i] * h;
    for (int level = 1; level <= spec.max_levels; ++level) {
        h *= 0.5;
        sweep(h, 2, 1, sum);
        std::vector<cplx> cur(m);
        for (int i = 0; i < m; ++i) cur[i] = sum[i] * h;
        r.error = max_abs_diff(cur, prev);
        r.values = cur;
        r.levels = level;
        if (level >= 3 && r.error <= spec.abs_tol * std::max(1.0, max_abs(cur))) return r;
        prev = std::move(cur);
    }
    throw ToleranceNotMet("double-exponential quadrature did not converge", r.error);
}

inline QuadResult integrate_gl(const VectorIntegrand& f, int m, const QuadratureSpec& spec) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const auto& xs = G::abscissa();
    const auto& ws = G::weights();
    std::vector<cplx> buf(m);
    QuadResult r;
    auto rule = [&](int panels) {
        std::vector<cplx> acc(m, 0.0);
        double width = pi / panels;
        for (int p = 0; p < panels; ++p) {
            double mid = (p + 0.5) * width, half = 0.5 * width;
            for (std::size_t j = 0; j < xs.size(); ++j) {
                for (int sgn : {+1, -1}) {
                    if (xs[j] == 0.0 && sgn < 0) continue;
                    f(mid + sgn * half * xs[j], buf);
                    ++r.evaluations;
                    for (int i = 0; i < m; ++i) acc[i] += buf[i] * (ws[j] * half);
                }
            }
        }
        return acc;
    };
    int panels = 4;
    auto prev = rule(panels);
    for (int level = 1; level <= spec.max_levels; ++level) {
        panels *= 2;
        auto cur = rule(panels);
        r.error = max_abs_diff(cur, prev);
        r.values = cur;
        r.levels = level;
        if (r.error <= spec.abs_tol * std::max(1.0, max_abs(cur))) return r;
        prev = std::move(cur);
    }
    throw ToleranceNotMet("composite Gauss-Legendre quadrature did not converge", r.error);
}

}  // namespace detail

inline QuadResult integrate(const VectorIntegrand& f, const std::function<double(double)>& weight, int m,
                            const QuadratureSpec& spec) {
    if (!(spec.abs_tol > 0)) throw DomainError("abs_tol must be positive");
    if (spec.rule == QuadRule::GaussLegendreComposite) {
        if (spec.interval != Interval::ZeroPi) throw DomainError("Gauss-Legendre rule is only wired for (0,pi)");
        return detail::integrate_gl(f, m, spec);
    }
    if (spec.interval == Interval::ZeroPi) throw DomainError("double-exponential rule needs an infinite interval");
    return detail::integrate_de(f, weight, m, spec);
}

using RealFn = std::function<cplx(double)>;

// (F, G) = int F(x)^* G(x) dx over the family interval
inline cplx inner_product(const System& s, const RealFn& F, const RealFn& G, QuadratureSpec spec) {
    spec.interval = s.spec().interval;
    auto weight = [&](double x) { return s.ground_state(x) * s.ground_state(x); };
    auto res = integrate([&](double x, std::vector<cplx>& out) { out[0] = weight(x) * std::conj(F(x)) * G(x); },
                         weight, 1, spec);
    return res.values[0];
}

inline cplx inner_product(const System& s, const RealFn& F, const RealFn& G) {
    return inner_product(s, F, G, default_quadrature(s.spec().interval));
}

struct OrthoMatrix {
    int n_max = 0;
    std::vector<std::vector<double>> entries;
    std::vector<double> expected_diag;
    double max_offdiag_rel = 0;
    double max_diag_rel = 0;
    double quad_error = 0;
};

inline OrthoMatrix orthogonality_matrix(const System& s, int n_max, QuadratureSpec spec) {
    if (n_max > 8) throw DomainError("orthogonality_matrix supports n_max <= 8");
    spec.interval = s.spec().interval;
    int dim = n_max + 1, m = dim * (dim + 1) / 2;
    std::vector<cplx> P(dim);
    auto integrand = [&](double x, std::vector<cplx>& out) {
        double w = s.ground_state(x);
        w *= w;
        cplx z = s.point(x);
        for (int n = 0; n < dim; ++n) P[n] = s.P(n, z);
        int k = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) out[k++] = w * std::conj(P[i]) * P[j];
    };
    auto weight = [&](double x) { return s.ground_state(x) * s.ground_state(x); };
    auto res = integrate(integrand, weight, m, spec);

    OrthoMatrix om;
    om.n_max = n_max;
    om.quad_error = res.error;
    om.entries.assign(dim, std::vector<double>(dim, 0.0));
    int k = 0;
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j) om.entries[i][j] = om.entries[j][i] = res.values[k++].real();
    double h0 = s.h0();
    for (int n = 0; n < dim; ++n) om.expected_diag.push_back(h0 / s.h0_over_hn(n));
    for (int i = 0; i < dim; ++i) {
        om.max_diag_rel =
            std::max(om.max_diag_rel, std::abs(om.entries[i][i] - om.expected_diag[i]) / om.expected_diag[i]);
        for (int j = i + 1; j < dim; ++j)
            om.max_offdiag_rel = std::max(
                om.max_offdiag_rel, std::abs(om.entries[i][j]) / std::sqrt(om.expected_diag[i] * om.expected_diag[j]));
    }
    return om;
}

inline OrthoMatrix orthogonality_matrix(const System& s, int n_max = 6) {
    return orthogonality_matrix(s, n_max, default_quadrature(s.spec().interval));
}

struct HermiticityResult {
    cplx g_Hf, Hg_f;
    double residual = 0;
};

// (g, H f) against (H g, f) with f = phi0 P, g = phi0 Q
inline HermiticityResult hermiticity_check(const System& s, const EtaPolynomial& P, const EtaPolynomial& Q,
                                           QuadratureSpec spec) {
    if (P.degree() > 6 || Q.degree() > 6) throw DomainError("hermiticity_check supports degree <= 6");
    spec.interval = s.spec().interval;
    auto integrand = [&](double x, std::vector<cplx>& out) {
        double w = s.ground_state(x);
        w *= w;
        cplx z = s.point(x), e = s.eta(z);
        out[0] = w * std::conj(Q(e)) * apply_tilde_H(s, P, x);
        out[1] = w * std::conj(apply_tilde_H(s, Q, x)) * P(e);
    };
    auto weight = [&](double x) { return s.ground_state(x) * s.ground_state(x); };
    auto res = integrate(integrand, weight, 2, spec);
    HermiticityResult h{res.values[0], res.values[1], 0};
    double scale = std::max(std::abs(h.g_Hf), std::abs(h.Hg_f));
    h.residual = scale > 0 ? std::abs(h.g_Hf - h.Hg_f) / scale : 0.0;
    return h;
}

inline HermiticityResult hermiticity_check(const System& s, const EtaPolynomial& P, const EtaPolynomial& Q) {
    return hermiticity_check(s, P, Q, default_quadrature(s.spec().interval));
}

}  // namespace dqm
