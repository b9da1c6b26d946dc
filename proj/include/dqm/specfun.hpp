#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_complex.hpp>

#include "errors.hpp"

namespace dqm {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double pi = std::numbers::pi;

struct SeriesTolerance {
    double rel_eps = 1e-15;
    int max_terms = 10000;
};

inline constexpr int kDegreeCap = 30;

// Neumaier compensated accumulator, applied componentwise
class CompensatedSum {
public:
    void add(cplx v) {
        add1(sum_re_, c_re_, v.real());
        add1(sum_im_, c_im_, v.imag());
    }
    cplx value() const { return {sum_re_ + c_re_, sum_im_ + c_im_}; }

private:
    static void add1(double& s, double& c, double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double sum_re_ = 0, c_re_ = 0, sum_im_ = 0, c_im_ = 0;
};

inline void check_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0,1), got " + std::to_string(q));
}

inline cplx pochhammer(cplx a, int n) {
    cplx r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + double(k);
    return r;
}

inline cplx q_pochhammer(cplx a, double q, int n) {
    check_q(q);
    cplx r = 1.0;
    double qk = 1.0;
    for (int k = 0; k < n; ++k, qk *= q) r *= 1.0 - a * qk;
    return r;
}

inline cplx q_pochhammer_inf(cplx a, double q, SeriesTolerance tol = {}) {
    check_q(q);
    cplx r = 1.0;
    cplx t = a;
    for (int k = 0; k < tol.max_terms; ++k) {
        if (std::abs(t) < tol.rel_eps) return r;
        r *= 1.0 - t;
        t *= q;
    }
    throw ConvergenceError("q_pochhammer_inf: max_terms exceeded");
}

inline cplx q_pochhammer_inf(const std::vector<cplx>& as, double q, SeriesTolerance tol = {}) {
    cplx r = 1.0;
    for (auto a : as) r *= q_pochhammer_inf(a, q, tol);
    return r;
}

namespace detail {

inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// log sin(w) without overflow for large |Im w|
inline cplx log_sin(cplx w) {
    if (w.imag() > 0)
        return -I * w + std::log((std::exp(2.0 * I * w) - 1.0) / (2.0 * I));
    return I * w + std::log((1.0 - std::exp(-2.0 * I * w)) / (2.0 * I));
}

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

}  // namespace detail

inline cplx log_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw PoleError("gamma pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5)
        return std::log(pi) - detail::log_sin(pi * z) - log_gamma(1.0 - z);
    z -= 1.0;
    cplx x = detail::kLanczos[0];
    for (std::size_t i = 1; i < detail::kLanczos.size(); ++i) x += detail::kLanczos[i] / (z + double(i));
    cplx t = z + detail::kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

inline cplx complex_gamma(cplx z) {
    if (detail::is_nonpositive_integer(z))
        throw PoleError("gamma pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
    return std::exp(log_gamma(z));
}

// log |Gamma(z)|, overflow free
inline double log_abs_gamma(cplx z) { return log_gamma(z).real(); }

inline cplx hypergeometric_F(const std::vector<cplx>& num, const std::vector<cplx>& den, cplx z, int n_terms,
                             Diagnostics* diag = nullptr) {
    if (n_terms > kDegreeCap) warn(diag, "hypergeometric_F: more than 30 terms, cancellation possible");
    CompensatedSum s;
    cplx t = 1.0;
    for (int k = 0; k <= n_terms; ++k) {
        s.add(t);
        if (k == n_terms) break;
        cplx ratio = z / double(k + 1);
        for (auto a : num) ratio *= a + double(k);
        if (ratio == 0.0) break;
        for (auto b : den) {
            cplx d = b + double(k);
            if (d == 0.0) throw SingularityError("hypergeometric_F: denominator Pochhammer vanishes");
            ratio /= d;
        }
        t *= ratio;
    }
    return s.value();
}

inline cplx basic_hypergeometric_phi(const std::vector<cplx>& num, const std::vector<cplx>& den, double q, cplx z,
                                     int n_terms, Diagnostics* diag = nullptr) {
    check_q(q);
    if (n_terms > kDegreeCap) warn(diag, "basic_hypergeometric_phi: more than 30 terms, cancellation possible");
    const int e = 1 + int(den.size()) - int(num.size());
    CompensatedSum s;
    cplx t = 1.0;
    double qk = 1.0;
    for (int k = 0; k <= n_terms; ++k, qk *= q) {
        s.add(t);
        if (k == n_terms) break;
        cplx ratio = z / (1.0 - qk * q);
        for (auto a : num) ratio *= 1.0 - a * qk;
        if (ratio == 0.0) break;
        for (auto b : den) {
            cplx d = 1.0 - b * qk;
            if (d == 0.0) throw SingularityError("basic_hypergeometric_phi: denominator q-Pochhammer vanishes");
            ratio /= d;
        }
        if (e != 0) ratio *= std::pow(-qk, double(e));
        t *= ratio;
    }
    return s.value();
}

// non-terminating sums inside the disc of convergence
inline cplx hypergeometric_series(const std::vector<cplx>& num, const std::vector<cplx>& den, cplx z,
                                  SeriesTolerance tol = {}) {
    CompensatedSum s;
    cplx t = 1.0;
    int small = 0;
    for (int k = 0; k < tol.max_terms; ++k) {
        s.add(t);
        if (std::abs(t) <= tol.rel_eps * std::abs(s.value())) {
            if (++small >= 3) return s.value();
        } else {
            small = 0;
        }
        cplx ratio = z / double(k + 1);
        for (auto a : num) ratio *= a + double(k);
        if (ratio == 0.0) return s.value();
        for (auto b : den) ratio /= b + double(k);
        t *= ratio;
    }
    throw ConvergenceError("hypergeometric_series: max_terms exceeded");
}

inline cplx basic_hypergeometric_series(const std::vector<cplx>& num, const std::vector<cplx>& den, double q, cplx z,
                                        SeriesTolerance tol = {}) {
    check_q(q);
    const int e = 1 + int(den.size()) - int(num.size());
    CompensatedSum s;
    cplx t = 1.0;
    double qk = 1.0;
    int small = 0;
    for (int k = 0; k < tol.max_terms; ++k, qk *= q) {
        s.add(t);
        if (std::abs(t) <= tol.rel_eps * std::abs(s.value())) {
            if (++small >= 3) return s.value();
        } else {
            small = 0;
        }
        cplx ratio = z / (1.0 - qk * q);
        for (auto a : num) ratio *= 1.0 - a * qk;
        if (ratio == 0.0) return s.value();
        for (auto b : den) ratio /= 1.0 - b * qk;
        if (e != 0) ratio *= std::pow(-qk, double(e));
        t *= ratio;
    }
    throw ConvergenceError("basic_hypergeometric_series: max_terms exceeded");
}

inline cplx q_gamma(cplx z, double q, SeriesTolerance tol = {}) {
    check_q(q);
    cplx qz = std::exp(z * std::log(q));
    return q_pochhammer_inf(q, q, tol) / q_pochhammer_inf(qz, q, tol) * std::pow(cplx(1.0 - q), 1.0 - z);
}

// extended precision kernels for terminating sums with heavy cancellation
namespace mp {

template <unsigned Digits>
using complex_n = boost::multiprecision::number<
    boost::multiprecision::complex_adaptor<boost::multiprecision::cpp_bin_float<Digits>>,
    boost::multiprecision::et_off>;
using complex50 = complex_n<50>;
using complex200 = complex_n<200>;
template <class C>
using real_t = typename boost::multiprecision::component_type<C>::type;

template <class C>
C lift(cplx v) {
    return C(v.real(), v.imag());
}
template <class C>
cplx lower(const C& v) {
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

template <class C>
C pochhammer(const C& a, int n) {
    C r(1);
    for (int k = 0; k < n; ++k) r *= a + k;
    return r;
}

template <class C>
C q_pochhammer(const C& a, const real_t<C>& q, int n) {
    C r(1);
    real_t<C> qk(1);
    for (int k = 0; k < n; ++k, qk *= q) r *= C(1) - a * qk;
    return r;
}

template <class C>
C hypergeometric_F(const std::vector<C>& num, const std::vector<C>& den, const C& z, int n_terms) {
    C s(0), t(1);
    for (int k = 0; k <= n_terms; ++k) {
        s += t;
        if (k == n_terms) break;
        C ratio = z / (k + 1);
        for (const auto& a : num) ratio *= a + k;
        if (ratio == C(0)) break;
        for (const auto& b : den) {
            C d = b + k;
            if (d == C(0)) throw SingularityError("hypergeometric_F: denominator Pochhammer vanishes");
            ratio /= d;
        }
        t *= ratio;
    }
    return s;
}

template <class C>
C basic_hypergeometric_phi(const std::vector<C>& num, const std::vector<C>& den, const real_t<C>& q, const C& z,
                           int n_terms) {
    const int e = 1 + int(den.size()) - int(num.size());
    C s(0), t(1);
    real_t<C> qk(1);
    for (int k = 0; k <= n_terms; ++k, qk *= q) {
        s += t;
        if (k == n_terms) break;
        C ratio = z / (C(1) - qk * q);
        for (const auto& a : num) ratio *= C(1) - a * qk;
        if (ratio == C(0)) break;
        for (const auto& b : den) {
            C d = C(1) - b * qk;
            if (d == C(0)) throw SingularityError("basic_hypergeometric_phi: denominator q-Pochhammer vanishes");
            ratio /= d;
        }
        for (int j = 0; j < std::abs(e); ++j) ratio *= e > 0 ? real_t<C>(-qk) : real_t<C>(-1 / qk);
        t *= ratio;
    }
    return s;
}

// picks the working precision from an estimate of the decimal digits lost
template <class F>
cplx with_precision(double lost_digits, Diagnostics* diag, F&& f) {
    if (lost_digits + 17 <= 50) return lower(f(complex50{}));
    if (lost_digits + 17 > 200) warn(diag, "series cancellation exceeds 200 working digits");
    return lower(f(complex200{}));
}

}  // namespace mp

}  // namespace dqm
