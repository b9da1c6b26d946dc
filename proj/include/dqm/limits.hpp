#pragma once

#include <string_view>

#include "family.hpp"

namespace dqm {

// Askey-Wilson at q = e^{-pi/L}, a_j = q^{a'_j}, x = pi x'/L, against Wilson with a'_j
enum class LimitQuantity { Energy, Potential, Polynomial, Phi0, Fn, Bn };

inline std::string_view to_string(LimitQuantity k) {
    switch (k) {
        case LimitQuantity::Energy: return "energy";
        case LimitQuantity::Potential: return "potential";
        case LimitQuantity::Polynomial: return "polynomial";
        case LimitQuantity::Phi0: return "phi0";
        case LimitQuantity::Fn: return "f_n";
        case LimitQuantity::Bn: return "b_n";
    }
    return "?";
}

inline std::unique_ptr<System> askey_wilson_near_one(const ParamSet& wilson, double L) {
    if (!(L > 0)) throw DomainError("L must be positive");
    double q = std::exp(-pi / L);
    ParamSet p;
    p.q = q;
    for (auto a : wilson.lambda) p.lambda.push_back(std::exp(a * std::log(q)));
    return make_system(FamilyId::AskeyWilson, p, false);
}

inline cplx aw_to_wilson_scaled(LimitQuantity k, const ParamSet& wilson, double L, int n = 1, double x_prime = 0.9) {
    validate_params(FamilyId::Wilson, wilson);
    auto aw = askey_wilson_near_one(wilson, L);
    double q = aw->q(), e = 1.0 - q;
    cplx z = std::exp(I * (pi * x_prime / L));
    switch (k) {
        case LimitQuantity::Energy: return aw->energy(n) / (e * e);
        case LimitQuantity::Potential: return aw->V(z) / (e * e);
        case LimitQuantity::Polynomial: return aw->P(n, z) / std::pow(e, 3 * n);
        case LimitQuantity::Phi0: {
            cplx s = 0;
            for (auto a : wilson.lambda) s += a;
            double pre = std::pow(q_pochhammer_inf(q, q).real(), 3) * std::pow(e, 3.0 - s.real());
            return pre * aw->ground_state(pi * x_prime / L);
        }
        case LimitQuantity::Fn: return aw->f(n) / (e * e);
        case LimitQuantity::Bn: return aw->b_shift(n);
    }
    return 0.0;
}

// the Wilson-side value each scaled quantity tends to
inline cplx wilson_limit_value(LimitQuantity k, const ParamSet& wilson, int n = 1, double x_prime = 0.9) {
    auto w = make_system(FamilyId::Wilson, wilson);
    switch (k) {
        case LimitQuantity::Energy: return w->energy(n);
        case LimitQuantity::Potential: return std::conj(w->V(x_prime));
        case LimitQuantity::Polynomial: return w->P(n, x_prime);
        case LimitQuantity::Phi0: return w->ground_state(x_prime);
        case LimitQuantity::Fn: return -w->f(n);
        case LimitQuantity::Bn: return -w->b_shift(n);
    }
    return 0.0;
}

inline double limit_deviation(LimitQuantity k, const ParamSet& wilson, double L, int n = 1, double x_prime = 0.9) {
    cplx a = aw_to_wilson_scaled(k, wilson, L, n, x_prime), b = wilson_limit_value(k, wilson, n, x_prime);
    double d = std::abs(a - b);
    return std::abs(b) > 0 ? d / std::abs(b) : d;
}

}  // namespace dqm
