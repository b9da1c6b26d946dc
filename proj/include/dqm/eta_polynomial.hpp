#pragma once

#include <algorithm>
#include <vector>

#include "specfun.hpp"

namespace dqm {

// polynomial in the sinusoidal coordinate, coeffs[k] multiplies eta^k
class EtaPolynomial {
public:
    EtaPolynomial() : coeffs_{cplx(0.0)} {}
    explicit EtaPolynomial(std::vector<cplx> c) : coeffs_(std::move(c)) {
        if (coeffs_.empty()) coeffs_.push_back(0.0);
        trim();
    }
    static EtaPolynomial constant(cplx c) { return EtaPolynomial({c}); }
    static EtaPolynomial monomial(int n, cplx c = 1.0) {
        std::vector<cplx> v(n + 1, 0.0);
        v[n] = c;
        return EtaPolynomial(std::move(v));
    }

    int degree() const { return int(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx leading() const { return coeffs_.back(); }
    cplx operator[](int k) const { return k < int(coeffs_.size()) ? coeffs_[k] : cplx(0.0); }

    cplx operator()(cplx eta) const {
        cplx r = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * eta + *it;
        return r;
    }

    EtaPolynomial times_eta() const {
        std::vector<cplx> v(coeffs_.size() + 1, 0.0);
        std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + 1);
        return EtaPolynomial(std::move(v));
    }

    friend EtaPolynomial operator+(const EtaPolynomial& a, const EtaPolynomial& b) {
        std::vector<cplx> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[int(k)] + b[int(k)];
        return EtaPolynomial(std::move(v));
    }
    friend EtaPolynomial operator*(cplx s, const EtaPolynomial& a) {
        std::vector<cplx> v = a.coeffs_;
        for (auto& c : v) c *= s;
        return EtaPolynomial(std::move(v));
    }
    friend EtaPolynomial operator-(const EtaPolynomial& a, const EtaPolynomial& b) { return a + (-1.0) * b; }

private:
    void trim() {
        while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    }
    std::vector<cplx> coeffs_;
};

}  // namespace dqm
