#pragma once

// Additive and multiplicative characters of F_q and numeric Gauss sums.

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ffcount/gf.hpp"

namespace ffcount {

using Cplx = std::complex<double>;

// e^(2*pi*i*k/n)
inline Cplx unit_root(std::uint64_t k, std::uint64_t n) {
    k %= n;
    return std::polar(1.0, 2.0 * std::numbers::pi * double(k) / double(n));
}

// Canonical additive character psi(x) = e^(2*pi*i*Tr(x)/p).
inline Cplx psi(const FieldCtx& F, FieldElement x) { return unit_root(F.trace(x), F.p()); }

inline Cplx psi_conj(const FieldCtx& F, FieldElement x) {
    return unit_root((F.p() - F.trace(x)) % F.p(), F.p());
}

// Multiplicative character of order dividing d: eta_d^j(g^k) = e^(2*pi*i*j*k/d)
// for the field generator g. Vanishes at 0 unless trivial, where it is 1.
class MultChar {
  public:
    MultChar(const FieldCtx& F, std::uint64_t order, std::uint64_t power = 1) : ctx_(&F) {
        if (order == 0) order = 1; // alias for the trivial character
        if ((F.q() - 1) % order != 0)
            throw std::invalid_argument("character order must divide q-1");
        order_ = order;
        power_ = power % order;
    }

    static MultChar trivial(const FieldCtx& F) { return MultChar(F, 1, 0); }

    const FieldCtx& ctx() const { return *ctx_; }
    std::uint64_t order() const { return order_; }
    std::uint64_t power() const { return power_; }
    bool is_trivial() const { return power_ == 0; }

    Cplx operator()(FieldElement x) const {
        if (x.enc == 0) return is_trivial() ? Cplx(1.0, 0.0) : Cplx(0.0, 0.0);
        return unit_root(power_ * std::uint64_t(ctx_->dlog(x)) % order_, order_);
    }

    MultChar conj() const { return MultChar(*ctx_, order_, (order_ - power_) % order_); }

  private:
    const FieldCtx* ctx_;
    std::uint64_t order_;
    std::uint64_t power_;
};

// Whether nonzero x is a d-th power in F_q*, decided on integers:
// x = g^k is a d-th power iff gcd(d, q-1) divides k.
inline bool is_dth_power(const FieldCtx& F, FieldElement x, std::uint64_t d) {
    if (x.enc == 0) throw std::invalid_argument("is_dth_power expects nonzero x");
    const std::uint64_t g = std::gcd(d, F.q() - 1);
    return F.dlog(x) % g == 0;
}

// G(chi) = sum over c in F_q* of psi(c) * chi(c), evaluated numerically.
// For the trivial character this definitional sum equals -1.
inline Cplx gauss_sum_numeric(const MultChar& chi) {
    const FieldCtx& F = chi.ctx();
    const std::uint64_t q = F.q(), p = F.p(), d = chi.order(), j = chi.power();
    std::vector<Cplx> proots(p);
    for (std::uint64_t t = 0; t < p; ++t) proots[t] = unit_root(t, p);
    std::vector<Cplx> droots(d);
    for (std::uint64_t t = 0; t < d; ++t) droots[t] = unit_root(t, d);
    Cplx acc(0.0, 0.0);
    for (std::uint64_t k = 0; k + 1 < q; ++k)
        acc += proots[F.trace(F.antilog(k))] * droots[j * k % d];
    return acc;
}

}  // namespace ffcount
