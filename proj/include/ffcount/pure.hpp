#pragma once

// Semiprimitive ("pure") Gauss sums and the closed form for the power sums
// S(u,d) = sum over x in F_q* of psi(u*x^d).
//
// An exponent d >= 3 is admissible for F_q, q = p^m, when d | q-1 and there
// is an r with 2r | m and d | p^r + 1. With r minimal and h = m/(2r), every
// Gauss sum of a character of order dividing d collapses to an exact signed
// power of p:
//
//   G(eta_d^j) = sqrt(q) * (-1)^(j*h + h + 1)   if 2 | d and (p^r+1)/d is odd
//   G(eta_d^j) = sqrt(q) * (-1)^(h + 1)         otherwise
//
// which in turn makes S(u,d) two-valued: C1 on one coset of the d-th powers
// and C2 everywhere else, with C1 + (d-1)*C2 = -d.

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ffcount/gf.hpp"

namespace ffcount {

enum class PureCase {
    EvenDOddQuotient,  // 2 | d and (p^r+1)/d odd: Gauss sums alternate in j
    Other,             // constant in j
};

struct Admissibility {
    const FieldCtx* ctx = nullptr;
    std::uint64_t d = 0;
    std::uint32_t r = 0;  // smallest r >= 1 with 2r | m and d | p^r + 1
    std::uint32_t h = 0;  // m / (2r)
    PureCase parity_case = PureCase::Other;
    int sign = 1;         // value of eta_d on the C1 coset: -1 only for
                          // EvenDOddQuotient with h odd
    std::uint64_t sqrt_q = 0;  // p^(m/2), exact (m is even here)
};

enum class InadmissibleReason {
    DoesNotDivideGroupOrder,  // d does not divide q-1
    NoSuitableR,              // no r with 2r | m and d | p^r + 1
};

struct AdmissibilityCheck {
    std::optional<Admissibility> cert;
    InadmissibleReason reason = InadmissibleReason::NoSuitableR;
    bool admissible() const { return cert.has_value(); }
};

inline AdmissibilityCheck check_admissible(const FieldCtx& F, std::uint64_t d) {
    if (d < 3) throw std::invalid_argument("exponent d must be >= 3");
    AdmissibilityCheck out;
    if ((F.q() - 1) % d != 0) {
        out.reason = InadmissibleReason::DoesNotDivideGroupOrder;
        return out;
    }
    const std::uint64_t p = F.p();
    const std::uint32_t m = F.m();
    for (std::uint32_t r = 1; 2 * r <= m; ++r) {
        if (m % (2 * r) != 0) continue;
        std::uint64_t pr = 1;
        for (std::uint32_t i = 0; i < r; ++i) pr *= p;  // pr <= sqrt(q)
        if ((pr + 1) % d != 0) continue;

        Admissibility adm;
        adm.ctx = &F;
        adm.d = d;
        adm.r = r;
        adm.h = m / (2 * r);
        const std::uint64_t quotient = (pr + 1) / d;
        const bool even_d_odd_quotient = (d % 2 == 0) && (quotient % 2 == 1);
        adm.parity_case = even_d_odd_quotient ? PureCase::EvenDOddQuotient : PureCase::Other;
        adm.sign = (even_d_odd_quotient && adm.h % 2 == 1) ? -1 : 1;
        adm.sqrt_q = 1;
        for (std::uint32_t i = 0; i < m / 2; ++i) adm.sqrt_q *= p;
        out.cert = adm;
        return out;
    }
    out.reason = InadmissibleReason::NoSuitableR;
    return out;
}

// Exact value of G(eta_d^j). For j = 0 mod d this is the trivial character,
// whose definitional sum is -1.
inline std::int64_t pure_gauss_sum(const Admissibility& adm, std::uint64_t j) {
    j %= adm.d;
    if (j == 0) return -1;
    std::uint32_t exp = adm.h + 1;
    if (adm.parity_case == PureCase::EvenDOddQuotient) exp += std::uint32_t(j % 2) * adm.h;
    const std::int64_t mag = static_cast<std::int64_t>(adm.sqrt_q);
    return (exp % 2 == 0) ? mag : -mag;
}

// The two values taken by S(u,d) over u in F_q*.
inline std::int64_t c1(const Admissibility& adm) {
    const std::int64_t sq = static_cast<std::int64_t>(adm.sqrt_q);
    const std::int64_t signed_sq = (adm.h % 2 == 0) ? sq : -sq;
    return -1 - signed_sq * static_cast<std::int64_t>(adm.d - 1);
}

inline std::int64_t c2(const Admissibility& adm) {
    const std::int64_t sq = static_cast<std::int64_t>(adm.sqrt_q);
    const std::int64_t signed_sq = (adm.h % 2 == 0) ? sq : -sq;
    return -1 + signed_sq;
}

// Whether u lies in the C1 coset, decided on integers: eta_d(u) equals the
// admissibility sign iff dlog(u) mod d is 0 (sign +1) or d/2 (sign -1).
inline bool s_class_is_c1(const Admissibility& adm, std::uint32_t dlog_u) {
    const std::uint64_t k = dlog_u % adm.d;
    if (adm.sign == 1) return k == 0;
    return k == adm.d / 2;  // sign -1 occurs only with d even
}

// S(u,d) = sum over x in F_q* of psi(u*x^d), u nonzero.
inline std::int64_t s_closed_form(const Admissibility& adm, FieldElement u) {
    if (u.enc == 0) throw std::invalid_argument("S(u,d) requires nonzero u");
    return s_class_is_c1(adm, adm.ctx->dlog(u)) ? c1(adm) : c2(adm);
}

}  // namespace ffcount
