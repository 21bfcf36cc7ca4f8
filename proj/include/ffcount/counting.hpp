#pragma once

// Root counting: exact closed forms for diagonal equations with one
// admissible exponent, the derived count for full polynomials *-equivalent
// to such diagonals, a semi-numeric additive-character path that works for
// any diagonal polynomial, a multiplicative-character (Gauss-sum vector)
// path that works for any sparse polynomial, and exhaustive brute-force
// oracles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "ffcount/chars.hpp"
#include "ffcount/gf.hpp"
#include "ffcount/poly.hpp"
#include "ffcount/pure.hpp"
#include "ffcount/zn_linalg.hpp"

namespace ffcount {

// A violated hypothesis of one of the counting theorems, or an exhausted
// enumeration budget. `reason` is a stable machine-readable slug.
class PreconditionError : public std::runtime_error {
  public:
    PreconditionError(std::string slug, const std::string& message)
        : std::runtime_error(message), reason(std::move(slug)) {}
    std::string reason;
};

enum class CountMethod {
    ClosedFormB0,
    ClosedFormBnz,
    FullTheorem,
    BruteForce,
    CharSum,
    GaussVector,
};

inline const char* method_name(CountMethod m) {
    switch (m) {
        case CountMethod::ClosedFormB0: return "closed_form_b0";
        case CountMethod::ClosedFormBnz: return "closed_form_bnz";
        case CountMethod::FullTheorem: return "full_theorem";
        case CountMethod::BruteForce: return "brute_force";
        case CountMethod::CharSum: return "char_sum";
        case CountMethod::GaussVector: return "gauss_vector";
    }
    return "?";
}

enum class Branch { None, EtaEq1, EtaNe1 };

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::None: return nullptr;
        case Branch::EtaEq1: return "eta_eq_1";
        case Branch::EtaNe1: return "eta_ne_1";
    }
    return nullptr;
}

struct CountResult {
    std::uint64_t count = 0;
    CountMethod method = CountMethod::BruteForce;
    Branch branch = Branch::None;
    bool star = false;
    // set by count_full when f is not syntactically full but the
    // zero-coordinate accounting was verified exhaustively
    bool off_torus_verified = false;
};

struct CountOptions {
    std::uint64_t brute_budget = 100'000'000;   // max points to enumerate
    std::uint64_t vector_budget = 10'000'000;   // max nullspace solutions
    unsigned threads = 1;                       // brute-force worker count
};

namespace detail {

inline __int128 checked_mul(__int128 a, __int128 b) {
    if (a == 0 || b == 0) return 0;
    constexpr __int128 lim = (~(unsigned __int128)0) >> 1;  // int128 max
    __int128 aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
    if (aa > lim / bb) throw PreconditionError("count_overflow", "intermediate value overflows");
    return a * b;
}

inline __int128 checked_add(__int128 a, __int128 b) {
    constexpr __int128 lim = (~(unsigned __int128)0) >> 1;
    if (a > 0 && b > 0 && a > lim - b)
        throw PreconditionError("count_overflow", "intermediate value overflows");
    if (a < 0 && b < 0 && a < -lim - b)
        throw PreconditionError("count_overflow", "intermediate value overflows");
    return a + b;
}

inline __int128 checked_pow(__int128 base, std::uint64_t e) {
    __int128 r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = checked_mul(r, base);
    return r;
}

inline std::uint64_t to_count(__int128 v) {
    if (v < 0) throw std::logic_error("negative count from closed form");
    if (v > (__int128)UINT64_MAX) throw PreconditionError("count_overflow", "count exceeds 64 bits");
    return static_cast<std::uint64_t>(v);
}

// Validated data for the single-exponent diagonal theorems.
struct DiagonalTheoremData {
    Admissibility adm;
    std::uint64_t s = 0;       // number of terms (active variables)
    std::uint32_t free_vars = 0;
    std::int64_t C1 = 0, C2 = 0;
};

inline DiagonalTheoremData validate_diagonal_theorem(const SparsePoly& g) {
    const FieldCtx& F = g.ctx();
    if (g.term_count() == 0)
        throw PreconditionError("empty_polynomial", "the equation has no terms");
    if (!g.is_diagonal())
        throw PreconditionError("not_diagonal",
                                "each term must touch exactly one distinct variable");
    auto prof = diagonal_profile(g);
    const std::uint64_t d = prof[0].second;
    for (const auto& ve : prof)
        if (ve.second != d)
            throw PreconditionError("exponents_differ",
                                    "all terms must share a single exponent d");
    if (d < 3)
        throw PreconditionError("d_not_admissible", "the shared exponent must be at least 3");
    auto chk = check_admissible(F, d);
    if (!chk.admissible()) {
        const char* why = chk.reason == InadmissibleReason::DoesNotDivideGroupOrder
                              ? "d does not divide q-1"
                              : "no r with 2r | m and d | p^r + 1";
        throw PreconditionError("d_not_admissible",
                                "d = " + std::to_string(d) + " is not admissible: " + why);
    }
    const std::uint64_t k1 = F.dlog(g.terms()[0].coeff) % d;
    for (const auto& t : g.terms())
        if (F.dlog(t.coeff) % d != k1)
            throw PreconditionError("coefficient_classes_differ",
                                    "all coefficients must lie in one eta_d class");
    DiagonalTheoremData out{*chk.cert, g.term_count(),
                            static_cast<std::uint32_t>(g.n_vars() - g.term_count()),
                            0, 0};
    out.C1 = c1(out.adm);
    out.C2 = c2(out.adm);
    return out;
}

// Closed-form core for b = 0 over the s active variables only.
inline __int128 diagonal_core_b0(const FieldCtx& F, const DiagonalTheoremData& t) {
    const __int128 q = F.q(), qm1 = F.q() - 1, d = t.adm.d;
    __int128 num = checked_add(checked_pow(qm1, t.s),
                               checked_mul(qm1 / d, checked_pow(t.C1, t.s)));
    num = checked_add(num, checked_mul(checked_mul(qm1 / d, d - 1), checked_pow(t.C2, t.s)));
    if (num % q != 0) throw std::logic_error("closed form numerator not divisible by q");
    return num / q;
}

// Closed-form core for b != 0; branch decided by d | dlog(a_1) - dlog(b).
inline __int128 diagonal_core_bnz(const FieldCtx& F, const DiagonalTheoremData& t,
                                  FieldElement a1, FieldElement b, Branch& branch_out) {
    const __int128 q = F.q(), qm1 = F.q() - 1, d = t.adm.d;
    const std::int64_t diff =
        (std::int64_t)F.dlog(a1) - (std::int64_t)F.dlog(b);
    const bool eta1 = ((diff % (std::int64_t)d) + (std::int64_t)d) % (std::int64_t)d == 0;
    branch_out = eta1 ? Branch::EtaEq1 : Branch::EtaNe1;
    const __int128 cbr = eta1 ? t.C1 : t.C2;
    __int128 diffpow = checked_add(checked_pow(t.C1, t.s), -checked_pow(t.C2, t.s));
    if (diffpow % d != 0) throw std::logic_error("C1^s - C2^s not divisible by d");
    __int128 num = checked_add(checked_pow(qm1, t.s), -checked_pow(t.C2, t.s));
    num = checked_add(num, checked_mul(cbr, diffpow / d));
    if (num % q != 0) throw std::logic_error("closed form numerator not divisible by q");
    return num / q;
}

}  // namespace detail

// N* of a diagonal equation with b = 0: all terms share one admissible
// exponent d and one eta_d coefficient class. Variables not touched by any
// term are free and contribute a factor (q-1) each.
inline CountResult count_star_diagonal_b0(const SparsePoly& g) {
    const FieldCtx& F = g.ctx();
    if (g.b().enc != 0)
        throw PreconditionError("constant_not_zero", "this path requires b = 0");
    auto t = detail::validate_diagonal_theorem(g);
    __int128 core = detail::diagonal_core_b0(F, t);
    __int128 total = detail::checked_mul(core, detail::checked_pow(F.q() - 1, t.free_vars));
    return {detail::to_count(total), CountMethod::ClosedFormB0, Branch::None, true, false};
}

// N* of a diagonal equation with b != 0, same hypotheses otherwise.
inline CountResult count_star_diagonal_bnz(const SparsePoly& g) {
    const FieldCtx& F = g.ctx();
    if (g.b().enc == 0)
        throw PreconditionError("constant_is_zero", "this path requires b != 0");
    auto t = detail::validate_diagonal_theorem(g);
    Branch br = Branch::None;
    __int128 core = detail::diagonal_core_bnz(F, t, g.terms()[0].coeff, g.b(), br);
    __int128 total = detail::checked_mul(core, detail::checked_pow(F.q() - 1, t.free_vars));
    return {detail::to_count(total), CountMethod::ClosedFormBnz, br, true, false};
}

inline CountResult count_star_diagonal(const SparsePoly& g) {
    return g.b().enc == 0 ? count_star_diagonal_b0(g) : count_star_diagonal_bnz(g);
}

namespace detail {

// Count roots of f over a product of per-variable value sets, by depth-first
// enumeration with per-term partial products.
inline std::uint64_t count_roots_over(const SparsePoly& f,
                                      const std::vector<const std::vector<std::uint32_t>*>& domains,
                                      std::size_t outer_lo, std::size_t outer_hi) {
    const FieldCtx& F = f.ctx();
    const std::uint32_t n = f.n_vars();
    const std::size_t s = f.term_count();
    const FieldElement target = f.b();

    std::vector<std::vector<FieldElement>> partial(n + 1, std::vector<FieldElement>(s));
    for (std::size_t j = 0; j < s; ++j) partial[0][j] = f.terms()[j].coeff;

    std::uint64_t hits = 0;
    auto step = [&](FieldElement acc, FieldElement x, std::uint32_t e) -> FieldElement {
        if (e == 0) return acc;
        return F.mul(acc, F.pow(x, e));
    };

    std::function<void(std::uint32_t)> walk = [&](std::uint32_t level) {
        const auto& dom = *domains[level];
        const std::size_t lo = level == 0 ? outer_lo : 0;
        const std::size_t hi = level == 0 ? outer_hi : dom.size();
        if (level + 1 == n) {
            for (std::size_t vi = lo; vi < hi; ++vi) {
                const FieldElement x{dom[vi]};
                FieldElement acc = F.zero();
                for (std::size_t j = 0; j < s; ++j)
                    acc = F.add(acc, step(partial[level][j], x, f.terms()[j].exps[level]));
                hits += acc == target;
            }
            return;
        }
        for (std::size_t vi = lo; vi < hi; ++vi) {
            const FieldElement x{dom[vi]};
            for (std::size_t j = 0; j < s; ++j)
                partial[level + 1][j] = step(partial[level][j], x, f.terms()[j].exps[level]);
            walk(level + 1);
        }
    };
    walk(0);
    return hits;
}

inline std::uint64_t count_roots_parallel(
    const SparsePoly& f, const std::vector<const std::vector<std::uint32_t>*>& domains,
    unsigned threads) {
    const std::size_t outer = domains[0]->size();
    if (threads <= 1 || outer < 2 * threads)
        return count_roots_over(f, domains, 0, outer);
    std::vector<std::uint64_t> sums(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t lo = outer * t / threads, hi = outer * (t + 1) / threads;
        pool.emplace_back(
            [&, t, lo, hi] { sums[t] = count_roots_over(f, domains, lo, hi); });
    }
    for (auto& th : pool) th.join();
    std::uint64_t total = 0;
    for (unsigned t = 0; t < threads; ++t) total += sums[t];  // fixed reduce order
    return total;
}

inline void check_point_budget(unsigned __int128 points, std::uint64_t budget) {
    if (points > budget)
        throw PreconditionError("budget_exceeded",
                                "enumeration would visit more points than the budget allows");
}

}  // namespace detail

// Exhaustive N(f) over F_q^n.
inline CountResult brute_force_total(const SparsePoly& f, const CountOptions& opts = {}) {
    const FieldCtx& F = f.ctx();
    unsigned __int128 points = 1;
    for (std::uint32_t i = 0; i < f.n_vars(); ++i) {
        points *= F.q();
        detail::check_point_budget(points, opts.brute_budget);
    }
    std::vector<std::uint32_t> all(F.q());
    for (std::uint64_t v = 0; v < F.q(); ++v) all[v] = static_cast<std::uint32_t>(v);
    std::vector<const std::vector<std::uint32_t>*> domains(f.n_vars(), &all);
    const std::uint64_t c = detail::count_roots_parallel(f, domains, opts.threads);
    return {c, CountMethod::BruteForce, Branch::None, false, false};
}

// Exhaustive N*(f) over (F_q*)^n.
inline CountResult brute_force_star(const SparsePoly& f, const CountOptions& opts = {}) {
    const FieldCtx& F = f.ctx();
    unsigned __int128 points = 1;
    for (std::uint32_t i = 0; i < f.n_vars(); ++i) {
        points *= F.q() - 1;
        detail::check_point_budget(points, opts.brute_budget);
    }
    std::vector<std::uint32_t> units(F.q() - 1);
    for (std::uint64_t k = 0; k + 1 < F.q(); ++k) units[k] = F.antilog(k).enc;
    std::vector<const std::vector<std::uint32_t>*> domains(f.n_vars(), &units);
    const std::uint64_t c = detail::count_roots_parallel(f, domains, opts.threads);
    return {c, CountMethod::BruteForce, Branch::None, true, false};
}

namespace detail {

// Roots of f with at least one zero coordinate, enumerated directly by
// fixing the first zero position. Cost: sum over i of (q-1)^i * q^(n-1-i).
inline std::uint64_t count_off_torus(const SparsePoly& f, std::uint64_t budget) {
    const FieldCtx& F = f.ctx();
    const std::uint32_t n = f.n_vars();
    std::vector<std::uint32_t> all(F.q()), units(F.q() - 1), zero{0};
    for (std::uint64_t v = 0; v < F.q(); ++v) all[v] = static_cast<std::uint32_t>(v);
    for (std::uint64_t k = 0; k + 1 < F.q(); ++k) units[k] = F.antilog(k).enc;

    unsigned __int128 points = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        unsigned __int128 p = 1;
        for (std::uint32_t a = 0; a < i; ++a) p *= F.q() - 1;
        for (std::uint32_t a = i + 1; a < n; ++a) p *= F.q();
        points += p;
    }
    check_point_budget(points, budget);

    std::uint64_t total = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        std::vector<const std::vector<std::uint32_t>*> domains(n);
        for (std::uint32_t a = 0; a < n; ++a)
            domains[a] = (a < i) ? &units : (a == i) ? &zero : &all;
        total += count_roots_over(f, domains, 0, domains[0]->size());
    }
    return total;
}

}  // namespace detail

// N(f) for f *-equivalent to a single-exponent diagonal witness g, via the
// off-torus accounting plus the diagonal closed forms. When f is not
// syntactically full, the accounting that fullness normally guarantees is
// instead verified exhaustively over the off-torus points (within budget).
inline CountResult count_full(const SparsePoly& f, const SparsePoly& g,
                              ConstantColumn cc = ConstantColumn::Auto,
                              const CountOptions& opts = {}) {
    const FieldCtx& F = f.ctx();
    if (f.term_count() == 0)
        throw PreconditionError("empty_polynomial", "the equation has no terms");
    if (f.term_count() != g.term_count())
        throw PreconditionError("not_star_equivalent",
                                "witness has a different number of terms");

    auto t = detail::validate_diagonal_theorem(g);
    if (t.s > f.n_vars())
        throw PreconditionError("s_exceeds_n",
                                "witness has more terms than f has variables");

    auto eq = star_equivalent(f, g, cc);
    if (!eq.equivalent)
        throw PreconditionError("not_star_equivalent",
                                "witness is not *-equivalent to f: " + eq.reason);

    bool verified = false;
    if (!f.is_full()) {
        std::uint64_t off;
        try {
            off = detail::count_off_torus(f, opts.brute_budget);
        } catch (const PreconditionError&) {
            throw PreconditionError(
                "not_full",
                "f has a term missing a variable and the zero-coordinate "
                "accounting is too large to verify exhaustively");
        }
        unsigned __int128 off_expected = 0;
        if (f.b().enc == 0) {
            unsigned __int128 qn = 1, qm1n = 1;
            for (std::uint32_t i = 0; i < f.n_vars(); ++i) {
                qn *= F.q();
                qm1n *= F.q() - 1;
            }
            off_expected = qn - qm1n;
        }
        if ((unsigned __int128)off != off_expected)
            throw PreconditionError(
                "not_full",
                "f has a term missing a variable and its roots with zero "
                "coordinates do not follow the full-polynomial accounting");
        verified = true;
    }

    const std::uint32_t n = f.n_vars();
    const std::uint64_t free_vars = n - t.s;
    Branch br = Branch::None;
    __int128 core;
    if (f.b().enc == 0) {
        core = detail::diagonal_core_b0(F, t);
    } else {
        core = detail::diagonal_core_bnz(F, t, g.terms()[0].coeff, f.b(), br);
    }
    __int128 total = detail::checked_mul(core, detail::checked_pow(F.q() - 1, free_vars));
    if (f.b().enc == 0) {
        __int128 qn = detail::checked_pow(F.q(), n);
        __int128 qm1n = detail::checked_pow(F.q() - 1, n);
        total = detail::checked_add(total, detail::checked_add(qn, -qm1n));
    }
    return {detail::to_count(total), CountMethod::FullTheorem, br, false, verified};
}

namespace detail {

// Round a numeric accumulator to the nearest integer; the residual policy
// rejects anything farther than min(0.49, 1e-3 * sqrt(#summands)).
inline __int128 round_with_residual(Cplx acc, std::uint64_t n_summands) {
    const double re = acc.real();
    const double rounded = std::nearbyint(re);
    const double tol =
        std::min(0.49, 1e-3 * std::sqrt(static_cast<double>(std::max<std::uint64_t>(n_summands, 1))));
    const double residual = std::hypot(re - rounded, acc.imag());
    if (residual > tol)
        throw PreconditionError("residual_exceeded",
                                "numeric accumulator is " + std::to_string(residual) +
                                    " away from an integer (tolerance " + std::to_string(tol) + ")");
    return static_cast<__int128>(static_cast<long long>(rounded));
}

}  // namespace detail

// N* of any diagonal equation by the additive-character sum: for each
// nonzero c the product of power sums S(c*a_j, d_j), each taken from the
// closed form when its exponent is admissible and evaluated numerically
// otherwise. Exponents need not be equal across terms.
inline CountResult count_star_charsum(const SparsePoly& g) {
    const FieldCtx& F = g.ctx();
    if (g.term_count() == 0)
        throw PreconditionError("empty_polynomial", "the equation has no terms");
    if (!g.is_diagonal())
        throw PreconditionError("not_diagonal",
                                "each term must touch exactly one distinct variable");
    const std::uint64_t q = F.q(), p = F.p();
    auto prof = diagonal_profile(g);
    const std::size_t s = g.term_count();

    std::vector<Cplx> proots(p);
    for (std::uint64_t t = 0; t < p; ++t) proots[t] = unit_root(t, p);

    // per term: reduced exponent d' = gcd(d_j, q-1), the closed form if
    // admissible, else a memo of S values indexed by dlog(u) mod d'
    struct TermPath {
        std::uint64_t d_red;
        std::uint32_t la;  // dlog of the coefficient
        bool closed;
        Admissibility adm{};
        std::vector<Cplx> memo;
        std::vector<bool> have;
    };
    std::vector<TermPath> paths(s);
    for (std::size_t j = 0; j < s; ++j) {
        const std::uint64_t dj = prof[j].second;
        TermPath tp;
        tp.d_red = std::gcd(dj, q - 1);
        tp.la = F.dlog(g.terms()[j].coeff);
        tp.closed = false;
        if (dj >= 3) {
            auto chk = check_admissible(F, dj);
            if (chk.admissible()) {
                tp.closed = true;
                tp.adm = *chk.cert;
            }
        }
        if (!tp.closed) {
            tp.memo.assign(tp.d_red, Cplx(0, 0));
            tp.have.assign(tp.d_red, false);
        }
        paths[j] = std::move(tp);
    }

    auto s_value = [&](TermPath& tp, std::uint64_t log_u) -> Cplx {
        if (tp.closed)
            return Cplx(double(s_class_is_c1(tp.adm, static_cast<std::uint32_t>(log_u % (q - 1)))
                                   ? c1(tp.adm)
                                   : c2(tp.adm)),
                        0);
        const std::uint64_t key = log_u % tp.d_red;
        if (!tp.have[key]) {
            // S(u, d) = d' * sum of psi(u * y) over the d'-th powers y
            Cplx acc(0, 0);
            for (std::uint64_t t = 0; t * tp.d_red < q - 1; ++t)
                acc += proots[F.trace(F.antilog(key + t * tp.d_red))];
            tp.memo[key] = acc * double(tp.d_red);
            tp.have[key] = true;
        }
        return tp.memo[key];
    };

    Cplx acc(0, 0);
    const bool has_b = g.b().enc != 0;
    for (std::uint64_t k = 0; k + 1 < q; ++k) {
        Cplx prod(1, 0);
        for (std::size_t j = 0; j < s; ++j) prod *= s_value(paths[j], k + paths[j].la);
        if (has_b) {
            const std::uint32_t tr = F.trace(F.mul(F.antilog(k), g.b()));
            prod *= proots[(p - tr) % p];
        }
        acc += prod;
    }

    __int128 ssum = detail::round_with_residual(acc, (q - 1) * s);
    __int128 num = detail::checked_add(detail::checked_pow(q - 1, s), ssum);
    if (num % (__int128)q != 0)
        throw PreconditionError("residual_exceeded",
                                "rounded character sum breaks divisibility by q");
    __int128 core = num / (__int128)q;
    __int128 total =
        detail::checked_mul(core, detail::checked_pow(q - 1, g.n_vars() - s));
    return {detail::to_count(total), CountMethod::CharSum, Branch::None, true, false};
}

// N* of any sparse equation by enumerating the nullspace of the augmented
// degree matrix (the constant, when nonzero, contributes the column
// (1,0,...,0) with coefficient -b) and summing products of numeric Gauss
// sums of powers of the canonical generator character.
inline CountResult count_star_gaussvec(const SparsePoly& f, const CountOptions& opts = {}) {
    const FieldCtx& F = f.ctx();
    const std::uint64_t q = F.q();
    const std::uint64_t qm1 = q - 1;
    const std::uint32_t n = f.n_vars();

    // term list for the expansion: monomials plus the constant term -b
    std::vector<std::uint32_t> la;  // dlog of each coefficient
    for (const auto& t : f.terms()) la.push_back(F.dlog(t.coeff));
    const bool has_b = f.b().enc != 0;
    if (has_b) la.push_back(F.dlog(F.neg(f.b())));
    const std::size_t s = la.size();

    ZnMatrix D(std::max<std::uint64_t>(qm1, 1), n + 1, s);
    for (std::size_t j = 0; j < f.term_count(); ++j) {
        D.set(0, j, 1);
        for (std::uint32_t i = 0; i < n; ++i)
            D.set(i + 1, j, static_cast<std::int64_t>(f.terms()[j].exps[i]));
    }
    if (has_b) D.set(0, f.term_count(), 1);

    auto ns = nullspace_mod(D);
    if (ns.solution_count > opts.vector_budget)
        throw PreconditionError("budget_exceeded",
                                "nullspace has more solutions than the vector budget");

    std::vector<Cplx> roots(qm1);
    for (std::uint64_t r = 0; r < qm1; ++r) roots[r] = unit_root(r, qm1);
    std::vector<Cplx> psi_alog(qm1);
    for (std::uint64_t t = 0; t < qm1; ++t) psi_alog[t] = psi(F, F.antilog(t));

    // lazy numeric Gauss sums of omega^k
    std::unordered_map<std::uint64_t, Cplx> gauss;
    auto gauss_of = [&](std::uint64_t k) -> Cplx {
        k %= qm1;
        if (k == 0) return Cplx(-1, 0);
        auto it = gauss.find(k);
        if (it != gauss.end()) return it->second;
        Cplx acc(0, 0);
        for (std::uint64_t t = 0; t < qm1; ++t) acc += psi_alog[t] * roots[k * t % qm1];
        gauss.emplace(k, acc);
        return acc;
    };

    Cplx acc(0, 0);
    std::uint64_t visited = 0;
    enumerate_nullspace(ns, opts.vector_budget, [&](const std::vector<std::int64_t>& v) {
        Cplx prod(1, 0);
        for (std::size_t j = 0; j < s; ++j) {
            const std::uint64_t vj = static_cast<std::uint64_t>(v[j]);
            prod *= roots[vj * la[j] % qm1];
            prod *= gauss_of((qm1 - vj) % qm1);
        }
        acc += prod;
        ++visited;
    });

    // N* = ((q-1)^n + (q-1)^(n+1-s) * acc) / q, kept exact by rounding the
    // (possibly scaled-down) accumulator to an integer first
    __int128 scaled;
    if (s <= std::size_t(n) + 1) {
        scaled = detail::checked_mul(detail::round_with_residual(acc, std::max<std::uint64_t>(visited, 1)),
                                     detail::checked_pow(qm1, n + 1 - s));
    } else {
        double div = 1.0;
        for (std::size_t i = 0; i < s - 1 - n; ++i) div *= double(qm1);
        scaled = detail::round_with_residual(acc / div, std::max<std::uint64_t>(visited, 1));
    }
    __int128 num = detail::checked_add(detail::checked_pow(qm1, n), scaled);
    if (num % (__int128)q != 0)
        throw PreconditionError("residual_exceeded",
                                "rounded Gauss-sum accumulation breaks divisibility by q");
    return {detail::to_count(num / (__int128)q), CountMethod::GaussVector, Branch::None, true,
            false};
}

}  // namespace ffcount
