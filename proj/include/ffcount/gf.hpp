#pragma once

// Construction of small finite fields F_{p^m} with full log/antilog tables,
// plus element arithmetic, trace and discrete logarithm. Fields are built
// deterministically: the modulus is the monic irreducible polynomial of the
// requested degree with the smallest integer encoding, and the generator is
// the primitive element with the smallest encoding.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffcount {

// Element of F_{p^m} in the polynomial basis, packed as the integer
// sum c_i * p^i with every digit c_i in [0, p-1].
struct FieldElement {
    std::uint32_t enc = 0;

    friend constexpr bool operator==(FieldElement a, FieldElement b) { return a.enc == b.enc; }
    friend constexpr bool operator!=(FieldElement a, FieldElement b) { return a.enc != b.enc; }
    friend constexpr bool operator<(FieldElement a, FieldElement b) { return a.enc < b.enc; }
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense coefficient vectors over Z_p, little-endian, used only while
// building a field (irreducibility testing, bootstrap multiplication).
using ZpPoly = std::vector<std::uint32_t>;

inline void zp_trim(ZpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    ZpPoly c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t(a[i]) * b[j]) % p);
    }
    zp_trim(c);
    return c;
}

// Remainder of a modulo monic f.
inline ZpPoly zp_mod(ZpPoly a, const ZpPoly& f, std::uint64_t p) {
    zp_trim(a);
    const std::size_t df = f.size() - 1;
    while (a.size() > df) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::uint64_t sub = lead * f[i] % p;
            std::uint64_t cur = a[shift + i];
            a[shift + i] = static_cast<std::uint32_t>((cur + p - sub) % p);
        }
        zp_trim(a);
    }
    return a;
}

inline std::uint64_t zp_inv_scalar(std::uint64_t a, std::uint64_t p) {
    // Fermat, p prime.
    std::uint64_t r = 1, b = a % p, e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline ZpPoly zp_gcd(ZpPoly a, ZpPoly b, std::uint64_t p) {
    zp_trim(a);
    zp_trim(b);
    while (!b.empty()) {
        ZpPoly r = a;
        // make b monic before reducing
        ZpPoly bm = b;
        std::uint64_t inv = zp_inv_scalar(bm.back(), p);
        for (auto& c : bm) c = static_cast<std::uint32_t>(c * inv % p);
        r = zp_mod(std::move(r), bm, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline ZpPoly zp_powmod(const ZpPoly& base, std::uint64_t e, const ZpPoly& f, std::uint64_t p) {
    ZpPoly result{1};
    ZpPoly b = zp_mod(base, f, p);
    while (e) {
        if (e & 1) result = zp_mod(zp_mul(result, b, p), f, p);
        b = zp_mod(zp_mul(b, b, p), f, p);
        e >>= 1;
    }
    return result;
}

// Rabin's irreducibility test for monic f of degree m over Z_p:
// x^(p^m) == x mod f, and gcd(x^(p^(m/l)) - x, f) = 1 for each prime l | m.
inline bool zp_irreducible(const ZpPoly& f, std::uint64_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    const ZpPoly x{0, 1};
    // frob[i] = x^(p^i) mod f, computed by iterated p-th powers
    std::vector<ZpPoly> frob(m + 1);
    frob[0] = x;
    for (std::size_t i = 1; i <= m; ++i) frob[i] = zp_powmod(frob[i - 1], p, f, p);
    auto minus_x = [&](ZpPoly g) {
        if (g.size() < 2) g.resize(2, 0);
        g[1] = static_cast<std::uint32_t>((g[1] + p - 1) % p);
        zp_trim(g);
        return g;
    };
    if (!minus_x(frob[m]).empty()) return false;
    for (std::uint64_t l : distinct_prime_factors(m)) {
        ZpPoly g = zp_gcd(minus_x(frob[m / l]), f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

// A fully constructed field F_{p^m}. Immutable after construction; all
// operations are pure and safe to call concurrently.
class FieldCtx {
  public:
    static constexpr std::uint64_t kMaxQ = 1u << 20;

    FieldCtx(std::uint64_t p, std::uint32_t m,
             std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
        if (!detail::is_prime_u64(p)) throw std::invalid_argument("p must be prime");
        if (m == 0) throw std::invalid_argument("extension degree m must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > kMaxQ) throw std::invalid_argument("field too large: p^m exceeds 2^20");
        }
        p_ = p;
        m_ = m;
        q_ = q;
        if (modulus) {
            modulus_ = *modulus;
            validate_modulus();
        } else {
            modulus_ = find_smallest_irreducible();
        }
        build_tables();
        qm1_primes_ = detail::distinct_prime_factors(q_ - 1);
    }

    FieldCtx(const FieldCtx&) = delete;
    FieldCtx& operator=(const FieldCtx&) = delete;
    FieldCtx(FieldCtx&&) = default;
    FieldCtx& operator=(FieldCtx&&) = default;

    std::uint64_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    FieldElement generator() const { return gen_; }
    const std::vector<std::uint64_t>& qm1_prime_factors() const { return qm1_primes_; }

    FieldElement zero() const { return {0}; }
    FieldElement one() const { return {1}; }

    // Element of the prime subfield with value k mod p.
    FieldElement from_int(std::uint64_t k) const { return {static_cast<std::uint32_t>(k % p_)}; }

    FieldElement element(std::uint64_t enc) const {
        if (enc >= q_) throw std::invalid_argument("element encoding out of range");
        return {static_cast<std::uint32_t>(enc)};
    }

    FieldElement add(FieldElement a, FieldElement b) const {
        if (p_ == 2) return {a.enc ^ b.enc};
        if (!add_table_.empty()) return {add_table_[std::size_t(a.enc) * q_ + b.enc]};
        return {digitwise(a.enc, b.enc, /*subtract=*/false)};
    }

    FieldElement sub(FieldElement a, FieldElement b) const {
        if (p_ == 2) return {a.enc ^ b.enc};
        if (!add_table_.empty()) return add(a, neg(b));
        return {digitwise(a.enc, b.enc, /*subtract=*/true)};
    }

    FieldElement neg(FieldElement a) const { return {neg_table_[a.enc]}; }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.enc == 0 || b.enc == 0) return {0};
        std::uint64_t k = log_[a.enc] + std::uint64_t(log_[b.enc]);
        if (k >= q_ - 1) k -= q_ - 1;
        return {antilog_[k]};
    }

    FieldElement inv(FieldElement a) const {
        if (a.enc == 0) throw std::invalid_argument("inverse of zero");
        std::uint64_t k = (q_ - 1 - log_[a.enc]) % (q_ - 1);
        return {antilog_[k]};
    }

    FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

    FieldElement pow(FieldElement a, std::uint64_t e) const {
        if (a.enc == 0) return e == 0 ? one() : zero();
        std::uint64_t k = std::uint64_t(log_[a.enc]) * (e % (q_ - 1)) % (q_ - 1);
        return {antilog_[k]};
    }

    // Tr(a) = sum of a^(p^i), i = 0..m-1; always lands in the prime subfield.
    std::uint32_t trace(FieldElement a) const { return trace_table_[a.enc]; }

    // Index k in [0, q-2] with generator^k = a. dlog(1) = 0.
    std::uint32_t dlog(FieldElement a) const {
        if (a.enc == 0) throw std::invalid_argument("discrete log of zero");
        return log_[a.enc];
    }

    // generator^k with k reduced mod q-1.
    FieldElement antilog(std::uint64_t k) const { return {antilog_[k % (q_ - 1)]}; }

    std::string to_string(FieldElement a) const {
        if (a.enc == 0) return "0";
        return "g^" + std::to_string(log_[a.enc]);
    }

    // "p,m,c0 c1 ... cm"
    std::string field_desc() const {
        std::ostringstream os;
        os << p_ << ',' << m_ << ',';
        for (std::size_t i = 0; i < modulus_.size(); ++i) {
            if (i) os << ' ';
            os << modulus_[i];
        }
        return os.str();
    }

    bool same_field(const FieldCtx& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }

  private:
    std::uint64_t p_ = 0;
    std::uint32_t m_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    FieldElement gen_{0};
    std::vector<std::uint32_t> antilog_;   // size q-1
    std::vector<std::uint32_t> log_;       // size q, log_[0] unused
    std::vector<std::uint32_t> neg_table_; // size q
    std::vector<std::uint32_t> trace_table_;
    std::vector<std::uint32_t> add_table_; // q*q, only for small odd-p fields
    std::vector<std::uint64_t> qm1_primes_;

    static constexpr std::uint64_t kAddTableMaxQ = 2048;

    std::uint32_t digitwise(std::uint32_t a, std::uint32_t b, bool subtract) const {
        std::uint32_t out = 0, mult = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint64_t da = a % p_, db = b % p_;
            a /= p_;
            b /= p_;
            std::uint64_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
            out += static_cast<std::uint32_t>(d) * mult;
            mult *= static_cast<std::uint32_t>(p_);
        }
        return out;
    }

    detail::ZpPoly decode(std::uint32_t enc) const {
        detail::ZpPoly f;
        while (enc) {
            f.push_back(enc % p_);
            enc /= static_cast<std::uint32_t>(p_);
        }
        return f;
    }

    std::uint32_t encode(const detail::ZpPoly& f) const {
        std::uint32_t out = 0;
        for (std::size_t i = f.size(); i-- > 0;)
            out = out * static_cast<std::uint32_t>(p_) + f[i];
        return out;
    }

    void validate_modulus() {
        if (modulus_.size() != m_ + 1) throw std::invalid_argument("modulus must have degree m");
        if (modulus_[m_] != 1) throw std::invalid_argument("modulus must be monic");
        for (auto c : modulus_)
            if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
        if (!detail::zp_irreducible(modulus_, p_))
            throw std::invalid_argument("modulus is reducible over Z_p");
    }

    // Monic irreducible of degree m whose low-coefficient vector has the
    // smallest integer encoding sum c_i p^i.
    std::vector<std::uint32_t> find_smallest_irreducible() const {
        for (std::uint64_t k = 0; k < q_; ++k) {
            std::vector<std::uint32_t> f(m_ + 1, 0);
            std::uint64_t t = k;
            for (std::uint32_t i = 0; i < m_; ++i) {
                f[i] = static_cast<std::uint32_t>(t % p_);
                t /= p_;
            }
            f[m_] = 1;
            if (detail::zp_irreducible(f, p_)) return f;
        }
        throw std::logic_error("no irreducible polynomial found"); // unreachable
    }

    std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
        return encode(detail::zp_mod(detail::zp_mul(decode(a), decode(b), p_), modulus_, p_));
    }

    std::uint32_t slow_pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1, base = a;
        while (e) {
            if (e & 1) r = slow_mul(r, base);
            base = slow_mul(base, base);
            e >>= 1;
        }
        return r;
    }

    void build_tables() {
        // smallest-encoding primitive element
        const auto primes = detail::distinct_prime_factors(q_ - 1);
        std::uint32_t gen = 0;
        for (std::uint32_t cand = 1; cand < q_; ++cand) {
            bool primitive = true;
            for (std::uint64_t l : primes) {
                if (slow_pow(cand, (q_ - 1) / l) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                gen = cand;
                break;
            }
        }
        if (gen == 0) throw std::logic_error("no primitive element found"); // unreachable
        gen_ = {gen};

        antilog_.assign(q_ - 1, 0);
        log_.assign(q_, 0);
        std::uint32_t cur = 1;
        for (std::uint64_t k = 0; k < q_ - 1; ++k) {
            antilog_[k] = cur;
            log_[cur] = static_cast<std::uint32_t>(k);
            cur = slow_mul(cur, gen);
        }
        if (cur != 1) throw std::logic_error("generator order mismatch"); // unreachable

        neg_table_.assign(q_, 0);
        for (std::uint64_t e = 0; e < q_; ++e)
            neg_table_[e] = digitwise(0, static_cast<std::uint32_t>(e), /*subtract=*/true);

        if (p_ != 2 && q_ <= kAddTableMaxQ) {
            add_table_.assign(q_ * q_, 0);
            for (std::uint64_t a = 0; a < q_; ++a)
                for (std::uint64_t b = 0; b < q_; ++b)
                    add_table_[a * q_ + b] =
                        digitwise(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), false);
        }

        trace_table_.assign(q_, 0);
        for (std::uint64_t e = 0; e < q_; ++e) {
            FieldElement x{static_cast<std::uint32_t>(e)};
            FieldElement acc = x;
            FieldElement fr = x;
            for (std::uint32_t i = 1; i < m_; ++i) {
                fr = pow_nolog(fr, p_);
                acc = add_raw(acc, fr);
            }
            if (acc.enc >= p_) throw std::logic_error("trace not in prime subfield"); // unreachable
            trace_table_[e] = acc.enc;
        }
    }

    // helpers usable before/while tables exist
    FieldElement add_raw(FieldElement a, FieldElement b) const {
        if (p_ == 2) return {a.enc ^ b.enc};
        return {digitwise(a.enc, b.enc, false)};
    }
    FieldElement pow_nolog(FieldElement a, std::uint64_t e) const { return {slow_pow(a.enc, e)}; }
};

inline FieldCtx build_field(std::uint64_t p, std::uint32_t m,
                            std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    return FieldCtx(p, m, std::move(modulus));
}

// Parse "p,m" or "p,m,c0 c1 ... cm".
struct FieldDesc {
    std::uint64_t p = 0;
    std::uint32_t m = 0;
    std::optional<std::vector<std::uint32_t>> modulus;
};

inline FieldDesc parse_field_desc(const std::string& text) {
    FieldDesc d;
    std::istringstream is(text);
    std::string part;
    if (!std::getline(is, part, ',')) throw std::invalid_argument("bad field description");
    d.p = std::stoull(part);
    if (!std::getline(is, part, ',')) throw std::invalid_argument("bad field description");
    d.m = static_cast<std::uint32_t>(std::stoul(part));
    if (std::getline(is, part)) {
        std::istringstream cs(part);
        std::vector<std::uint32_t> coeffs;
        std::uint64_t c;
        while (cs >> c) coeffs.push_back(static_cast<std::uint32_t>(c));
        d.modulus = std::move(coeffs);
    }
    return d;
}

}  // namespace ffcount
