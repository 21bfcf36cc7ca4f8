#pragma once

// Linear algebra over Z_n for degree matrices: Howell normal form (canonical
// for row spans), nullspaces of homogeneous systems via an integer Smith
// decomposition, and the *-equivalence decision for polynomial pairs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffcount/poly.hpp"

namespace ffcount {

// Dense matrix over Z_n with entries canonicalized to [0, n-1].
class ZnMatrix {
  public:
    ZnMatrix(std::uint64_t n_mod, std::size_t rows, std::size_t cols)
        : n_mod_(n_mod), rows_(rows), cols_(cols), e_(rows * cols, 0) {
        if (n_mod == 0) throw std::invalid_argument("modulus must be positive");
    }

    static ZnMatrix identity(std::uint64_t n_mod, std::size_t k) {
        ZnMatrix m(n_mod, k, k);
        for (std::size_t i = 0; i < k; ++i) m.set(i, i, 1);
        return m;
    }

    static ZnMatrix from_rows(std::uint64_t n_mod,
                              const std::vector<std::vector<std::int64_t>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows[0].size();
        ZnMatrix m(n_mod, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw std::invalid_argument("ragged row list");
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    std::uint64_t n_mod() const { return n_mod_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    void set(std::size_t r, std::size_t c, std::int64_t v) {
        std::int64_t n = static_cast<std::int64_t>(n_mod_);
        std::int64_t red = v % n;
        if (red < 0) red += n;
        e_[r * cols_ + c] = red;
    }

    friend bool operator==(const ZnMatrix& a, const ZnMatrix& b) {
        return a.n_mod_ == b.n_mod_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.e_ == b.e_;
    }
    friend bool operator!=(const ZnMatrix& a, const ZnMatrix& b) { return !(a == b); }

    ZnMatrix mul(const ZnMatrix& other) const {
        if (n_mod_ != other.n_mod_ || cols_ != other.rows_)
            throw std::invalid_argument("matrix product shape/modulus mismatch");
        ZnMatrix out(n_mod_, rows_, other.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const std::int64_t a = at(i, k);
                if (a == 0) continue;
                for (std::size_t j = 0; j < other.cols_; ++j) {
                    auto v = static_cast<__int128>(a) * other.at(k, j) + out.at(i, j);
                    out.set(i, j, static_cast<std::int64_t>(v % static_cast<std::int64_t>(n_mod_)));
                }
            }
        return out;
    }

    std::vector<std::vector<std::int64_t>> to_rows() const {
        std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i][j] = at(i, j);
        return out;
    }

  private:
    std::uint64_t n_mod_;
    std::size_t rows_, cols_;
    std::vector<std::int64_t> e_;
};

namespace detail {

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return r < 0 ? r + n : r;
}

// Extended gcd: returns g and coefficients with s*a + t*b = g.
inline std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
    if (b == 0) {
        s = (a < 0) ? -1 : 1;
        t = 0;
        return a < 0 ? -a : a;
    }
    std::int64_t s1, t1;
    const std::int64_t g = ext_gcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
    std::int64_t s, t;
    std::int64_t g = ext_gcd(mod_reduce(a, n), n, s, t);
    if (g != 1) throw std::invalid_argument("element not invertible");
    return mod_reduce(s, n);
}

// A unit u of Z_n with u*a = gcd(a, n) (mod n). Exists for every nonzero
// residue a; found by lifting the inverse of a/g mod n/g to a unit mod n.
inline std::int64_t unit_multiplier(std::int64_t a, std::int64_t n) {
    const std::int64_t g = std::gcd(a, n);
    const std::int64_t n_over_g = n / g;
    if (n_over_g == 1) return 1;  // a is 0 mod n; caller avoids this
    std::int64_t u = mod_inverse((a / g) % n_over_g, n_over_g);
    while (std::gcd(u, n) != 1) u += n_over_g;  // terminates: some lift is a unit
    return mod_reduce(u, n);
}

}  // namespace detail

// Howell normal form of M's row span over Z_n: the canonical matrix whose
// rows generate the same span-closure; two matrices have identical Howell
// forms iff their row spans coincide. Computed by column-wise gcd
// elimination with unimodular 2x2 transforms, pivot canonicalization by a
// unit multiplier, annihilator-row insertion, and reduction above pivots.
inline ZnMatrix howell_form(const ZnMatrix& M) {
    const std::int64_t n = static_cast<std::int64_t>(M.n_mod());
    const std::size_t cols = M.cols();
    std::vector<std::vector<std::int64_t>> R = M.to_rows();
    if (n == 1) return ZnMatrix(M.n_mod(), 0, cols);  // Z_1 is trivial

    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols; ++col) {
        // combine all rows with a nonzero entry in this column into one
        std::size_t lead = R.size();
        for (std::size_t i = pivot_row; i < R.size(); ++i) {
            if (R[i][col] == 0) continue;
            if (lead == R.size()) {
                lead = i;
                continue;
            }
            std::int64_t s, t;
            const std::int64_t a = R[lead][col], b = R[i][col];
            const std::int64_t g = detail::ext_gcd(a, b, s, t);
            // [[s, t], [-b/g, a/g]] has determinant 1
            for (std::size_t j = 0; j < cols; ++j) {
                const __int128 x = R[lead][j], y = R[i][j];
                R[lead][j] = detail::mod_reduce(static_cast<std::int64_t>((s * x + t * y) % n), n);
                R[i][j] = detail::mod_reduce(
                    static_cast<std::int64_t>((-(b / g) * x + (a / g) * y) % n), n);
            }
        }
        if (lead == R.size() || R[lead][col] == 0) continue;
        std::swap(R[pivot_row], R[lead]);

        // canonicalize the pivot to gcd(entry, n)
        const std::int64_t a = R[pivot_row][col];
        const std::int64_t g = std::gcd(a, n);
        const std::int64_t u = detail::unit_multiplier(a, n);
        for (std::size_t j = 0; j < cols; ++j)
            R[pivot_row][j] = detail::mod_reduce(
                static_cast<std::int64_t>((static_cast<__int128>(u) * R[pivot_row][j]) % n), n);

        // the annihilator (n/g) * row is in the span and has a zero in this
        // column; it must participate in later columns
        if (g != 1) {
            std::vector<std::int64_t> ann(cols);
            bool nonzero = false;
            for (std::size_t j = 0; j < cols; ++j) {
                ann[j] = detail::mod_reduce(
                    static_cast<std::int64_t>((static_cast<__int128>(n / g) * R[pivot_row][j]) % n),
                    n);
                nonzero |= ann[j] != 0;
            }
            if (nonzero) R.push_back(std::move(ann));
        }

        // reduce entries above the pivot into [0, pivot)
        for (std::size_t i = 0; i < pivot_row; ++i) {
            const std::int64_t k = R[i][col] / g;
            if (k == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                R[i][j] = detail::mod_reduce(
                    static_cast<std::int64_t>(
                        (R[i][j] - static_cast<__int128>(k) * R[pivot_row][j]) % n),
                    n);
        }
        ++pivot_row;
    }

    ZnMatrix out(M.n_mod(), pivot_row, cols);
    for (std::size_t i = 0; i < pivot_row; ++i)
        for (std::size_t j = 0; j < cols; ++j) out.set(i, j, R[i][j]);
    return out;
}

// Integer Smith-style diagonalization U*M*V = S with U, V unimodular over Z.
// S is diagonal (no divisibility chain; not needed for nullspaces mod n).
struct SmithDecomp {
    std::vector<std::vector<std::int64_t>> U, V;  // rows x rows, cols x cols
    std::vector<std::vector<std::int64_t>> S;     // rows x cols, diagonal
};

namespace detail {

inline void checked_axpy(std::vector<std::int64_t>& dst, std::int64_t k,
                         const std::vector<std::int64_t>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const __int128 v = static_cast<__int128>(dst[i]) - static_cast<__int128>(k) * src[i];
        if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Smith entries overflow");
        dst[i] = static_cast<std::int64_t>(v);
    }
}

}  // namespace detail

inline SmithDecomp smith_decompose(const std::vector<std::vector<std::int64_t>>& M) {
    const std::size_t rows = M.size();
    const std::size_t cols = rows == 0 ? 0 : M[0].size();
    SmithDecomp d;
    d.S = M;
    d.U.assign(rows, std::vector<std::int64_t>(rows, 0));
    d.V.assign(cols, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < rows; ++i) d.U[i][i] = 1;
    for (std::size_t j = 0; j < cols; ++j) d.V[j][j] = 1;
    auto& S = d.S;

    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(S[a], S[b]);
        std::swap(d.U[a], d.U[b]);
    };
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        for (auto& row : S) std::swap(row[a], row[b]);
        for (auto& row : d.V) std::swap(row[a], row[b]);
    };
    auto row_axpy = [&](std::size_t dst, std::int64_t k, std::size_t src) {
        detail::checked_axpy(S[dst], k, S[src]);
        detail::checked_axpy(d.U[dst], k, d.U[src]);
    };
    auto col_axpy = [&](std::size_t dst, std::int64_t k, std::size_t src) {
        for (auto& row : S) {
            const __int128 v =
                static_cast<__int128>(row[dst]) - static_cast<__int128>(k) * row[src];
            if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Smith entries overflow");
            row[dst] = static_cast<std::int64_t>(v);
        }
        for (auto& row : d.V) {
            const __int128 v =
                static_cast<__int128>(row[dst]) - static_cast<__int128>(k) * row[src];
            if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("Smith entries overflow");
            row[dst] = static_cast<std::int64_t>(v);
        }
    };
    // balanced quotient: remainder magnitude at most |b|/2
    auto round_div = [](std::int64_t a, std::int64_t b) {
        std::int64_t q = a / b, r = a % b;
        if (2 * std::abs(r) > std::abs(b)) q += (a < 0) == (b < 0) ? 1 : -1;
        return q;
    };

    const std::size_t steps = std::min(rows, cols);
    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            // minimal-magnitude pivot in the trailing block
            std::size_t pi = t, pj = t;
            std::int64_t best = 0;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    const std::int64_t v = std::abs(S[i][j]);
                    if (v != 0 && (best == 0 || v < best)) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (best == 0) { t = steps; break; }  // trailing block is zero
            if (pi != t) swap_rows(t, pi);
            if (pj != t) swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (S[i][t] == 0) continue;
                row_axpy(i, round_div(S[i][t], S[t][t]), t);
                dirty |= S[i][t] != 0;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (S[t][j] == 0) continue;
                col_axpy(j, round_div(S[t][j], S[t][t]), t);
                dirty |= S[t][j] != 0;
            }
            if (!dirty) break;
        }
        if (t == steps) break;
        if (S[t][t] < 0) {  // normalize sign via U
            for (std::size_t j = 0; j < cols; ++j) S[t][j] = -S[t][j];
            for (std::size_t j = 0; j < rows; ++j) d.U[t][j] = -d.U[t][j];
        }
    }
    return d;
}

// Generators of {v : M v = 0 (mod n)} as a Z_n-module, with the order of
// each generator (its additive order divides n) and the exact solution
// count, which is the product of the orders.
struct NullspaceGens {
    std::uint64_t n_mod = 1;
    std::size_t dim = 0;  // length of solution vectors (cols of M)
    std::vector<std::vector<std::int64_t>> generators;
    std::vector<std::uint64_t> orders;  // parallel to generators, each > 1
    unsigned __int128 solution_count = 1;

    std::optional<std::uint64_t> solution_count_u64() const {
        if (solution_count > UINT64_MAX) return std::nullopt;
        return static_cast<std::uint64_t>(solution_count);
    }
};

inline bool in_nullspace(const ZnMatrix& M, const std::vector<std::int64_t>& v) {
    if (v.size() != M.cols()) throw std::invalid_argument("vector arity mismatch");
    const std::int64_t n = static_cast<std::int64_t>(M.n_mod());
    for (std::size_t i = 0; i < M.rows(); ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < M.cols(); ++j)
            acc += static_cast<__int128>(M.at(i, j)) * v[j];
        if (static_cast<std::int64_t>(acc % n) != 0) return false;
    }
    return true;
}

inline NullspaceGens nullspace_mod(const ZnMatrix& M) {
    const std::int64_t n = static_cast<std::int64_t>(M.n_mod());
    NullspaceGens out;
    out.n_mod = M.n_mod();
    out.dim = M.cols();
    if (M.cols() == 0) return out;
    if (n == 1) return out;  // only the zero vector, counted once
    if (M.rows() == 0) {
        // no constraints: all of Z_n^dim
        for (std::size_t j = 0; j < M.cols(); ++j) {
            std::vector<std::int64_t> g(M.cols(), 0);
            g[j] = 1;
            out.generators.push_back(std::move(g));
            out.orders.push_back(M.n_mod());
            out.solution_count *= M.n_mod();
        }
        return out;
    }

    auto d = smith_decompose(M.to_rows());
    const std::size_t rows = M.rows(), cols = M.cols();
    for (std::size_t j = 0; j < cols; ++j) {
        const std::int64_t sjj = (j < rows) ? d.S[j][j] : 0;
        // solutions of sjj * w = 0 (mod n): w in multiples of n/cnt
        const std::int64_t cnt = std::gcd(std::abs(sjj) % n, n);  // gcd(0, n) = n
        if (cnt == 1) continue;
        const std::int64_t step = n / cnt;
        std::vector<std::int64_t> gen(cols);
        for (std::size_t i = 0; i < cols; ++i)
            gen[i] = detail::mod_reduce(
                static_cast<std::int64_t>((static_cast<__int128>(step) * d.V[i][j]) % n), n);
        out.generators.push_back(std::move(gen));
        out.orders.push_back(static_cast<std::uint64_t>(cnt));
        out.solution_count *= static_cast<std::uint64_t>(cnt);
    }
    return out;
}

// Visit every solution exactly once (mixed-radix odometer over the
// generator orders). Returns false without completing if more than `budget`
// solutions exist. The visitor receives each solution vector mod n.
inline bool enumerate_nullspace(const NullspaceGens& ns,
                                unsigned __int128 budget,
                                const std::function<void(const std::vector<std::int64_t>&)>& fn) {
    if (ns.solution_count > budget) return false;
    const std::int64_t n = static_cast<std::int64_t>(ns.n_mod);
    const std::size_t k = ns.generators.size();
    std::vector<std::uint64_t> digit(k, 0);
    // suffix[i] = sum over j >= i of digit[j] * gen[j]; suffix[k] = 0
    std::vector<std::vector<std::int64_t>> suffix(k + 1,
                                                  std::vector<std::int64_t>(ns.dim, 0));
    for (;;) {
        fn(suffix[0]);
        std::size_t lvl = 0;
        while (lvl < k && digit[lvl] + 1 == ns.orders[lvl]) {
            digit[lvl] = 0;
            ++lvl;
        }
        if (lvl == k) return true;
        ++digit[lvl];
        // rebuild suffix[i] = suffix[i+1] + digit[i]*gen[i] for i = lvl..0;
        // digits below lvl were just reset to zero
        for (std::size_t i = lvl + 1; i-- > 0;) {
            for (std::size_t c = 0; c < ns.dim; ++c) {
                __int128 v = suffix[i + 1][c] +
                             static_cast<__int128>(digit[i]) * ns.generators[i][c];
                suffix[i][c] = detail::mod_reduce(static_cast<std::int64_t>(v % n), n);
            }
        }
    }
}

// --- degree matrices and the *-equivalence decision ---

inline ZnMatrix degree_matrix(const SparsePoly& f) {
    if (f.term_count() == 0) throw std::invalid_argument("empty polynomial has no degree matrix");
    const std::uint64_t n_mod = f.ctx().q() - 1;
    ZnMatrix D(std::max<std::uint64_t>(n_mod, 1), f.n_vars(), f.term_count());
    for (std::size_t j = 0; j < f.term_count(); ++j)
        for (std::uint32_t i = 0; i < f.n_vars(); ++i)
            D.set(i, j, static_cast<std::int64_t>(f.terms()[j].exps[i]));
    return D;
}

inline ZnMatrix augmented_degree_matrix(const SparsePoly& f) {
    if (f.term_count() == 0) throw std::invalid_argument("empty polynomial has no degree matrix");
    const std::uint64_t n_mod = std::max<std::uint64_t>(f.ctx().q() - 1, 1);
    ZnMatrix D(n_mod, f.n_vars() + 1, f.term_count());
    for (std::size_t j = 0; j < f.term_count(); ++j) {
        D.set(0, j, 1);
        for (std::uint32_t i = 0; i < f.n_vars(); ++i)
            D.set(i + 1, j, static_cast<std::int64_t>(f.terms()[j].exps[i]));
    }
    return D;
}

enum class ConstantColumn { Auto, Include, Exclude };

struct EquivalenceResult {
    bool equivalent = false;
    std::string method;  // "howell" fast path or "nullspace" exact decision
    std::string reason;  // set when not equivalent
    ZnMatrix howell_f, howell_g;
};

namespace detail {

// Augmented degree matrix padded to `height` variable rows, optionally with
// the constant term's column (1, 0, ..., 0) appended.
inline ZnMatrix augmented_padded(const SparsePoly& f, std::uint32_t height,
                                 bool constant_col) {
    const std::uint64_t n_mod = std::max<std::uint64_t>(f.ctx().q() - 1, 1);
    const std::size_t cols = f.term_count() + (constant_col ? 1 : 0);
    ZnMatrix D(n_mod, height + 1, cols);
    for (std::size_t j = 0; j < f.term_count(); ++j) {
        D.set(0, j, 1);
        for (std::uint32_t i = 0; i < f.n_vars(); ++i)
            D.set(i + 1, j, static_cast<std::int64_t>(f.terms()[j].exps[i]));
    }
    if (constant_col) D.set(0, f.term_count(), 1);
    return D;
}

}  // namespace detail

// Decide *-equivalence: identical ordered coefficient vectors and equal
// solution sets of the two augmented homogeneous systems mod q-1. Equal
// Howell forms certify equal row spans (sufficient); otherwise the decision
// falls back to mutual inclusion of nullspace generators, which is exact.
inline EquivalenceResult star_equivalent(const SparsePoly& f, const SparsePoly& g,
                                         ConstantColumn cc = ConstantColumn::Auto) {
    if (!f.ctx().same_field(g.ctx()))
        throw std::invalid_argument("polynomials live in different fields");
    if (f.term_count() != g.term_count())
        throw std::invalid_argument("term counts differ");
    if (f.term_count() == 0) throw std::invalid_argument("empty polynomials");

    const std::uint64_t n_mod = std::max<std::uint64_t>(f.ctx().q() - 1, 1);
    EquivalenceResult res{false, "", "", ZnMatrix(n_mod, 0, 0), ZnMatrix(n_mod, 0, 0)};

    for (std::size_t j = 0; j < f.term_count(); ++j)
        if (f.terms()[j].coeff != g.terms()[j].coeff) {
            res.reason = "coefficient_vectors_differ";
            return res;
        }

    bool constant_col = false;
    const bool fb = f.b().enc != 0, gb = g.b().enc != 0;
    switch (cc) {
        case ConstantColumn::Auto:
            if (fb != gb || (fb && gb && f.b() != g.b())) {
                res.reason = "constant_mismatch";
                return res;
            }
            constant_col = fb && gb;
            break;
        case ConstantColumn::Include:
            if (f.b() != g.b()) {
                res.reason = "constant_mismatch";
                return res;
            }
            constant_col = true;
            break;
        case ConstantColumn::Exclude:
            constant_col = false;
            break;
    }

    const std::uint32_t height = std::max(f.n_vars(), g.n_vars());
    ZnMatrix Df = detail::augmented_padded(f, height, constant_col);
    ZnMatrix Dg = detail::augmented_padded(g, height, constant_col);

    res.howell_f = howell_form(Df);
    res.howell_g = howell_form(Dg);
    if (res.howell_f == res.howell_g) {
        res.equivalent = true;
        res.method = "howell";
        return res;
    }

    // exact decision: mutual inclusion of nullspace generators
    auto nf = nullspace_mod(Df);
    auto ng = nullspace_mod(Dg);
    res.method = "nullspace";
    for (const auto& v : nf.generators)
        if (!in_nullspace(Dg, v)) {
            res.reason = "nullspace_differs";
            return res;
        }
    for (const auto& v : ng.generators)
        if (!in_nullspace(Df, v)) {
            res.reason = "nullspace_differs";
            return res;
        }
    res.equivalent = true;
    return res;
}

}  // namespace ffcount
