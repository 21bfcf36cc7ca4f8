#pragma once

// Sparse multivariate polynomial equations sum_j a_j * X^(D_j) = b.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ffcount/gf.hpp"

namespace ffcount {

struct PolyTerm {
    FieldElement coeff;               // nonzero
    std::vector<std::uint32_t> exps;  // one exponent per variable, raw
};

// The equation sum_j a_j * X^(D_j) = b. Term order is significant: the
// coefficient vector (a_1, ..., a_s) is compared as an ordered tuple by the
// *-equivalence decision.
class SparsePoly {
  public:
    SparsePoly(const FieldCtx& F, std::uint32_t n_vars, std::vector<PolyTerm> terms,
               FieldElement b = {0})
        : ctx_(&F), n_vars_(n_vars), terms_(std::move(terms)), b_(b) {
        if (n_vars_ == 0) throw std::invalid_argument("polynomial needs at least one variable");
        for (const auto& t : terms_) {
            if (t.coeff.enc == 0)
                throw std::invalid_argument("terms must have nonzero coefficients");
            if (t.coeff.enc >= F.q()) throw std::invalid_argument("coefficient outside field");
            if (t.exps.size() != n_vars_)
                throw std::invalid_argument("exponent vector length must equal n_vars");
        }
        if (b_.enc >= F.q()) throw std::invalid_argument("constant outside field");
    }

    const FieldCtx& ctx() const { return *ctx_; }
    std::uint32_t n_vars() const { return n_vars_; }
    const std::vector<PolyTerm>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    FieldElement b() const { return b_; }

    // Each term touches exactly one variable (positive exponent), and no two
    // terms share a variable.
    bool is_diagonal() const {
        std::vector<bool> used(n_vars_, false);
        for (const auto& t : terms_) {
            int active = -1;
            for (std::uint32_t i = 0; i < n_vars_; ++i) {
                if (t.exps[i] == 0) continue;
                if (active >= 0) return false;
                active = static_cast<int>(i);
            }
            if (active < 0) return false;  // constant masquerading as a term
            if (used[active]) return false;
            used[active] = true;
        }
        return !terms_.empty();
    }

    // Every variable appears in every term with positive exponent.
    bool is_full() const {
        if (terms_.empty()) return false;
        for (const auto& t : terms_)
            for (std::uint32_t i = 0; i < n_vars_; ++i)
                if (t.exps[i] == 0) return false;
        return true;
    }

    FieldElement evaluate(const std::vector<FieldElement>& point) const {
        if (point.size() != n_vars_) throw std::invalid_argument("point arity mismatch");
        const FieldCtx& F = *ctx_;
        FieldElement acc = F.zero();
        for (const auto& t : terms_) {
            FieldElement prod = t.coeff;
            for (std::uint32_t i = 0; i < n_vars_; ++i) {
                if (t.exps[i] == 0) continue;
                prod = F.mul(prod, F.pow(point[i], t.exps[i]));
                if (prod.enc == 0) break;
            }
            acc = F.add(acc, prod);
        }
        return acc;
    }

    bool is_root(const std::vector<FieldElement>& point) const {
        return evaluate(point) == b_;
    }

  private:
    const FieldCtx* ctx_;
    std::uint32_t n_vars_;
    std::vector<PolyTerm> terms_;
    FieldElement b_;
};

// Variable/exponent profile of a diagonal polynomial: entry j is the
// (variable index, exponent) pair of term j.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> diagonal_profile(
    const SparsePoly& g) {
    if (!g.is_diagonal()) throw std::invalid_argument("polynomial is not diagonal");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (const auto& t : g.terms())
        for (std::uint32_t i = 0; i < g.n_vars(); ++i)
            if (t.exps[i] > 0) out.emplace_back(i, t.exps[i]);
    return out;
}

}  // namespace ffcount
