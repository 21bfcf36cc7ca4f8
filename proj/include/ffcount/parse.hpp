#pragma once

// Text form of a sparse equation. The text is the left-hand side of
// "... = 0"; a trailing pure constant c therefore lands in the constant
// slot as b = -c. Grammar:
//
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := coeff '*' factor ('*' factor)* | factor ('*' factor)* | coeff
//   factor := var ['^' nat]
//   var    := 'x' nat | 'x' | 'y' | 'z'
//   coeff  := nat | 'g' ['^' nat]
//
// x, y, z alias x1, x2, x3; 'g' is the field generator; bare integers
// reduce mod p into the prime subfield.

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ffcount/gf.hpp"
#include "ffcount/poly.hpp"

namespace ffcount {

class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t pos, const std::string& message)
        : std::runtime_error(message), position(pos) {}
    std::size_t position;
};

namespace detail {

constexpr std::uint32_t kMaxExponent = 1'000'000;
constexpr std::uint32_t kMaxVariables = 1024;

class PolyParser {
  public:
    PolyParser(const FieldCtx& F, std::string_view text) : F_(F), text_(text) {}

    // terms in source order; the constant slot collects the trailing constant
    SparsePoly run(std::uint32_t min_vars) {
        struct RawTerm {
            bool negated;
            FieldElement coeff;
            std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (var, exp)
            bool pure_constant;
            std::size_t pos;
        };
        std::vector<RawTerm> raw;

        skip_ws();
        if (done()) fail(pos_, "empty input");
        bool neg = eat('-');
        skip_ws();
        for (;;) {
            RawTerm t{neg, F_.one(), {}, false, pos_};
            parse_term(t.coeff, t.factors, t.pure_constant);
            raw.push_back(std::move(t));
            skip_ws();
            if (done()) break;
            if (eat('+')) neg = false;
            else if (eat('-')) neg = true;
            else fail(pos_, "expected '+', '-' or end of input");
            skip_ws();
            if (raw.back().pure_constant)
                fail(pos_, "a pure constant may only appear as the final term");
        }

        std::uint32_t n_vars = min_vars > 0 ? min_vars : 1;
        for (const auto& t : raw)
            for (auto [v, e] : t.factors)
                if (v + 1 > n_vars) n_vars = v + 1;

        std::vector<PolyTerm> terms;
        FieldElement b = F_.zero();
        for (const auto& t : raw) {
            FieldElement c = t.negated ? F_.neg(t.coeff) : t.coeff;
            if (t.pure_constant) {
                b = F_.neg(c);  // the text is "... + c = 0", so b = -c
                continue;
            }
            if (c.enc == 0) fail(t.pos, "coefficient vanishes in this field");
            std::vector<std::uint32_t> exps(n_vars, 0);
            for (auto [v, e] : t.factors) {
                if (exps[v] > kMaxExponent - e) fail(t.pos, "exponent too large");
                exps[v] += e;
            }
            terms.push_back({c, std::move(exps)});
        }
        return SparsePoly(F_, n_vars, std::move(terms), b);
    }

  private:
    const FieldCtx& F_;
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
        throw ParseError(at, msg);
    }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return done() ? '\0' : text_[pos_]; }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    // digits, folded mod `mod` when nonzero (overflow-safe for any length)
    std::uint64_t number(std::uint64_t mod, std::uint64_t cap, const char* what) {
        const std::size_t start = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(pos_, std::string("expected ") + what);
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (mod) v %= mod;
            else if (v > cap) fail(start, std::string(what) + " too large");
            ++pos_;
        }
        return v;
    }

    void parse_term(FieldElement& coeff,
                    std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors,
                    bool& pure_constant) {
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = F_.element(number(F_.p(), 0, "a number"));
            saw_coeff = true;
        } else if (peek() == 'g') {
            ++pos_;
            std::uint64_t k = 1;
            if (eat('^')) k = number(F_.q() - 1, 0, "a generator exponent");
            coeff = F_.antilog(k);
            saw_coeff = true;
        }
        if (saw_coeff) {
            skip_ws();
            if (!eat('*')) {
                pure_constant = true;
                return;
            }
            skip_ws();
        }
        if (!parse_factor(factors))
            fail(pos_, saw_coeff ? "expected a variable after '*'" : "expected a term");
        skip_ws();
        while (eat('*')) {
            skip_ws();
            if (!parse_factor(factors)) fail(pos_, "expected a variable after '*'");
            skip_ws();
        }
    }

    bool parse_factor(std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors) {
        std::uint32_t var;
        const std::size_t start = pos_;
        switch (peek()) {
            case 'x': {
                ++pos_;
                if (std::isdigit(static_cast<unsigned char>(peek()))) {
                    std::uint64_t idx = number(0, kMaxVariables, "a variable index");
                    if (idx == 0) fail(start, "variable indices start at 1");
                    var = static_cast<std::uint32_t>(idx - 1);
                } else {
                    var = 0;
                }
                break;
            }
            case 'y': ++pos_; var = 1; break;
            case 'z': ++pos_; var = 2; break;
            default: return false;
        }
        std::uint32_t exp = 1;
        if (eat('^'))
            exp = static_cast<std::uint32_t>(number(0, kMaxExponent, "an exponent"));
        factors.emplace_back(var, exp);
        return true;
    }
};

}  // namespace detail

// min_vars widens the variable count (indices beyond the highest one used
// stay as free variables); 0 means infer from the text.
inline SparsePoly parse_poly(const FieldCtx& F, std::string_view text,
                             std::uint32_t min_vars = 0) {
    if (min_vars > detail::kMaxVariables)
        throw ParseError(0, "variable count cap exceeded");
    return detail::PolyParser(F, text).run(min_vars);
}

// canonical text: x1, x2, ... variables, g^k coefficients, constant last.
// parse_poly(F, to_text(f), f.n_vars()) reproduces f exactly.
inline std::string to_text(const SparsePoly& f) {
    const FieldCtx& F = f.ctx();
    auto coeff_text = [&](FieldElement c) {
        return c == F.one() ? std::string("1") : "g^" + std::to_string(F.dlog(c));
    };
    std::string out;
    for (const auto& t : f.terms()) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (std::uint32_t i = 0; i < f.n_vars(); ++i) {
            if (t.exps[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i + 1);
            if (t.exps[i] != 1) mono += "^" + std::to_string(t.exps[i]);
        }
        if (mono.empty()) {
            out += coeff_text(t.coeff) + "*x1^0";  // keep it a monomial, not a constant
        } else if (t.coeff == F.one()) {
            out += mono;
        } else {
            out += coeff_text(t.coeff) + "*" + mono;
        }
    }
    if (out.empty() && f.b().enc == 0) return "0";
    if (f.b().enc != 0) {
        // b moves back across the equals sign with its sign flipped
        out += out.empty() ? "-" : " - ";
        out += coeff_text(f.b());
    }
    return out;
}

}  // namespace ffcount
