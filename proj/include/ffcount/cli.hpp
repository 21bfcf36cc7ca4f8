#pragma once

// Command line front end, kept in a header so tests can drive run()
// in-process. Subcommands: count, count-star, classify, equiv, gauss,
// oracle. Results are JSON on stdout; diagnostics go to stderr only.
// Exit codes: 0 success, 1 usage or syntax, 2 violated precondition.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffcount/chars.hpp"
#include "ffcount/counting.hpp"
#include "ffcount/gf.hpp"
#include "ffcount/parse.hpp"
#include "ffcount/poly.hpp"
#include "ffcount/pure.hpp"
#include "ffcount/zn_linalg.hpp"

namespace ffcount::cli {

using ordered_json = nlohmann::ordered_json;

namespace detail {

struct HandledError {};  // diagnostic already written; unwind to the exit code

inline void emit(const ordered_json& j, bool pretty, std::ostream& out) {
    out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

inline ordered_json count_json(const FieldCtx& F, std::uint32_t n, const CountResult& r,
                               double ms) {
    ordered_json j;
    j["q"] = F.q();
    j["n"] = n;
    j["star"] = r.star;
    j["count"] = r.count;
    j["method"] = method_name(r.method);
    if (const char* br = branch_name(r.branch)) j["branch"] = br;
    else j["branch"] = nullptr;
    j["elapsed_ms"] = ms;
    return j;
}

inline std::vector<std::uint32_t> parse_modulus_list(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::size_t used = 0;
        unsigned long v = std::stoul(part, &used);
        if (used != part.size()) throw std::invalid_argument("bad modulus coefficient: " + part);
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

// FFCOUNT_BUDGET caps both the point enumeration and the character-vector
// enumeration; a set-but-invalid value is a hard error, not a fallback.
inline CountOptions budget_options(unsigned threads, std::ostream& err) {
    CountOptions o;
    o.threads = threads;
    if (const char* s = std::getenv("FFCOUNT_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (s[0] == '\0' || *end != '\0' || v == 0) {
            err << "error: FFCOUNT_BUDGET must be a positive integer, got \"" << s << "\"\n";
            throw HandledError{};
        }
        o.brute_budget = v;
        o.vector_budget = v;
    }
    return o;
}

class Timer {
  public:
    double ms() const {
        return std::chrono::duration<double, std::milli>(clock::now() - t0_).count();
    }

  private:
    using clock = std::chrono::steady_clock;
    clock::time_point t0_ = clock::now();
};

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"root counting for sparse polynomial equations over small finite fields",
                 "ffcount"};
    app.require_subcommand(1);

    std::uint64_t p = 0;
    std::uint32_t m = 1;
    std::string modulus_text;
    bool pretty = false;
    unsigned threads = 1;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", p, "field characteristic (a prime)")->required();
        sub->add_option("--m", m, "extension degree m >= 1")->required();
        sub->add_option("--modulus", modulus_text,
                        "modulus coefficients c0,c1,...,cm (default: smallest irreducible)");
        sub->add_flag("--pretty", pretty, "indent the JSON output");
        sub->add_flag("--json", "compact JSON output (the default)");
        sub->add_option("--threads", threads, "worker threads for exhaustive enumeration")
            ->check(CLI::Range(1u, 64u));
    };

    std::string poly_text, witness_text, second_text;
    std::string star_method = "auto", oracle_method, cc_text = "auto";
    std::uint64_t d_value = 0, j_value = 0;
    bool star_flag = false, force = false;

    auto* sc_count = app.add_subcommand("count", "count all roots in F_q^n");
    add_common(sc_count);
    sc_count->add_option("poly", poly_text, "polynomial expression")->required();
    sc_count->add_option("--diagonal-witness", witness_text,
                         "diagonal polynomial *-equivalent to the input");
    sc_count->add_option("--constant-column", cc_text, "constant column handling")
        ->check(CLI::IsMember({"auto", "include", "exclude"}));

    auto* sc_star = app.add_subcommand("count-star", "count roots with all coordinates nonzero");
    add_common(sc_star);
    sc_star->add_option("poly", poly_text, "polynomial expression")->required();
    sc_star->add_option("--method", star_method, "closed | char-sum | gauss-vector | auto")
        ->check(CLI::IsMember({"auto", "closed", "char-sum", "gauss-vector"}));
    sc_star->add_flag("--force", force,
                      "on a violated hypothesis, fall back to an unconditional method and "
                      "cross-check against brute force when affordable");

    auto* sc_classify = app.add_subcommand("classify", "admissibility and constants for an exponent");
    add_common(sc_classify);
    sc_classify->add_option("--d", d_value, "exponent to classify")->required();

    auto* sc_equiv = app.add_subcommand("equiv", "decide *-equivalence of two polynomials");
    add_common(sc_equiv);
    sc_equiv->add_option("f", poly_text, "first polynomial")->required();
    sc_equiv->add_option("g", second_text, "second polynomial")->required();
    sc_equiv->add_option("--constant-column", cc_text, "constant column handling")
        ->check(CLI::IsMember({"auto", "include", "exclude"}));

    auto* sc_gauss = app.add_subcommand("gauss", "Gauss sum of a character of order d");
    add_common(sc_gauss);
    sc_gauss->add_option("--d", d_value, "character order (must divide q-1)")->required();
    sc_gauss->add_option("--j", j_value, "power of the order-d character")->required();

    auto* sc_oracle = app.add_subcommand("oracle", "independent counting paths for validation");
    add_common(sc_oracle);
    sc_oracle->add_option("poly", poly_text, "polynomial expression")->required();
    sc_oracle->add_option("--method", oracle_method, "brute | char-sum | gauss-vector")
        ->required()
        ->check(CLI::IsMember({"brute", "char-sum", "gauss-vector"}));
    sc_oracle->add_flag("--star", star_flag,
                        "restrict brute enumeration to nonzero coordinates");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        std::optional<std::vector<std::uint32_t>> modulus;
        if (!modulus_text.empty()) modulus = detail::parse_modulus_list(modulus_text);
        const FieldCtx F = build_field(p, m, std::move(modulus));
        const CountOptions opts = detail::budget_options(threads, err);

        auto parse_or_diag = [&](const std::string& text) -> SparsePoly {
            try {
                return parse_poly(F, text);
            } catch (const ParseError& e) {
                err << "parse error: " << e.what() << "\n  " << text << "\n  "
                    << std::string(e.position, ' ') << "^\n";
                throw detail::HandledError{};
            }
        };
        const auto cc = cc_text == "include"   ? ConstantColumn::Include
                        : cc_text == "exclude" ? ConstantColumn::Exclude
                                               : ConstantColumn::Auto;

        if (sc_count->parsed()) {
            const SparsePoly f = parse_or_diag(poly_text);
            const bool has_witness = !witness_text.empty();
            if (!has_witness && !f.is_diagonal())
                throw PreconditionError("witness_required",
                                        "count on a non-diagonal polynomial needs "
                                        "--diagonal-witness");
            const SparsePoly g = has_witness ? parse_or_diag(witness_text) : f;
            detail::Timer t;
            const CountResult r = count_full(f, g, cc, opts);
            detail::emit(detail::count_json(F, f.n_vars(), r, t.ms()), pretty, out);
            return 0;
        }

        if (sc_star->parsed()) {
            const SparsePoly f = parse_or_diag(poly_text);
            detail::Timer t;
            std::optional<CountResult> r;
            std::optional<PreconditionError> first_error;
            auto attempt = [&](auto&& fn) {
                if (r) return;
                try {
                    r = fn();
                } catch (const PreconditionError& e) {
                    if (!first_error) first_error = e;
                }
            };
            if (star_method == "closed" || (star_method == "auto" && f.is_diagonal()))
                attempt([&] { return count_star_diagonal(f); });
            if (star_method == "char-sum") attempt([&] { return count_star_charsum(f); });
            if (star_method == "gauss-vector")
                attempt([&] { return count_star_gaussvec(f, opts); });
            if (!r && (star_method == "auto" || force)) {
                // unconditional fallbacks, cheapest first
                if (f.is_diagonal()) attempt([&] { return count_star_charsum(f); });
                attempt([&] { return count_star_gaussvec(f, opts); });
                if (force) attempt([&] { return brute_force_star(f, opts); });
            }
            if (!r) throw *first_error;
            if (force && r->method != CountMethod::BruteForce) {
                unsigned __int128 points = 1;
                bool affordable = true;
                for (std::uint32_t i = 0; i < f.n_vars() && affordable; ++i) {
                    points *= F.q() - 1;
                    if (points > opts.brute_budget) affordable = false;
                }
                if (affordable && brute_force_star(f, opts).count != r->count)
                    throw PreconditionError("forced_mismatch",
                                            "analytic count disagrees with exhaustive "
                                            "enumeration; please report this input");
            }
            detail::emit(detail::count_json(F, f.n_vars(), *r, t.ms()), pretty, out);
            return 0;
        }

        if (sc_classify->parsed()) {
            const AdmissibilityCheck chk = check_admissible(F, d_value);
            ordered_json j;
            j["q"] = F.q();
            j["d"] = d_value;
            j["admissible"] = chk.admissible();
            if (chk.admissible()) {
                j["r"] = chk.cert->r;
                j["h"] = chk.cert->h;
                j["case"] = chk.cert->parity_case == PureCase::EvenDOddQuotient
                                ? "even_d_odd_quotient"
                                : "other";
                j["C1"] = c1(*chk.cert);
                j["C2"] = c2(*chk.cert);
            } else {
                j["reason"] = chk.reason == InadmissibleReason::DoesNotDivideGroupOrder
                                  ? "does_not_divide_group_order"
                                  : "no_suitable_r";
            }
            detail::emit(j, pretty, out);
            return 0;
        }

        if (sc_equiv->parsed()) {
            const SparsePoly f = parse_or_diag(poly_text);
            const SparsePoly g = parse_or_diag(second_text);
            ordered_json j;
            j["q"] = F.q();
            if (f.term_count() != g.term_count() || f.term_count() == 0) {
                j["equivalent"] = false;
                j["method"] = "howell";
                j["reason"] = f.term_count() == 0 ? "empty_polynomial" : "term_counts_differ";
            } else {
                const EquivalenceResult res = star_equivalent(f, g, cc);
                j["equivalent"] = res.equivalent;
                j["method"] = res.method;
                if (res.equivalent) j["reason"] = nullptr;
                else j["reason"] = res.reason;
            }
            detail::emit(j, pretty, out);
            return 0;
        }

        if (sc_gauss->parsed()) {
            ordered_json j;
            j["q"] = F.q();
            j["d"] = d_value;
            j["j"] = j_value;
            const AdmissibilityCheck chk =
                d_value >= 3 ? check_admissible(F, d_value) : AdmissibilityCheck{};
            if (chk.admissible()) {
                j["method"] = "closed";
                j["real"] = pure_gauss_sum(*chk.cert, j_value);
                j["imag"] = 0;
            } else {
                const MultChar eta(F, d_value, j_value);  // rejects d not dividing q-1
                const Cplx v = gauss_sum_numeric(eta);
                j["method"] = "numeric";
                j["real"] = v.real();
                j["imag"] = v.imag();
            }
            detail::emit(j, pretty, out);
            return 0;
        }

        // oracle
        const SparsePoly f = parse_or_diag(poly_text);
        detail::Timer t;
        CountResult r;
        if (oracle_method == "brute")
            r = star_flag ? brute_force_star(f, opts) : brute_force_total(f, opts);
        else if (oracle_method == "char-sum")
            r = count_star_charsum(f);
        else
            r = count_star_gaussvec(f, opts);
        detail::emit(detail::count_json(F, f.n_vars(), r, t.ms()), pretty, out);
        return 0;
    } catch (const detail::HandledError&) {
        return 1;
    } catch (const PreconditionError& e) {
        ordered_json j;
        j["error"] = e.what();
        j["reason"] = e.reason;
        err << j.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ffcount::cli
