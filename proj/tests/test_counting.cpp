#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "ffcount/counting.hpp"
#include "ffcount/gf.hpp"
#include "ffcount/poly.hpp"

using namespace ffcount;

namespace {

struct TermData {
    FieldElement coeff;
    std::vector<std::uint32_t> exps;
};

SparsePoly mk(const FieldCtx& F, std::uint32_t n, const std::vector<TermData>& td,
              FieldElement b = {0}) {
    std::vector<PolyTerm> ts;
    for (const auto& t : td) ts.push_back({t.coeff, t.exps});
    return SparsePoly(F, n, std::move(ts), b);
}

// diagonal polynomial a_1 x_1^d + ... + a_s x_s^d in n >= s variables
SparsePoly diag(const FieldCtx& F, std::uint32_t n, std::uint32_t d,
                const std::vector<FieldElement>& coeffs, FieldElement b = {0}) {
    std::vector<TermData> td;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        std::vector<std::uint32_t> e(n, 0);
        e[j] = d;
        td.push_back({coeffs[j], e});
    }
    return mk(F, n, td, b);
}

SparsePoly random_diagonal(const FieldCtx& F, std::mt19937& rng, std::uint32_t max_vars) {
    std::uniform_int_distribution<std::uint32_t> nv(1, max_vars);
    const std::uint32_t n = nv(rng);
    std::uniform_int_distribution<std::uint32_t> sv(1, n);
    const std::uint32_t s = sv(rng);
    std::uniform_int_distribution<std::uint32_t> ev(1, 2 * (F.q() - 1));
    std::uniform_int_distribution<std::uint32_t> cv(1, F.q() - 1);
    std::uniform_int_distribution<std::uint32_t> bv(0, F.q() - 1);
    std::vector<TermData> td;
    for (std::uint32_t j = 0; j < s; ++j) {
        std::vector<std::uint32_t> e(n, 0);
        e[j] = ev(rng);
        td.push_back({F.element(cv(rng)), e});
    }
    return mk(F, n, td, F.element(bv(rng)));
}

SparsePoly random_sparse(const FieldCtx& F, std::mt19937& rng, std::uint32_t max_vars,
                         std::uint32_t max_terms) {
    std::uniform_int_distribution<std::uint32_t> nv(1, max_vars);
    std::uniform_int_distribution<std::uint32_t> sv(1, max_terms);
    const std::uint32_t n = nv(rng), s = sv(rng);
    std::uniform_int_distribution<std::uint32_t> ev(0, 2 * (F.q() - 1));
    std::uniform_int_distribution<std::uint32_t> cv(1, F.q() - 1);
    std::uniform_int_distribution<std::uint32_t> bv(0, F.q() - 1);
    std::vector<TermData> td;
    for (std::uint32_t j = 0; j < s; ++j) {
        std::vector<std::uint32_t> e(n);
        for (auto& x : e) x = ev(rng);
        td.push_back({F.element(cv(rng)), e});
    }
    return mk(F, n, td, F.element(bv(rng)));
}

std::string reason_of(const std::function<void()>& call) {
    try {
        call();
    } catch (const PreconditionError& e) {
        return e.reason;
    }
    return "";
}

}  // namespace

TEST_CASE("exhaustive counting agrees with hand-countable cases") {
    auto F4 = build_field(2, 2);
    auto F7 = build_field(7, 1);

    SECTION("the zero equation is satisfied everywhere, 0 = b nowhere") {
        SparsePoly z(F4, 2, {}, F4.zero());
        REQUIRE(brute_force_total(z).count == 16);
        REQUIRE(brute_force_star(z).count == 9);
        SparsePoly zb(F4, 2, {}, F4.one());
        REQUIRE(brute_force_total(zb).count == 0);
        REQUIRE(brute_force_star(zb).count == 0);
    }

    SECTION("x + y = 0 in characteristic 2 means y = x") {
        auto g = mk(F4, 2, {{F4.one(), {1, 0}}, {F4.one(), {0, 1}}});
        REQUIRE(brute_force_total(g).count == 4);
        REQUIRE(brute_force_star(g).count == 3);
    }

    SECTION("xy = 1 pairs each unit with its inverse") {
        auto g = mk(F4, 2, {{F4.one(), {1, 1}}}, F4.one());
        REQUIRE(brute_force_total(g).count == 3);
        REQUIRE(brute_force_star(g).count == 3);
    }

    SECTION("x^2 = 0 only at x = 0") {
        auto g = mk(F4, 1, {{F4.one(), {2}}});
        REQUIRE(brute_force_total(g).count == 1);
        REQUIRE(brute_force_star(g).count == 0);
    }

    SECTION("a line over a prime field") {
        // 2x + 3y = 1: one y per x; y = 0 forces x = 4, x = 0 forces y = 5
        auto g = mk(F7, 2, {{F7.element(2), {1, 0}}, {F7.element(3), {0, 1}}},
                    F7.one());
        REQUIRE(brute_force_total(g).count == 7);
        REQUIRE(brute_force_star(g).count == 5);
    }

    SECTION("flags") {
        SparsePoly z(F4, 1, {}, F4.zero());
        auto r = brute_force_total(z);
        REQUIRE(r.method == CountMethod::BruteForce);
        REQUIRE_FALSE(r.star);
        REQUIRE(brute_force_star(z).star);
        REQUIRE(std::string(method_name(r.method)) == "brute_force");
    }

    SECTION("point budget is enforced before any work") {
        auto F16 = build_field(2, 4);
        auto g = mk(F16, 3, {{F16.one(), {1, 1, 1}}});
        CountOptions tight;
        tight.brute_budget = 1000;
        REQUIRE(reason_of([&] { brute_force_total(g, tight); }) == "budget_exceeded");
        REQUIRE(reason_of([&] { brute_force_star(g, tight); }) == "budget_exceeded");
        auto g2 = mk(F16, 2, {{F16.one(), {1, 1}}});
        REQUIRE_NOTHROW(brute_force_total(g2, tight));  // 256 points fits
    }

    SECTION("worker count does not change the answer") {
        auto F81 = build_field(3, 4);
        auto g = mk(F81, 2, {{F81.element(5), {3, 1}}, {F81.element(7), {0, 9}}},
                    F81.element(2));
        CountOptions par;
        par.threads = 4;
        REQUIRE(brute_force_total(g, par).count == brute_force_total(g).count);
        REQUIRE(brute_force_star(g, par).count == brute_force_star(g).count);
    }
}

TEST_CASE("diagonal closed form, b = 0") {
    auto F16 = build_field(2, 4);
    auto F81 = build_field(3, 4);
    auto F729 = build_field(3, 6);
    const FieldElement one16 = F16.one(), one81 = F81.one();

    SECTION("frozen values, cross-checked exhaustively") {
        struct Case {
            const FieldCtx* F;
            std::uint32_t n, d, s;
            std::uint64_t expect;
        };
        // torus root counts computed from C1/C2 by hand
        const Case cases[] = {
            {&F16, 2, 5, 2, 75},
            {&F16, 2, 3, 2, 45},
            {&F16, 3, 3, 3, 0},
            {&F81, 2, 4, 2, 320},
            {&F81, 2, 10, 2, 800},
        };
        for (const auto& c : cases) {
            std::vector<FieldElement> coeffs(c.s, c.F->one());
            auto g = diag(*c.F, c.n, c.d, coeffs);
            auto r = count_star_diagonal_b0(g);
            CAPTURE(c.F->q(), c.d, c.s);
            REQUIRE(r.count == c.expect);
            REQUIRE(r.method == CountMethod::ClosedFormB0);
            REQUIRE(r.branch == Branch::None);
            REQUIRE(r.star);
            REQUIRE(brute_force_star(g).count == c.expect);
        }
    }

    SECTION("x^7 + 2y^7 over the 729-element field") {
        auto g = diag(F729, 2, 7, {F729.one(), F729.element(2)});
        REQUIRE(count_star_diagonal_b0(g).count == 5096);
        REQUIRE(brute_force_star(g).count == 5096);
    }

    SECTION("untouched variables contribute a factor q - 1 each") {
        auto g = diag(F16, 3, 5, {one16, one16});
        REQUIRE(count_star_diagonal_b0(g).count == 75 * 15);
        REQUIRE(brute_force_star(g).count == 75 * 15);
    }

    SECTION("coefficients in one power class keep the count") {
        // a_j = alpha^5, alpha^10: both fifth powers, so x -> alpha x rescaling
        auto g = diag(F16, 2, 5, {F16.antilog(5), F16.antilog(10)});
        REQUIRE(count_star_diagonal_b0(g).count == 75);
        REQUIRE(brute_force_star(g).count == 75);
        auto h = diag(F81, 2, 4, {F81.antilog(4), F81.antilog(8)});
        REQUIRE(count_star_diagonal_b0(h).count == 320);
        REQUIRE(brute_force_star(h).count == 320);
    }

    SECTION("dispatcher routes on the constant") {
        auto g = diag(F81, 2, 4, {one81, one81});
        REQUIRE(count_star_diagonal(g).method == CountMethod::ClosedFormB0);
        auto h = diag(F81, 2, 4, {one81, one81}, F81.generator());
        REQUIRE(count_star_diagonal(h).method == CountMethod::ClosedFormBnz);
    }
}

TEST_CASE("diagonal closed form, b != 0") {
    auto F81 = build_field(3, 4);
    auto F729 = build_field(3, 6);
    const FieldElement one81 = F81.one();

    SECTION("branch on whether a_1/b is a d-th power") {
        auto count = [&](const FieldCtx& F, std::uint32_t d, FieldElement b,
                         std::uint64_t expect, Branch expect_branch) {
            auto g = diag(F, 2, d, {F.one(), F.one()}, b);
            auto r = count_star_diagonal_bnz(g);
            REQUIRE(r.count == expect);
            REQUIRE(r.branch == expect_branch);
            REQUIRE(r.method == CountMethod::ClosedFormBnz);
            REQUIRE(brute_force_star(g).count == expect);
        };
        count(F81, 4, F81.generator(), 96, Branch::EtaNe1);
        count(F81, 4, F81.antilog(4), 16, Branch::EtaEq1);
        count(F81, 10, F81.generator(), 0, Branch::EtaNe1);
        count(F81, 10, F81.antilog(10), 700, Branch::EtaEq1);
    }

    SECTION("x^7 + 2y^7 = b over the 729-element field") {
        auto g = diag(F729, 2, 7, {F729.one(), F729.element(2)}, F729.generator());
        auto r = count_star_diagonal_bnz(g);
        REQUIRE(r.count == 588);
        REQUIRE(r.branch == Branch::EtaNe1);
        REQUIRE(brute_force_star(g).count == 588);

        auto h = diag(F729, 2, 7, {F729.one(), F729.element(2)}, F729.one());
        auto r1 = count_star_diagonal_bnz(h);
        REQUIRE(r1.count == 1519);
        REQUIRE(r1.branch == Branch::EtaEq1);
        REQUIRE(brute_force_star(h).count == 1519);
    }

    SECTION("free variables scale the branch count too") {
        auto g = diag(F81, 3, 4, {one81, one81}, F81.generator());
        REQUIRE(count_star_diagonal_bnz(g).count == 96 * 80);
        REQUIRE(brute_force_star(g).count == 96 * 80);
    }

    SECTION("branch labels") {
        REQUIRE(std::string(branch_name(Branch::EtaEq1)) == "eta_eq_1");
        REQUIRE(std::string(branch_name(Branch::EtaNe1)) == "eta_ne_1");
        REQUIRE(branch_name(Branch::None) == nullptr);
    }
}

TEST_CASE("closed form hypothesis violations carry machine-readable reasons") {
    auto F16 = build_field(2, 4);
    auto F81 = build_field(3, 4);
    const FieldElement one = F16.one();

    SECTION("empty") {
        SparsePoly z(F16, 2, {});
        REQUIRE(reason_of([&] { count_star_diagonal_b0(z); }) == "empty_polynomial");
    }
    SECTION("not diagonal") {
        auto cross = mk(F16, 2, {{one, {1, 1}}});
        REQUIRE(reason_of([&] { count_star_diagonal_b0(cross); }) == "not_diagonal");
        auto repeat = mk(F16, 2, {{one, {5, 0}}, {one, {5, 0}}});
        REQUIRE(reason_of([&] { count_star_diagonal_b0(repeat); }) == "not_diagonal");
    }
    SECTION("mixed exponents") {
        auto g = mk(F16, 2, {{one, {5, 0}}, {one, {0, 3}}});
        REQUIRE(reason_of([&] { count_star_diagonal_b0(g); }) == "exponents_differ");
    }
    SECTION("exponent without the divisibility structure") {
        auto g7 = diag(F81, 2, 7, {F81.one(), F81.one()});
        REQUIRE(reason_of([&] { count_star_diagonal_b0(g7); }) == "d_not_admissible");
        auto g8 = diag(F81, 2, 8, {F81.one(), F81.one()});  // 8 | 80, no r works
        REQUIRE(reason_of([&] { count_star_diagonal_b0(g8); }) == "d_not_admissible");
        auto g2 = diag(F81, 2, 2, {F81.one(), F81.one()});
        REQUIRE(reason_of([&] { count_star_diagonal_b0(g2); }) == "d_not_admissible");
    }
    SECTION("coefficients in different power classes") {
        auto g = diag(F16, 2, 5, {one, F16.generator()});
        REQUIRE(reason_of([&] { count_star_diagonal_b0(g); }) ==
                "coefficient_classes_differ");
    }
    SECTION("wrong constant for the path") {
        auto g0 = diag(F16, 2, 5, {one, one});
        auto gb = diag(F16, 2, 5, {one, one}, one);
        REQUIRE(reason_of([&] { count_star_diagonal_b0(gb); }) == "constant_not_zero");
        REQUIRE(reason_of([&] { count_star_diagonal_bnz(g0); }) == "constant_is_zero");
    }
}

TEST_CASE("full counts through a diagonal witness") {
    auto F16 = build_field(2, 4);
    auto F729 = build_field(3, 6);
    const FieldElement one = F16.one();

    SECTION("three variables, two admissible terms") {
        auto f = mk(F16, 3, {{one, {6, 2, 1}}, {one, {1, 7, 11}}});
        auto g = diag(F16, 2, 5, {one, one});
        auto r = count_full(f, g);
        REQUIRE(r.count == 1846);
        REQUIRE(r.method == CountMethod::FullTheorem);
        REQUIRE_FALSE(r.star);
        REQUIRE_FALSE(r.off_torus_verified);
        REQUIRE(brute_force_total(f).count == 1846);
    }

    SECTION("a full pair of terms hiding x^3 + y^3") {
        auto f = mk(F16, 2, {{one, {3, 15}}, {one, {15, 3}}});
        auto g = diag(F16, 2, 3, {one, one});
        REQUIRE(count_full(f, g).count == 31 + 45);  // 16^2 - 15^2 off the torus
        REQUIRE(brute_force_total(f).count == 31 + 45);

        auto fb = mk(F16, 2, {{one, {3, 15}}, {one, {15, 3}}}, F16.generator());
        auto gb = diag(F16, 2, 3, {one, one}, F16.generator());
        auto rb = count_full(fb, gb);
        REQUIRE(rb.count == 18);
        REQUIRE(rb.branch == Branch::EtaNe1);
        REQUIRE(brute_force_total(fb).count == 18);
    }

    SECTION("a term missing a variable is accepted when the zero-coordinate roots check out") {
        // x^7 + 2x^7y^21 = alpha: no roots off the torus, so the torus count is the count
        const FieldElement two = F729.element(2), alpha = F729.generator();
        auto f = mk(F729, 2, {{F729.one(), {7, 0}}, {two, {7, 21}}}, alpha);
        auto g = diag(F729, 2, 7, {F729.one(), two}, alpha);
        auto r = count_full(f, g);
        REQUIRE(r.count == 588);
        REQUIRE(r.branch == Branch::EtaNe1);
        REQUIRE(r.off_torus_verified);
        REQUIRE(brute_force_total(f).count == 588);
    }

    SECTION("the same shape fails honestly when zero coordinates add roots") {
        // with b = 0 the line x = 0 is all roots but y = 0, x != 0 gives none,
        // so the zero-coordinate accounting that fullness would give is wrong
        const FieldElement two = F729.element(2);
        auto f = mk(F729, 2, {{F729.one(), {7, 0}}, {two, {7, 21}}});
        auto g = diag(F729, 2, 7, {F729.one(), two});
        REQUIRE(reason_of([&] { count_full(f, g); }) == "not_full");
    }

    SECTION("a diagonal polynomial used as its own witness") {
        // x^7 + 2y^7 = alpha has no roots with a zero coordinate
        const FieldElement two = F729.element(2), alpha = F729.generator();
        auto g = diag(F729, 2, 7, {F729.one(), two}, alpha);
        auto r = count_full(g, g);
        REQUIRE(r.count == 588);
        REQUIRE(r.off_torus_verified);
        // with b = 0 only the origin lies off the torus, far short of the
        // q^n - (q-1)^n a full polynomial would account for
        auto g0 = diag(F16, 2, 5, {one, one});
        REQUIRE(reason_of([&] { count_full(g0, g0); }) == "not_full");
    }

    SECTION("verification respects the enumeration budget") {
        const FieldElement two = F729.element(2), alpha = F729.generator();
        auto f = mk(F729, 2, {{F729.one(), {7, 0}}, {two, {7, 21}}}, alpha);
        auto g = diag(F729, 2, 7, {F729.one(), two}, alpha);
        CountOptions tight;
        tight.brute_budget = 100;
        REQUIRE(reason_of([&] { count_full(f, g, ConstantColumn::Auto, tight); }) ==
                "not_full");
    }

    SECTION("witness mismatches") {
        auto f = mk(F16, 3, {{one, {6, 2, 1}}, {one, {1, 7, 11}}});
        auto g3 = diag(F16, 2, 3, {one, one});
        REQUIRE(reason_of([&] { count_full(f, g3); }) == "not_star_equivalent");
        auto gc = diag(F16, 2, 5, {one, F16.antilog(5)});
        REQUIRE(reason_of([&] { count_full(f, gc); }) == "not_star_equivalent");
        auto g1 = diag(F16, 2, 5, {one});
        REQUIRE(reason_of([&] { count_full(f, g1); }) == "not_star_equivalent");
        auto bad = mk(F16, 2, {{one, {1, 1}}, {one, {2, 1}}});
        REQUIRE(reason_of([&] { count_full(f, bad); }) == "not_diagonal");
    }

    SECTION("more witness terms than variables in f") {
        auto f = mk(F16, 1, {{one, {3}}, {one, {5}}});
        auto g = diag(F16, 2, 5, {one, one});
        REQUIRE(reason_of([&] { count_full(f, g); }) == "s_exceeds_n");
    }
}

TEST_CASE("additive character sum handles any diagonal equation") {
    auto F16 = build_field(2, 4);
    auto F81 = build_field(3, 4);

    SECTION("x + y = 1 leaves q - 2 torus points") {
        for (auto [p, m] : {std::pair{2u, 4u}, {7u, 1u}, {2u, 1u}}) {
            auto F = build_field(p, m);
            auto g = diag(F, 2, 1, {F.one(), F.one()}, F.one());
            auto r = count_star_charsum(g);
            CAPTURE(p, m);
            REQUIRE(r.count == F.q() - 2);
            REQUIRE(r.method == CountMethod::CharSum);
            REQUIRE(r.star);
        }
    }

    SECTION("agrees with the closed forms where both apply") {
        auto F729 = build_field(3, 6);
        const FieldElement two = F729.element(2), alpha = F729.generator();
        auto a = diag(F16, 2, 5, {F16.one(), F16.one()});
        REQUIRE(count_star_charsum(a).count == 75);
        auto b = diag(F81, 2, 10, {F81.one(), F81.one()});
        REQUIRE(count_star_charsum(b).count == 800);
        auto c = diag(F729, 2, 7, {F729.one(), two}, alpha);
        REQUIRE(count_star_charsum(c).count == 588);
        auto d = diag(F729, 2, 7, {F729.one(), two}, F729.one());
        REQUIRE(count_star_charsum(d).count == 1519);
    }

    SECTION("mixed exponents, none of them structured") {
        auto g = mk(F81, 2, {{F81.element(2), {3, 0}}, {F81.element(5), {0, 7}}},
                    F81.element(11));
        REQUIRE(count_star_charsum(g).count == brute_force_star(g).count);
    }

    SECTION("free variables") {
        auto g = mk(F16, 3, {{F16.one(), {4, 0, 0}}, {F16.element(3), {0, 6, 0}}},
                    F16.element(9));
        REQUIRE(count_star_charsum(g).count == brute_force_star(g).count);
    }

    SECTION("random diagonal equations match the exhaustive count") {
        std::mt19937 rng(20260817);
        for (const auto& F : {std::cref(F16), std::cref(F81)}) {
            for (int it = 0; it < 25; ++it) {
                auto g = random_diagonal(F.get(), rng, 3);
                CAPTURE(F.get().q(), it);
                REQUIRE(count_star_charsum(g).count == brute_force_star(g).count);
            }
        }
    }

    SECTION("preconditions") {
        SparsePoly z(F16, 1, {});
        REQUIRE(reason_of([&] { count_star_charsum(z); }) == "empty_polynomial");
        auto cross = mk(F16, 2, {{F16.one(), {1, 1}}});
        REQUIRE(reason_of([&] { count_star_charsum(cross); }) == "not_diagonal");
    }
}

TEST_CASE("multiplicative character sum handles any sparse equation") {
    auto F16 = build_field(2, 4);
    auto F81 = build_field(3, 4);
    const FieldElement one = F16.one();

    SECTION("degenerate shapes") {
        SparsePoly z0(F16, 2, {});
        REQUIRE(count_star_gaussvec(z0).count == 225);  // 0 = 0 everywhere
        SparsePoly zb(F16, 2, {}, one);
        REQUIRE(count_star_gaussvec(zb).count == 0);  // 0 = 1 nowhere
        auto mono = mk(F16, 2, {{F16.element(7), {2, 3}}});
        REQUIRE(count_star_gaussvec(mono).count == 0);  // units have no zero product
        auto tiny = build_field(2, 1);
        auto line = diag(tiny, 2, 1, {tiny.one(), tiny.one()});
        REQUIRE(count_star_gaussvec(line).count == 1);  // x = y = 1
    }

    SECTION("agrees with the closed forms on diagonal input") {
        auto a = diag(F16, 2, 5, {one, one});
        auto ra = count_star_gaussvec(a);
        REQUIRE(ra.count == 75);
        REQUIRE(ra.method == CountMethod::GaussVector);
        REQUIRE(diag(F81, 2, 4, {F81.one(), F81.one()}).is_diagonal());
        REQUIRE(count_star_gaussvec(diag(F81, 2, 4, {F81.one(), F81.one()})).count ==
                320);
    }

    SECTION("torus count of a non-diagonal pair of terms") {
        auto f = mk(F16, 3, {{one, {6, 2, 1}}, {one, {1, 7, 11}}});
        REQUIRE(count_star_gaussvec(f).count == 75 * 15);
        REQUIRE(brute_force_star(f).count == 75 * 15);
    }

    SECTION("constant column drives the 729-element example") {
        auto F729 = build_field(3, 6);
        const FieldElement two = F729.element(2), alpha = F729.generator();
        auto f = mk(F729, 2, {{F729.one(), {7, 0}}, {two, {7, 21}}}, alpha);
        REQUIRE(count_star_gaussvec(f).count == 588);
    }

    SECTION("more terms than variables") {
        auto f = mk(F16, 1, {{one, {3}}, {one, {5}}, {one, {6}}}, one);
        REQUIRE(count_star_gaussvec(f).count == brute_force_star(f).count);
    }

    SECTION("solution budget") {
        auto f = diag(F16, 2, 15, {one, one});
        CountOptions tight;
        tight.vector_budget = 10;  // the exponent system has 15 solutions
        REQUIRE(reason_of([&] { count_star_gaussvec(f, tight); }) == "budget_exceeded");
        REQUIRE(count_star_gaussvec(f).count == brute_force_star(f).count);
    }

    SECTION("random sparse equations match the exhaustive count") {
        std::mt19937 rng(423706);
        for (const auto& F : {std::cref(F16), std::cref(F81)}) {
            for (int it = 0; it < 25; ++it) {
                auto f = random_sparse(F.get(), rng, 3, 3);
                CAPTURE(F.get().q(), it);
                REQUIRE(count_star_gaussvec(f).count == brute_force_star(f).count);
            }
        }
    }
}

TEST_CASE("methods agree with each other on a shared instance") {
    auto F81 = build_field(3, 4);
    const FieldElement one = F81.one();
    auto g = diag(F81, 2, 4, {one, one}, F81.antilog(4));
    const std::uint64_t expect = 16;
    REQUIRE(count_star_diagonal(g).count == expect);
    REQUIRE(count_star_charsum(g).count == expect);
    REQUIRE(count_star_gaussvec(g).count == expect);
    REQUIRE(brute_force_star(g).count == expect);
}
