#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "varind/closure.hpp"
#include "varind/errors.hpp"
#include "varind/representation.hpp"

using namespace varind;
using namespace testutil;

namespace {

std::vector<tuple_code> codes(const ProductContext& ctx,
                              const std::vector<std::vector<int>>& tuples) {
    std::vector<tuple_code> out;
    for (const auto& t : tuples) out.push_back(encode_tuple(ctx, t));
    return out;
}

}  // namespace

TEST_CASE("tuple codes round-trip") {
    ProductContext ctx = make_product_context(z2(), z4(), 2, 3);
    std::mt19937 rng(5);
    for (int i = 0; i < 50; ++i) {
        tuple_code c = rng() % static_cast<unsigned>(ctx.carrier);
        CHECK(encode_tuple(ctx, decode_tuple(ctx, c)) == c);
    }
    CHECK(format_tuple(ctx, 0) == "(0,0|0,0,0)");
    CHECK(format_tuple(ctx, ctx.carrier - 1, true) == "(1,1 | 3,3,3)");
}

TEST_CASE("context construction validates inputs") {
    CHECK_THROWS_AS(make_product_context(z2(), lattice2(), 1, 1), precondition_error);
    CHECK_THROWS_AS(make_product_context(z4(), z4(), 80, 0), capacity_error);
    // A^0 x B^0 has exactly one element
    ProductContext ctx = make_product_context(z2(), z3(), 0, 0);
    CHECK(ctx.carrier == 1);
    ClosureResult res = generate_subuniverse(ctx, std::vector<tuple_code>{0}, 4);
    CHECK(res.members == std::vector<tuple_code>{0});
}

TEST_CASE("generate_subuniverse on Z4 from one generator") {
    ProductContext ctx = make_product_context(z4(), z4(), 1, 0);
    ClosureResult res = generate_subuniverse(ctx, std::vector<tuple_code>{1}, 100);
    CHECK_FALSE(res.truncated);
    CHECK(res.members == std::vector<tuple_code>{1, 2, 3, 0});
}

TEST_CASE("generate_subuniverse in Z2 x Z4") {
    ProductContext ctx = make_product_context(z2(), z4(), 1, 1);
    auto gens = codes(ctx, {{1, 1}, {0, 2}});
    ClosureResult res = generate_subuniverse(ctx, gens, 100);
    CHECK_FALSE(res.truncated);
    CHECK(res.members == codes(ctx, {{1, 1}, {0, 2}, {1, 3}, {0, 0}}));
    CHECK(sorted_codes(res.members) == sorted_codes(naive_closure(ctx, gens)));
    CHECK_FALSE(res.contains(encode_tuple(ctx, std::vector<int>{1, 2})));
}

TEST_CASE("generate_subuniverse in Z2 x Z3 reaches all six elements") {
    ProductContext ctx = make_product_context(z2(), z3(), 1, 1);
    auto gens = codes(ctx, {{1, 1}, {0, 2}});
    ClosureResult res = generate_subuniverse(ctx, gens, 100);
    CHECK(res.members.size() == 6);
    CHECK(sorted_codes(res.members) == sorted_codes(naive_closure(ctx, gens)));
}

TEST_CASE("closure of the empty set is empty without nullary operations") {
    ProductContext ctx = make_product_context(z3(), z3(), 1, 0);
    ClosureResult res = generate_subuniverse(ctx, {}, 10);
    CHECK(res.members.empty());
    CHECK_FALSE(res.truncated);
}

TEST_CASE("nullary operations seed the closure") {
    Algebra a = z3();
    a.sig.symbols.push_back({"one", 0});
    a.tables.push_back({1});
    ProductContext ctx = make_product_context(a, a, 1, 0);
    ClosureResult res = generate_subuniverse(ctx, {}, 10);
    CHECK(sorted_codes(res.members) == std::vector<tuple_code>{0, 1, 2});
    // the constant's derivation replays to a constant term, not a variable
    auto t = member_term(res, 1, {});
    REQUIRE(t.has_value());
    CHECK(term_to_string(a.sig, *t) == "(one)");
}

TEST_CASE("limit truncation is flagged, not an error") {
    ProductContext ctx = make_product_context(z4(), z4(), 1, 0);
    ClosureResult res = generate_subuniverse(ctx, std::vector<tuple_code>{1}, 2);
    CHECK(res.truncated);
    CHECK(res.members.size() == 2);
    CHECK_THROWS_AS(
        generate_subuniverse(ctx, std::vector<tuple_code>{static_cast<unsigned>(99)}, 10),
        precondition_error);
}

TEST_CASE("generate_subuniverse is idempotent and monotone") {
    std::mt19937 rng(11);
    ProductContext ctx = make_product_context(z2(), z3(), 2, 1);
    for (int i = 0; i < 20; ++i) {
        std::vector<tuple_code> g1, g2;
        for (int j = 0; j < 2; ++j)
            g1.push_back(rng() % static_cast<unsigned>(ctx.carrier));
        g2 = g1;
        g2.push_back(rng() % static_cast<unsigned>(ctx.carrier));

        ClosureResult r1 = generate_subuniverse(ctx, g1, 1000);
        ClosureResult again = generate_subuniverse(ctx, r1.members, 1000);
        CHECK(sorted_codes(again.members) == sorted_codes(r1.members));

        ClosureResult r2 = generate_subuniverse(ctx, g2, 1000);
        for (tuple_code c : r1.members) CHECK(r2.contains(c));
    }
}

TEST_CASE("member_term replays derivations") {
    ProductContext z3ctx = make_product_context(z3(), z3(), 1, 0);
    ClosureResult res = generate_subuniverse(z3ctx, std::vector<tuple_code>{1}, 10);
    const int vars[] = {0};
    auto t = member_term(res, 2, vars);
    REQUIRE(t.has_value());
    CHECK(term_to_string(z3().sig, *t) == "(+ x0 x0)");
    CHECK(member_term(res, 1, vars).has_value());
    CHECK(term_to_string(z3().sig, *member_term(res, 1, vars)) == "x0");

    ProductContext ctx = make_product_context(z2(), z4(), 1, 1);
    auto gens = codes(ctx, {{1, 1}, {0, 2}});
    ClosureResult mixed = generate_subuniverse(ctx, gens, 100);
    const int vars2[] = {0, 1};
    CHECK_FALSE(member_term(mixed, encode_tuple(ctx, std::vector<int>{1, 2}), vars2)
                    .has_value());
    CHECK_THROWS_AS(member_term(mixed, gens[0], vars), precondition_error);
}

TEST_CASE("member_term soundness on random closures") {
    std::mt19937 rng(23);
    const int vars[] = {0, 1, 2};
    for (int i = 0; i < 15; ++i) {
        ProductContext ctx = make_product_context(z2(), z3(), 1 + static_cast<int>(rng() % 2),
                                                  1 + static_cast<int>(rng() % 2));
        std::vector<tuple_code> gens;
        for (int j = 0; j < 3; ++j)
            gens.push_back(rng() % static_cast<unsigned>(ctx.carrier));
        ClosureResult res = generate_subuniverse(ctx, gens, 1000);
        REQUIRE_FALSE(res.truncated);
        for (tuple_code member : res.members) {
            auto t = member_term(res, member, vars);
            REQUIRE(t.has_value());
            CHECK(eval_term_in_product(ctx, *t, gens) == member);
        }
    }
}

TEST_CASE("is_product_subuniverse follows the given scan order") {
    ProductContext ctx = make_product_context(z2(), z4(), 1, 1);
    auto members = codes(ctx, {{1, 1}, {0, 2}, {1, 3}, {0, 0}});
    auto violation = is_product_subuniverse(ctx, members);
    REQUIRE(violation.has_value());
    CHECK(violation->p == encode_tuple(ctx, std::vector<int>{1, 1}));
    CHECK(violation->q == encode_tuple(ctx, std::vector<int>{0, 2}));
    CHECK(violation->missing == encode_tuple(ctx, std::vector<int>{1, 2}));

    // full carrier and singletons are always product subuniverses
    std::vector<tuple_code> full;
    for (unsigned c = 0; c < ctx.carrier; ++c) full.push_back(c);
    CHECK_FALSE(is_product_subuniverse(ctx, full).has_value());
    CHECK_FALSE(is_product_subuniverse(ctx, codes(ctx, {{1, 3}})).has_value());
}

TEST_CASE("forks examples in Z2 squared") {
    ProductContext ctx = make_product_context(z2(), z2(), 2, 0);
    using pairset = std::set<std::pair<int, int>>;

    auto both = codes(ctx, {{0, 0}, {0, 1}});
    CHECK(forks(ctx, both, 2) == pairset{{0, 0}, {0, 1}, {1, 0}, {1, 1}});

    auto diag = codes(ctx, {{0, 0}, {1, 1}});
    CHECK(forks(ctx, diag, 2) == pairset{{0, 0}, {1, 1}});

    CHECK(forks(ctx, both, 1) == pairset{{0, 0}});

    CHECK_THROWS_AS(forks(ctx, both, 3), precondition_error);
}

TEST_CASE("forks always contain the diagonal of occurring values") {
    std::mt19937 rng(31);
    ProductContext ctx = make_product_context(z3(), z2(), 2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<tuple_code> members;
        for (int j = 0; j < 6; ++j)
            members.push_back(rng() % static_cast<unsigned>(ctx.carrier));
        for (int i = 1; i <= ctx.coords(); ++i) {
            auto f = forks(ctx, members, i);
            for (tuple_code t : members) {
                int v = decode_tuple(ctx, t)[static_cast<std::size_t>(i - 1)];
                CHECK(f.count({v, v}) == 1);
            }
        }
    }
}

TEST_CASE("build_representation on small sets") {
    ProductContext ctx = make_product_context(z2(), z2(), 3, 0);
    std::vector<tuple_code> full;
    for (unsigned c = 0; c < 8; ++c) full.push_back(c);
    auto rep = build_representation(ctx, full, 2);
    CHECK(rep.size() <= full.size());
    // singleton stays a singleton
    auto single = codes(ctx, {{1, 0, 1}});
    CHECK(build_representation(ctx, single, 2) == single);
    // in Z3^1 every one-coordinate projection value needs a witness
    ProductContext z3ctx = make_product_context(z3(), z3(), 1, 0);
    std::vector<tuple_code> z3full{0, 1, 2};
    CHECK(build_representation(z3ctx, z3full, 2) == z3full);
}

TEST_CASE("representations generate their subuniverse") {
    // subuniverses of powers of algebras with a verified edge term
    Algebra two = z2(), three = z3(), l2 = lattice2();
    TermPtr e2 = malcev_to_edge(linear_sum(two.sig, {1, 1, 1}), 2);
    TermPtr e3 = malcev_to_edge(linear_sum(three.sig, {1, 2, 1}), 2);
    TermPtr el = majority_to_edge(
        parse_term(l2.sig, "(join (meet x0 x1) (join (meet x1 x2) (meet x0 x2)))"));
    REQUIRE(verify_edge_term(two, e2, 2));
    REQUIRE(verify_edge_term(three, e3, 2));
    REQUIRE(verify_edge_term(l2, el, 3));

    std::mt19937 rng(47);
    struct Case {
        Algebra alg;
        int k;
    };
    const Case cases[] = {{two, 2}, {three, 2}, {l2, 3}};
    for (const auto& [alg, k] : cases) {
        for (int n = 2; n <= 3; ++n) {
            ProductContext ctx = make_product_context(alg, alg, n, 0);
            for (int trial = 0; trial < 6; ++trial) {
                std::vector<tuple_code> gens;
                for (int j = 0; j < 2; ++j)
                    gens.push_back(rng() % static_cast<unsigned>(ctx.carrier));
                ClosureResult sub = generate_subuniverse(ctx, gens, 10000);
                REQUIRE_FALSE(sub.truncated);
                auto rep = build_representation(ctx, sub.members, k);
                CHECK(representation_generates(ctx, rep, sub.members));
            }
        }
    }
}

TEST_CASE("representation_generates edge cases") {
    ProductContext ctx = make_product_context(z3(), z3(), 1, 0);
    std::vector<tuple_code> full{0, 1, 2};
    CHECK(representation_generates(ctx, full, full));      // a set generates itself
    CHECK_FALSE(representation_generates(ctx, {}, full));  // empty set, no constants
}
