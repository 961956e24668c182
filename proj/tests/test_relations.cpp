#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "varind/closure.hpp"
#include "varind/errors.hpp"
#include "varind/relations.hpp"

using namespace varind;
using namespace testutil;

namespace {

std::vector<tuple_code> full_universe(const ProductContext& ctx) {
    std::vector<tuple_code> u;
    for (tuple_code c = 0; c < ctx.carrier; ++c) u.push_back(c);
    return u;
}

std::vector<int> full_carrier(const Algebra& a) {
    std::vector<int> u;
    for (int i = 0; i < a.size; ++i) u.push_back(i);
    return u;
}

// Literal enumeration: closes every subset of off-diagonal pairs. Only
// feasible for tiny carriers; pins the join-based enumeration.
std::vector<std::set<CodePair>> tolerances_by_subsets(const Algebra& alg) {
    ProductContext base = make_product_context(alg, alg, 1, 0);
    std::vector<tuple_code> universe = full_universe(base);
    std::vector<CodePair> offdiag;
    for (int u = 0; u < alg.size; ++u)
        for (int v = u + 1; v < alg.size; ++v)
            offdiag.emplace_back(static_cast<unsigned>(u), static_cast<unsigned>(v));
    std::set<std::set<CodePair>> seen;
    for (std::uint32_t mask = 0; mask < (1u << offdiag.size()); ++mask) {
        std::vector<CodePair> seeds;
        for (std::size_t i = 0; i < offdiag.size(); ++i)
            if (mask >> i & 1) seeds.push_back(offdiag[i]);
        seen.insert(principal_tolerance(base, universe, seeds).pairs);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

TEST_CASE("principal_tolerance examples") {
    Algebra two = z2();
    ProductContext base = make_product_context(two, two, 1, 0);
    auto universe = full_universe(base);

    BinRel full = principal_tolerance(base, universe, std::array{CodePair{0, 1}});
    CHECK(full.pairs.size() == 4);

    BinRel diag = principal_tolerance(base, universe, {});
    CHECK(diag.pairs == std::set<CodePair>{{0, 0}, {1, 1}});

    Algebra three = z3();
    ProductContext base3 = make_product_context(three, three, 1, 0);
    BinRel full3 = principal_tolerance(base3, full_universe(base3),
                                       std::array{CodePair{0, 1}});
    CHECK(full3.pairs.size() == 9);
}

TEST_CASE("principal_congruence examples") {
    Algebra four = z4();
    ProductContext base = make_product_context(four, four, 1, 0);
    BinRel mod2 = principal_congruence(base, full_universe(base),
                                       std::array{CodePair{0, 2}});
    // classes {0,2}, {1,3}
    std::set<CodePair> want;
    for (unsigned u = 0; u < 4; ++u)
        for (unsigned v = 0; v < 4; ++v)
            if ((u & 1) == (v & 1)) want.emplace(u, v);
    CHECK(mod2.pairs == want);

    BinRel diag = principal_congruence(base, full_universe(base), {});
    CHECK(diag.pairs.size() == 4);

    // skew kernel of (a,b) -> a+b on Z2 x Z2
    Algebra two = z2();
    ProductContext prod = make_product_context(two, two, 1, 1);
    BinRel skew = principal_congruence(prod, full_universe(prod),
                                       std::array{CodePair{0, 3}});
    std::set<CodePair> kernel;
    for (unsigned u = 0; u < 4; ++u)
        for (unsigned v = 0; v < 4; ++v) {
            auto parity = [](unsigned c) { return (c / 2 + c % 2) % 2; };
            if (parity(u) == parity(v)) kernel.emplace(u, v);
        }
    CHECK(skew.pairs == kernel);
}

TEST_CASE("principal closures satisfy their defining properties") {
    std::mt19937 rng(17);
    for (const Algebra& alg : {z2(), z3(), z4(), lattice2(), semilattice2()}) {
        ProductContext base = make_product_context(alg, alg, 1, 0);
        auto universe = full_universe(base);
        std::uniform_int_distribution<int> el(0, alg.size - 1);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<CodePair> seeds;
            for (int i = 0; i < 2; ++i)
                seeds.emplace_back(static_cast<unsigned>(el(rng)),
                                   static_cast<unsigned>(el(rng)));
            BinRel tol = principal_tolerance(base, universe, seeds);
            CHECK(tol.is_reflexive());
            CHECK(tol.is_symmetric());
            CHECK(tol.is_operation_closed());
            BinRel cong = principal_congruence(base, universe, seeds);
            CHECK(cong.is_reflexive());
            CHECK(cong.is_symmetric());
            CHECK(cong.is_transitive());
            CHECK(cong.is_operation_closed());
            for (const auto& p : tol.pairs) CHECK(cong.pairs.count(p) == 1);
        }
    }
}

TEST_CASE("seed validation") {
    Algebra two = z2();
    ProductContext base = make_product_context(two, two, 1, 0);
    std::vector<tuple_code> partial{0};
    CHECK_THROWS_AS(
        principal_tolerance(base, partial, std::array{CodePair{0, 1}}),
        precondition_error);  // seed outside universe
    Algebra four = z4();
    ProductContext b4 = make_product_context(four, four, 1, 0);
    std::vector<tuple_code> not_closed{0, 1};
    CHECK_THROWS_AS(principal_tolerance(b4, not_closed, {}), precondition_error);
}

TEST_CASE("decompose_product_relation examples") {
    Algebra two = z2(), three = z3();
    ProductContext prod = make_product_context(two, three, 1, 1);
    auto universe = full_universe(prod);

    BinRel full = principal_tolerance(prod, universe, std::array{CodePair{0, 5}});
    REQUIRE(full.pairs.size() == 36);
    RelDecomposition d1 = decompose_product_relation(full);
    CHECK(d1.is_product);
    CHECK(d1.alpha.pairs.size() == 4);
    CHECK(d1.beta.pairs.size() == 9);

    BinRel diag = principal_tolerance(prod, universe, {});
    RelDecomposition d2 = decompose_product_relation(diag);
    CHECK(d2.is_product);
    CHECK(d2.alpha.pairs.size() == 2);
    CHECK(d2.beta.pairs.size() == 3);

    ProductContext sq = make_product_context(two, two, 1, 1);
    BinRel skew = principal_congruence(sq, full_universe(sq),
                                       std::array{CodePair{0, 3}});
    RelDecomposition d3 = decompose_product_relation(skew);
    CHECK_FALSE(d3.is_product);
    REQUIRE(d3.witness.has_value());
    // the witness lies in (alpha x beta) \ rel
    auto [p, q] = *d3.witness;
    CHECK(d3.alpha.contains(p / 2, q / 2));
    CHECK(d3.beta.contains(p % 2, q % 2));
    CHECK_FALSE(skew.contains(p, q));
}

TEST_CASE("decompose recovers factors of componentwise products") {
    // build alpha x_c beta from enumerated tolerances and decompose it
    for (const Algebra& a : {z2(), semilattice2()}) {
        for (const Algebra& b : {z2(), semilattice2()}) {
            if (!(a.sig == b.sig)) continue;
            ProductContext prod = make_product_context(a, b, 1, 1);
            auto universe = full_universe(prod);
            for (const BinRel& alpha : enumerate_tolerances(a)) {
                for (const BinRel& beta : enumerate_tolerances(b)) {
                    BinRel gamma;
                    gamma.base = prod;
                    gamma.universe = universe;
                    for (const auto& [a1, a2] : alpha.pairs)
                        for (const auto& [b1, b2] : beta.pairs)
                            gamma.pairs.emplace(
                                a1 * static_cast<unsigned>(b.size) + b1,
                                a2 * static_cast<unsigned>(b.size) + b2);
                    RelDecomposition dec = decompose_product_relation(gamma);
                    CHECK(dec.is_product);
                    CHECK(dec.alpha.pairs == alpha.pairs);
                    CHECK(dec.beta.pairs == beta.pairs);
                }
            }
        }
    }
}

TEST_CASE("relation_as_subalgebra mirrors decomposability") {
    Algebra two = z2(), three = z3();
    ProductContext prod = make_product_context(two, three, 1, 1);
    BinRel diag = principal_tolerance(prod, full_universe(prod), {});
    SubalgebraView ed = relation_as_subalgebra(diag);
    CHECK(ed.members.size() == 6);
    CHECK_FALSE(is_product_subuniverse(ed.ctx, ed.members).has_value());

    BinRel full = principal_tolerance(prod, full_universe(prod),
                                      std::array{CodePair{0, 5}});
    SubalgebraView ef = relation_as_subalgebra(full);
    CHECK(ef.members.size() == 36);  // the full relation fills A^2 x B^2
    CHECK_FALSE(is_product_subuniverse(ef.ctx, ef.members).has_value());

    ProductContext sq = make_product_context(two, two, 1, 1);
    BinRel skew = principal_congruence(sq, full_universe(sq),
                                       std::array{CodePair{0, 3}});
    SubalgebraView es = relation_as_subalgebra(skew);
    CHECK(is_product_subuniverse(es.ctx, es.members).has_value());

    // E(gamma) is operation-closed: regenerating it adds nothing
    ClosureResult regen = generate_subuniverse(es.ctx, es.members, 1000);
    CHECK(sorted_codes(regen.members) == es.members);
}

TEST_CASE("enumerate_tolerances counts") {
    CHECK(enumerate_tolerances(z2()).size() == 2);
    CHECK(enumerate_tolerances(z3()).size() == 2);
    CHECK(enumerate_tolerances(trivial_algebra(z2().sig, "One")).size() == 1);
    CHECK(enumerate_tolerances(z4()).size() == 3);  // diagonal, mod 2, full
    CHECK_THROWS_AS(enumerate_tolerances(cyclic_group(5, "Z5")), limit_error);
    CHECK(enumerate_tolerances(cyclic_group(5, "Z5"), 5).size() == 2);
}

TEST_CASE("join enumeration equals literal subset enumeration") {
    for (const Algebra& alg :
         {z2(), z3(), z4(), lattice2(), semilattice2(), cyclic_with_unary(3, 2, 1, "Z3u")}) {
        auto literal = tolerances_by_subsets(alg);
        auto joined = enumerate_tolerances(alg);
        REQUIRE(literal.size() == joined.size());
        std::set<std::set<CodePair>> got;
        for (const auto& rel : joined) got.insert(rel.pairs);
        for (const auto& pairs : literal) CHECK(got.count(pairs) == 1);
    }
}

TEST_CASE("all_tolerances_product examples") {
    Algebra two = z2(), three = z3();
    auto r23 = all_tolerances_product(two, three, full_carrier(two), full_carrier(three));
    CHECK(r23.all_product);
    CHECK(r23.closures > 0);

    auto r22 = all_congruences_product(two, two, full_carrier(two), full_carrier(two));
    CHECK_FALSE(r22.all_product);
    REQUIRE(r22.failing_seeds.has_value());
    REQUIRE(r22.failing_relation.has_value());
    // the failing relation really is not a product relation
    RelDecomposition dec = decompose_product_relation(*r22.failing_relation);
    CHECK_FALSE(dec.is_product);
    // and the reported mixed pair is genuinely absent
    REQUIRE(r22.missing.has_value());
    CHECK_FALSE(r22.failing_relation->pairs.count(*r22.missing));

    // one-element F: every relation is trivially a product
    Algebra one = trivial_algebra(two.sig, "One");
    auto r21 = all_tolerances_product(two, one, full_carrier(two), full_carrier(one));
    CHECK(r21.all_product);
}

TEST_CASE("tolerance sweep agrees with brute-force enumeration") {
    struct PairCase {
        Algebra a, b;
    };
    std::vector<PairCase> cases;
    for (const Algebra& a : {z2(), z3()})
        for (const Algebra& b : {z2(), z3()}) cases.push_back({a, b});
    cases.push_back({semilattice2(), semilattice2()});
    cases.push_back({lattice2(), lattice2()});

    for (const auto& [a, b] : cases) {
        auto sweep = all_tolerances_product(a, b, full_carrier(a), full_carrier(b));
        Algebra prod = product_algebra(a, b);
        bool brute = true;
        for (const BinRel& tol : enumerate_tolerances(prod, prod.size)) {
            BinRel on_product = tol;
            on_product.base = make_product_context(a, b, 1, 1);
            if (!decompose_product_relation(on_product).is_product) brute = false;
        }
        CHECK(sweep.all_product == brute);
    }
}

TEST_CASE("parallel sweep reaches the same verdict") {
    Algebra two = z2(), three = z3();
    auto seq = all_tolerances_product(two, three, full_carrier(two), full_carrier(three), 1);
    auto par = all_tolerances_product(two, three, full_carrier(two), full_carrier(three), 4);
    CHECK(seq.all_product == par.all_product);

    auto seq2 = all_congruences_product(two, two, full_carrier(two), full_carrier(two), 1);
    auto par2 = all_congruences_product(two, two, full_carrier(two), full_carrier(two), 4);
    CHECK(seq2.all_product == par2.all_product);
}
