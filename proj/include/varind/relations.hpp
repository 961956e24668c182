#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "varind/product.hpp"

namespace varind {

using CodePair = std::pair<tuple_code, tuple_code>;

/// A binary relation on a subuniverse of a single algebra (base with m=1,
/// n=0) or of a binary product (base with m=n=1).
struct BinRel {
    ProductContext base;
    std::vector<tuple_code> universe;  // sorted
    std::set<CodePair> pairs;

    bool contains(tuple_code u, tuple_code v) const { return pairs.count({u, v}) != 0; }
    bool is_reflexive() const;
    bool is_symmetric() const;
    bool is_transitive() const;
    bool is_operation_closed() const;
};

/// Least reflexive, symmetric, operation-closed relation on the universe
/// containing the seeds. The universe must be a subuniverse of the base.
BinRel principal_tolerance(const ProductContext& base,
                           std::span<const tuple_code> universe,
                           std::span<const CodePair> seeds);

/// As principal_tolerance, with transitive closure interleaved.
BinRel principal_congruence(const ProductContext& base,
                            std::span<const tuple_code> universe,
                            std::span<const CodePair> seeds);

struct RelDecomposition {
    bool is_product = false;
    BinRel alpha;  // on the first factor
    BinRel beta;   // on the second factor
    std::optional<CodePair> witness;  // a pair in (alpha x_c beta) \ rel
};

/// Splits a reflexive symmetric relation on E x F into factor relations
/// alpha and beta; the relation is a product relation iff their
/// componentwise product equals it, otherwise a witness pair is returned.
RelDecomposition decompose_product_relation(const BinRel& rel);

struct ProductRelationSweep {
    bool all_product = true;
    std::optional<std::array<CodePair, 2>> failing_seeds;
    std::optional<CodePair> missing;       // mixed pair absent from the relation
    std::optional<BinRel> failing_relation;
    std::uint64_t closures = 0;
};

/// Decides whether every tolerance of E x F (E a subuniverse of A, F of B)
/// is a product tolerance, by sweeping all 2-generated tolerances and
/// checking that they contain the mixed recombinations of their seeds. The
/// reduction is exact: a tolerance containing seeds p, q contains their
/// principal tolerance, so mixing-closure of all 2-generated tolerances
/// forces mixing-closure of every tolerance, and mixing-closure is
/// equivalent to being a product relation.
ProductRelationSweep all_tolerances_product(const Algebra& a, const Algebra& b,
                                            std::span<const int> e_universe,
                                            std::span<const int> f_universe,
                                            int threads = 1);

/// Same sweep with principal congruences.
ProductRelationSweep all_congruences_product(const Algebra& a, const Algebra& b,
                                             std::span<const int> e_universe,
                                             std::span<const int> f_universe,
                                             int threads = 1);

struct SubalgebraView {
    ProductContext ctx;  // A^2 x B^2
    std::vector<tuple_code> members;
};

/// Reindexes a relation on A x B as the tuple set {((a1,a2),(b1,b2)) :
/// ((a1,b1),(a2,b2)) in rel} inside A^2 x B^2. The relation is a product
/// relation iff the tuple set is a product subuniverse.
SubalgebraView relation_as_subalgebra(const BinRel& rel);

/// All tolerances of a small algebra, enumerated through joins of principal
/// tolerances. Exponential in the worst case; intended as a test oracle.
std::vector<BinRel> enumerate_tolerances(const Algebra& alg, int size_bound = 4);

}  // namespace varind
