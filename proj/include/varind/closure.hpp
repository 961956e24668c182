#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "varind/product.hpp"
#include "varind/term.hpp"

namespace varind {

/// Membership set over tuple codes: a dense bit vector for small carriers,
/// a hash set otherwise.
class CodeSet {
public:
    CodeSet() = default;
    explicit CodeSet(tuple_code carrier);

    bool insert(tuple_code c);  // true if newly inserted
    bool contains(tuple_code c) const;

private:
    bool dense_ = false;
    std::vector<std::uint64_t> bits_;
    std::unordered_set<tuple_code, CodeHash> set_;
};

/// How a closure member was first obtained: either it is the generator with
/// the given index, or the operation sym applied to earlier members.
struct Derivation {
    int sym = -1;        // signature symbol, or -1 for a generator
    int generator = -1;  // index into the generator list, or -1
    std::vector<std::uint32_t> args;  // member indices, all strictly earlier
};

struct ClosureResult {
    ProductContext ctx;
    std::vector<tuple_code> members;  // discovery order; generators first
    std::vector<Derivation> derivations;
    std::size_t generator_count = 0;
    bool truncated = false;

    bool contains(tuple_code c) const { return index.contains(c); }
    std::optional<std::uint32_t> index_of(tuple_code c) const;  // linear scan

    CodeSet index;
};

/// Least subuniverse of the ambient product containing the generators and the
/// values of all nullary operations. Elements are produced in breadth-first
/// rounds, so each derivation has minimal depth. If the member count would
/// exceed limit, generation stops with truncated = true (not an error).
ClosureResult generate_subuniverse(const ProductContext& ctx,
                                   std::span<const tuple_code> generators,
                                   std::size_t limit);

/// Replays the derivation of target into a term over the signature whose
/// evaluation at the generators (coordinatewise in the product) equals
/// target. generator_vars assigns one variable index per generator.
std::optional<TermPtr> member_term(const ClosureResult& res, tuple_code target,
                                   std::span<const int> generator_vars);

/// Evaluates t coordinatewise at the given product elements.
tuple_code eval_term_in_product(const ProductContext& ctx, const TermPtr& t,
                                std::span<const tuple_code> args);

/// Witness that a member set is not mixing-closed: the A-part of p combined
/// with the B-part of q is missing.
struct MixingViolation {
    tuple_code p = 0;
    tuple_code q = 0;
    tuple_code missing = 0;
};

/// Checks whether for all p, q in members the mixed tuple (A-part of p,
/// B-part of q) is again a member. Returns the first violation in the order
/// of the given member list, or nullopt if the set is a product subuniverse.
std::optional<MixingViolation> is_product_subuniverse(const ProductContext& ctx,
                                                      std::span<const tuple_code> members);

}  // namespace varind
