#pragma once

#include <set>
#include <span>
#include <utility>
#include <vector>

#include "varind/closure.hpp"
#include "varind/product.hpp"

namespace varind {

/// Forks of a tuple set at coordinate i (1-based): all pairs of i-th
/// coordinates of two members that agree on every earlier coordinate.
std::set<std::pair<int, int>> forks(const ProductContext& ctx,
                                    std::span<const tuple_code> members, int i);

/// A subset R of members that witnesses every projection onto fewer than k
/// coordinates and every fork of the full set. Built by a greedy ascending
/// scan followed by a completion pass for forks whose only witnesses were
/// not retained; the defining clauses are re-verified before returning. The
/// result is one valid representation among many and is not canonical.
std::vector<tuple_code> build_representation(const ProductContext& ctx,
                                             std::span<const tuple_code> members, int k);

/// True iff the closure generated by rep equals the subuniverse exactly.
bool representation_generates(const ProductContext& ctx,
                              std::span<const tuple_code> rep,
                              std::span<const tuple_code> subuniverse);

}  // namespace varind
