#include "varind/representation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "varind/errors.hpp"

namespace varind {

namespace {

// Code formed by the digits at coordinates 0..c-1 (0 when c == 0).
tuple_code prefix_code(const ProductContext& ctx, tuple_code code, int c) {
    return c == 0 ? tuple_code{0} : code / ctx.weights[static_cast<std::size_t>(c - 1)];
}

int digit_at(const ProductContext& ctx, tuple_code code, int c) {
    return static_cast<int>(code / ctx.weights[static_cast<std::size_t>(c)] %
                            static_cast<unsigned>(ctx.radix(c)));
}

std::set<std::pair<int, int>> forks_impl(const ProductContext& ctx,
                                         std::span<const tuple_code> members, int c) {
    std::map<tuple_code, std::set<int>> groups;
    for (tuple_code t : members)
        groups[prefix_code(ctx, t, c)].insert(digit_at(ctx, t, c));
    std::set<std::pair<int, int>> out;
    for (const auto& [prefix, vals] : groups)
        for (int u : vals)
            for (int v : vals) out.emplace(u, v);
    return out;
}

// All nonempty coordinate subsets of size < k, each as an index list.
std::vector<std::vector<int>> small_subsets(int coords, int k) {
    std::vector<std::vector<int>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << coords); ++mask) {
        std::vector<int> t;
        for (int c = 0; c < coords; ++c)
            if (mask >> c & 1) t.push_back(c);
        if (static_cast<int>(t.size()) < k) out.push_back(std::move(t));
    }
    return out;
}

tuple_code projection_key(const ProductContext& ctx, tuple_code code,
                          std::span<const int> subset) {
    tuple_code key = 0;
    for (int c : subset)
        key = key * static_cast<unsigned>(ctx.radix(c)) +
              static_cast<unsigned>(digit_at(ctx, code, c));
    return key;
}

}  // namespace

std::set<std::pair<int, int>> forks(const ProductContext& ctx,
                                    std::span<const tuple_code> members, int i) {
    if (i < 1 || i > ctx.coords()) throw precondition_error("fork index out of range");
    return forks_impl(ctx, members, i - 1);
}

std::vector<tuple_code> build_representation(const ProductContext& ctx,
                                             std::span<const tuple_code> members, int k) {
    if (k < 2) throw precondition_error("representations require k >= 2");
    if (ctx.coords() > 62) throw capacity_error("too many coordinates");
    const int coords = ctx.coords();

    std::vector<tuple_code> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    std::vector<std::vector<int>> subsets = small_subsets(coords, k);

    // Coverage state for the retained set.
    std::vector<std::set<tuple_code>> proj_seen(subsets.size());
    std::vector<std::map<tuple_code, std::set<int>>> retained_vals(
        static_cast<std::size_t>(coords));
    std::vector<std::set<std::pair<int, int>>> fork_covered(
        static_cast<std::size_t>(coords));
    std::set<tuple_code> retained;

    auto retain = [&](tuple_code t) {
        if (!retained.insert(t).second) return;
        for (std::size_t s = 0; s < subsets.size(); ++s)
            proj_seen[s].insert(projection_key(ctx, t, subsets[s]));
        for (int c = 0; c < coords; ++c) {
            tuple_code pre = prefix_code(ctx, t, c);
            int d = digit_at(ctx, t, c);
            auto& vals = retained_vals[static_cast<std::size_t>(c)][pre];
            for (int v : vals) {
                fork_covered[static_cast<std::size_t>(c)].emplace(v, d);
                fork_covered[static_cast<std::size_t>(c)].emplace(d, v);
            }
            fork_covered[static_cast<std::size_t>(c)].emplace(d, d);
            vals.insert(d);
        }
    };

    auto adds_coverage = [&](tuple_code t) {
        for (std::size_t s = 0; s < subsets.size(); ++s)
            if (!proj_seen[s].count(projection_key(ctx, t, subsets[s]))) return true;
        for (int c = 0; c < coords; ++c) {
            tuple_code pre = prefix_code(ctx, t, c);
            int d = digit_at(ctx, t, c);
            if (!fork_covered[static_cast<std::size_t>(c)].count({d, d})) return true;
            auto it = retained_vals[static_cast<std::size_t>(c)].find(pre);
            if (it == retained_vals[static_cast<std::size_t>(c)].end()) continue;
            for (int v : it->second)
                if (!fork_covered[static_cast<std::size_t>(c)].count({v, d})) return true;
        }
        return false;
    };

    for (tuple_code t : sorted)
        if (adds_coverage(t)) retain(t);

    // Completion pass: a fork may be witnessed only by pairs whose first
    // member the scan discarded; retain the earliest witnessing pair.
    for (int c = 0; c < coords; ++c) {
        for (const auto& [x, y] : forks_impl(ctx, sorted, c)) {
            if (fork_covered[static_cast<std::size_t>(c)].count({x, y})) continue;
            bool done = false;
            for (std::size_t i = 0; i < sorted.size() && !done; ++i) {
                if (digit_at(ctx, sorted[i], c) != x) continue;
                tuple_code pre = prefix_code(ctx, sorted[i], c);
                for (std::size_t j = 0; j < sorted.size() && !done; ++j) {
                    if (digit_at(ctx, sorted[j], c) != y) continue;
                    if (prefix_code(ctx, sorted[j], c) != pre) continue;
                    retain(sorted[i]);
                    retain(sorted[j]);
                    done = true;
                }
            }
        }
    }

    std::vector<tuple_code> result(retained.begin(), retained.end());

    // The defining clauses must hold for the result; anything else is a bug
    // in the construction above.
    for (const auto& subset : subsets) {
        std::set<tuple_code> want, got;
        for (tuple_code t : sorted) want.insert(projection_key(ctx, t, subset));
        for (tuple_code t : result) got.insert(projection_key(ctx, t, subset));
        if (want != got) throw std::logic_error("representation misses a projection");
    }
    for (int c = 0; c < coords; ++c) {
        if (forks_impl(ctx, sorted, c) != forks_impl(ctx, result, c))
            throw std::logic_error("representation misses a fork");
    }
    return result;
}

bool representation_generates(const ProductContext& ctx,
                              std::span<const tuple_code> rep,
                              std::span<const tuple_code> subuniverse) {
    std::vector<tuple_code> want(subuniverse.begin(), subuniverse.end());
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());

    ClosureResult res = generate_subuniverse(ctx, rep, std::max<std::size_t>(want.size(), 1));
    if (res.truncated) return false;
    std::vector<tuple_code> got = res.members;
    std::sort(got.begin(), got.end());
    return got == want;
}

}  // namespace varind
