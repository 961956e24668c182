#include "varind/relations.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "varind/errors.hpp"

namespace varind {

namespace {

// Materializes a small product context as a plain algebra on its codes.
Algebra materialize(const ProductContext& ctx) {
    if (ctx.carrier > 4096) throw capacity_error("relation universe too large");
    if (ctx.m == 1 && ctx.n == 0) return ctx.a;
    Algebra alg;
    alg.name = ctx.a.name + "x" + ctx.b.name;
    alg.size = static_cast<int>(ctx.carrier);
    alg.sig = ctx.a.sig;
    std::vector<std::vector<int>> arg_digits;
    for (std::size_t sym = 0; sym < alg.sig.symbols.size(); ++sym) {
        int r = alg.sig.symbols[sym].arity;
        std::size_t count = 1;
        for (int i = 0; i < r; ++i) count *= static_cast<std::size_t>(alg.size);
        std::vector<int> table(count);
        std::vector<int> args(static_cast<std::size_t>(r), 0);
        std::vector<int> digit_buf(static_cast<std::size_t>(ctx.coords()));
        std::vector<int> arg_val(static_cast<std::size_t>(r));
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rest = idx;
            for (int i = r - 1; i >= 0; --i) {
                args[static_cast<std::size_t>(i)] =
                    static_cast<int>(rest % static_cast<std::size_t>(alg.size));
                rest /= static_cast<std::size_t>(alg.size);
            }
            for (int c = 0; c < ctx.coords(); ++c) {
                for (int j = 0; j < r; ++j)
                    arg_val[static_cast<std::size_t>(j)] = static_cast<int>(
                        static_cast<tuple_code>(args[static_cast<std::size_t>(j)]) /
                        ctx.weights[static_cast<std::size_t>(c)] %
                        static_cast<unsigned>(ctx.radix(c)));
                digit_buf[static_cast<std::size_t>(c)] =
                    ctx.coord_algebra(c).apply(static_cast<int>(sym), arg_val);
            }
            table[idx] = static_cast<int>(encode_tuple(ctx, digit_buf));
        }
        alg.tables.push_back(std::move(table));
    }
    return alg;
}

// Worklist closure producing the least reflexive symmetric (and optionally
// transitive) operation-closed relation; symmetry and transitivity
// consequences are enqueued alongside operation productions.
class RelationCloser {
public:
    RelationCloser(const ProductContext& base, std::span<const tuple_code> universe,
                   bool transitive)
        : base_(base), alg_(materialize(base)), transitive_(transitive) {
        universe_.assign(universe.begin(), universe.end());
        std::sort(universe_.begin(), universe_.end());
        universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());
        u_ = static_cast<int>(universe_.size());
        for (int i = 0; i < u_; ++i) {
            if (universe_[static_cast<std::size_t>(i)] >= base.carrier)
                throw precondition_error("universe element out of range");
            index_[universe_[static_cast<std::size_t>(i)]] = i;
        }
        check_universe_closed();
        rel_.assign(static_cast<std::size_t>(u_) * static_cast<std::size_t>(u_), 0);
    }

    BinRel run(std::span<const CodePair> seeds) {
        for (int i = 0; i < u_; ++i) add(i, i);
        for (const auto& [p, q] : seeds) {
            auto pi = index_.find(p), qi = index_.find(q);
            if (pi == index_.end() || qi == index_.end())
                throw precondition_error("seed pair outside the universe");
            add(pi->second, qi->second);
        }
        std::vector<int> us, vs;
        for (std::size_t pos = 0; pos < list_.size(); ++pos) {
            auto [u, v] = list_[pos];
            add(v, u);
            if (transitive_) {
                for (int w = 0; w < u_; ++w) {
                    if (has(v, w)) add(u, w);
                    if (has(w, u)) add(w, v);
                }
            }
            for (std::size_t sym = 0; sym < alg_.sig.symbols.size(); ++sym) {
                int r = alg_.sig.symbols[sym].arity;
                if (r == 0) continue;
                us.resize(static_cast<std::size_t>(r));
                vs.resize(static_cast<std::size_t>(r));
                // the popped pair occupies each argument position in turn,
                // the rest range over everything discovered so far
                for (int hole = 0; hole < r; ++hole) {
                    std::vector<std::size_t> others(static_cast<std::size_t>(r - 1), 0);
                    while (true) {
                        int oi = 0;
                        for (int j = 0; j < r; ++j) {
                            std::pair<int, int> pr =
                                j == hole
                                    ? list_[pos]
                                    : list_[others[static_cast<std::size_t>(oi++)]];
                            us[static_cast<std::size_t>(j)] =
                                code_of(pr.first);
                            vs[static_cast<std::size_t>(j)] = code_of(pr.second);
                        }
                        add(local(alg_.apply(static_cast<int>(sym), us)),
                            local(alg_.apply(static_cast<int>(sym), vs)));
                        int j = r - 2;
                        while (j >= 0 && ++others[static_cast<std::size_t>(j)] > pos) {
                            others[static_cast<std::size_t>(j)] = 0;
                            --j;
                        }
                        if (j < 0) break;
                    }
                }
            }
        }
        BinRel out;
        out.base = base_;
        out.universe = universe_;
        for (const auto& [u, v] : list_)
            out.pairs.emplace(universe_[static_cast<std::size_t>(u)],
                              universe_[static_cast<std::size_t>(v)]);
        return out;
    }

private:
    bool has(int u, int v) const {
        return rel_[static_cast<std::size_t>(u) * static_cast<std::size_t>(u_) +
                    static_cast<std::size_t>(v)] != 0;
    }
    void add(int u, int v) {
        auto& cell = rel_[static_cast<std::size_t>(u) * static_cast<std::size_t>(u_) +
                          static_cast<std::size_t>(v)];
        if (cell) return;
        cell = 1;
        list_.emplace_back(u, v);
    }
    int code_of(int local_idx) const {
        return static_cast<int>(universe_[static_cast<std::size_t>(local_idx)]);
    }
    int local(int code) const {
        auto it = index_.find(static_cast<tuple_code>(code));
        if (it == index_.end())
            throw precondition_error("universe is not operation-closed");
        return it->second;
    }
    void check_universe_closed() {
        std::vector<int> args;
        for (std::size_t sym = 0; sym < alg_.sig.symbols.size(); ++sym) {
            int r = alg_.sig.symbols[sym].arity;
            if (r > 0 && u_ == 0) continue;  // vacuously closed
            args.assign(static_cast<std::size_t>(r), 0);
            std::vector<int> pick(static_cast<std::size_t>(r), 0);
            while (true) {
                for (int j = 0; j < r; ++j)
                    args[static_cast<std::size_t>(j)] =
                        code_of(pick[static_cast<std::size_t>(j)]);
                local(alg_.apply(static_cast<int>(sym), args));
                int j = r - 1;
                while (j >= 0 && ++pick[static_cast<std::size_t>(j)] >= u_) {
                    pick[static_cast<std::size_t>(j)] = 0;
                    --j;
                }
                if (j < 0) break;
            }
        }
    }

    ProductContext base_;
    Algebra alg_;
    bool transitive_;
    std::vector<tuple_code> universe_;
    std::unordered_map<tuple_code, int, CodeHash> index_;
    int u_ = 0;
    std::vector<std::uint8_t> rel_;
    std::vector<std::pair<int, int>> list_;
};

}  // namespace

bool BinRel::is_reflexive() const {
    for (tuple_code u : universe)
        if (!contains(u, u)) return false;
    return true;
}

bool BinRel::is_symmetric() const {
    for (const auto& [u, v] : pairs)
        if (!contains(v, u)) return false;
    return true;
}

bool BinRel::is_transitive() const {
    for (const auto& [u, v] : pairs)
        for (const auto& [v2, w] : pairs)
            if (v == v2 && !contains(u, w)) return false;
    return true;
}

bool BinRel::is_operation_closed() const {
    Algebra alg = materialize(base);
    std::vector<CodePair> list(pairs.begin(), pairs.end());
    std::vector<int> us, vs;
    for (std::size_t sym = 0; sym < alg.sig.symbols.size(); ++sym) {
        int r = alg.sig.symbols[sym].arity;
        if (r == 0) {
            auto c = static_cast<unsigned>(alg.tables[sym][0]);
            if (!contains(c, c)) return false;
            continue;
        }
        if (list.empty()) continue;
        us.resize(static_cast<std::size_t>(r));
        vs.resize(static_cast<std::size_t>(r));
        std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
        while (true) {
            for (int j = 0; j < r; ++j) {
                us[static_cast<std::size_t>(j)] =
                    static_cast<int>(list[pick[static_cast<std::size_t>(j)]].first);
                vs[static_cast<std::size_t>(j)] =
                    static_cast<int>(list[pick[static_cast<std::size_t>(j)]].second);
            }
            if (!contains(static_cast<unsigned>(alg.apply(static_cast<int>(sym), us)),
                          static_cast<unsigned>(alg.apply(static_cast<int>(sym), vs))))
                return false;
            int j = r - 1;
            while (j >= 0 && ++pick[static_cast<std::size_t>(j)] >= list.size()) {
                pick[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j < 0) break;
        }
    }
    return true;
}

BinRel principal_tolerance(const ProductContext& base,
                           std::span<const tuple_code> universe,
                           std::span<const CodePair> seeds) {
    return RelationCloser(base, universe, false).run(seeds);
}

BinRel principal_congruence(const ProductContext& base,
                            std::span<const tuple_code> universe,
                            std::span<const CodePair> seeds) {
    return RelationCloser(base, universe, true).run(seeds);
}

RelDecomposition decompose_product_relation(const BinRel& rel) {
    if (rel.base.m != 1 || rel.base.n != 1)
        throw precondition_error("decomposition requires a relation on a binary product");
    if (!rel.is_reflexive() || !rel.is_symmetric())
        throw precondition_error("relation is not reflexive and symmetric");
    auto nb = static_cast<unsigned>(rel.base.b.size);

    std::vector<tuple_code> e, f;
    for (tuple_code u : rel.universe) {
        e.push_back(u / nb);
        f.push_back(u % nb);
    }
    auto dedup = [](std::vector<tuple_code>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    dedup(e);
    dedup(f);
    if (e.size() * f.size() != rel.universe.size())
        throw precondition_error("relation universe is not a rectangle E x F");

    RelDecomposition out;
    out.alpha.base = make_product_context(rel.base.a, rel.base.a, 1, 0);
    out.alpha.universe = e;
    out.beta.base = make_product_context(rel.base.b, rel.base.b, 1, 0);
    out.beta.universe = f;
    for (const auto& [p, q] : rel.pairs) {
        out.alpha.pairs.emplace(p / nb, q / nb);
        out.beta.pairs.emplace(p % nb, q % nb);
    }
    out.is_product = true;
    for (tuple_code p : rel.universe) {
        for (tuple_code q : rel.universe) {
            bool in_product = out.alpha.contains(p / nb, q / nb) &&
                              out.beta.contains(p % nb, q % nb);
            if (in_product && !rel.contains(p, q)) {
                out.is_product = false;
                out.witness = CodePair{p, q};
                return out;
            }
        }
    }
    return out;
}

namespace {

ProductRelationSweep sweep_product_relations(const Algebra& a, const Algebra& b,
                                             std::span<const int> e_universe,
                                             std::span<const int> f_universe,
                                             bool congruences, int threads) {
    ProductContext base = make_product_context(a, b, 1, 1);
    auto nb = static_cast<unsigned>(b.size);
    std::vector<tuple_code> universe;
    for (int x : e_universe) {
        if (x < 0 || x >= a.size) throw precondition_error("E element out of range");
        for (int y : f_universe) {
            if (y < 0 || y >= b.size) throw precondition_error("F element out of range");
            universe.push_back(static_cast<unsigned>(x) * nb + static_cast<unsigned>(y));
        }
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    // Canonically oriented pairs; a tolerance contains a pair iff it contains
    // its swap, so seeds can be normalized.
    std::vector<CodePair> canon;
    for (tuple_code u : universe)
        for (tuple_code v : universe)
            if (u <= v) canon.emplace_back(u, v);

    auto a_part = [&](tuple_code c) { return c / nb; };
    auto b_part = [&](tuple_code c) { return c % nb; };
    auto mix = [&](const CodePair& p, const CodePair& q) {
        return CodePair{a_part(p.first) * nb + b_part(q.first),
                        a_part(p.second) * nb + b_part(q.second)};
    };

    ProductRelationSweep result;
    std::atomic<std::uint64_t> closures{0};
    std::atomic<bool> stop{false};
    std::mutex found_mutex;
    std::size_t found_p = canon.size(), found_q = canon.size();

    auto check_pair = [&](std::size_t pi, std::size_t qi) {
        const CodePair& p = canon[pi];
        const CodePair& q = canon[qi];
        BinRel rel = congruences
                         ? principal_congruence(base, universe, std::array{p, q})
                         : principal_tolerance(base, universe, std::array{p, q});
        closures.fetch_add(1, std::memory_order_relaxed);
        CodePair swapped_p{p.second, p.first};
        // Mixes of all seed orientations; the remaining combinations are
        // transposes of these and lie in the relation by symmetry.
        const CodePair mixes[] = {mix(p, q), mix(q, p), mix(swapped_p, q),
                                  mix(q, swapped_p)};
        for (const CodePair& mp : mixes) {
            if (!rel.pairs.count(mp)) {
                std::lock_guard<std::mutex> lock(found_mutex);
                if (pi < found_p || (pi == found_p && qi < found_q)) {
                    found_p = pi;
                    found_q = qi;
                    result.failing_seeds = std::array<CodePair, 2>{p, q};
                    result.missing = mp;
                    result.failing_relation = std::move(rel);
                }
                stop.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };

    if (threads <= 1) {
        for (std::size_t pi = 0; pi < canon.size() && !stop.load(); ++pi)
            for (std::size_t qi = pi; qi < canon.size() && !stop.load(); ++qi)
                check_pair(pi, qi);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            while (!stop.load(std::memory_order_relaxed)) {
                std::size_t pi = next.fetch_add(1);
                if (pi >= canon.size()) return;
                for (std::size_t qi = pi; qi < canon.size(); ++qi) {
                    if (stop.load(std::memory_order_relaxed)) return;
                    check_pair(pi, qi);
                }
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    result.closures = closures.load();
    result.all_product = !result.failing_seeds.has_value();
    return result;
}

}  // namespace

ProductRelationSweep all_tolerances_product(const Algebra& a, const Algebra& b,
                                            std::span<const int> e_universe,
                                            std::span<const int> f_universe,
                                            int threads) {
    return sweep_product_relations(a, b, e_universe, f_universe, false, threads);
}

ProductRelationSweep all_congruences_product(const Algebra& a, const Algebra& b,
                                             std::span<const int> e_universe,
                                             std::span<const int> f_universe,
                                             int threads) {
    return sweep_product_relations(a, b, e_universe, f_universe, true, threads);
}

SubalgebraView relation_as_subalgebra(const BinRel& rel) {
    if (rel.base.m != 1 || rel.base.n != 1)
        throw precondition_error("reindexing requires a relation on a binary product");
    auto nb = static_cast<unsigned>(rel.base.b.size);
    SubalgebraView out;
    out.ctx = make_product_context(rel.base.a, rel.base.b, 2, 2);
    for (const auto& [p, q] : rel.pairs) {
        const int digits[] = {static_cast<int>(p / nb), static_cast<int>(q / nb),
                              static_cast<int>(p % nb), static_cast<int>(q % nb)};
        out.members.push_back(encode_tuple(out.ctx, digits));
    }
    std::sort(out.members.begin(), out.members.end());
    return out;
}

std::vector<BinRel> enumerate_tolerances(const Algebra& alg, int size_bound) {
    if (alg.size > size_bound)
        throw limit_error("algebra size " + std::to_string(alg.size) +
                          " exceeds enumeration bound " + std::to_string(size_bound));
    ProductContext base = make_product_context(alg, alg, 1, 0);
    std::vector<tuple_code> universe;
    for (int i = 0; i < alg.size; ++i) universe.push_back(static_cast<unsigned>(i));

    std::vector<BinRel> all;
    std::set<std::set<CodePair>> seen;
    auto push = [&](BinRel rel) {
        if (seen.insert(rel.pairs).second) all.push_back(std::move(rel));
    };
    push(principal_tolerance(base, universe, {}));
    for (int u = 0; u < alg.size; ++u)
        for (int v = u + 1; v < alg.size; ++v)
            push(principal_tolerance(
                base, universe,
                std::array{CodePair{static_cast<unsigned>(u), static_cast<unsigned>(v)}}));

    // Close under binary joins; every tolerance is a join of principal ones.
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<CodePair> seeds(all[i].pairs.begin(), all[i].pairs.end());
            seeds.insert(seeds.end(), all[j].pairs.begin(), all[j].pairs.end());
            push(principal_tolerance(base, universe, seeds));
        }
    }

    std::sort(all.begin(), all.end(), [](const BinRel& x, const BinRel& y) {
        if (x.pairs.size() != y.pairs.size()) return x.pairs.size() < y.pairs.size();
        return x.pairs < y.pairs;
    });
    return all;
}

}  // namespace varind
