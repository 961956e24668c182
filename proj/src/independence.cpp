#include "varind/independence.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "varind/closure.hpp"
#include "varind/errors.hpp"
#include "varind/identities.hpp"
#include "varind/product.hpp"

namespace varind {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::independent: return "independent";
        case Verdict::not_independent: return "not-independent";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string method_name(Method m, int k) {
    switch (m) {
        case Method::fast_malcev: return "fast-malcev";
        case Method::fast_edge: return "fast-edge(" + std::to_string(k) + ")";
        case Method::oracle: return "oracle";
        case Method::both: return "both";
    }
    return "?";
}

std::uint64_t fast_sweep_closure_bound(const Algebra& a, const Algebra& b, int k) {
    int m = std::max(4, k - 1);
    auto n = static_cast<std::uint64_t>(std::max(a.size, b.size));
    std::uint64_t bound = static_cast<std::uint64_t>(m) - 1;
    for (int i = 0; i < 2 * m; ++i) {
        if (n != 0 && bound > std::numeric_limits<std::uint64_t>::max() / n)
            return std::numeric_limits<std::uint64_t>::max();
        bound *= n;
    }
    return bound;
}

namespace {

constexpr std::uint32_t scratch_carrier_max = 1u << 20;
constexpr std::size_t flat_table_max = std::size_t{1} << 24;

// One ambient power A^r x B^s of the sweep, with operations precomputed as
// flat tables over tuple codes whenever that fits.
struct RsContext {
    int r = 0, s = 0;
    std::uint32_t carrier = 1;
    std::uint32_t b_block = 1;  // |B|^s
    const Algebra* a = nullptr;
    const Algebra* b = nullptr;

    struct Op {
        int arity = 0;
        std::vector<std::uint32_t> flat;  // empty: evaluate per coordinate
    };
    std::vector<Op> ops;
    std::vector<std::uint32_t> nullaries;
    std::vector<std::uint8_t> digit;  // digit[c * carrier + code]
    bool big = false;                 // falls back to the generic engine
    ProductContext generic;           // only built when big
};

std::uint32_t pow_u32(std::uint32_t base, int exp, bool& overflow) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
        if (r > scratch_carrier_max) {
            overflow = true;
            return 0;
        }
    }
    return static_cast<std::uint32_t>(r);
}

RsContext make_rs_context(const Algebra& a, const Algebra& b, int r, int s) {
    RsContext ctx;
    ctx.r = r;
    ctx.s = s;
    ctx.a = &a;
    ctx.b = &b;
    bool overflow = false;
    std::uint32_t ab = pow_u32(static_cast<std::uint32_t>(a.size), r, overflow);
    std::uint32_t bb = pow_u32(static_cast<std::uint32_t>(b.size), s, overflow);
    if (!overflow && ab > scratch_carrier_max / std::max(bb, 1u)) overflow = true;
    if (overflow) {
        ctx.big = true;
        ctx.generic = make_product_context(a, b, r, s);
        return ctx;
    }
    ctx.b_block = bb;
    ctx.carrier = ab * bb;

    const int coords = r + s;
    ctx.digit.resize(static_cast<std::size_t>(coords) * ctx.carrier);
    for (std::uint32_t code = 0; code < ctx.carrier; ++code) {
        std::uint32_t rest = code;
        for (int c = coords - 1; c >= 0; --c) {
            auto radix = static_cast<std::uint32_t>(c < r ? a.size : b.size);
            ctx.digit[static_cast<std::size_t>(c) * ctx.carrier + code] =
                static_cast<std::uint8_t>(rest % radix);
            rest /= radix;
        }
    }

    std::vector<int> args;
    std::vector<std::uint32_t> codes;
    for (std::size_t sym = 0; sym < a.sig.symbols.size(); ++sym) {
        int arity = a.sig.symbols[sym].arity;
        RsContext::Op op;
        op.arity = arity;
        if (arity == 0) {
            std::uint32_t code = 0;
            for (int c = 0; c < coords; ++c) {
                const Algebra& alg = c < r ? a : b;
                code = code * static_cast<std::uint32_t>(alg.size) +
                       static_cast<std::uint32_t>(alg.tables[sym][0]);
            }
            ctx.nullaries.push_back(code);
            ctx.ops.push_back(std::move(op));
            continue;
        }
        std::size_t entries = 1;
        bool fits = true;
        for (int i = 0; i < arity; ++i) {
            entries *= ctx.carrier;
            if (entries > flat_table_max) {
                fits = false;
                break;
            }
        }
        if (fits) {
            op.flat.resize(entries);
            codes.assign(static_cast<std::size_t>(arity), 0);
            args.resize(static_cast<std::size_t>(arity));
            for (std::size_t idx = 0;; ++idx) {
                std::uint32_t out = 0;
                for (int c = 0; c < coords; ++c) {
                    const Algebra& alg = c < r ? a : b;
                    for (int j = 0; j < arity; ++j)
                        args[static_cast<std::size_t>(j)] =
                            ctx.digit[static_cast<std::size_t>(c) * ctx.carrier +
                                      codes[static_cast<std::size_t>(j)]];
                    out = out * static_cast<std::uint32_t>(alg.size) +
                          static_cast<std::uint32_t>(
                              alg.apply(static_cast<int>(sym), args));
                }
                op.flat[idx] = out;
                int j = arity - 1;
                while (j >= 0 && ++codes[static_cast<std::size_t>(j)] >= ctx.carrier) {
                    codes[static_cast<std::size_t>(j)] = 0;
                    --j;
                }
                if (j < 0) break;
            }
        }
        ctx.ops.push_back(std::move(op));
    }
    return ctx;
}

// Reusable closure state; marks use an epoch so resets are O(1).
struct Scratch {
    std::vector<std::uint32_t> mark;
    std::uint32_t epoch = 0;
    std::vector<std::uint32_t> list;
    std::vector<int> args;
};

// Generates <g0, g1> inside the context, stopping early once both targets
// have appeared. Returns true iff both targets are members.
bool closure_contains_mixed(const RsContext& ctx, Scratch& sc, std::uint32_t g0,
                            std::uint32_t g1, std::uint32_t t0, std::uint32_t t1,
                            std::size_t& max_closure) {
    if (sc.mark.size() < ctx.carrier) sc.mark.assign(ctx.carrier, 0);
    if (++sc.epoch == 0) {
        std::fill(sc.mark.begin(), sc.mark.end(), 0);
        sc.epoch = 1;
    }
    sc.list.clear();
    bool found0 = false, found1 = false;

    auto insert = [&](std::uint32_t code) {
        if (sc.mark[code] == sc.epoch) return;
        sc.mark[code] = sc.epoch;
        sc.list.push_back(code);
        found0 |= code == t0;
        found1 |= code == t1;
    };
    insert(g0);
    insert(g1);
    for (std::uint32_t c : ctx.nullaries) insert(c);
    if (found0 && found1) return true;

    const int coords = ctx.r + ctx.s;
    for (std::size_t pos = 0; pos < sc.list.size(); ++pos) {
        std::uint32_t x = sc.list[pos];
        for (std::size_t sym = 0; sym < ctx.ops.size(); ++sym) {
            const RsContext::Op& op = ctx.ops[sym];
            if (op.arity == 0) continue;

            auto eval_digitwise = [&](std::span<const std::uint32_t> codes) {
                std::uint32_t out = 0;
                sc.args.resize(codes.size());
                for (int c = 0; c < coords; ++c) {
                    const Algebra& alg = c < ctx.r ? *ctx.a : *ctx.b;
                    for (std::size_t j = 0; j < codes.size(); ++j)
                        sc.args[j] = ctx.digit[static_cast<std::size_t>(c) * ctx.carrier +
                                               codes[j]];
                    out = out * static_cast<std::uint32_t>(alg.size) +
                          static_cast<std::uint32_t>(
                              alg.apply(static_cast<int>(sym), sc.args));
                }
                return out;
            };

            if (op.arity == 1) {
                if (!op.flat.empty())
                    insert(op.flat[x]);
                else
                    insert(eval_digitwise(std::array{x}));
            } else if (op.arity == 2) {
                if (!op.flat.empty()) {
                    const std::uint32_t* flat = op.flat.data();
                    for (std::size_t j = 0; j <= pos; ++j) {
                        std::uint32_t y = sc.list[j];
                        insert(flat[static_cast<std::size_t>(x) * ctx.carrier + y]);
                        insert(flat[static_cast<std::size_t>(y) * ctx.carrier + x]);
                    }
                } else {
                    for (std::size_t j = 0; j <= pos; ++j) {
                        std::uint32_t y = sc.list[j];
                        insert(eval_digitwise(std::array{x, y}));
                        insert(eval_digitwise(std::array{y, x}));
                    }
                }
            } else {
                // the popped element takes each argument position in turn
                std::vector<std::uint32_t> codes(static_cast<std::size_t>(op.arity));
                for (int hole = 0; hole < op.arity; ++hole) {
                    std::vector<std::size_t> others(
                        static_cast<std::size_t>(op.arity - 1), 0);
                    while (true) {
                        int oi = 0;
                        for (int j = 0; j < op.arity; ++j)
                            codes[static_cast<std::size_t>(j)] =
                                j == hole ? x
                                          : sc.list[others[static_cast<std::size_t>(
                                                oi++)]];
                        if (!op.flat.empty()) {
                            std::size_t idx = 0;
                            for (int j = 0; j < op.arity; ++j)
                                idx = idx * ctx.carrier + codes[static_cast<std::size_t>(j)];
                            insert(op.flat[idx]);
                        } else {
                            insert(eval_digitwise(codes));
                        }
                        int j = op.arity - 2;
                        while (j >= 0 && ++others[static_cast<std::size_t>(j)] > pos) {
                            others[static_cast<std::size_t>(j)] = 0;
                            --j;
                        }
                        if (j < 0) break;
                    }
                }
            }
            if (found0 && found1) {
                max_closure = std::max(max_closure, sc.list.size());
                return true;
            }
        }
    }
    max_closure = std::max(max_closure, sc.list.size());
    return found0 && found1;
}

// A closure check routed through the generic engine for carriers too large
// for the scratch path.
bool generic_contains_mixed(const ProductContext& ctx, tuple_code g0, tuple_code g1,
                            tuple_code t0, tuple_code t1, std::size_t& max_closure) {
    const tuple_code gens[] = {g0, g1};
    std::size_t limit = ctx.carrier > tuple_code(std::numeric_limits<std::size_t>::max())
                            ? std::numeric_limits<std::size_t>::max()
                            : static_cast<std::size_t>(ctx.carrier);
    ClosureResult res = generate_subuniverse(ctx, gens, limit);
    max_closure = std::max(max_closure, res.members.size());
    return res.contains(t0) && res.contains(t1);
}

struct SweepState {
    std::atomic<std::uint64_t> closures{0};
    std::atomic<bool> stop{false};
    std::mutex mutex;
    bool found = false;
    std::vector<std::uint64_t> found_rank;  // lexicographic position of the violation
    MixingCounterexample counterexample;
    std::size_t max_closure = 0;
};

// The sweep views a generator pair as a matrix with two rows: the i-th
// A-column is (a_i, c_i) coded a_i*|A| + c_i, the j-th B-column is (b_j, d_j)
// coded b_j*|B| + d_j. Only strictly increasing column sets are enumerated:
// a duplicated column stays duplicated throughout the closure, so such a
// pair reduces to a smaller (r, s) the sweep also visits, and permuting
// columns maps generated subalgebras onto each other.
template <typename Fn>
void for_each_combination(int universe, int size, Fn&& fn) {
    std::vector<int> comb(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = i;
    if (size > universe) return;
    while (true) {
        fn(const_cast<const std::vector<int>&>(comb));
        int i = size - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == universe - size + i) --i;
        if (i < 0) return;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j)
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Swapping the roles of p and q replaces each column (u, v) by (v, u); the
// sweep checks both mixed tuples, so only the lexicographically smaller of
// the two configurations needs to run.
bool swapped_config_is_smaller(const std::vector<int>& a_cols,
                               const std::vector<int>& b_cols, int na, int nb) {
    std::vector<int> sa, sb;
    sa.reserve(a_cols.size());
    sb.reserve(b_cols.size());
    for (int col : a_cols) sa.push_back(col % na * na + col / na);
    for (int col : b_cols) sb.push_back(col % nb * nb + col / nb);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != a_cols) return sa < a_cols;
    return sb < b_cols;
}

class FastSweep {
public:
    FastSweep(const Algebra& a, const Algebra& b, int max_total, int threads)
        : a_(a), b_(b), max_total_(max_total), threads_(std::max(threads, 1)) {}

    // Returns the first mixing violation in canonical scan order (single
    // threaded); parallel runs may report a different violation with the
    // same verdict.
    std::optional<MixingCounterexample> run(IndependenceStats& stats) {
        for (int total = 2; total <= max_total_ && !state_.stop; ++total) {
            for (int r = 1; r < total && !state_.stop; ++r) {
                int s = total - r;
                RsContext ctx = make_rs_context(a_, b_, r, s);
                sweep_rs(ctx);
            }
        }
        stats.closures += state_.closures.load();
        stats.max_closure = std::max(stats.max_closure, state_.max_closure);
        if (!state_.found) return std::nullopt;
        return state_.counterexample;
    }

private:
    void sweep_rs(const RsContext& ctx) {
        int na = a_.size, nb = b_.size;
        int a_col_space = na * na, b_col_space = nb * nb;
        if (ctx.r > a_col_space || ctx.s > b_col_space) return;

        if (threads_ == 1) {
            Scratch sc;
            std::uint64_t rank = 0;
            for_each_combination(a_col_space, ctx.r, [&](const std::vector<int>& a_cols) {
                if (state_.stop) return;
                sweep_b_side(ctx, a_cols, sc, rank);
            });
            return;
        }

        std::vector<std::vector<int>> a_combos;
        for_each_combination(a_col_space, ctx.r, [&](const std::vector<int>& a_cols) {
            a_combos.push_back(a_cols);
        });
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            Scratch sc;
            while (!state_.stop.load(std::memory_order_relaxed)) {
                std::size_t i = next.fetch_add(1);
                if (i >= a_combos.size()) return;
                std::uint64_t rank = i << 32;
                sweep_b_side(ctx, a_combos[i], sc, rank);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads_; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    void sweep_b_side(const RsContext& ctx, const std::vector<int>& a_cols, Scratch& sc,
                      std::uint64_t& rank) {
        int na = a_.size, nb = b_.size;
        std::uint32_t pa = 0, qa = 0;
        for (int col : a_cols) {
            pa = pa * static_cast<std::uint32_t>(na) + static_cast<std::uint32_t>(col / na);
            qa = qa * static_cast<std::uint32_t>(na) + static_cast<std::uint32_t>(col % na);
        }
        if (pa == qa) return;  // mixing with equal A-rows is trivial

        for_each_combination(nb * nb, ctx.s, [&](const std::vector<int>& b_cols) {
            ++rank;
            if (state_.stop.load(std::memory_order_relaxed)) return;
            std::uint32_t pb = 0, qb = 0;
            for (int col : b_cols) {
                pb = pb * static_cast<std::uint32_t>(nb) +
                     static_cast<std::uint32_t>(col / nb);
                qb = qb * static_cast<std::uint32_t>(nb) +
                     static_cast<std::uint32_t>(col % nb);
            }
            if (pb == qb) return;
            if (swapped_config_is_smaller(a_cols, b_cols, na, nb)) return;

            bool ok;
            std::size_t max_closure = 0;
            std::uint32_t bb = ctx.big ? 0 : ctx.b_block;
            if (!ctx.big) {
                std::uint32_t p = pa * bb + pb, q = qa * bb + qb;
                std::uint32_t t0 = pa * bb + qb, t1 = qa * bb + pb;
                ok = closure_contains_mixed(ctx, sc, p, q, t0, t1, max_closure);
            } else {
                const ProductContext& g = ctx.generic;
                tuple_code p = static_cast<tuple_code>(pa) * g.b_block + pb;
                tuple_code q = static_cast<tuple_code>(qa) * g.b_block + qb;
                tuple_code t0 = static_cast<tuple_code>(pa) * g.b_block + qb;
                tuple_code t1 = static_cast<tuple_code>(qa) * g.b_block + pb;
                ok = generic_contains_mixed(g, p, q, t0, t1, max_closure);
            }
            state_.closures.fetch_add(1, std::memory_order_relaxed);
            {
                std::lock_guard<std::mutex> lock(state_.mutex);
                state_.max_closure = std::max(state_.max_closure, max_closure);
            }
            if (ok) return;

            std::lock_guard<std::mutex> lock(state_.mutex);
            std::vector<std::uint64_t> my_rank{static_cast<std::uint64_t>(ctx.r),
                                               static_cast<std::uint64_t>(ctx.s), rank};
            if (state_.found && state_.found_rank <= my_rank) {
                state_.stop = true;
                return;
            }
            state_.found = true;
            state_.found_rank = my_rank;
            MixingCounterexample& ce = state_.counterexample;
            ce = MixingCounterexample{};
            ce.r = ctx.r;
            ce.s = ctx.s;
            for (int col : a_cols) {
                ce.a.push_back(col / na);
                ce.c.push_back(col % na);
            }
            for (int col : b_cols) {
                ce.b.push_back(col / nb);
                ce.d.push_back(col % nb);
            }
            // identify which mixed tuple is absent, preferring (a, d)
            bool first_missing;
            std::size_t dummy = 0;
            if (!ctx.big) {
                Scratch check;
                std::uint32_t p = pa * ctx.b_block + pb, q = qa * ctx.b_block + qb;
                std::uint32_t t0 = pa * ctx.b_block + qb;
                first_missing = !closure_contains_mixed(ctx, check, p, q, t0, t0, dummy);
            } else {
                const ProductContext& g = ctx.generic;
                tuple_code p = static_cast<tuple_code>(pa) * g.b_block + pb;
                tuple_code q = static_cast<tuple_code>(qa) * g.b_block + qb;
                tuple_code t0 = static_cast<tuple_code>(pa) * g.b_block + qb;
                first_missing = !generic_contains_mixed(g, p, q, t0, t0, dummy);
            }
            if (first_missing) {
                ce.missing_a = ce.a;
                ce.missing_b = ce.d;
            } else {
                ce.missing_a = ce.c;
                ce.missing_b = ce.b;
            }
            state_.stop = true;
        });
    }

    const Algebra& a_;
    const Algebra& b_;
    int max_total_;
    int threads_;
    SweepState state_;
};

IndependenceReport run_fast(const Algebra& a, const Algebra& b, Method method, int k,
                            int max_total, int threads) {
    auto start = std::chrono::steady_clock::now();
    IndependenceReport report;
    report.method = method;
    report.k = k;

    FastSweep sweep(a, b, max_total, threads);
    report.counterexample = sweep.run(report.stats);
    report.verdict =
        report.counterexample ? Verdict::not_independent : Verdict::independent;

    std::uint64_t bound = fast_sweep_closure_bound(a, b, k);
    if (report.stats.closures > bound)
        throw std::logic_error("fast sweep exceeded its closure bound");

    report.stats.wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return report;
}

}  // namespace

IndependenceReport check_fast_malcev(const Algebra& a, const Algebra& b,
                                     const TermPtr& d, int threads) {
    if (a.sig != b.sig) throw precondition_error("algebras do not share a signature");
    for (const Algebra* alg : {&a, &b}) {
        if (auto failure = malcev_failure(*alg, d))
            throw precondition_error("Mal'cev verification failed: " + *failure);
    }
    return run_fast(a, b, Method::fast_malcev, 2, 4, threads);
}

IndependenceReport check_fast_edge(const Algebra& a, const Algebra& b, const TermPtr& t,
                                   int k, int threads) {
    if (a.sig != b.sig) throw precondition_error("algebras do not share a signature");
    for (const Algebra* alg : {&a, &b}) {
        if (!verify_edge_term(*alg, t, k))
            throw precondition_error("edge verification failed: the supplied term is not a " +
                                     std::to_string(k) + "-edge term on " + alg->name);
    }
    return run_fast(a, b, Method::fast_edge, k, std::max(4, k - 1), threads);
}

IndependenceReport check_oracle(const Algebra& a, const Algebra& b, std::size_t limit) {
    auto start = std::chrono::steady_clock::now();
    if (a.sig != b.sig) throw precondition_error("algebras do not share a signature");
    int m = a.size * a.size, n = b.size * b.size;
    ProductContext ctx;
    try {
        ctx = make_product_context(a, b, m, n);
    } catch (const capacity_error&) {
        throw capacity_error(
            "the free-algebra coding space for |A|=" + std::to_string(a.size) +
            ", |B|=" + std::to_string(b.size) +
            " exceeds 126 bits; use the fast method with an edge term");
    }

    // Coordinates of A^(A^2) are argument pairs (a1, a2) in table order.
    std::vector<int> digits(static_cast<std::size_t>(m + n));
    auto projection_pair = [&](bool second_a, bool second_b) {
        for (int i = 0; i < m; ++i)
            digits[static_cast<std::size_t>(i)] = second_a ? i % a.size : i / a.size;
        for (int i = 0; i < n; ++i)
            digits[static_cast<std::size_t>(m + i)] =
                second_b ? i % b.size : i / b.size;
        return encode_tuple(ctx, digits);
    };
    tuple_code p = projection_pair(false, false);   // (e1, f1)
    tuple_code q = projection_pair(true, true);     // (e2, f2)
    tuple_code target = projection_pair(false, true);  // (e1, f2)

    const tuple_code gens[] = {p, q};
    ClosureResult res = generate_subuniverse(ctx, gens, limit);

    IndependenceReport report;
    report.method = Method::oracle;
    report.stats.closures = 1;
    report.stats.max_closure = res.members.size();

    if (res.contains(target)) {
        report.verdict = Verdict::independent;
        const int vars[] = {0, 1};
        report.witness = *member_term(res, target, vars);
        if (!satisfies_identity(a, report.witness, Term::make_var(0)) ||
            !satisfies_identity(b, report.witness, Term::make_var(1)))
            throw std::logic_error("extracted witness failed verification");
    } else if (res.truncated) {
        report.verdict = Verdict::inconclusive;
    } else {
        report.verdict = Verdict::not_independent;
        MixingCounterexample ce;
        ce.r = m;
        ce.s = n;
        std::vector<int> pd = decode_tuple(ctx, p), qd = decode_tuple(ctx, q);
        ce.a.assign(pd.begin(), pd.begin() + m);
        ce.b.assign(pd.begin() + m, pd.end());
        ce.c.assign(qd.begin(), qd.begin() + m);
        ce.d.assign(qd.begin() + m, qd.end());
        ce.missing_a = ce.a;
        ce.missing_b = ce.d;
        report.counterexample = std::move(ce);
    }
    report.stats.wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
    return report;
}

IndependenceReport decide(const Algebra& a, const Algebra& b, const DecideOptions& opts) {
    using Mode = DecideOptions::Mode;
    auto fast_usable = [&]() {
        if (!opts.edge_term || opts.k < 2) return false;
        try {
            return verify_edge_term(a, opts.edge_term, opts.k) &&
                   verify_edge_term(b, opts.edge_term, opts.k);
        } catch (const error&) {
            return false;
        }
    };

    switch (opts.mode) {
        case Mode::oracle:
            return check_oracle(a, b, opts.limit);
        case Mode::fast:
            if (!opts.edge_term || opts.k < 2)
                throw precondition_error("the fast method requires an edge term and k");
            return check_fast_edge(a, b, opts.edge_term, opts.k, opts.threads);
        case Mode::automatic:
            if (fast_usable())
                return check_fast_edge(a, b, opts.edge_term, opts.k, opts.threads);
            return check_oracle(a, b, opts.limit);
        case Mode::both: {
            if (!opts.edge_term || opts.k < 2)
                throw precondition_error("method 'both' requires an edge term and k");
            IndependenceReport fast =
                check_fast_edge(a, b, opts.edge_term, opts.k, opts.threads);
            IndependenceReport oracle = check_oracle(a, b, opts.limit);
            if (oracle.verdict != Verdict::inconclusive &&
                oracle.verdict != fast.verdict)
                throw std::logic_error("fast and oracle methods disagree: " +
                                       verdict_name(fast.verdict) + " vs " +
                                       verdict_name(oracle.verdict));
            IndependenceReport report = fast;
            report.method = Method::both;
            report.witness = oracle.witness;
            report.stats.closures += oracle.stats.closures;
            report.stats.max_closure =
                std::max(report.stats.max_closure, oracle.stats.max_closure);
            report.stats.wall_ms += oracle.stats.wall_ms;
            return report;
        }
    }
    throw std::logic_error("unreachable decide mode");
}

}  // namespace varind
