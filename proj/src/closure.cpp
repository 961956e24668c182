#include "varind/closure.hpp"

#include <algorithm>

#include "varind/errors.hpp"

namespace varind {

namespace {

constexpr tuple_code dense_threshold = tuple_code(1) << 28;

}  // namespace

CodeSet::CodeSet(tuple_code carrier) : dense_(carrier <= dense_threshold) {
    if (dense_) bits_.resize((static_cast<std::size_t>(carrier) + 63) / 64, 0);
}

bool CodeSet::insert(tuple_code c) {
    if (dense_) {
        auto i = static_cast<std::size_t>(c);
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (bits_[i >> 6] & mask) return false;
        bits_[i >> 6] |= mask;
        return true;
    }
    return set_.insert(c).second;
}

bool CodeSet::contains(tuple_code c) const {
    if (dense_) {
        auto i = static_cast<std::size_t>(c);
        return (bits_[i >> 6] >> (i & 63)) & 1;
    }
    return set_.count(c) != 0;
}

std::optional<std::uint32_t> ClosureResult::index_of(tuple_code c) const {
    for (std::size_t i = 0; i < members.size(); ++i)
        if (members[i] == c) return static_cast<std::uint32_t>(i);
    return std::nullopt;
}

namespace {

// Applies fn to every arity-tuple of member indices drawn from [0, cur) that
// contains at least one index in [old, cur), each tuple exactly once. fn
// returns false to abort the iteration.
template <typename Fn>
bool for_each_new_tuple(int arity, std::uint32_t old_size, std::uint32_t cur_size, Fn&& fn) {
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(arity));
    for (int first_new = 0; first_new < arity; ++first_new) {
        // positions before first_new range over old members, position
        // first_new over new ones, later positions over everything
        auto lo = [&](int pos) { return pos == first_new ? old_size : 0u; };
        auto hi = [&](int pos) { return pos < first_new ? old_size : cur_size; };
        bool empty = false;
        for (int i = 0; i < arity; ++i) {
            idx[static_cast<std::size_t>(i)] = lo(i);
            if (lo(i) >= hi(i)) empty = true;
        }
        if (empty) continue;
        while (true) {
            if (!fn(std::span<const std::uint32_t>(idx))) return false;
            int i = arity - 1;
            while (i >= 0) {
                auto& v = idx[static_cast<std::size_t>(i)];
                if (++v < hi(i)) break;
                v = lo(i);
                --i;
            }
            if (i < 0) break;
        }
    }
    return true;
}

}  // namespace

ClosureResult generate_subuniverse(const ProductContext& ctx,
                                   std::span<const tuple_code> generators,
                                   std::size_t limit) {
    if (limit == 0) throw precondition_error("closure limit must be positive");
    ClosureResult res;
    res.ctx = ctx;
    res.index = CodeSet(ctx.carrier);
    res.generator_count = generators.size();

    const int coords = ctx.coords();
    std::vector<std::uint8_t> digits;  // flat, coords per member
    std::vector<int> digit_buf(static_cast<std::size_t>(coords));

    // Returns false when the limit blocks the insertion.
    auto push = [&](tuple_code code, std::span<const int> dig, Derivation deriv) {
        if (!res.index.insert(code)) return true;
        if (res.members.size() == limit) {
            res.truncated = true;
            return false;
        }
        res.members.push_back(code);
        res.derivations.push_back(std::move(deriv));
        for (int c = 0; c < coords; ++c)
            digits.push_back(static_cast<std::uint8_t>(dig[static_cast<std::size_t>(c)]));
        return true;
    };

    for (std::size_t g = 0; g < generators.size(); ++g) {
        if (generators[g] >= ctx.carrier)
            throw precondition_error("generator code out of range");
        std::vector<int> dig = decode_tuple(ctx, generators[g]);
        Derivation d;
        d.generator = static_cast<int>(g);
        if (!push(generators[g], dig, std::move(d))) return res;
    }
    for (std::size_t sym = 0; sym < ctx.a.sig.symbols.size(); ++sym) {
        if (ctx.a.sig.symbols[sym].arity != 0) continue;
        for (int c = 0; c < coords; ++c)
            digit_buf[static_cast<std::size_t>(c)] =
                ctx.coord_algebra(c).tables[sym][0];
        Derivation d;
        d.sym = static_cast<int>(sym);
        if (!push(encode_tuple(ctx, digit_buf), digit_buf, std::move(d))) return res;
    }

    std::vector<int> arg_vals;
    std::uint32_t old_size = 0;
    auto cur_size = static_cast<std::uint32_t>(res.members.size());
    while (cur_size > old_size && !res.truncated) {
        for (std::size_t sym = 0; sym < ctx.a.sig.symbols.size(); ++sym) {
            int arity = ctx.a.sig.symbols[sym].arity;
            if (arity == 0) continue;
            arg_vals.resize(static_cast<std::size_t>(arity));
            bool ok = for_each_new_tuple(
                arity, old_size, cur_size, [&](std::span<const std::uint32_t> idx) {
                    for (int c = 0; c < coords; ++c) {
                        const Algebra& alg = ctx.coord_algebra(c);
                        for (int j = 0; j < arity; ++j)
                            arg_vals[static_cast<std::size_t>(j)] =
                                digits[idx[static_cast<std::size_t>(j)] *
                                           static_cast<std::size_t>(coords) +
                                       static_cast<std::size_t>(c)];
                        digit_buf[static_cast<std::size_t>(c)] =
                            alg.apply(static_cast<int>(sym), arg_vals);
                    }
                    Derivation d;
                    d.sym = static_cast<int>(sym);
                    d.args.assign(idx.begin(), idx.end());
                    return push(encode_tuple(ctx, digit_buf), digit_buf, std::move(d));
                });
            if (!ok) break;
        }
        old_size = cur_size;
        cur_size = static_cast<std::uint32_t>(res.members.size());
    }
    return res;
}

std::optional<TermPtr> member_term(const ClosureResult& res, tuple_code target,
                                   std::span<const int> generator_vars) {
    if (generator_vars.size() != res.generator_count)
        throw precondition_error("one variable index is required per generator");
    auto root = res.index_of(target);
    if (!root) return std::nullopt;

    std::vector<TermPtr> memo(res.members.size());
    auto rec = [&](auto&& self, std::uint32_t i) -> const TermPtr& {
        if (memo[i]) return memo[i];
        const Derivation& d = res.derivations[i];
        if (d.generator >= 0) {
            memo[i] = Term::make_var(generator_vars[static_cast<std::size_t>(d.generator)]);
        } else {
            std::vector<TermPtr> kids;
            kids.reserve(d.args.size());
            for (std::uint32_t arg : d.args) kids.push_back(self(self, arg));
            memo[i] = Term::make_app(d.sym, std::move(kids));
        }
        return memo[i];
    };
    return rec(rec, *root);
}

tuple_code eval_term_in_product(const ProductContext& ctx, const TermPtr& t,
                                std::span<const tuple_code> args) {
    TermProgram prog(ctx.a.sig, t);
    if (prog.width() > static_cast<int>(args.size()))
        throw precondition_error("not enough product elements for term evaluation");
    std::vector<std::vector<int>> arg_digits;
    arg_digits.reserve(args.size());
    for (tuple_code c : args) arg_digits.push_back(decode_tuple(ctx, c));

    std::vector<int> digit_buf(static_cast<std::size_t>(ctx.coords()));
    std::vector<int> asg(args.size()), scratch;
    for (int c = 0; c < ctx.coords(); ++c) {
        for (std::size_t j = 0; j < args.size(); ++j)
            asg[j] = arg_digits[j][static_cast<std::size_t>(c)];
        digit_buf[static_cast<std::size_t>(c)] = prog.eval(ctx.coord_algebra(c), asg, scratch);
    }
    return encode_tuple(ctx, digit_buf);
}

std::optional<MixingViolation> is_product_subuniverse(const ProductContext& ctx,
                                                      std::span<const tuple_code> members) {
    CodeSet set(ctx.carrier);
    for (tuple_code c : members) {
        if (c >= ctx.carrier) throw precondition_error("member code out of range");
        set.insert(c);
    }
    for (tuple_code p : members) {
        tuple_code a_part = p / ctx.b_block * ctx.b_block;
        for (tuple_code q : members) {
            tuple_code mixed = a_part + q % ctx.b_block;
            if (!set.contains(mixed)) return MixingViolation{p, q, mixed};
        }
    }
    return std::nullopt;
}

}  // namespace varind
