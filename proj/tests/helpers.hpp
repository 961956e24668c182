#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "varind/algebra.hpp"
#include "varind/identities.hpp"
#include "varind/parse.hpp"
#include "varind/product.hpp"
#include "varind/term.hpp"

namespace testutil {

using namespace varind;

inline Algebra cyclic_group(int n, const std::string& name) {
    Algebra a;
    a.name = name;
    a.size = n;
    a.sig.symbols = {{"+", 2}};
    std::vector<int> table(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            table[static_cast<std::size_t>(x * n + y)] = (x + y) % n;
    a.tables = {std::move(table)};
    return a;
}

inline Algebra z2() { return cyclic_group(2, "Z2"); }
inline Algebra z3() { return cyclic_group(3, "Z3"); }
inline Algebra z4() { return cyclic_group(4, "Z4"); }

/// (Zn, +) expanded with the unary operation x -> c*x + d.
inline Algebra cyclic_with_unary(int n, int c, int d, const std::string& name) {
    Algebra a = cyclic_group(n, name);
    a.sig.symbols.push_back({"u", 1});
    std::vector<int> table(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) table[static_cast<std::size_t>(x)] = (c * x + d) % n;
    a.tables.push_back(std::move(table));
    return a;
}

/// The two-element lattice with meet and join.
inline Algebra lattice2() {
    Algebra a;
    a.name = "L2";
    a.size = 2;
    a.sig.symbols = {{"meet", 2}, {"join", 2}};
    a.tables = {{0, 0, 0, 1}, {0, 1, 1, 1}};
    return a;
}

/// The two-element meet-semilattice.
inline Algebra semilattice2() {
    Algebra a;
    a.name = "S2";
    a.size = 2;
    a.sig.symbols = {{"meet", 2}};
    a.tables = {{0, 0, 0, 1}};
    return a;
}

/// Signature {m/3, t/2} on {0,1}: m is the majority operation, t is the
/// first or second projection.
inline Algebra majority_projection(bool second, const std::string& name) {
    Algebra a;
    a.name = name;
    a.size = 2;
    a.sig.symbols = {{"m", 3}, {"t", 2}};
    std::vector<int> maj = {0, 0, 0, 1, 0, 1, 1, 1};
    std::vector<int> proj = second ? std::vector<int>{0, 1, 0, 1}
                                   : std::vector<int>{0, 0, 1, 1};
    a.tables = {std::move(maj), std::move(proj)};
    return a;
}

/// One-element algebra over the given signature.
inline Algebra trivial_algebra(const Signature& sig, const std::string& name) {
    Algebra a;
    a.name = name;
    a.size = 1;
    a.sig = sig;
    for (const auto& s : sig.symbols) {
        (void)s;
        a.tables.push_back({0});
    }
    return a;
}

inline TermPtr tvar(int i) { return Term::make_var(i); }

inline TermPtr tapp(const Signature& sig, const std::string& name,
                    std::vector<TermPtr> kids) {
    int op = sig.index_of(name);
    if (op < 0) throw std::runtime_error("no symbol " + name);
    return Term::make_app(op, std::move(kids));
}

/// Right-nested sum of coeffs[i] copies of x_i over the binary symbol "+".
inline TermPtr linear_sum(const Signature& sig, const std::vector<int>& coeffs) {
    std::vector<TermPtr> occurrences;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (int c = 0; c < coeffs[i]; ++c) occurrences.push_back(tvar(static_cast<int>(i)));
    if (occurrences.empty()) throw std::runtime_error("empty sum");
    TermPtr acc = occurrences.back();
    for (std::size_t i = occurrences.size() - 1; i-- > 0;)
        acc = tapp(sig, "+", {occurrences[i], acc});
    return acc;
}

/// Independent closure oracle: repeatedly applies every operation to all
/// argument tuples over the current set until nothing new appears.
inline std::vector<tuple_code> naive_closure(const ProductContext& ctx,
                                             std::vector<tuple_code> gens) {
    std::set<tuple_code> members(gens.begin(), gens.end());
    for (std::size_t sym = 0; sym < ctx.a.sig.symbols.size(); ++sym)
        if (ctx.a.sig.symbols[sym].arity == 0) {
            std::vector<int> digits;
            for (int c = 0; c < ctx.coords(); ++c)
                digits.push_back(ctx.coord_algebra(c).tables[sym][0]);
            members.insert(encode_tuple(ctx, digits));
        }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<tuple_code> snapshot(members.begin(), members.end());
        for (std::size_t sym = 0; sym < ctx.a.sig.symbols.size(); ++sym) {
            int r = ctx.a.sig.symbols[sym].arity;
            if (r == 0 || snapshot.empty()) continue;
            std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
            std::vector<std::vector<int>> arg_digits;
            for (tuple_code c : snapshot) arg_digits.push_back(decode_tuple(ctx, c));
            while (true) {
                std::vector<int> digits(static_cast<std::size_t>(ctx.coords()));
                std::vector<int> args(static_cast<std::size_t>(r));
                for (int c = 0; c < ctx.coords(); ++c) {
                    for (int j = 0; j < r; ++j)
                        args[static_cast<std::size_t>(j)] =
                            arg_digits[pick[static_cast<std::size_t>(j)]]
                                      [static_cast<std::size_t>(c)];
                    digits[static_cast<std::size_t>(c)] =
                        ctx.coord_algebra(c).apply(static_cast<int>(sym), args);
                }
                if (members.insert(encode_tuple(ctx, digits)).second) changed = true;
                int j = r - 1;
                while (j >= 0 && ++pick[static_cast<std::size_t>(j)] >= snapshot.size()) {
                    pick[static_cast<std::size_t>(j)] = 0;
                    --j;
                }
                if (j < 0) break;
            }
        }
    }
    return {members.begin(), members.end()};
}

inline std::vector<tuple_code> sorted_codes(std::vector<tuple_code> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// Brute-force clone counting in plain function space: fixed-point iteration
/// over value tables, independent of the tuple-coded closure engine.
inline std::size_t naive_clone_size(const Algebra& alg, int k) {
    std::size_t space = 1;
    for (int i = 0; i < k; ++i) space *= static_cast<std::size_t>(alg.size);
    std::set<std::vector<int>> fns;
    for (int j = 0; j < k; ++j) {
        std::vector<int> proj(space);
        std::size_t stride = 1;
        for (int i = j + 1; i < k; ++i) stride *= static_cast<std::size_t>(alg.size);
        for (std::size_t c = 0; c < space; ++c)
            proj[c] = static_cast<int>(c / stride % static_cast<std::size_t>(alg.size));
        fns.insert(std::move(proj));
    }
    for (std::size_t sym = 0; sym < alg.sig.symbols.size(); ++sym)
        if (alg.sig.symbols[sym].arity == 0)
            fns.insert(std::vector<int>(space, alg.tables[sym][0]));
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::vector<int>> snapshot(fns.begin(), fns.end());
        for (std::size_t sym = 0; sym < alg.sig.symbols.size(); ++sym) {
            int r = alg.sig.symbols[sym].arity;
            if (r == 0 || snapshot.empty()) continue;
            std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
            while (true) {
                std::vector<int> composed(space);
                std::vector<int> args(static_cast<std::size_t>(r));
                for (std::size_t c = 0; c < space; ++c) {
                    for (int j = 0; j < r; ++j)
                        args[static_cast<std::size_t>(j)] =
                            snapshot[pick[static_cast<std::size_t>(j)]][c];
                    composed[c] = alg.apply(static_cast<int>(sym), args);
                }
                if (fns.insert(std::move(composed)).second) changed = true;
                int j = r - 1;
                while (j >= 0 && ++pick[static_cast<std::size_t>(j)] >= snapshot.size()) {
                    pick[static_cast<std::size_t>(j)] = 0;
                    --j;
                }
                if (j < 0) break;
            }
        }
    }
    return fns.size();
}

inline Algebra random_algebra(std::mt19937& rng) {
    std::uniform_int_distribution<int> size_dist(1, 4), arity_dist(0, 2), ops_dist(1, 3);
    Algebra a;
    a.size = size_dist(rng);
    a.name = "R" + std::to_string(rng() % 1000);
    int ops = ops_dist(rng);
    std::uniform_int_distribution<int> val(0, a.size - 1);
    for (int i = 0; i < ops; ++i) {
        int arity = arity_dist(rng);
        a.sig.symbols.push_back({"f" + std::to_string(i), arity});
        std::size_t len = 1;
        for (int j = 0; j < arity; ++j) len *= static_cast<std::size_t>(a.size);
        std::vector<int> table(len);
        for (auto& v : table) v = val(rng);
        a.tables.push_back(std::move(table));
    }
    return a;
}

inline TermPtr random_term(std::mt19937& rng, const Signature& sig, int width, int depth) {
    std::uniform_int_distribution<int> var(0, width - 1);
    if (depth == 0 || sig.symbols.empty() || rng() % 3 == 0)
        return tvar(var(rng));
    std::uniform_int_distribution<int> op(0, static_cast<int>(sig.symbols.size()) - 1);
    int o = op(rng);
    std::vector<TermPtr> kids;
    for (int i = 0; i < sig.symbols[static_cast<std::size_t>(o)].arity; ++i)
        kids.push_back(random_term(rng, sig, width, depth - 1));
    return Term::make_app(o, std::move(kids));
}

}  // namespace testutil
