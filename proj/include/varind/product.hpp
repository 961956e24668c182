#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "varind/algebra.hpp"

namespace varind {

/// Mixed-radix code of a tuple in A^m x B^n: the m A-digits come first and
/// are most significant, in coordinate order, followed by the n B-digits.
using tuple_code = unsigned __int128;

struct CodeHash {
    std::size_t operator()(tuple_code c) const noexcept {
        auto lo = static_cast<std::uint64_t>(c);
        auto hi = static_cast<std::uint64_t>(c >> 64);
        std::uint64_t h = (lo ^ (hi * 0x9e3779b97f4a7c15ULL)) + 0x9e3779b97f4a7c15ULL;
        h ^= h >> 30;
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 27;
        return static_cast<std::size_t>(h);
    }
};

/// The ambient product A^m x B^n two similar algebras live in.
struct ProductContext {
    Algebra a;
    Algebra b;
    int m = 0;
    int n = 0;
    tuple_code carrier = 1;            // |A|^m * |B|^n
    tuple_code b_block = 1;            // |B|^n
    std::vector<tuple_code> weights;   // weight of each coordinate digit

    int coords() const { return m + n; }
    int radix(int coord) const { return coord < m ? a.size : b.size; }
    const Algebra& coord_algebra(int coord) const { return coord < m ? a : b; }
};

/// Builds the context, checking that the algebras share a signature and that
/// the coding space fits the 128-bit tuple code.
ProductContext make_product_context(Algebra a, Algebra b, int m, int n);

std::vector<int> decode_tuple(const ProductContext& ctx, tuple_code code);
tuple_code encode_tuple(const ProductContext& ctx, std::span<const int> digits);

/// Renders "(a1,...,am|b1,...,bn)"; with spaced=true the separator is " | ".
std::string format_tuple(const ProductContext& ctx, tuple_code code, bool spaced = false);

std::string code_to_string(tuple_code code);

}  // namespace varind
