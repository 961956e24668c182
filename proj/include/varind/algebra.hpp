#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace varind {

struct OpSymbol {
    std::string name;
    int arity = 0;
    bool operator==(const OpSymbol&) const = default;
};

/// An ordered list of operation symbols. Order is significant: it fixes the
/// block order in algebra files and the symbol indices used by terms.
struct Signature {
    std::vector<OpSymbol> symbols;

    int index_of(std::string_view name) const;  // -1 if absent
    bool operator==(const Signature&) const = default;
};

/// A finite algebra on the carrier {0, ..., size-1}. Each operation is a flat
/// value table with the first argument most significant: the entry for
/// (a1, ..., ar) sits at index a1*n^(r-1) + ... + ar.
struct Algebra {
    std::string name;
    int size = 1;
    Signature sig;
    std::vector<std::vector<int>> tables;  // one per symbol, in order

    int apply(int sym, std::span<const int> args) const;
    bool operator==(const Algebra&) const = default;
};

/// Flat table index of an argument tuple over carrier size n.
std::size_t table_index(int n, std::span<const int> args);

/// Checks carrier size, symbol uniqueness, table lengths and entry ranges;
/// throws precondition_error on violation.
void validate_algebra(const Algebra& a);

/// Direct product with pointwise operations; element (a, b) is coded a*|B|+b.
/// Both factors must have the same signature.
Algebra product_algebra(const Algebra& a, const Algebra& b);

}  // namespace varind
