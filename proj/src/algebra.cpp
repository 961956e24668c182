#include "varind/algebra.hpp"

#include <set>

#include "varind/errors.hpp"

namespace varind {

int Signature::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

std::size_t table_index(int n, std::span<const int> args) {
    std::size_t idx = 0;
    for (int a : args) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(a);
    return idx;
}

int Algebra::apply(int sym, std::span<const int> args) const {
    return tables[static_cast<std::size_t>(sym)][table_index(size, args)];
}

namespace {

std::size_t checked_pow(int base, int exp, std::size_t cap) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= static_cast<std::size_t>(base);
        if (r > cap) throw precondition_error("operation table too large");
    }
    return r;
}

}  // namespace

void validate_algebra(const Algebra& a) {
    if (a.size < 1) throw precondition_error("algebra size must be positive");
    std::set<std::string> seen;
    for (const auto& s : a.sig.symbols) {
        if (s.name.empty()) throw precondition_error("empty operation name");
        if (s.arity < 0) throw precondition_error("negative arity");
        if (!seen.insert(s.name).second)
            throw precondition_error("duplicate operation name '" + s.name + "'");
    }
    if (a.tables.size() != a.sig.symbols.size())
        throw precondition_error("table count does not match signature");
    for (std::size_t i = 0; i < a.tables.size(); ++i) {
        std::size_t want = checked_pow(a.size, a.sig.symbols[i].arity, std::size_t{1} << 26);
        if (a.tables[i].size() != want)
            throw precondition_error("table length mismatch for operation '" +
                                     a.sig.symbols[i].name + "'");
        for (int v : a.tables[i]) {
            if (v < 0 || v >= a.size)
                throw precondition_error("table entry out of range for operation '" +
                                         a.sig.symbols[i].name + "'");
        }
    }
}

Algebra product_algebra(const Algebra& a, const Algebra& b) {
    if (a.sig != b.sig) throw precondition_error("product factors must share a signature");
    Algebra p;
    p.name = a.name + "x" + b.name;
    p.size = a.size * b.size;
    p.sig = a.sig;
    p.tables.resize(a.sig.symbols.size());
    std::vector<int> args_a, args_b;
    for (std::size_t sym = 0; sym < a.sig.symbols.size(); ++sym) {
        int r = a.sig.symbols[sym].arity;
        std::size_t count = 1;
        for (int i = 0; i < r; ++i) count *= static_cast<std::size_t>(p.size);
        auto& table = p.tables[sym];
        table.resize(count);
        args_a.assign(static_cast<std::size_t>(r), 0);
        args_b.assign(static_cast<std::size_t>(r), 0);
        for (std::size_t code = 0; code < count; ++code) {
            std::size_t rest = code;
            for (int i = r - 1; i >= 0; --i) {
                int e = static_cast<int>(rest % static_cast<std::size_t>(p.size));
                rest /= static_cast<std::size_t>(p.size);
                args_a[static_cast<std::size_t>(i)] = e / b.size;
                args_b[static_cast<std::size_t>(i)] = e % b.size;
            }
            table[code] = a.apply(static_cast<int>(sym), args_a) * b.size +
                          b.apply(static_cast<int>(sym), args_b);
        }
    }
    return p;
}

}  // namespace varind
