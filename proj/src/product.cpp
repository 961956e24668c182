#include "varind/product.hpp"

#include <algorithm>

#include "varind/errors.hpp"

namespace varind {

namespace {

constexpr tuple_code max_carrier = tuple_code(1) << 126;

}  // namespace

ProductContext make_product_context(Algebra a, Algebra b, int m, int n) {
    if (m < 0 || n < 0) throw precondition_error("negative power exponent");
    if (a.sig != b.sig)
        throw precondition_error("algebras '" + a.name + "' and '" + b.name +
                                 "' do not share a signature");
    if (a.size > 255 || b.size > 255)
        throw capacity_error("carrier sizes above 255 are not supported");
    ProductContext ctx;
    ctx.m = m;
    ctx.n = n;
    auto checked_mul = [](tuple_code x, int base) {
        if (x > max_carrier / static_cast<unsigned>(base))
            throw capacity_error("tuple coding space exceeds 126 bits");
        return x * static_cast<unsigned>(base);
    };
    tuple_code a_block = 1;
    for (int i = 0; i < m; ++i) a_block = checked_mul(a_block, a.size);
    ctx.b_block = 1;
    for (int i = 0; i < n; ++i) ctx.b_block = checked_mul(ctx.b_block, b.size);
    if (a_block > max_carrier / ctx.b_block)
        throw capacity_error("tuple coding space exceeds 126 bits");
    ctx.carrier = a_block * ctx.b_block;
    ctx.weights.resize(static_cast<std::size_t>(m + n));
    tuple_code w = 1;
    for (int i = m + n - 1; i >= 0; --i) {
        ctx.weights[static_cast<std::size_t>(i)] = w;
        w *= static_cast<unsigned>(i < m ? a.size : b.size);
    }
    ctx.a = std::move(a);
    ctx.b = std::move(b);
    return ctx;
}

std::vector<int> decode_tuple(const ProductContext& ctx, tuple_code code) {
    if (code >= ctx.carrier) throw precondition_error("tuple code out of range");
    std::vector<int> digits(static_cast<std::size_t>(ctx.coords()));
    for (int i = ctx.coords() - 1; i >= 0; --i) {
        auto radix = static_cast<unsigned>(ctx.radix(i));
        digits[static_cast<std::size_t>(i)] = static_cast<int>(code % radix);
        code /= radix;
    }
    return digits;
}

tuple_code encode_tuple(const ProductContext& ctx, std::span<const int> digits) {
    if (static_cast<int>(digits.size()) != ctx.coords())
        throw precondition_error("digit count does not match context");
    tuple_code code = 0;
    for (int i = 0; i < ctx.coords(); ++i) {
        int d = digits[static_cast<std::size_t>(i)];
        if (d < 0 || d >= ctx.radix(i)) throw precondition_error("digit out of range");
        code = code * static_cast<unsigned>(ctx.radix(i)) + static_cast<unsigned>(d);
    }
    return code;
}

std::string format_tuple(const ProductContext& ctx, tuple_code code, bool spaced) {
    std::vector<int> digits = decode_tuple(ctx, code);
    std::string out = "(";
    for (int i = 0; i < ctx.m; ++i) {
        if (i) out += ",";
        out += std::to_string(digits[static_cast<std::size_t>(i)]);
    }
    out += spaced ? " | " : "|";
    for (int i = 0; i < ctx.n; ++i) {
        if (i) out += ",";
        out += std::to_string(digits[static_cast<std::size_t>(ctx.m + i)]);
    }
    out += ")";
    return out;
}

std::string code_to_string(tuple_code code) {
    if (code == 0) return "0";
    std::string out;
    while (code > 0) {
        out += static_cast<char>('0' + static_cast<int>(code % 10));
        code /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace varind
