#include "varind/pairing.hpp"

#include <stdexcept>

#include "varind/closure.hpp"
#include "varind/errors.hpp"
#include "varind/identities.hpp"
#include "varind/product.hpp"
#include "varind/relations.hpp"

namespace varind {

std::pair<ExpandedAlgebra, ExpandedAlgebra> constant_expansion(const Algebra& a,
                                                               const Algebra& b) {
    if (a.sig != b.sig) throw precondition_error("algebras do not share a signature");
    Signature sig = a.sig;
    for (int x = 0; x < a.size; ++x)
        for (int y = 0; y < b.size; ++y)
            sig.symbols.push_back(
                {"c_" + std::to_string(x) + "_" + std::to_string(y), 0});

    auto expand = [&](const Algebra& base, bool first) {
        ExpandedAlgebra out;
        out.base_symbols = base.sig.symbols.size();
        out.pair_rows = a.size;
        out.pair_cols = b.size;
        out.algebra = base;
        out.algebra.name = base.name + "*";
        out.algebra.sig = sig;
        for (int x = 0; x < a.size; ++x)
            for (int y = 0; y < b.size; ++y)
                out.algebra.tables.push_back({first ? x : y});
        return out;
    };
    return {expand(a, true), expand(b, false)};
}

TermPtr pair_terms(const Algebra& a, const Algebra& b, const TermPtr& witness,
                   const TermPtr& r, const TermPtr& s) {
    if (a.sig != b.sig) throw precondition_error("algebras do not share a signature");
    TermPtr x0 = Term::make_var(0), x1 = Term::make_var(1);
    if (term_width(witness) > 2 || !satisfies_identity(a, witness, x0) ||
        !satisfies_identity(b, witness, x1))
        throw precondition_error(
            "witness verification failed: the term is not an independence witness");

    const TermPtr repl[] = {r, s};
    TermPtr u = substitute_vars(witness, repl);
    if (!satisfies_identity(a, u, r) || !satisfies_identity(b, u, s))
        throw std::logic_error("paired term failed verification");
    return u;
}

std::size_t clone_size(const Algebra& alg, int k, std::size_t limit) {
    if (k < 1) throw precondition_error("clone arity must be positive");
    std::size_t coords = 1;
    for (int i = 0; i < k; ++i) {
        coords *= static_cast<std::size_t>(alg.size);
        if (coords > (std::size_t{1} << 24))
            throw capacity_error("operation space has too many coordinates");
    }
    ProductContext ctx =
        make_product_context(alg, alg, static_cast<int>(coords), 0);

    // Coordinates are argument tuples in table order; projection j picks the
    // j-th digit of the coordinate index.
    std::vector<tuple_code> gens;
    std::vector<int> digits(coords);
    for (int j = 0; j < k; ++j) {
        std::size_t stride = 1;
        for (int i = j + 1; i < k; ++i) stride *= static_cast<std::size_t>(alg.size);
        for (std::size_t c = 0; c < coords; ++c)
            digits[c] = static_cast<int>(c / stride % static_cast<std::size_t>(alg.size));
        gens.push_back(encode_tuple(ctx, digits));
    }
    ClosureResult res = generate_subuniverse(ctx, gens, limit);
    if (res.truncated)
        throw limit_error("clone enumeration exceeded the closure limit of " +
                          std::to_string(limit));
    return res.members.size();
}

PolynomialPairer::PolynomialPairer(Algebra a, Algebra b, PairingOptions opts)
    : a_(std::move(a)), b_(std::move(b)), opts_(std::move(opts)) {
    auto [as, bs] = constant_expansion(a_, b_);
    a_star_ = std::move(as);
    b_star_ = std::move(bs);
}

TermPtr PolynomialPairer::witness() {
    std::lock_guard<std::mutex> lock(mutex_);
    if (cached_witness_) return cached_witness_;

    if (!opts_.edge_term || (opts_.k != 2 && opts_.k != 3))
        throw precondition_error("polynomial pairing requires an edge term with k = 2 or 3");
    for (const Algebra* alg : {&a_, &b_}) {
        if (!verify_edge_term(*alg, opts_.edge_term, opts_.k))
            throw hypothesis_error("the supplied term is not a " +
                                   std::to_string(opts_.k) + "-edge term on " + alg->name);
    }
    std::vector<int> full_a, full_b;
    for (int i = 0; i < a_.size; ++i) full_a.push_back(i);
    for (int i = 0; i < b_.size; ++i) full_b.push_back(i);
    ProductRelationSweep sweep = all_tolerances_product(a_, b_, full_a, full_b);
    if (!sweep.all_product)
        throw hypothesis_error("a tolerance of " + a_.name + " x " + b_.name +
                               " is not a product tolerance");

    IndependenceReport report =
        check_oracle(a_star_.algebra, b_star_.algebra, opts_.limit);
    if (report.verdict == Verdict::inconclusive)
        throw limit_error("witness extraction hit the closure limit of " +
                          std::to_string(opts_.limit) + "; raise it and retry");
    if (report.verdict != Verdict::independent)
        throw std::logic_error("expansions failed to pair despite verified hypotheses");
    cached_witness_ = report.witness;
    return cached_witness_;
}

TermPtr PolynomialPairer::pair(const TermPtr& pf, const TermPtr& pg) {
    TermPtr w = witness();
    return pair_terms(a_star_.algebra, b_star_.algebra, w, pf, pg);
}

TermPtr pair_polynomials(const Algebra& a, const Algebra& b, const TermPtr& pf,
                         const TermPtr& pg, const PairingOptions& opts) {
    PolynomialPairer pairer(a, b, opts);
    return pairer.pair(pf, pg);
}

}  // namespace varind
