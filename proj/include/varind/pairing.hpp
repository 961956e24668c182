#pragma once

#include <mutex>
#include <utility>

#include "varind/algebra.hpp"
#include "varind/independence.hpp"
#include "varind/term.hpp"

namespace varind {

/// An algebra expanded by one nullary symbol per element pair (a, b) of
/// A x B, appended to the base signature in table order of (a, b).
struct ExpandedAlgebra {
    Algebra algebra;
    std::size_t base_symbols = 0;
    int pair_rows = 0;  // |A|
    int pair_cols = 0;  // |B|

    int constant_symbol(int a, int b) const {
        return static_cast<int>(base_symbols) + a * pair_cols + b;
    }
};

/// Expansions A* and B* over one shared signature; the constant for (a, b)
/// names a in A* and b in B*. Term operations of A* are exactly the
/// polynomial operations of A.
std::pair<ExpandedAlgebra, ExpandedAlgebra> constant_expansion(const Algebra& a,
                                                               const Algebra& b);

/// Substitutes r and s into a verified independence witness t, yielding a
/// term u with u = r on A and u = s on B. The witness identities and the
/// output identities are both checked exhaustively.
TermPtr pair_terms(const Algebra& a, const Algebra& b, const TermPtr& witness,
                   const TermPtr& r, const TermPtr& s);

/// |Clo_k(alg)|: the size of the subuniverse of alg^(carrier^k) generated by
/// the k projections. Throws limit_error when the closure hits the limit.
std::size_t clone_size(const Algebra& alg, int k, std::size_t limit = default_closure_limit);

struct PairingOptions {
    TermPtr edge_term;  // verified as a k-edge term on both algebras
    int k = 3;          // 2 or 3; either guarantees a 3-edge term
    std::size_t limit = default_closure_limit;
};

/// Pairs polynomial operations of A and B into one polynomial of A x B,
/// represented over the expanded signature. Requires a common edge term with
/// k in {2, 3} and that every tolerance of A x B is a product tolerance;
/// both hypotheses are checked and hypothesis_error is thrown otherwise.
/// The independence witness for (A*, B*) is computed once and cached.
class PolynomialPairer {
public:
    PolynomialPairer(Algebra a, Algebra b, PairingOptions opts);

    const ExpandedAlgebra& a_star() const { return a_star_; }
    const ExpandedAlgebra& b_star() const { return b_star_; }

    /// Witness term for (A*, B*); verifies hypotheses on first use.
    TermPtr witness();

    /// h with h = pf on A* and h = pg on B*; the result is verified.
    TermPtr pair(const TermPtr& pf, const TermPtr& pg);

private:
    Algebra a_;
    Algebra b_;
    PairingOptions opts_;
    ExpandedAlgebra a_star_;
    ExpandedAlgebra b_star_;
    std::mutex mutex_;
    TermPtr cached_witness_;
};

/// One-shot convenience wrapper around PolynomialPairer.
TermPtr pair_polynomials(const Algebra& a, const Algebra& b, const TermPtr& pf,
                         const TermPtr& pg, const PairingOptions& opts);

}  // namespace varind
