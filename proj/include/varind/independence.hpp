#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varind/algebra.hpp"
#include "varind/term.hpp"

namespace varind {

inline constexpr std::size_t default_closure_limit = std::size_t{1} << 22;

enum class Verdict { independent, not_independent, inconclusive };
enum class Method { fast_malcev, fast_edge, oracle, both };

std::string verdict_name(Verdict v);
std::string method_name(Method m, int k);

/// A pair of generators p = (a, b), q = (c, d) in A^r x B^s whose generated
/// subalgebra misses one of the mixed tuples (a, d) or (c, b).
struct MixingCounterexample {
    int r = 0;
    int s = 0;
    std::vector<int> a, c;  // rows of the A-block
    std::vector<int> b, d;  // rows of the B-block
    std::vector<int> missing_a, missing_b;  // the absent mixed tuple
};

struct IndependenceStats {
    std::uint64_t closures = 0;
    std::size_t max_closure = 0;
    double wall_ms = 0.0;
};

struct IndependenceReport {
    Verdict verdict = Verdict::inconclusive;
    Method method = Method::oracle;
    int k = 0;  // edge parameter for Method::fast_edge
    std::optional<MixingCounterexample> counterexample;
    TermPtr witness;  // null when absent
    IndependenceStats stats;
};

/// Polynomial-time check for algebras with a common Mal'cev term: sweeps all
/// 2-generated subalgebras of A^r x B^s for r, s in {1, 2} and tests that
/// they are mixing-closed. d must be a Mal'cev term on both algebras.
IndependenceReport check_fast_malcev(const Algebra& a, const Algebra& b,
                                     const TermPtr& d, int threads = 1);

/// Polynomial-time check for algebras with a common k-edge term: the same
/// sweep over all r, s >= 1 with r + s <= max(4, k-1).
IndependenceReport check_fast_edge(const Algebra& a, const Algebra& b,
                                   const TermPtr& t, int k, int threads = 1);

/// Exponential check via the free-algebra membership problem: decides
/// whether the pair (first projection on A, second projection on B) lies in
/// the subalgebra of A^(A^2) x B^(B^2) generated by the two projection
/// pairs, extracting a witness term when it does. Truncation at limit yields
/// an inconclusive verdict.
IndependenceReport check_oracle(const Algebra& a, const Algebra& b,
                                std::size_t limit = default_closure_limit);

struct DecideOptions {
    enum class Mode { automatic, fast, oracle, both };
    Mode mode = Mode::automatic;
    TermPtr edge_term;  // required for fast mode
    int k = 0;
    std::size_t limit = default_closure_limit;
    int threads = 1;
};

/// Dispatches between the fast sweep and the oracle. Mode both runs the two
/// and insists on matching verdicts, reporting the fast statistics enriched
/// with the oracle witness.
IndependenceReport decide(const Algebra& a, const Algebra& b, const DecideOptions& opts);

/// Upper bound (m-1) * max(|A|,|B|)^(2m) with m = max(4, k-1) on the number
/// of closures the fast sweep may perform; saturates at the uint64 maximum.
std::uint64_t fast_sweep_closure_bound(const Algebra& a, const Algebra& b, int k);

}  // namespace varind
