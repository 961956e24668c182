#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "varind/algebra.hpp"
#include "varind/term.hpp"

namespace varind {

/// Assignment of carrier values to the variables x0, x1, ...
using Assignment = std::vector<int>;

int eval_term(const Algebra& alg, const TermPtr& t, std::span<const int> assignment);

/// Exhaustive identity check: true iff s and t agree under every assignment
/// of carrier values to the variables of both terms.
bool satisfies_identity(const Algebra& alg, const TermPtr& s, const TermPtr& t);

/// Value table of the k-ary operation induced by t, argument tuples in table
/// order. Requires term_width(t) <= k.
std::vector<int> term_function(const Algebra& alg, const TermPtr& t, int k);

// Row patterns of the edge-term and parallelogram-term identity systems.
// Entries: 0 = x, 1 = y, 2 = z. Rows are 1-based; row i of the k-edge system
// has length k+1 and the parallelogram system has length k+3.
//
// Edge system: column 1 is x in rows 1 and 2 and y below; the off-diagonal x
// sits at column i+1 in row i; all other entries are y.
std::vector<int> edge_row_pattern(int row, int k);
// Parallelogram system: column 2 is x in every row; column 1 is x only in
// row 1; column 3 is x in every row but the first; z sits at column i+3 in
// row i; all other entries are y.
std::vector<int> parallelogram_row_pattern(int row, int k);

/// True iff every row of the k-edge system evaluates to y for all (x, y).
/// Throws precondition_error when term_width(t) > k+1 or k < 2.
bool verify_edge_term(const Algebra& alg, const TermPtr& t, int k);

/// True iff every row of the (1,k-1)-parallelogram system evaluates to y for
/// all (x, y, z). Throws precondition_error when term_width(p) > k+3 or k < 2.
bool verify_parallelogram_term(const Algebra& alg, const TermPtr& p, int k);

/// First violated Mal'cev identity of d(x,x,y) ~ y ~ d(y,x,x), as a printable
/// description, or nullopt when d is a Mal'cev term on alg.
std::optional<std::string> malcev_failure(const Algebra& alg, const TermPtr& d);
bool is_malcev_term(const Algebra& alg, const TermPtr& d);

/// Checks m(x,x,y) ~ m(x,y,x) ~ m(y,x,x) ~ x.
bool is_majority_term(const Algebra& alg, const TermPtr& m);

/// A Mal'cev term d yields the edge term t(x1,x2,x3) = d(x2,x1,x3), usable
/// with k = 2 or (padded with an unused variable) with k = 3. The caller is
/// expected to confirm the result with verify_edge_term.
TermPtr malcev_to_edge(const TermPtr& d, int k);

/// A majority term m yields the 3-edge term e(x1,x2,x3,x4) = m(x2,x3,x4).
TermPtr majority_to_edge(const TermPtr& m);

}  // namespace varind
