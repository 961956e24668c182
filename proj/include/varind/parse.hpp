#pragma once

#include <string>
#include <string_view>

#include "varind/algebra.hpp"
#include "varind/term.hpp"

namespace varind {

// Algebra file format (UTF-8, '#' starts a comment to end of line, tokens
// whitespace-separated):
//
//   algebra NAME
//   size N
//   op SYMBOL ARITY
//   values v_0 v_1 ... v_{N^ARITY - 1}
//
// op/values blocks repeat; symbols in declaration order form the signature.
// Tables are in lexicographic argument order, first argument most significant.
Algebra parse_algebra(std::string_view text);

std::string print_algebra(const Algebra& a);

// Term syntax: TERM := 'x'INDEX | '(' SYMBOL TERM* ')'
// Example: (+ x0 (+ x0 x1))
TermPtr parse_term(const Signature& sig, std::string_view text);

}  // namespace varind
