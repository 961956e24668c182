#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "varind/algebra.hpp"

namespace varind {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable term over a signature: a variable or an application node.
/// Subterms may be shared, so a term is in general a DAG; every algorithm
/// below is sharing-aware and visits each distinct node once.
struct Term {
    int var = -1;  // variable index, or -1 for an application
    int op = -1;   // signature symbol index, or -1 for a variable
    std::vector<TermPtr> args;

    bool is_var() const { return var >= 0; }

    static TermPtr make_var(int index);
    static TermPtr make_app(int op, std::vector<TermPtr> args);
};

/// 1 + largest variable index in t; 0 for variable-free terms.
int term_width(const TermPtr& t);

/// Number of distinct nodes.
std::size_t term_dag_size(const TermPtr& t);

/// Replaces variable i by replacements[i]; variables past the end are kept.
TermPtr substitute_vars(const TermPtr& t, std::span<const TermPtr> replacements);

std::string term_to_string(const Signature& sig, const TermPtr& t);

/// A term compiled to a topologically sorted instruction list so that shared
/// subterms are evaluated once per assignment.
class TermProgram {
public:
    TermProgram(const Signature& sig, const TermPtr& t);

    int width() const { return width_; }

    int eval(const Algebra& alg, std::span<const int> assignment) const;
    int eval(const Algebra& alg, std::span<const int> assignment,
             std::vector<int>& scratch) const;

private:
    struct Instr {
        int var = -1;
        int op = -1;
        std::vector<std::uint32_t> args;  // indices of earlier instructions
    };
    std::vector<Instr> instrs_;
    int width_ = 0;
};

}  // namespace varind
