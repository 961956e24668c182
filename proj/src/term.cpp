#include "varind/term.hpp"

#include <unordered_map>
#include <unordered_set>

#include "varind/errors.hpp"

namespace varind {

TermPtr Term::make_var(int index) {
    if (index < 0) throw precondition_error("negative variable index");
    auto t = std::make_shared<Term>();
    t->var = index;
    return t;
}

TermPtr Term::make_app(int op, std::vector<TermPtr> args) {
    if (op < 0) throw precondition_error("negative operation index");
    for (const auto& a : args) {
        if (!a) throw precondition_error("null subterm");
    }
    auto t = std::make_shared<Term>();
    t->op = op;
    t->args = std::move(args);
    return t;
}

namespace {

template <typename Fn>
void visit_nodes(const TermPtr& root, Fn&& fn) {
    // Iterative DFS over distinct nodes.
    std::unordered_set<const Term*> seen;
    std::vector<const Term*> stack{root.get()};
    if (!root) throw precondition_error("null term");
    while (!stack.empty()) {
        const Term* t = stack.back();
        stack.pop_back();
        if (!seen.insert(t).second) continue;
        fn(*t);
        for (const auto& a : t->args) stack.push_back(a.get());
    }
}

}  // namespace

int term_width(const TermPtr& t) {
    int width = 0;
    visit_nodes(t, [&](const Term& n) {
        if (n.is_var() && n.var + 1 > width) width = n.var + 1;
    });
    return width;
}

std::size_t term_dag_size(const TermPtr& t) {
    std::size_t count = 0;
    visit_nodes(t, [&](const Term&) { ++count; });
    return count;
}

TermPtr substitute_vars(const TermPtr& t, std::span<const TermPtr> replacements) {
    std::unordered_map<const Term*, TermPtr> memo;
    // Recursive rebuild with memoization; depth is the tree depth, which is
    // small for every term this library constructs.
    auto rec = [&](auto&& self, const TermPtr& node) -> TermPtr {
        auto it = memo.find(node.get());
        if (it != memo.end()) return it->second;
        TermPtr result;
        if (node->is_var()) {
            if (node->var < static_cast<int>(replacements.size()))
                result = replacements[static_cast<std::size_t>(node->var)];
            else
                result = node;
        } else {
            std::vector<TermPtr> kids;
            kids.reserve(node->args.size());
            bool changed = false;
            for (const auto& a : node->args) {
                TermPtr k = self(self, a);
                changed |= (k != a);
                kids.push_back(std::move(k));
            }
            result = changed ? Term::make_app(node->op, std::move(kids)) : node;
        }
        memo.emplace(node.get(), result);
        return result;
    };
    return rec(rec, t);
}

std::string term_to_string(const Signature& sig, const TermPtr& t) {
    std::string out;
    auto rec = [&](auto&& self, const TermPtr& node) -> void {
        if (node->is_var()) {
            out += "x" + std::to_string(node->var);
            return;
        }
        if (node->op >= static_cast<int>(sig.symbols.size()))
            throw precondition_error("term symbol not in signature");
        out += "(" + sig.symbols[static_cast<std::size_t>(node->op)].name;
        for (const auto& a : node->args) {
            out += " ";
            self(self, a);
        }
        out += ")";
    };
    rec(rec, t);
    return out;
}

TermProgram::TermProgram(const Signature& sig, const TermPtr& t) {
    if (!t) throw precondition_error("null term");
    std::unordered_map<const Term*, std::uint32_t> index;
    // Post-order DFS with an explicit stack.
    std::vector<std::pair<const Term*, std::size_t>> stack{{t.get(), 0}};
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (index.count(node)) {
            stack.pop_back();
            continue;
        }
        if (next < node->args.size()) {
            const Term* child = node->args[next].get();
            ++next;
            if (!index.count(child)) stack.emplace_back(child, 0);
            continue;
        }
        Instr ins;
        if (node->is_var()) {
            ins.var = node->var;
            if (node->var + 1 > width_) width_ = node->var + 1;
        } else {
            if (node->op >= static_cast<int>(sig.symbols.size()))
                throw precondition_error("term symbol not in signature");
            const OpSymbol& sym = sig.symbols[static_cast<std::size_t>(node->op)];
            if (static_cast<int>(node->args.size()) != sym.arity)
                throw precondition_error("operation '" + sym.name + "' expects " +
                                         std::to_string(sym.arity) + " arguments, got " +
                                         std::to_string(node->args.size()));
            ins.op = node->op;
            ins.args.reserve(node->args.size());
            for (const auto& a : node->args) ins.args.push_back(index.at(a.get()));
        }
        index.emplace(node, static_cast<std::uint32_t>(instrs_.size()));
        instrs_.push_back(std::move(ins));
        stack.pop_back();
    }
}

int TermProgram::eval(const Algebra& alg, std::span<const int> assignment) const {
    std::vector<int> scratch;
    return eval(alg, assignment, scratch);
}

int TermProgram::eval(const Algebra& alg, std::span<const int> assignment,
                      std::vector<int>& scratch) const {
    if (static_cast<int>(assignment.size()) < width_)
        throw precondition_error("assignment too short for term");
    scratch.resize(instrs_.size());
    std::vector<int> args;
    for (std::size_t i = 0; i < instrs_.size(); ++i) {
        const Instr& ins = instrs_[i];
        if (ins.var >= 0) {
            scratch[i] = assignment[static_cast<std::size_t>(ins.var)];
        } else {
            args.resize(ins.args.size());
            for (std::size_t j = 0; j < ins.args.size(); ++j)
                args[j] = scratch[ins.args[j]];
            scratch[i] = alg.apply(ins.op, args);
        }
    }
    return scratch.back();
}

}  // namespace varind
