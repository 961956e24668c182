#include "varind/identities.hpp"

#include <algorithm>

#include "varind/errors.hpp"

namespace varind {

int eval_term(const Algebra& alg, const TermPtr& t, std::span<const int> assignment) {
    return TermProgram(alg.sig, t).eval(alg, assignment);
}

namespace {

// Runs fn on every assignment {0..n-1}^width; fn returns false to stop early.
template <typename Fn>
bool for_each_assignment(int n, int width, Fn&& fn) {
    double space = 1;
    for (int i = 0; i < width; ++i) space *= n;
    if (space > 1e8) throw capacity_error("identity check space too large");
    std::vector<int> asg(static_cast<std::size_t>(width), 0);
    while (true) {
        if (!fn(asg)) return false;
        int i = width - 1;
        while (i >= 0 && asg[static_cast<std::size_t>(i)] == n - 1) {
            asg[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) return true;
        ++asg[static_cast<std::size_t>(i)];
    }
}

}  // namespace

bool satisfies_identity(const Algebra& alg, const TermPtr& s, const TermPtr& t) {
    TermProgram ps(alg.sig, s), pt(alg.sig, t);
    int width = std::max(ps.width(), pt.width());
    std::vector<int> scratch_s, scratch_t;
    return for_each_assignment(alg.size, width, [&](std::span<const int> asg) {
        return ps.eval(alg, asg, scratch_s) == pt.eval(alg, asg, scratch_t);
    });
}

std::vector<int> term_function(const Algebra& alg, const TermPtr& t, int k) {
    TermProgram p(alg.sig, t);
    if (p.width() > k)
        throw precondition_error("term has width " + std::to_string(p.width()) +
                                 ", expected at most " + std::to_string(k));
    std::vector<int> table;
    std::vector<int> scratch;
    for_each_assignment(alg.size, k, [&](std::span<const int> a) {
        table.push_back(p.eval(alg, a, scratch));
        return true;
    });
    return table;
}

std::vector<int> edge_row_pattern(int row, int k) {
    if (k < 2 || row < 1 || row > k) throw precondition_error("edge row out of range");
    std::vector<int> pat(static_cast<std::size_t>(k) + 1, 1);
    if (row <= 2) pat[0] = 0;
    pat[static_cast<std::size_t>(row)] = 0;  // column row+1
    return pat;
}

std::vector<int> parallelogram_row_pattern(int row, int k) {
    if (k < 2 || row < 1 || row > k)
        throw precondition_error("parallelogram row out of range");
    std::vector<int> pat(static_cast<std::size_t>(k) + 3, 1);
    pat[0] = row == 1 ? 0 : 1;
    pat[1] = 0;
    pat[2] = row == 1 ? 1 : 0;
    pat[static_cast<std::size_t>(row) + 2] = 2;  // column row+3
    return pat;
}

namespace {

bool verify_row_system(const Algebra& alg, const TermPtr& t, int k, int term_vars,
                       int letters, std::vector<int> (*pattern)(int, int)) {
    TermProgram prog(alg.sig, t);
    if (prog.width() > term_vars)
        throw precondition_error("term has width " + std::to_string(prog.width()) +
                                 ", expected at most " + std::to_string(term_vars));
    std::vector<int> asg(static_cast<std::size_t>(term_vars));
    std::vector<int> scratch;
    for (int row = 1; row <= k; ++row) {
        std::vector<int> pat = pattern(row, k);
        bool ok = for_each_assignment(alg.size, letters, [&](std::span<const int> letter) {
            for (int i = 0; i < term_vars; ++i)
                asg[static_cast<std::size_t>(i)] =
                    letter[static_cast<std::size_t>(pat[static_cast<std::size_t>(i)])];
            return prog.eval(alg, asg, scratch) == letter[1];  // every row equals y
        });
        if (!ok) return false;
    }
    return true;
}

}  // namespace

bool verify_edge_term(const Algebra& alg, const TermPtr& t, int k) {
    if (k < 2) throw precondition_error("edge terms require k >= 2");
    return verify_row_system(alg, t, k, k + 1, 2, edge_row_pattern);
}

bool verify_parallelogram_term(const Algebra& alg, const TermPtr& p, int k) {
    if (k < 2) throw precondition_error("parallelogram terms require k >= 2");
    return verify_row_system(alg, p, k, k + 3, 3, parallelogram_row_pattern);
}

std::optional<std::string> malcev_failure(const Algebra& alg, const TermPtr& d) {
    TermProgram prog(alg.sig, d);
    if (prog.width() > 3) throw precondition_error("Mal'cev terms are ternary");
    std::vector<int> scratch;
    for (int x = 0; x < alg.size; ++x) {
        for (int y = 0; y < alg.size; ++y) {
            std::vector<int> xxy{x, x, y};
            if (prog.eval(alg, xxy, scratch) != y)
                return "d(x,x,y) = y fails at x=" + std::to_string(x) +
                       ", y=" + std::to_string(y) + " on " + alg.name;
            std::vector<int> yxx{y, x, x};
            if (prog.eval(alg, yxx, scratch) != y)
                return "d(y,x,x) = y fails at x=" + std::to_string(x) +
                       ", y=" + std::to_string(y) + " on " + alg.name;
        }
    }
    return std::nullopt;
}

bool is_malcev_term(const Algebra& alg, const TermPtr& d) {
    return !malcev_failure(alg, d).has_value();
}

bool is_majority_term(const Algebra& alg, const TermPtr& m) {
    TermProgram prog(alg.sig, m);
    if (prog.width() > 3) throw precondition_error("majority terms are ternary");
    std::vector<int> scratch;
    for (int x = 0; x < alg.size; ++x) {
        for (int y = 0; y < alg.size; ++y) {
            std::vector<int> a{x, x, y}, b{x, y, x}, c{y, x, x};
            if (prog.eval(alg, a, scratch) != x || prog.eval(alg, b, scratch) != x ||
                prog.eval(alg, c, scratch) != x)
                return false;
        }
    }
    return true;
}

TermPtr malcev_to_edge(const TermPtr& d, int k) {
    if (k != 2 && k != 3) throw precondition_error("malcev_to_edge supports k = 2 or 3");
    if (term_width(d) > 3) throw precondition_error("Mal'cev terms are ternary");
    const TermPtr repl[] = {Term::make_var(1), Term::make_var(0), Term::make_var(2)};
    return substitute_vars(d, repl);
}

TermPtr majority_to_edge(const TermPtr& m) {
    if (term_width(m) > 3) throw precondition_error("majority terms are ternary");
    const TermPtr repl[] = {Term::make_var(1), Term::make_var(2), Term::make_var(3)};
    return substitute_vars(m, repl);
}

}  // namespace varind
