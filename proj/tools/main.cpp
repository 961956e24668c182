// Command-line front end: decides independence of two finite algebras,
// extracts witness terms, verifies special terms, explores closures and
// relations, pairs polynomials, and benchmarks the fast check against the
// free-algebra oracle.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "varind/closure.hpp"
#include "varind/errors.hpp"
#include "varind/identities.hpp"
#include "varind/independence.hpp"
#include "varind/pairing.hpp"
#include "varind/parse.hpp"
#include "varind/relations.hpp"

namespace {

using namespace varind;

constexpr int exit_independent = 0;
constexpr int exit_not_independent = 1;
constexpr int exit_error = 2;
constexpr int exit_inconclusive = 3;

struct RunConfig {
    std::vector<std::string> inputs;
    std::string method = "auto";
    std::string edge_term;  // inline text or @FILE
    int k = 0;
    std::size_t limit = default_closure_limit;
    int threads = 1;
    std::string output = "human";
    bool emit_terms = false;

    bool lines() const { return output == "lines"; }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Algebra load_algebra(const std::string& path) {
    try {
        return parse_algebra(slurp(path));
    } catch (const parse_error& e) {
        throw error(path + ": " + e.what());
    }
}

// An argument of the form @FILE names a file holding the text.
std::string load_text_arg(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
    return arg;
}

void require_same_signature(const Algebra& a, const Algebra& b) {
    if (a.sig != b.sig)
        throw error("signature mismatch between '" + a.name + "' and '" + b.name + "'");
}

std::string tuple_text(const std::vector<int>& digits) {
    std::string out = "(";
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(digits[i]);
    }
    return out + ")";
}

std::string mixed_tuple_text(const std::vector<int>& a, const std::vector<int>& b,
                             bool spaced) {
    std::string out = "(";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(a[i]);
    }
    out += spaced ? " | " : "|";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(b[i]);
    }
    return out + ")";
}

// Counterexamples and witnesses are re-verified before printing.
void reverify(const Algebra& a, const Algebra& b, const IndependenceReport& report,
              std::size_t limit) {
    if (report.witness) {
        if (!satisfies_identity(a, report.witness, Term::make_var(0)) ||
            !satisfies_identity(b, report.witness, Term::make_var(1)))
            throw std::logic_error("witness failed re-verification");
    }
    if (report.counterexample) {
        const MixingCounterexample& ce = *report.counterexample;
        ProductContext ctx = make_product_context(a, b, ce.r, ce.s);
        std::vector<int> p(ce.a), q(ce.c), missing(ce.missing_a);
        p.insert(p.end(), ce.b.begin(), ce.b.end());
        q.insert(q.end(), ce.d.begin(), ce.d.end());
        missing.insert(missing.end(), ce.missing_b.begin(), ce.missing_b.end());
        const tuple_code gens[] = {encode_tuple(ctx, p), encode_tuple(ctx, q)};
        ClosureResult res = generate_subuniverse(ctx, gens, limit);
        if (res.truncated || res.contains(encode_tuple(ctx, missing)))
            throw std::logic_error("counterexample failed re-verification");
    }
}

void print_report(const Algebra& a, const Algebra& b, const IndependenceReport& report,
                  const RunConfig& cfg) {
    std::string method = method_name(report.method, report.k);
    if (cfg.lines()) {
        std::cout << "RESULT verdict=" << verdict_name(report.verdict)
                  << " method=" << method << "\n";
        if (report.counterexample) {
            const MixingCounterexample& ce = *report.counterexample;
            std::cout << "COUNTEREXAMPLE r=" << ce.r << " s=" << ce.s
                      << " a=" << tuple_text(ce.a) << " b=" << tuple_text(ce.b)
                      << " c=" << tuple_text(ce.c) << " d=" << tuple_text(ce.d)
                      << " missing=" << mixed_tuple_text(ce.missing_a, ce.missing_b, false)
                      << "\n";
        }
        if (report.witness)
            std::cout << "WITNESS term=" << term_to_string(a.sig, report.witness) << "\n";
        std::cout << "STATS closures=" << report.stats.closures
                  << " max_closure=" << report.stats.max_closure
                  << " ms=" << report.stats.wall_ms << "\n";
    } else {
        std::cout << "verdict:  " << verdict_name(report.verdict) << "\n"
                  << "method:   " << method << "\n";
        if (report.counterexample) {
            const MixingCounterexample& ce = *report.counterexample;
            std::cout << "counterexample: in A^" << ce.r << " x B^" << ce.s
                      << ", the subalgebra generated by\n"
                      << "    p = " << mixed_tuple_text(ce.a, ce.b, true) << "\n"
                      << "    q = " << mixed_tuple_text(ce.c, ce.d, true) << "\n"
                      << "  omits the mixed tuple "
                      << mixed_tuple_text(ce.missing_a, ce.missing_b, true) << "\n";
        }
        if (report.witness)
            std::cout << "witness:  " << term_to_string(a.sig, report.witness) << "\n";
        std::cout << "stats:    " << report.stats.closures << " closures, max closure "
                  << report.stats.max_closure << ", " << report.stats.wall_ms << " ms\n";
    }
    (void)b;
}

int report_exit_code(const IndependenceReport& report) {
    switch (report.verdict) {
        case Verdict::independent: return exit_independent;
        case Verdict::not_independent: return exit_not_independent;
        case Verdict::inconclusive: return exit_inconclusive;
    }
    return exit_error;
}

DecideOptions build_options(const RunConfig& cfg, const Signature& sig) {
    DecideOptions opts;
    if (cfg.method == "auto") opts.mode = DecideOptions::Mode::automatic;
    else if (cfg.method == "fast") opts.mode = DecideOptions::Mode::fast;
    else if (cfg.method == "oracle") opts.mode = DecideOptions::Mode::oracle;
    else if (cfg.method == "both") opts.mode = DecideOptions::Mode::both;
    else throw error("unknown method '" + cfg.method + "'");
    if (!cfg.edge_term.empty()) {
        opts.edge_term = parse_term(sig, load_text_arg(cfg.edge_term));
        opts.k = cfg.k;
        if (cfg.k < 2) throw error("--edge-term requires --k >= 2");
    }
    opts.limit = cfg.limit;
    opts.threads = cfg.threads;
    return opts;
}

void announce_fast_cost(const Algebra& a, const Algebra& b, int k) {
    std::cerr << "note: fast sweep may perform up to "
              << fast_sweep_closure_bound(a, b, k) << " closures (k=" << k << ")\n";
}

int cmd_check(const RunConfig& cfg) {
    Algebra a = load_algebra(cfg.inputs[0]);
    Algebra b = load_algebra(cfg.inputs[1]);
    require_same_signature(a, b);
    DecideOptions opts = build_options(cfg, a.sig);
    if (opts.edge_term && opts.mode != DecideOptions::Mode::oracle)
        announce_fast_cost(a, b, opts.k);
    IndependenceReport report = decide(a, b, opts);
    reverify(a, b, report, cfg.limit);
    print_report(a, b, report, cfg);
    return report_exit_code(report);
}

int cmd_witness(const RunConfig& cfg) {
    Algebra a = load_algebra(cfg.inputs[0]);
    Algebra b = load_algebra(cfg.inputs[1]);
    require_same_signature(a, b);
    IndependenceReport report = check_oracle(a, b, cfg.limit);
    reverify(a, b, report, cfg.limit);
    print_report(a, b, report, cfg);
    return report_exit_code(report);
}

int cmd_verify_term(const RunConfig& cfg, const std::string& kind,
                    const std::string& term_text) {
    Algebra a = load_algebra(cfg.inputs[0]);
    TermPtr t = parse_term(a.sig, load_text_arg(term_text));
    bool ok;
    if (kind == "edge") {
        if (cfg.k < 2) throw error("--kind edge requires --k >= 2");
        ok = verify_edge_term(a, t, cfg.k);
    } else if (kind == "parallelogram") {
        if (cfg.k < 2) throw error("--kind parallelogram requires --k >= 2");
        ok = verify_parallelogram_term(a, t, cfg.k);
    } else if (kind == "malcev") {
        ok = is_malcev_term(a, t);
    } else if (kind == "majority") {
        ok = is_majority_term(a, t);
    } else {
        throw error("unknown kind '" + kind + "'");
    }
    if (cfg.lines())
        std::cout << "RESULT verified=" << (ok ? "yes" : "no") << " kind=" << kind
                  << (cfg.k >= 2 ? " k=" + std::to_string(cfg.k) : "") << "\n";
    else
        std::cout << kind << " verification " << (ok ? "passed" : "FAILED") << " on "
                  << a.name << "\n";
    return ok ? 0 : 1;
}

int cmd_closure(const RunConfig& cfg, int m, int n,
                const std::vector<std::string>& generator_args) {
    Algebra a = load_algebra(cfg.inputs[0]);
    Algebra b = cfg.inputs.size() > 1 ? load_algebra(cfg.inputs[1]) : a;
    if (n > 0 && cfg.inputs.size() < 2)
        throw error("a second algebra file is required when n > 0");
    require_same_signature(a, b);
    ProductContext ctx = make_product_context(a, b, m, n);

    std::vector<tuple_code> gens;
    for (const std::string& g : generator_args) {
        std::vector<int> digits;
        std::stringstream ss(g);
        std::string item;
        while (std::getline(ss, item, ',')) digits.push_back(std::stoi(item));
        if (static_cast<int>(digits.size()) != m + n)
            throw error("generator '" + g + "' must have " + std::to_string(m + n) +
                        " entries");
        gens.push_back(encode_tuple(ctx, digits));
    }

    ClosureResult res = generate_subuniverse(ctx, gens, cfg.limit);
    std::vector<int> gen_vars(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) gen_vars[i] = static_cast<int>(i);

    if (cfg.lines())
        std::cout << "RESULT members=" << res.members.size()
                  << " truncated=" << (res.truncated ? "yes" : "no") << "\n";
    else
        std::cout << res.members.size() << " members"
                  << (res.truncated ? " (truncated)" : "") << "\n";
    for (std::size_t i = 0; i < res.members.size(); ++i) {
        std::string line;
        if (cfg.lines())
            line = "MEMBER index=" + std::to_string(i) +
                   " tuple=" + format_tuple(ctx, res.members[i], false);
        else
            line = "  " + format_tuple(ctx, res.members[i], true);
        if (cfg.emit_terms) {
            auto t = member_term(res, res.members[i], gen_vars);
            if (eval_term_in_product(ctx, *t, gens) != res.members[i])
                throw std::logic_error("derivation term failed re-verification");
            line += cfg.lines() ? " term=" + term_to_string(a.sig, *t)
                                : "   " + term_to_string(a.sig, *t);
        }
        std::cout << line << "\n";
    }
    return res.truncated ? exit_inconclusive : 0;
}

int cmd_relations(const RunConfig& cfg, const std::string& kind,
                  const std::string& universe_a, const std::string& universe_b) {
    Algebra a = load_algebra(cfg.inputs[0]);
    Algebra b = load_algebra(cfg.inputs[1]);
    require_same_signature(a, b);

    auto parse_universe = [](const std::string& text, int size) {
        std::vector<int> u;
        if (text.empty()) {
            for (int i = 0; i < size; ++i) u.push_back(i);
            return u;
        }
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) u.push_back(std::stoi(item));
        return u;
    };
    std::vector<int> e = parse_universe(universe_a, a.size);
    std::vector<int> f = parse_universe(universe_b, b.size);

    ProductRelationSweep sweep;
    if (kind == "tolerances")
        sweep = all_tolerances_product(a, b, e, f, cfg.threads);
    else if (kind == "congruences")
        sweep = all_congruences_product(a, b, e, f, cfg.threads);
    else
        throw error("unknown check '" + kind + "'");

    ProductContext base = make_product_context(a, b, 1, 1);
    auto pair_text = [&](const CodePair& p) {
        return "(" + format_tuple(base, p.first, false) + "," +
               format_tuple(base, p.second, false) + ")";
    };
    if (cfg.lines()) {
        std::cout << "RESULT product=" << (sweep.all_product ? "yes" : "no")
                  << " kind=" << kind << " closures=" << sweep.closures << "\n";
        if (sweep.failing_seeds)
            std::cout << "SEEDS p=" << pair_text((*sweep.failing_seeds)[0])
                      << " q=" << pair_text((*sweep.failing_seeds)[1])
                      << " missing=" << pair_text(*sweep.missing) << "\n";
    } else {
        std::cout << "every " << kind.substr(0, kind.size() - 1) << " of " << a.name
                  << " x " << b.name << " is a product relation: "
                  << (sweep.all_product ? "yes" : "no") << "\n";
        if (sweep.failing_seeds)
            std::cout << "failing seeds: " << pair_text((*sweep.failing_seeds)[0]) << ", "
                      << pair_text((*sweep.failing_seeds)[1]) << "; missing "
                      << pair_text(*sweep.missing) << "\n";
    }
    return sweep.all_product ? 0 : 1;
}

int cmd_pair(const RunConfig& cfg, const std::string& pf_text, const std::string& pg_text) {
    Algebra a = load_algebra(cfg.inputs[0]);
    Algebra b = load_algebra(cfg.inputs[1]);
    require_same_signature(a, b);
    if (cfg.edge_term.empty()) throw error("pair requires --edge-term and --k");

    PairingOptions opts;
    opts.edge_term = parse_term(a.sig, load_text_arg(cfg.edge_term));
    opts.k = cfg.k;
    opts.limit = cfg.limit;
    PolynomialPairer pairer(a, b, opts);

    const Signature& star_sig = pairer.a_star().algebra.sig;
    TermPtr pf = parse_term(star_sig, load_text_arg(pf_text));
    TermPtr pg = parse_term(star_sig, load_text_arg(pg_text));
    TermPtr h = pairer.pair(pf, pg);

    // paired output is verified on both expansions before printing
    if (!satisfies_identity(pairer.a_star().algebra, h, pf) ||
        !satisfies_identity(pairer.b_star().algebra, h, pg))
        throw std::logic_error("paired term failed re-verification");

    if (cfg.lines()) {
        std::cout << "RESULT verified=yes\n";
        std::cout << "PAIRED term=" << term_to_string(star_sig, h) << "\n";
    } else {
        std::cout << term_to_string(star_sig, h) << "\n";
    }
    return 0;
}

struct BenchPair {
    std::string name;
    std::string a_path, b_path;
    std::string edge;
    int k = 0;
};

BenchPair parse_pair_file(const std::filesystem::path& path) {
    BenchPair bp;
    bp.name = path.stem().string();
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path.string() + "'");
    std::string line;
    auto dir = path.parent_path();
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key)) continue;
        std::string rest;
        std::getline(ss, rest);
        auto first = rest.find_first_not_of(" \t");
        rest = first == std::string::npos ? "" : rest.substr(first);
        if (key == "a") bp.a_path = (dir / rest).string();
        else if (key == "b") bp.b_path = (dir / rest).string();
        else if (key == "edge") bp.edge = rest;
        else if (key == "k") bp.k = std::stoi(rest);
        else throw error(path.string() + ": unknown key '" + key + "'");
    }
    if (bp.a_path.empty() || bp.b_path.empty() || bp.edge.empty() || bp.k < 2)
        throw error(path.string() + ": requires keys a, b, edge and k >= 2");
    return bp;
}

int cmd_bench(const RunConfig& cfg, const std::string& corpus) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus))
        if (entry.path().extension() == ".pair") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::cout << "pair,verdict,method,closures,max_closure,oracle_members,fast_ms,oracle_ms\n";
    bool any_error = false;
    for (const auto& file : files) {
        std::string name = file.stem().string();
        try {
            BenchPair bp = parse_pair_file(file);
            Algebra a = load_algebra(bp.a_path);
            Algebra b = load_algebra(bp.b_path);
            require_same_signature(a, b);
            TermPtr edge = parse_term(a.sig, bp.edge);
            IndependenceReport fast = check_fast_edge(a, b, edge, bp.k, cfg.threads);
            IndependenceReport oracle = check_oracle(a, b, cfg.limit);
            if (oracle.verdict != fast.verdict)
                throw std::logic_error("fast and oracle verdicts disagree");
            std::cout << bp.name << "," << verdict_name(fast.verdict) << ","
                      << method_name(fast.method, fast.k) << "," << fast.stats.closures
                      << "," << fast.stats.max_closure << "," << oracle.stats.max_closure
                      << "," << fast.stats.wall_ms << "," << oracle.stats.wall_ms << "\n";
        } catch (const std::exception& e) {
            std::cout << name << ",error,-,0,0,0,0,0\n";
            std::cerr << name << ": " << e.what() << "\n";
            any_error = true;
        }
    }
    return any_error ? exit_error : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"independence of varieties generated by finite algebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string kind, term_text, universe_a, universe_b, pf_text, pg_text, corpus;
    int power_m = 1, power_n = 0;
    std::vector<std::string> generator_args;

    auto add_common = [&](CLI::App* sub, bool with_method) {
        if (with_method)
            sub->add_option("--method", cfg.method,
                            "decision method: auto, fast, oracle or both");
        sub->add_option("--edge-term", cfg.edge_term, "edge term text, or @FILE");
        sub->add_option("--k", cfg.k, "edge parameter k");
        sub->add_option("--limit", cfg.limit, "closure member limit");
        sub->add_option("--threads", cfg.threads, "sweep worker threads");
        sub->add_option("--output", cfg.output, "output mode: human or lines");
    };

    CLI::App* check = app.add_subcommand("check", "decide independence of two algebras");
    check->add_option("algebras", cfg.inputs, "two algebra files")->expected(2);
    add_common(check, true);

    CLI::App* witness = app.add_subcommand("witness", "extract an independence witness term");
    witness->add_option("algebras", cfg.inputs, "two algebra files")->expected(2);
    add_common(witness, false);

    CLI::App* verify = app.add_subcommand("verify-term", "verify a special term on an algebra");
    verify->add_option("algebra", cfg.inputs, "algebra file")->expected(1);
    verify->add_option("--kind", kind, "edge, parallelogram, malcev or majority")
        ->required();
    verify->add_option("--term", term_text, "term text, or @FILE")->required();
    add_common(verify, false);

    CLI::App* closure = app.add_subcommand("closure", "generate a subuniverse of A^m x B^n");
    closure->add_option("algebras", cfg.inputs, "one or two algebra files")
        ->expected(1, 2);
    closure->add_option("--m", power_m, "exponent of the first factor")->required();
    closure->add_option("--n", power_n, "exponent of the second factor")->required();
    closure->add_option("--gen", generator_args, "generator tuple, comma-separated digits");
    closure->add_flag("--emit-terms", cfg.emit_terms, "print a derivation term per member");
    add_common(closure, false);

    CLI::App* relations =
        app.add_subcommand("relations", "check that relations of E x F are products");
    relations->add_option("algebras", cfg.inputs, "two algebra files")->expected(2);
    relations->add_option("--check", kind, "tolerances or congruences")->required();
    relations->add_option("--universe-a", universe_a, "subuniverse of A, comma-separated");
    relations->add_option("--universe-b", universe_b, "subuniverse of B, comma-separated");
    add_common(relations, false);

    CLI::App* pair = app.add_subcommand("pair", "pair polynomials of A and B");
    pair->add_option("algebras", cfg.inputs, "two algebra files")->expected(2);
    pair->add_option("--pf", pf_text, "polynomial for A over the expanded signature")
        ->required();
    pair->add_option("--pg", pg_text, "polynomial for B over the expanded signature")
        ->required();
    add_common(pair, false);

    CLI::App* bench = app.add_subcommand("bench", "run fast and oracle over a corpus");
    bench->add_option("--corpus", corpus, "directory of .pair files")->required();
    add_common(bench, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_error;
    }

    try {
        if (check->parsed()) return cmd_check(cfg);
        if (witness->parsed()) return cmd_witness(cfg);
        if (verify->parsed()) return cmd_verify_term(cfg, kind, term_text);
        if (closure->parsed()) return cmd_closure(cfg, power_m, power_n, generator_args);
        if (relations->parsed()) return cmd_relations(cfg, kind, universe_a, universe_b);
        if (pair->parsed()) return cmd_pair(cfg, pf_text, pg_text);
        if (bench->parsed()) return cmd_bench(cfg, corpus);
    } catch (const hypothesis_error& e) {
        std::cerr << "hypothesis not satisfied: " << e.what() << "\n";
        return exit_not_independent;
    } catch (const limit_error& e) {
        std::cerr << "limit reached: " << e.what() << "\n";
        return exit_inconclusive;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
