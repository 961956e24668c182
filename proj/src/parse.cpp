#include "varind/parse.hpp"

#include <cctype>
#include <charconv>
#include <set>

#include "varind/errors.hpp"

namespace varind {

namespace {

struct Token {
    std::string text;
    int line = 0;
    int col = 0;
};

// '(' and ')' are tokens of their own; everything else splits on whitespace.
std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    int line = 1, col = 0;
    std::string cur;
    int cur_line = 0, cur_col = 0;
    bool comment = false;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back({cur, cur_line, cur_col});
            cur.clear();
        }
    };
    for (char c : text) {
        ++col;
        if (c == '\n') {
            flush();
            comment = false;
            ++line;
            col = 0;
            continue;
        }
        if (comment) continue;
        if (c == '#') {
            flush();
            comment = true;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        if (c == '(' || c == ')') {
            flush();
            out.push_back({std::string(1, c), line, col});
            continue;
        }
        if (cur.empty()) {
            cur_line = line;
            cur_col = col;
        }
        cur.push_back(c);
    }
    flush();
    return out;
}

struct Cursor {
    const std::vector<Token>& toks;
    std::size_t pos = 0;
    int end_line;
    int end_col;

    explicit Cursor(const std::vector<Token>& t) : toks(t) {
        end_line = t.empty() ? 1 : t.back().line;
        end_col = t.empty() ? 1 : t.back().col + static_cast<int>(t.back().text.size());
    }
    bool at_end() const { return pos >= toks.size(); }
    const Token& peek() const {
        if (at_end()) throw parse_error("unexpected end of input", end_line, end_col);
        return toks[pos];
    }
    Token next() {
        Token t = peek();
        ++pos;
        return t;
    }
    void expect(std::string_view kw) {
        Token t = next();
        if (t.text != kw)
            throw parse_error("expected '" + std::string(kw) + "', found '" + t.text + "'",
                              t.line, t.col);
    }
};

int parse_int(const Token& t, int min, int max, const char* what) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size())
        throw parse_error(std::string("expected ") + what + ", found '" + t.text + "'",
                          t.line, t.col);
    if (value < min || value > max)
        throw parse_error(std::string(what) + " " + t.text + " out of range", t.line, t.col);
    return value;
}

bool looks_like_variable(std::string_view s) {
    if (s.size() < 2 || s[0] != 'x') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string parse_name(Cursor& cur, const char* what, bool reject_variable_shape) {
    Token t = cur.next();
    if (t.text == "(" || t.text == ")")
        throw parse_error(std::string("expected ") + what, t.line, t.col);
    if (reject_variable_shape && looks_like_variable(t.text))
        throw parse_error("operation name '" + t.text + "' conflicts with variable syntax",
                          t.line, t.col);
    return t.text;
}

}  // namespace

Algebra parse_algebra(std::string_view text) {
    std::vector<Token> toks = tokenize(text);
    Cursor cur(toks);

    Algebra a;
    cur.expect("algebra");
    a.name = parse_name(cur, "algebra name", false);
    cur.expect("size");
    a.size = parse_int(cur.next(), 1, 1 << 20, "carrier size");

    std::set<std::string> seen;
    while (!cur.at_end()) {
        cur.expect("op");
        Token name_tok = cur.peek();
        std::string name = parse_name(cur, "operation name", true);
        if (!seen.insert(name).second)
            throw parse_error("duplicate operation '" + name + "'", name_tok.line,
                              name_tok.col);
        int arity = parse_int(cur.next(), 0, 8, "arity");
        cur.expect("values");

        std::size_t want = 1;
        for (int i = 0; i < arity; ++i) {
            want *= static_cast<std::size_t>(a.size);
            if (want > (std::size_t{1} << 26))
                throw parse_error("operation table too large for '" + name + "'",
                                  name_tok.line, name_tok.col);
        }
        std::vector<int> table;
        table.reserve(want);
        for (std::size_t i = 0; i < want; ++i) {
            if (cur.at_end() || cur.peek().text == "op")
                throw parse_error("table for '" + name + "' has " + std::to_string(i) +
                                      " values, expected " + std::to_string(want),
                                  name_tok.line, name_tok.col);
            table.push_back(parse_int(cur.next(), 0, a.size - 1, "table entry"));
        }
        if (!cur.at_end() && cur.peek().text != "op") {
            Token t = cur.peek();
            throw parse_error("table for '" + name + "' has too many values", t.line, t.col);
        }
        a.sig.symbols.push_back({name, arity});
        a.tables.push_back(std::move(table));
    }
    validate_algebra(a);
    return a;
}

std::string print_algebra(const Algebra& a) {
    std::string out = "algebra " + a.name + "\nsize " + std::to_string(a.size) + "\n";
    for (std::size_t i = 0; i < a.sig.symbols.size(); ++i) {
        const OpSymbol& s = a.sig.symbols[i];
        out += "op " + s.name + " " + std::to_string(s.arity) + "\nvalues";
        for (int v : a.tables[i]) out += " " + std::to_string(v);
        out += "\n";
    }
    return out;
}

namespace {

TermPtr parse_term_expr(const Signature& sig, Cursor& cur) {
    Token t = cur.next();
    if (t.text == "(") {
        Token sym_tok = cur.next();
        if (sym_tok.text == "(" || sym_tok.text == ")")
            throw parse_error("expected operation name", sym_tok.line, sym_tok.col);
        int op = sig.index_of(sym_tok.text);
        if (op < 0)
            throw parse_error("unknown operation '" + sym_tok.text + "'", sym_tok.line,
                              sym_tok.col);
        std::vector<TermPtr> kids;
        while (cur.peek().text != ")") kids.push_back(parse_term_expr(sig, cur));
        cur.next();  // ')'
        int arity = sig.symbols[static_cast<std::size_t>(op)].arity;
        if (static_cast<int>(kids.size()) != arity)
            throw parse_error("operation '" + sym_tok.text + "' expects " +
                                  std::to_string(arity) + " arguments, got " +
                                  std::to_string(kids.size()),
                              sym_tok.line, sym_tok.col);
        return Term::make_app(op, std::move(kids));
    }
    if (t.text == ")") throw parse_error("unexpected ')'", t.line, t.col);
    if (!looks_like_variable(t.text))
        throw parse_error("expected term, found '" + t.text + "'", t.line, t.col);
    Token idx_tok{t.text.substr(1), t.line, t.col + 1};
    return Term::make_var(parse_int(idx_tok, 0, 1 << 20, "variable index"));
}

}  // namespace

TermPtr parse_term(const Signature& sig, std::string_view text) {
    std::vector<Token> toks = tokenize(text);
    Cursor cur(toks);
    TermPtr t = parse_term_expr(sig, cur);
    if (!cur.at_end()) {
        Token extra = cur.peek();
        throw parse_error("trailing input after term", extra.line, extra.col);
    }
    return t;
}

}  // namespace varind
