#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "boundq/error.hpp"
#include "boundq/exactla.hpp"
#include "boundq/palg.hpp"
#include "boundq/quiver.hpp"

namespace boundq::cli {

class ParseError : public InvalidArgument {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : InvalidArgument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg), line_(line), column_(column)
    {
    }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct TermDecl {
    BigInt num = 1;
    BigInt den = 1;
    std::vector<std::string> arrows;  ///< written order: "c*a" is {"c", "a"}
    std::size_t line = 0, column = 0;
    friend bool operator==(const TermDecl& a, const TermDecl& b) { return a.num == b.num && a.den == b.den && a.arrows == b.arrows; }
};

struct RelationDecl {
    std::vector<TermDecl> terms;
    friend bool operator==(const RelationDecl&, const RelationDecl&) = default;
};

struct IdealDecl {
    std::string name;
    std::vector<RelationDecl> relations;
    std::vector<Element> generators;
    friend bool operator==(const IdealDecl& a, const IdealDecl& b) { return a.name == b.name && a.relations == b.relations; }
};

struct ArrowDecl {
    std::string name, source, target;
    friend bool operator==(const ArrowDecl&, const ArrowDecl&) = default;
};

struct InputDocument {
    Field field;
    std::vector<std::string> vertices;
    std::vector<ArrowDecl> arrows;
    std::vector<IdealDecl> ideals;
    std::optional<std::vector<std::string>> tree;
    std::vector<std::pair<std::string, long long>> budget;
    PathAlgebraPtr algebra;

    const IdealDecl* find_ideal(const std::string& name) const
    {
        for (const auto& i : ideals)
            if (i.name == name) return &i;
        return nullptr;
    }
    Ideal ideal(const std::string& name) const
    {
        const IdealDecl* d = find_ideal(name);
        if (!d) throw InvalidArgument("unknown ideal '" + name + "'");
        return groebner_basis(algebra, d->generators);
    }
    std::optional<long long> budget_value(const std::string& key) const
    {
        std::optional<long long> v;
        for (const auto& [k, x] : budget)
            if (k == key) v = x;
        return v;
    }
    friend bool operator==(const InputDocument& a, const InputDocument& b)
    {
        return a.field == b.field && a.vertices == b.vertices && a.arrows == b.arrows && a.ideals == b.ideals && a.tree == b.tree &&
               a.budget == b.budget;
    }
};

inline const std::vector<std::string>& budget_keys()
{
    static const std::vector<std::string> keys{"nodes", "word_length", "max_vertices", "max_candidates", "grid", "max_states"};
    return keys;
}

namespace detail {

struct Token {
    enum Kind { word, symbol, end } kind = end;
    std::string text;
    std::size_t line = 1, column = 1;
};

inline std::vector<Token> tokenize(const std::string& text)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < text.size();) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) ++j;
            t.kind = Token::word;
            t.text = text.substr(i, j - i);
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Token::symbol;
            t.text = "->";
        } else if (std::string("{},;:+-*/()=").find(c) != std::string::npos) {
            t.kind = Token::symbol;
            t.text = std::string(1, c);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        i += t.text.size();
        col += t.text.size();
        out.push_back(std::move(t));
    }
    Token e;
    e.line = line;
    e.column = col;
    out.push_back(e);
    return out;
}

inline bool is_number(const std::string& s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    InputDocument run()
    {
        InputDocument doc;
        parse_field(doc);
        parse_quiver(doc);
        while (peek_is("ideal")) parse_ideal(doc);
        while (peek().kind != Token::end) {
            if (peek_is("tree"))
                parse_tree(doc);
            else if (peek_is("budget"))
                parse_budget(doc);
            else
                fail(peek(), "expected 'tree' or 'budget', found " + describe(peek()));
        }
        return doc;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool peek_is(const std::string& s, std::size_t k = 0) const { return peek(k).kind != Token::end && peek(k).text == s; }
    const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    static std::string describe(const Token& t) { return t.kind == Token::end ? "end of input" : "'" + t.text + "'"; }
    [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

    const Token& expect(const std::string& s)
    {
        if (!peek_is(s)) fail(peek(), "expected '" + s + "', found " + describe(peek()));
        return next();
    }
    const Token& expect_word(const std::string& what)
    {
        if (peek().kind != Token::word) fail(peek(), "expected " + what + ", found " + describe(peek()));
        return next();
    }

    void parse_field(InputDocument& doc)
    {
        expect("field");
        const Token& t = expect_word("QQ or GF(p)");
        if (t.text == "QQ") {
            doc.field = Field::rationals();
        } else if (t.text == "GF") {
            expect("(");
            const Token& p = expect_word("a prime");
            if (!is_number(p.text) || p.text.size() > 10) fail(p, "characteristic must be a prime number");
            expect(")");
            try {
                doc.field = Field::prime(std::stoull(p.text));
            } catch (const InvalidArgument& e) {
                fail(p, e.what());
            }
        } else {
            fail(t, "unknown field " + describe(t));
        }
    }

    void parse_quiver(InputDocument& doc)
    {
        expect("quiver");
        expect("{");
        expect("vertices");
        doc.vertices.push_back(expect_word("a vertex name").text);
        while (peek_is(",")) {
            next();
            doc.vertices.push_back(expect_word("a vertex name").text);
        }
        std::vector<std::tuple<std::string, std::string, std::string>> arrows;
        std::map<std::string, bool> vertex_names, arrow_names;
        for (const auto& v : doc.vertices) vertex_names[v] = true;
        if (!peek_is("arrow")) fail(peek(), "expected at least one arrow");
        while (peek_is("arrow")) {
            next();
            const Token& name = expect_word("an arrow name");
            if (is_number(name.text.substr(0, 1))) fail(name, "arrow names must start with a letter");
            if (arrow_names.count(name.text)) fail(name, "duplicate arrow '" + name.text + "'");
            arrow_names[name.text] = true;
            expect(":");
            const Token& s = expect_word("a vertex name");
            expect("->");
            const Token& t = expect_word("a vertex name");
            if (!vertex_names.count(s.text)) fail(s, "unknown vertex '" + s.text + "'");
            if (!vertex_names.count(t.text)) fail(t, "unknown vertex '" + t.text + "'");
            doc.arrows.push_back({name.text, s.text, t.text});
            arrows.emplace_back(name.text, s.text, t.text);
        }
        const Token& close = expect("}");
        try {
            doc.algebra = PathAlgebra::make(Quiver::from_names(doc.vertices, arrows), doc.field);
        } catch (const InvalidArgument& e) {
            fail(close, e.what());
        }
    }

    TermDecl parse_term(bool negative)
    {
        TermDecl t;
        t.line = peek().line;
        t.column = peek().column;
        if (is_number(peek().text) && peek().kind == Token::word) {
            const Token& n = next();
            t.num = BigInt(n.text);
            if (peek_is("/")) {
                next();
                const Token& d = expect_word("a denominator");
                if (!is_number(d.text)) fail(d, "denominator must be a positive integer");
                t.den = BigInt(d.text);
                if (t.den == 0) fail(d, "zero denominator");
            }
            expect("*");
        }
        if (negative) t.num = -t.num;
        const Quiver& q = algebra_->quiver();
        std::vector<const Token*> names;
        names.push_back(&expect_word("an arrow"));
        while (peek_is("*")) {
            next();
            names.push_back(&expect_word("an arrow"));
        }
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (!q.find_arrow(names[i]->text)) fail(*names[i], "unknown arrow '" + names[i]->text + "'");
            t.arrows.push_back(names[i]->text);
        }
        // right to left: the last written arrow is traversed first
        for (std::size_t i = 0; i + 1 < names.size(); ++i) {
            const Arrow& left = q.arrow(*q.find_arrow(names[i]->text));
            const Arrow& right = q.arrow(*q.find_arrow(names[i + 1]->text));
            if (right.target != left.source)
                fail(*names[i], "non-composable term: '" + names[i]->text + "' does not start where '" + names[i + 1]->text + "' ends");
        }
        return t;
    }

    Element to_element(const RelationDecl& r) const
    {
        const Quiver& q = algebra_->quiver();
        Element e(algebra_);
        std::optional<std::pair<std::size_t, std::size_t>> ends;
        for (const auto& t : r.terms) {
            std::vector<std::size_t> traversal;
            for (auto it = t.arrows.rbegin(); it != t.arrows.rend(); ++it) traversal.push_back(*q.find_arrow(*it));
            Path p = Path::from_arrows(q, traversal);
            if (ends && (ends->first != p.source || ends->second != p.target))
                throw ParseError(t.line, t.column, "term is not parallel to the other terms of the relation");
            ends = std::make_pair(p.source, p.target);
            Scalar c(algebra_->field(), t.num, t.den);
            e.add_term(algebra_->index_of(p), c);
        }
        return e;
    }

    void parse_ideal(InputDocument& doc)
    {
        algebra_ = doc.algebra;
        next();
        const Token& name = expect_word("an ideal name");
        if (doc.find_ideal(name.text)) fail(name, "duplicate ideal '" + name.text + "'");
        IdealDecl d;
        d.name = name.text;
        expect("{");
        while (!peek_is("}")) {
            RelationDecl r;
            bool negative = false;
            if (peek_is("-") || peek_is("+")) negative = next().text == "-";
            r.terms.push_back(parse_term(negative));
            while (peek_is("+") || peek_is("-")) {
                negative = next().text == "-";
                r.terms.push_back(parse_term(negative));
            }
            d.generators.push_back(to_element(r));
            d.relations.push_back(std::move(r));
            if (peek_is(";"))
                next();
            else if (!peek_is("}"))
                fail(peek(), "expected ';' or '}', found " + describe(peek()));
        }
        next();
        doc.ideals.push_back(std::move(d));
    }

    void parse_tree(InputDocument& doc)
    {
        const Token& kw = next();
        if (doc.tree) fail(kw, "tree given twice");
        expect("{");
        std::vector<std::string> arrows;
        while (!peek_is("}")) {
            const Token& a = expect_word("an arrow");
            if (!doc.algebra->quiver().find_arrow(a.text)) fail(a, "unknown arrow '" + a.text + "'");
            arrows.push_back(a.text);
            if (peek_is(",")) next();
        }
        next();
        doc.tree = arrows;
    }

    void parse_budget(InputDocument& doc)
    {
        next();
        const Token& key = expect_word("a budget key");
        const auto& keys = budget_keys();
        if (std::find(keys.begin(), keys.end(), key.text) == keys.end()) fail(key, "unknown budget key '" + key.text + "'");
        expect("=");
        const Token& v = expect_word("an integer");
        if (!is_number(v.text) || v.text.size() > 12) fail(v, "budget values are non-negative integers");
        doc.budget.emplace_back(key.text, std::stoll(v.text));
    }

    PathAlgebraPtr algebra_;
};

}  // namespace detail

inline InputDocument parse_input(const std::string& text) { return detail::Parser(text).run(); }

inline std::string emit_term(const TermDecl& t, bool first)
{
    std::string s;
    BigInt n = t.num;
    if (n < 0) {
        s += first ? "-" : " - ";
        n = -n;
    } else if (!first) {
        s += " + ";
    }
    if (n != 1 || t.den != 1) {
        s += n.str();
        if (t.den != 1) s += "/" + t.den.str();
        s += "*";
    }
    for (std::size_t i = 0; i < t.arrows.size(); ++i) s += (i ? "*" : "") + t.arrows[i];
    return s;
}

/// The document in the input language; parsing the output gives back an equal document.
inline std::string emit_document(const InputDocument& doc)
{
    std::ostringstream os;
    os << "field " << doc.field.name() << "\n";
    os << "quiver {\n  vertices ";
    for (std::size_t i = 0; i < doc.vertices.size(); ++i) os << (i ? ", " : "") << doc.vertices[i];
    os << "\n";
    for (const auto& a : doc.arrows) os << "  arrow " << a.name << " : " << a.source << " -> " << a.target << "\n";
    os << "}\n";
    for (const auto& d : doc.ideals) {
        os << "ideal " << d.name << " {";
        for (std::size_t r = 0; r < d.relations.size(); ++r) {
            os << (r ? "; " : " ");
            for (std::size_t t = 0; t < d.relations[r].terms.size(); ++t) os << emit_term(d.relations[r].terms[t], t == 0);
        }
        os << " }\n";
    }
    if (doc.tree) {
        os << "tree {";
        for (std::size_t i = 0; i < doc.tree->size(); ++i) os << (i ? ", " : " ") << (*doc.tree)[i];
        os << " }\n";
    }
    for (const auto& [k, v] : doc.budget) os << "budget " << k << " = " << v << "\n";
    return os.str();
}

}  // namespace boundq::cli
