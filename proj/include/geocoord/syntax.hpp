#pragma once

// The `.geo` theory language: parser and printer.
//
// The grammar is documented in docs/geo-format.md. Declarations must precede
// use: a bare identifier is a constant when a 0-ary function of that name has
// been declared and a variable otherwise, and family domains name parameter
// tables declared earlier in the document.

#include "geocoord/diagnostics.hpp"
#include "geocoord/logic.hpp"
#include "geocoord/params.hpp"
#include "geocoord/validate.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace geocoord {

using ParameterTable = std::variant<FiniteGroup, FiniteField, FiniteCategory>;

struct TheoryDocument {
    std::string text;
    Theory theory;
    std::vector<WitnessScheme> witnesses;
    /// Parameter tables in declaration order.
    std::vector<std::pair<std::string, ParameterTable>> tables;
    ValidationReport report;

    [[nodiscard]] const WitnessScheme* witness(const std::string& name) const {
        for (const auto& w : witnesses)
            if (w.name == name) return &w;
        return nullptr;
    }
    [[nodiscard]] const ParameterTable* table(const std::string& name) const {
        for (const auto& [n, t] : tables)
            if (n == name) return &t;
        return nullptr;
    }
};

/// Index labels of a table used as a family domain: group and field
/// elements, category arrows, or category objects via `C.objects`.
inline std::optional<std::vector<std::string>> table_labels(const TheoryDocument& doc, const std::string& ref) {
    std::string name = ref;
    bool objects = false;
    if (ref.size() > 8 && ref.ends_with(".objects")) {
        name = ref.substr(0, ref.size() - 8);
        objects = true;
    }
    const auto* t = doc.table(name);
    if (!t) return std::nullopt;
    if (const auto* g = std::get_if<FiniteGroup>(t)) {
        if (objects) return std::nullopt;
        return g->labels();
    }
    if (const auto* f = std::get_if<FiniteField>(t)) {
        if (objects) return std::nullopt;
        return f->labels();
    }
    const auto& c = std::get<FiniteCategory>(*t);
    if (objects) return c.objects();
    std::vector<std::string> out;
    for (const auto& a : c.arrows()) out.push_back(a.name);
    return out;
}

namespace detail {

struct Token {
    enum class Kind { ident, number, string, punct, end };
    Kind kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : s_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            const auto line = line_, col = col_;
            if (i_ >= s_.size()) {
                out.push_back({Token::Kind::end, "", line, col});
                return out;
            }
            const char c = s_[i_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string w;
                while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\''))
                    w += advance();
                out.push_back({Token::Kind::ident, w, line, col});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string w;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) w += advance();
                out.push_back({Token::Kind::number, w, line, col});
            } else if (c == '"') {
                advance();
                std::string w;
                while (true) {
                    if (i_ >= s_.size() || s_[i_] == '\n') throw SyntaxError("unterminated string", line, col);
                    char d = advance();
                    if (d == '"') break;
                    if (d == '\\') {
                        if (i_ >= s_.size()) throw SyntaxError("unterminated string", line, col);
                        d = advance();
                    }
                    w += d;
                }
                out.push_back({Token::Kind::string, w, line, col});
            } else {
                static const char* const multi[] = {"|-", "/\\", "\\/", "->", ".."};
                bool matched = false;
                for (const char* m : multi) {
                    if (s_.compare(i_, 2, m) == 0) {
                        advance();
                        advance();
                        out.push_back({Token::Kind::punct, m, line, col});
                        matched = true;
                        break;
                    }
                }
                if (matched) continue;
                if (std::string(";:,()[]{}=./").find(c) == std::string::npos)
                    throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
                advance();
                out.push_back({Token::Kind::punct, std::string(1, c), line, col});
            }
        }
    }

private:
    char advance() {
        const char c = s_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space() {
        while (i_ < s_.size()) {
            if (s_[i_] == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                advance();
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

inline const std::set<std::string>& reserved_words() {
    static const std::set<std::string> words{"top", "bot", "exists", "bigvee", "app", "rel", "in", "case"};
    return words;
}

class Parser {
public:
    static constexpr std::size_t kMaxDepth = 200;

    Parser(const std::string& text, TheoryDocument& doc) : toks_(Lexer(text).run()), doc_(doc) {}

    void document() {
        while (!at_end()) statement();
    }

    Formula standalone_formula() {
        auto f = formula();
        if (!at_end()) fail("unexpected '" + peek().text + "' after formula");
        return f;
    }

private:
    // -- token helpers ------------------------------------------------------

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Token::Kind::end; }
    const Token& next() {
        const auto& t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool is(const std::string& p, std::size_t ahead = 0) const {
        const auto& t = peek(ahead);
        return (t.kind == Token::Kind::punct || t.kind == Token::Kind::ident) && t.text == p;
    }
    bool accept(const std::string& p) {
        if (!is(p)) return false;
        next();
        return true;
    }
    void expect(const std::string& p) {
        if (!accept(p)) fail("expected '" + p + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
    [[noreturn]] static void fail_at(const Token& t, const std::string& msg) {
        const auto found = t.kind == Token::Kind::end ? std::string("end of input") : "'" + t.text + "'";
        throw SyntaxError(msg + ", found " + found, t.line, t.column);
    }

    std::string ident(const std::string& what) {
        const auto& t = peek();
        if (t.kind != Token::Kind::ident || reserved_words().contains(t.text)) fail("expected " + what);
        return next().text;
    }
    std::string label() {
        const auto& t = peek();
        if (t.kind == Token::Kind::number || (t.kind == Token::Kind::ident && !reserved_words().contains(t.text)))
            return next().text;
        fail("expected a label");
    }
    long number() {
        const auto& t = peek();
        if (t.kind != Token::Kind::number) fail("expected a number");
        if (t.text.size() > 9) fail("number too large");
        return std::stol(next().text);
    }
    std::vector<std::string> labels_until(const std::string& stop) {
        std::vector<std::string> out;
        while (!is(stop)) out.push_back(label());
        return out;
    }

    struct DepthGuard {
        explicit DepthGuard(Parser& p) : p_(p) {
            if (++p_.depth_ > kMaxDepth) p_.fail("nesting too deep");
        }
        ~DepthGuard() { --p_.depth_; }
        DepthGuard(const DepthGuard&) = delete;
        DepthGuard& operator=(const DepthGuard&) = delete;
        Parser& p_;
    };

    // -- statements -----------------------------------------------------------

    void statement() {
        if (accept("theory")) {
            doc_.theory.name = ident("a theory name");
            expect(";");
        } else if (accept("provenance")) {
            if (peek().kind != Token::Kind::string) fail("expected a string");
            doc_.theory.provenance = next().text;
            expect(";");
        } else if (accept("sig")) {
            signature_decl();
        } else if (is("group") && peek(1).kind == Token::Kind::ident && is("{", 2)) {
            next();
            group_block();
        } else if (is("field") && peek(1).kind == Token::Kind::ident && is("{", 2)) {
            next();
            field_block();
        } else if (is("category") && peek(1).kind == Token::Kind::ident && is("{", 2)) {
            next();
            category_block();
        } else if (is("witness") && peek(1).kind == Token::Kind::ident && is("{", 2)) {
            next();
            witness_block();
        } else if (accept("axiom")) {
            std::string name;
            if (peek().kind == Token::Kind::ident && is(":", 1)) {
                name = ident("an axiom name");
                next();
            }
            auto s = sequent();
            s.name = name;
            doc_.theory.axioms.push_back(std::move(s));
            expect(";");
        } else {
            doc_.theory.axioms.push_back(sequent());
            expect(";");
        }
    }

    void signature_decl() {
        const bool fn = accept("fn");
        if (!fn && !accept("rel")) fail("expected 'fn' or 'rel'");
        const auto& at = peek();
        const auto name = ident("a symbol name");
        expect("/");
        const auto arity = static_cast<std::size_t>(number());
        if (doc_.theory.signature.declares(name)) fail_at(at, "symbol '" + name + "' declared twice");
        if (fn) doc_.theory.signature.add_function(name, arity);
        else doc_.theory.signature.add_relation(name, arity);
        expect(";");
    }

    Sequent sequent() {
        Sequent s;
        s.antecedent = formula();
        expect("|-");
        s.consequent = formula();
        if (accept("[")) {
            expect("ctx");
            while (!is("]")) s.context.push_back(ident("a variable"));
            next();
        } else {
            s.context = free_vars_ordered(s.antecedent);
            for (const auto& v : free_vars_ordered(s.consequent))
                if (std::find(s.context.begin(), s.context.end(), v) == s.context.end()) s.context.push_back(v);
        }
        return s;
    }

    void declare_table(const Token& at, const std::string& name, ParameterTable t) {
        if (doc_.table(name)) fail_at(at, "parameter table '" + name + "' declared twice");
        doc_.tables.emplace_back(name, std::move(t));
    }

    static std::size_t index_in(const std::vector<std::string>& labels, const std::string& l, const Token& at) {
        auto i = detail::index_of(labels, l);
        if (!i) fail_at(at, "unknown element '" + l + "'");
        return *i;
    }

    void group_block() {
        const auto& at = peek();
        const auto name = ident("a table name");
        expect("{");
        std::vector<std::string> elements;
        std::optional<std::string> identity;
        std::map<std::string, std::pair<Token, std::vector<std::string>>> rows;
        while (!accept("}")) {
            if (accept("elements")) {
                elements = labels_until(";");
            } else if (accept("identity")) {
                identity = label();
            } else {
                const auto& rt = peek();
                const auto row = label();
                expect(":");
                rows[row] = {rt, labels_until(";")};
            }
            expect(";");
        }
        if (!identity) fail_at(at, "group '" + name + "' has no identity");
        std::vector<std::vector<std::size_t>> mul(elements.size(), std::vector<std::size_t>(elements.size()));
        table_rows(at, name, elements, rows, mul);
        try {
            declare_table(at, name, FiniteGroup(elements, mul, index_in(elements, *identity, at)));
        } catch (const InvalidParameters& e) {
            fail_at(at, e.what());
        }
    }

    static void table_rows(const Token& at, const std::string& name, const std::vector<std::string>& elements,
                           const std::map<std::string, std::pair<Token, std::vector<std::string>>>& rows,
                           std::vector<std::vector<std::size_t>>& out) {
        if (rows.size() != elements.size()) fail_at(at, "table '" + name + "' needs one row per element");
        for (const auto& [row, entry] : rows) {
            const auto& [rt, vals] = entry;
            const auto r = index_in(elements, row, rt);
            if (vals.size() != elements.size()) fail_at(rt, "row '" + row + "' needs one entry per element");
            for (std::size_t c = 0; c < vals.size(); ++c) out[r][c] = index_in(elements, vals[c], rt);
        }
    }

    void field_block() {
        const auto& at = peek();
        const auto name = ident("a table name");
        expect("{");
        std::vector<std::string> elements;
        std::optional<std::string> zero, one;
        std::map<std::string, std::pair<Token, std::vector<std::string>>> add, mul;
        while (!accept("}")) {
            if (accept("elements")) {
                elements = labels_until(";");
            } else if (accept("zero")) {
                zero = label();
            } else if (accept("one")) {
                one = label();
            } else {
                const bool is_add = accept("add");
                if (!is_add && !accept("mul")) fail("expected 'elements', 'zero', 'one', 'add' or 'mul'");
                const auto& rt = peek();
                const auto row = label();
                expect(":");
                (is_add ? add : mul)[row] = {rt, labels_until(";")};
            }
            expect(";");
        }
        if (!zero || !one) fail_at(at, "field '" + name + "' needs 'zero' and 'one'");
        const auto n = elements.size();
        std::vector<std::vector<std::size_t>> a(n, std::vector<std::size_t>(n)), m = a;
        table_rows(at, name, elements, add, a);
        table_rows(at, name, elements, mul, m);
        try {
            declare_table(at, name,
                          FiniteField(elements, a, m, index_in(elements, *zero, at), index_in(elements, *one, at)));
        } catch (const InvalidParameters& e) {
            fail_at(at, e.what());
        }
    }

    void category_block() {
        const auto& at = peek();
        const auto name = ident("a table name");
        expect("{");
        std::vector<std::string> objects;
        std::vector<std::tuple<std::string, std::string, std::string>> arrows;
        std::map<std::pair<std::string, std::string>, std::string> compose;
        std::vector<std::pair<std::string, std::vector<std::string>>> sieves;
        while (!accept("}")) {
            if (accept("objects")) {
                objects = labels_until(";");
            } else if (accept("arrow")) {
                auto a = label();
                expect(":");
                auto src = label();
                expect("->");
                auto tgt = label();
                arrows.emplace_back(std::move(a), std::move(src), std::move(tgt));
            } else if (accept("compose")) {
                auto g = label();
                auto f = label();
                expect("=");
                compose[{g, f}] = label();
            } else if (accept("sieve")) {
                auto obj = label();
                expect(":");
                sieves.emplace_back(std::move(obj), labels_until(";"));
            } else {
                fail("expected 'objects', 'arrow', 'compose' or 'sieve'");
            }
            expect(";");
        }
        try {
            declare_table(at, name, FiniteCategory(objects, arrows, compose, sieves));
        } catch (const InvalidParameters& e) {
            fail_at(at, e.what());
        }
    }

    void witness_block() {
        const auto& at = peek();
        WitnessScheme w;
        w.name = ident("a witness name");
        if (doc_.witness(w.name)) fail_at(at, "witness '" + w.name + "' declared twice");
        expect("{");
        std::set<std::string> family_tags;
        while (!accept("}")) {
            if (accept("psi")) {
                PsiEntry p;
                p.tag = label();
                expect("(");
                while (!is(";") && !is(")")) {
                    p.context.push_back(ident("a variable"));
                    if (!is(";") && !is(")")) expect(",");
                }
                expect(";");
                p.extra = ident("the theta variable");
                expect(")");
                expect(":");
                p.formula = formula();
                w.psis.push_back(std::move(p));
            } else if (accept("theta")) {
                const auto& tt = peek();
                const auto tag = label();
                PsiEntry* p = nullptr;
                for (auto& e : w.psis)
                    if (e.tag == tag) p = &e;
                if (!p) fail_at(tt, "theta for undeclared psi '" + tag + "'");
                if (family_tags.contains(tag)) fail_at(tt, "psi '" + tag + "' already has a theta family");
                if (accept("for")) {
                    if (!p->thetas.list().empty()) fail_at(tt, "psi '" + tag + "' mixes listed thetas and a family");
                    p->thetas.members = family_body();
                    family_tags.insert(tag);
                } else {
                    expect(":");
                    auto th = formula();
                    auto list = p->thetas.list();
                    list.push_back(std::move(th));
                    p->thetas.members = std::move(list);
                }
            } else {
                fail("expected 'psi' or 'theta'");
            }
            expect(";");
        }
        doc_.witnesses.push_back(std::move(w));
    }

    // -- formulae -------------------------------------------------------------

    Formula formula() {
        DepthGuard g(*this);
        std::vector<Formula> parts{conjunction()};
        while (accept("\\/")) parts.push_back(conjunction());
        return Formula::disj(std::move(parts));
    }

    Formula conjunction() {
        std::vector<Formula> parts{atom()};
        while (accept("/\\")) parts.push_back(atom());
        return Formula::conj(std::move(parts));
    }

    Formula atom() {
        DepthGuard g(*this);
        if (accept("top")) return Formula::top();
        if (accept("bot")) return Formula::bot();
        if (accept("(")) {
            auto f = formula();
            expect(")");
            return f;
        }
        if (accept("exists")) {
            std::vector<std::string> vars;
            do vars.push_back(ident("a variable"));
            while (!is("."));
            next();
            return Formula::exists(std::move(vars), formula());
        }
        if (accept("bigvee")) return Formula::family(family_body());
        if (is("rel") && is("(", 1)) {
            next();
            next();
            auto p = ident("a family parameter");
            std::vector<Term> args;
            while (accept(",")) args.push_back(term());
            expect(")");
            return Formula::param_rel(std::move(p), std::move(args));
        }
        const auto& at = peek();
        auto lhs = term();
        if (accept("=")) return Formula::eq(std::move(lhs), term());
        if (lhs.kind() == Term::Kind::parameter_application) fail_at(at, "expected '=' after app(...)");
        return Formula::rel(lhs.name(), lhs.args());
    }

    std::shared_ptr<const DisjunctionFamily> family_body() {
        const auto param = ident("a family parameter");
        expect("in");
        auto dom = domain();
        expect("{");
        std::shared_ptr<const DisjunctionFamily> fam;
        if (is("case")) {
            const auto& at = peek();
            DisjunctionFamily::Cases cases;
            while (accept("case")) {
                auto l = label();
                expect(":");
                cases.emplace_back(std::move(l), formula());
                expect(";");
            }
            try {
                fam = std::make_shared<DisjunctionFamily>(param, std::move(dom), std::move(cases));
            } catch (const ContractViolation& e) {
                fail_at(at, e.what());
            }
        } else {
            fam = std::make_shared<DisjunctionFamily>(param, std::move(dom), formula());
        }
        expect("}");
        return fam;
    }

    FamilyDomain domain() {
        const auto& at = peek();
        if (accept("{")) {
            std::vector<std::string> labels;
            while (!is("}")) {
                labels.push_back(label());
                if (!is("}")) expect(",");
            }
            next();
            return FamilyDomain::set(std::move(labels));
        }
        if (peek().kind == Token::Kind::number) {
            const long lo = number();
            expect("..");
            if (accept("size")) return FamilyDomain::up_to_size(lo);
            if (accept("min")) {
                expect("(");
                const long hi = number();
                expect(",");
                expect("size");
                expect(")");
                return FamilyDomain::range_capped(lo, hi);
            }
            return FamilyDomain::range(lo, number());
        }
        auto name = ident("a domain");
        if (accept(".")) {
            expect("objects");
            name += ".objects";
        }
        auto labels = table_labels(doc_, name);
        if (!labels) fail_at(at, "unknown parameter table '" + name + "'");
        return FamilyDomain::of_table(name, std::move(*labels));
    }

    Term term() {
        DepthGuard g(*this);
        if (is("app") && is("(", 1)) {
            next();
            next();
            auto p = ident("a family parameter");
            std::vector<Term> args;
            while (accept(",")) args.push_back(term());
            expect(")");
            return Term::param_app(std::move(p), std::move(args));
        }
        auto name = ident("a term");
        if (accept("(")) {
            std::vector<Term> args;
            while (!is(")")) {
                args.push_back(term());
                if (!is(")")) expect(",");
            }
            next();
            return Term::app(std::move(name), std::move(args));
        }
        const auto& sig = doc_.theory.signature;
        if (sig.is_constant(name) || sig.find_relation(name)) return Term::app(std::move(name));
        return Term::var(std::move(name));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::size_t depth_ = 0;
    TheoryDocument& doc_;
};

}  // namespace detail

/// Parses a `.geo` document. Throws SyntaxError on lexical or syntax errors;
/// semantic problems are collected in the document's report.
inline TheoryDocument parse_theory(const std::string& text) {
    TheoryDocument doc;
    doc.text = text;
    detail::Parser(text, doc).document();
    doc.report = validate_theory(doc.theory);
    for (const auto& w : doc.witnesses) doc.report.append(validate_witness(doc.theory.signature, w));
    return doc;
}

/// Parses one formula against the declarations of `doc`.
inline Formula parse_formula(const std::string& text, const TheoryDocument& doc) {
    TheoryDocument scratch;
    scratch.theory.signature = doc.theory.signature;
    scratch.tables = doc.tables;
    return detail::Parser(text, scratch).standalone_formula();
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

class Printer {
public:
    explicit Printer(const Signature& sig) : sig_(sig) {}

    std::string term(const Term& t) const {
        switch (t.kind()) {
        case Term::Kind::variable: return t.name();
        case Term::Kind::parameter_application: {
            std::string out = "app(" + t.name();
            for (const auto& a : t.args()) out += ", " + term(a);
            return out + ")";
        }
        case Term::Kind::application: {
            if (t.args().empty() && sig_.is_constant(t.name())) return t.name();
            std::vector<std::string> args;
            for (const auto& a : t.args()) args.push_back(term(a));
            return t.name() + "(" + join(args, ", ") + ")";
        }
        }
        return "?";
    }

    // level 0: any formula; 1: operand of \/; 2: operand of /\.
    std::string formula(const Formula& f, int level = 0) const {
        using K = Formula::Kind;
        switch (f.kind()) {
        case K::truth: return "top";
        case K::falsity: return "bot";
        case K::equality: return term(f.terms()[0]) + " = " + term(f.terms()[1]);
        case K::relation: {
            std::vector<std::string> args;
            for (const auto& a : f.terms()) args.push_back(term(a));
            return f.name() + "(" + join(args, ", ") + ")";
        }
        case K::param_relation: {
            std::string out = "rel(" + f.name();
            for (const auto& a : f.terms()) out += ", " + term(a);
            return out + ")";
        }
        case K::conjunction: {
            std::vector<std::string> parts;
            for (const auto& c : f.children()) parts.push_back(formula(c, 2));
            return wrap(join(parts, " /\\ "), level > 1);
        }
        case K::disjunction: {
            std::vector<std::string> parts;
            for (const auto& c : f.children()) parts.push_back(formula(c, 1));
            return wrap(join(parts, " \\/ "), level > 0);
        }
        case K::exists: return wrap("exists " + join(f.bound(), " ") + ". " + formula(f.body()), level > 0);
        case K::family: return "bigvee " + family(f.family());
        }
        return "?";
    }

    std::string family(const DisjunctionFamily& fam) const {
        std::string out = fam.param() + " in " + domain(fam.domain()) + " { ";
        if (fam.is_template()) return out + formula(fam.body_template()) + " }";
        for (const auto& [l, body] : fam.cases()) out += "case " + l + ": " + formula(body) + "; ";
        return out + "}";
    }

    static std::string domain(const FamilyDomain& d) {
        switch (d.kind) {
        case FamilyDomain::Kind::explicit_set: return "{" + join(d.labels, ", ") + "}";
        case FamilyDomain::Kind::table: return d.table;
        case FamilyDomain::Kind::int_range:
            if (d.hi_is_size) return std::to_string(d.lo) + "..size";
            if (d.capped_by_size) return std::to_string(d.lo) + "..min(" + std::to_string(d.hi) + ", size)";
            return std::to_string(d.lo) + ".." + std::to_string(d.hi);
        }
        return "?";
    }

    std::string sequent(const Sequent& s) const {
        std::string ctx = "[ctx";
        for (const auto& v : s.context) ctx += " " + v;
        return formula(s.antecedent) + " |- " + formula(s.consequent) + " " + ctx + "]";
    }

private:
    static std::string wrap(const std::string& s, bool yes) { return yes ? "(" + s + ")" : s; }
    const Signature& sig_;
};

inline void print_rows(std::ostringstream& out, const std::string& prefix, const std::vector<std::string>& labels,
                       const std::vector<std::vector<std::size_t>>& table) {
    for (std::size_t r = 0; r < labels.size(); ++r) {
        out << "  " << prefix << labels[r] << ":";
        for (auto v : table[r]) out << " " << labels[v];
        out << ";\n";
    }
}

inline void print_table(std::ostringstream& out, const std::string& name, const ParameterTable& t) {
    if (const auto* g = std::get_if<FiniteGroup>(&t)) {
        out << "group " << name << " {\n  elements " << join(g->labels(), " ") << ";\n  identity "
            << g->label(g->identity()) << ";\n";
        print_rows(out, "", g->labels(), g->table());
        out << "}\n";
    } else if (const auto* f = std::get_if<FiniteField>(&t)) {
        out << "field " << name << " {\n  elements " << join(f->labels(), " ") << ";\n  zero " << f->label(f->zero())
            << ";\n  one " << f->label(f->one()) << ";\n";
        print_rows(out, "add ", f->labels(), f->add_table());
        print_rows(out, "mul ", f->labels(), f->mul_table());
        out << "}\n";
    } else {
        const auto& c = std::get<FiniteCategory>(t);
        out << "category " << name << " {\n  objects " << join(c.objects(), " ") << ";\n";
        for (std::size_t a = 0; a < c.arrows().size(); ++a) {
            if (c.is_identity(a)) continue;
            const auto& ar = c.arrow(a);
            out << "  arrow " << ar.name << ": " << c.objects()[ar.source] << " -> " << c.objects()[ar.target] << ";\n";
        }
        for (const auto& [g, f, h] : c.explicit_compositions())
            out << "  compose " << c.arrow(g).name << " " << c.arrow(f).name << " = " << c.arrow(h).name << ";\n";
        for (const auto& s : c.declared_sieves()) {
            out << "  sieve " << c.objects()[s.object] << ":";
            for (auto a : s.arrows) out << " " << c.arrow(a).name;
            out << ";\n";
        }
        out << "}\n";
    }
}

}  // namespace detail

inline std::string print_term(const Term& t, const Signature& sig) { return detail::Printer(sig).term(t); }
inline std::string print_formula(const Formula& f, const Signature& sig) { return detail::Printer(sig).formula(f); }
inline std::string print_sequent(const Sequent& s, const Signature& sig) { return detail::Printer(sig).sequent(s); }

inline std::string print_witness(const WitnessScheme& w, const Signature& sig) {
    detail::Printer p(sig);
    std::ostringstream out;
    out << "witness " << w.name << " {\n";
    for (const auto& psi : w.psis)
        out << "  psi " << psi.tag << " (" << detail::join(psi.context, ", ") << "; " << psi.extra
            << "): " << p.formula(psi.formula) << ";\n";
    for (const auto& psi : w.psis) {
        if (psi.thetas.is_family()) {
            out << "  theta " << psi.tag << " for " << p.family(psi.thetas.family()) << ";\n";
            continue;
        }
        for (const auto& th : psi.thetas.list()) out << "  theta " << psi.tag << ": " << p.formula(th) << ";\n";
    }
    out << "}\n";
    return out.str();
}

/// Canonical text of a document; parse_theory of the result is
/// alpha-equivalent to the input. The empty document prints as "".
inline std::string print_theory(const TheoryDocument& doc) {
    std::ostringstream out;
    const auto& t = doc.theory;
    const auto& sig = t.signature;
    bool section = false;
    auto gap = [&] {
        if (section) out << "\n";
        section = true;
    };
    if (!t.name.empty() || !t.provenance.empty()) {
        gap();
        if (!t.name.empty()) out << "theory " << t.name << ";\n";
        if (!t.provenance.empty()) out << "provenance " << detail::quote(t.provenance) << ";\n";
    }
    for (const auto& [name, table] : doc.tables) {
        gap();
        detail::print_table(out, name, table);
    }
    if (!sig.empty()) {
        gap();
        for (const auto& f : sig.functions()) out << "sig fn " << f.name << "/" << f.arity << ";\n";
        for (const auto& r : sig.relations()) out << "sig rel " << r.name << "/" << r.arity << ";\n";
    }
    if (!t.axioms.empty()) {
        gap();
        detail::Printer p(sig);
        for (const auto& ax : t.axioms) {
            out << "axiom ";
            if (!ax.name.empty()) out << ax.name << ": ";
            out << p.sequent(ax) << ";\n";
        }
    }
    for (const auto& w : doc.witnesses) {
        gap();
        out << print_witness(w, sig);
    }
    return out.str();
}

inline TheoryDocument make_document(Theory t, std::vector<WitnessScheme> witnesses = {},
                                    std::vector<std::pair<std::string, ParameterTable>> tables = {}) {
    TheoryDocument doc;
    doc.theory = std::move(t);
    doc.witnesses = std::move(witnesses);
    doc.tables = std::move(tables);
    doc.report = validate_theory(doc.theory);
    for (const auto& w : doc.witnesses) doc.report.append(validate_witness(doc.theory.signature, w));
    doc.text = print_theory(doc);
    return doc;
}

}  // namespace geocoord
