#include "tsim/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace tsim {

ParseError::ParseError(std::size_t line, std::size_t col,
                       const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ": " + msg),
      line_(line),
      col_(col) {}

namespace {

// ============================================================================
// Lexer
// ============================================================================

enum class Tok {
    Ident,
    Number,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Minus,
    Assign,  // :=
    Not,     // !
    AndAnd,
    OrOr,
    Lt,
    Le,
    Eq,  // = or ==
    Ge,
    Gt,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::int64_t value = 0;
    std::size_t line = 1;
    std::size_t col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : src_(text) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(cur_.line, cur_.col, msg);
    }

private:
    void skip_space() {
        for (;;) {
            while (pos_ < src_.size() &&
                   std::isspace(static_cast<unsigned char>(src_[pos_])))
                bump();
            if (pos_ + 1 < src_.size() && src_[pos_] == '/' &&
                src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
                continue;
            }
            if (pos_ < src_.size() && src_[pos_] == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
                continue;
            }
            break;
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void advance() {
        skip_space();
        cur_.line = line_;
        cur_.col = col_;
        if (pos_ >= src_.size()) {
            cur_.kind = Tok::End;
            cur_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_')) {
                id += src_[pos_];
                bump();
            }
            cur_.kind = Tok::Ident;
            cur_.text = std::move(id);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                v = v * 10 + (src_[pos_] - '0');
                bump();
            }
            if (pos_ < src_.size() &&
                (src_[pos_] == '.' || src_[pos_] == '/')) {
                throw ParseError(line_, col_,
                                 "rational constants are not supported; "
                                 "rescale the model to integers");
            }
            cur_.kind = Tok::Number;
            cur_.value = v;
            cur_.text = std::to_string(v);
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < src_.size() && src_[pos_ + 1] == b;
        };
        if (two(':', '=')) {
            bump();
            bump();
            cur_.kind = Tok::Assign;
            return;
        }
        if (two('&', '&')) {
            bump();
            bump();
            cur_.kind = Tok::AndAnd;
            return;
        }
        if (two('|', '|')) {
            bump();
            bump();
            cur_.kind = Tok::OrOr;
            return;
        }
        if (two('<', '=')) {
            bump();
            bump();
            cur_.kind = Tok::Le;
            return;
        }
        if (two('>', '=')) {
            bump();
            bump();
            cur_.kind = Tok::Ge;
            return;
        }
        if (two('=', '=')) {
            bump();
            bump();
            cur_.kind = Tok::Eq;
            return;
        }
        switch (c) {
            case '{': bump(); cur_.kind = Tok::LBrace; return;
            case '}': bump(); cur_.kind = Tok::RBrace; return;
            case '(': bump(); cur_.kind = Tok::LParen; return;
            case ')': bump(); cur_.kind = Tok::RParen; return;
            case ',': bump(); cur_.kind = Tok::Comma; return;
            case ';': bump(); cur_.kind = Tok::Semi; return;
            case '-': bump(); cur_.kind = Tok::Minus; return;
            case '!': bump(); cur_.kind = Tok::Not; return;
            case '<': bump(); cur_.kind = Tok::Lt; return;
            case '>': bump(); cur_.kind = Tok::Gt; return;
            case '=': bump(); cur_.kind = Tok::Eq; return;
            default:
                throw ParseError(line_, col_, std::string("unexpected '") +
                                                  c + "'");
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
    Token cur_;
};

// ============================================================================
// Parser
// ============================================================================

class Parser {
public:
    explicit Parser(const std::string& text, std::string name)
        : lex_(text) {
        tea_.name = std::move(name);
        tea_.init = Pred::mk_true();
        tea_.invariant = Pred::mk_true();
    }

    Tea run() {
        while (lex_.peek().kind != Tok::End) declaration();
        finish_modes();
        tea_.validate();
        return std::move(tea_);
    }

private:
    Token expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind) lex_.fail(std::string("expected ") + what);
        return lex_.take();
    }

    std::vector<std::string> ident_list() {
        std::vector<std::string> ids;
        ids.push_back(expect(Tok::Ident, "identifier").text);
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            ids.push_back(expect(Tok::Ident, "identifier").text);
        }
        return ids;
    }

    void declare(std::set<std::string>& into, const Token& at,
                 const std::string& id) {
        if (declared_.count(id))
            throw ParseError(at.line, at.col, "'" + id + "' already declared");
        declared_.insert(id);
        into.insert(id);
    }

    void declaration() {
        Token head = expect(Tok::Ident, "declaration keyword");
        const std::string& kw = head.text;
        if (kw == "event") {
            for (const auto& id : ident_list()) declare(tea_.events, head, id);
            expect(Tok::Semi, "';'");
        } else if (kw == "clock") {
            for (const auto& id : ident_list()) declare(tea_.clocks, head, id);
            expect(Tok::Semi, "';'");
        } else if (kw == "global") {
            for (const auto& id : ident_list()) declare(tea_.globals, head, id);
            expect(Tok::Semi, "';'");
        } else if (kw == "local") {
            for (const auto& id : ident_list()) declare(tea_.locals, head, id);
            expect(Tok::Semi, "';'");
        } else if (kw == "mode") {
            for (const auto& id : ident_list()) {
                declare(tea_.locals, head, id);
                modes_.push_back(id);
            }
            expect(Tok::Semi, "';'");
        } else if (kw == "init") {
            tea_.init = predicate();
            expect(Tok::Semi, "';'");
        } else if (kw == "invariant") {
            tea_.invariant = predicate();
            expect(Tok::Semi, "';'");
        } else if (kw == "trans") {
            transition();
        } else {
            throw ParseError(head.line, head.col,
                             "unknown declaration '" + kw + "'");
        }
    }

    void transition() {
        Transition t;
        t.guard = Pred::mk_true();
        expect(Tok::LBrace, "'{'");
        if (lex_.peek().kind != Tok::RBrace) {
            for (const auto& id : ident_list()) t.label.insert(id);
        }
        expect(Tok::RBrace, "'}'");
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "when") {
            lex_.take();
            t.guard = predicate();
        }
        if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "do") {
            lex_.take();
            assignment(t.assign);
            while (lex_.peek().kind == Tok::Comma) {
                lex_.take();
                assignment(t.assign);
            }
        }
        expect(Tok::Semi, "';'");
        tea_.transitions.push_back(std::move(t));
    }

    void assignment(PartialAssignment& a) {
        Token id = expect(Tok::Ident, "assignment target");
        if (id.text == "goto") {
            Token m = expect(Tok::Ident, "mode name");
            if (std::find(modes_.begin(), modes_.end(), m.text) == modes_.end())
                throw ParseError(m.line, m.col,
                                 "'" + m.text + "' is not a declared mode");
            for (const auto& mode : modes_) a.prop_sets[mode] = mode == m.text;
            return;
        }
        expect(Tok::Assign, "':='");
        Token rhs = lex_.take();
        if (rhs.kind == Tok::Number) {
            if (rhs.value != 0)
                throw ParseError(rhs.line, rhs.col,
                                 "clocks can only be reset to 0");
            if (!tea_.clocks.count(id.text))
                throw ParseError(id.line, id.col,
                                 "'" + id.text + "' is not a declared clock");
            a.clock_resets.insert(id.text);
            return;
        }
        if (rhs.kind == Tok::Ident &&
            (rhs.text == "true" || rhs.text == "false")) {
            if (!tea_.globals.count(id.text) && !tea_.locals.count(id.text))
                throw ParseError(
                    id.line, id.col,
                    "'" + id.text + "' is not a declared proposition");
            a.prop_sets[id.text] = rhs.text == "true";
            return;
        }
        throw ParseError(rhs.line, rhs.col,
                         "expected 0, true, or false on the right of ':='");
    }

    // ------------------------------------------------------------------
    // Predicates
    // ------------------------------------------------------------------

    PredPtr predicate() { return or_expr(); }

    PredPtr or_expr() {
        PredPtr p = and_expr();
        while (lex_.peek().kind == Tok::OrOr) {
            lex_.take();
            p = Pred::mk_or(p, and_expr());
        }
        return p;
    }

    PredPtr and_expr() {
        PredPtr p = unary();
        while (lex_.peek().kind == Tok::AndAnd) {
            lex_.take();
            p = Pred::mk_and(p, unary());
        }
        return p;
    }

    PredPtr unary() {
        if (lex_.peek().kind == Tok::Not) {
            lex_.take();
            return Pred::mk_not(unary());
        }
        if (lex_.peek().kind == Tok::LParen) {
            lex_.take();
            PredPtr p = predicate();
            expect(Tok::RParen, "')'");
            return p;
        }
        return comparison();
    }

    static bool is_cmp(Tok k) {
        return k == Tok::Lt || k == Tok::Le || k == Tok::Eq || k == Tok::Ge ||
               k == Tok::Gt;
    }

    // One comparison operand: an integer, a clock, or a clock difference.
    struct Operand {
        bool is_const = false;
        std::int64_t value = 0;
        std::string var;   // clock or "0"
        std::string sub;   // subtracted clock, empty if none
        Token at;
    };

    Operand operand() {
        Operand o;
        o.at = lex_.peek();
        if (lex_.peek().kind == Tok::Number) {
            o.is_const = true;
            o.value = lex_.take().value;
            return o;
        }
        Token id = expect(Tok::Ident, "clock, proposition, or constant");
        o.var = id.text;
        if (lex_.peek().kind == Tok::Minus) {
            lex_.take();
            Token rhs = expect(Tok::Ident, "clock");
            if (!tea_.clocks.count(rhs.text))
                throw ParseError(rhs.line, rhs.col,
                                 "'" + rhs.text + "' is not a declared clock");
            o.sub = rhs.text;
        }
        return o;
    }

    static CmpOp cmp_of(Tok k) {
        switch (k) {
            case Tok::Lt: return CmpOp::Lt;
            case Tok::Le: return CmpOp::Le;
            case Tok::Eq: return CmpOp::Eq;
            case Tok::Ge: return CmpOp::Ge;
            default: return CmpOp::Gt;
        }
    }

    static CmpOp flipped(CmpOp op) {
        switch (op) {
            case CmpOp::Lt: return CmpOp::Gt;
            case CmpOp::Le: return CmpOp::Ge;
            case CmpOp::Ge: return CmpOp::Le;
            case CmpOp::Gt: return CmpOp::Lt;
            case CmpOp::Eq: return CmpOp::Eq;
        }
        return op;
    }

    // `=` splits into <= and >= so every atom is a single bound.
    static PredPtr atom_of(const std::string& var, const std::string& sub,
                           CmpOp op, std::int64_t c) {
        if (op == CmpOp::Eq) {
            return Pred::mk_and(atom_of(var, sub, CmpOp::Le, c),
                                atom_of(var, sub, CmpOp::Ge, c));
        }
        if (sub.empty()) return Pred::mk_atom(var, op, c);
        return Pred::mk_diff(var, sub, op, c);
    }

    void require_clock(const Operand& o) const {
        if (!tea_.clocks.count(o.var))
            throw ParseError(o.at.line, o.at.col,
                             "'" + o.var + "' is not a declared clock");
    }

    PredPtr pair_atom(const Operand& a, CmpOp op, const Operand& b) {
        if (a.is_const && b.is_const)
            throw ParseError(a.at.line, a.at.col,
                             "comparison between two constants");
        if (!a.is_const) require_clock(a);
        if (!b.is_const) require_clock(b);
        if (a.is_const) return atom_of(b.var, b.sub, flipped(op), a.value);
        if (b.is_const) return atom_of(a.var, a.sub, op, b.value);
        if (!a.sub.empty() || !b.sub.empty())
            throw ParseError(
                b.at.line, b.at.col,
                "clock differences can only be compared with constants");
        return atom_of(a.var, b.var, op, 0);
    }

    PredPtr comparison() {
        Operand first = operand();
        if (!is_cmp(lex_.peek().kind)) {
            // A bare identifier is a proposition literal.
            if (first.is_const || !first.sub.empty())
                lex_.fail("expected comparison operator");
            if (first.var == "true") return Pred::mk_true();
            if (first.var == "false") return Pred::mk_false();
            return Pred::mk_prop(first.var);
        }
        PredPtr acc;
        Operand prev = first;
        while (is_cmp(lex_.peek().kind)) {
            CmpOp op = cmp_of(lex_.take().kind);
            Operand next = operand();
            PredPtr atom = pair_atom(prev, op, next);
            acc = acc ? Pred::mk_and(acc, atom) : atom;
            prev = next;
        }
        return acc;
    }

    // ------------------------------------------------------------------
    // Mode expansion
    // ------------------------------------------------------------------

    void finish_modes() {
        if (modes_.empty()) return;
        PredPtr one_hot;
        for (const auto& on : modes_) {
            PredPtr cell;
            for (const auto& m : modes_) {
                PredPtr lit = m == on ? Pred::mk_prop(m)
                                      : Pred::mk_not(Pred::mk_prop(m));
                cell = cell ? Pred::mk_and(cell, lit) : lit;
            }
            one_hot = one_hot ? Pred::mk_or(one_hot, cell) : cell;
        }
        tea_.invariant = tea_.invariant->kind == Pred::Kind::True
                             ? one_hot
                             : Pred::mk_and(tea_.invariant, one_hot);
    }

    Lexer lex_;
    Tea tea_;
    std::set<std::string> declared_;
    std::vector<std::string> modes_;
};

}  // namespace

Tea parse_tea(const std::string& text, const std::string& name) {
    return Parser(text, name).run();
}

// ============================================================================
// Printing
// ============================================================================

namespace {

void print_decl(std::string& out, const char* kw,
                const std::set<std::string>& ids) {
    if (ids.empty()) return;
    out += kw;
    out += ' ';
    bool first = true;
    for (const auto& id : ids) {
        if (!first) out += ", ";
        first = false;
        out += id;
    }
    out += ";\n";
}

}  // namespace

std::string print_tea(const Tea& a) {
    std::string out;
    print_decl(out, "event", a.events);
    print_decl(out, "clock", a.clocks);
    print_decl(out, "global", a.globals);
    print_decl(out, "local", a.locals);
    out += "\ninit " + to_string(a.init) + ";\n";
    out += "invariant " + to_string(a.invariant) + ";\n\n";
    for (const auto& t : a.transitions) {
        out += "trans {";
        bool first = true;
        for (const auto& ev : t.label) {
            if (!first) out += ", ";
            first = false;
            out += ev;
        }
        out += "}";
        if (t.guard->kind != Pred::Kind::True)
            out += " when " + to_string(t.guard);
        if (!t.assign.empty()) {
            out += " do ";
            first = true;
            for (const auto& x : t.assign.clock_resets) {
                if (!first) out += ", ";
                first = false;
                out += x + " := 0";
            }
            for (const auto& [p, v] : t.assign.prop_sets) {
                if (!first) out += ", ";
                first = false;
                out += p + " := " + (v ? "true" : "false");
            }
        }
        out += ";\n";
    }
    return out;
}

}  // namespace tsim
