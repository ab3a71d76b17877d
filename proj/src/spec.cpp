#include "synthkit/spec.hpp"

#include <cctype>

namespace sk {

SpecError::SpecError(Kind k, int l, int c, const std::string& msg)
    : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), kind(k), line(l), col(c) {}

bool Specification::is_input(const std::string& p) const {
    for (auto& i : inputs)
        if (i == p) return true;
    return false;
}

bool Specification::is_output(const std::string& p) const {
    for (auto& o : outputs)
        if (o == p) return true;
    return false;
}

bool Specification::is_ltl() const {
    return formula->op == Op::PathA && !has_path_quantifier(formula->kids[0]);
}

Formula Specification::ltl_body() const {
    if (!is_ltl()) throw std::logic_error("specification is not LTL");
    return formula->kids[0];
}

static std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
}

std::string Specification::to_text() const {
    std::string s = "inputs " + join(inputs) + ";\n";
    s += "outputs " + join(outputs) + ";\n";
    s += semantics == Semantics::Moore ? "moore;\n" : "mealy;\n";
    s += "formula " + to_string(formula) + ";\n";
    return s;
}

namespace {

struct Token {
    enum Kind { Ident, Sym, End } kind;
    std::string text;
    int line, col;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto adv = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            adv(1);
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < s.size() && s[i + 1] == '/')) {
            while (i < s.size() && s[i] != '\n') adv(1);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), line, col});
            adv(j - i);
            continue;
        }
        static const char* syms[] = {"<->", "->", "&&", "||", "!=", "&", "|", "!", "(", ")", ";", ",", ".", "=", "+"};
        bool found = false;
        for (const char* sym : syms) {
            std::string t(sym);
            if (s.compare(i, t.size(), t) == 0) {
                out.push_back({Token::Sym, t, line, col});
                adv(t.size());
                found = true;
                break;
            }
        }
        if (!found) {
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                out.push_back({Token::Ident, s.substr(i, j - i), line, col});
                adv(j - i);
                continue;
            }
            throw SpecError(SpecError::Kind::Syntax, line, col, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Token::End, "", line, col});
    return out;
}

bool is_keyword(const std::string& t) {
    return t == "A" || t == "E" || t == "G" || t == "F" || t == "X" || t == "U" || t == "R" || t == "W" ||
           t == "true" || t == "false";
}

class Parser {
public:
    Parser(std::vector<Token> toks, const std::set<std::string>* declared)
        : toks_(std::move(toks)), declared_(declared) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at(const std::string& t) const { return peek().kind != Token::End && peek().text == t; }
    Token take() { return toks_[pos_++]; }
    void expect(const std::string& t) {
        if (!at(t)) fail("expected '" + t + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw SpecError(SpecError::Kind::Syntax, t.line, t.col,
                        msg + (t.kind == Token::End ? " at end of input" : " near '" + t.text + "'"));
    }

    Formula formula() { return implication(); }

    // every atom occurrence with its source position
    struct AtomSite {
        std::string name;
        int line, col;
        bool quantified;
    };
    std::vector<AtomSite> sites;
    std::size_t pos_ = 0;

private:
    Formula implication() {
        Formula l = disjunction();
        if (at("->")) {
            take();
            return implies(l, implication());
        }
        if (at("<->")) {
            take();
            return iff(l, implication());
        }
        return l;
    }

    Formula disjunction() {
        std::vector<Formula> ks{conjunction()};
        while (at("||") || at("|")) {
            take();
            ks.push_back(conjunction());
        }
        return ks.size() == 1 ? ks[0] : mk_or(std::move(ks));
    }

    Formula conjunction() {
        std::vector<Formula> ks{binary()};
        while (at("&&") || at("&")) {
            take();
            ks.push_back(binary());
        }
        return ks.size() == 1 ? ks[0] : mk_and(std::move(ks));
    }

    Formula binary() {
        Formula l = unary();
        if (peek().kind == Token::Ident && (at("U") || at("R") || at("W"))) {
            std::string op = take().text;
            Formula r = binary();
            if (op == "U") return until(l, r);
            if (op == "R") return release(l, r);
            return weak_until(l, r);
        }
        return l;
    }

    Formula unary() {
        const Token& t = peek();
        if (t.kind == Token::End) fail("expected formula");
        if (t.kind == Token::Sym) {
            if (t.text == "!") {
                take();
                return mk_not(unary());
            }
            if (t.text == "(") {
                take();
                Formula f = implication();
                expect(")");
                return f;
            }
            fail("unexpected symbol");
        }
        const std::string w = t.text;
        if (w == "A" || w == "E") {
            take();
            ++qdepth_;
            Formula f = unary();
            --qdepth_;
            return w == "A" ? path_a(f) : path_e(f);
        }
        if (w == "G") {
            take();
            return globally(unary());
        }
        if (w == "F") {
            take();
            return eventually(unary());
        }
        if (w == "X") {
            take();
            return next(unary());
        }
        if (w == "true") {
            take();
            return mk_true();
        }
        if (w == "false") {
            take();
            return mk_false();
        }
        if (is_keyword(w) || std::isdigit(static_cast<unsigned char>(w[0]))) fail("unexpected token");
        take();
        if (declared_ && !declared_->count(w))
            throw SpecError(SpecError::Kind::UndeclaredProposition, t.line, t.col, "undeclared proposition '" + w + "'");
        sites.push_back({w, t.line, t.col, qdepth_ > 0});
        return atom(w);
    }

    std::vector<Token> toks_;
    const std::set<std::string>* declared_;
    int qdepth_ = 0;
};

}  // namespace

void check_state_formula(const Formula& f, const std::set<std::string>& inputs) {
    if (f->op == Op::PathA || f->op == Op::PathE) return;
    if (f->op == Op::Atom && inputs.count(f->name))
        throw SpecError(SpecError::Kind::InputAtStatePosition, 0, 0,
                        "input '" + f->name + "' used outside of a path quantifier");
    if (f->op == Op::Next || f->op == Op::Until || f->op == Op::Release)
        throw SpecError(SpecError::Kind::Syntax, 0, 0, "temporal operator outside of a path quantifier");
    for (auto& k : f->kids) check_state_formula(k, inputs);
}

Formula parse_formula(const std::string& text, const std::set<std::string>* declared) {
    Parser p(tokenize(text), declared);
    Formula f = p.formula();
    if (p.peek().kind != Token::End) p.fail("trailing input");
    return f;
}

Specification parse_spec(const std::string& text) {
    Parser p(tokenize(text), nullptr);
    Specification spec;
    std::set<std::string> declared;
    bool have_formula = false;
    Formula raw;
    auto idlist = [&](std::vector<std::string>& dst) {
        while (!p.at(";")) {
            const Token& t = p.peek();
            if (t.kind != Token::Ident || is_keyword(t.text)) p.fail("expected identifier");
            if (declared.count(t.text))
                throw SpecError(SpecError::Kind::DuplicateProposition, t.line, t.col,
                                "proposition '" + t.text + "' declared twice");
            declared.insert(t.text);
            dst.push_back(p.take().text);
            if (p.at(",")) p.take();
        }
        p.expect(";");
    };
    while (p.peek().kind != Token::End) {
        const Token t = p.peek();
        if (t.kind != Token::Ident) p.fail("expected clause keyword");
        if (t.text == "inputs") {
            p.take();
            idlist(spec.inputs);
        } else if (t.text == "outputs") {
            p.take();
            idlist(spec.outputs);
        } else if (t.text == "moore" || t.text == "mealy") {
            p.take();
            spec.semantics = t.text == "moore" ? Semantics::Moore : Semantics::Mealy;
            p.expect(";");
        } else if (t.text == "formula") {
            p.take();
            if (have_formula) p.fail("second formula clause");
            raw = p.formula();
            p.expect(";");
            have_formula = true;
        } else {
            p.fail("unknown clause");
        }
    }
    if (!have_formula) throw SpecError(SpecError::Kind::Syntax, 1, 1, "missing formula clause");

    std::set<std::string> inputs(spec.inputs.begin(), spec.inputs.end());
    for (auto& a : atoms_of(raw)) {
        if (!declared.count(a)) {
            int line = 0, col = 0;
            for (auto& site : p.sites)
                if (site.name == a) {
                    line = site.line;
                    col = site.col;
                    break;
                }
            throw SpecError(SpecError::Kind::UndeclaredProposition, line, col, "undeclared proposition '" + a + "'");
        }
    }
    if (has_path_quantifier(raw)) {
        for (auto& site : p.sites)
            if (!site.quantified && inputs.count(site.name))
                throw SpecError(SpecError::Kind::InputAtStatePosition, site.line, site.col,
                                "input '" + site.name + "' used outside of a path quantifier");
        Formula f = to_pnf(raw);
        check_state_formula(f, inputs);
        spec.formula = f;
    } else {
        spec.formula = path_a(to_pnf(raw));
    }
    return spec;
}

}  // namespace sk
