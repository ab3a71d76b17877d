#include "synthkit/smt.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>

extern char** environ;

namespace sk {

namespace {

Term mk(TermNode::K k, std::vector<Term> args = {}, long long v = 0, std::string fn = {}) {
    auto n = std::make_shared<TermNode>();
    n->k = k;
    n->args = std::move(args);
    n->val = v;
    n->fn = std::move(fn);
    return n;
}

bool is_int_lit(const Term& t) { return t->k == TermNode::K::IntLit; }

}  // namespace

Term t_bool(bool b) {
    static const Term tt = mk(TermNode::K::BoolLit, {}, 1), ff = mk(TermNode::K::BoolLit, {}, 0);
    return b ? tt : ff;
}
Term t_int(long long n) { return mk(TermNode::K::IntLit, {}, n); }
Term t_app(const std::string& fn, std::vector<Term> args) { return mk(TermNode::K::App, std::move(args), 0, fn); }

bool is_lit(const Term& t, bool value) { return t->k == TermNode::K::BoolLit && (t->val != 0) == value; }

Term t_not(Term a) {
    if (a->k == TermNode::K::BoolLit) return t_bool(!a->val);
    if (a->k == TermNode::K::Not) return a->args[0];
    return mk(TermNode::K::Not, {std::move(a)});
}

static Term nary(TermNode::K k, std::vector<Term> ks) {
    const bool unit = k == TermNode::K::And;
    std::vector<Term> flat;
    for (auto& t : ks) {
        if (is_lit(t, unit)) continue;
        if (is_lit(t, !unit)) return t_bool(!unit);
        if (t->k == k)
            flat.insert(flat.end(), t->args.begin(), t->args.end());
        else
            flat.push_back(t);
    }
    if (flat.empty()) return t_bool(unit);
    if (flat.size() == 1) return flat[0];
    return mk(k, std::move(flat));
}

Term t_and(std::vector<Term> ks) { return nary(TermNode::K::And, std::move(ks)); }
Term t_or(std::vector<Term> ks) { return nary(TermNode::K::Or, std::move(ks)); }
Term t_and(Term a, Term b) { return t_and(std::vector<Term>{std::move(a), std::move(b)}); }
Term t_or(Term a, Term b) { return t_or(std::vector<Term>{std::move(a), std::move(b)}); }

Term t_implies(Term a, Term b) {
    if (is_lit(a, false) || is_lit(b, true)) return t_bool(true);
    if (is_lit(a, true)) return b;
    if (is_lit(b, false)) return t_not(a);
    return mk(TermNode::K::Implies, {std::move(a), std::move(b)});
}

Term t_eq(Term a, Term b) {
    if (is_int_lit(a) && is_int_lit(b)) return t_bool(a->val == b->val);
    if (a->k == TermNode::K::BoolLit && b->k == TermNode::K::BoolLit) return t_bool(a->val == b->val);
    if (a->k == TermNode::K::BoolLit) return a->val ? b : t_not(b);
    if (b->k == TermNode::K::BoolLit) return b->val ? a : t_not(a);
    return mk(TermNode::K::Eq, {std::move(a), std::move(b)});
}

Term t_lt(Term a, Term b) {
    if (is_int_lit(a) && is_int_lit(b)) return t_bool(a->val < b->val);
    return mk(TermNode::K::Lt, {std::move(a), std::move(b)});
}
Term t_le(Term a, Term b) {
    if (is_int_lit(a) && is_int_lit(b)) return t_bool(a->val <= b->val);
    return mk(TermNode::K::Le, {std::move(a), std::move(b)});
}
Term t_gt(Term a, Term b) { return t_lt(std::move(b), std::move(a)); }
Term t_ge(Term a, Term b) { return t_le(std::move(b), std::move(a)); }

Term t_add(Term a, Term b) {
    if (is_int_lit(a) && is_int_lit(b)) return t_int(a->val + b->val);
    return mk(TermNode::K::Add, {std::move(a), std::move(b)});
}
Term t_sub(Term a, Term b) {
    if (is_int_lit(a) && is_int_lit(b)) return t_int(a->val - b->val);
    return mk(TermNode::K::Sub, {std::move(a), std::move(b)});
}

Term t_ite(Term c, Term a, Term b) {
    if (c->k == TermNode::K::BoolLit) return c->val ? a : b;
    return mk(TermNode::K::Ite, {std::move(c), std::move(a), std::move(b)});
}

static void write_term(std::ostream& os, const Term& t) {
    using K = TermNode::K;
    auto nary_op = [&](const char* op) {
        os << "(" << op;
        for (auto& a : t->args) {
            os << " ";
            write_term(os, a);
        }
        os << ")";
    };
    switch (t->k) {
        case K::BoolLit: os << (t->val ? "true" : "false"); break;
        case K::IntLit:
            if (t->val < 0)
                os << "(- " << -t->val << ")";
            else
                os << t->val;
            break;
        case K::App:
            if (t->args.empty())
                os << t->fn;
            else
                nary_op(t->fn.c_str());
            break;
        case K::Not: nary_op("not"); break;
        case K::And: nary_op("and"); break;
        case K::Or: nary_op("or"); break;
        case K::Implies: nary_op("=>"); break;
        case K::Eq: nary_op("="); break;
        case K::Lt: nary_op("<"); break;
        case K::Le: nary_op("<="); break;
        case K::Add: nary_op("+"); break;
        case K::Sub: nary_op("-"); break;
        case K::Ite: nary_op("ite"); break;
    }
}

std::string to_smtlib(const Term& t) {
    std::ostringstream os;
    write_term(os, t);
    return os.str();
}

static const char* sort_name(Sort s) { return s == Sort::Bool ? "Bool" : "Int"; }

void SmtQuery::declare(const std::string& name, std::vector<Sort> args, Sort result) {
    if (index.count(name)) throw SmtError(SmtError::Kind::Sort, "symbol '" + name + "' declared twice");
    index[name] = decls.size();
    decls.push_back({name, std::move(args), result});
}

const Decl& SmtQuery::decl(const std::string& name) const {
    auto it = index.find(name);
    if (it == index.end()) throw SmtError(SmtError::Kind::Sort, "undeclared symbol '" + name + "'");
    return decls[it->second];
}

void SmtQuery::add(Term t) {
    if (is_lit(t, true)) return;
    assertions.push_back(std::move(t));
}

namespace {

Sort sort_of(const Term& t, const SmtQuery& q) {
    using K = TermNode::K;
    auto need = [&](const Term& a, Sort s) {
        if (sort_of(a, q) != s)
            throw SmtError(SmtError::Kind::Sort, std::string("expected ") + sort_name(s) + " in " + to_smtlib(t));
    };
    switch (t->k) {
        case K::BoolLit: return Sort::Bool;
        case K::IntLit: return Sort::Int;
        case K::App: {
            const Decl& d = q.decl(t->fn);
            if (d.args.size() != t->args.size())
                throw SmtError(SmtError::Kind::Sort, "arity mismatch for '" + t->fn + "'");
            for (std::size_t i = 0; i < d.args.size(); ++i) need(t->args[i], d.args[i]);
            return d.result;
        }
        case K::Not:
        case K::And:
        case K::Or:
        case K::Implies:
            for (auto& a : t->args) need(a, Sort::Bool);
            return Sort::Bool;
        case K::Eq:
            need(t->args[1], sort_of(t->args[0], q));
            return Sort::Bool;
        case K::Lt:
        case K::Le:
            for (auto& a : t->args) need(a, Sort::Int);
            return Sort::Bool;
        case K::Add:
        case K::Sub:
            for (auto& a : t->args) need(a, Sort::Int);
            return Sort::Int;
        case K::Ite: {
            need(t->args[0], Sort::Bool);
            Sort s = sort_of(t->args[1], q);
            need(t->args[2], s);
            return s;
        }
    }
    return Sort::Bool;
}

}  // namespace

void SmtQuery::check() const {
    for (auto& a : assertions)
        if (sort_of(a, *this) != Sort::Bool)
            throw SmtError(SmtError::Kind::Sort, "assertion is not Bool: " + to_smtlib(a));
}

std::string SmtQuery::serialize() const {
    std::ostringstream os;
    os << "(set-logic UFLIA)\n";
    for (auto& d : decls) {
        os << "(declare-fun " << d.name << " (";
        for (std::size_t i = 0; i < d.args.size(); ++i) os << (i ? " " : "") << sort_name(d.args[i]);
        os << ") " << sort_name(d.result) << ")\n";
    }
    for (auto& a : assertions) {
        os << "(assert ";
        write_term(os, a);
        os << ")\n";
    }
    os << "(check-sat)\n(get-model)\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// s-expressions

namespace {

struct Sexp {
    bool atom = true;
    std::string text;
    std::vector<Sexp> list;
};

class SexpReader {
public:
    explicit SexpReader(const std::string& s) : s_(s) {}

    bool at_end() {
        skip();
        return i_ >= s_.size();
    }

    Sexp read() {
        skip();
        if (i_ >= s_.size()) throw SmtError(SmtError::Kind::ParseError, "unexpected end of solver output");
        if (s_[i_] == '(') {
            ++i_;
            Sexp e;
            e.atom = false;
            for (;;) {
                skip();
                if (i_ >= s_.size()) throw SmtError(SmtError::Kind::ParseError, "unbalanced parenthesis");
                if (s_[i_] == ')') {
                    ++i_;
                    return e;
                }
                e.list.push_back(read());
            }
        }
        if (s_[i_] == ')') throw SmtError(SmtError::Kind::ParseError, "unexpected ')'");
        Sexp e;
        if (s_[i_] == '"') {
            std::size_t j = s_.find('"', i_ + 1);
            if (j == std::string::npos) throw SmtError(SmtError::Kind::ParseError, "unterminated string");
            e.text = s_.substr(i_, j + 1 - i_);
            i_ = j + 1;
            return e;
        }
        if (s_[i_] == '|') {
            std::size_t j = s_.find('|', i_ + 1);
            if (j == std::string::npos) throw SmtError(SmtError::Kind::ParseError, "unterminated symbol");
            e.text = s_.substr(i_ + 1, j - i_ - 1);
            i_ = j + 1;
            return e;
        }
        std::size_t j = i_;
        while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && s_[j] != '(' && s_[j] != ')') ++j;
        e.text = s_.substr(i_, j - i_);
        i_ = j;
        return e;
    }

private:
    void skip() {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                ++i_;
            } else if (s_[i_] == ';') {
                while (i_ < s_.size() && s_[i_] != '\n') ++i_;
            } else {
                break;
            }
        }
    }
    const std::string& s_;
    std::size_t i_ = 0;
};

bool is_number(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

struct FunDef {
    std::vector<std::string> params;
    Sexp body;
};

using Defs = std::map<std::string, FunDef>;

long long eval_sexp(const Sexp& e, std::map<std::string, long long>& env, const Defs& defs, int depth = 0) {
    if (depth > 10000) throw SmtError(SmtError::Kind::ParseError, "model evaluation too deep");
    if (e.atom) {
        if (e.text == "true") return 1;
        if (e.text == "false") return 0;
        if (is_number(e.text)) return std::stoll(e.text);
        auto it = env.find(e.text);
        if (it != env.end()) return it->second;
        auto d = defs.find(e.text);
        if (d != defs.end() && d->second.params.empty()) return eval_sexp(d->second.body, env, defs, depth + 1);
        return 0;
    }
    if (e.list.empty()) throw SmtError(SmtError::Kind::ParseError, "empty application in model");
    const std::string& op = e.list[0].text;
    auto arg = [&](std::size_t i) { return eval_sexp(e.list.at(i), env, defs, depth + 1); };
    const std::size_t n = e.list.size();
    if (op == "ite") return arg(1) ? arg(2) : arg(3);
    if (op == "not") return !arg(1);
    if (op == "and") {
        for (std::size_t i = 1; i < n; ++i)
            if (!arg(i)) return 0;
        return 1;
    }
    if (op == "or") {
        for (std::size_t i = 1; i < n; ++i)
            if (arg(i)) return 1;
        return 0;
    }
    if (op == "=>") return !arg(1) || arg(2);
    if (op == "=") return arg(1) == arg(2);
    if (op == "distinct") return arg(1) != arg(2);
    if (op == "<") return arg(1) < arg(2);
    if (op == "<=") return arg(1) <= arg(2);
    if (op == ">") return arg(1) > arg(2);
    if (op == ">=") return arg(1) >= arg(2);
    if (op == "+") {
        long long s = 0;
        for (std::size_t i = 1; i < n; ++i) s += arg(i);
        return s;
    }
    if (op == "*") {
        long long s = 1;
        for (std::size_t i = 1; i < n; ++i) s *= arg(i);
        return s;
    }
    if (op == "-") {
        if (n == 2) return -arg(1);
        long long s = arg(1);
        for (std::size_t i = 2; i < n; ++i) s -= arg(i);
        return s;
    }
    if (op == "let") {
        std::vector<std::pair<std::string, long long>> binds;
        for (auto& b : e.list.at(1).list) binds.emplace_back(b.list.at(0).text, eval_sexp(b.list.at(1), env, defs, depth + 1));
        std::map<std::string, long long> inner = env;
        for (auto& [k, v] : binds) inner[k] = v;
        return eval_sexp(e.list.at(2), inner, defs, depth + 1);
    }
    auto d = defs.find(op);
    if (d != defs.end()) {
        std::map<std::string, long long> inner;
        for (std::size_t i = 0; i < d->second.params.size() && i + 1 < n; ++i) inner[d->second.params[i]] = arg(i + 1);
        return eval_sexp(d->second.body, inner, defs, depth + 1);
    }
    return 0;
}

// constant value of a closed literal expression
bool const_value(const Sexp& e, long long& out) {
    if (e.atom) {
        if (e.text == "true") return out = 1, true;
        if (e.text == "false") return out = 0, true;
        if (is_number(e.text)) return out = std::stoll(e.text), true;
        return false;
    }
    if (e.list.size() == 2 && e.list[0].text == "-" && e.list[1].atom && is_number(e.list[1].text))
        return out = -std::stoll(e.list[1].text), true;
    return false;
}

// (= param c) or (and (= param c) ...) with every param bound exactly once
bool point_condition(const Sexp& c, const std::vector<std::string>& params, std::vector<long long>& key) {
    std::vector<const Sexp*> eqs;
    if (!c.atom && !c.list.empty() && c.list[0].text == "and") {
        for (std::size_t i = 1; i < c.list.size(); ++i) eqs.push_back(&c.list[i]);
    } else {
        eqs.push_back(&c);
    }
    key.assign(params.size(), 0);
    std::vector<char> bound(params.size(), 0);
    for (auto* eq : eqs) {
        if (eq->atom || eq->list.size() != 3 || eq->list[0].text != "=") return false;
        const Sexp *var = &eq->list[1], *val = &eq->list[2];
        long long v;
        if (!const_value(*val, v)) {
            std::swap(var, val);
            if (!const_value(*val, v)) return false;
        }
        if (!var->atom) return false;
        auto it = std::find(params.begin(), params.end(), var->text);
        if (it == params.end()) return false;
        const std::size_t i = it - params.begin();
        if (bound[i]) return false;
        bound[i] = 1;
        key[i] = v;
    }
    return std::all_of(bound.begin(), bound.end(), [](char b) { return b != 0; });
}

FuncTable fold(const Decl& d, const FunDef& def, const std::shared_ptr<Defs>& defs) {
    FuncTable ft;
    ft.args = d.args;
    ft.result = d.result;
    const Sexp* cur = &def.body;
    for (;;) {
        long long v;
        if (const_value(*cur, v)) {
            ft.dflt = v;
            return ft;
        }
        std::vector<long long> key;
        if (!cur->atom && cur->list.size() == 4 && cur->list[0].text == "ite" &&
            point_condition(cur->list[1], def.params, key) && const_value(cur->list[2], v)) {
            ft.table.emplace(key, v);
            cur = &cur->list[3];
            continue;
        }
        break;
    }
    // not a point table: evaluate the body on demand
    const std::string name = d.name;
    ft.table.clear();
    ft.dflt = 0;
    auto fn = std::make_shared<std::function<long long(const std::vector<long long>&)>>(
        [defs, name](const std::vector<long long>& a) {
            const FunDef& fd = defs->at(name);
            std::map<std::string, long long> env;
            for (std::size_t i = 0; i < fd.params.size() && i < a.size(); ++i) env[fd.params[i]] = a[i];
            return eval_sexp(fd.body, env, *defs);
        });
    ft.fallback = fn;
    return ft;
}

}  // namespace

long long FuncTable::at(const std::vector<long long>& a) const {
    auto it = table.find(a);
    if (it != table.end()) return it->second;
    if (fallback) return (*fallback)(a);
    return dflt;
}

long long Model::eval(const std::string& fn, const std::vector<long long>& args) const {
    auto it = funcs.find(fn);
    if (it == funcs.end()) return 0;
    return it->second.at(args);
}

long long eval_term(const Term& t, const Model& m) {
    using K = TermNode::K;
    switch (t->k) {
        case K::BoolLit:
        case K::IntLit: return t->val;
        case K::App: {
            std::vector<long long> a;
            for (auto& x : t->args) a.push_back(eval_term(x, m));
            return m.eval(t->fn, a);
        }
        case K::Not: return !eval_term(t->args[0], m);
        case K::And:
            for (auto& x : t->args)
                if (!eval_term(x, m)) return 0;
            return 1;
        case K::Or:
            for (auto& x : t->args)
                if (eval_term(x, m)) return 1;
            return 0;
        case K::Implies: return !eval_term(t->args[0], m) || eval_term(t->args[1], m);
        case K::Eq: return eval_term(t->args[0], m) == eval_term(t->args[1], m);
        case K::Lt: return eval_term(t->args[0], m) < eval_term(t->args[1], m);
        case K::Le: return eval_term(t->args[0], m) <= eval_term(t->args[1], m);
        case K::Add: return eval_term(t->args[0], m) + eval_term(t->args[1], m);
        case K::Sub: return eval_term(t->args[0], m) - eval_term(t->args[1], m);
        case K::Ite: return eval_term(t->args[0], m) ? eval_term(t->args[1], m) : eval_term(t->args[2], m);
    }
    return 0;
}

std::vector<Decl> parse_declarations(const std::string& text) {
    std::vector<Decl> out;
    SexpReader r(text);
    while (!r.at_end()) {
        Sexp e = r.read();
        if (e.atom || e.list.empty() || e.list[0].text != "declare-fun") continue;
        if (e.list.size() != 4) throw SmtError(SmtError::Kind::ParseError, "malformed declare-fun");
        Decl d;
        d.name = e.list[1].text;
        for (auto& s : e.list[2].list) d.args.push_back(s.text == "Bool" ? Sort::Bool : Sort::Int);
        d.result = e.list[3].text == "Bool" ? Sort::Bool : Sort::Int;
        out.push_back(d);
    }
    return out;
}

SolverVerdict parse_solver_output(const std::string& out, const SmtQuery& q) {
    SolverVerdict v;
    SexpReader r(out);
    if (r.at_end()) throw SmtError(SmtError::Kind::ParseError, "empty solver output");
    Sexp head = r.read();
    if (!head.atom) {
        throw SmtError(SmtError::Kind::SolverFailure, "solver error: " + out.substr(0, 400));
    }
    if (head.text == "unsat") {
        v.kind = SolverVerdict::Kind::Unsat;
        return v;
    }
    if (head.text == "unknown") {
        v.kind = SolverVerdict::Kind::Unknown;
        v.reason = "solver returned unknown";
        return v;
    }
    if (head.text != "sat") throw SmtError(SmtError::Kind::ParseError, "unexpected solver output: " + out.substr(0, 400));
    v.kind = SolverVerdict::Kind::Sat;
    if (r.at_end()) throw SmtError(SmtError::Kind::ParseError, "sat without model");
    Sexp model = r.read();
    auto defs = std::make_shared<Defs>();
    for (auto& e : model.list) {
        if (e.atom) continue;  // leading "model" keyword
        if (e.list.size() != 5 || e.list[0].text != "define-fun") continue;
        FunDef fd;
        for (auto& p : e.list[2].list) fd.params.push_back(p.list.at(0).text);
        fd.body = e.list[4];
        (*defs)[e.list[1].text] = std::move(fd);
    }
    for (auto& d : q.decls) {
        auto it = defs->find(d.name);
        if (it == defs->end()) {
            FuncTable ft;
            ft.args = d.args;
            ft.result = d.result;
            v.model.funcs[d.name] = ft;
            continue;
        }
        v.model.funcs[d.name] = fold(d, it->second, defs);
    }
    return v;
}

// ---------------------------------------------------------------------------
// external process

namespace {

std::string solver_path(const SolverConfig& cfg) {
    if (!cfg.path.empty()) return cfg.path;
    if (const char* env = std::getenv("SYNTHKIT_SOLVER"); env && *env) return env;
    return "z3";
}

struct TempFile {
    std::string path;
    TempFile(const std::string& content) {
        char tmpl[] = "/tmp/synthkit-XXXXXX";
        int fd = mkstemp(tmpl);
        if (fd < 0) throw SmtError(SmtError::Kind::SolverFailure, "cannot create temp file");
        path = tmpl;
        std::size_t off = 0;
        while (off < content.size()) {
            ssize_t w = ::write(fd, content.data() + off, content.size() - off);
            if (w <= 0) {
                ::close(fd);
                throw SmtError(SmtError::Kind::SolverFailure, "cannot write temp file");
            }
            off += static_cast<std::size_t>(w);
        }
        ::close(fd);
    }
    ~TempFile() { ::unlink(path.c_str()); }
};

}  // namespace

SolverVerdict solve(const SmtQuery& q, const SolverConfig& cfg) {
    q.check();
    TempFile file(q.serialize() + "(exit)\n");
    const std::string path = solver_path(cfg);

    int fds[2];
    if (pipe(fds) != 0) throw SmtError(SmtError::Kind::SolverFailure, "pipe failed");
    posix_spawn_file_actions_t fa;
    posix_spawn_file_actions_init(&fa);
    posix_spawn_file_actions_adddup2(&fa, fds[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&fa, fds[0]);
    posix_spawn_file_actions_addclose(&fa, fds[1]);
    posix_spawn_file_actions_addopen(&fa, STDERR_FILENO, "/dev/null", O_WRONLY, 0);
    std::string a0 = path, a1 = "-smt2", a2 = file.path;
    char* argv[] = {a0.data(), a1.data(), a2.data(), nullptr};
    pid_t pid;
    int rc = posix_spawnp(&pid, path.c_str(), &fa, nullptr, argv, environ);
    posix_spawn_file_actions_destroy(&fa);
    ::close(fds[1]);
    if (rc != 0) {
        ::close(fds[0]);
        throw SmtError(SmtError::Kind::SolverNotFound, "cannot run solver '" + path + "': " + std::strerror(rc));
    }

    using clock = std::chrono::steady_clock;
    const auto deadline = clock::now() + std::chrono::milliseconds(static_cast<long long>(cfg.timeout_s * 1000));
    std::string out;
    char buf[65536];
    std::string stop_reason;
    for (;;) {
        if (cfg.cancel && cfg.cancel->load()) {
            stop_reason = "cancelled";
            break;
        }
        if (cfg.timeout_s > 0 && clock::now() >= deadline) {
            stop_reason = "timeout";
            break;
        }
        pollfd p{fds[0], POLLIN, 0};
        int pr = ::poll(&p, 1, 50);
        if (pr < 0 && errno != EINTR) break;
        if (pr > 0) {
            ssize_t n = ::read(fds[0], buf, sizeof buf);
            if (n <= 0) break;
            out.append(buf, static_cast<std::size_t>(n));
        }
    }
    ::close(fds[0]);
    if (!stop_reason.empty()) ::kill(pid, SIGKILL);
    int status = 0;
    ::waitpid(pid, &status, 0);
    if (!stop_reason.empty()) {
        SolverVerdict v;
        v.kind = SolverVerdict::Kind::Unknown;
        v.reason = stop_reason;
        return v;
    }
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
        throw SmtError(SmtError::Kind::SolverNotFound, "cannot run solver '" + path + "'");
    if (out.empty())
        throw SmtError(SmtError::Kind::SolverFailure, "solver produced no output (status " + std::to_string(status) + ")");
    return parse_solver_output(out, q);
}

// ---------------------------------------------------------------------------
// brute force

SolverVerdict brute_solve(const SmtQuery& q, const std::map<std::string, BruteDomain>& domains,
                          long long max_candidates) {
    q.check();
    struct Cell {
        std::string fn;
        std::vector<long long> args;
        long long lo, hi;
    };
    std::vector<Cell> cells;
    Model m;
    double total = 1;
    for (auto& d : q.decls) {
        auto it = domains.find(d.name);
        if (it == domains.end() && !(d.result == Sort::Bool && d.args.empty()))
            throw SmtError(SmtError::Kind::Domain, "no domain for '" + d.name + "'");
        BruteDomain dom = it == domains.end() ? BruteDomain{} : it->second;
        if (d.result == Sort::Bool) dom.result = {0, 1};
        std::vector<std::pair<long long, long long>> ranges;
        for (std::size_t i = 0; i < d.args.size(); ++i) {
            if (d.args[i] == Sort::Bool)
                ranges.emplace_back(0, 1);
            else if (i < dom.args.size())
                ranges.push_back(dom.args[i]);
            else
                throw SmtError(SmtError::Kind::Domain, "no argument range for '" + d.name + "'");
        }
        FuncTable ft;
        ft.args = d.args;
        ft.result = d.result;
        ft.dflt = dom.result.first;
        m.funcs[d.name] = ft;
        std::vector<long long> a;
        for (auto& r : ranges) a.push_back(r.first);
        for (;;) {
            cells.push_back({d.name, a, dom.result.first, dom.result.second});
            total *= static_cast<double>(dom.result.second - dom.result.first + 1);
            std::size_t k = 0;
            for (; k < a.size(); ++k) {
                if (a[k] < ranges[k].second) {
                    ++a[k];
                    break;
                }
                a[k] = ranges[k].first;
            }
            if (k == a.size()) break;
        }
    }
    if (total > static_cast<double>(max_candidates))
        throw SmtError(SmtError::Kind::Domain, "search space too large for brute force");
    std::vector<long long> cur(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        cur[i] = cells[i].lo;
        m.funcs[cells[i].fn].table[cells[i].args] = cur[i];
    }
    for (;;) {
        bool ok = true;
        for (auto& a : q.assertions)
            if (!eval_term(a, m)) {
                ok = false;
                break;
            }
        if (ok) {
            SolverVerdict v;
            v.kind = SolverVerdict::Kind::Sat;
            v.model = m;
            return v;
        }
        std::size_t k = 0;
        for (; k < cells.size(); ++k) {
            if (cur[k] < cells[k].hi) {
                ++cur[k];
                m.funcs[cells[k].fn].table[cells[k].args] = cur[k];
                break;
            }
            cur[k] = cells[k].lo;
            m.funcs[cells[k].fn].table[cells[k].args] = cur[k];
        }
        if (k == cells.size()) break;
    }
    SolverVerdict v;
    v.kind = SolverVerdict::Kind::Unsat;
    return v;
}

}  // namespace sk
