#include "synthkit/formula.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace sk {

namespace {

Formula make(Op op, std::vector<Formula> kids = {}, std::string name = {}, bool neg = false) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->kids = std::move(kids);
    n->name = std::move(name);
    n->neg = neg;
    return n;
}

}  // namespace

Formula mk_true() {
    static const Formula t = make(Op::True);
    return t;
}

Formula mk_false() {
    static const Formula f = make(Op::False);
    return f;
}

Formula atom(const std::string& name, bool neg) { return make(Op::Atom, {}, name, neg); }

Formula mk_not(Formula f) {
    if (f->op == Op::True) return mk_false();
    if (f->op == Op::False) return mk_true();
    if (f->op == Op::Atom) return atom(f->name, !f->neg);
    return make(Op::Not, {std::move(f)});
}

bool is_true(const Formula& f) { return f->op == Op::True; }
bool is_false(const Formula& f) { return f->op == Op::False; }

static Formula mk_nary(Op op, std::vector<Formula> kids) {
    const Op unit = op == Op::And ? Op::True : Op::False;
    const Op zero = op == Op::And ? Op::False : Op::True;
    std::vector<Formula> flat;
    for (auto& k : kids) {
        if (k->op == unit) continue;
        if (k->op == zero) return k;
        if (k->op == op)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(k);
    }
    if (flat.empty()) return op == Op::And ? mk_true() : mk_false();
    if (flat.size() == 1) return flat[0];
    return make(op, std::move(flat));
}

Formula mk_and(std::vector<Formula> kids) { return mk_nary(Op::And, std::move(kids)); }
Formula mk_or(std::vector<Formula> kids) { return mk_nary(Op::Or, std::move(kids)); }
Formula mk_and(Formula a, Formula b) { return mk_and(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula mk_or(Formula a, Formula b) { return mk_or(std::vector<Formula>{std::move(a), std::move(b)}); }
Formula next(Formula f) { return make(Op::Next, {std::move(f)}); }
Formula until(Formula a, Formula b) { return make(Op::Until, {std::move(a), std::move(b)}); }
Formula release(Formula a, Formula b) { return make(Op::Release, {std::move(a), std::move(b)}); }
Formula path_a(Formula f) { return make(Op::PathA, {std::move(f)}); }
Formula path_e(Formula f) { return make(Op::PathE, {std::move(f)}); }

Formula implies(Formula a, Formula b) { return mk_or(mk_not(std::move(a)), std::move(b)); }
Formula iff(Formula a, Formula b) {
    return mk_and(mk_or(mk_not(a), b), mk_or(a, mk_not(b)));
}
Formula globally(Formula f) { return release(mk_false(), std::move(f)); }
Formula eventually(Formula f) { return until(mk_true(), std::move(f)); }
Formula weak_until(Formula a, Formula b) { return release(b, mk_or(a, b)); }

std::string to_string(const Formula& f) {
    switch (f->op) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Atom: return (f->neg ? "!" : "") + f->name;
        case Op::Not: return "!(" + to_string(f->kids[0]) + ")";
        case Op::And:
        case Op::Or: {
            std::string s = "(";
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) s += f->op == Op::And ? " & " : " | ";
                s += to_string(f->kids[i]);
            }
            return s + ")";
        }
        case Op::Next: return "X " + to_string(f->kids[0]);
        case Op::Until:
            if (is_true(f->kids[0])) return "F " + to_string(f->kids[1]);
            return "(" + to_string(f->kids[0]) + " U " + to_string(f->kids[1]) + ")";
        case Op::Release:
            if (is_false(f->kids[0])) return "G " + to_string(f->kids[1]);
            return "(" + to_string(f->kids[0]) + " R " + to_string(f->kids[1]) + ")";
        case Op::PathA: return "A " + to_string(f->kids[0]);
        case Op::PathE: return "E " + to_string(f->kids[0]);
    }
    return "?";
}

bool equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (a->op != b->op || a->kids.size() != b->kids.size()) return false;
    if (a->op == Op::Atom) return a->name == b->name && a->neg == b->neg;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!equal(a->kids[i], b->kids[i])) return false;
    return true;
}

std::size_t node_count(const Formula& f) {
    std::size_t n = 1;
    for (auto& k : f->kids) n += node_count(k);
    return n;
}

static Formula push(const Formula& f, bool neg) {
    switch (f->op) {
        case Op::True: return neg ? mk_false() : f;
        case Op::False: return neg ? mk_true() : f;
        case Op::Atom: return neg ? atom(f->name, !f->neg) : f;
        case Op::Not: return push(f->kids[0], !neg);
        case Op::And:
        case Op::Or: {
            std::vector<Formula> ks;
            for (auto& k : f->kids) ks.push_back(push(k, neg));
            return (f->op == Op::And) != neg ? mk_and(std::move(ks)) : mk_or(std::move(ks));
        }
        case Op::Next: return next(push(f->kids[0], neg));
        case Op::Until:
            return neg ? release(push(f->kids[0], true), push(f->kids[1], true))
                       : until(push(f->kids[0], false), push(f->kids[1], false));
        case Op::Release:
            return neg ? until(push(f->kids[0], true), push(f->kids[1], true))
                       : release(push(f->kids[0], false), push(f->kids[1], false));
        case Op::PathA: return neg ? path_e(push(f->kids[0], true)) : path_a(push(f->kids[0], false));
        case Op::PathE: return neg ? path_a(push(f->kids[0], true)) : path_e(push(f->kids[0], false));
    }
    throw std::logic_error("to_pnf: bad node");
}

Formula to_pnf(const Formula& f) { return push(f, false); }
Formula negate(const Formula& f) { return push(f, true); }

bool is_pnf(const Formula& f) {
    if (f->op == Op::Not) return false;
    return std::all_of(f->kids.begin(), f->kids.end(), [](auto& k) { return is_pnf(k); });
}

bool has_path_quantifier(const Formula& f) {
    if (f->op == Op::PathA || f->op == Op::PathE) return true;
    return std::any_of(f->kids.begin(), f->kids.end(), [](auto& k) { return has_path_quantifier(k); });
}

bool is_propositional(const Formula& f) {
    switch (f->op) {
        case Op::True:
        case Op::False:
        case Op::Atom: return true;
        case Op::Not:
        case Op::And:
        case Op::Or:
            return std::all_of(f->kids.begin(), f->kids.end(), [](auto& k) { return is_propositional(k); });
        default: return false;
    }
}

bool has_until(const Formula& f) {
    if (f->op == Op::Until) return true;
    return std::any_of(f->kids.begin(), f->kids.end(), [](auto& k) { return has_until(k); });
}

static void collect_atoms(const Formula& f, std::set<std::string>& out) {
    if (f->op == Op::Atom) out.insert(f->name);
    for (auto& k : f->kids) collect_atoms(k, out);
}

std::set<std::string> atoms_of(const Formula& f) {
    std::set<std::string> s;
    collect_atoms(f, s);
    return s;
}

Formula substitute(const Formula& f, const std::map<std::string, Formula>& sub) {
    switch (f->op) {
        case Op::True:
        case Op::False: return f;
        case Op::Atom: {
            auto it = sub.find(f->name);
            if (it == sub.end()) return f;
            return f->neg ? mk_not(it->second) : it->second;
        }
        case Op::Not: return mk_not(substitute(f->kids[0], sub));
        case Op::And:
        case Op::Or: {
            std::vector<Formula> ks;
            for (auto& k : f->kids) ks.push_back(substitute(k, sub));
            return f->op == Op::And ? mk_and(std::move(ks)) : mk_or(std::move(ks));
        }
        case Op::Next: return next(substitute(f->kids[0], sub));
        case Op::Until: return until(substitute(f->kids[0], sub), substitute(f->kids[1], sub));
        case Op::Release: return release(substitute(f->kids[0], sub), substitute(f->kids[1], sub));
        case Op::PathA: return path_a(substitute(f->kids[0], sub));
        case Op::PathE: return path_e(substitute(f->kids[0], sub));
    }
    return f;
}

int depth(const Formula& f) {
    int d = 0;
    for (auto& k : f->kids) d = std::max(d, depth(k));
    return f->kids.empty() ? 0 : d + 1;
}

Formula SubformulaTable::quantified(std::size_t i) const {
    return entries[i].existential ? path_e(entries[i].body) : path_a(entries[i].body);
}

Formula SubformulaTable::reconstruct() const {
    std::map<std::string, Formula> sub;
    for (std::size_t i = 0; i < entries.size(); ++i)
        sub[entries[i].prop] = substitute(quantified(i), sub);
    return substitute(top, sub);
}

SubformulaTable decompose(const Formula& f, const std::set<std::string>& taken) {
    struct Raw {
        std::string tmp;
        bool existential;
        Formula body;
        int height;
        std::string key;
    };
    std::vector<Raw> raw;
    std::map<std::string, int> by_key;  // key -> index in raw

    std::function<std::pair<Formula, int>(const Formula&)> rec = [&](const Formula& g) -> std::pair<Formula, int> {
        if (g->op == Op::PathA || g->op == Op::PathE) {
            auto [body, h] = rec(g->kids[0]);
            const bool ex = g->op == Op::PathE;
            std::string key = std::string(ex ? "E " : "A ") + to_string(body);
            auto it = by_key.find(key);
            if (it != by_key.end()) return {atom(raw[it->second].tmp), raw[it->second].height};
            std::string tmp = "\x01" + std::to_string(raw.size());
            raw.push_back({tmp, ex, body, h + 1, key});
            by_key[key] = static_cast<int>(raw.size()) - 1;
            return {atom(tmp), h + 1};
        }
        if (g->kids.empty()) return {g, 0};
        int h = 0;
        std::vector<Formula> ks;
        for (auto& k : g->kids) {
            auto [kk, kh] = rec(k);
            ks.push_back(kk);
            h = std::max(h, kh);
        }
        switch (g->op) {
            case Op::Not: return {mk_not(ks[0]), h};
            case Op::And: return {mk_and(std::move(ks)), h};
            case Op::Or: return {mk_or(std::move(ks)), h};
            case Op::Next: return {next(ks[0]), h};
            case Op::Until: return {until(ks[0], ks[1]), h};
            case Op::Release: return {release(ks[0], ks[1]), h};
            default: return {g, h};
        }
    };
    auto [top, _] = rec(f);

    std::vector<int> order(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return raw[a].height < raw[b].height; });

    std::set<std::string> used = taken;
    for (auto& a : atoms_of(f)) used.insert(a);
    std::map<std::string, Formula> rename;
    SubformulaTable t;
    int counter = 1;
    for (int idx : order) {
        std::string name;
        do {
            name = "p" + std::to_string(counter++);
        } while (used.count(name));
        used.insert(name);
        rename[raw[idx].tmp] = atom(name);
    }
    for (int idx : order) {
        t.entries.push_back({rename[raw[idx].tmp]->name, raw[idx].existential, substitute(raw[idx].body, rename),
                             raw[idx].height});
    }
    t.top = substitute(top, rename);
    return t;
}

}  // namespace sk
