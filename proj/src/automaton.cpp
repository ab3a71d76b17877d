#include "synthkit/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace sk {

bool Cube::conj(const Cube& o, Cube& out) const {
    const std::uint64_t both = care & o.care;
    if ((val & both) != (o.val & both)) return false;
    out.care = care | o.care;
    out.val = val | o.val;
    return true;
}

std::string Cube::to_string(const std::vector<std::string>& props) const {
    if (care == 0) return "true";
    std::string s;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (!(care >> i & 1)) continue;
        if (!s.empty()) s += " ";
        s += (val >> i & 1) ? props[i] : "!" + props[i];
    }
    return s;
}

namespace {

std::vector<Cube> cofactor(const std::vector<Cube>& cs, int v, bool value) {
    std::vector<Cube> out;
    const std::uint64_t bit = 1ULL << v;
    for (auto c : cs) {
        if (c.care & bit) {
            if (((c.val & bit) != 0) != value) continue;
            c.care &= ~bit;
            c.val &= ~bit;
        }
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<Cube> complement(const std::vector<Cube>& cs) {
    if (cs.empty()) return {Cube{}};
    for (auto& c : cs)
        if (c.is_true()) return {};
    // split on the most frequent variable
    int best = -1, best_n = 0;
    for (int v = 0; v < 64; ++v) {
        int n = 0;
        for (auto& c : cs) n += (c.care >> v) & 1;
        if (n > best_n) {
            best_n = n;
            best = v;
        }
    }
    std::vector<Cube> out;
    const std::uint64_t bit = 1ULL << best;
    for (bool value : {true, false}) {
        for (auto c : complement(cofactor(cs, best, value))) {
            c.care |= bit;
            if (value) c.val |= bit;
            out.push_back(c);
        }
    }
    return out;
}

bool is_tautology(const std::vector<Cube>& cs) { return complement(cs).empty(); }

bool contains(const std::vector<int>& set, int q) { return std::find(set.begin(), set.end(), q) != set.end(); }

Acceptance Acceptance::buchi(std::vector<int> f) {
    Acceptance a;
    a.kind = AccKind::Buchi;
    a.sets = {std::move(f)};
    return a;
}

Acceptance Acceptance::cobuchi(std::vector<int> f) {
    Acceptance a;
    a.kind = AccKind::CoBuchi;
    a.sets = {std::move(f)};
    return a;
}

Acceptance Acceptance::streett(std::vector<std::pair<std::vector<int>, std::vector<int>>> p) {
    Acceptance a;
    a.kind = AccKind::Streett;
    a.pairs = std::move(p);
    return a;
}

Acceptance Acceptance::rabin(std::vector<std::pair<std::vector<int>, std::vector<int>>> p) {
    Acceptance a;
    a.kind = AccKind::Rabin;
    a.pairs = std::move(p);
    return a;
}

Acceptance Acceptance::parity(std::vector<int> prio) {
    Acceptance a;
    a.kind = AccKind::Parity;
    a.priority = std::move(prio);
    return a;
}

Acceptance Acceptance::gen_buchi(std::vector<std::vector<int>> fs) {
    Acceptance a;
    a.kind = AccKind::GenBuchi;
    a.sets = std::move(fs);
    return a;
}

Acceptance Acceptance::gen_cobuchi(std::vector<std::vector<int>> fs) {
    Acceptance a;
    a.kind = AccKind::GenCoBuchi;
    a.sets = std::move(fs);
    return a;
}

bool Acceptance::satisfied_by(const std::vector<char>& inf) const {
    auto hits = [&](const std::vector<int>& s) {
        for (int q : s)
            if (q < static_cast<int>(inf.size()) && inf[q]) return true;
        return false;
    };
    switch (kind) {
        case AccKind::Buchi: return hits(sets.at(0));
        case AccKind::CoBuchi: return !hits(sets.at(0));
        case AccKind::GenBuchi:
            return std::all_of(sets.begin(), sets.end(), [&](auto& s) { return hits(s); });
        case AccKind::GenCoBuchi:
            return std::none_of(sets.begin(), sets.end(), [&](auto& s) { return hits(s); });
        case AccKind::Streett:
            return std::all_of(pairs.begin(), pairs.end(),
                               [&](auto& p) { return !hits(p.first) || hits(p.second); });
        case AccKind::Rabin:
            return std::any_of(pairs.begin(), pairs.end(),
                               [&](auto& p) { return !hits(p.first) && hits(p.second); });
        case AccKind::Parity: {
            int best = -1;
            for (std::size_t q = 0; q < inf.size() && q < priority.size(); ++q)
                if (inf[q] && (best < 0 || priority[q] < best)) best = priority[q];
            return best >= 0 && best % 2 == 0;
        }
    }
    return false;
}

int WordAutomaton::prop_index(const std::string& p) const {
    for (std::size_t i = 0; i < props.size(); ++i)
        if (props[i] == p) return static_cast<int>(i);
    return -1;
}

std::vector<std::vector<int>> WordAutomaton::by_source() const {
    std::vector<std::vector<int>> out(num_states);
    for (std::size_t i = 0; i < trans.size(); ++i) out[trans[i].src].push_back(static_cast<int>(i));
    return out;
}

std::vector<int> WordAutomaton::successors(int q, Letter l) const {
    std::vector<int> out;
    for (auto& t : trans)
        if (t.src == q && t.guard.matches(l) && !contains(out, t.dst)) out.push_back(t.dst);
    return out;
}

bool WordAutomaton::is_complete() const {
    auto src = by_source();
    for (int q = 0; q < num_states; ++q) {
        std::vector<Cube> cs;
        for (int i : src[q]) cs.push_back(trans[i].guard);
        if (!is_tautology(cs)) return false;
    }
    return true;
}

int WordAutomaton::complete() {
    auto src = by_source();
    std::vector<std::pair<int, std::vector<Cube>>> missing;
    for (int q = 0; q < num_states; ++q) {
        std::vector<Cube> cs;
        for (int i : src[q]) cs.push_back(trans[i].guard);
        auto rest = complement(cs);
        if (!rest.empty()) missing.emplace_back(q, std::move(rest));
    }
    if (missing.empty()) return -1;
    const int sink = num_states++;
    for (auto& [q, cubes] : missing)
        for (auto& c : cubes) trans.push_back({q, c, sink});
    trans.push_back({sink, Cube{}, sink});
    if (acc.kind == AccKind::Parity) acc.priority.resize(num_states, 1);
    return sink;
}

std::vector<char> WordAutomaton::reachable() const {
    std::vector<char> seen(num_states, 0);
    auto src = by_source();
    std::deque<int> work{initial};
    seen[initial] = 1;
    while (!work.empty()) {
        int q = work.front();
        work.pop_front();
        for (int i : src[q])
            if (!seen[trans[i].dst]) {
                seen[trans[i].dst] = 1;
                work.push_back(trans[i].dst);
            }
    }
    return seen;
}

bool WordAutomaton::is_true_loop(int q) const {
    bool loop = false;
    for (auto& t : trans) {
        if (t.src != q) continue;
        if (t.dst != q) return false;
        if (t.guard.is_true()) loop = true;
    }
    return loop;
}

int count_nonsink_states(const WordAutomaton& a) {
    auto reach = a.reachable();
    int n = 0;
    for (int q = 0; q < a.num_states; ++q) {
        if (!reach[q]) continue;
        const bool accepting = a.acc.kind == AccKind::Buchi && contains(a.acc.set(), q);
        if (a.is_true_loop(q) && !accepting) continue;
        ++n;
    }
    return n;
}

std::string WordAutomaton::to_text() const {
    if (acc.kind != AccKind::Buchi && acc.kind != AccKind::CoBuchi)
        throw AutomatonError(AutomatonError::Kind::Malformed, "text form supports buchi/cobuchi only");
    std::ostringstream os;
    os << "props";
    for (auto& p : props) os << " " << p;
    os << "\nstates " << num_states << " init " << initial << " acc "
       << (acc.kind == AccKind::Buchi ? "buchi" : "cobuchi") << " {";
    for (std::size_t i = 0; i < acc.set().size(); ++i) os << (i ? " " : "") << acc.set()[i];
    os << "}";
    if (mode == AutMode::Universal) os << " universal";
    os << "\n";
    for (auto& t : trans) os << t.src << " <" << t.guard.to_string(props) << "> " << t.dst << "\n";
    return os.str();
}

WordAutomaton WordAutomaton::from_text(const std::string& text) {
    WordAutomaton a;
    std::istringstream is(text);
    std::string line;
    bool header = false;
    auto bad = [](const std::string& m) { return AutomatonError(AutomatonError::Kind::Malformed, m); };
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string w;
        ls >> w;
        if (w == "props") {
            while (ls >> w) a.props.push_back(w);
        } else if (w == "states") {
            std::string kw, kind;
            ls >> a.num_states >> kw >> a.initial >> kw >> kind;
            if (kind != "buchi" && kind != "cobuchi") throw bad("unknown acceptance '" + kind + "'");
            std::string rest;
            std::getline(ls, rest);
            auto l = rest.find('{'), r = rest.find('}');
            if (l == std::string::npos || r == std::string::npos) throw bad("missing accepting set");
            std::istringstream ss(rest.substr(l + 1, r - l - 1));
            std::vector<int> f;
            int q;
            while (ss >> q) f.push_back(q);
            a.acc = kind == "buchi" ? Acceptance::buchi(f) : Acceptance::cobuchi(f);
            if (rest.find("universal", r) != std::string::npos) a.mode = AutMode::Universal;
            header = true;
        } else {
            if (!header) throw bad("transition before header");
            auto l = line.find('<'), r = line.find('>');
            if (l == std::string::npos || r == std::string::npos) throw bad("malformed transition: " + line);
            Transition t{};
            t.src = std::stoi(line.substr(0, l));
            t.dst = std::stoi(line.substr(r + 1));
            std::istringstream cs(line.substr(l + 1, r - l - 1));
            std::string lit;
            while (cs >> lit) {
                if (lit == "true") continue;
                const bool neg = lit[0] == '!';
                const std::string name = neg ? lit.substr(1) : lit;
                const int idx = a.prop_index(name);
                if (idx < 0) throw bad("unknown proposition '" + name + "'");
                t.guard.care |= 1ULL << idx;
                if (!neg) t.guard.val |= 1ULL << idx;
            }
            a.trans.push_back(t);
        }
    }
    return a;
}

// ---------------------------------------------------------------------------
// tableau translation

namespace {

struct Cover {
    Cube cube;
    std::set<std::string> next;       // obligation keys for the successor
    std::set<std::string> fulfilled;  // until keys whose right side holds now
};

class Tableau {
public:
    Tableau(const std::vector<std::string>& props, const NbwOptions& opt) : props_(props), opt_(opt) {}

    WordAutomaton build(const Formula& phi) {
        collect_untils(phi);
        std::vector<std::string> init = flatten({phi});
        const int m = static_cast<int>(untils_.size());

        WordAutomaton a;
        a.props = props_;
        std::map<std::pair<std::vector<std::string>, int>, int> ids;
        std::vector<std::pair<std::vector<std::string>, int>> states;
        auto id_of = [&](const std::vector<std::string>& s, int level) {
            auto key = std::make_pair(s, level);
            auto it = ids.find(key);
            if (it != ids.end()) return it->second;
            int id = static_cast<int>(states.size());
            ids[key] = id;
            states.push_back(key);
            return id;
        };
        id_of(init, 0);
        std::map<std::vector<std::string>, std::vector<std::pair<Cover, std::vector<char>>>> cache;
        for (std::size_t cur = 0; cur < states.size(); ++cur) {
            auto [set, level] = states[cur];
            auto it = cache.find(set);
            if (it == cache.end()) it = cache.emplace(set, covers_of(set)).first;
            for (auto& [cv, marks] : it->second) {
                int j = level == m ? 0 : level;
                while (j < m && marks[j]) ++j;
                std::vector<std::string> nxt = flatten_keys(cv.next);
                int dst = id_of(nxt, j);
                a.trans.push_back({static_cast<int>(cur), cv.cube, dst});
            }
        }
        a.num_states = static_cast<int>(states.size());
        std::vector<int> f;
        for (int q = 0; q < a.num_states; ++q)
            if (states[q].second == m) f.push_back(q);
        a.acc = Acceptance::buchi(f);
        a.initial = 0;
        merge_parallel(a);
        return a;
    }

private:
    std::string key(const Formula& f) {
        std::string k = to_string(f);
        formulas_.emplace(k, f);
        return k;
    }

    void collect_untils(const Formula& f) {
        if (f->op == Op::Until) {
            std::string k = key(f);
            if (std::find(untils_.begin(), untils_.end(), k) == untils_.end()) untils_.push_back(k);
        }
        for (auto& c : f->kids) collect_untils(c);
    }

    // split top-level conjunctions, sort, drop `true`
    std::vector<std::string> flatten(const std::vector<Formula>& fs) {
        std::set<std::string> out;
        std::vector<Formula> work(fs);
        while (!work.empty()) {
            Formula f = work.back();
            work.pop_back();
            if (f->op == Op::And) {
                for (auto& k : f->kids) work.push_back(k);
            } else if (f->op != Op::True) {
                out.insert(key(f));
            }
        }
        return {out.begin(), out.end()};
    }

    std::vector<std::string> flatten_keys(const std::set<std::string>& ks) {
        std::vector<Formula> fs;
        for (auto& k : ks) fs.push_back(formulas_.at(k));
        return flatten(fs);
    }

    bool refinable(const Formula& f) {
        if (!is_propositional(f)) return false;
        for (auto& a : atoms_of(f))
            if (opt_.monotone.count(a)) return false;
        return true;
    }

    void expand(std::vector<Formula> todo, Cover cur, std::set<std::string> done, std::vector<Cover>& out) {
        while (!todo.empty()) {
            Formula f = todo.back();
            todo.pop_back();
            const std::string k = key(f);
            if (!done.insert(k).second) continue;
            switch (f->op) {
                case Op::True: break;
                case Op::False: return;
                case Op::Atom: {
                    auto it = std::find(props_.begin(), props_.end(), f->name);
                    if (it == props_.end())
                        throw AutomatonError(AutomatonError::Kind::UnknownProposition,
                                             "proposition '" + f->name + "' not in alphabet");
                    Cube lit;
                    lit.care = 1ULL << (it - props_.begin());
                    lit.val = f->neg ? 0 : lit.care;
                    Cube merged;
                    if (!cur.cube.conj(lit, merged)) return;
                    cur.cube = merged;
                    break;
                }
                case Op::And:
                    for (auto& c : f->kids) todo.push_back(c);
                    break;
                case Op::Or:
                    for (auto& c : f->kids) {
                        auto t = todo;
                        t.push_back(c);
                        expand(std::move(t), cur, done, out);
                    }
                    return;
                case Op::Next: cur.next.insert(key(f->kids[0])); break;
                case Op::Until: {
                    auto t1 = todo;
                    t1.push_back(f->kids[1]);
                    Cover c1 = cur;
                    c1.fulfilled.insert(k);
                    expand(std::move(t1), c1, done, out);
                    todo.push_back(f->kids[0]);
                    if (refinable(f->kids[1])) todo.push_back(negate(f->kids[1]));
                    cur.next.insert(k);
                    break;
                }
                case Op::Release: {
                    auto t1 = todo;
                    t1.push_back(f->kids[0]);
                    t1.push_back(f->kids[1]);
                    expand(std::move(t1), cur, done, out);
                    todo.push_back(f->kids[1]);
                    if (refinable(f->kids[0])) todo.push_back(negate(f->kids[0]));
                    cur.next.insert(k);
                    break;
                }
                case Op::Not:
                case Op::PathA:
                case Op::PathE:
                    throw AutomatonError(AutomatonError::Kind::Malformed,
                                         "ltl_to_nbw expects a quantifier-free PNF formula");
            }
        }
        out.push_back(std::move(cur));
    }

    std::vector<std::pair<Cover, std::vector<char>>> covers_of(const std::vector<std::string>& set) {
        std::vector<Formula> todo;
        for (auto& k : set) todo.push_back(formulas_.at(k));
        std::vector<Cover> raw;
        expand(todo, Cover{}, {}, raw);
        for (auto& c : raw) c.next = to_set(flatten_keys(c.next));

        std::vector<std::pair<Cover, std::vector<char>>> cs;
        for (auto& c : raw) {
            std::vector<char> marks(untils_.size());
            for (std::size_t u = 0; u < untils_.size(); ++u)
                marks[u] = !(c.next.count(untils_[u]) && !c.fulfilled.count(untils_[u]));
            cs.emplace_back(std::move(c), std::move(marks));
        }
        // drop covers subsumed by a weaker one
        std::vector<char> dead(cs.size(), 0);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            for (std::size_t j = 0; j < cs.size() && !dead[i]; ++j) {
                if (i == j || dead[j]) continue;
                if (subsumes(cs[j], cs[i]) && (!subsumes(cs[i], cs[j]) || j < i)) dead[i] = 1;
            }
        }
        std::vector<std::pair<Cover, std::vector<char>>> kept;
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (!dead[i]) kept.push_back(std::move(cs[i]));
        return kept;
    }

    static std::set<std::string> to_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

    // every word taking b could take a instead
    static bool subsumes(const std::pair<Cover, std::vector<char>>& a, const std::pair<Cover, std::vector<char>>& b) {
        if (!b.first.cube.implies(a.first.cube)) return false;
        for (auto& k : a.first.next)
            if (!b.first.next.count(k)) return false;
        for (std::size_t u = 0; u < a.second.size(); ++u)
            if (b.second[u] && !a.second[u]) return false;
        return true;
    }

    static void merge_parallel(WordAutomaton& a) {
        std::vector<Transition> out;
        std::set<std::tuple<int, std::uint64_t, std::uint64_t, int>> seen;
        for (auto& t : a.trans)
            if (seen.insert({t.src, t.guard.care, t.guard.val, t.dst}).second) out.push_back(t);
        a.trans = std::move(out);
    }

    const std::vector<std::string>& props_;
    NbwOptions opt_;
    std::map<std::string, Formula> formulas_;
    std::vector<std::string> untils_;
};

}  // namespace

WordAutomaton ltl_to_nbw(const Formula& phi, const std::vector<std::string>& props, const NbwOptions& opt) {
    if (props.size() > opt.max_props || props.size() > 64)
        throw AutomatonError(AutomatonError::Kind::AlphabetTooLarge,
                             "alphabet has " + std::to_string(props.size()) + " propositions, cap is " +
                                 std::to_string(opt.max_props));
    if (has_path_quantifier(phi) || !is_pnf(phi))
        throw AutomatonError(AutomatonError::Kind::Malformed, "ltl_to_nbw expects a quantifier-free PNF formula");
    Tableau t(props, opt);
    WordAutomaton a = t.build(phi);
    if (opt.complete) a.complete();
    return a;
}

WordAutomaton ucw_for(const Formula& phi, const std::vector<std::string>& props, const NbwOptions& opt) {
    WordAutomaton a = ltl_to_nbw(negate(phi), props, opt);
    a.mode = AutMode::Universal;
    a.acc = Acceptance::cobuchi(a.acc.set());
    return a;
}

}  // namespace sk
