#include "synthkit/aht.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sk {

PB pb_true() {
    static const PB t = std::make_shared<PBool>(PBool{PBool::Kind::True, 0, -1, {}});
    return t;
}

PB pb_false() {
    static const PB f = std::make_shared<PBool>(PBool{PBool::Kind::False, 0, -1, {}});
    return f;
}

PB pb_atom(Letter dir, int state) { return std::make_shared<PBool>(PBool{PBool::Kind::Atom, dir, state, {}}); }

static std::string pb_key(const PB& f) {
    switch (f->kind) {
        case PBool::Kind::True: return "T";
        case PBool::Kind::False: return "F";
        case PBool::Kind::Atom: return "(" + std::to_string(f->dir) + "," + std::to_string(f->state) + ")";
        default: {
            std::string s = f->kind == PBool::Kind::And ? "&[" : "|[";
            for (auto& k : f->kids) s += pb_key(k) + ";";
            return s + "]";
        }
    }
}

static PB pb_nary(PBool::Kind op, std::vector<PB> kids) {
    const auto unit = op == PBool::Kind::And ? PBool::Kind::True : PBool::Kind::False;
    const auto zero = op == PBool::Kind::And ? PBool::Kind::False : PBool::Kind::True;
    std::vector<PB> flat;
    std::set<std::string> seen;
    auto push = [&](const PB& k) {
        if (seen.insert(pb_key(k)).second) flat.push_back(k);
    };
    for (auto& k : kids) {
        if (k->kind == unit) continue;
        if (k->kind == zero) return k;
        if (k->kind == op)
            for (auto& kk : k->kids) push(kk);
        else
            push(k);
    }
    if (flat.empty()) return op == PBool::Kind::And ? pb_true() : pb_false();
    if (flat.size() == 1) return flat[0];
    return std::make_shared<PBool>(PBool{op, 0, -1, std::move(flat)});
}

PB pb_and(std::vector<PB> kids) { return pb_nary(PBool::Kind::And, std::move(kids)); }
PB pb_or(std::vector<PB> kids) { return pb_nary(PBool::Kind::Or, std::move(kids)); }

bool pb_eval(const PB& f, const std::function<bool(Letter, int)>& atom) {
    switch (f->kind) {
        case PBool::Kind::True: return true;
        case PBool::Kind::False: return false;
        case PBool::Kind::Atom: return atom(f->dir, f->state);
        case PBool::Kind::And:
            return std::all_of(f->kids.begin(), f->kids.end(), [&](auto& k) { return pb_eval(k, atom); });
        case PBool::Kind::Or:
            return std::any_of(f->kids.begin(), f->kids.end(), [&](auto& k) { return pb_eval(k, atom); });
    }
    return false;
}

void pb_atoms(const PB& f, std::vector<std::pair<Letter, int>>& out) {
    if (f->kind == PBool::Kind::Atom) out.emplace_back(f->dir, f->state);
    for (auto& k : f->kids) pb_atoms(k, out);
}

int HesitantTreeAutomaton::add_state(const std::string& name, int partition) {
    const int id = num_states++;
    names.push_back(name);
    delta.emplace_back(std::size_t{1} << outputs.size(), pb_false());
    part_of.push_back(partition);
    acc.push_back(0);
    partitions[partition].states.push_back(id);
    return id;
}

namespace {

bool mentions_partition(const PB& f, const std::vector<int>& part_of, int p) {
    std::vector<std::pair<Letter, int>> as;
    pb_atoms(f, as);
    return std::any_of(as.begin(), as.end(), [&](auto& a) { return part_of[a.second] == p; });
}

void check_related(const PB& f, const std::vector<int>& part_of, int p, PBool::Kind bad, const std::string& where) {
    if (f->kind == bad) {
        int n = 0;
        for (auto& k : f->kids) n += mentions_partition(k, part_of, p);
        if (n > 1) throw AutomatonError(AutomatonError::Kind::Malformed, "relatedness violated at " + where);
    }
    for (auto& k : f->kids) check_related(k, part_of, p, bad, where);
}

std::string letter_text(Letter l, const std::vector<std::string>& props) {
    std::string s;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (!s.empty()) s += " ";
        s += (l >> i & 1) ? props[i] : "!" + props[i];
    }
    return s.empty() ? "true" : s;
}

std::string pb_text(const PB& f, const HesitantTreeAutomaton& a) {
    switch (f->kind) {
        case PBool::Kind::True: return "true";
        case PBool::Kind::False: return "false";
        case PBool::Kind::Atom: return "(" + letter_text(f->dir, a.inputs) + ", " + a.names[f->state] + ")";
        default: {
            std::string s = "(";
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) s += f->kind == PBool::Kind::And ? " & " : " | ";
                s += pb_text(f->kids[i], a);
            }
            return s + ")";
        }
    }
}

}  // namespace

void HesitantTreeAutomaton::check() const {
    auto bad = [](const std::string& m) { return AutomatonError(AutomatonError::Kind::Malformed, m); };
    std::vector<int> owner(num_states, -1);
    for (std::size_t p = 0; p < partitions.size(); ++p)
        for (int q : partitions[p].states) {
            if (q < 0 || q >= num_states) throw bad("partition mentions unknown state");
            if (owner[q] >= 0) throw bad("partitions overlap at " + names[q]);
            owner[q] = static_cast<int>(p);
        }
    for (int q = 0; q < num_states; ++q) {
        if (owner[q] < 0) throw bad("state " + names[q] + " not in any partition");
        if (owner[q] != part_of[q]) throw bad("part_of disagrees with partitions at " + names[q]);
    }
    const Letter dirs = Letter{1} << inputs.size();
    for (int q = 0; q < num_states; ++q) {
        const int p = part_of[q];
        for (std::size_t o = 0; o < delta[q].size(); ++o) {
            std::vector<std::pair<Letter, int>> as;
            pb_atoms(delta[q][o], as);
            for (auto& [d, q2] : as) {
                if (d >= dirs || q2 < 0 || q2 >= num_states) throw bad("bad atom in delta of " + names[q]);
                if (part_of[q2] != p && partitions[part_of[q2]].rank >= partitions[p].rank)
                    throw bad("transition " + names[q] + " -> " + names[q2] + " does not go to a lower partition");
            }
            const auto forbidden = partitions[p].kind == PartKind::N ? PBool::Kind::And : PBool::Kind::Or;
            check_related(delta[q][o], part_of, p, forbidden, names[q]);
        }
    }
}

std::string HesitantTreeAutomaton::to_text() const {
    std::ostringstream os;
    os << "init " << names[initial] << "\n";
    for (auto& p : partitions) {
        os << (p.kind == PartKind::N ? "N" : "U") << " rank " << p.rank << " {";
        for (std::size_t i = 0; i < p.states.size(); ++i)
            os << (i ? " " : "") << names[p.states[i]] << (acc[p.states[i]] ? "*" : "");
        os << "}\n";
    }
    for (int q = 0; q < num_states; ++q)
        for (std::size_t o = 0; o < delta[q].size(); ++o)
            os << names[q] << " [" << letter_text(o, outputs) << "] " << pb_text(delta[q][o], *this) << "\n";
    return os.str();
}

namespace {

// position of each automaton prop in the (inputs, outputs) joint letter
std::vector<std::pair<bool, int>> joint_map(const WordAutomaton& a, const std::vector<std::string>& inputs,
                                            const std::vector<std::string>& outputs) {
    std::vector<std::pair<bool, int>> m;
    for (auto& p : a.props) {
        auto i = std::find(inputs.begin(), inputs.end(), p);
        if (i != inputs.end()) {
            m.emplace_back(false, static_cast<int>(i - inputs.begin()));
            continue;
        }
        auto o = std::find(outputs.begin(), outputs.end(), p);
        if (o == outputs.end())
            throw AutomatonError(AutomatonError::Kind::UnknownProposition, "proposition '" + p + "' is not in I or O");
        m.emplace_back(true, static_cast<int>(o - outputs.begin()));
    }
    return m;
}

Letter to_aut_letter(const std::vector<std::pair<bool, int>>& m, Letter o, Letter d) {
    Letter l = 0;
    for (std::size_t k = 0; k < m.size(); ++k) {
        const Letter src = m[k].first ? o : d;
        if (src >> m[k].second & 1) l |= Letter{1} << k;
    }
    return l;
}

}  // namespace

HesitantTreeAutomaton tree_variant(const WordAutomaton& a, const std::vector<std::string>& inputs,
                                   const std::vector<std::string>& outputs) {
    auto m = joint_map(a, inputs, outputs);
    HesitantTreeAutomaton h;
    h.inputs = inputs;
    h.outputs = outputs;
    const bool nondet = a.mode == AutMode::Nondeterministic;
    h.partitions.push_back({{}, nondet ? PartKind::N : PartKind::U, 0});
    for (int q = 0; q < a.num_states; ++q) h.add_state("q" + std::to_string(q), 0);
    h.initial = a.initial;
    if (a.acc.kind != AccKind::Buchi && a.acc.kind != AccKind::CoBuchi)
        throw AutomatonError(AutomatonError::Kind::Malformed, "tree_variant expects Buchi or co-Buchi acceptance");
    for (int q : a.acc.set()) h.acc[q] = 1;
    auto src = a.by_source();
    const Letter outs = Letter{1} << outputs.size(), dirs = Letter{1} << inputs.size();
    for (int q = 0; q < a.num_states; ++q)
        for (Letter o = 0; o < outs; ++o) {
            std::vector<PB> ks;
            for (Letter d = 0; d < dirs; ++d) {
                const Letter l = to_aut_letter(m, o, d);
                for (int t : src[q])
                    if (a.trans[t].guard.matches(l)) ks.push_back(pb_atom(d, a.trans[t].dst));
            }
            h.delta[q][o] = nondet ? pb_or(std::move(ks)) : pb_and(std::move(ks));
        }
    return h;
}

namespace {

class AhtBuilder {
public:
    AhtBuilder(const std::vector<std::string>& inputs, const std::vector<std::string>& outputs,
               const NbwOptions& opt)
        : opt_(opt) {
        h_.inputs = inputs;
        h_.outputs = outputs;
        outs_ = Letter{1} << outputs.size();
        dirs_ = Letter{1} << inputs.size();
    }

    HesitantTreeAutomaton build(const Formula& f) {
        std::set<std::string> taken(h_.inputs.begin(), h_.inputs.end());
        taken.insert(h_.outputs.begin(), h_.outputs.end());
        table_ = decompose(f, taken);
        const int m = static_cast<int>(table_.entries.size());
        entries_.resize(m);
        for (int i = 0; i < m; ++i) build_entry(i);

        auto& top = table_.top;
        int direct = -1;
        if (top->op == Op::Atom && !top->neg)
            for (int i = 0; i < m; ++i)
                if (table_.entries[i].prop == top->name) direct = i;
        if (direct >= 0 && entries_[direct].sid[entries_[direct].aut.initial] >= 0) {
            h_.initial = entries_[direct].sid[entries_[direct].aut.initial];
        } else {
            h_.partitions.push_back({{}, PartKind::N, m + 1});
            h_.initial = h_.add_state("q0", static_cast<int>(h_.partitions.size()) - 1);
            for (Letter o = 0; o < outs_; ++o) h_.delta[h_.initial][o] = boolean_to_pb(top, o);
        }
        if (top_state_ >= 0) {
            std::vector<PB> ks;
            for (Letter d = 0; d < dirs_; ++d) ks.push_back(pb_atom(d, top_state_));
            for (Letter o = 0; o < outs_; ++o) h_.delta[top_state_][o] = pb_and(ks);
        }
        h_.check();
        return std::move(h_);
    }

private:
    struct Entry {
        WordAutomaton aut;
        bool universal = false;
        std::vector<int> sid;        // aht state, or kTop / kBottom for sink states
        std::vector<PB> init_value;  // value of p_i per output letter
        std::vector<int> pbit;       // aut prop index -> entry index of a p-prop, or -1
        Letter io_mask = 0;
    };
    static constexpr int kTop = -2;
    static constexpr int kBottom = -3;

    int top_state() {
        if (top_state_ < 0) {
            h_.partitions.push_back({{}, PartKind::U, 0});
            top_state_ = h_.add_state("top", static_cast<int>(h_.partitions.size()) - 1);
        }
        return top_state_;
    }

    int entry_index(const std::string& prop) const {
        for (std::size_t i = 0; i < table_.entries.size(); ++i)
            if (table_.entries[i].prop == prop) return static_cast<int>(i);
        return -1;
    }

    void build_entry(int i) {
        const auto& e = table_.entries[i];
        Entry& en = entries_[i];
        en.universal = !e.existential;
        std::vector<std::string> props = h_.inputs;
        props.insert(props.end(), h_.outputs.begin(), h_.outputs.end());
        NbwOptions o = opt_;
        o.complete = false;
        o.max_props = 64;
        for (auto& a : atoms_of(e.body)) {
            int j = entry_index(a);
            if (j >= 0) {
                props.push_back(a);
                o.monotone.insert(a);
            }
        }
        en.aut = ltl_to_nbw(en.universal ? negate(e.body) : e.body, props, o);
        const int nio = static_cast<int>(h_.inputs.size() + h_.outputs.size());
        en.io_mask = (Letter{1} << nio) - 1;
        en.pbit.assign(props.size(), -1);
        for (std::size_t k = nio; k < props.size(); ++k) en.pbit[k] = entry_index(props[k]);

        h_.partitions.push_back({{}, en.universal ? PartKind::U : PartKind::N, i + 1});
        const int part = static_cast<int>(h_.partitions.size()) - 1;
        const auto& a = en.aut;
        en.sid.assign(a.num_states, -1);
        int count = 0;
        for (int q = 0; q < a.num_states; ++q) {
            const bool accepting = contains(a.acc.set(), q);
            if (a.is_true_loop(q)) {
                // accepting loop in an NBW: anything goes; in the UCW reading: rejected
                en.sid[q] = (accepting != en.universal) ? kTop : kBottom;
                continue;
            }
            en.sid[q] = h_.add_state(std::string(1, char('a' + i % 26)) + std::to_string(count++), part);
            h_.acc[en.sid[q]] = accepting;
        }

        auto src = a.by_source();
        for (int q = 0; q < a.num_states; ++q) {
            if (en.sid[q] < 0) continue;
            for (Letter o = 0; o < outs_; ++o) {
                std::vector<PB> outer;
                for (Letter d = 0; d < dirs_; ++d) {
                    const Letter l = d | (o << h_.inputs.size());
                    for (int t : src[q]) {
                        const Cube& g = a.trans[t].guard;
                        if ((l & g.care & en.io_mask) != (g.val & en.io_mask)) continue;
                        std::vector<PB> inner{target(en, d, a.trans[t].dst)};
                        for (std::size_t k = 0; k < a.props.size(); ++k) {
                            if (!(g.care >> k & 1) || en.pbit[k] < 0) continue;
                            const bool positive = g.val >> k & 1;
                            if (positive == en.universal)
                                throw AutomatonError(AutomatonError::Kind::Malformed,
                                                     "subformula proposition with unexpected polarity");
                            inner.push_back(entries_[en.pbit[k]].init_value[o]);
                        }
                        outer.push_back(en.universal ? pb_or(std::move(inner)) : pb_and(std::move(inner)));
                    }
                }
                h_.delta[en.sid[q]][o] = en.universal ? pb_and(std::move(outer)) : pb_or(std::move(outer));
            }
        }
        en.init_value.resize(outs_);
        for (Letter o = 0; o < outs_; ++o) {
            const int s = en.sid[a.initial];
            en.init_value[o] = s == kTop ? pb_true() : s == kBottom ? pb_false() : h_.delta[s][o];
        }
    }

    PB target(const Entry& en, Letter d, int q) {
        const int s = en.sid[q];
        if (s == kBottom) return pb_false();
        if (s == kTop) return pb_atom(d, top_state());
        return pb_atom(d, s);
    }

    PB boolean_to_pb(const Formula& f, Letter o) {
        switch (f->op) {
            case Op::True: return pb_true();
            case Op::False: return pb_false();
            case Op::Atom: {
                int j = entry_index(f->name);
                if (j >= 0) {
                    if (f->neg)
                        throw AutomatonError(AutomatonError::Kind::Malformed, "negated subformula proposition");
                    return entries_[j].init_value[o];
                }
                auto it = std::find(h_.outputs.begin(), h_.outputs.end(), f->name);
                if (it == h_.outputs.end())
                    throw AutomatonError(AutomatonError::Kind::UnknownProposition,
                                         "'" + f->name + "' is not an output at state position");
                const bool v = o >> (it - h_.outputs.begin()) & 1;
                return v != f->neg ? pb_true() : pb_false();
            }
            case Op::And:
            case Op::Or: {
                std::vector<PB> ks;
                for (auto& k : f->kids) ks.push_back(boolean_to_pb(k, o));
                return f->op == Op::And ? pb_and(std::move(ks)) : pb_or(std::move(ks));
            }
            default:
                throw AutomatonError(AutomatonError::Kind::Malformed, "top-level formula is not Boolean");
        }
    }

    NbwOptions opt_;
    HesitantTreeAutomaton h_;
    SubformulaTable table_;
    std::vector<Entry> entries_;
    Letter outs_ = 1, dirs_ = 1;
    int top_state_ = -1;
};

}  // namespace

HesitantTreeAutomaton ctlstar_to_aht(const Formula& f, const std::vector<std::string>& inputs,
                                     const std::vector<std::string>& outputs, const NbwOptions& opt) {
    if (inputs.size() + outputs.size() > opt.max_props)
        throw AutomatonError(AutomatonError::Kind::AlphabetTooLarge,
                             "alphabet has " + std::to_string(inputs.size() + outputs.size()) +
                                 " propositions, cap is " + std::to_string(opt.max_props));
    return AhtBuilder(inputs, outputs, opt).build(f);
}

}  // namespace sk
