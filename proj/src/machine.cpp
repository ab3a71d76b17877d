#include "synthkit/machine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace sk {

std::vector<std::string> Machine::props() const {
    std::vector<std::string> p = inputs;
    p.insert(p.end(), outputs.begin(), outputs.end());
    return p;
}

Machine Machine::blank(Semantics kind, std::vector<std::string> inputs, std::vector<std::string> outputs, int n) {
    Machine m;
    m.kind = kind;
    m.inputs = std::move(inputs);
    m.outputs = std::move(outputs);
    m.num_states = n;
    const Letter dirs = m.dirs();
    m.next.assign(n, std::vector<int>(dirs, 0));
    m.out.assign(n, std::vector<Letter>(kind == Semantics::Moore ? 1 : dirs, 0));
    return m;
}

void Machine::validate() const {
    if (num_states <= 0) throw MachineError("machine has no states");
    if (init.empty()) throw MachineError("machine has no initial state");
    for (int i : init)
        if (i < 0 || i >= num_states) throw MachineError("initial state out of range");
    if (static_cast<int>(next.size()) != num_states || static_cast<int>(out.size()) != num_states)
        throw MachineError("transition or output table has wrong size");
    const std::size_t outs_per = kind == Semantics::Moore ? 1 : dirs();
    for (int t = 0; t < num_states; ++t) {
        if (next[t].size() != dirs()) throw MachineError("transition function not total at state " + std::to_string(t));
        if (out[t].size() != outs_per) throw MachineError("output function not total at state " + std::to_string(t));
        for (int s : next[t])
            if (s < 0 || s >= num_states) throw MachineError("successor out of range at state " + std::to_string(t));
        for (Letter o : out[t])
            if (o >> outputs.size()) throw MachineError("output letter out of range at state " + std::to_string(t));
    }
}

Machine Machine::canonical() const {
    std::vector<int> order, id(num_states, -1);
    std::deque<int> work;
    for (int i : init)
        if (id[i] < 0) {
            id[i] = static_cast<int>(order.size());
            order.push_back(i);
            work.push_back(i);
        }
    while (!work.empty()) {
        int t = work.front();
        work.pop_front();
        for (Letter d = 0; d < dirs(); ++d) {
            int s = next[t][d];
            if (id[s] < 0) {
                id[s] = static_cast<int>(order.size());
                order.push_back(s);
                work.push_back(s);
            }
        }
    }
    Machine c = blank(kind, inputs, outputs, static_cast<int>(order.size()));
    c.init.clear();
    for (int i : init) c.init.push_back(id[i]);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int t = order[k];
        for (Letter d = 0; d < dirs(); ++d) c.next[k][d] = id[next[t][d]];
        c.out[k] = out[t];
    }
    return c;
}

Machine Machine::padded() const {
    Machine p = *this;
    p.next.push_back(next.back());
    p.out.push_back(out.back());
    ++p.num_states;
    return p;
}

Machine Machine::project(const std::vector<std::string>& keep) const {
    std::vector<int> src;
    for (auto& k : keep) {
        auto it = std::find(outputs.begin(), outputs.end(), k);
        if (it == outputs.end()) throw MachineError("cannot keep unknown output '" + k + "'");
        src.push_back(static_cast<int>(it - outputs.begin()));
    }
    Machine p = *this;
    p.outputs = keep;
    for (auto& row : p.out)
        for (auto& o : row) {
            Letter n = 0;
            for (std::size_t i = 0; i < src.size(); ++i)
                if (o >> src[i] & 1) n |= Letter{1} << i;
            o = n;
        }
    return p;
}

bool equivalent(const Machine& a, const Machine& b) {
    if (a.kind != b.kind || a.inputs != b.inputs || a.outputs != b.outputs || a.init.size() != b.init.size())
        return false;
    std::set<std::pair<int, int>> seen;
    std::deque<std::pair<int, int>> work;
    for (std::size_t i = 0; i < a.init.size(); ++i)
        if (seen.insert({a.init[i], b.init[i]}).second) work.emplace_back(a.init[i], b.init[i]);
    while (!work.empty()) {
        auto [s, t] = work.front();
        work.pop_front();
        for (Letter d = 0; d < a.dirs(); ++d) {
            if (a.output(s, d) != b.output(t, d)) return false;
            std::pair<int, int> nx{a.next[s][d], b.next[t][d]};
            if (seen.insert(nx).second) work.push_back(nx);
        }
    }
    return true;
}

std::vector<Cube> cover_letters(const std::vector<Letter>& letters, int n) {
    const std::uint64_t full = n >= 64 ? ~0ULL : (1ULL << n) - 1;
    std::set<Letter> want(letters.begin(), letters.end());
    if (want.empty()) return {};
    // prime implicants by iterated merging
    std::set<Cube> level, primes;
    for (Letter l : want) level.insert(Cube{full, l});
    while (!level.empty()) {
        std::set<Cube> next;
        std::set<Cube> merged;
        for (auto a = level.begin(); a != level.end(); ++a)
            for (auto b = std::next(a); b != level.end(); ++b) {
                if (a->care != b->care) continue;
                const std::uint64_t diff = a->val ^ b->val;
                if (diff && !(diff & (diff - 1))) {
                    next.insert(Cube{a->care & ~diff, a->val & ~diff});
                    merged.insert(*a);
                    merged.insert(*b);
                }
            }
        for (auto& c : level)
            if (!merged.count(c)) primes.insert(c);
        level = std::move(next);
    }
    // greedy cover, largest cubes first
    std::vector<Cube> ps(primes.begin(), primes.end());
    std::stable_sort(ps.begin(), ps.end(), [](const Cube& a, const Cube& b) {
        return __builtin_popcountll(a.care) < __builtin_popcountll(b.care);
    });
    std::set<Letter> left = want;
    std::vector<Cube> out;
    while (!left.empty()) {
        const Cube* best = nullptr;
        std::size_t best_n = 0;
        for (auto& c : ps) {
            std::size_t k = 0;
            for (Letter l : left) k += c.matches(l);
            if (k > best_n) {
                best_n = k;
                best = &c;
            }
        }
        out.push_back(*best);
        for (auto it = left.begin(); it != left.end();) it = best->matches(*it) ? left.erase(it) : std::next(it);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string letter_cube_text(Letter l, const std::vector<std::string>& props) {
    std::string s;
    for (std::size_t i = 0; i < props.size(); ++i) {
        if (!s.empty()) s += " ";
        s += (l >> i & 1) ? props[i] : "!" + props[i];
    }
    return s.empty() ? "true" : s;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

std::string dnf_text(const std::vector<Cube>& cubes, const std::vector<std::string>& props) {
    std::vector<std::string> parts;
    for (auto& c : cubes) {
        std::vector<std::string> lits;
        for (std::size_t i = 0; i < props.size(); ++i)
            if (c.care >> i & 1) lits.push_back((c.val >> i & 1) ? props[i] : "!" + props[i]);
        parts.push_back(lits.empty() ? "true" : join(lits, " & "));
    }
    return join(parts, " | ");
}

std::vector<std::string> split_names(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// conjunction of literals, "true" for the empty one
Cube parse_cube(const std::string& text, const std::vector<std::string>& props) {
    Cube c;
    std::string t = text;
    std::replace(t.begin(), t.end(), '&', ' ');
    std::istringstream is(t);
    std::string lit;
    while (is >> lit) {
        if (lit == "true") continue;
        const bool neg = lit[0] == '!';
        const std::string name = neg ? lit.substr(1) : lit;
        auto it = std::find(props.begin(), props.end(), name);
        if (it == props.end()) throw MachineError("unknown proposition '" + name + "' in machine file");
        const std::uint64_t bit = 1ULL << (it - props.begin());
        if (c.care & bit) throw MachineError("proposition '" + name + "' repeated in a cube");
        c.care |= bit;
        if (!neg) c.val |= bit;
    }
    return c;
}

}  // namespace

std::string Machine::to_dot() const {
    std::ostringstream os;
    os << "digraph machine {\n";
    os << "  kind=\"" << (kind == Semantics::Moore ? "moore" : "mealy") << "\";\n";
    os << "  inputs=\"" << join(inputs, ",") << "\";\n";
    os << "  outputs=\"" << join(outputs, ",") << "\";\n";
    for (std::size_t i = 0; i < init.size(); ++i) {
        os << "  __init" << i << " [shape=point];\n";
        os << "  __init" << i << " -> " << init[i] << ";\n";
    }
    for (int t = 0; t < num_states; ++t) {
        os << "  " << t << " [label=\"" << t;
        if (kind == Semantics::Moore) os << "\\n" << letter_cube_text(out[t][0], outputs);
        os << "\"];\n";
    }
    const int ni = static_cast<int>(inputs.size());
    for (int t = 0; t < num_states; ++t) {
        std::map<std::pair<int, Letter>, std::vector<Letter>> groups;
        for (Letter d = 0; d < dirs(); ++d) groups[{next[t][d], kind == Semantics::Mealy ? out[t][d] : 0}].push_back(d);
        for (auto& [key, ds] : groups) {
            os << "  " << t << " -> " << key.first << " [label=\"" << dnf_text(cover_letters(ds, ni), inputs);
            if (kind == Semantics::Mealy) os << " / " << letter_cube_text(key.second, outputs);
            os << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

Machine Machine::from_dot(const std::string& text) {
    static const std::regex attr_re(R"re(^\s*(kind|inputs|outputs)\s*=\s*"([^"]*)"\s*;?\s*$)re");
    static const std::regex init_re(R"re(^\s*__init\w*\s*->\s*(\d+)\s*;?\s*$)re");
    static const std::regex node_re(R"re(^\s*(\d+)\s*\[\s*label\s*=\s*"([^"]*)"\s*\]\s*;?\s*$)re");
    static const std::regex edge_re(R"re(^\s*(\d+)\s*->\s*(\d+)\s*\[\s*label\s*=\s*"([^"]*)"\s*\]\s*;?\s*$)re");
    Machine m;
    m.init.clear();
    std::string kind = "moore";
    std::map<int, std::string> node_labels;
    std::vector<std::tuple<int, int, std::string>> edges;
    std::istringstream is(text);
    std::string line;
    std::smatch mt;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (std::regex_match(line, mt, attr_re)) {
            if (mt[1] == "kind")
                kind = mt[2];
            else if (mt[1] == "inputs")
                m.inputs = split_names(mt[2]);
            else
                m.outputs = split_names(mt[2]);
        } else if (std::regex_match(line, mt, init_re)) {
            m.init.push_back(std::stoi(mt[1]));
        } else if (std::regex_match(line, mt, edge_re)) {
            edges.emplace_back(std::stoi(mt[1]), std::stoi(mt[2]), mt[3]);
        } else if (std::regex_match(line, mt, node_re)) {
            node_labels[std::stoi(mt[1])] = mt[2];
        }
    }
    if (kind != "moore" && kind != "mealy") throw MachineError("unknown machine kind '" + kind + "'");
    m.kind = kind == "moore" ? Semantics::Moore : Semantics::Mealy;
    if (node_labels.empty()) throw MachineError("machine file has no states");
    m.num_states = node_labels.rbegin()->first + 1;
    if (static_cast<int>(node_labels.size()) != m.num_states) throw MachineError("state ids are not dense");
    if (m.init.empty()) m.init.push_back(0);
    const Letter dirs = m.dirs();
    m.next.assign(m.num_states, std::vector<int>(dirs, -1));
    m.out.assign(m.num_states, std::vector<Letter>(m.kind == Semantics::Moore ? 1 : dirs, 0));
    if (m.kind == Semantics::Moore)
        for (auto& [t, label] : node_labels) {
            auto nl = label.find("\\n");
            const std::string cube = nl == std::string::npos ? "" : label.substr(nl + 2);
            const Cube c = parse_cube(cube, m.outputs);
            m.out[t][0] = c.val;
        }
    for (auto& [s, t, label] : edges) {
        if (s >= m.num_states || t >= m.num_states) throw MachineError("edge mentions unknown state");
        std::string guard = label;
        Letter o = 0;
        if (m.kind == Semantics::Mealy) {
            auto slash = label.find('/');
            if (slash == std::string::npos) throw MachineError("mealy edge without output part");
            guard = label.substr(0, slash);
            o = parse_cube(label.substr(slash + 1), m.outputs).val;
        }
        std::size_t start = 0;
        for (;;) {
            auto bar = guard.find('|', start);
            const Cube c = parse_cube(trim(guard.substr(start, bar == std::string::npos ? std::string::npos : bar - start)),
                                      m.inputs);
            for (Letter d = 0; d < dirs; ++d) {
                if (!c.matches(d)) continue;
                if (m.next[s][d] >= 0 && (m.next[s][d] != t || (m.kind == Semantics::Mealy && m.out[s][d] != o)))
                    throw MachineError("nondeterministic transitions at state " + std::to_string(s));
                m.next[s][d] = t;
                if (m.kind == Semantics::Mealy) m.out[s][d] = o;
            }
            if (bar == std::string::npos) break;
            start = bar + 1;
        }
    }
    for (int t = 0; t < m.num_states; ++t)
        for (Letter d = 0; d < dirs; ++d)
            if (m.next[t][d] < 0) throw MachineError("transition function not total at state " + std::to_string(t));
    m.validate();
    return m;
}

}  // namespace sk
