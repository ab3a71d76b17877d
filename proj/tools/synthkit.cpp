#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "synthkit/ctl2ltl.hpp"
#include "synthkit/guarded.hpp"
#include "synthkit/modelcheck.hpp"
#include "synthkit/rings.hpp"
#include "synthkit/spec.hpp"
#include "synthkit/synth.hpp"

namespace {

enum Exit { kRealizable = 0, kUnrealizable = 1, kExhausted = 2, kError = 3, kUsage = 64 };

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << text;
}

std::vector<int> upto(int from, int to) {
    std::vector<int> v;
    for (int i = from; i <= to; ++i) v.push_back(i);
    return v;
}

struct Common {
    std::string solver;
    double timeout = 0;
    bool verbose = false;

    sk::SolverConfig config() const {
        sk::SolverConfig c;
        if (!solver.empty()) c.path = solver;
        c.timeout_s = timeout;
        return c;
    }
    std::function<void(const std::string&)> log() const {
        if (!verbose) return nullptr;
        return [](const std::string& s) { std::cerr << s << "\n"; };
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded synthesis of reactive systems from LTL and CTL* specifications"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--solver", common.solver, "SMT solver executable (default: $SYNTHKIT_SOLVER or z3)");
    app.add_option("--timeout", common.timeout, "per-query solver timeout in seconds (0: none)");
    app.add_flag("-v,--verbose", common.verbose, "log every solver call to stderr");

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a machine from a specification");
    std::string spec_file, encoding = "ltl", out_file;
    int max_size = 4, min_size = 1;
    std::optional<int> k;
    bool dual_race = false;
    synth->add_option("spec", spec_file, "specification file")->required();
    synth->add_option("--encoding", encoding, "ltl | ctl-direct | ctl-aht | ctl-via-ltl")
        ->check(CLI::IsMember({"ltl", "ctl-direct", "ctl-aht", "ctl-via-ltl"}));
    synth->add_option("--min-size", min_size, "first machine size");
    synth->add_option("--max-size", max_size, "largest machine size");
    synth->add_flag("--dual-race", dual_race, "race the dual specification (LTL and ctl-via-ltl); expensive for reduced CTL*");
    synth->add_option("--k", k, "witness count for ctl-via-ltl (default: full count, or the sufficient count with --dual-race)");
    synth->add_option("--out", out_file, "write the machine here instead of stdout");

    // mc
    auto* mc = app.add_subcommand("mc", "model check a machine against a specification");
    std::string machine_file;
    mc->add_option("machine", machine_file, "machine in dot format")->required();
    mc->add_option("spec", spec_file, "specification file")->required();

    // ctl2ltl
    auto* c2l = app.add_subcommand("ctl2ltl", "print the LTL reduction of a CTL* specification");
    c2l->add_option("spec", spec_file, "specification file")->required();
    c2l->add_option("--k", k, "witness count (default: full)");

    // ring-synth
    auto* ring = app.add_subcommand("ring-synth", "synthesize a token-ring process template");
    std::string ring_file, scheduler = "interleaving";
    bool no_hub = false, monolithic = false;
    std::vector<int> verify_sizes;
    ring->add_option("spec", ring_file, "parameterized specification file")->required();
    ring->add_option("--max-size", max_size, "largest template size");
    ring->add_option("--scheduler", scheduler, "interleaving | sync | async")
        ->check(CLI::IsMember({"interleaving", "sync", "synchronous", "async", "asynchronous"}));
    ring->add_flag("--no-hub", no_hub, "encode 1-indexed guarantees on a ring of size 2");
    ring->add_flag("--monolithic", monolithic, "all guarantees on one ring of the largest cutoff");
    ring->add_option("--verify", verify_sizes, "ring sizes to verify the template on")->delimiter(',');
    ring->add_option("--out", out_file, "write the template here instead of stdout");

    // cutoff
    auto* cutoff = app.add_subcommand("cutoff", "print a cutoff");
    cutoff->require_subcommand(1);
    auto* cring = cutoff->add_subcommand("ring", "token-ring cutoff of an indexed formula");
    std::string formula_text;
    cring->add_option("formula", formula_text, "e.g. \"forall i != j . G !(g_i & g_j)\"")->required();
    auto* cguard = cutoff->add_subcommand("guarded", "guarded-protocol cutoff");
    std::string gkind, gtarget = "property", gfair = "none";
    int gb = 1;
    std::optional<int> gk;
    bool one_conj = false, init_runs = false;
    cguard->add_option("--kind", gkind, "disjunctive | conjunctive")
        ->required()
        ->check(CLI::IsMember({"disjunctive", "conjunctive"}));
    cguard->add_option("--b", gb, "size of template B")->required();
    cguard->add_option("--k", gk, "number of B processes in the property");
    cguard->add_option("--target", gtarget, "property | deadlock")->check(CLI::IsMember({"property", "deadlock"}));
    cguard->add_option("--fairness", gfair, "none | unconditional | strong")
        ->check(CLI::IsMember({"none", "unconditional", "strong"}));
    cguard->add_flag("--one-conjunctive", one_conj, "system is 1-conjunctive");
    cguard->add_flag("--initializing", init_runs, "runs are initializing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*synth) {
            sk::Specification spec = sk::parse_spec(slurp(spec_file));
            sk::SynthProblem p;
            p.spec = spec;
            p.sizes = upto(min_size, max_size);
            p.dual_race = dual_race;
            p.solver = common.config();
            p.log = common.log();
            sk::SynthResult r;
            if (encoding == "ctl-via-ltl") {
                r = sk::synth_via_ltl(p, k);
            } else {
                p.encoding = encoding == "ltl"          ? sk::Encoding::Ltl
                             : encoding == "ctl-direct" ? sk::Encoding::CtlDirect
                                                        : sk::Encoding::CtlAht;
                r = sk::synth_loop(p);
            }
            switch (r.status) {
                case sk::SynthResult::Status::Realizable:
                    std::cerr << "realizable, " << r.machine.num_states << " states\n";
                    emit(r.machine.to_dot(), out_file);
                    return kRealizable;
                case sk::SynthResult::Status::Unrealizable:
                    std::cerr << "unrealizable, dual machine of size " << r.size << "\n";
                    emit(r.machine.to_dot(), out_file);
                    return kUnrealizable;
                case sk::SynthResult::Status::BoundExhausted:
                    std::cerr << "no verdict: " << r.note << "\n";
                    if (r.machine.num_states > 0) emit(r.machine.to_dot(), out_file);
                    return kExhausted;
            }
        }
        if (*mc) {
            sk::Machine m = sk::Machine::from_dot(slurp(machine_file));
            sk::Specification spec = sk::parse_spec(slurp(spec_file));
            sk::McResult r = spec.is_ltl() ? sk::mc_ltl(m, spec.ltl_body()) : sk::mc_ctl(m, spec.formula);
            if (r.holds) {
                std::cout << "holds\n";
                return 0;
            }
            std::cout << "fails\n" << r.cex_text << "\n";
            return 1;
        }
        if (*c2l) {
            sk::Specification spec = sk::parse_spec(slurp(spec_file));
            sk::Reduction red = sk::reduce(spec, k);
            std::cout << "# witness count " << sk::witness_count(spec) << ", sufficient " << sk::sufficient_witnesses(spec)
                      << ", using k = " << red.layout.k << "\n"
                      << red.spec.to_text();
            return 0;
        }
        if (*ring) {
            sk::RingSpec rs = sk::parse_ring_spec(slurp(ring_file));
            sk::RingSynthOptions o;
            o.sizes = upto(2, max_size);
            o.hub = !no_hub;
            o.modular = !monolithic;
            o.verify_sizes = verify_sizes;
            if (scheduler.rfind("sync", 0) == 0)
                o.scheduler = sk::Scheduler::Synchronous;
            else if (scheduler.rfind("async", 0) == 0)
                o.scheduler = sk::Scheduler::FullyAsynchronous;
            else
                o.scheduler = sk::Scheduler::Interleaving;
            o.solver = common.config();
            o.log = common.log();
            sk::RingSynthResult r = sk::ring_synth(rs, o);
            std::cerr << "cutoff " << r.cutoff << "\n";
            for (auto& n : r.notes) std::cerr << n << "\n";
            if (!r.found) {
                std::cerr << "no template up to size " << max_size << "\n";
                return kExhausted;
            }
            for (auto& c : r.checks)
                std::cerr << "n=" << c.n << "  " << (c.holds ? "ok    " : "FAIL  ") << c.property << "\n";
            emit(r.tmpl.to_dot(), out_file);
            return kRealizable;
        }
        if (*cring) {
            std::cout << sk::cutoff_for(sk::parse_indexed(formula_text)) << "\n";
            return 0;
        }
        if (*cguard) {
            sk::GuardedQuery q;
            q.kind = gkind == "disjunctive" ? sk::GuardKind::Disjunctive : sk::GuardKind::Conjunctive;
            q.b = gb;
            q.k = gk;
            q.target = gtarget == "property" ? sk::GuardTarget::Property : sk::GuardTarget::Deadlock;
            q.fairness = gfair == "none"            ? sk::Fairness::None
                         : gfair == "unconditional" ? sk::Fairness::Unconditional
                                                    : sk::Fairness::Strong;
            q.one_conjunctive = one_conj;
            q.initializing_runs = init_runs;
            sk::GuardedCutoff c = sk::guarded_cutoff(q);
            std::cout << c.cutoff << "\n";
            for (auto& n : c.notes) std::cerr << "note: " << n << "\n";
            return 0;
        }
    } catch (const sk::SpecError& e) {
        std::cerr << "error: " << e.line << ":" << e.col << ": " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kUsage;
}
