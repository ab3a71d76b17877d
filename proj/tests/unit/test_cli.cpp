#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "common.hpp"
#include "synthkit/machine.hpp"

namespace {

std::string temp_path() {
    static int n = 0;
    return (std::filesystem::temp_directory_path() / ("synthkit-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(n++))).string();
}

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    const std::string file = temp_path();
    const std::string cmd = std::string(SYNTHKIT_CLI) + " " + args + " >" + file + " 2>&1";
    const int status = std::system(cmd.c_str());
    Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, testing_support::read_file(file)};
    std::remove(file.c_str());
    return r;
}

std::string spec(const std::string& name) { return testing_support::specs_dir() + "/" + name; }

}  // namespace

TEST_CASE("usage errors") {
    CHECK(run("").code == 64);
    CHECK(run("frobnicate").code == 64);
    CHECK(run("synth").code == 64);
    CHECK(run("synth " + spec("delay.spec") + " --encoding nope").code == 64);
    CHECK(run("--help").code == 0);
}

TEST_CASE("synth writes a machine") {
    const std::string out = temp_path();
    Run r = run("synth " + spec("delay.spec") + " --out " + out);
    CHECK(r.code == 0);
    CHECK(r.out.find("realizable, 2 states") != std::string::npos);
    sk::Machine m = sk::Machine::from_dot(testing_support::read_file(out));
    CHECK(m.num_states == 2);
    Run mc = run("mc " + out + " " + spec("delay.spec"));
    CHECK(mc.code == 0);
    CHECK(mc.out.find("holds") != std::string::npos);
    Run bad = run("mc " + out + " " + spec("echo_moore.spec"));
    CHECK(bad.code == 1);
    CHECK(bad.out.find("loop") != std::string::npos);
    std::remove(out.c_str());
}

TEST_CASE("synth verdicts") {
    CHECK(run("synth " + spec("echo_moore.spec") + " --max-size 2").code == 2);
    CHECK(run("synth " + spec("echo_moore.spec") + " --max-size 2 --dual-race").code == 1);
    CHECK(run("synth " + spec("arbiter1.spec") + " --encoding ctl-direct --max-size 2").code == 0);
    CHECK(run("synth " + spec("arbiter1.spec") + " --encoding ctl-aht --max-size 1").code == 2);
}

TEST_CASE("input errors exit with 3") {
    CHECK(run("synth /nonexistent.spec").code == 3);
    const std::string bad = temp_path();
    std::ofstream(bad) << "inputs r; outputs g; formula G (r -> F h);";
    Run r = run("synth " + bad);
    CHECK(r.code == 3);
    CHECK(r.out.find("1:") != std::string::npos);
    std::remove(bad.c_str());
    CHECK(run("synth " + spec("delay.spec") + " --solver /nonexistent/z3").code == 3);
}

TEST_CASE("ctl2ltl") {
    Run r = run("ctl2ltl " + spec("ctlstar.spec"));
    CHECK(r.code == 0);
    CHECK(r.out.find("# witness count 5") != std::string::npos);
    CHECK(r.out.find("formula") != std::string::npos);
}

TEST_CASE("cutoffs") {
    Run r = run("cutoff ring \"forall i != j . G !(g_i & g_j)\"");
    CHECK(r.code == 0);
    CHECK(r.out == "4\n");
    CHECK(run("cutoff ring \"forall i . X g_i\"").code == 3);
    r = run("cutoff guarded --kind disjunctive --b 3 --k 1");
    CHECK(r.code == 0);
    CHECK(r.out == "5\n");
    CHECK(run("cutoff guarded --kind conjunctive --b 3 --target deadlock").code == 3);
    r = run("cutoff guarded --kind conjunctive --b 3 --target deadlock --one-conjunctive");
    CHECK(r.code == 0);
    CHECK(r.out.find("4\n") == 0);
}
