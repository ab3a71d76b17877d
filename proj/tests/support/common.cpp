#include "common.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace testing_support {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string specs_dir() { return SYNTHKIT_SPECS; }
std::string golden_dir() { return SYNTHKIT_GOLDEN; }

sk::Specification load_spec(const std::string& name) { return sk::parse_spec(read_file(specs_dir() + "/" + name)); }
sk::RingSpec load_ring(const std::string& name) { return sk::parse_ring_spec(read_file(specs_dir() + "/" + name)); }

}  // namespace testing_support
