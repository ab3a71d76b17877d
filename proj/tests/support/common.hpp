#pragma once

#include <string>

#include "synthkit/rings.hpp"
#include "synthkit/spec.hpp"

namespace testing_support {

std::string read_file(const std::string& path);
// a file from tests/specs
sk::Specification load_spec(const std::string& name);
sk::RingSpec load_ring(const std::string& name);
std::string specs_dir();
std::string golden_dir();

}  // namespace testing_support
