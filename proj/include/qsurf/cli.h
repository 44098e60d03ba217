#pragma once
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsurf/gate_verify.h"

namespace qsurf::cli {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Inclusive numeric grid "start:stop:step", or a comma-separated list, or a
// single value.  Throws std::invalid_argument on malformed input.
std::vector<double> parse_grid(const std::string& spec);

// Comma-separated integers; empty string yields an empty list.
std::vector<int> parse_int_list(const std::string& spec);

// Flat "key = value" config file; '#' starts a comment.  Flags override
// these values at parse time.
std::map<std::string, std::string> load_config_file(const std::string& path);

// Comment header recorded at the top of every output file: artifact version,
// command, seed, and the effective configuration in sorted order.
std::string output_header(const std::string& command,
                          const std::map<std::string, std::string>& config);

// Exact-check suite over the lattice/logical-operator layer: planar qubit
// counts, the braiding four-tuple and double-braid identity, the hole-move
// chain transforms, the patch Hadamard swap, and the tableau walkthrough
// scenarios.  Complements verify_gates_all.
VerifyReport verify_logical_suite(uint64_t seed);

// Full command-line entry point.  Returns the process exit code:
// 0 success, 1 check failure, 2 usage error.  Data goes to `out`,
// progress/diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsurf::cli
