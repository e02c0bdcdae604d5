#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace subapprox::cli {

enum ExitCode { kSuccess = 0, kInternal = 1, kValidation = 2 };

// Everything that determines an output; the hash covers all fields except `outputs`.
struct Descriptor {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 1;
    long precision = 128;
    std::string hmax;
    std::uint64_t work_limit = 100000000;
    std::vector<std::string> outputs;

    std::string canonical_json() const;  // sorted keys, no whitespace
    std::string hash() const;            // FNV-1a 64 of canonical_json, 16 hex digits
};

std::uint64_t fnv1a64(const std::string& bytes);

// Writes to `path` through a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);

// Full command line (without the program name). Returns the process exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace subapprox::cli
