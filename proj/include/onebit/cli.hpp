#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace onebit::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;

enum class OutputFormat { text, json };
enum class NetworkChoice { nd, n0, nplus };

struct RunConfig {
    std::string subcommand;
    std::size_t n = 6;
    double delta = 0.02;
    std::uint64_t cap = 16;
    std::uint64_t seed = 0;
    std::uint64_t trials = 10000;
    NetworkChoice network = NetworkChoice::nplus;
    std::string out;
    OutputFormat format = OutputFormat::text;
    std::string mutant = "none";
    std::string codebook;  // optional codebook file to load instead of generating
};

// args excludes the program name. Writes results to `out` (and to --out when
// given), diagnostics to `err`. Returns kPass, kFail or kUsage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onebit::cli
