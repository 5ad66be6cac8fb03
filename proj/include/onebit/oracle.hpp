#pragma once

// Brute-force verifiers for the construction's checkable claims, the
// converse-boundary calculator, and the separation check.
//
// Verifiers sweep raw input spaces through a supplied single-letter channel
// law rather than reusing the formulas under test, so a mutant law makes them
// fail with a witness.

#include "onebit/dueck.hpp"
#include "onebit/network.hpp"
#include "onebit/protocol.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace onebit::oracle {

struct VerdictReport {
    std::string claim;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t cases = 0;
    std::uint64_t failure_count = 0;
    std::vector<std::string> failures;  // the first kMaxWitnesses witnesses
    double wall_seconds = 0.0;

    static constexpr std::size_t kMaxWitnesses = 16;

    bool pass() const { return failure_count == 0; }
    void fail(std::string witness);
    void set(std::string key, std::string value);
    std::optional<std::string> get(const std::string& key) const;

    friend bool operator==(const VerdictReport&, const VerdictReport&) = default;
};

// Equality ignoring wall time.
bool same_outcome(const VerdictReport& a, const VerdictReport& b);

// Schema: {"claim", "pass", "cases", "failure_count", "failures": [..],
//          "parameters": {name: value}, "wall_seconds"}. Parameter order is kept.
nlohmann::ordered_json to_json(const VerdictReport& report);
VerdictReport report_from_json(const nlohmann::ordered_json& j);
std::string to_text(const VerdictReport& report);

enum class Mutant { none, contraction_b0, cf_never_toggle, cf_index_shift };

std::string to_string(Mutant m);
std::optional<Mutant> parse_mutant(std::string_view name);

// W with (b,0) -> (b,0) instead of (c,0).
dueck::Output mutant_w_b0(dueck::Sym1 x1, dueck::Sym2 x2);

dueck::SymbolMap channel_for(Mutant m);
protocol::CfRule cf_rule_for(Mutant m);

inline constexpr std::uint64_t kDefaultCaseBudget = 1ull << 26;

// Every (x1, x2) in X1^n x {0,1}^n: base and toggled contraction counts sum
// to n, and at least one of the two outputs is good.
VerdictReport verify_toggle_claim(std::size_t n, dueck::SymbolMap map = dueck::w_single,
                                  std::uint64_t budget = kDefaultCaseBudget);

// Buckets every input pair by its output word and checks, for every reachable
// y: the bucket size is 2^{C(y)}, all inputs share decode_x2(y), and
// dueck::preimage(y) returns exactly the bucket.
VerdictReport verify_preimage_formula(std::size_t n, dueck::SymbolMap map = dueck::w_single,
                                      std::uint64_t budget = kDefaultCaseBudget);

// All 2^n x 2^n phase-1 message pairs round-trip through the channel.
VerdictReport verify_phase1(std::size_t n, dueck::SymbolMap map = dueck::w_single,
                            std::uint64_t budget = kDefaultCaseBudget);

// Runs protocol::verify_codebook and, for n <= 10, cross-checks every list
// size against a histogram of W over all codebook entries and all x2.
VerdictReport verify_codebook_report(const protocol::Codebook& codebook, const protocol::ProtocolParams& params,
                                     std::uint64_t attempts = 1);

struct ProtocolCheckOptions {
    Mutant mutant = Mutant::none;
    std::uint64_t joint_samples = 256;
    std::uint64_t seed = 0;
    std::uint64_t budget = 1ull << 22;
};

// Full network runs of the assembled code: every phase-2 pair (m12, m22) with
// the phase-1 parts at 0, every phase-1 pair (m11, m21) with the phase-2 parts
// at 0, then joint_samples random tuples. Per run: exact reconstruction, good
// phase-2 word, identical cf / receiver / brute-force lists, cf bits as
// delivered, and 1-bit channels silent outside t = n+1. Reports d_max, d_avg
// from the runtime metric and a digest of all transcripts.
VerdictReport verify_protocol_zero_error(const protocol::ProtocolParams& params, const protocol::Codebook& codebook,
                                         const ProtocolCheckOptions& options = {});

// -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0. Throws std::invalid_argument outside [0, 1].
double binary_entropy(double p);

// (H(1/3) + 2/3 - p, H(p), 0, 0) over nodes tx1, tx2, rx, cf; p in [0, 1/2].
net::RateVector dueck_bound_point(double p);

// Largest p in [0, 1/2] with H(p) <= target, by bisection.
double inverse_binary_entropy(double target);

inline constexpr double kReferenceRate1 = 1.19;
inline constexpr double kReferenceRate2 = 0.97;
inline constexpr double kBoundaryP = 0.4;

struct SeparationCheck {
    net::RateVector achievable_limit;
    net::RateVector reference;  // (1.19, 0.97)
    net::RateVector boundary;   // dueck_bound_point(0.4)
    bool limit_dominates_reference = false;
    bool limit_dominates_boundary = false;
    bool reference_first_dominates = false;   // 1.19 >= H(1/3) + 2/3 - 0.4
    bool reference_second_dominates = false;  // 0.97 >= H(0.4); false, 0.97 is H(0.4) rounded
    double rounding_gap = 0.0;                // H(0.4) - 0.97
    double matched_p = 0.0;                   // H(matched_p) = 0.97
    net::RateVector matched_boundary;         // dueck_bound_point(matched_p)
    bool reference_dominates_matched = false;
    bool separated = false;
};

// delta in [0, 1/2]. separated = limit >= reference >= matched boundary point,
// and limit >= boundary(0.4).
SeparationCheck check_separation(double delta);
VerdictReport separation_report(double delta);

}  // namespace onebit::oracle
