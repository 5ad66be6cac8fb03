#pragma once

// Two-phase cooperation-facilitator scheme on N_plus, total blocklength 2n+1.
//
// Phase 1 (t = 1..n): tx1 sends m11 over {a, A}^n and tx2 sends m21 over
// {0,1}^n; both are zero-error decodable from W. In parallel tx1 forwards the
// codeword x1(m12) to the cf one 4-ary symbol per step, and tx2 forwards
// x2(m22) one bit per step.
//
// Activation (t = n+1): the cf simulates W on the forwarded pair. If the
// output is good it sends b = 0, otherwise b = 1 (the toggled codeword is then
// good). b goes to tx1 on e and to rx on f1; f2..fk carry the 1-based position
// of the transmitted codeword in the receiver's decoding list, minus one,
// most significant bit first.
//
// Phase 2 (t = n+2..2n+1): tx1 sends x1(m12) or its toggle, tx2 sends x2(m22).
// rx reads m22 off the second output coordinate, list decodes the first and
// picks the entry named by the cf.
//
// Message indices are 0-based. Node messages combine as
// m1 = m11 * |M12| + m12 and m2 = m21 * |M22| + m22.

#include "onebit/dueck.hpp"
#include "onebit/network.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace onebit::protocol {

using dueck::X1Word;
using dueck::X2Word;
using dueck::Y1Word;

struct ProtocolParams {
    std::size_t n = 0;
    double delta = 0.0;
    std::size_t k = 0;
    std::uint64_t tx1_phase1 = 0;  // |M11|
    std::uint64_t tx1_phase2 = 0;  // |M12|
    std::uint64_t tx2_phase1 = 0;  // |M21|
    std::uint64_t tx2_phase2 = 0;  // |M22|
    std::uint64_t nominal_tx1_phase2 = 0;  // floor(2^{(3/2 - delta) n})
    std::uint64_t list_bound = 0;          // ceil(8 / delta)
    bool desk_scaled = false;

    std::size_t total_blocklength() const { return 2 * n + 1; }
    std::size_t activation_time() const { return n + 1; }
    std::uint64_t tx1_messages() const { return tx1_phase1 * tx1_phase2; }
    std::uint64_t tx2_messages() const { return tx2_phase1 * tx2_phase2; }
};

// ceil(8 / delta).
std::uint64_t list_bound_for(double delta);
// ceil(log2(8 / delta)) + 1.
std::size_t cf_bits_for(double delta);

// n even in [2, 62], delta in (0, 1/2]. A cap below the nominal |M12| replaces it
// and sets desk_scaled. Throws std::invalid_argument otherwise, or when a node's
// message space does not fit in 64 bits.
ProtocolParams derive_params(std::size_t n, double delta, std::optional<std::uint64_t> cap = std::nullopt);

struct MessageSplit {
    std::uint64_t m11 = 0;
    std::uint64_t m12 = 0;
    std::uint64_t m21 = 0;
    std::uint64_t m22 = 0;
    friend bool operator==(const MessageSplit&, const MessageSplit&) = default;
};

MessageSplit split_messages(net::Message m1, net::Message m2, const ProtocolParams& params);
std::pair<net::Message, net::Message> join_messages(const MessageSplit& s, const ProtocolParams& params);

// Distinct base codewords x1(0..|M12|-1); toggled twins are implicit.
class Codebook {
public:
    // Throws std::invalid_argument on duplicates or words of the wrong length.
    Codebook(std::size_t n, std::vector<X1Word> words, std::uint64_t seed);

    std::size_t blocklength() const { return n_; }
    std::uint64_t size() const { return words_.size(); }
    std::uint64_t seed() const { return seed_; }
    const X1Word& word(std::uint64_t w) const { return words_.at(w); }
    const std::vector<X1Word>& words() const { return words_; }
    std::optional<std::uint64_t> find(const X1Word& x1) const;

    friend bool operator==(const Codebook& a, const Codebook& b) {
        return a.n_ == b.n_ && a.seed_ == b.seed_ && a.words_ == b.words_;
    }

private:
    std::size_t n_;
    std::uint64_t seed_;
    std::vector<X1Word> words_;
    std::unordered_map<X1Word, std::uint64_t, dueck::WordHash> index_;
};

// "codebook n=<n> size=<|M12|> seed=<seed>" then one word per line over a/b/A/B.
std::string to_text(const Codebook& codebook);
Codebook parse_codebook(std::string_view text);

inline constexpr std::uint64_t kMaxCodebookWords = 1ull << 24;

// |M12| distinct uniform words from X1^n, deterministic in seed.
Codebook generate_codebook(const ProtocolParams& params, std::uint64_t seed);

enum class VerifyMode { automatic, exhaustive, sampled };

struct CodebookCheck {
    bool ok = false;
    std::size_t max_list = 0;
    std::uint64_t words_checked = 0;  // good received words whose list was measured
    VerifyMode mode = VerifyMode::automatic;
    Y1Word worst;                     // a word attaining max_list
};

// Exhaustive: every good y in Y1^n (n <= 8). Sampled: transmitted pairs
// (w, x2) with both the base word and its toggle, all of them when
// |M12| * 2^n <= samples and `samples` random ones otherwise.
CodebookCheck verify_codebook(const Codebook& codebook, const ProtocolParams& params,
                              VerifyMode mode = VerifyMode::automatic, std::uint64_t samples = 4096,
                              std::uint64_t seed = 0);

struct VerifiedCodebook {
    Codebook codebook;
    CodebookCheck check;
    std::size_t attempts = 0;
};

// Tries seeds seed, seed+1, ... until verify_codebook passes.
// Throws std::runtime_error after max_attempts failures.
VerifiedCodebook generate_verified_codebook(const ProtocolParams& params, std::uint64_t seed,
                                            std::size_t max_attempts = 16,
                                            VerifyMode mode = VerifyMode::automatic);

X2Word bits_word(std::uint64_t value, std::size_t n);
std::uint64_t word_value(const X2Word& bits);

struct Phase1Words {
    X1Word x1;
    X2Word x2;
};

Phase1Words encode_phase1(std::uint64_t m11, std::uint64_t m21, const ProtocolParams& params);
// Throws DecodeError when a position is not a phase-1 output.
std::pair<std::uint64_t, std::uint64_t> decode_phase1(const Y1Word& y, const X2Word& y2);

struct ListEntry {
    std::uint64_t w = 0;
    bool toggled = false;
    friend bool operator==(const ListEntry&, const ListEntry&) = default;
};

struct DecodingList {
    std::vector<ListEntry> entries;
    std::size_t size() const { return entries.size(); }
    friend bool operator==(const DecodingList&, const DecodingList&) = default;
};

// Every (w, toggled) whose transmitted word maps to y under decode_x2(y), sorted
// by transmitted word (a < b < A < B), untoggled first on ties.
// Throws ContractError when y is not good.
DecodingList list_decode(const Y1Word& y, const Codebook& codebook);

// Number of list entries for any y, good or not.
std::size_t list_size(const Y1Word& y, const Codebook& codebook);

struct CfMessage {
    bool b = false;
    std::uint64_t index = 1;  // 1-based position in the decoding list
    friend bool operator==(const CfMessage&, const CfMessage&) = default;
};

// k bits: b, then index - 1 in k - 1 bits (MSB first). Throws ContractError if it does not fit.
std::vector<net::Symbol> cf_bits(const CfMessage& message, std::size_t k);
CfMessage parse_cf_bits(std::span<const net::Symbol> bits);

// Mutants used to show the verifiers have teeth; `standard` is the scheme.
enum class CfRule { standard, never_toggle, index_shift };

struct CfDecision {
    CfMessage message;
    Y1Word y;
    DecodingList list;
};

CfDecision cf_decide(const X1Word& x1_base, const X2Word& x2, const Codebook& codebook,
                     const ProtocolParams& params, CfRule rule = CfRule::standard);
CfMessage cf_compute(const X1Word& x1_base, const X2Word& x2, const Codebook& codebook,
                     const ProtocolParams& params);

X1Word encode_phase2_node1(std::uint64_t m12, bool b, const Codebook& codebook);

// Receiver's phase-2 decision for m12. Throws DecodeError when y is not good
// or the index falls outside the list.
std::uint64_t decode_phase2_node1(const Y1Word& y, const CfMessage& message, const Codebook& codebook);

// Full code on an N_plus model with params.k cf -> rx channels. Throws
// StructuralError when the network lacks e or f1..fk.
net::NetworkCode assemble_code(const ProtocolParams& params, const Codebook& codebook,
                               const net::NetworkModel& network, CfRule rule = CfRule::standard);

// Pieces of a protocol transcript as seen by rx and tx1.
struct ReceivedPhase2 {
    Y1Word y;
    X2Word y2;
    CfMessage cf;
};
ReceivedPhase2 received_phase2(const net::TranscriptRecord& transcript, const ProtocolParams& params);

// (2n(1.25 - 0.5 delta) / (2n + 1), 2n / (2n + 1), 0, 0) over nodes tx1, tx2, rx, cf.
net::RateVector achievable_rate(std::size_t n, double delta);
net::RateVector achievable_rate_limit(double delta);

struct SimulationResult {
    net::MonteCarloResult errors;
    std::size_t max_list = 0;
    std::uint64_t not_good = 0;  // trials whose phase-2 word was not good
};

SimulationResult simulate(const ProtocolParams& params, const Codebook& codebook,
                          const net::NetworkModel& network, std::uint64_t trials, std::uint64_t seed);

}  // namespace onebit::protocol
