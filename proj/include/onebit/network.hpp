#pragma once

// Memoryless networks with optional 1-bit channels, and blocklength-n codes
// running on them.
//
// A network has m nodes and a list of component channels. Every component
// owns a set of input slots (each fed by one sending node) and output slots
// (each delivered to one receiving node). A node's transmit tuple at time t
// is the concatenation, in component order, of the slots it feeds; its
// receive tuple likewise. A node with no slots has a singleton alphabet and
// its tuple is empty.
//
// One step of execution: every encoder reads its node's strictly-past
// outputs and emits a tuple, then every component fires simultaneously.
// A 1-bit component forwards its input bit at its activation time and the
// constant 0 at every other time; its input alphabet is {0} off-activation.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace onebit::net {

using Symbol = std::uint32_t;
using NodeId = std::size_t;
using Message = std::uint64_t;

enum class ChannelKind { deterministic, stochastic, one_bit };

struct Outcome {
    std::vector<Symbol> outputs;
    double probability = 0.0;
};

struct ComponentChannel {
    std::string name;
    ChannelKind kind = ChannelKind::deterministic;
    std::vector<NodeId> senders;
    std::vector<std::size_t> input_sizes;
    std::vector<NodeId> receivers;
    std::vector<std::size_t> output_sizes;
    std::function<std::vector<Symbol>(std::span<const Symbol>)> map;
    std::function<std::vector<Outcome>(std::span<const Symbol>)> law;

    static ComponentChannel deterministic(std::string name, std::vector<NodeId> senders,
                                          std::vector<std::size_t> input_sizes,
                                          std::vector<NodeId> receivers,
                                          std::vector<std::size_t> output_sizes,
                                          std::function<std::vector<Symbol>(std::span<const Symbol>)> map);
    static ComponentChannel stochastic(std::string name, std::vector<NodeId> senders,
                                       std::vector<std::size_t> input_sizes,
                                       std::vector<NodeId> receivers,
                                       std::vector<std::size_t> output_sizes,
                                       std::function<std::vector<Outcome>(std::span<const Symbol>)> law);
    // Noiseless pipe carrying one symbol of the given alphabet per step.
    static ComponentChannel pipe(std::string name, NodeId from, NodeId to, std::size_t alphabet);
    static ComponentChannel one_bit(std::string name, NodeId from, NodeId to);

    // Alphabet of an input slot at time t; tau only matters for one_bit.
    std::size_t input_alphabet(std::size_t slot, std::size_t t, std::size_t tau) const;
    std::size_t output_alphabet(std::size_t slot, std::size_t t, std::size_t tau) const;
};

struct PortRef {
    std::size_t component = 0;
    std::size_t slot = 0;
    friend bool operator==(const PortRef&, const PortRef&) = default;
};

class NetworkModel {
public:
    // Throws StructuralError on out-of-range nodes, self-demands or malformed components.
    NetworkModel(std::size_t nodes, std::vector<ComponentChannel> components,
                 std::vector<std::vector<NodeId>> demands);

    std::size_t node_count() const { return nodes_; }
    const std::vector<ComponentChannel>& components() const { return components_; }
    const ComponentChannel& component(std::size_t index) const { return components_.at(index); }
    const std::vector<NodeId>& demands(NodeId node) const { return demands_.at(node); }

    std::span<const PortRef> input_ports(NodeId node) const { return inputs_.at(node); }
    std::span<const PortRef> output_ports(NodeId node) const { return outputs_.at(node); }

    std::vector<std::size_t> one_bit_components() const;
    std::optional<std::size_t> find_component(std::string_view name) const;
    bool is_deterministic() const;

    NetworkModel without_one_bit_channels() const;

private:
    std::size_t nodes_;
    std::vector<ComponentChannel> components_;
    std::vector<std::vector<NodeId>> demands_;
    std::vector<std::vector<PortRef>> inputs_;
    std::vector<std::vector<PortRef>> outputs_;
};

// past[s - 1] is the receive tuple at time s, for every s < t (encoders) or s <= n (decoders).
using History = std::span<const std::vector<Symbol>>;
using Encoder = std::function<std::vector<Symbol>(std::size_t t, History past, Message own)>;
using Decoder = std::function<Message(History received, Message own)>;

struct DecoderSlot {
    NodeId source = 0;
    NodeId receiver = 0;
    Decoder decode;
};

struct NetworkCode {
    std::size_t blocklength = 0;
    // Component index -> activation time in [1, n]. Required for every 1-bit component.
    std::map<std::size_t, std::size_t> activation;
    std::vector<Encoder> encoders;
    std::vector<DecoderSlot> decoders;
    std::vector<Message> message_counts;
};

// Throws StructuralError when the code does not fit the network.
void validate(const NetworkModel& net, const NetworkCode& code);

struct Reconstruction {
    NodeId source = 0;
    NodeId receiver = 0;
    Message value = 0;
    friend bool operator==(const Reconstruction&, const Reconstruction&) = default;
};

struct TranscriptRecord {
    std::size_t nodes = 0;
    std::size_t blocklength = 0;
    std::vector<Message> messages;
    // [node][t - 1]
    std::vector<std::vector<std::vector<Symbol>>> sent;
    std::vector<std::vector<std::vector<Symbol>>> received;
    std::vector<Reconstruction> reconstructions;

    friend bool operator==(const TranscriptRecord&, const TranscriptRecord&) = default;
};

// Line-oriented text form:
//   transcript m=<nodes> n=<blocklength>
//   messages <M_0> ... <M_{m-1}>
//   t=<t> <node>:<sent>/<received> ...      one line per time step
//   decode <source>><receiver> <value>      one line per demanded pair
// A tuple is comma-separated symbol codes, or '-' for the empty tuple.
std::string to_text(const TranscriptRecord& transcript);
TranscriptRecord parse_transcript(std::string_view text);

// Simulates one run. Stochastic components sample from a generator seeded with `seed`.
TranscriptRecord run_code(const NetworkModel& net, const NetworkCode& code,
                          std::span<const Message> messages, std::uint64_t seed = 0);

struct ErrorReport {
    double d_max = 0.0;
    double d_avg = 0.0;
    std::uint64_t tuples = 0;
    // Pr(reconstruction wrong), aligned with code.decoders.
    std::vector<double> pair_error;
    // Pr(some demander of node j is wrong), per node.
    std::vector<double> source_error;
};

inline constexpr std::uint64_t kDefaultExactBudget = 1ull << 22;

// Exact error over the given message tuples taken as equally likely. Stochastic
// components are expanded over their full support. Throws BudgetExceeded when
// the number of execution paths would exceed `budget`.
ErrorReport evaluate_exact(const NetworkModel& net, const NetworkCode& code,
                           std::span<const std::vector<Message>> tuples,
                           std::uint64_t budget = kDefaultExactBudget);

// Same over the full uniform message space.
ErrorReport error_exhaustive(const NetworkModel& net, const NetworkCode& code,
                             std::uint64_t budget = kDefaultExactBudget);
double max_error_exhaustive(const NetworkModel& net, const NetworkCode& code,
                            std::uint64_t budget = kDefaultExactBudget);
double avg_error_exhaustive(const NetworkModel& net, const NetworkCode& code,
                            std::uint64_t budget = kDefaultExactBudget);

struct MonteCarloResult {
    double d_max = 0.0;
    double d_avg = 0.0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> pair_errors;    // aligned with code.decoders
    std::vector<std::uint64_t> source_errors;  // per node
};

using TranscriptObserver = std::function<void(const TranscriptRecord&)>;

// Uniform random message tuples, one derived seed per trial.
MonteCarloResult monte_carlo_error(const NetworkModel& net, const NetworkCode& code,
                                   std::uint64_t trials, std::uint64_t seed,
                                   const TranscriptObserver& observe = {});

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

struct RateVector {
    std::vector<double> rates;
    friend bool operator==(const RateVector&, const RateVector&) = default;
};

// a >= b in every coordinate; vectors must have equal length.
bool dominates(const RateVector& a, const RateVector& b);

// log2 |M_i| / n per node.
RateVector code_rate(const NetworkCode& code);

// R_i == 0 exactly when D_i is empty.
bool rates_consistent(const RateVector& rates, const NetworkModel& net);

}  // namespace onebit::net
