#include "onebit/network.hpp"

#include "onebit/errors.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace onebit::net {

ComponentChannel ComponentChannel::deterministic(
    std::string name, std::vector<NodeId> senders, std::vector<std::size_t> input_sizes,
    std::vector<NodeId> receivers, std::vector<std::size_t> output_sizes,
    std::function<std::vector<Symbol>(std::span<const Symbol>)> map) {
    ComponentChannel c;
    c.name = std::move(name);
    c.kind = ChannelKind::deterministic;
    c.senders = std::move(senders);
    c.input_sizes = std::move(input_sizes);
    c.receivers = std::move(receivers);
    c.output_sizes = std::move(output_sizes);
    c.map = std::move(map);
    return c;
}

ComponentChannel ComponentChannel::stochastic(
    std::string name, std::vector<NodeId> senders, std::vector<std::size_t> input_sizes,
    std::vector<NodeId> receivers, std::vector<std::size_t> output_sizes,
    std::function<std::vector<Outcome>(std::span<const Symbol>)> law) {
    ComponentChannel c;
    c.name = std::move(name);
    c.kind = ChannelKind::stochastic;
    c.senders = std::move(senders);
    c.input_sizes = std::move(input_sizes);
    c.receivers = std::move(receivers);
    c.output_sizes = std::move(output_sizes);
    c.law = std::move(law);
    return c;
}

ComponentChannel ComponentChannel::pipe(std::string name, NodeId from, NodeId to, std::size_t alphabet) {
    return deterministic(std::move(name), {from}, {alphabet}, {to}, {alphabet},
                         [](std::span<const Symbol> in) { return std::vector<Symbol>(in.begin(), in.end()); });
}

ComponentChannel ComponentChannel::one_bit(std::string name, NodeId from, NodeId to) {
    ComponentChannel c;
    c.name = std::move(name);
    c.kind = ChannelKind::one_bit;
    c.senders = {from};
    c.input_sizes = {2};
    c.receivers = {to};
    c.output_sizes = {2};
    return c;
}

std::size_t ComponentChannel::input_alphabet(std::size_t slot, std::size_t t, std::size_t tau) const {
    if (kind == ChannelKind::one_bit) return t == tau ? 2 : 1;
    return input_sizes.at(slot);
}

std::size_t ComponentChannel::output_alphabet(std::size_t slot, std::size_t t, std::size_t tau) const {
    if (kind == ChannelKind::one_bit) return t == tau ? 2 : 1;
    return output_sizes.at(slot);
}

NetworkModel::NetworkModel(std::size_t nodes, std::vector<ComponentChannel> components,
                           std::vector<std::vector<NodeId>> demands)
    : nodes_(nodes), components_(std::move(components)), demands_(std::move(demands)),
      inputs_(nodes), outputs_(nodes) {
    if (nodes_ == 0) throw StructuralError("network needs at least one node");
    if (demands_.size() != nodes_)
        throw StructuralError("demand list has " + std::to_string(demands_.size()) + " entries for " +
                              std::to_string(nodes_) + " nodes");
    for (NodeId i = 0; i < nodes_; ++i) {
        auto& d = demands_[i];
        std::sort(d.begin(), d.end());
        d.erase(std::unique(d.begin(), d.end()), d.end());
        for (NodeId j : d) {
            if (j >= nodes_) throw StructuralError("demand names unknown node " + std::to_string(j));
            if (j == i) throw StructuralError("node " + std::to_string(i) + " demands its own message");
        }
    }

    for (std::size_t c = 0; c < components_.size(); ++c) {
        const auto& comp = components_[c];
        const std::string who = "component '" + comp.name + "'";
        if (comp.senders.size() != comp.input_sizes.size() || comp.receivers.size() != comp.output_sizes.size())
            throw StructuralError(who + " has mismatched slot and alphabet lists");
        if (comp.kind == ChannelKind::one_bit && (comp.senders.size() != 1 || comp.receivers.size() != 1))
            throw StructuralError(who + ": a 1-bit channel has exactly one sender and one receiver");
        if (comp.kind == ChannelKind::deterministic && !comp.map)
            throw StructuralError(who + " has no transition map");
        if (comp.kind == ChannelKind::stochastic && !comp.law)
            throw StructuralError(who + " has no transition law");
        for (std::size_t s = 0; s < comp.senders.size(); ++s) {
            if (comp.senders[s] >= nodes_) throw StructuralError(who + " reads from an unknown node");
            if (comp.input_sizes[s] == 0) throw StructuralError(who + " has an empty input alphabet");
            inputs_[comp.senders[s]].push_back({c, s});
        }
        for (std::size_t r = 0; r < comp.receivers.size(); ++r) {
            if (comp.receivers[r] >= nodes_) throw StructuralError(who + " writes to an unknown node");
            if (comp.output_sizes[r] == 0) throw StructuralError(who + " has an empty output alphabet");
            outputs_[comp.receivers[r]].push_back({c, r});
        }
    }
}

std::vector<std::size_t> NetworkModel::one_bit_components() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < components_.size(); ++c)
        if (components_[c].kind == ChannelKind::one_bit) out.push_back(c);
    return out;
}

std::optional<std::size_t> NetworkModel::find_component(std::string_view name) const {
    for (std::size_t c = 0; c < components_.size(); ++c)
        if (components_[c].name == name) return c;
    return std::nullopt;
}

bool NetworkModel::is_deterministic() const {
    return std::none_of(components_.begin(), components_.end(),
                        [](const ComponentChannel& c) { return c.kind == ChannelKind::stochastic; });
}

NetworkModel NetworkModel::without_one_bit_channels() const {
    std::vector<ComponentChannel> kept;
    for (const auto& c : components_)
        if (c.kind != ChannelKind::one_bit) kept.push_back(c);
    return NetworkModel(nodes_, std::move(kept), demands_);
}

void validate(const NetworkModel& net, const NetworkCode& code) {
    const std::size_t m = net.node_count();
    if (code.blocklength == 0) throw StructuralError("blocklength must be positive");
    if (code.encoders.size() != m)
        throw StructuralError("code has " + std::to_string(code.encoders.size()) + " encoders for " +
                              std::to_string(m) + " nodes");
    for (NodeId i = 0; i < m; ++i)
        if (!code.encoders[i]) throw StructuralError("node " + std::to_string(i) + " has no encoder");
    if (code.message_counts.size() != m) throw StructuralError("message count list does not match node count");
    for (NodeId i = 0; i < m; ++i) {
        if (code.message_counts[i] == 0)
            throw StructuralError("node " + std::to_string(i) + " has an empty message set");
        if (net.demands(i).empty() && code.message_counts[i] != 1)
            throw StructuralError("node " + std::to_string(i) + " has no demanders but a non-trivial message set");
    }

    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& d : code.decoders) {
        if (d.source >= m || d.receiver >= m) throw StructuralError("decoder names an unknown node");
        const auto& wanted = net.demands(d.source);
        if (!std::binary_search(wanted.begin(), wanted.end(), d.receiver))
            throw StructuralError("node " + std::to_string(d.receiver) + " decodes message " +
                                  std::to_string(d.source) + " without demanding it");
        if (!d.decode) throw StructuralError("empty decoder");
        if (!seen.insert({d.source, d.receiver}).second) throw StructuralError("duplicate decoder");
    }
    for (NodeId j = 0; j < m; ++j)
        for (NodeId i : net.demands(j))
            if (!seen.count({j, i}))
                throw StructuralError("no decoder for message " + std::to_string(j) + " at node " +
                                      std::to_string(i));

    for (const auto& [c, tau] : code.activation) {
        if (c >= net.components().size()) throw StructuralError("activation names an unknown component");
        if (net.component(c).kind != ChannelKind::one_bit)
            throw StructuralError("activation time given for non-1-bit component '" + net.component(c).name + "'");
        if (tau < 1 || tau > code.blocklength)
            throw StructuralError("activation time " + std::to_string(tau) + " outside [1, " +
                                  std::to_string(code.blocklength) + "]");
    }
    for (std::size_t c : net.one_bit_components())
        if (!code.activation.count(c))
            throw StructuralError("1-bit component '" + net.component(c).name + "' has no activation time");
}

namespace {

using Tuple = std::vector<Symbol>;

struct State {
    std::vector<std::vector<Tuple>> sent;
    std::vector<std::vector<Tuple>> received;
};

// Shared step machinery for sampled and exhaustive execution.
class Engine {
public:
    Engine(const NetworkModel& net, const NetworkCode& code) : net_(net), code_(code) {
        validate(net, code);
        const auto& comps = net.components();
        taus_.assign(comps.size(), 0);
        for (const auto& [c, tau] : code.activation) taus_[c] = tau;
        out_pos_.resize(comps.size());
        for (std::size_t c = 0; c < comps.size(); ++c) out_pos_[c].assign(comps[c].receivers.size(), 0);
        for (NodeId i = 0; i < net.node_count(); ++i) {
            const auto ports = net.output_ports(i);
            for (std::size_t p = 0; p < ports.size(); ++p) out_pos_[ports[p].component][ports[p].slot] = p;
        }
    }

    std::size_t blocklength() const { return code_.blocklength; }

    void check_messages(std::span<const Message> messages) const {
        if (messages.size() != net_.node_count())
            throw StructuralError("message tuple has " + std::to_string(messages.size()) + " entries");
        for (NodeId i = 0; i < messages.size(); ++i)
            if (messages[i] >= code_.message_counts[i])
                throw StructuralError("message " + std::to_string(messages[i]) + " out of range at node " +
                                      std::to_string(i));
    }

    State start() const {
        State s;
        s.sent.resize(net_.node_count());
        s.received.resize(net_.node_count());
        for (NodeId i = 0; i < net_.node_count(); ++i) {
            s.sent[i].reserve(code_.blocklength);
            s.received[i].reserve(code_.blocklength);
        }
        return s;
    }

    // Runs every encoder at time t and opens the receive tuples for t.
    std::vector<Tuple> fire_encoders(State& s, std::size_t t, std::span<const Message> messages) const {
        const auto& comps = net_.components();
        std::vector<Tuple> inputs(comps.size());
        for (std::size_t c = 0; c < comps.size(); ++c) inputs[c].assign(comps[c].senders.size(), 0);

        for (NodeId i = 0; i < net_.node_count(); ++i) {
            const History past(s.received[i].data(), t - 1);
            Tuple tuple = code_.encoders[i](t, past, messages[i]);
            const auto ports = net_.input_ports(i);
            if (tuple.size() != ports.size())
                throw StructuralError("node " + std::to_string(i) + " emitted " + std::to_string(tuple.size()) +
                                      " symbols at t=" + std::to_string(t) + ", expected " +
                                      std::to_string(ports.size()));
            for (std::size_t p = 0; p < ports.size(); ++p) {
                const auto& comp = comps[ports[p].component];
                const std::size_t size = comp.input_alphabet(ports[p].slot, t, taus_[ports[p].component]);
                if (tuple[p] >= size)
                    throw StructuralError("node " + std::to_string(i) + " sent symbol " + std::to_string(tuple[p]) +
                                          " into '" + comp.name + "' at t=" + std::to_string(t) +
                                          " (alphabet size " + std::to_string(size) + ")");
                inputs[ports[p].component][ports[p].slot] = tuple[p];
            }
            s.sent[i].push_back(std::move(tuple));
        }
        for (NodeId i = 0; i < net_.node_count(); ++i)
            s.received[i].emplace_back(net_.output_ports(i).size(), 0);
        return inputs;
    }

    Tuple fire_fixed(std::size_t c, const Tuple& in, std::size_t t) const {
        const auto& comp = net_.component(c);
        if (comp.kind == ChannelKind::one_bit) return {t == taus_[c] ? in[0] : 0};
        return comp.map(in);
    }

    void deliver(State& s, std::size_t c, const Tuple& out, std::size_t t) const {
        const auto& comp = net_.component(c);
        if (out.size() != comp.receivers.size())
            throw StructuralError("component '" + comp.name + "' produced " + std::to_string(out.size()) +
                                  " outputs, expected " + std::to_string(comp.receivers.size()));
        for (std::size_t r = 0; r < out.size(); ++r) {
            if (out[r] >= comp.output_alphabet(r, t, taus_[c]))
                throw StructuralError("component '" + comp.name + "' produced an out-of-alphabet symbol");
            s.received[comp.receivers[r]][t - 1][out_pos_[c][r]] = out[r];
        }
    }

    std::vector<Reconstruction> decode(const State& s, std::span<const Message> messages) const {
        std::vector<Reconstruction> out;
        out.reserve(code_.decoders.size());
        for (const auto& d : code_.decoders) {
            const History all(s.received[d.receiver].data(), s.received[d.receiver].size());
            out.push_back({d.source, d.receiver, d.decode(all, messages[d.receiver])});
        }
        return out;
    }

    // Sampled execution.
    State run(std::span<const Message> messages, std::mt19937_64& rng) const {
        State s = start();
        const auto& comps = net_.components();
        for (std::size_t t = 1; t <= code_.blocklength; ++t) {
            const auto inputs = fire_encoders(s, t, messages);
            for (std::size_t c = 0; c < comps.size(); ++c) {
                if (comps[c].kind != ChannelKind::stochastic) {
                    deliver(s, c, fire_fixed(c, inputs[c], t), t);
                    continue;
                }
                const auto support = comps[c].law(inputs[c]);
                double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
                const Outcome* pick = nullptr;
                for (const auto& o : support) {
                    if (o.probability <= 0.0) continue;
                    pick = &o;
                    if (u < o.probability) break;
                    u -= o.probability;
                }
                if (!pick) throw StructuralError("component '" + comps[c].name + "' has an empty support");
                deliver(s, c, pick->outputs, t);
            }
        }
        return s;
    }

    // Exhaustive execution: calls leaf(state, probability) for every path.
    template <typename Leaf>
    void explore(State& s, std::size_t t, double weight, std::span<const Message> messages, Leaf& leaf,
                 std::uint64_t& paths, std::uint64_t budget) const {
        if (t > code_.blocklength) {
            if (++paths > budget)
                throw BudgetExceeded("exact evaluation exceeds " + std::to_string(budget) + " execution paths");
            leaf(s, weight);
            return;
        }
        const auto inputs = fire_encoders(s, t, messages);
        std::vector<std::size_t> random;
        for (std::size_t c = 0; c < net_.components().size(); ++c) {
            if (net_.component(c).kind == ChannelKind::stochastic)
                random.push_back(c);
            else
                deliver(s, c, fire_fixed(c, inputs[c], t), t);
        }
        branch(s, t, weight, inputs, random, 0, messages, leaf, paths, budget);
    }

private:
    template <typename Leaf>
    void branch(State& s, std::size_t t, double weight, const std::vector<Tuple>& inputs,
                const std::vector<std::size_t>& random, std::size_t next, std::span<const Message> messages,
                Leaf& leaf, std::uint64_t& paths, std::uint64_t budget) const {
        if (next == random.size()) {
            explore(s, t + 1, weight, messages, leaf, paths, budget);
            return;
        }
        const std::size_t c = random[next];
        const auto support = net_.component(c).law(inputs[c]);
        for (const auto& o : support) {
            if (o.probability <= 0.0) continue;
            State copy = s;
            deliver(copy, c, o.outputs, t);
            branch(copy, t, weight * o.probability, inputs, random, next + 1, messages, leaf, paths, budget);
        }
    }

    const NetworkModel& net_;
    const NetworkCode& code_;
    std::vector<std::size_t> taus_;
    std::vector<std::vector<std::size_t>> out_pos_;
};

TranscriptRecord to_record(const NetworkModel& net, const NetworkCode& code, State&& s,
                           std::span<const Message> messages, std::vector<Reconstruction> recon) {
    TranscriptRecord r;
    r.nodes = net.node_count();
    r.blocklength = code.blocklength;
    r.messages.assign(messages.begin(), messages.end());
    r.sent = std::move(s.sent);
    r.received = std::move(s.received);
    r.reconstructions = std::move(recon);
    std::sort(r.reconstructions.begin(), r.reconstructions.end(), [](const auto& a, const auto& b) {
        return std::pair(a.source, a.receiver) < std::pair(b.source, b.receiver);
    });
    return r;
}

// Accumulates per-pair and per-source error mass and produces d_max / d_avg.
class ErrorTally {
public:
    ErrorTally(const NetworkModel& net, const NetworkCode& code)
        : net_(net), code_(code), pair_(code.decoders.size(), 0.0), source_(net.node_count(), 0.0) {}

    void add(std::span<const Reconstruction> recon, std::span<const Message> messages, double weight) {
        std::vector<bool> wrong(net_.node_count(), false);
        for (std::size_t d = 0; d < recon.size(); ++d) {
            if (recon[d].value != messages[recon[d].source]) {
                pair_[d] += weight;
                wrong[recon[d].source] = true;
            }
        }
        for (NodeId j = 0; j < wrong.size(); ++j)
            if (wrong[j]) source_[j] += weight;
    }

    ErrorReport finish(std::uint64_t tuples) const {
        ErrorReport r;
        r.tuples = tuples;
        r.pair_error = pair_;
        r.source_error = source_;
        if (tuples == 0) return r;
        for (auto& p : r.pair_error) p /= static_cast<double>(tuples);
        for (auto& p : r.source_error) p /= static_cast<double>(tuples);
        for (double p : r.pair_error) r.d_max = std::max(r.d_max, p);
        r.d_avg = average(r.source_error);
        return r;
    }

    // sum_j |M_j| Pr(E_j) / sum_j |M_j| over nodes with demanders.
    double average(std::span<const double> source_error) const {
        double num = 0.0, den = 0.0;
        for (NodeId j = 0; j < net_.node_count(); ++j) {
            if (net_.demands(j).empty()) continue;
            const double size = static_cast<double>(code_.message_counts[j]);
            num += size * source_error[j];
            den += size;
        }
        return den > 0.0 ? num / den : 0.0;
    }

private:
    const NetworkModel& net_;
    const NetworkCode& code_;
    std::vector<double> pair_;
    std::vector<double> source_;
};

template <typename ForEachTuple>
ErrorReport evaluate(const NetworkModel& net, const NetworkCode& code, ForEachTuple&& for_each_tuple,
                     std::uint64_t budget) {
    const Engine engine(net, code);
    ErrorTally tally(net, code);
    std::uint64_t paths = 0;
    std::uint64_t tuples = 0;
    for_each_tuple([&](std::span<const Message> messages) {
        engine.check_messages(messages);
        ++tuples;
        State s = engine.start();
        auto leaf = [&](const State& end, double weight) {
            const auto recon = engine.decode(end, messages);
            tally.add(recon, messages, weight);
        };
        engine.explore(s, 1, 1.0, messages, leaf, paths, budget);
    });
    return tally.finish(tuples);
}

}  // namespace

TranscriptRecord run_code(const NetworkModel& net, const NetworkCode& code, std::span<const Message> messages,
                          std::uint64_t seed) {
    const Engine engine(net, code);
    engine.check_messages(messages);
    std::mt19937_64 rng(seed);
    State s = engine.run(messages, rng);
    auto recon = engine.decode(s, messages);
    return to_record(net, code, std::move(s), messages, std::move(recon));
}

ErrorReport evaluate_exact(const NetworkModel& net, const NetworkCode& code,
                           std::span<const std::vector<Message>> tuples, std::uint64_t budget) {
    return evaluate(net, code,
                    [&](auto&& visit) {
                        for (const auto& t : tuples) visit(std::span<const Message>(t));
                    },
                    budget);
}

ErrorReport error_exhaustive(const NetworkModel& net, const NetworkCode& code, std::uint64_t budget) {
    validate(net, code);
    std::uint64_t total = 1;
    for (Message count : code.message_counts) {
        if (count > budget || total > budget / count)
            throw BudgetExceeded("message space exceeds the enumeration budget of " + std::to_string(budget) +
                                 "; use Monte Carlo");
        total *= count;
    }
    return evaluate(net, code,
                    [&](auto&& visit) {
                        std::vector<Message> tuple(code.message_counts.size(), 0);
                        for (std::uint64_t k = 0; k < total; ++k) {
                            visit(std::span<const Message>(tuple));
                            for (std::size_t i = tuple.size(); i-- > 0;) {
                                if (++tuple[i] < code.message_counts[i]) break;
                                tuple[i] = 0;
                            }
                        }
                    },
                    budget);
}

double max_error_exhaustive(const NetworkModel& net, const NetworkCode& code, std::uint64_t budget) {
    return error_exhaustive(net, code, budget).d_max;
}

double avg_error_exhaustive(const NetworkModel& net, const NetworkCode& code, std::uint64_t budget) {
    return error_exhaustive(net, code, budget).d_avg;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over seed and index.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

MonteCarloResult monte_carlo_error(const NetworkModel& net, const NetworkCode& code, std::uint64_t trials,
                                   std::uint64_t seed, const TranscriptObserver& observe) {
    if (trials == 0) throw std::invalid_argument("monte_carlo_error needs at least one trial");
    const Engine engine(net, code);
    MonteCarloResult result;
    result.trials = trials;
    result.pair_errors.assign(code.decoders.size(), 0);
    result.source_errors.assign(net.node_count(), 0);

    std::vector<Message> messages(net.node_count());
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(derive_seed(seed, trial));
        for (NodeId i = 0; i < messages.size(); ++i)
            messages[i] = std::uniform_int_distribution<Message>(0, code.message_counts[i] - 1)(rng);
        State s = engine.run(messages, rng);
        auto recon = engine.decode(s, messages);

        std::vector<bool> wrong(net.node_count(), false);
        for (std::size_t d = 0; d < recon.size(); ++d) {
            if (recon[d].value != messages[recon[d].source]) {
                ++result.pair_errors[d];
                wrong[recon[d].source] = true;
            }
        }
        for (NodeId j = 0; j < wrong.size(); ++j) result.source_errors[j] += wrong[j] ? 1 : 0;

        if (observe) observe(to_record(net, code, std::move(s), messages, std::move(recon)));
    }

    const double n = static_cast<double>(trials);
    for (auto e : result.pair_errors) result.d_max = std::max(result.d_max, static_cast<double>(e) / n);
    double num = 0.0, den = 0.0;
    for (NodeId j = 0; j < net.node_count(); ++j) {
        if (net.demands(j).empty()) continue;
        const double size = static_cast<double>(code.message_counts[j]);
        num += size * static_cast<double>(result.source_errors[j]) / n;
        den += size;
    }
    result.d_avg = den > 0.0 ? num / den : 0.0;
    return result;
}

bool dominates(const RateVector& a, const RateVector& b) {
    if (a.rates.size() != b.rates.size()) throw std::invalid_argument("rate vectors differ in length");
    for (std::size_t i = 0; i < a.rates.size(); ++i)
        if (a.rates[i] < b.rates[i]) return false;
    return true;
}

RateVector code_rate(const NetworkCode& code) {
    RateVector r;
    for (Message count : code.message_counts)
        r.rates.push_back(std::log2(static_cast<double>(count)) / static_cast<double>(code.blocklength));
    return r;
}

bool rates_consistent(const RateVector& rates, const NetworkModel& net) {
    if (rates.rates.size() != net.node_count()) return false;
    for (NodeId i = 0; i < net.node_count(); ++i)
        if ((rates.rates[i] == 0.0) != net.demands(i).empty()) return false;
    return true;
}

namespace {

void write_tuple(std::ostream& os, const Tuple& t) {
    if (t.empty()) {
        os << '-';
        return;
    }
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
}

Tuple read_tuple(std::string_view text) {
    Tuple t;
    if (text == "-") return t;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(',', start), text.size());
        const std::string piece(text.substr(start, end - start));
        if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad symbol '" + piece + "' in transcript");
        t.push_back(static_cast<Symbol>(std::stoul(piece)));
        start = end + 1;
    }
    return t;
}

[[noreturn]] void bad_transcript(const std::string& why) {
    throw std::invalid_argument("malformed transcript: " + why);
}

}  // namespace

std::string to_text(const TranscriptRecord& tr) {
    std::ostringstream os;
    os << "transcript m=" << tr.nodes << " n=" << tr.blocklength << '\n';
    os << "messages";
    for (Message m : tr.messages) os << ' ' << m;
    os << '\n';
    for (std::size_t t = 1; t <= tr.blocklength; ++t) {
        os << "t=" << t;
        for (NodeId i = 0; i < tr.nodes; ++i) {
            os << ' ' << i << ':';
            write_tuple(os, tr.sent[i][t - 1]);
            os << '/';
            write_tuple(os, tr.received[i][t - 1]);
        }
        os << '\n';
    }
    for (const auto& r : tr.reconstructions)
        os << "decode " << r.source << '>' << r.receiver << ' ' << r.value << '\n';
    return os.str();
}

TranscriptRecord parse_transcript(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    TranscriptRecord tr;

    if (!std::getline(in, line) || std::sscanf(line.c_str(), "transcript m=%zu n=%zu", &tr.nodes, &tr.blocklength) != 2)
        bad_transcript("missing header");
    tr.sent.assign(tr.nodes, {});
    tr.received.assign(tr.nodes, {});

    if (!std::getline(in, line) || line.rfind("messages", 0) != 0) bad_transcript("missing messages line");
    {
        std::istringstream ms(line.substr(8));
        Message m;
        while (ms >> m) tr.messages.push_back(m);
        if (tr.messages.size() != tr.nodes) bad_transcript("wrong message count");
    }

    for (std::size_t t = 1; t <= tr.blocklength; ++t) {
        if (!std::getline(in, line)) bad_transcript("missing step " + std::to_string(t));
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word != "t=" + std::to_string(t)) bad_transcript("expected step " + std::to_string(t));
        for (NodeId i = 0; i < tr.nodes; ++i) {
            if (!(ls >> word)) bad_transcript("step " + std::to_string(t) + " is short");
            const auto colon = word.find(':');
            const auto slash = word.find('/');
            if (colon == std::string::npos || slash == std::string::npos || word.substr(0, colon) != std::to_string(i))
                bad_transcript("bad node entry '" + word + "'");
            tr.sent[i].push_back(read_tuple(std::string_view(word).substr(colon + 1, slash - colon - 1)));
            tr.received[i].push_back(read_tuple(std::string_view(word).substr(slash + 1)));
        }
    }

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Reconstruction r;
        if (std::sscanf(line.c_str(), "decode %zu>%zu %" SCNu64, &r.source, &r.receiver, &r.value) != 3)
            bad_transcript("bad decode line '" + line + "'");
        tr.reconstructions.push_back(r);
    }
    return tr;
}

}  // namespace onebit::net
