#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "onebit/errors.hpp"
#include "onebit/network.hpp"
#include "onebit/networks.hpp"

#include <random>

using namespace onebit;
using namespace onebit::net;

namespace {

std::vector<Symbol> none() { return {}; }

// One symbol per step from tx1 (over {a, A}) and tx2 through the Dueck MAC.
NetworkCode phase1_code_nd(std::size_t n) {
    NetworkCode code;
    code.blocklength = n;
    code.message_counts = {Message{1} << n, Message{1} << n, 1};
    auto bit = [n](Message m, std::size_t t) { return static_cast<Symbol>((m >> (n - t)) & 1); };
    code.encoders = {
        [bit](std::size_t t, History, Message m) { return std::vector<Symbol>{bit(m, t) ? 2u : 0u}; },
        [bit](std::size_t t, History, Message m) { return std::vector<Symbol>{bit(m, t)}; },
        [](std::size_t, History, Message) { return none(); },
    };
    // rx tuple: (y31 in 0..5 with a,b,c,A,B,C, y32)
    code.decoders = {
        {node::tx1, node::rx,
         [](History rec, Message) {
             Message v = 0;
             for (const auto& tup : rec) v = 2 * v + (tup[0] >= 3 ? 1 : 0);
             return v;
         }},
        {node::tx2, node::rx,
         [](History rec, Message) {
             Message v = 0;
             for (const auto& tup : rec) v = 2 * v + tup[1];
             return v;
         }},
    };
    return code;
}

// Two nodes joined by one channel; the only decoder is given by `decode`.
NetworkModel pair_network(ComponentChannel c) {
    return NetworkModel(2, {std::move(c)}, {{1}, {}});
}

NetworkCode pair_code(Message count, std::size_t alphabet, Decoder decode) {
    NetworkCode code;
    code.blocklength = 1;
    code.message_counts = {count, 1};
    code.encoders = {
        [alphabet](std::size_t, History, Message m) { return std::vector<Symbol>{static_cast<Symbol>(m % alphabet)}; },
        [](std::size_t, History, Message) { return none(); },
    };
    code.decoders = {{0, 1, std::move(decode)}};
    return code;
}

ComponentChannel binary_symmetric(double p) {
    return ComponentChannel::stochastic("bsc", {0}, {2}, {1}, {2}, [p](std::span<const Symbol> in) {
        return std::vector<Outcome>{{{in[0]}, 1.0 - p}, {{in[0] ^ 1u}, p}};
    });
}

}  // namespace

TEST_CASE("built networks have the advertised shape") {
    const auto nd = build_dueck_network();
    CHECK(nd.node_count() == 3);
    CHECK(nd.demands(node::tx1) == std::vector<NodeId>{node::rx});
    CHECK(nd.demands(node::tx2) == std::vector<NodeId>{node::rx});
    CHECK(nd.demands(node::rx).empty());
    CHECK(nd.is_deterministic());

    const auto n0 = build_n0();
    CHECK(n0.node_count() == 4);
    CHECK(n0.demands(node::cf).empty());
    CHECK(n0.one_bit_components().empty());

    const auto np = build_nplus(10);
    CHECK(np.node_count() == 4);
    CHECK(np.one_bit_components().size() == 11);
    CHECK(np.find_component(kEdgeE).has_value());
    CHECK(np.output_ports(node::rx).size() == 2 + 10);
    CHECK(np.without_one_bit_channels().components().size() == n0.components().size());
    CHECK_THROWS_AS(build_nplus(0), std::invalid_argument);
}

TEST_CASE("malformed models are structural errors") {
    CHECK_THROWS_AS(NetworkModel(2, {ComponentChannel::pipe("p", 0, 5, 2)}, {{1}, {}}), StructuralError);
    CHECK_THROWS_AS(NetworkModel(2, {ComponentChannel::pipe("p", 0, 1, 2)}, {{0}, {}}), StructuralError);
    CHECK_THROWS_AS(NetworkModel(2, {ComponentChannel::pipe("p", 0, 1, 2)}, {{1}}), StructuralError);
}

TEST_CASE("empty-message smoke run on the MAC network") {
    NetworkCode code;
    code.blocklength = 3;
    code.message_counts = {1, 1, 1};
    code.encoders = {
        [](std::size_t, History, Message) { return std::vector<Symbol>{0}; },
        [](std::size_t, History, Message) { return std::vector<Symbol>{0}; },
        [](std::size_t, History, Message) { return none(); },
    };
    auto zero = [](History, Message) { return Message{0}; };
    code.decoders = {{node::tx1, node::rx, zero}, {node::tx2, node::rx, zero}};
    const auto net = build_dueck_network();
    const std::vector<Message> msgs{0, 0, 0};
    const auto tr = run_code(net, code, msgs);
    for (std::size_t t = 0; t < 3; ++t) CHECK(tr.received[node::rx][t] == std::vector<Symbol>{2, 0});  // (c, 0)
    CHECK(max_error_exhaustive(net, code) == 0.0);
}

TEST_CASE("phase-1 style code on the MAC is zero error") {
    const auto net = build_dueck_network();
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto rep = error_exhaustive(net, phase1_code_nd(n));
        CHECK(rep.d_max == 0.0);
        CHECK(rep.d_avg == 0.0);
        CHECK(rep.tuples == (1u << (2 * n)));
    }
}

TEST_CASE("fixed decoder over four messages errs with probability 3/4") {
    const auto net = pair_network(ComponentChannel::pipe("p", 0, 1, 4));
    const auto code = pair_code(4, 4, [](History, Message) { return Message{1}; });
    CHECK(max_error_exhaustive(net, code) == doctest::Approx(0.75));
    CHECK(avg_error_exhaustive(net, code) == doctest::Approx(0.75));
}

TEST_CASE("single message never errs") {
    const auto net = pair_network(ComponentChannel::pipe("p", 0, 1, 4));
    const auto code = pair_code(1, 4, [](History, Message) { return Message{0}; });
    CHECK(max_error_exhaustive(net, code) == 0.0);
}

TEST_CASE("always-wrong decoder") {
    const auto net = pair_network(ComponentChannel::pipe("p", 0, 1, 4));
    const auto code = pair_code(4, 4, [](History rec, Message) { return Message{(rec[0][0] + 1) % 4}; });
    CHECK(max_error_exhaustive(net, code) == 1.0);
    CHECK(avg_error_exhaustive(net, code) == 1.0);
    const auto mc = monte_carlo_error(net, code, 500, 3);
    CHECK(mc.d_max == 1.0);
    CHECK(mc.pair_errors[0] == 500);
}

TEST_CASE("stochastic channel: exact support enumeration and sampling") {
    const auto net = pair_network(binary_symmetric(0.25));
    const auto code = pair_code(2, 2, [](History rec, Message) { return Message{rec[0][0]}; });
    const auto rep = error_exhaustive(net, code);
    CHECK(rep.d_max == doctest::Approx(0.25));
    CHECK(rep.d_avg == doctest::Approx(0.25));
    const auto a = monte_carlo_error(net, code, 20000, 11);
    const auto b = monte_carlo_error(net, code, 20000, 11);
    CHECK(a.pair_errors == b.pair_errors);
    CHECK(a.d_max == doctest::Approx(0.25).epsilon(0.1));
    const std::vector<Message> m{1, 0};
    CHECK(run_code(net, code, m, 5) == run_code(net, code, m, 5));
}

TEST_CASE("budget refusal") {
    const auto net = build_dueck_network();
    CHECK_THROWS_AS(error_exhaustive(net, phase1_code_nd(4), 100), BudgetExceeded);

    NetworkCode noisy;
    noisy.blocklength = 12;
    noisy.message_counts = {2, 1};
    noisy.encoders = {[](std::size_t, History, Message m) { return std::vector<Symbol>{static_cast<Symbol>(m)}; },
                      [](std::size_t, History, Message) { return none(); }};
    noisy.decoders = {{0, 1, [](History rec, Message) { return Message{rec[0][0]}; }}};
    const std::vector<std::vector<Message>> tuples{{0, 0}};
    CHECK_THROWS_AS(evaluate_exact(pair_network(binary_symmetric(0.1)), noisy, tuples, 1000), BudgetExceeded);
}

TEST_CASE("encoders see exactly the past, decoders the whole block") {
    // Node 1 echoes what it received at t-1 back to node 0; a causality breach
    // would show up as a history of the wrong length.
    std::vector<ComponentChannel> comps{ComponentChannel::pipe("fwd", 0, 1, 4), ComponentChannel::pipe("back", 1, 0, 4)};
    const NetworkModel net(2, std::move(comps), {{1}, {}});
    NetworkCode code;
    code.blocklength = 5;
    code.message_counts = {4, 1};
    bool causal = true;
    code.encoders = {
        [&causal](std::size_t t, History past, Message m) {
            causal = causal && past.size() == t - 1;
            return std::vector<Symbol>{static_cast<Symbol>((m + t) % 4)};
        },
        [&causal](std::size_t t, History past, Message) {
            causal = causal && past.size() == t - 1;
            return std::vector<Symbol>{t == 1 ? 0u : past[t - 2][0]};
        },
    };
    code.decoders = {{0, 1, [&causal](History rec, Message) {
                          causal = causal && rec.size() == 5;
                          return Message{(rec[0][0] + 3) % 4};
                      }}};
    for (Message m = 0; m < 4; ++m) {
        const std::vector<Message> msgs{m, 0};
        const auto tr = run_code(net, code, msgs);
        for (std::size_t t = 2; t <= 5; ++t) CHECK(tr.received[0][t - 1] == tr.received[1][t - 2]);
        CHECK(tr.reconstructions.at(0).value == m);
    }
    CHECK(causal);
}

TEST_CASE("alphabet and arity violations are structural errors") {
    const auto net = pair_network(ComponentChannel::pipe("p", 0, 1, 2));
    const std::vector<Message> m{0, 0};
    auto wide = pair_code(2, 5, [](History, Message) { return Message{0}; });
    wide.encoders[0] = [](std::size_t, History, Message) { return std::vector<Symbol>{4}; };
    CHECK_THROWS_AS(run_code(net, wide, m), StructuralError);
    auto arity = pair_code(2, 2, [](History, Message) { return Message{0}; });
    arity.encoders[0] = [](std::size_t, History, Message) { return std::vector<Symbol>{0, 0}; };
    CHECK_THROWS_AS(run_code(net, arity, m), StructuralError);
    const std::vector<Message> out_of_range{7, 0};
    CHECK_THROWS_AS(run_code(net, pair_code(2, 2, [](History, Message) { return Message{0}; }), out_of_range),
                    StructuralError);
}

TEST_CASE("1-bit channel carries one bit at tau and nothing else") {
    const NetworkModel net(2, {ComponentChannel::one_bit("e", 0, 1)}, {{1}, {}});
    NetworkCode code;
    code.blocklength = 4;
    code.message_counts = {2, 1};
    code.activation = {{0, 3}};
    code.encoders = {[](std::size_t t, History, Message m) { return std::vector<Symbol>{t == 3 ? static_cast<Symbol>(m) : 0u}; },
                     [](std::size_t, History, Message) { return none(); }};
    code.decoders = {{0, 1, [](History rec, Message) { return Message{rec[2][0]}; }}};
    CHECK(max_error_exhaustive(net, code) == 0.0);
    const std::vector<Message> one{1, 0};
    const auto tr = run_code(net, code, one);
    for (std::size_t t = 1; t <= 4; ++t) CHECK(tr.received[1][t - 1][0] == (t == 3 ? 1u : 0u));

    auto chatty = code;
    chatty.encoders[0] = [](std::size_t, History, Message m) { return std::vector<Symbol>{static_cast<Symbol>(m)}; };
    CHECK_THROWS_AS(run_code(net, chatty, one), StructuralError);

    auto untimed = code;
    untimed.activation.clear();
    CHECK_THROWS_AS(validate(net, untimed), StructuralError);
    auto late = code;
    late.activation = {{0, 5}};
    CHECK_THROWS_AS(validate(net, late), StructuralError);
}

TEST_CASE("message-set invariants") {
    const auto net = pair_network(ComponentChannel::pipe("p", 0, 1, 2));
    auto code = pair_code(2, 2, [](History rec, Message) { return Message{rec[0][0]}; });
    code.message_counts = {2, 2};
    CHECK_THROWS_AS(validate(net, code), StructuralError);
    code.message_counts = {1, 1};
    CHECK_NOTHROW(validate(net, code));
    code.message_counts = {2, 1};
    code.decoders.clear();
    CHECK_THROWS_AS(validate(net, code), StructuralError);
}

TEST_CASE("d_avg never exceeds d_max on random noisy codes") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_real_distribution<double> p01(0.0, 0.5);
        std::vector<ComponentChannel> comps{binary_symmetric(p01(rng))};
        comps[0].name = "bsc0";
        auto second = binary_symmetric(p01(rng));
        second.name = "bsc1";
        second.senders = {1};
        second.receivers = {2};
        comps.push_back(second);
        const NetworkModel net(3, std::move(comps), {{2}, {2}, {}});
        const Message c0 = 1 + rng() % 2, c1 = 1 + rng() % 2;
        NetworkCode code;
        code.blocklength = 2;
        code.message_counts = {c0, c1, 1};
        // node 1 relays what it heard from node 0 at step 1, then its own message
        code.encoders = {
            [](std::size_t, History, Message m) { return std::vector<Symbol>{static_cast<Symbol>(m)}; },
            [](std::size_t t, History past, Message m) {
                return std::vector<Symbol>{t == 1 ? static_cast<Symbol>(m) : past[0][0]};
            },
            [](std::size_t, History, Message) { return none(); },
        };
        code.decoders = {{0, 2, [](History rec, Message) { return Message{rec[1][0]}; }},
                         {1, 2, [c1](History rec, Message) { return Message{rec[0][0] % c1}; }}};
        const auto rep = error_exhaustive(net, code);
        CHECK(rep.d_avg <= rep.d_max + 1e-12);
        CHECK(rep.d_max <= 1.0);
    }
}

TEST_CASE("transcript text round trip") {
    const auto net = build_dueck_network();
    const auto code = phase1_code_nd(3);
    for (Message a = 0; a < 8; ++a)
        for (Message b = 0; b < 8; b += 3) {
            const std::vector<Message> msgs{a, b, 0};
            const auto tr = run_code(net, code, msgs);
            CHECK(parse_transcript(to_text(tr)) == tr);
        }
    CHECK_THROWS_AS(parse_transcript("not a transcript"), std::invalid_argument);
}

TEST_CASE("rates") {
    const auto code = phase1_code_nd(4);
    const auto r = code_rate(code);
    CHECK(r.rates == std::vector<double>{1.0, 1.0, 0.0});
    CHECK(rates_consistent(r, build_dueck_network()));
    CHECK_FALSE(rates_consistent(RateVector{{1.0, 0.0, 0.0}}, build_dueck_network()));
    CHECK(dominates(RateVector{{1.0, 2.0}}, RateVector{{1.0, 1.5}}));
    CHECK_FALSE(dominates(RateVector{{1.0, 1.0}}, RateVector{{1.1, 0.0}}));
    CHECK_THROWS_AS(dominates(RateVector{{1.0}}, RateVector{{1.0, 1.0}}), std::invalid_argument);
}
