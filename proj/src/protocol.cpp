#include "onebit/protocol.hpp"

#include "onebit/errors.hpp"
#include "onebit/networks.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace onebit::protocol {

using dueck::Sym1;
using dueck::Sym2;
using dueck::SymY1;

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

bool mul_overflows(std::uint64_t a, std::uint64_t b) { return a != 0 && b > kU64Max / a; }

// Smallest j with 2^j >= x, for x >= 1.
std::size_t ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(x - 1)); }

}  // namespace

std::uint64_t list_bound_for(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    // 8/delta is often an integer in exact arithmetic (delta = 0.02 -> 400); absorb rounding noise.
    const double ratio = 8.0 / delta;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * nearest) return static_cast<std::uint64_t>(nearest);
    return static_cast<std::uint64_t>(std::ceil(ratio));
}

std::size_t cf_bits_for(double delta) {
    // ceil(log2 x) == ceil(log2 ceil(x)) because powers of two are integers.
    return ceil_log2(list_bound_for(delta)) + 1;
}

ProtocolParams derive_params(std::size_t n, double delta, std::optional<std::uint64_t> cap) {
    if (n == 0 || n % 2 != 0) throw std::invalid_argument("n must be a positive even integer, got " + std::to_string(n));
    if (n > 62) throw std::invalid_argument("n must be at most 62");
    if (!(delta > 0.0 && delta <= 0.5)) throw std::invalid_argument("delta must lie in (0, 1/2]");
    if (cap && *cap == 0) throw std::invalid_argument("cap must be at least 1");

    ProtocolParams p;
    p.n = n;
    p.delta = delta;
    p.k = cf_bits_for(delta);
    p.list_bound = list_bound_for(delta);
    p.tx1_phase1 = 1ull << n;
    p.tx2_phase1 = 1ull << n;
    p.tx2_phase2 = 1ull << n;

    const long double exponent = (1.5L - static_cast<long double>(delta)) * static_cast<long double>(n);
    p.nominal_tx1_phase2 = exponent >= 64.0L ? kU64Max : static_cast<std::uint64_t>(std::floor(std::pow(2.0L, exponent)));
    p.tx1_phase2 = cap ? std::min(*cap, p.nominal_tx1_phase2) : p.nominal_tx1_phase2;
    p.desk_scaled = p.tx1_phase2 < p.nominal_tx1_phase2;

    if (mul_overflows(p.tx1_phase1, p.tx1_phase2) || mul_overflows(p.tx2_phase1, p.tx2_phase2))
        throw std::invalid_argument("message space at n=" + std::to_string(n) +
                                    " does not fit in 64 bits; lower n or pass a cap");
    return p;
}

MessageSplit split_messages(net::Message m1, net::Message m2, const ProtocolParams& p) {
    if (m1 >= p.tx1_messages() || m2 >= p.tx2_messages()) throw std::out_of_range("message out of range");
    return {m1 / p.tx1_phase2, m1 % p.tx1_phase2, m2 / p.tx2_phase2, m2 % p.tx2_phase2};
}

std::pair<net::Message, net::Message> join_messages(const MessageSplit& s, const ProtocolParams& p) {
    if (s.m11 >= p.tx1_phase1 || s.m12 >= p.tx1_phase2 || s.m21 >= p.tx2_phase1 || s.m22 >= p.tx2_phase2)
        throw std::out_of_range("message part out of range");
    return {s.m11 * p.tx1_phase2 + s.m12, s.m21 * p.tx2_phase2 + s.m22};
}

Codebook::Codebook(std::size_t n, std::vector<X1Word> words, std::uint64_t seed)
    : n_(n), seed_(seed), words_(std::move(words)) {
    index_.reserve(words_.size());
    for (std::uint64_t w = 0; w < words_.size(); ++w) {
        if (words_[w].size() != n_)
            throw std::invalid_argument("codeword " + std::to_string(w) + " has length " +
                                        std::to_string(words_[w].size()) + ", expected " + std::to_string(n_));
        if (!index_.emplace(words_[w], w).second)
            throw std::invalid_argument("codeword " + std::to_string(w) + " repeats an earlier codeword");
    }
}

std::optional<std::uint64_t> Codebook::find(const X1Word& x1) const {
    const auto it = index_.find(x1);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string to_text(const Codebook& codebook) {
    std::string out = "codebook n=" + std::to_string(codebook.blocklength()) +
                      " size=" + std::to_string(codebook.size()) + " seed=" + std::to_string(codebook.seed()) + "\n";
    for (const auto& w : codebook.words()) {
        out += dueck::to_string(w);
        out += '\n';
    }
    return out;
}

Codebook parse_codebook(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t n = 0;
    std::uint64_t size = 0, seed = 0;
    if (!std::getline(in, line)) throw std::invalid_argument("empty codebook file");
    {
        std::istringstream hs(line);
        std::string tag, fn, fs, fseed;
        hs >> tag >> fn >> fs >> fseed;
        if (tag != "codebook" || fn.rfind("n=", 0) != 0 || fs.rfind("size=", 0) != 0 || fseed.rfind("seed=", 0) != 0)
            throw std::invalid_argument("bad codebook header '" + line + "'");
        try {
            n = std::stoul(fn.substr(2));
            size = std::stoull(fs.substr(5));
            seed = std::stoull(fseed.substr(5));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad codebook header '" + line + "'");
        }
    }
    std::vector<X1Word> words;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        words.push_back(dueck::parse_x1(line));
    }
    if (words.size() != size)
        throw std::invalid_argument("codebook header announces " + std::to_string(size) + " words, found " +
                                    std::to_string(words.size()));
    return Codebook(n, std::move(words), seed);
}

namespace {

X1Word word_from_index(std::uint64_t index, std::size_t n) {
    X1Word w(n);
    for (std::size_t i = n; i-- > 0;) {
        w[i] = static_cast<Sym1>(index & 3u);
        index >>= 2;
    }
    return w;
}

}  // namespace

Codebook generate_codebook(const ProtocolParams& params, std::uint64_t seed) {
    const std::size_t n = params.n;
    const std::uint64_t count = params.tx1_phase2;
    if (count > kMaxCodebookWords)
        throw std::invalid_argument("|M12| = " + std::to_string(count) + " exceeds the materializable limit " +
                                    std::to_string(kMaxCodebookWords) + "; pass a cap");
    const bool small = n < 32;
    const std::uint64_t space = small ? (1ull << (2 * n)) : kU64Max;
    if (small && count > space)
        throw std::invalid_argument("|M12| = " + std::to_string(count) + " exceeds 4^n = " + std::to_string(space));

    std::mt19937_64 rng(seed);
    std::vector<X1Word> words;
    words.reserve(count);

    if (n <= 12 && count * 2 > space) {
        // Dense: partial Fisher-Yates over all 4^n indices.
        std::vector<std::uint64_t> pool(space);
        std::iota(pool.begin(), pool.end(), 0);
        for (std::uint64_t i = 0; i < count; ++i) {
            const auto j = std::uniform_int_distribution<std::uint64_t>(i, space - 1)(rng);
            std::swap(pool[i], pool[j]);
            words.push_back(word_from_index(pool[i], n));
        }
    } else {
        std::unordered_set<X1Word, dueck::WordHash> seen;
        seen.reserve(count);
        std::uniform_int_distribution<int> symbol(0, 3);
        while (words.size() < count) {
            X1Word w(n);
            for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<Sym1>(symbol(rng));
            if (seen.insert(w).second) words.push_back(std::move(w));
        }
    }
    return Codebook(n, std::move(words), seed);
}

std::size_t list_size(const Y1Word& y, const Codebook& codebook) {
    std::size_t count = 0;
    dueck::for_each_preimage(y, [&](const X1Word& x) {
        if (codebook.find(x)) ++count;
        if (codebook.find(dueck::toggle(x))) ++count;
    });
    return count;
}

namespace {

DecodingList build_list(const Y1Word& y, const Codebook& codebook) {
    DecodingList list;
    dueck::for_each_preimage(y, [&](const X1Word& x) {
        if (const auto w = codebook.find(x)) list.entries.push_back({*w, false});
        if (const auto w = codebook.find(dueck::toggle(x))) list.entries.push_back({*w, true});
    });
    return list;
}

}  // namespace

DecodingList list_decode(const Y1Word& y, const Codebook& codebook) {
    if (!dueck::is_good(y))
        throw ContractError("list_decode called on a word with " + std::to_string(dueck::contraction_count(y)) +
                            " contracted symbols out of " + std::to_string(y.size()));
    return build_list(y, codebook);
}

CodebookCheck verify_codebook(const Codebook& codebook, const ProtocolParams& params, VerifyMode mode,
                              std::uint64_t samples, std::uint64_t seed) {
    const std::size_t n = params.n;
    if (codebook.blocklength() != n) throw std::invalid_argument("codebook blocklength differs from params");
    if (mode == VerifyMode::automatic) mode = n <= 8 ? VerifyMode::exhaustive : VerifyMode::sampled;

    CodebookCheck check;
    check.mode = mode;
    auto measure = [&](const Y1Word& y) {
        const std::size_t size = list_size(y, codebook);
        ++check.words_checked;
        if (size > check.max_list || check.worst.size() == 0) {
            check.max_list = std::max(check.max_list, size);
            check.worst = y;
        }
    };

    if (mode == VerifyMode::exhaustive) {
        if (n > 8) throw BudgetExceeded("exhaustive codebook verification is limited to n <= 8");
        Y1Word y(n, SymY1::a);
        for (bool more = true; more;) {
            if (dueck::is_good(y)) measure(y);
            more = false;
            for (std::size_t pos = n; pos-- > 0;) {
                const auto next = dueck::code(y[pos]) + 1;
                if (next < 6) {
                    y[pos] = static_cast<SymY1>(next);
                    more = true;
                    break;
                }
                y[pos] = SymY1::a;
            }
        }
    } else {
        auto visit = [&](std::uint64_t w, std::uint64_t x2value) {
            const X2Word x2 = bits_word(x2value, n);
            for (const X1Word& x : {codebook.word(w), dueck::toggle(codebook.word(w))}) {
                const auto y = dueck::w_block(x, x2).y;
                if (dueck::is_good(y)) measure(y);
            }
        };
        const bool all = n < 63 && !mul_overflows(codebook.size(), 1ull << n) && codebook.size() * (1ull << n) <= samples;
        if (all) {
            for (std::uint64_t w = 0; w < codebook.size(); ++w)
                for (std::uint64_t v = 0; v < (1ull << n); ++v) visit(w, v);
        } else {
            std::mt19937_64 rng(seed);
            for (std::uint64_t s = 0; s < samples; ++s) {
                const auto w = std::uniform_int_distribution<std::uint64_t>(0, codebook.size() - 1)(rng);
                const auto v = std::uniform_int_distribution<std::uint64_t>(0, (1ull << n) - 1)(rng);
                visit(w, v);
            }
        }
    }
    check.ok = check.max_list <= params.list_bound;
    return check;
}

VerifiedCodebook generate_verified_codebook(const ProtocolParams& params, std::uint64_t seed,
                                            std::size_t max_attempts, VerifyMode mode) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Codebook book = generate_codebook(params, seed + attempt);
        const CodebookCheck check = verify_codebook(book, params, mode, 4096, seed + attempt);
        if (check.ok) return {std::move(book), check, attempt + 1};
    }
    throw std::runtime_error("no codebook passed verification within " + std::to_string(max_attempts) + " seeds");
}

X2Word bits_word(std::uint64_t value, std::size_t n) {
    X2Word w(n);
    for (std::size_t i = n; i-- > 0;) {
        w[i] = (value & 1u) ? Sym2::one : Sym2::zero;
        value >>= 1;
    }
    return w;
}

std::uint64_t word_value(const X2Word& bits) {
    std::uint64_t v = 0;
    for (Sym2 s : bits) v = (v << 1) | dueck::code(s);
    return v;
}

Phase1Words encode_phase1(std::uint64_t m11, std::uint64_t m21, const ProtocolParams& params) {
    if (m11 >= params.tx1_phase1 || m21 >= params.tx2_phase1) throw std::out_of_range("phase-1 message out of range");
    if (params.tx1_phase1 > (1ull << params.n) || params.tx2_phase1 > (1ull << params.n))
        throw std::invalid_argument("phase-1 message sets exceed 2^n");
    Phase1Words out{X1Word(params.n), bits_word(m21, params.n)};
    const X2Word pattern = bits_word(m11, params.n);
    for (std::size_t i = 0; i < params.n; ++i) out.x1[i] = pattern[i] == Sym2::one ? Sym1::A : Sym1::a;
    return out;
}

std::pair<std::uint64_t, std::uint64_t> decode_phase1(const Y1Word& y, const X2Word& y2) {
    if (y.size() != y2.size()) throw std::invalid_argument("decode_phase1: output words differ in length");
    std::uint64_t m11 = 0, m21 = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const auto s = dueck::phase1_decode(y[i], y2[i]);
        m11 = (m11 << 1) | (s.x1 == Sym1::A ? 1u : 0u);
        m21 = (m21 << 1) | dueck::code(s.x2);
    }
    return {m11, m21};
}

std::vector<net::Symbol> cf_bits(const CfMessage& message, std::size_t k) {
    if (k == 0) throw ContractError("cf message needs at least one bit");
    const std::size_t index_bits = k - 1;
    if (message.index == 0 || (index_bits < 64 && message.index - 1 >= (1ull << index_bits)))
        throw ContractError("list index " + std::to_string(message.index) + " does not fit in " +
                            std::to_string(index_bits) + " bits");
    std::vector<net::Symbol> bits(k, 0);
    bits[0] = message.b ? 1 : 0;
    std::uint64_t v = message.index - 1;
    for (std::size_t i = k; i-- > 1;) {
        bits[i] = static_cast<net::Symbol>(v & 1u);
        v >>= 1;
    }
    return bits;
}

CfMessage parse_cf_bits(std::span<const net::Symbol> bits) {
    if (bits.empty()) throw ContractError("empty cf message");
    CfMessage m;
    m.b = bits[0] != 0;
    std::uint64_t v = 0;
    for (std::size_t i = 1; i < bits.size(); ++i) v = (v << 1) | (bits[i] & 1u);
    m.index = v + 1;
    return m;
}

CfDecision cf_decide(const X1Word& x1_base, const X2Word& x2, const Codebook& codebook,
                     const ProtocolParams& params, CfRule rule) {
    const auto w = codebook.find(x1_base);
    if (!w) throw ContractError("cf received a word that is not in the codebook");

    CfDecision d;
    d.y = dueck::w_block(x1_base, x2).y;
    d.message.b = rule != CfRule::never_toggle && !dueck::is_good(d.y);
    if (d.message.b) d.y = dueck::w_block(dueck::toggle(x1_base), x2).y;

    d.list = build_list(d.y, codebook);
    if (d.list.size() > params.list_bound)
        throw ContractError("decoding list of size " + std::to_string(d.list.size()) + " exceeds the bound " +
                            std::to_string(params.list_bound) + "; codebook not verified");
    const ListEntry sent{*w, d.message.b};
    const auto it = std::find(d.list.entries.begin(), d.list.entries.end(), sent);
    if (it == d.list.entries.end()) throw std::logic_error("transmitted codeword missing from its own list");
    d.message.index = static_cast<std::uint64_t>(it - d.list.entries.begin()) + 1;
    if (rule == CfRule::index_shift) d.message.index += 1;
    return d;
}

CfMessage cf_compute(const X1Word& x1_base, const X2Word& x2, const Codebook& codebook,
                     const ProtocolParams& params) {
    return cf_decide(x1_base, x2, codebook, params).message;
}

X1Word encode_phase2_node1(std::uint64_t m12, bool b, const Codebook& codebook) {
    if (m12 >= codebook.size()) throw std::out_of_range("phase-2 message out of range");
    return b ? dueck::toggle(codebook.word(m12)) : codebook.word(m12);
}

std::uint64_t decode_phase2_node1(const Y1Word& y, const CfMessage& message, const Codebook& codebook) {
    if (!dueck::is_good(y)) throw DecodeError("phase-2 word is not good");
    const DecodingList list = build_list(y, codebook);
    if (message.index < 1 || message.index > list.size())
        throw DecodeError("cf index " + std::to_string(message.index) + " outside a list of " +
                          std::to_string(list.size()));
    return list.entries[message.index - 1].w;
}

namespace {

std::size_t position_of(std::span<const net::PortRef> ports, net::PortRef target, const char* what) {
    for (std::size_t p = 0; p < ports.size(); ++p)
        if (ports[p] == target) return p;
    throw StructuralError(std::string("network has no port for ") + what);
}

std::size_t require_component(const net::NetworkModel& network, const std::string& name, bool one_bit) {
    const auto c = network.find_component(name);
    if (!c || (network.component(*c).kind == net::ChannelKind::one_bit) != one_bit)
        throw StructuralError("protocol requires component '" + name + "'" +
                              (one_bit ? " (the 1-bit channels of N_plus)" : ""));
    return *c;
}

// Port positions the protocol needs, resolved once against the model.
struct Wiring {
    std::size_t tx1_width, tx1_x1, tx1_pipe, tx1_e;
    std::size_t tx2_width, tx2_x2, tx2_pipe;
    std::size_t cf_width, cf_e, cf_pipe1, cf_pipe2;
    std::vector<std::size_t> cf_f;
    std::size_t rx_y31, rx_y32;
    std::vector<std::size_t> rx_f;
};

Wiring wire(const net::NetworkModel& network, std::size_t k) {
    using net::node::cf;
    using net::node::rx;
    using net::node::tx1;
    using net::node::tx2;
    if (network.node_count() != 4) throw StructuralError("protocol runs on a 4-node network");
    const auto dueck_c = require_component(network, net::kDueckComponent, false);
    const auto pipe1 = require_component(network, "pipe1", false);
    const auto pipe2 = require_component(network, "pipe2", false);
    const auto e = require_component(network, net::kEdgeE, true);

    Wiring w{};
    w.tx1_width = network.input_ports(tx1).size();
    w.tx1_x1 = position_of(network.input_ports(tx1), {dueck_c, 0}, "tx1 -> dueck");
    w.tx1_pipe = position_of(network.input_ports(tx1), {pipe1, 0}, "tx1 -> cf");
    w.tx1_e = position_of(network.output_ports(tx1), {e, 0}, "e at tx1");
    w.tx2_width = network.input_ports(tx2).size();
    w.tx2_x2 = position_of(network.input_ports(tx2), {dueck_c, 1}, "tx2 -> dueck");
    w.tx2_pipe = position_of(network.input_ports(tx2), {pipe2, 0}, "tx2 -> cf");
    w.cf_width = network.input_ports(cf).size();
    w.cf_e = position_of(network.input_ports(cf), {e, 0}, "cf -> e");
    w.cf_pipe1 = position_of(network.output_ports(cf), {pipe1, 0}, "pipe1 at cf");
    w.cf_pipe2 = position_of(network.output_ports(cf), {pipe2, 0}, "pipe2 at cf");
    w.rx_y31 = position_of(network.output_ports(rx), {dueck_c, 0}, "y31 at rx");
    w.rx_y32 = position_of(network.output_ports(rx), {dueck_c, 1}, "y32 at rx");
    for (std::size_t j = 1; j <= k; ++j) {
        const auto f = require_component(network, "f" + std::to_string(j), true);
        w.cf_f.push_back(position_of(network.input_ports(cf), {f, 0}, "cf -> f"));
        w.rx_f.push_back(position_of(network.output_ports(rx), {f, 0}, "f at rx"));
    }
    return w;
}

}  // namespace

net::NetworkCode assemble_code(const ProtocolParams& params, const Codebook& codebook,
                               const net::NetworkModel& network, CfRule rule) {
    if (codebook.blocklength() != params.n || codebook.size() != params.tx1_phase2)
        throw std::invalid_argument("codebook does not match protocol parameters");
    const Wiring w = wire(network, params.k);
    const auto book = std::make_shared<const Codebook>(codebook);
    const std::size_t n = params.n;

    net::NetworkCode code;
    code.blocklength = params.total_blocklength();
    for (std::size_t c : network.one_bit_components()) code.activation[c] = params.activation_time();
    code.message_counts = {params.tx1_messages(), params.tx2_messages(), 1, 1};
    code.encoders.resize(4);
    const std::uint64_t invalid_tx1 = params.tx1_messages();

    code.encoders[net::node::tx1] = [=](std::size_t t, net::History past, net::Message m1) {
        const auto parts = split_messages(m1, 0, params);
        std::vector<net::Symbol> out(w.tx1_width, 0);
        if (t <= n) {
            out[w.tx1_x1] = dueck::code(encode_phase1(parts.m11, 0, params).x1[t - 1]);
            out[w.tx1_pipe] = dueck::code(book->word(parts.m12)[t - 1]);
        } else if (t == n + 1) {
            out[w.tx1_x1] = dueck::code(Sym1::a);
        } else {
            const bool b = past[n][w.tx1_e] != 0;
            out[w.tx1_x1] = dueck::code(encode_phase2_node1(parts.m12, b, *book)[t - n - 2]);
        }
        return out;
    };

    code.encoders[net::node::tx2] = [=](std::size_t t, net::History, net::Message m2) {
        const auto parts = split_messages(0, m2, params);
        std::vector<net::Symbol> out(w.tx2_width, 0);
        const X2Word phase2 = bits_word(parts.m22, n);
        if (t <= n) {
            out[w.tx2_x2] = dueck::code(bits_word(parts.m21, n)[t - 1]);
            out[w.tx2_pipe] = dueck::code(phase2[t - 1]);
        } else if (t >= n + 2) {
            out[w.tx2_x2] = dueck::code(phase2[t - n - 2]);
        }
        return out;
    };

    code.encoders[net::node::rx] = [width = network.input_ports(net::node::rx).size()](
                                       std::size_t, net::History, net::Message) {
        return std::vector<net::Symbol>(width, 0);
    };

    code.encoders[net::node::cf] = [=](std::size_t t, net::History past, net::Message) {
        std::vector<net::Symbol> out(w.cf_width, 0);
        if (t != n + 1) return out;
        X1Word x1(n);
        X2Word x2(n);
        for (std::size_t s = 0; s < n; ++s) {
            x1[s] = static_cast<Sym1>(past[s][w.cf_pipe1]);
            x2[s] = static_cast<Sym2>(past[s][w.cf_pipe2]);
        }
        const CfDecision d = cf_decide(x1, x2, *book, params, rule);
        const auto bits = cf_bits(d.message, params.k);
        out[w.cf_e] = bits[0];
        for (std::size_t j = 0; j < params.k; ++j) out[w.cf_f[j]] = bits[j];
        return out;
    };

    code.decoders.push_back({net::node::tx1, net::node::rx, [=](net::History rec, net::Message) -> net::Message {
        Y1Word y1(n), y2w(n);
        X2Word z1(n), z2(n);
        for (std::size_t s = 0; s < n; ++s) {
            y1[s] = static_cast<SymY1>(rec[s][w.rx_y31]);
            z1[s] = static_cast<Sym2>(rec[s][w.rx_y32]);
            y2w[s] = static_cast<SymY1>(rec[n + 1 + s][w.rx_y31]);
        }
        std::vector<net::Symbol> fbits;
        for (std::size_t idx : w.rx_f) fbits.push_back(rec[n][idx]);
        try {
            const auto m11 = decode_phase1(y1, z1).first;
            const auto m12 = decode_phase2_node1(y2w, parse_cf_bits(fbits), *book);
            return m11 * params.tx1_phase2 + m12;
        } catch (const DecodeError&) {
            return invalid_tx1;
        }
    }});

    code.decoders.push_back({net::node::tx2, net::node::rx, [=](net::History rec, net::Message) -> net::Message {
        // Second output coordinate only.
        X2Word first(n), second(n);
        for (std::size_t s = 0; s < n; ++s) {
            first[s] = static_cast<Sym2>(rec[s][w.rx_y32]);
            second[s] = static_cast<Sym2>(rec[n + 1 + s][w.rx_y32]);
        }
        return word_value(first) * params.tx2_phase2 + word_value(second);
    }});

    return code;
}

ReceivedPhase2 received_phase2(const net::TranscriptRecord& transcript, const ProtocolParams& params) {
    const std::size_t n = params.n;
    if (transcript.blocklength != params.total_blocklength() || transcript.nodes != 4)
        throw std::invalid_argument("transcript does not come from this protocol");
    const auto& rec = transcript.received[net::node::rx];
    ReceivedPhase2 out{Y1Word(n), X2Word(n), {}};
    for (std::size_t s = 0; s < n; ++s) {
        out.y[s] = static_cast<SymY1>(rec[n + 1 + s][net::port::y31]);
        out.y2[s] = static_cast<Sym2>(rec[n + 1 + s][net::port::y32]);
    }
    const auto& act = rec[n];
    out.cf = parse_cf_bits(std::span<const net::Symbol>(act).subspan(net::port::first_f));
    return out;
}

net::RateVector achievable_rate(std::size_t n, double delta) {
    if (n == 0) throw std::invalid_argument("n must be positive");
    const double two_n = 2.0 * static_cast<double>(n);
    return {{two_n * (1.25 - 0.5 * delta) / (two_n + 1.0), two_n / (two_n + 1.0), 0.0, 0.0}};
}

net::RateVector achievable_rate_limit(double delta) { return {{1.25 - 0.5 * delta, 1.0, 0.0, 0.0}}; }

SimulationResult simulate(const ProtocolParams& params, const Codebook& codebook, const net::NetworkModel& network,
                          std::uint64_t trials, std::uint64_t seed) {
    const net::NetworkCode code = assemble_code(params, codebook, network);
    SimulationResult result;
    result.errors = net::monte_carlo_error(network, code, trials, seed, [&](const net::TranscriptRecord& tr) {
        const auto got = received_phase2(tr, params);
        if (!dueck::is_good(got.y)) {
            ++result.not_good;
            return;
        }
        result.max_list = std::max(result.max_list, list_size(got.y, codebook));
    });
    return result;
}

}  // namespace onebit::protocol
