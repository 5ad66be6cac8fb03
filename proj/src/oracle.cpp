#include "onebit/oracle.hpp"

#include "onebit/errors.hpp"
#include "onebit/networks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

namespace onebit::oracle {

using dueck::Sym1;
using dueck::Sym2;
using dueck::SymY1;
using dueck::X1Word;
using dueck::X2Word;
using dueck::Y1Word;

void VerdictReport::fail(std::string witness) {
    ++failure_count;
    if (failures.size() < kMaxWitnesses) failures.push_back(std::move(witness));
}

void VerdictReport::set(std::string key, std::string value) {
    for (auto& [k, v] : parameters) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    parameters.emplace_back(std::move(key), std::move(value));
}

std::optional<std::string> VerdictReport::get(const std::string& key) const {
    for (const auto& [k, v] : parameters)
        if (k == key) return v;
    return std::nullopt;
}

bool same_outcome(const VerdictReport& a, const VerdictReport& b) {
    return a.claim == b.claim && a.parameters == b.parameters && a.cases == b.cases &&
           a.failure_count == b.failure_count && a.failures == b.failures;
}

nlohmann::ordered_json to_json(const VerdictReport& r) {
    nlohmann::ordered_json j;
    j["claim"] = r.claim;
    j["pass"] = r.pass();
    j["cases"] = r.cases;
    j["failure_count"] = r.failure_count;
    j["failures"] = r.failures;
    j["parameters"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
    j["wall_seconds"] = r.wall_seconds;
    return j;
}

VerdictReport report_from_json(const nlohmann::ordered_json& j) {
    VerdictReport r;
    r.claim = j.at("claim").get<std::string>();
    r.cases = j.at("cases").get<std::uint64_t>();
    r.failure_count = j.at("failure_count").get<std::uint64_t>();
    r.failures = j.at("failures").get<std::vector<std::string>>();
    for (const auto& [k, v] : j.at("parameters").items()) r.parameters.emplace_back(k, v.get<std::string>());
    r.wall_seconds = j.at("wall_seconds").get<double>();
    if (j.at("pass").get<bool>() != r.pass()) throw std::invalid_argument("report pass flag contradicts failure count");
    return r;
}

std::string to_text(const VerdictReport& r) {
    std::ostringstream os;
    os << (r.pass() ? "PASS " : "FAIL ") << r.claim << "  cases=" << r.cases << " failures=" << r.failure_count
       << std::fixed << std::setprecision(3) << " time=" << r.wall_seconds << "s\n";
    for (const auto& [k, v] : r.parameters) os << "  " << k << " = " << v << '\n';
    for (const auto& f : r.failures) os << "  witness: " << f << '\n';
    if (r.failure_count > r.failures.size())
        os << "  (" << r.failure_count - r.failures.size() << " further failures not shown)\n";
    return os.str();
}

std::string to_string(Mutant m) {
    switch (m) {
        case Mutant::none: return "none";
        case Mutant::contraction_b0: return "w-b0";
        case Mutant::cf_never_toggle: return "cf-never-toggle";
        case Mutant::cf_index_shift: return "cf-index-shift";
    }
    return "none";
}

std::optional<Mutant> parse_mutant(std::string_view name) {
    for (Mutant m : {Mutant::none, Mutant::contraction_b0, Mutant::cf_never_toggle, Mutant::cf_index_shift})
        if (to_string(m) == name) return m;
    return std::nullopt;
}

dueck::Output mutant_w_b0(Sym1 x1, Sym2 x2) {
    if (x1 == Sym1::b && x2 == Sym2::zero) return {SymY1::b, Sym2::zero};
    return dueck::w_single(x1, x2);
}

dueck::SymbolMap channel_for(Mutant m) { return m == Mutant::contraction_b0 ? mutant_w_b0 : dueck::w_single; }

protocol::CfRule cf_rule_for(Mutant m) {
    switch (m) {
        case Mutant::cf_never_toggle: return protocol::CfRule::never_toggle;
        case Mutant::cf_index_shift: return protocol::CfRule::index_shift;
        default: return protocol::CfRule::standard;
    }
}

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

std::uint64_t pow_u64(std::uint64_t base, std::size_t e, std::uint64_t budget, const std::string& what) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > budget / base) throw BudgetExceeded(what + " exceeds the case budget of " + std::to_string(budget));
        r *= base;
    }
    return r;
}

X1Word x1_from_index(std::uint64_t index, std::size_t n) {
    X1Word w(n);
    for (std::size_t i = n; i-- > 0;) {
        w[i] = static_cast<Sym1>(index & 3u);
        index >>= 2;
    }
    return w;
}

X2Word x2_from_index(std::uint64_t index, std::size_t n) {
    X2Word w(n);
    for (std::size_t i = n; i-- > 0;) {
        w[i] = static_cast<Sym2>(index & 1u);
        index >>= 1;
    }
    return w;
}

Y1Word apply(dueck::SymbolMap map, const X1Word& x1, const X2Word& x2) {
    Y1Word y(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) y[i] = map(x1[i], x2[i]).y;
    return y;
}

std::uint64_t y_index(const Y1Word& y) {
    std::uint64_t v = 0;
    for (SymY1 s : y) v = v * 6 + dueck::code(s);
    return v;
}

Y1Word y_from_index(std::uint64_t index, std::size_t n) {
    Y1Word y(n);
    for (std::size_t i = n; i-- > 0;) {
        y[i] = static_cast<SymY1>(index % 6);
        index /= 6;
    }
    return y;
}

}  // namespace

VerdictReport verify_toggle_claim(std::size_t n, dueck::SymbolMap map, std::uint64_t budget) {
    Stopwatch clock;
    VerdictReport r;
    r.claim = "toggle-complementarity";
    r.set("n", std::to_string(n));
    const std::uint64_t inputs = pow_u64(4, n, budget, "4^n");
    const std::uint64_t bits = pow_u64(2, n, budget, "2^n");
    if (inputs > budget / bits) throw BudgetExceeded("4^n * 2^n exceeds the case budget");

    // Contraction indicator of the law under test, for x1 and for its toggle.
    bool contracted[4][2];
    bool contracted_toggled[4][2];
    for (Sym1 a : dueck::kAllSym1) {
        for (Sym2 b : dueck::kAllSym2) {
            contracted[dueck::code(a)][dueck::code(b)] = dueck::is_contracted(map(a, b).y);
            contracted_toggled[dueck::code(a)][dueck::code(b)] = dueck::is_contracted(map(dueck::toggle(a), b).y);
        }
    }

    std::vector<std::uint8_t> sym(n);
    for (std::uint64_t xi = 0; xi < inputs; ++xi) {
        for (std::size_t i = 0, v = xi; i < n; ++i, v >>= 2) sym[n - 1 - i] = static_cast<std::uint8_t>(v & 3u);
        for (std::uint64_t bi = 0; bi < bits; ++bi) {
            ++r.cases;
            std::size_t base = 0, flipped = 0;
            for (std::size_t i = 0; i < n; ++i) {
                const unsigned bit = (bi >> (n - 1 - i)) & 1u;
                base += contracted[sym[i]][bit];
                flipped += contracted_toggled[sym[i]][bit];
            }
            const bool some_good = 2 * base <= n || 2 * flipped <= n;
            if (base + flipped != n || !some_good) {
                std::ostringstream w;
                w << "x1=" << dueck::to_string(x1_from_index(xi, n)) << " x2=" << dueck::to_string(x2_from_index(bi, n))
                  << " C(base)=" << base << " C(toggled)=" << flipped;
                r.fail(w.str());
            }
        }
    }
    r.wall_seconds = clock.seconds();
    return r;
}

VerdictReport verify_preimage_formula(std::size_t n, dueck::SymbolMap map, std::uint64_t budget) {
    Stopwatch clock;
    VerdictReport r;
    r.claim = "preimage-size";
    r.set("n", std::to_string(n));
    const std::uint64_t inputs = pow_u64(4, n, budget, "4^n");
    const std::uint64_t bits = pow_u64(2, n, budget, "2^n");
    const std::uint64_t outputs = pow_u64(6, n, budget, "6^n");
    if (inputs > budget / bits) throw BudgetExceeded("4^n * 2^n exceeds the case budget");

    std::vector<std::uint32_t> bucket(outputs, 0);
    std::vector<std::int64_t> bucket_x2(outputs, -1);
    std::vector<std::vector<std::uint64_t>> members(outputs);
    for (std::uint64_t xi = 0; xi < inputs; ++xi) {
        const X1Word x1 = x1_from_index(xi, n);
        for (std::uint64_t bi = 0; bi < bits; ++bi) {
            const auto yi = y_index(apply(map, x1, x2_from_index(bi, n)));
            if (bucket_x2[yi] >= 0 && static_cast<std::uint64_t>(bucket_x2[yi]) != bi) {
                r.fail("y=" + dueck::to_string(y_from_index(yi, n)) + " is produced under two different x2");
                continue;
            }
            bucket_x2[yi] = static_cast<std::int64_t>(bi);
            ++bucket[yi];
            members[yi].push_back(xi);
        }
    }

    for (std::uint64_t yi = 0; yi < outputs; ++yi) {
        if (bucket[yi] == 0) continue;
        ++r.cases;
        const Y1Word y = y_from_index(yi, n);
        const std::uint64_t expected = 1ull << dueck::contraction_count(y);
        if (bucket[yi] != expected) {
            r.fail("y=" + dueck::to_string(y) + " has " + std::to_string(bucket[yi]) + " preimages, 2^C(y)=" +
                   std::to_string(expected));
            continue;
        }
        if (static_cast<std::uint64_t>(bucket_x2[yi]) != protocol::word_value(dueck::decode_x2(y))) {
            r.fail("decode_x2 disagrees with the true x2 for y=" + dueck::to_string(y));
            continue;
        }
        const auto listed = dueck::preimage(y);
        std::vector<X1Word> truth;
        for (auto xi : members[yi]) truth.push_back(x1_from_index(xi, n));
        std::sort(truth.begin(), truth.end());
        if (listed != truth) r.fail("dueck::preimage disagrees with the raw sweep at y=" + dueck::to_string(y));
    }
    r.wall_seconds = clock.seconds();
    return r;
}

VerdictReport verify_phase1(std::size_t n, dueck::SymbolMap map, std::uint64_t budget) {
    Stopwatch clock;
    VerdictReport r;
    r.claim = "phase1-zero-error";
    r.set("n", std::to_string(n));
    const std::uint64_t side = pow_u64(2, n, budget, "2^n");
    if (side > budget / side) throw BudgetExceeded("4^n phase-1 pairs exceed the case budget");

    protocol::ProtocolParams p;
    p.n = n;
    p.tx1_phase1 = side;
    p.tx2_phase1 = side;
    for (std::uint64_t m11 = 0; m11 < side; ++m11) {
        for (std::uint64_t m21 = 0; m21 < side; ++m21) {
            ++r.cases;
            const auto words = protocol::encode_phase1(m11, m21, p);
            const auto out = dueck::w_block(words.x1, words.x2, map);
            try {
                const auto [d11, d21] = protocol::decode_phase1(out.y, out.x2);
                if (d11 != m11 || d21 != m21)
                    r.fail("(" + std::to_string(m11) + "," + std::to_string(m21) + ") decoded as (" +
                           std::to_string(d11) + "," + std::to_string(d21) + ")");
            } catch (const DecodeError& e) {
                r.fail("(" + std::to_string(m11) + "," + std::to_string(m21) + "): " + e.what());
            }
        }
    }
    r.wall_seconds = clock.seconds();
    return r;
}

VerdictReport verify_codebook_report(const protocol::Codebook& codebook, const protocol::ProtocolParams& params,
                                     std::uint64_t attempts) {
    Stopwatch clock;
    VerdictReport r;
    r.claim = "codebook-list-bound";
    const auto check = protocol::verify_codebook(codebook, params);
    r.set("n", std::to_string(params.n));
    r.set("codebook_size", std::to_string(codebook.size()));
    r.set("codebook_seed", std::to_string(codebook.seed()));
    r.set("attempts", std::to_string(attempts));
    r.set("mode", check.mode == protocol::VerifyMode::exhaustive ? "exhaustive" : "sampled");
    r.set("list_bound", std::to_string(params.list_bound));
    r.set("max_list", std::to_string(check.max_list));
    r.cases = check.words_checked;
    if (!check.ok)
        r.fail("list of size " + std::to_string(check.max_list) + " at y=" + dueck::to_string(check.worst) +
               " exceeds " + std::to_string(params.list_bound));

    if (params.n <= 10) {
        // Histogram of W over every (entry, x2); x2 is a function of y, so the
        // histogram count at y is its list size.
        std::unordered_map<Y1Word, std::size_t, dueck::WordHash> hist;
        for (const auto& base : codebook.words())
            for (const X1Word& x : {base, dueck::toggle(base)})
                for (std::uint64_t v = 0; v < (1ull << params.n); ++v)
                    ++hist[dueck::w_block(x, x2_from_index(v, params.n)).y];
        std::size_t brute_max = 0;
        for (const auto& [y, count] : hist) {
            if (!dueck::is_good(y)) continue;
            brute_max = std::max(brute_max, count);
            if (protocol::list_size(y, codebook) != count)
                r.fail("list size at y=" + dueck::to_string(y) + " disagrees with the brute-force histogram");
        }
        r.set("brute_force_max_list", std::to_string(brute_max));
        if (check.mode == protocol::VerifyMode::exhaustive && brute_max != check.max_list)
            r.fail("exhaustive maximum " + std::to_string(check.max_list) + " differs from brute force " +
                   std::to_string(brute_max));
    }
    r.wall_seconds = clock.seconds();
    return r;
}

namespace {

// Lists by direct sweep over codebook entries, sorted as the protocol requires.
protocol::DecodingList brute_force_list(const Y1Word& y, const protocol::Codebook& codebook) {
    const X2Word x2 = dueck::decode_x2(y);
    std::vector<std::pair<X1Word, protocol::ListEntry>> hits;
    for (std::uint64_t w = 0; w < codebook.size(); ++w) {
        const X1Word& base = codebook.word(w);
        if (dueck::w_block(base, x2).y == y) hits.push_back({base, {w, false}});
        const X1Word flipped = dueck::toggle(base);
        if (dueck::w_block(flipped, x2).y == y) hits.push_back({flipped, {w, true}});
    }
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return !a.second.toggled && b.second.toggled;
    });
    protocol::DecodingList list;
    for (const auto& h : hits) list.entries.push_back(h.second);
    return list;
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view text) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string describe(const protocol::MessageSplit& s) {
    return "(m11=" + std::to_string(s.m11) + ", m12=" + std::to_string(s.m12) + ", m21=" + std::to_string(s.m21) +
           ", m22=" + std::to_string(s.m22) + ")";
}

}  // namespace

VerdictReport verify_protocol_zero_error(const protocol::ProtocolParams& params, const protocol::Codebook& codebook,
                                         const ProtocolCheckOptions& options) {
    Stopwatch clock;
    VerdictReport r;
    r.claim = "protocol-zero-error";
    r.set("n", std::to_string(params.n));
    r.set("delta", fmt(params.delta));
    r.set("k", std::to_string(params.k));
    r.set("codebook_size", std::to_string(codebook.size()));
    r.set("codebook_seed", std::to_string(codebook.seed()));
    r.set("mutant", to_string(options.mutant));

    const std::size_t n = params.n;
    const auto net = net::build_nplus(params.k, channel_for(options.mutant));
    const auto code = protocol::assemble_code(params, codebook, net, cf_rule_for(options.mutant));

    const std::uint64_t phase2 = params.tx1_phase2 * params.tx2_phase2;
    const std::uint64_t phase1 = params.tx1_phase1 * params.tx2_phase1;
    if (phase2 > options.budget || phase1 > options.budget - phase2 ||
        options.joint_samples > options.budget - phase2 - phase1)
        throw BudgetExceeded("protocol sweep exceeds the case budget of " + std::to_string(options.budget));

    std::vector<protocol::MessageSplit> splits;
    splits.reserve(phase2 + phase1 + options.joint_samples);
    for (std::uint64_t m12 = 0; m12 < params.tx1_phase2; ++m12)
        for (std::uint64_t m22 = 0; m22 < params.tx2_phase2; ++m22) splits.push_back({0, m12, 0, m22});
    for (std::uint64_t m11 = 0; m11 < params.tx1_phase1; ++m11)
        for (std::uint64_t m21 = 0; m21 < params.tx2_phase1; ++m21) splits.push_back({m11, 0, m21, 0});
    std::mt19937_64 rng(options.seed);
    auto draw = [&](std::uint64_t count) { return std::uniform_int_distribution<std::uint64_t>(0, count - 1)(rng); };
    for (std::uint64_t s = 0; s < options.joint_samples; ++s) {
        const auto m11 = draw(params.tx1_phase1);
        const auto m12 = draw(params.tx1_phase2);
        const auto m21 = draw(params.tx2_phase1);
        const auto m22 = draw(params.tx2_phase2);
        splits.push_back({m11, m12, m21, m22});
    }

    std::vector<std::vector<net::Message>> tuples;
    tuples.reserve(splits.size());
    std::uint64_t digest = 1469598103934665603ull;
    std::size_t max_list = 0;
    std::uint64_t activation_breaches = 0;
    const std::size_t act = params.activation_time();

    for (const auto& [c, tau] : code.activation)
        if (tau != act) ++activation_breaches;
    if (activation_breaches) r.fail("a 1-bit channel is not activated at t = n+1");

    for (const auto& s : splits) {
        ++r.cases;
        const auto [m1, m2] = protocol::join_messages(s, params);
        const std::vector<net::Message> msgs{m1, m2, 0, 0};
        tuples.push_back(msgs);
        const auto tr = net::run_code(net, code, msgs, options.seed);
        digest = fnv1a(digest, net::to_text(tr));

        for (const auto& rec : tr.reconstructions) {
            const net::Message truth = rec.source == net::node::tx1 ? m1 : m2;
            if (rec.value != truth)
                r.fail(describe(s) + ": node " + std::to_string(rec.source) + " decoded as " +
                       std::to_string(rec.value));
        }

        // 1-bit channels deliver nothing but 0 outside the activation step.
        for (std::size_t t = 1; t <= tr.blocklength; ++t) {
            if (t == act) continue;
            const auto& at_tx1 = tr.received[net::node::tx1][t - 1];
            const auto& at_rx = tr.received[net::node::rx][t - 1];
            const bool quiet = std::all_of(at_tx1.begin(), at_tx1.end(), [](auto v) { return v == 0; }) &&
                               std::all_of(at_rx.begin() + net::port::first_f, at_rx.end(), [](auto v) { return v == 0; });
            if (!quiet) r.fail(describe(s) + ": 1-bit channel active at t=" + std::to_string(t));
        }

        const auto got = protocol::received_phase2(tr, params);
        if (!dueck::is_good(got.y)) {
            r.fail(describe(s) + ": phase-2 word " + dueck::to_string(got.y) + " is not good");
            continue;
        }

        // The cf's view: the words forwarded over the pipes.
        X1Word fwd1(n);
        X2Word fwd2(n);
        for (std::size_t t = 0; t < n; ++t) {
            fwd1[t] = static_cast<Sym1>(tr.received[net::node::cf][t][0]);
            fwd2[t] = static_cast<Sym2>(tr.received[net::node::cf][t][1]);
        }
        const auto cf = protocol::cf_decide(fwd1, fwd2, codebook, params, cf_rule_for(options.mutant));
        const auto rx_list = protocol::list_decode(got.y, codebook);
        const auto oracle_list = brute_force_list(got.y, codebook);
        max_list = std::max(max_list, rx_list.size());
        if (cf.y != got.y) r.fail(describe(s) + ": cf predicted a different phase-2 word");
        if (cf.list != rx_list) r.fail(describe(s) + ": cf and receiver lists differ");
        if (rx_list != oracle_list) r.fail(describe(s) + ": receiver list differs from brute force");
        if (cf.message != got.cf) r.fail(describe(s) + ": cf bits at rx differ from the cf decision");
        const auto e_bit = tr.received[net::node::tx1][act - 1].at(0);
        if ((e_bit != 0) != cf.message.b) r.fail(describe(s) + ": bit on e differs from the bit on f1");
    }

    const auto metric = net::evaluate_exact(net, code, tuples, options.budget);
    r.set("phase2_pairs", std::to_string(phase2));
    r.set("phase1_pairs", std::to_string(phase1));
    r.set("joint_samples", std::to_string(options.joint_samples));
    r.set("d_max", fmt(metric.d_max));
    r.set("d_avg", fmt(metric.d_avg));
    r.set("max_list", std::to_string(max_list));
    r.set("list_bound", std::to_string(params.list_bound));
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << digest;
    r.set("transcript_digest", hex.str());
    if (metric.d_max != 0.0 || metric.d_avg != 0.0)
        r.fail("runtime metric reports d_max=" + fmt(metric.d_max) + " d_avg=" + fmt(metric.d_avg));
    r.wall_seconds = clock.seconds();
    return r;
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p outside [0, 1]");
    auto term = [](double q) { return q > 0.0 ? -q * std::log2(q) : 0.0; };
    return term(p) + term(1.0 - p);
}

net::RateVector dueck_bound_point(double p) {
    if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("dueck_bound_point: p outside [0, 1/2]");
    return {{binary_entropy(1.0 / 3.0) + 2.0 / 3.0 - p, binary_entropy(p), 0.0, 0.0}};
}

double inverse_binary_entropy(double target) {
    if (!(target >= 0.0 && target <= 1.0)) throw std::invalid_argument("inverse_binary_entropy: target outside [0, 1]");
    double lo = 0.0, hi = 0.5;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (binary_entropy(mid) > target ? hi : lo) = mid;
    }
    return lo;
}

SeparationCheck check_separation(double delta) {
    if (!(delta >= 0.0 && delta <= 0.5)) throw std::invalid_argument("check_separation: delta outside [0, 1/2]");
    SeparationCheck s;
    s.achievable_limit = protocol::achievable_rate_limit(delta);
    s.reference = {{kReferenceRate1, kReferenceRate2, 0.0, 0.0}};
    s.boundary = dueck_bound_point(kBoundaryP);
    s.limit_dominates_reference = net::dominates(s.achievable_limit, s.reference);
    s.limit_dominates_boundary = net::dominates(s.achievable_limit, s.boundary);
    s.reference_first_dominates = s.reference.rates[0] >= s.boundary.rates[0];
    s.reference_second_dominates = s.reference.rates[1] >= s.boundary.rates[1];
    s.rounding_gap = s.boundary.rates[1] - s.reference.rates[1];
    s.matched_p = inverse_binary_entropy(kReferenceRate2);
    s.matched_boundary = dueck_bound_point(s.matched_p);
    s.reference_dominates_matched = net::dominates(s.reference, s.matched_boundary);
    s.separated = s.limit_dominates_reference && s.limit_dominates_boundary && s.reference_dominates_matched;
    return s;
}

VerdictReport separation_report(double delta) {
    Stopwatch clock;
    const auto s = check_separation(delta);
    VerdictReport r;
    r.claim = "separation";
    r.cases = 1;
    r.set("delta", fmt(delta));
    r.set("achievable_limit", fmt(s.achievable_limit.rates[0]) + "," + fmt(s.achievable_limit.rates[1]));
    r.set("reference", fmt(s.reference.rates[0]) + "," + fmt(s.reference.rates[1]));
    r.set("boundary_p0.4", fmt(s.boundary.rates[0]) + "," + fmt(s.boundary.rates[1]));
    r.set("limit_dominates_reference", s.limit_dominates_reference ? "true" : "false");
    r.set("limit_dominates_boundary", s.limit_dominates_boundary ? "true" : "false");
    r.set("reference_first_dominates", s.reference_first_dominates ? "true" : "false");
    r.set("reference_second_dominates", s.reference_second_dominates ? "true" : "false");
    r.set("rounding_gap", fmt(s.rounding_gap));
    r.set("matched_p", fmt(s.matched_p));
    r.set("matched_boundary", fmt(s.matched_boundary.rates[0]) + "," + fmt(s.matched_boundary.rates[1]));
    r.set("reference_dominates_matched", s.reference_dominates_matched ? "true" : "false");
    r.set("separated", s.separated ? "true" : "false");
    if (!s.separated) r.fail("achievable limit is not separated from the excluded region");
    r.wall_seconds = clock.seconds();
    return r;
}

}  // namespace onebit::oracle
