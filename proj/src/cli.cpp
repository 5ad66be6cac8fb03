#include "onebit/cli.hpp"

#include "onebit/errors.hpp"
#include "onebit/networks.hpp"
#include "onebit/oracle.hpp"
#include "onebit/protocol.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace onebit::cli {

namespace {

using nlohmann::ordered_json;

struct Result {
    int code = kPass;
    std::string text;
    ordered_json json;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

protocol::ProtocolParams params_from(const RunConfig& cfg) {
    try {
        return protocol::derive_params(cfg.n, cfg.delta, cfg.cap);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

oracle::Mutant mutant_from(const RunConfig& cfg) {
    const auto m = oracle::parse_mutant(cfg.mutant);
    if (!m) throw UsageError("unknown mutant '" + cfg.mutant + "'");
    return *m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Loads --codebook when given, otherwise draws one and regenerates on failure.
protocol::VerifiedCodebook obtain_codebook(const RunConfig& cfg, const protocol::ProtocolParams& params) {
    if (cfg.codebook.empty()) return protocol::generate_verified_codebook(params, cfg.seed);
    protocol::Codebook book = [&] {
        try {
            return protocol::parse_codebook(read_file(cfg.codebook));
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("codebook file: ") + e.what());
        }
    }();
    if (book.blocklength() != params.n || book.size() != params.tx1_phase2)
        throw UsageError("codebook file does not match --n / --cap");
    const auto check = protocol::verify_codebook(book, params);
    return {std::move(book), check, 1};
}

oracle::VerdictReport refused(const std::string& claim, const std::string& why) {
    oracle::VerdictReport r;
    r.claim = claim;
    r.fail("refused: " + why);
    return r;
}

template <typename F>
oracle::VerdictReport guarded(const std::string& claim, F&& f) {
    try {
        return f();
    } catch (const UsageError&) {
        throw;
    } catch (const BudgetExceeded& e) {
        return refused(claim, e.what());
    } catch (const std::runtime_error& e) {
        return refused(claim, e.what());
    }
}

Result cmd_verify(const RunConfig& cfg) {
    const auto params = params_from(cfg);
    const auto mutant = mutant_from(cfg);
    const auto channel = oracle::channel_for(mutant);

    std::vector<oracle::VerdictReport> reports;
    reports.push_back(guarded("toggle-complementarity", [&] { return oracle::verify_toggle_claim(cfg.n, channel); }));
    reports.push_back(guarded("preimage-size", [&] { return oracle::verify_preimage_formula(cfg.n, channel); }));
    reports.push_back(guarded("phase1-zero-error", [&] { return oracle::verify_phase1(cfg.n, channel); }));

    std::optional<protocol::VerifiedCodebook> book;
    reports.push_back(guarded("codebook-list-bound", [&] {
        book = obtain_codebook(cfg, params);
        return oracle::verify_codebook_report(book->codebook, params, book->attempts);
    }));
    if (book && book->check.ok) {
        oracle::ProtocolCheckOptions opt;
        opt.mutant = mutant;
        opt.seed = cfg.seed;
        reports.push_back(guarded("protocol-zero-error", [&] {
            return oracle::verify_protocol_zero_error(params, book->codebook, opt);
        }));
    } else {
        reports.push_back(refused("protocol-zero-error", "no verified codebook"));
    }

    Result res;
    std::vector<std::string> failed;
    res.json["command"] = "verify";
    res.json["reports"] = ordered_json::array();
    for (const auto& r : reports) {
        res.text += oracle::to_text(r);
        res.json["reports"].push_back(oracle::to_json(r));
        if (!r.pass()) failed.push_back(r.claim);
    }
    res.json["pass"] = failed.empty();
    if (failed.empty()) {
        res.text += "verify: all " + std::to_string(reports.size()) + " claims pass\n";
    } else {
        res.code = kFail;
        res.text += "verify: FAILED";
        for (const auto& f : failed) res.text += " " + f;
        res.text += "\n";
    }
    return res;
}

net::NetworkModel network_from(const RunConfig& cfg, std::size_t k) {
    switch (cfg.network) {
        case NetworkChoice::nd: return net::build_dueck_network();
        case NetworkChoice::n0: return net::build_n0();
        case NetworkChoice::nplus: return net::build_nplus(k);
    }
    return net::build_nplus(k);
}

Result cmd_simulate(const RunConfig& cfg) {
    const auto params = params_from(cfg);
    if (cfg.trials == 0) throw UsageError("--trials must be at least 1");
    const auto network = network_from(cfg, params.k);
    const auto book = protocol::generate_verified_codebook(params, cfg.seed);

    protocol::SimulationResult sim;
    try {
        sim = protocol::simulate(params, book.codebook, network, cfg.trials, cfg.seed);
    } catch (const StructuralError& e) {
        throw UsageError(std::string("simulate: ") + e.what());
    }
    const auto rate = net::code_rate(protocol::assemble_code(params, book.codebook, network));

    Result res;
    const std::uint64_t errors = sim.errors.pair_errors.empty()
                                     ? 0
                                     : *std::max_element(sim.errors.pair_errors.begin(), sim.errors.pair_errors.end());
    const bool ok = errors == 0 && sim.not_good == 0;
    res.code = ok ? kPass : kFail;

    std::ostringstream os;
    os << "simulate n=" << params.n << " delta=" << num(params.delta) << " k=" << params.k
       << " |M12|=" << params.tx1_phase2 << (params.desk_scaled ? " (desk scale)" : "") << '\n'
       << "  codebook seed=" << book.codebook.seed() << " attempts=" << book.attempts
       << " verify max_list=" << book.check.max_list << '\n'
       << "  code rate per node: " << num(rate.rates[0]) << ", " << num(rate.rates[1]) << " over "
       << params.total_blocklength() << " steps\n"
       << "  trials=" << sim.errors.trials << " errors(tx1)=" << sim.errors.pair_errors.at(0)
       << " errors(tx2)=" << sim.errors.pair_errors.at(1) << '\n'
       << "  d_max estimate=" << num(sim.errors.d_max) << " d_avg estimate=" << num(sim.errors.d_avg) << '\n'
       << "  max observed list=" << sim.max_list << " (bound " << params.list_bound << ")"
       << " not-good phase-2 words=" << sim.not_good << '\n'
       << "simulate: " << (ok ? "zero decoding errors" : "DECODING ERRORS") << '\n';
    res.text = os.str();

    res.json = {{"command", "simulate"},
                {"pass", ok},
                {"n", params.n},
                {"delta", params.delta},
                {"k", params.k},
                {"codebook_size", params.tx1_phase2},
                {"codebook_seed", book.codebook.seed()},
                {"trials", sim.errors.trials},
                {"errors_tx1", sim.errors.pair_errors.at(0)},
                {"errors_tx2", sim.errors.pair_errors.at(1)},
                {"d_max", sim.errors.d_max},
                {"d_avg", sim.errors.d_avg},
                {"max_list", sim.max_list},
                {"list_bound", params.list_bound},
                {"not_good", sim.not_good}};
    return res;
}

Result cmd_rates(const RunConfig& cfg) {
    if (!(cfg.delta >= 0.0 && cfg.delta <= 0.5)) throw UsageError("--delta must lie in [0, 1/2]");
    Result res;
    std::ostringstream os;
    os << "achievable rate (2n(1.25-0.5d)/(2n+1), 2n/(2n+1)), d=" << num(cfg.delta) << '\n';
    os << std::setw(8) << "n" << std::setw(18) << "R1" << std::setw(18) << "R2" << '\n';
    res.json["command"] = "rates";
    res.json["delta"] = cfg.delta;
    res.json["rows"] = ordered_json::array();
    for (std::size_t n : {1, 2, 6, 10, 20, 50, 100, 1000, 10000, 100000}) {
        const auto r = protocol::achievable_rate(n, cfg.delta);
        os << std::setw(8) << n << std::setw(18) << num(r.rates[0]) << std::setw(18) << num(r.rates[1]) << '\n';
        res.json["rows"].push_back({{"n", n}, {"r1", r.rates[0]}, {"r2", r.rates[1]}});
    }
    const auto lim = protocol::achievable_rate_limit(cfg.delta);
    os << std::setw(8) << "limit" << std::setw(18) << num(lim.rates[0]) << std::setw(18) << num(lim.rates[1]) << '\n';
    res.json["limit"] = {{"r1", lim.rates[0]}, {"r2", lim.rates[1]}};
    res.text = os.str();
    return res;
}

Result cmd_bound(const RunConfig& cfg) {
    if (!(cfg.delta >= 0.0 && cfg.delta <= 0.5)) throw UsageError("--delta must lie in [0, 1/2]");
    Result res;
    std::ostringstream os;
    os << "excluded boundary point (H(1/3)+2/3-p, H(p))\n";
    os << std::setw(8) << "p" << std::setw(18) << "R1" << std::setw(18) << "R2" << '\n';
    res.json["command"] = "bound";
    res.json["rows"] = ordered_json::array();
    for (int i = 0; i <= 10; ++i) {
        const double p = 0.05 * i;
        const auto b = oracle::dueck_bound_point(p);
        os << std::setw(8) << num(p) << std::setw(18) << num(b.rates[0]) << std::setw(18) << num(b.rates[1]) << '\n';
        res.json["rows"].push_back({{"p", p}, {"r1", b.rates[0]}, {"r2", b.rates[1]}});
    }
    const auto sep = oracle::separation_report(cfg.delta);
    os << oracle::to_text(sep);
    res.json["separation"] = oracle::to_json(sep);
    res.json["pass"] = sep.pass();
    res.code = sep.pass() ? kPass : kFail;
    res.text = os.str();
    return res;
}

Result cmd_codebook(const RunConfig& cfg) {
    const auto params = params_from(cfg);
    const auto book = protocol::generate_verified_codebook(params, cfg.seed);
    Result res;
    res.text = protocol::to_text(book.codebook);
    res.json = {{"command", "codebook"},
                {"n", params.n},
                {"size", book.codebook.size()},
                {"seed", book.codebook.seed()},
                {"attempts", book.attempts},
                {"max_list", book.check.max_list},
                {"text", res.text}};
    return res;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cooperation-facilitator network simulator and claim verifier", "onebit"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string network = "nplus";
    std::string format = "text";

    auto with_params = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "per-phase blocklength (even)")->capture_default_str();
        sub->add_option("--delta", cfg.delta, "rate slack delta")->capture_default_str();
        sub->add_option("--cap", cfg.cap, "desk-scale cap on |M12|")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "codebook / sampling seed")->capture_default_str();
    };
    auto with_output = [&](CLI::App* sub) {
        sub->add_option("--out", cfg.out, "also write the result to this file");
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    auto* verify = app.add_subcommand("verify", "run every exhaustive verifier at desk scale");
    with_params(verify);
    with_output(verify);
    verify->add_option("--mutant", cfg.mutant, "none, w-b0, cf-never-toggle, cf-index-shift")->capture_default_str();
    verify->add_option("--codebook", cfg.codebook, "codebook file to verify instead of generating one");

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo runs of the protocol");
    with_params(simulate);
    with_output(simulate);
    simulate->add_option("--trials", cfg.trials, "random message tuples")->capture_default_str();
    simulate->add_option("--network", network, "nd, n0 or nplus")
        ->check(CLI::IsMember({"nd", "n0", "nplus"}))
        ->capture_default_str();

    auto* rates = app.add_subcommand("rates", "achievable rate over blocklengths");
    rates->add_option("--delta", cfg.delta, "rate slack delta")->capture_default_str();
    with_output(rates);

    auto* bound = app.add_subcommand("bound", "converse boundary points and the separation verdict");
    bound->add_option("--delta", cfg.delta, "rate slack delta")->capture_default_str();
    with_output(bound);

    auto* codebook = app.add_subcommand("codebook", "draw and verify a codebook, print it in file format");
    with_params(codebook);
    codebook->add_option("--out", cfg.out, "write the codebook to this file");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kPass : kUsage;
    }
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::text;
    cfg.network = network == "nd" ? NetworkChoice::nd : network == "n0" ? NetworkChoice::n0 : NetworkChoice::nplus;

    Result res;
    try {
        if (verify->parsed()) {
            cfg.subcommand = "verify";
            res = cmd_verify(cfg);
        } else if (simulate->parsed()) {
            cfg.subcommand = "simulate";
            res = cmd_simulate(cfg);
        } else if (rates->parsed()) {
            cfg.subcommand = "rates";
            res = cmd_rates(cfg);
        } else if (bound->parsed()) {
            cfg.subcommand = "bound";
            res = cmd_bound(cfg);
        } else {
            cfg.subcommand = "codebook";
            res = cmd_codebook(cfg);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFail;
    }

    const bool codebook_file = cfg.subcommand == "codebook";
    const std::string body = (cfg.format == OutputFormat::json && !codebook_file) ? res.json.dump(2) + "\n" : res.text;
    out << body;
    if (!cfg.out.empty()) {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << cfg.out << "'\n";
            return kUsage;
        }
        f << body;
    }
    return res.code;
}

}  // namespace onebit::cli
