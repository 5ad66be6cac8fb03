#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "onebit/errors.hpp"
#include "onebit/oracle.hpp"

#include <cmath>

using namespace onebit;
using namespace onebit::oracle;

namespace {

const double kLog2of3 = 1.5849625007211562;  // log2 3

}  // namespace

TEST_CASE("toggle claim") {
    const auto r1 = verify_toggle_claim(1);
    CHECK(r1.pass());
    CHECK(r1.cases == 8);
    const auto r6 = verify_toggle_claim(6);
    CHECK(r6.pass());
    CHECK(r6.cases == 262144);
    const auto bad = verify_toggle_claim(3, mutant_w_b0);
    CHECK_FALSE(bad.pass());
    CHECK_FALSE(bad.failures.empty());
    CHECK(bad.failures.size() <= VerdictReport::kMaxWitnesses);
}

TEST_CASE("toggle claim refuses oversized sweeps") {
    CHECK_THROWS_AS(verify_toggle_claim(6, dueck::w_single, 1000), BudgetExceeded);
    CHECK_THROWS_AS(verify_preimage_formula(9, dueck::w_single, 1u << 20), BudgetExceeded);
}

TEST_CASE("preimage formula") {
    for (std::size_t n = 1; n <= 3; ++n) CHECK(verify_preimage_formula(n).pass());
    const auto r1 = verify_preimage_formula(1);
    CHECK(r1.cases == 6);  // a, b, c, A, B, C are all reachable
    CHECK(verify_preimage_formula(2).cases == 36);
    CHECK_FALSE(verify_preimage_formula(2, mutant_w_b0).pass());
}

TEST_CASE("phase 1") {
    const auto r1 = verify_phase1(1);
    CHECK(r1.pass());
    CHECK(r1.cases == 4);
    const auto r8 = verify_phase1(8);
    CHECK(r8.pass());
    CHECK(r8.cases == 65536);
    CHECK(verify_phase1(3).pass());  // odd n is fine for phase 1 on its own
}

TEST_CASE("codebook report") {
    const auto p = protocol::derive_params(6, 0.02, 16);
    const auto v = protocol::generate_verified_codebook(p, 0);
    const auto r = verify_codebook_report(v.codebook, p, v.attempts);
    CHECK(r.pass());
    CHECK(r.get("max_list") == r.get("brute_force_max_list"));
}

TEST_CASE("protocol zero error and mutant sensitivity") {
    const auto p = protocol::derive_params(4, 0.5, 16);
    const auto v = protocol::generate_verified_codebook(p, 0);
    ProtocolCheckOptions opt;
    opt.joint_samples = 64;
    const auto good = verify_protocol_zero_error(p, v.codebook, opt);
    CHECK(good.pass());
    CHECK(good.cases == 16 * 16 + 16 * 16 + 64);
    CHECK(good.get("d_max") == std::optional<std::string>("0"));
    CHECK(good.get("d_avg") == std::optional<std::string>("0"));

    for (Mutant m : {Mutant::contraction_b0, Mutant::cf_never_toggle, Mutant::cf_index_shift}) {
        opt.mutant = m;
        const auto bad = verify_protocol_zero_error(p, v.codebook, opt);
        CHECK_MESSAGE(!bad.pass(), to_string(m));
        CHECK_FALSE(bad.failures.empty());
    }
}

TEST_CASE("mutant names") {
    for (Mutant m : {Mutant::none, Mutant::contraction_b0, Mutant::cf_never_toggle, Mutant::cf_index_shift})
        CHECK(parse_mutant(to_string(m)) == m);
    CHECK_FALSE(parse_mutant("nope").has_value());
    CHECK(mutant_w_b0(dueck::Sym1::b, dueck::Sym2::zero) == dueck::Output{dueck::SymY1::b, dueck::Sym2::zero});
    CHECK(mutant_w_b0(dueck::Sym1::a, dueck::Sym2::zero) == dueck::w_single(dueck::Sym1::a, dueck::Sym2::zero));
}

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(std::abs(binary_entropy(0.4) - 0.9709505944546686) < 1e-12);
    CHECK(std::abs(binary_entropy(1.0 / 3.0) - (kLog2of3 - 2.0 / 3.0)) < 1e-12);
    CHECK_THROWS_AS(binary_entropy(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_entropy(1.1), std::invalid_argument);
}

TEST_CASE("boundary points") {
    const auto b = dueck_bound_point(0.4);
    CHECK(std::abs(b.rates[0] - 1.18496) < 1e-4);
    CHECK(std::abs(b.rates[1] - 0.97095) < 1e-4);
    const auto h = dueck_bound_point(0.5);
    CHECK(std::abs(h.rates[0] - (kLog2of3 - 2.0 / 3.0 + 1.0 / 6.0)) < 1e-12);
    CHECK(h.rates[1] == doctest::Approx(1.0));
    CHECK(h.rates.size() == 4);
    CHECK_THROWS_AS(dueck_bound_point(0.6), std::invalid_argument);
}

TEST_CASE("inverse binary entropy") {
    for (double target : {0.1, 0.5, 0.97, 0.999}) {
        const double p = inverse_binary_entropy(target);
        CHECK(p <= 0.5);
        CHECK(binary_entropy(p) <= target);
        CHECK(binary_entropy(p) == doctest::Approx(target).epsilon(1e-9));
    }
}

TEST_CASE("separation") {
    const auto s = check_separation(0.02);
    CHECK(s.separated);
    CHECK(s.limit_dominates_reference);
    CHECK(s.limit_dominates_boundary);
    CHECK(s.reference_first_dominates);
    CHECK_FALSE(s.reference_second_dominates);
    CHECK(s.rounding_gap > 0.0);
    CHECK(s.rounding_gap < 1e-3);
    CHECK(s.reference_dominates_matched);
    CHECK(std::abs(s.achievable_limit.rates[0] - 1.24) < 1e-12);

    const auto z = check_separation(0.0);
    CHECK(z.separated);
    CHECK(z.achievable_limit.rates[0] == 1.25);

    CHECK_FALSE(check_separation(0.5).separated);  // limit (1.0, 1) no longer beats 1.19
    CHECK(separation_report(0.02).pass());
}

TEST_CASE("report JSON round trip and determinism") {
    const auto p = protocol::derive_params(4, 0.5, 8);
    const auto v = protocol::generate_verified_codebook(p, 1);
    ProtocolCheckOptions opt;
    opt.joint_samples = 16;
    opt.seed = 4;
    const auto a = verify_protocol_zero_error(p, v.codebook, opt);
    const auto b = verify_protocol_zero_error(p, v.codebook, opt);
    CHECK(same_outcome(a, b));
    CHECK(a.get("transcript_digest") == b.get("transcript_digest"));
    CHECK(report_from_json(to_json(a)) == a);

    opt.mutant = Mutant::cf_index_shift;
    const auto bad = verify_protocol_zero_error(p, v.codebook, opt);
    CHECK(report_from_json(nlohmann::ordered_json::parse(to_json(bad).dump())) == bad);
    CHECK(to_text(bad).find("FAIL") != std::string::npos);
}
