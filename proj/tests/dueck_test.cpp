#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "onebit/dueck.hpp"
#include "onebit/errors.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>

using namespace onebit;
using namespace onebit::dueck;

namespace {

// The channel written out as a literal table of characters, independent of the library.
std::pair<char, char> table_w(char x1, char x2) {
    static const std::map<std::pair<char, char>, std::pair<char, char>> w{
        {{'a', '0'}, {'c', '0'}}, {{'b', '0'}, {'c', '0'}}, {{'A', '0'}, {'A', '0'}}, {{'B', '0'}, {'B', '0'}},
        {{'a', '1'}, {'a', '1'}}, {{'b', '1'}, {'b', '1'}}, {{'A', '1'}, {'C', '1'}}, {{'B', '1'}, {'C', '1'}},
    };
    return w.at({x1, x2});
}

std::vector<std::string> all_strings(const std::string& alphabet, std::size_t n) {
    std::vector<std::string> out{""};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> next;
        for (const auto& s : out)
            for (char c : alphabet) next.push_back(s + c);
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("w_single examples") {
    CHECK(w_single(Sym1::a, Sym2::zero) == Output{SymY1::c, Sym2::zero});
    CHECK(w_single(Sym1::A, Sym2::one) == Output{SymY1::C, Sym2::one});
    CHECK(w_single(Sym1::b, Sym2::one) == Output{SymY1::b, Sym2::one});
}

TEST_CASE("w_single agrees with the literal table on all 8 inputs") {
    for (Sym1 x1 : kAllSym1)
        for (Sym2 x2 : kAllSym2) {
            const auto [y, y2] = table_w(to_char(x1), to_char(x2));
            const Output out = w_single(x1, x2);
            CHECK(to_char(out.y) == y);
            CHECK(to_char(out.x2) == y2);
        }
}

TEST_CASE("w_block examples and second output equals x2") {
    CHECK(w_block(parse_x1("aA"), parse_x2("01")) == BlockOutput{parse_y1("cC"), parse_x2("01")});
    CHECK(w_block(parse_x1("bB"), parse_x2("10")) == BlockOutput{parse_y1("bB"), parse_x2("10")});
    for (const auto& x1 : all_strings("abAB", 3))
        for (const auto& x2 : all_strings("01", 3)) {
            const auto out = w_block(parse_x1(x1), parse_x2(x2));
            CHECK(to_string(out.x2) == x2);
            for (std::size_t i = 0; i < 3; ++i) CHECK(to_char(out.y[i]) == table_w(x1[i], x2[i]).first);
        }
    CHECK_THROWS_AS(w_block(parse_x1("ab"), parse_x2("0")), std::invalid_argument);
}

TEST_CASE("toggle examples and involution") {
    CHECK(toggle(parse_x1("aBbA")) == parse_x1("AbBa"));
    CHECK(toggle(parse_x1("aaa")) == parse_x1("AAA"));
    for (const auto& s : all_strings("abAB", 4)) {
        const X1Word w = parse_x1(s);
        CHECK(toggle(toggle(w)) == w);
        CHECK(toggle(w) != w);
    }
}

TEST_CASE("contraction_count and is_good") {
    CHECK(contraction_count(parse_y1("cCaB")) == 2);
    CHECK(contraction_count(parse_y1("abAB")) == 0);
    CHECK(contraction_count(parse_y1("ccc")) == 3);
    CHECK(is_good(parse_y1("cCaB")));
    CHECK_FALSE(is_good(parse_y1("cCcB")));
    CHECK(is_good(parse_y1("ab")));
}

TEST_CASE("toggled input conserves the contraction count") {
    for (std::size_t n = 1; n <= 4; ++n)
        for (const auto& x1 : all_strings("abAB", n))
            for (const auto& x2 : all_strings("01", n)) {
                const X1Word w = parse_x1(x1);
                const X2Word v = parse_x2(x2);
                const auto c0 = contraction_count(w_block(w, v).y);
                const auto c1 = contraction_count(w_block(toggle(w), v).y);
                CHECK(c0 + c1 == n);
            }
}

TEST_CASE("decode_x2 examples and per-symbol brute force") {
    CHECK(decode_x2(parse_y1("caAC")) == parse_x2("0101"));
    CHECK(decode_x2(parse_y1("AB")) == parse_x2("00"));
    std::map<char, std::set<char>> seen;
    for (char x1 : std::string("abAB"))
        for (char x2 : std::string("01")) {
            const auto [y, y2] = table_w(x1, x2);
            seen[y].insert(y2);
        }
    REQUIRE(seen.size() == 6);
    for (SymY1 y : kAllSymY1) {
        REQUIRE(seen[to_char(y)].size() == 1);
        CHECK(to_char(decode_x2(y)) == *seen[to_char(y)].begin());
    }
}

TEST_CASE("preimage examples") {
    auto as_set = [](const std::vector<X1Word>& v) {
        std::set<std::string> s;
        for (const auto& w : v) s.insert(to_string(w));
        return s;
    };
    CHECK(as_set(preimage(parse_y1("c"))) == std::set<std::string>{"a", "b"});
    CHECK(as_set(preimage(parse_y1("a"))) == std::set<std::string>{"a"});
    CHECK(as_set(preimage(parse_y1("cC"))) == std::set<std::string>{"aA", "aB", "bA", "bB"});
}

TEST_CASE("preimage matches a brute-force inverse of the literal table") {
    for (std::size_t n = 1; n <= 3; ++n) {
        std::map<std::string, std::set<std::string>> inverse;
        for (const auto& x1 : all_strings("abAB", n))
            for (const auto& x2 : all_strings("01", n)) {
                std::string y;
                for (std::size_t i = 0; i < n; ++i) y += table_w(x1[i], x2[i]).first;
                inverse[y].insert(x1);
            }
        for (const auto& y : all_strings("abcABC", n)) {
            std::set<std::string> got;
            for (const auto& w : preimage(parse_y1(y))) got.insert(to_string(w));
            const auto it = inverse.find(y);
            CHECK(got == (it == inverse.end() ? std::set<std::string>{} : it->second));
            if (it != inverse.end()) CHECK(got.size() == (1u << contraction_count(parse_y1(y))));
        }
    }
}

TEST_CASE("phase1_decode examples and unreachable outputs") {
    CHECK(phase1_decode(SymY1::c, Sym2::zero) == Phase1Symbol{Sym1::a, Sym2::zero});
    CHECK(phase1_decode(SymY1::C, Sym2::one) == Phase1Symbol{Sym1::A, Sym2::one});
    CHECK(phase1_decode(SymY1::a, Sym2::one) == Phase1Symbol{Sym1::a, Sym2::one});
    CHECK(phase1_decode(SymY1::A, Sym2::zero) == Phase1Symbol{Sym1::A, Sym2::zero});
    CHECK_THROWS_AS(phase1_decode(SymY1::b, Sym2::one), DecodeError);
    CHECK_THROWS_AS(phase1_decode(SymY1::B, Sym2::zero), DecodeError);
    CHECK_THROWS_AS(phase1_decode(SymY1::c, Sym2::one), DecodeError);
}

TEST_CASE("word text round trip and rejects bad characters") {
    for (const auto& s : all_strings("abcABC", 3)) CHECK(to_string(parse_y1(s)) == s);
    CHECK(to_string(parse_x1("aBbA")) == "aBbA");
    CHECK(to_string(parse_x2("0110")) == "0110");
    CHECK_THROWS_AS(parse_x1("ac"), std::invalid_argument);
    CHECK_THROWS_AS(parse_x2("012"), std::invalid_argument);
    CHECK_THROWS_AS(parse_y1("ax"), std::invalid_argument);
}
