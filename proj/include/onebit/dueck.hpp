#pragma once

// Dueck's deterministic contraction MAC.
//
// Transmitter 1 sends a symbol from {a, b, A, B}, transmitter 2 a bit. The
// receiver sees (y, x2) where y is x1 itself except that (a,0) and (b,0)
// contract to c, and (A,1) and (B,1) contract to C. The second output
// coordinate always equals x2.
//
// Symbol codes follow the canonical order a < b < c < A < B < C; input
// symbols use the induced order a < b < A < B. Word comparison is
// lexicographic in that order, position 0 most significant.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace onebit::dueck {

enum class Sym1 : std::uint8_t { a = 0, b = 1, A = 2, B = 3 };
enum class Sym2 : std::uint8_t { zero = 0, one = 1 };
enum class SymY1 : std::uint8_t { a = 0, b = 1, c = 2, A = 3, B = 4, C = 5 };

inline constexpr std::array<Sym1, 4> kAllSym1{Sym1::a, Sym1::b, Sym1::A, Sym1::B};
inline constexpr std::array<Sym2, 2> kAllSym2{Sym2::zero, Sym2::one};
inline constexpr std::array<SymY1, 6> kAllSymY1{SymY1::a, SymY1::b, SymY1::c,
                                                SymY1::A, SymY1::B, SymY1::C};

constexpr std::uint8_t code(Sym1 s) { return static_cast<std::uint8_t>(s); }
constexpr std::uint8_t code(Sym2 s) { return static_cast<std::uint8_t>(s); }
constexpr std::uint8_t code(SymY1 s) { return static_cast<std::uint8_t>(s); }

char to_char(Sym1 s);
char to_char(Sym2 s);
char to_char(SymY1 s);

// Fixed-length symbol vector. Words of different length compare by the
// usual lexicographic rule but never combine in channel operations.
template <typename Sym>
class Word {
public:
    using value_type = Sym;

    Word() = default;
    explicit Word(std::size_t n, Sym fill = Sym{}) : symbols_(n, fill) {}
    explicit Word(std::vector<Sym> symbols) : symbols_(std::move(symbols)) {}
    Word(std::initializer_list<Sym> symbols) : symbols_(symbols) {}

    std::size_t size() const { return symbols_.size(); }
    Sym operator[](std::size_t i) const { return symbols_[i]; }
    Sym& operator[](std::size_t i) { return symbols_[i]; }
    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }
    const std::vector<Sym>& symbols() const { return symbols_; }

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Sym> symbols_;
};

using X1Word = Word<Sym1>;
using X2Word = Word<Sym2>;
using Y1Word = Word<SymY1>;

struct WordHash {
    template <typename Sym>
    std::size_t operator()(const Word<Sym>& w) const noexcept {
        // FNV-1a over the symbol codes.
        std::uint64_t h = 1469598103934665603ull;
        for (Sym s : w) {
            h ^= static_cast<std::uint8_t>(s);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

std::string to_string(const X1Word& w);
std::string to_string(const X2Word& w);
std::string to_string(const Y1Word& w);

// Inverses of to_string; throw std::invalid_argument on a foreign character.
X1Word parse_x1(std::string_view text);
X2Word parse_x2(std::string_view text);
Y1Word parse_y1(std::string_view text);

struct Output {
    SymY1 y;
    Sym2 x2;
    friend bool operator==(const Output&, const Output&) = default;
};

// Single-letter channel law. The oracle substitutes mutants through this type.
using SymbolMap = Output (*)(Sym1, Sym2);

// Uncontracted input symbol as an output symbol (a->a, ..., B->B).
SymY1 as_output(Sym1 s);

Output w_single(Sym1 x1, Sym2 x2);

struct BlockOutput {
    Y1Word y;
    X2Word x2;
    friend bool operator==(const BlockOutput&, const BlockOutput&) = default;
};

// Componentwise extension; throws std::invalid_argument on a length mismatch.
BlockOutput w_block(const X1Word& x1, const X2Word& x2, SymbolMap map = w_single);

Sym1 toggle(Sym1 s);
X1Word toggle(const X1Word& w);

bool is_contracted(SymY1 s);
std::size_t contraction_count(const Y1Word& y);

// Good means at most 2^{n/2} preimages, i.e. contraction_count(y) <= n/2.
bool is_good(const Y1Word& y);

// c->0, C->1, a/b->1, A/B->0. Total on all symbols.
Sym2 decode_x2(SymY1 s);
X2Word decode_x2(const Y1Word& y);

// Visits every x1 with w_block(x1, decode_x2(y)).y == y in lexicographic
// order. Visits nothing when y is unreachable.
void for_each_preimage(const Y1Word& y, const std::function<void(const X1Word&)>& visit);

std::vector<X1Word> preimage(const Y1Word& y);

struct Phase1Symbol {
    Sym1 x1;
    Sym2 x2;
    friend bool operator==(const Phase1Symbol&, const Phase1Symbol&) = default;
};

// Inverts W restricted to {a, A} x {0, 1}. Throws DecodeError otherwise.
Phase1Symbol phase1_decode(SymY1 y, Sym2 x2);

}  // namespace onebit::dueck
