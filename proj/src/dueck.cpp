#include "onebit/dueck.hpp"

#include "onebit/errors.hpp"

#include <stdexcept>

namespace onebit::dueck {

namespace {

constexpr char kSym1Chars[] = {'a', 'b', 'A', 'B'};
constexpr char kSymY1Chars[] = {'a', 'b', 'c', 'A', 'B', 'C'};

template <typename Sym, std::size_t N>
Word<Sym> parse_with(std::string_view text, const char (&table)[N], const char* what) {
    std::vector<Sym> symbols;
    symbols.reserve(text.size());
    for (char ch : text) {
        std::size_t i = 0;
        while (i < N && table[i] != ch) ++i;
        if (i == N)
            throw std::invalid_argument(std::string("invalid ") + what + " symbol '" + ch + "'");
        symbols.push_back(static_cast<Sym>(i));
    }
    return Word<Sym>(std::move(symbols));
}

template <typename Sym>
std::string stringify(const Word<Sym>& w) {
    std::string out;
    out.reserve(w.size());
    for (Sym s : w) out.push_back(to_char(s));
    return out;
}

}  // namespace

char to_char(Sym1 s) { return kSym1Chars[code(s)]; }
char to_char(Sym2 s) { return s == Sym2::one ? '1' : '0'; }
char to_char(SymY1 s) { return kSymY1Chars[code(s)]; }

std::string to_string(const X1Word& w) { return stringify(w); }
std::string to_string(const X2Word& w) { return stringify(w); }
std::string to_string(const Y1Word& w) { return stringify(w); }

X1Word parse_x1(std::string_view text) { return parse_with<Sym1>(text, kSym1Chars, "input"); }

X2Word parse_x2(std::string_view text) {
    static constexpr char bits[] = {'0', '1'};
    return parse_with<Sym2>(text, bits, "bit");
}

Y1Word parse_y1(std::string_view text) { return parse_with<SymY1>(text, kSymY1Chars, "output"); }

SymY1 as_output(Sym1 s) {
    switch (s) {
        case Sym1::a: return SymY1::a;
        case Sym1::b: return SymY1::b;
        case Sym1::A: return SymY1::A;
        case Sym1::B: return SymY1::B;
    }
    return SymY1::a;
}

Output w_single(Sym1 x1, Sym2 x2) {
    const bool lower = x1 == Sym1::a || x1 == Sym1::b;
    if (lower && x2 == Sym2::zero) return {SymY1::c, Sym2::zero};
    if (!lower && x2 == Sym2::one) return {SymY1::C, Sym2::one};
    return {as_output(x1), x2};
}

BlockOutput w_block(const X1Word& x1, const X2Word& x2, SymbolMap map) {
    if (x1.size() != x2.size())
        throw std::invalid_argument("w_block: input words have lengths " + std::to_string(x1.size()) +
                                    " and " + std::to_string(x2.size()));
    BlockOutput out{Y1Word(x1.size()), x2};
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const Output o = map(x1[i], x2[i]);
        out.y[i] = o.y;
        out.x2[i] = o.x2;
    }
    return out;
}

Sym1 toggle(Sym1 s) {
    switch (s) {
        case Sym1::a: return Sym1::A;
        case Sym1::b: return Sym1::B;
        case Sym1::A: return Sym1::a;
        case Sym1::B: return Sym1::b;
    }
    return s;
}

X1Word toggle(const X1Word& w) {
    X1Word out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = toggle(w[i]);
    return out;
}

bool is_contracted(SymY1 s) { return s == SymY1::c || s == SymY1::C; }

std::size_t contraction_count(const Y1Word& y) {
    std::size_t count = 0;
    for (SymY1 s : y) count += is_contracted(s) ? 1 : 0;
    return count;
}

bool is_good(const Y1Word& y) { return 2 * contraction_count(y) <= y.size(); }

Sym2 decode_x2(SymY1 s) {
    switch (s) {
        case SymY1::c:
        case SymY1::A:
        case SymY1::B: return Sym2::zero;
        case SymY1::C:
        case SymY1::a:
        case SymY1::b: return Sym2::one;
    }
    return Sym2::zero;
}

X2Word decode_x2(const Y1Word& y) {
    X2Word out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = decode_x2(y[i]);
    return out;
}

void for_each_preimage(const Y1Word& y, const std::function<void(const X1Word&)>& visit) {
    const std::size_t n = y.size();
    // Per-position candidates, already in canonical order since kAllSym1 is.
    std::vector<std::vector<Sym1>> candidates(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Sym2 x2 = decode_x2(y[i]);
        for (Sym1 s : kAllSym1)
            if (w_single(s, x2).y == y[i]) candidates[i].push_back(s);
        if (candidates[i].empty()) return;
    }

    // Odometer walk, last position fastest.
    std::vector<std::size_t> digit(n, 0);
    X1Word current(n);
    for (std::size_t i = 0; i < n; ++i) current[i] = candidates[i][0];
    while (true) {
        visit(current);
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < candidates[pos].size()) {
                current[pos] = candidates[pos][digit[pos]];
                break;
            }
            digit[pos] = 0;
            current[pos] = candidates[pos][0];
            if (pos == 0) return;
        }
        if (n == 0) return;
    }
}

std::vector<X1Word> preimage(const Y1Word& y) {
    std::vector<X1Word> out;
    for_each_preimage(y, [&](const X1Word& x1) { out.push_back(x1); });
    return out;
}

Phase1Symbol phase1_decode(SymY1 y, Sym2 x2) {
    if (x2 == Sym2::zero) {
        if (y == SymY1::c) return {Sym1::a, Sym2::zero};
        if (y == SymY1::A) return {Sym1::A, Sym2::zero};
    } else {
        if (y == SymY1::a) return {Sym1::a, Sym2::one};
        if (y == SymY1::C) return {Sym1::A, Sym2::one};
    }
    throw DecodeError(std::string("phase-1 output (") + to_char(y) + "," + to_char(x2) +
                      ") is not produced by any input in {a,A}x{0,1}");
}

}  // namespace onebit::dueck
