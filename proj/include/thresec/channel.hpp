#pragma once

#include <cstdint>
#include <vector>

#include "thresec/linalg.hpp"

namespace thresec {

// A transmitted symbol: either a field value or the erasure marker `e`.
// The erased state is a distinct third state, never a bit value.
class ChannelSymbol {
  public:
    ChannelSymbol() : raw_(kErased) {}
    static ChannelSymbol erasure() { return ChannelSymbol(); }
    static ChannelSymbol of(std::uint32_t value) {
        ChannelSymbol s;
        s.raw_ = value;
        return s;
    }

    bool erased() const { return raw_ == kErased; }
    std::uint32_t value() const {
        if (erased()) throw Error("reading an erased symbol");
        return raw_;
    }

    friend bool operator==(ChannelSymbol a, ChannelSymbol b) {
        return a.raw_ == b.raw_;
    }

  private:
    static constexpr std::uint32_t kErased = 0xFFFFFFFFu;
    std::uint32_t raw_;
};

// Erasure-absorbing XOR on GF(2) symbols: e + x = e for every x. Total on
// all symbol pairs, which is what the folding steps of the SC decoders need.
inline ChannelSymbol xor_sym(ChannelSymbol a, ChannelSymbol b) {
    if (a.erased() || b.erased()) return ChannelSymbol::erasure();
    return ChannelSymbol::of(a.value() ^ b.value());
}

// A received word: field symbols with some positions erased (and, on the
// concatenated path, possibly silently corrupted).
struct NoisyWord {
    std::vector<ChannelSymbol> symbols;

    std::size_t size() const { return symbols.size(); }

    std::size_t erasure_count() const {
        std::size_t r = 0;
        for (auto s : symbols) r += s.erased();
        return r;
    }

    std::vector<std::size_t> erasure_positions() const {
        std::vector<std::size_t> p;
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].erased()) p.push_back(i);
        return p;
    }

    static NoisyWord exact(const Vec& v) {
        NoisyWord w;
        w.symbols.reserve(v.size());
        for (auto x : v.v) w.symbols.push_back(ChannelSymbol::of(x));
        return w;
    }
};

// Binary (symbol) erasure channel: each symbol is erased independently with
// probability eps. Deterministic for a given seed.
NoisyWord bec_transmit(const Vec& codeword, double eps, std::uint64_t seed);

// Erase exactly the listed positions.
NoisyWord erase_at(const Vec& codeword, const std::vector<std::size_t>& positions);

}  // namespace thresec
