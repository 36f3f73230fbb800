#pragma once

#include <cstdint>
#include <vector>

#include "thresec/channel.hpp"
#include "thresec/scheme.hpp"

namespace thresec {

// Codeword bits re-expanded to length n with erasures at the key positions.
struct ErasureWord {
    std::vector<ChannelSymbol> symbols;  // GF(2) values or `e`

    std::size_t size() const { return symbols.size(); }
    std::vector<std::size_t> erasure_positions() const {
        std::vector<std::size_t> p;
        for (std::size_t i = 0; i < symbols.size(); ++i)
            if (symbols[i].erased()) p.push_back(i);
        return p;
    }
};

// Key bits addressed by their global position in u; the domain is exactly
// the scheme's A^c.
class KeyMap {
  public:
    static KeyMap from_scheme(const ThresholdScheme& scheme, const Vec& key);
    static KeyMap from_positions(std::size_t n,
                                 const std::vector<std::size_t>& positions,
                                 const std::vector<std::uint8_t>& bits);

    std::size_t n() const { return bit_at_.size(); }
    bool has(std::size_t i) const { return bit_at_[i] >= 0; }
    std::uint8_t at(std::size_t i) const;
    std::vector<std::size_t> domain() const;

  private:
    std::vector<std::int8_t> bit_at_;  // -1 = not a key position
};

// Re-expand a codeword of an RM default-layout scheme to length n, with the
// codeword bits at the A positions and erasures at A^c.
ErasureWord embed_erasures(const ThresholdScheme& scheme, const Vec& codeword);

struct ScResult {
    std::vector<std::uint8_t> u;  // pi(k, m), length n
    std::vector<std::uint8_t> h;  // u * F2^{kron log2 n}, the re-encoded value
};

// Successive cancellation decoder for the RM scheme on a noiseless channel.
// z must carry erasures exactly at A_c, with key bits available there; then
// u is recovered exactly for any key length k <= n. The right half-block is
// decoded first, re-encoded, and cancelled into the left half.
ScResult sc_decode(const KeyMap& key, const ErasureWord& z,
                   const std::vector<std::size_t>& A_c);

// In-place fast transform x := x * F2^{kron s}, O(n log n) bit operations.
void rm_transform_inplace(std::vector<std::uint8_t>& x);

// Quasi-linear encoder for RM default-layout schemes: assembles u, applies
// the fast transform, and keeps the A positions.
Vec rm_encode_fast(const ThresholdScheme& scheme, const Vec& message,
                   const Vec& key);

}  // namespace thresec
