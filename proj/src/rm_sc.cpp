#include "thresec/rm_sc.hpp"

#include <algorithm>
#include <bit>

#include "thresec/opcount.hpp"

namespace thresec {

KeyMap KeyMap::from_scheme(const ThresholdScheme& scheme, const Vec& key) {
    if (scheme.field()->order() != 2)
        throw CapabilityError("key maps are defined for GF(2) schemes");
    if (key.size() != scheme.k())
        throw DimensionError("key length does not match scheme");
    KeyMap m;
    m.bit_at_.assign(scheme.n(), -1);
    const auto& ac = scheme.A_c();
    for (std::size_t i = 0; i < ac.size(); ++i)
        m.bit_at_[ac[i]] = static_cast<std::int8_t>(key.v[i]);
    return m;
}

KeyMap KeyMap::from_positions(std::size_t n,
                              const std::vector<std::size_t>& positions,
                              const std::vector<std::uint8_t>& bits) {
    if (positions.size() != bits.size())
        throw DimensionError("positions/bits length mismatch");
    KeyMap m;
    m.bit_at_.assign(n, -1);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (positions[i] >= n) throw DimensionError("key position out of range");
        if (bits[i] > 1) throw Error("key bits must be 0 or 1");
        m.bit_at_[positions[i]] = static_cast<std::int8_t>(bits[i]);
    }
    return m;
}

std::uint8_t KeyMap::at(std::size_t i) const {
    if (bit_at_[i] < 0) throw Error("no key bit at position " + std::to_string(i));
    return static_cast<std::uint8_t>(bit_at_[i]);
}

std::vector<std::size_t> KeyMap::domain() const {
    std::vector<std::size_t> d;
    for (std::size_t i = 0; i < bit_at_.size(); ++i)
        if (bit_at_[i] >= 0) d.push_back(i);
    return d;
}

namespace {

void require_rm_default_layout(const ThresholdScheme& scheme) {
    if (scheme.code().family() != CodeFamily::rm)
        throw CapabilityError("operation needs an RM scheme");
    const auto& a = scheme.A();
    std::size_t pos = 0;
    for (std::size_t j = 0; j < scheme.n(); ++j) {
        if (std::popcount(j) > static_cast<int>(scheme.code().rm_r())) continue;
        if (pos >= a.size() || a[pos] != j)
            throw CapabilityError("operation needs the default RM index layout");
        ++pos;
    }
    if (pos != a.size())
        throw CapabilityError("operation needs the default RM index layout");
}

}  // namespace

ErasureWord embed_erasures(const ThresholdScheme& scheme, const Vec& codeword) {
    require_rm_default_layout(scheme);
    if (codeword.size() != scheme.m())
        throw DimensionError("codeword length does not match scheme");
    ErasureWord z;
    z.symbols.assign(scheme.n(), ChannelSymbol::erasure());
    const auto& a = scheme.A();
    for (std::size_t i = 0; i < a.size(); ++i)
        z.symbols[a[i]] = ChannelSymbol::of(codeword.v[i]);
    return z;
}

namespace {

// Decodes the block of z covering global u-range [lo, lo+len); writes the
// decided bits into u and returns the block's re-encoding.
std::vector<std::uint8_t> sc_rec(const KeyMap& key,
                                 std::vector<ChannelSymbol> z, std::size_t lo,
                                 std::vector<std::uint8_t>& u) {
    const std::size_t len = z.size();
    if (len == 1) {
        std::uint8_t b = z[0].erased() ? key.at(lo)
                                       : static_cast<std::uint8_t>(z[0].value());
        u[lo] = b;
        opcount::bump();
        return {b};
    }
    if (len == 2) {
        std::uint8_t u1 = z[1].erased()
                              ? key.at(lo + 1)
                              : static_cast<std::uint8_t>(z[1].value());
        std::uint8_t u0 =
            z[0].erased() ? key.at(lo)
                          : static_cast<std::uint8_t>(u1 ^ z[0].value());
        u[lo] = u0;
        u[lo + 1] = u1;
        opcount::bump(2);
        return {static_cast<std::uint8_t>(u0 ^ u1), u1};
    }
    const std::size_t half = len / 2;
    // The second half depends only on u_right, so it is decoded first and
    // its re-encoding cancelled into the first half.
    std::vector<ChannelSymbol> right(z.begin() + half, z.end());
    std::vector<std::uint8_t> hr = sc_rec(key, std::move(right), lo + half, u);
    std::vector<ChannelSymbol> zbar(half);
    for (std::size_t i = 0; i < half; ++i) {
        zbar[i] = xor_sym(ChannelSymbol::of(hr[i]), z[i]);
        opcount::bump();
    }
    std::vector<std::uint8_t> hl = sc_rec(key, std::move(zbar), lo, u);
    std::vector<std::uint8_t> h(len);
    for (std::size_t i = 0; i < half; ++i) {
        h[i] = static_cast<std::uint8_t>(hl[i] ^ hr[i]);
        h[half + i] = hr[i];
        opcount::bump();
    }
    return h;
}

}  // namespace

ScResult sc_decode(const KeyMap& key, const ErasureWord& z,
                   const std::vector<std::size_t>& A_c) {
    const std::size_t n = z.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw DimensionError("block length must be a power of 2");
    if (key.n() != n) throw DimensionError("key map covers a different length");
    std::vector<std::size_t> sorted_ac = A_c;
    std::sort(sorted_ac.begin(), sorted_ac.end());
    if (z.erasure_positions() != sorted_ac || key.domain() != sorted_ac)
        throw Error("erasure positions inconsistent with A_c");

    ScResult res;
    res.u.assign(n, 0);
    res.h = sc_rec(key, z.symbols, 0, res.u);
    return res;
}

void rm_transform_inplace(std::vector<std::uint8_t>& x) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw DimensionError("transform length must be a power of 2");
    for (std::size_t len = n; len >= 2; len >>= 1) {
        const std::size_t half = len / 2;
        for (std::size_t base = 0; base < n; base += len)
            for (std::size_t j = 0; j < half; ++j) {
                x[base + j] ^= x[base + half + j];
                opcount::bump();
            }
    }
}

Vec rm_encode_fast(const ThresholdScheme& scheme, const Vec& message,
                   const Vec& key) {
    require_rm_default_layout(scheme);
    Vec u = scheme.assemble_input(message, key);
    std::vector<std::uint8_t> x(u.v.begin(), u.v.end());
    rm_transform_inplace(x);
    Vec c(scheme.field(), scheme.m());
    const auto& a = scheme.A();
    for (std::size_t i = 0; i < a.size(); ++i) c.v[i] = x[a[i]];
    return c;
}

}  // namespace thresec
