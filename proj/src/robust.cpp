#include "thresec/robust.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

namespace thresec {

NoisyWord bec_transmit(const Vec& codeword, double eps, std::uint64_t seed) {
    if (eps < 0.0 || eps > 1.0) throw Error("erasure probability must be in [0,1]");
    std::mt19937_64 rng(seed);
    NoisyWord w;
    w.symbols.reserve(codeword.size());
    for (auto x : codeword.v) {
        double u = double(rng() >> 11) * 0x1.0p-53;  // uniform in [0,1)
        w.symbols.push_back(u < eps ? ChannelSymbol::erasure()
                                    : ChannelSymbol::of(x));
    }
    return w;
}

NoisyWord erase_at(const Vec& codeword, const std::vector<std::size_t>& positions) {
    NoisyWord w = NoisyWord::exact(codeword);
    for (auto p : positions) {
        if (p >= w.size()) throw DimensionError("erasure position out of range");
        w.symbols[p] = ChannelSymbol::erasure();
    }
    return w;
}

ConcatScheme::ConcatScheme(ThresholdScheme outer, LinearCode inner,
                           std::uint64_t dmin_budget)
    : outer_(std::move(outer)), inner_(std::move(inner)), dmin_(0) {
    if (!outer_.field()->same_as(*inner_.field()))
        throw FieldMismatchError("outer and inner codes use different fields");
    if (inner_.m() != outer_.m())
        throw DimensionError("inner code dimension must equal the outer codeword length");
    dmin_ = inner_.require_dmin(dmin_budget);
}

CodingMap ConcatScheme::composed_map() const {
    CodingMap cm;
    cm.W = outer_.W() * inner_.generator();
    cm.A = outer_.A();
    cm.Ac = outer_.A_c();
    return cm;
}

Vec concat_encode(const ConcatScheme& cs, const Vec& message, const Vec& key) {
    return cs.outer().encode(message, key) * cs.inner().generator();
}

namespace {

// Inner-stage decode: recover the inner message (= outer codeword) from the
// received word.
Vec inner_decode(const ConcatScheme& cs, const NoisyWord& y,
                 std::uint64_t bruteforce_budget) {
    const LinearCode& inner = cs.inner();
    const Field& f = *inner.field();
    if (y.size() != inner.n()) throw DimensionError("received length mismatch");

    std::vector<std::size_t> alive;
    for (std::size_t j = 0; j < y.size(); ++j)
        if (!y.symbols[j].erased()) alive.push_back(j);
    const std::size_t rho = y.size() - alive.size();
    if (rho + 1 > cs.D_min())
        throw DecodingFailure("erasure count exceeds D_min - 1");

    Matrix g_alive(inner.field(), inner.m(), alive.size());
    Vec y_alive(inner.field(), alive.size());
    for (std::size_t c = 0; c < alive.size(); ++c) {
        for (std::size_t i = 0; i < inner.m(); ++i)
            g_alive.set(i, c, inner.generator().get(i, alive[c]));
        y_alive.v[c] = static_cast<std::uint16_t>(y.symbols[alive[c]].value());
    }

    // Error-free case: the survivors pin a unique inner message exactly.
    try {
        return solve_row(g_alive, y_alive);
    } catch (const UnderdeterminedError&) {
        throw DecodingFailure("erasure pattern leaves the inner message ambiguous");
    } catch (const InconsistentSystemError&) {
        // Errors present: fall through to bounded-distance search.
    }

    const std::uint32_t q = f.order();
    double states = inner.m() * std::log2(double(q));
    if (states > std::log2(double(bruteforce_budget)))
        throw CapabilityError(
            "error correction needs brute force beyond the q^m budget");
    const std::size_t tau_cap = (cs.D_min() - 1 - rho) / 2;

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < inner.m(); ++i) total *= q;
    std::size_t best_dist = alive.size() + 1;
    bool best_tied = false;
    Vec best_msg(inner.field(), inner.m());
    std::vector<std::uint16_t> msg(inner.m(), 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t v = idx;
        for (std::size_t i = 0; i < inner.m(); ++i) {
            msg[i] = static_cast<std::uint16_t>(v % q);
            v /= q;
        }
        std::size_t dist = 0;
        for (std::size_t c = 0; c < alive.size() && dist <= best_dist; ++c) {
            std::uint32_t sym = 0;
            for (std::size_t i = 0; i < inner.m(); ++i)
                sym = f.add(sym, f.mul(msg[i], g_alive.get(i, c)));
            dist += (sym != y_alive.v[c]);
        }
        if (dist < best_dist) {
            best_dist = dist;
            best_tied = false;
            for (std::size_t i = 0; i < inner.m(); ++i) best_msg.v[i] = msg[i];
        } else if (dist == best_dist) {
            best_tied = true;
        }
    }
    if (best_dist > tau_cap)
        throw DecodingFailure("error count exceeds the correction radius");
    if (best_tied)
        throw DecodingFailure("nearest inner codeword is not unique");
    return best_msg;
}

}  // namespace

Vec concat_decode(const ConcatScheme& cs, const NoisyWord& received,
                  const Vec& key, std::uint64_t bruteforce_budget) {
    Vec outer_cw = inner_decode(cs, received, bruteforce_budget);
    return cs.outer().decode_generic(outer_cw, key);
}

namespace {

// Natural-orientation block recursion:
//   Gtilde(s,r) = [[G1, G1], [G1, G0+G1]]
// with G1 = Gtilde(s-1,r), G0 = Gtilde(s-1,r-1); the parameter r saturates
// at the block size since RM(s',r'>=s') keeps every row.
Matrix gtilde_rec(std::size_t s, std::size_t r, const FieldPtr& f2) {
    const std::size_t n = std::size_t(1) << s;
    if (r == 0) {
        Matrix ones(f2, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) ones.set(i, j, 1);
        return ones;
    }
    Matrix g1 = gtilde_rec(s - 1, std::min(r, s - 1), f2);
    Matrix g0 = gtilde_rec(s - 1, r - 1, f2);
    const std::size_t h = n / 2;
    Matrix g(f2, n, n);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) {
            std::uint16_t a = g1.get(i, j);
            g.set(i, j, a);
            g.set(i, j + h, a);
            g.set(i + h, j, a);
            g.set(i + h, j + h, a ^ g0.get(i, j));
        }
    return g;
}

}  // namespace

Matrix build_gtilde(std::size_t s, std::size_t r) {
    if (r > s) throw Error("build_gtilde requires r <= s");
    return gtilde_rec(s, r, Field::prime(2));
}

UnifiedRmScheme::UnifiedRmScheme(std::size_t s, std::size_t r)
    : s_(s), r_(r), f2_(Field::prime(2)) {
    if (r > s) throw Error("unified scheme requires r <= s");
    for (std::size_t j = 0; j < (std::size_t(1) << s); ++j) {
        if (std::popcount(j) <= static_cast<int>(r))
            A_.push_back(j);
        else
            Ac_.push_back(j);
    }
    gtilde_ = build_gtilde(s, r);
}

Vec UnifiedRmScheme::assemble_input(const Vec& message, const Vec& key) const {
    if (message.size() != m() || key.size() != k())
        throw DimensionError("message/key length does not match scheme");
    Vec u(f2_, n());
    for (std::size_t i = 0; i < A_.size(); ++i) u.v[A_[i]] = message.v[i];
    for (std::size_t i = 0; i < Ac_.size(); ++i) u.v[Ac_[i]] = key.v[i];
    return u;
}

KeyMap UnifiedRmScheme::key_map(const Vec& key) const {
    if (key.size() != k()) throw DimensionError("key length does not match scheme");
    std::vector<std::uint8_t> bits(key.v.begin(), key.v.end());
    return KeyMap::from_positions(n(), Ac_, bits);
}

CodingMap UnifiedRmScheme::coding_map() const {
    CodingMap cm;
    cm.W = gtilde_;
    cm.A = A_;
    cm.Ac = Ac_;
    return cm;
}

Vec unified_encode(const UnifiedRmScheme& us, const Vec& message, const Vec& key) {
    return us.assemble_input(message, key) * us.gtilde();
}

namespace {

struct DecBeCtx {
    const KeyMap& key;
    std::vector<std::uint8_t>& u;
};

// Decodes the unified sub-scheme (s, r) on the global u-range [lo, lo+2^s);
// returns the sub-codeword u_range * Gtilde(s, r).
std::vector<std::uint8_t> dec_be_rec(DecBeCtx& ctx,
                                     std::vector<ChannelSymbol> y, std::size_t lo,
                                     std::size_t s, std::size_t r) {
    const std::size_t n = std::size_t(1) << s;
    if (r == 0) {
        // Repetition block: every codeword symbol equals the parity of the
        // block's u-range; keys pin all but (at most) one position.
        std::uint8_t parity = 0;
        bool have_parity = false;
        for (auto sym : y)
            if (!sym.erased()) {
                parity = static_cast<std::uint8_t>(sym.value());
                have_parity = true;
                break;
            }
        std::vector<std::size_t> open;
        std::uint8_t key_xor = 0;
        for (std::size_t i = lo; i < lo + n; ++i) {
            if (ctx.key.has(i)) {
                ctx.u[i] = ctx.key.at(i);
                key_xor ^= ctx.u[i];
            } else {
                open.push_back(i);
            }
        }
        if (open.size() > 1)
            throw Error("key positions inconsistent with the RM structure");
        if (open.size() == 1) {
            if (!have_parity)
                throw DecodingFailure("repetition block fully erased");
            ctx.u[open[0]] = static_cast<std::uint8_t>(parity ^ key_xor);
        } else {
            // All positions keyed: the parity is determined without y.
            parity = key_xor;
        }
        return std::vector<std::uint8_t>(n, parity);
    }

    const std::size_t half = n / 2;
    // Folding the halves cancels u_left: the fold is a codeword of the
    // (s-1, r-1) sub-scheme for the second half of u.
    std::vector<ChannelSymbol> fold(half);
    for (std::size_t i = 0; i < half; ++i)
        fold[i] = xor_sym(y[i], y[half + i]);
    std::vector<std::uint8_t> h_fold =
        dec_be_rec(ctx, std::move(fold), lo + half, s - 1, r - 1);

    // Cancel the decoded second half out of both halves of y; each then
    // equals u_left * Gtilde(s-1, r) up to its own erasures.
    Matrix g1 = build_gtilde(s - 1, std::min(r, s - 1));
    std::vector<std::uint8_t> h2(half, 0);
    for (std::size_t i = 0; i < half; ++i) {
        if (!ctx.u[lo + half + i]) continue;
        for (std::size_t j = 0; j < half; ++j) h2[j] ^= g1.get(i, j);
    }
    std::vector<ChannelSymbol> left(half), right(half);
    std::size_t left_era = 0, right_era = 0;
    for (std::size_t i = 0; i < half; ++i) {
        left[i] = xor_sym(y[i], ChannelSymbol::of(h2[i]));
        right[i] = xor_sym(y[half + i],
                           ChannelSymbol::of(h_fold[i] ^ h2[i]));
        left_era += left[i].erased();
        right_era += right[i].erased();
    }
    // Ties go to the first half.
    std::vector<std::uint8_t> h1 =
        dec_be_rec(ctx, left_era <= right_era ? std::move(left) : std::move(right),
                   lo, s - 1, std::min(r, s - 1));

    std::vector<std::uint8_t> h(n);
    for (std::size_t i = 0; i < half; ++i) {
        h[i] = static_cast<std::uint8_t>(h1[i] ^ h2[i]);
        h[half + i] = static_cast<std::uint8_t>(h1[i] ^ h_fold[i] ^ h2[i]);
    }
    return h;
}

}  // namespace

DecBeResult dec_be(const KeyMap& key, const NoisyWord& y,
                   const std::vector<std::size_t>& A_c, std::size_t s,
                   std::size_t r) {
    if (r > s) throw Error("dec_be requires r <= s");
    const std::size_t n = std::size_t(1) << s;
    if (y.size() != n) throw DimensionError("received length must be 2^s");
    if (key.n() != n) throw DimensionError("key map covers a different length");
    std::vector<std::size_t> sorted_ac = A_c;
    std::sort(sorted_ac.begin(), sorted_ac.end());
    if (key.domain() != sorted_ac)
        throw Error("key positions inconsistent with A_c");

    DecBeResult res;
    res.u.assign(n, 0);
    DecBeCtx ctx{key, res.u};
    res.h = dec_be_rec(ctx, y.symbols, 0, s, r);
    return res;
}

}  // namespace thresec
