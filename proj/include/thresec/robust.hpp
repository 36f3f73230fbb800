#pragma once

#include <cstdint>
#include <vector>

#include "thresec/channel.hpp"
#include "thresec/rm_sc.hpp"
#include "thresec/scheme.hpp"

namespace thresec {

// Outer threshold scheme concatenated with an inner [N, m, D_min] error
// correcting code of the same dimension: c = u W G_r. The threshold t of the
// composition equals the outer t.
class ConcatScheme {
  public:
    ConcatScheme(ThresholdScheme outer, LinearCode inner,
                 std::uint64_t dmin_budget = 1ull << 24);

    const ThresholdScheme& outer() const { return outer_; }
    const LinearCode& inner() const { return inner_; }
    std::size_t N() const { return inner_.n(); }
    std::size_t D_min() const { return dmin_; }
    std::size_t t() const { return outer_.t(); }

    // W G_r with the outer index split, for the audit engine.
    CodingMap composed_map() const;

  private:
    ThresholdScheme outer_;
    LinearCode inner_;
    std::size_t dmin_;
};

Vec concat_encode(const ConcatScheme& cs, const Vec& message, const Vec& key);

// Inner stage first: erasures are repaired by solving the linear system on
// the surviving coordinates; errors fall back to bounded-distance search over
// all q^m inner messages (within budget). Outer stage is the generic decoder.
// Correct whenever 2*tau + rho <= D_min - 1.
Vec concat_decode(const ConcatScheme& cs, const NoisyWord& received,
                  const Vec& key, std::uint64_t bruteforce_budget = 1ull << 20);

// Gtilde(s,r) = G(s,r)^T G(s,r) built by block recursion; bottoms out at the
// all-ones matrix for r = 0. Oriented to match the natural Kronecker row
// order of the direct product.
Matrix build_gtilde(std::size_t s, std::size_t r);

// The unified scheme: same RM code for threshold security and robustness,
// c = u * Gtilde(s,r), decodable by one SC pass under erasures. Carries no
// proper-ness certificate: r < ceil((s-1)/2) layouts (k > m) are legitimate
// here even though they cannot be proper.
class UnifiedRmScheme {
  public:
    UnifiedRmScheme(std::size_t s, std::size_t r);

    std::size_t s() const { return s_; }
    std::size_t r() const { return r_; }
    std::size_t n() const { return std::size_t(1) << s_; }
    std::size_t m() const { return A_.size(); }
    std::size_t k() const { return Ac_.size(); }
    std::size_t t() const { return (std::size_t(1) << (s_ - r_)) - 1; }
    std::size_t D_min() const { return std::size_t(1) << (s_ - r_); }
    const std::vector<std::size_t>& A() const { return A_; }
    const std::vector<std::size_t>& A_c() const { return Ac_; }
    const Matrix& gtilde() const { return gtilde_; }
    const FieldPtr& field() const { return f2_; }

    Vec assemble_input(const Vec& message, const Vec& key) const;
    KeyMap key_map(const Vec& key) const;

    // The n x n map with the RM index split, for the audit engine.
    CodingMap coding_map() const;

  private:
    std::size_t s_, r_;
    FieldPtr f2_;
    std::vector<std::size_t> A_, Ac_;
    Matrix gtilde_;
};

Vec unified_encode(const UnifiedRmScheme& us, const Vec& message, const Vec& key);

struct DecBeResult {
    std::vector<std::uint8_t> u;  // pi(k, m)
    std::vector<std::uint8_t> h;  // the repaired codeword
};

// Unified SC decoder for binary erasures: recovers u and the codeword from a
// received word with at most D_min - 1 erasures, given the key. Throws
// DecodingFailure on an all-erased repetition block; violations of the
// erasure budget beyond that case are not guaranteed to be detected.
DecBeResult dec_be(const KeyMap& key, const NoisyWord& y,
                   const std::vector<std::size_t>& A_c, std::size_t s,
                   std::size_t r);

}  // namespace thresec
