#pragma once

#include <optional>
#include <vector>

#include "thresec/codebook.hpp"

namespace thresec {

// The bare coding map c = u * W with a message/key index split. Unlike
// ThresholdScheme this carries no proper-ness certificate: the audit engine
// runs on these so that deliberately broken maps can be measured too.
struct CodingMap {
    Matrix W;                    // n x L (L = codeword length)
    std::vector<std::size_t> A;  // message row indices, |A| = m
    std::vector<std::size_t> Ac; // key row indices, |Ac| = k

    std::size_t n() const { return W.rows(); }
    std::size_t codeword_len() const { return W.cols(); }
    std::size_t m() const { return A.size(); }
    std::size_t k() const { return Ac.size(); }
    const FieldPtr& field() const { return W.field(); }

    static CodingMap make(Matrix W, std::vector<std::size_t> A);

    // u = pi(k, m): message symbols scattered to A, key symbols to Ac.
    Vec assemble_input(const Vec& message, const Vec& key) const;
    Vec encode(const Vec& message, const Vec& key) const;
    // Recover the message by solving m * W_A = c - k * W_Ac; throws
    // IntegrityError when the received word lies outside the key's coset.
    Vec decode(const Vec& codeword, const Vec& key) const;

    Matrix W_A() const { return rows_selected(W, A); }
    Matrix W_Ac() const { return rows_selected(W, Ac); }
};

// A certified threshold-secure coding scheme: W = G^T for a linear block
// code, both rank conditions verified at construction, t = d_min - 1.
class ThresholdScheme {
  public:
    // Verifies |A| = m, rank(W_A) = m and rank(W_Ac) = k; computes t from the
    // code's d_min (analytic when known, brute force otherwise).
    static ThresholdScheme build(LinearCode code, std::vector<std::size_t> A,
                                 std::uint64_t dmin_budget = 1ull << 24);

    // RS: message rows first (A = 0..m-1, key = last k rows).
    // RM: A = kept-row indices of (F^T), i.e. popcount(j) <= r ascending;
    //     Ac = removed-row indices.
    // Generic codes have no default layout and need an explicit A.
    static ThresholdScheme with_default_layout(LinearCode code,
                                               std::uint64_t dmin_budget = 1ull
                                                                           << 24);

    std::size_t n() const { return map_.n(); }
    std::size_t m() const { return map_.m(); }
    std::size_t k() const { return map_.k(); }
    std::size_t t() const { return t_; }
    const FieldPtr& field() const { return map_.field(); }
    const LinearCode& code() const { return code_; }
    const CodingMap& map() const { return map_; }
    const Matrix& W() const { return map_.W; }
    const std::vector<std::size_t>& A() const { return map_.A; }
    const std::vector<std::size_t>& A_c() const { return map_.Ac; }

    // Attached when k >= m: the scheme still works, but a one-time pad
    // already covers that regime.
    bool key_longer_than_message() const { return map_.k() >= map_.m(); }

    Vec assemble_input(const Vec& message, const Vec& key) const {
        return map_.assemble_input(message, key);
    }
    Vec encode(const Vec& message, const Vec& key) const;
    Vec decode_generic(const Vec& codeword, const Vec& key) const;

    // O(m^2) decode for RS schemes with the first-m-rows layout, using the
    // Vandermonde inverse cached at build time.
    Vec decode_rs_fast(const Vec& codeword, const Vec& key) const;
    bool has_rs_fast_path() const { return rs_inv_t_.has_value(); }

  private:
    ThresholdScheme(LinearCode code, CodingMap map, std::size_t t,
                    std::optional<Matrix> rs_inv_t)
        : code_(std::move(code)), map_(std::move(map)), t_(t),
          rs_inv_t_(std::move(rs_inv_t)) {}

    LinearCode code_;
    CodingMap map_;
    std::size_t t_;
    std::optional<Matrix> rs_inv_t_;  // (V^-1)^T for the fast RS path
};

}  // namespace thresec
