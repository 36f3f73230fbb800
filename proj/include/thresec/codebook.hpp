#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "thresec/linalg.hpp"

namespace thresec {

enum class CodeFamily { generic, rs, rm };
enum class DminProvenance { analytic, brute_force, unknown };

// An [n, m, d_min]_q linear block code given by an m x n generator matrix of
// full row rank. d_min carries provenance so reports can tell an analytic
// value from a verified one.
class LinearCode {
  public:
    // Any full-row-rank generator; rank is verified here.
    static LinearCode generic(Matrix generator);

    // Vandermonde generator G[i][j] = (alpha^j)^i over evaluation points
    // alpha^0..alpha^(n-1); MDS, so d_min = n - m + 1.
    static LinearCode reed_solomon(FieldPtr field, std::size_t n, std::size_t m);

    // Rows of (F_2^{kron s})^T with Hamming weight >= 2^(s-r), in their
    // original (natural Kronecker) order; these are the row indices j with
    // popcount(j) <= r.
    static LinearCode reed_muller(std::size_t s, std::size_t r);

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    const FieldPtr& field() const { return field_; }
    const Matrix& generator() const { return g_; }
    CodeFamily family() const { return family_; }
    std::size_t rm_s() const { return rm_s_; }
    std::size_t rm_r() const { return rm_r_; }

    std::optional<std::size_t> dmin() const { return dmin_; }
    DminProvenance dmin_provenance() const { return prov_; }

    // Minimum Hamming weight over all nonzero codewords by full enumeration
    // of the q^m messages. Stores the result with brute-force provenance.
    std::size_t min_distance_bruteforce(std::uint64_t budget = 1ull << 24);

    // d_min, computing it by brute force if no analytic value is known.
    std::size_t require_dmin(std::uint64_t budget = 1ull << 24);

    std::string family_name() const;

  private:
    LinearCode() = default;

    std::size_t n_ = 0, m_ = 0;
    FieldPtr field_;
    Matrix g_;
    std::optional<std::size_t> dmin_;
    DminProvenance prov_ = DminProvenance::unknown;
    CodeFamily family_ = CodeFamily::generic;
    std::size_t rm_s_ = 0, rm_r_ = 0;
};

// Number of index sets j in [0, 2^s) with popcount(j) <= r, i.e. the RM(s,r)
// dimension sum_{i<=r} C(s,i).
std::size_t rm_dimension(std::size_t s, std::size_t r);

}  // namespace thresec
