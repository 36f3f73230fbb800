#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "thresec/gf.hpp"

namespace thresec {

// Row vector over GF(q). Messages, keys and codewords are all row vectors;
// encoding is always vector-times-matrix.
struct Vec {
    FieldPtr field;
    std::vector<std::uint16_t> v;

    Vec() = default;
    Vec(FieldPtr f, std::size_t n) : field(std::move(f)), v(n, 0) {}
    Vec(FieldPtr f, std::vector<std::uint16_t> vals)
        : field(std::move(f)), v(std::move(vals)) {
        for (auto x : v) field->check_value(x);
    }
    Vec(FieldPtr f, std::initializer_list<std::uint16_t> vals)
        : Vec(std::move(f), std::vector<std::uint16_t>(vals)) {}

    std::size_t size() const { return v.size(); }
    std::uint16_t operator[](std::size_t i) const { return v[i]; }
    std::uint16_t& operator[](std::size_t i) { return v[i]; }

    friend bool operator==(const Vec& a, const Vec& b) {
        return a.field->same_as(*b.field) && a.v == b.v;
    }
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);

// Dense matrix over GF(q), row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), v_(rows * cols, 0) {}

    static Matrix identity(FieldPtr field, std::size_t n);
    static Matrix from_rows(FieldPtr field,
                            const std::vector<std::vector<std::uint16_t>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldPtr& field() const { return field_; }

    std::uint16_t get(std::size_t r, std::size_t c) const {
        return v_[r * cols_ + c];
    }
    void set(std::size_t r, std::size_t c, std::uint32_t x) {
        field_->check_value(x);
        v_[r * cols_ + c] = static_cast<std::uint16_t>(x);
    }
    FieldElement at(std::size_t r, std::size_t c) const {
        return {get(r, c), *field_};
    }

    std::span<const std::uint16_t> row(std::size_t r) const {
        return {v_.data() + r * cols_, cols_};
    }

    Matrix transpose() const;
    Vec row_vec(std::size_t r) const;

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.field_->same_as(*b.field_) && a.v_ == b.v_;
    }

  private:
    FieldPtr field_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint16_t> v_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

Vec vec_mat_mul(const Vec& x, const Matrix& a);
inline Vec operator*(const Vec& x, const Matrix& a) { return vec_mat_mul(x, a); }

// Gaussian elimination with first-nonzero pivoting, ascending row order.
std::size_t rank(const Matrix& a);

// Solves x * A = b for a row vector x. Throws InconsistentSystemError when no
// solution exists and UnderdeterminedError when the solution is not unique.
Vec solve_row(const Matrix& a, const Vec& b);

// Generic inverse by Gaussian elimination; throws SingularMatrixError.
Matrix inverse_gauss(const Matrix& a);

// s-fold Kronecker power; s = 0 yields the 1x1 identity by convention.
Matrix kron_power(const Matrix& base, std::size_t s);

// Inverse of the Vandermonde matrix V[i][j] = points[j]^i in O(m^2) field
// operations via the master-polynomial / Lagrange-coefficient recurrences.
Matrix vandermonde_inverse(const FieldPtr& field,
                           const std::vector<std::uint16_t>& points);

// Rows of `a` selected by `idx`, in the order given.
Matrix rows_selected(const Matrix& a, std::span<const std::size_t> idx);

}  // namespace thresec
