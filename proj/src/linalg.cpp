#include "thresec/linalg.hpp"

#include <algorithm>

namespace thresec {

namespace {

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b || !a->same_as(*b))
        throw FieldMismatchError("operands belong to different fields");
}

}  // namespace

Vec operator+(const Vec& a, const Vec& b) {
    require_same_field(a.field, b.field);
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    Vec r(a.field, a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r.v[i] = static_cast<std::uint16_t>(a.field->add(a.v[i], b.v[i]));
    return r;
}

Vec operator-(const Vec& a, const Vec& b) {
    require_same_field(a.field, b.field);
    if (a.size() != b.size()) throw DimensionError("vector length mismatch");
    Vec r(a.field, a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r.v[i] = static_cast<std::uint16_t>(a.field->sub(a.v[i], b.v[i]));
    return r;
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(FieldPtr field,
                         const std::vector<std::vector<std::uint16_t>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    Matrix m(std::move(field), r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionError("ragged row list");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, get(i, j));
    return t;
}

Vec Matrix::row_vec(std::size_t r) const {
    Vec x(field_, cols_);
    for (std::size_t j = 0; j < cols_; ++j) x.v[j] = get(r, j);
    return x;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field());
    if (a.cols() != b.rows()) throw DimensionError("matmul dimension mismatch");
    const Field& f = *a.field();
    Matrix r(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            std::uint32_t aik = a.get(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                std::uint32_t t = f.mul(aik, b.get(k, j));
                r.set(i, j, f.add(r.get(i, j), t));
            }
        }
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field());
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sum dimension mismatch");
    const Field& f = *a.field();
    Matrix r(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r.set(i, j, f.add(a.get(i, j), b.get(i, j)));
    return r;
}

Vec vec_mat_mul(const Vec& x, const Matrix& a) {
    require_same_field(x.field, a.field());
    if (x.size() != a.rows()) throw DimensionError("vector-matrix mismatch");
    const Field& f = *a.field();
    Vec r(x.field, a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint32_t xi = x.v[i];
        if (xi == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            r.v[j] = static_cast<std::uint16_t>(
                f.add(r.v[j], f.mul(xi, a.get(i, j))));
    }
    return r;
}

namespace {

// Row echelon core shared by rank/solve/inverse. Operates on a dense
// row-major augmented table of `rows x cols` values, reducing fully
// (entries above pivots cleared too). Returns pivot columns in order.
std::vector<std::size_t> reduce(std::vector<std::uint32_t>& m, std::size_t rows,
                                std::size_t cols, std::size_t limit_cols,
                                const Field& f) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit_cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr * cols + c] == 0) ++pr;
        if (pr == rows) continue;
        if (pr != r)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m[pr * cols + j], m[r * cols + j]);
        std::uint32_t piv_inv = f.inv(m[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j)
            m[r * cols + j] = f.mul(m[r * cols + j], piv_inv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::uint32_t factor = m[i * cols + c];
            if (factor == 0) continue;
            for (std::size_t j = c; j < cols; ++j)
                m[i * cols + j] =
                    f.sub(m[i * cols + j], f.mul(factor, m[r * cols + j]));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const Matrix& a) {
    std::vector<std::uint32_t> m(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m[i * a.cols() + j] = a.get(i, j);
    return reduce(m, a.rows(), a.cols(), a.cols(), *a.field()).size();
}

Vec solve_row(const Matrix& a, const Vec& b) {
    require_same_field(a.field(), b.field);
    if (b.size() != a.cols()) throw DimensionError("rhs length mismatch");
    const Field& f = *a.field();
    // x * A = b  <=>  A^T x^T = b^T: equations indexed by columns of A.
    const std::size_t eqs = a.cols(), unk = a.rows(), w = unk + 1;
    std::vector<std::uint32_t> m(eqs * w);
    for (std::size_t e = 0; e < eqs; ++e) {
        for (std::size_t u = 0; u < unk; ++u) m[e * w + u] = a.get(u, e);
        m[e * w + unk] = b.v[e];
    }
    auto pivots = reduce(m, eqs, w, unk, f);
    for (std::size_t e = pivots.size(); e < eqs; ++e)
        if (m[e * w + unk] != 0)
            throw InconsistentSystemError("x*A = b has no solution");
    if (pivots.size() < unk)
        throw UnderdeterminedError("x*A = b has multiple solutions");
    Vec x(b.field, unk);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x.v[pivots[r]] = static_cast<std::uint16_t>(m[r * w + unk]);
    return x;
}

Matrix inverse_gauss(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("inverse of non-square matrix");
    const Field& f = *a.field();
    const std::size_t n = a.rows(), w = 2 * n;
    std::vector<std::uint32_t> m(n * w, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i * w + j] = a.get(i, j);
        m[i * w + n + i] = 1;
    }
    auto pivots = reduce(m, n, w, n, f);
    if (pivots.size() < n) throw SingularMatrixError("matrix is singular");
    Matrix inv(a.field(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.set(i, j, m[i * w + n + j]);
    return inv;
}

Matrix kron_power(const Matrix& base, std::size_t s) {
    if (s == 0) return Matrix::identity(base.field(), 1);
    const Field& f = *base.field();
    Matrix r = base;
    for (std::size_t step = 1; step < s; ++step) {
        Matrix next(base.field(), base.rows() * r.rows(), base.cols() * r.cols());
        for (std::size_t ia = 0; ia < base.rows(); ++ia)
            for (std::size_t ja = 0; ja < base.cols(); ++ja) {
                std::uint32_t a = base.get(ia, ja);
                if (a == 0) continue;
                for (std::size_t ib = 0; ib < r.rows(); ++ib)
                    for (std::size_t jb = 0; jb < r.cols(); ++jb)
                        next.set(ia * r.rows() + ib, ja * r.cols() + jb,
                                 f.mul(a, r.get(ib, jb)));
            }
        r = std::move(next);
    }
    return r;
}

Matrix vandermonde_inverse(const FieldPtr& field,
                           const std::vector<std::uint16_t>& points) {
    const std::size_t m = points.size();
    if (m == 0) throw DimensionError("empty point list");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (points[i] == points[j])
                throw SingularMatrixError("repeated Vandermonde points");
    const Field& f = *field;

    // Master polynomial P(x) = prod (x - x_j), degree m, built up one root at
    // a time: p := p*x - x_j*p.
    std::vector<std::uint32_t> p(m + 1, 0), np(m + 1, 0);
    p[0] = 1;
    for (std::size_t j = 0; j < m; ++j) {
        std::uint32_t xj = points[j];
        std::fill(np.begin(), np.end(), 0);
        for (std::size_t i = 0; i <= j; ++i) {
            np[i + 1] = f.add(np[i + 1], p[i]);
            np[i] = f.sub(np[i], f.mul(xj, p[i]));
        }
        p.swap(np);
    }

    Matrix inv(field, m, m);
    std::vector<std::uint32_t> q(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        std::uint32_t xj = points[j];
        // Q_j(x) = P(x) / (x - x_j) by synthetic division.
        q[m - 1] = p[m];
        for (std::size_t i = m - 1; i-- > 0;)
            q[i] = f.add(p[i + 1], f.mul(xj, q[i + 1]));
        // Normalize by Q_j(x_j); row j of the inverse holds the coefficients
        // of the j-th Lagrange basis polynomial.
        std::uint32_t d = 0;
        for (std::size_t i = m; i-- > 0;) d = f.add(f.mul(d, xj), q[i]);
        std::uint32_t dinv = f.inv(d);
        for (std::size_t i = 0; i < m; ++i) inv.set(j, i, f.mul(q[i], dinv));
    }
    return inv;
}

Matrix rows_selected(const Matrix& a, std::span<const std::size_t> idx) {
    Matrix r(a.field(), idx.size(), a.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] >= a.rows()) throw DimensionError("row index out of range");
        for (std::size_t j = 0; j < a.cols(); ++j) r.set(i, j, a.get(idx[i], j));
    }
    return r;
}

}  // namespace thresec
