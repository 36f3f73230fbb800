#include "thresec/codebook.hpp"

#include <bit>
#include <cmath>

namespace thresec {

LinearCode LinearCode::generic(Matrix generator) {
    LinearCode c;
    c.m_ = generator.rows();
    c.n_ = generator.cols();
    c.field_ = generator.field();
    if (c.m_ == 0 || c.n_ == 0) throw DimensionError("empty generator matrix");
    if (rank(generator) != c.m_)
        throw Error("generator matrix does not have full row rank");
    c.g_ = std::move(generator);
    c.family_ = CodeFamily::generic;
    c.prov_ = DminProvenance::unknown;
    return c;
}

LinearCode LinearCode::reed_solomon(FieldPtr field, std::size_t n, std::size_t m) {
    if (n > field->order() - 1)
        throw Error("RS length exceeds q-1 (not enough evaluation points)");
    if (m >= n) throw Error("RS requires m < n");
    LinearCode c;
    c.field_ = field;
    c.n_ = n;
    c.m_ = m;
    Matrix g(field, m, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t point = field->alpha_pow(j);
        for (std::size_t i = 0; i < m; ++i) g.set(i, j, field->pow(point, i));
    }
    c.g_ = std::move(g);
    c.family_ = CodeFamily::rs;
    c.dmin_ = n - m + 1;
    c.prov_ = DminProvenance::analytic;
    return c;
}

LinearCode LinearCode::reed_muller(std::size_t s, std::size_t r) {
    if (r > s) throw Error("reed_muller requires r <= s");
    auto f2 = Field::prime(2);
    const std::size_t n = std::size_t(1) << s;
    Matrix ft = kron_power(Matrix::from_rows(f2, {{1, 0}, {1, 1}}), s).transpose();
    std::vector<std::vector<std::uint16_t>> rows;
    for (std::size_t j = 0; j < n; ++j) {
        if (std::popcount(j) > static_cast<int>(r)) continue;
        std::vector<std::uint16_t> row(n);
        for (std::size_t c = 0; c < n; ++c) row[c] = ft.get(j, c);
        rows.push_back(std::move(row));
    }
    LinearCode c;
    c.field_ = f2;
    c.n_ = n;
    c.m_ = rows.size();
    c.g_ = Matrix::from_rows(f2, rows);
    c.family_ = CodeFamily::rm;
    c.rm_s_ = s;
    c.rm_r_ = r;
    c.dmin_ = std::size_t(1) << (s - r);
    c.prov_ = DminProvenance::analytic;
    return c;
}

std::size_t LinearCode::min_distance_bruteforce(std::uint64_t budget) {
    const std::uint32_t q = field_->order();
    double states = m_ * std::log2(double(q));
    if (states > std::log2(double(budget)))
        throw BudgetExceededError(
            "q^m exceeds the enumeration budget; use the analytic d_min");
    std::size_t best = n_ + 1;

    if (q == 2 && n_ <= 64 && m_ < 64) {
        // Gray-code walk with bit-packed rows: one row XOR per message.
        std::vector<std::uint64_t> row(m_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (g_.get(i, j)) row[i] |= std::uint64_t(1) << j;
        std::uint64_t cw = 0;
        const std::uint64_t total = std::uint64_t(1) << m_;
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            cw ^= row[std::countr_zero(idx)];
            std::size_t w = std::popcount(cw);
            if (w < best) {
                best = w;
                if (best == 1) break;  // cannot get lower
            }
        }
    } else {
        // Odometer enumeration with incremental codeword updates: when digit
        // i steps from v to v', the codeword changes by (v' - v) * row_i.
        const Field& f = *field_;
        std::vector<std::uint16_t> msg(m_, 0);
        std::vector<std::uint16_t> cw(n_, 0);
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < m_; ++i) total *= q;
        auto step_digit = [&](std::size_t i, std::uint32_t from, std::uint32_t to) {
            std::uint32_t delta = f.sub(to, from);
            for (std::size_t j = 0; j < n_; ++j)
                cw[j] = static_cast<std::uint16_t>(
                    f.add(cw[j], f.mul(delta, g_.get(i, j))));
        };
        for (std::uint64_t idx = 1; idx < total; ++idx) {
            std::size_t i = 0;
            while (msg[i] == q - 1) {
                step_digit(i, q - 1, 0);
                msg[i] = 0;
                ++i;
            }
            step_digit(i, msg[i], msg[i] + 1);
            ++msg[i];
            std::size_t w = 0;
            for (std::size_t j = 0; j < n_; ++j) w += (cw[j] != 0);
            if (w < best) {
                best = w;
                if (best == 1) break;
            }
        }
    }
    dmin_ = best;
    prov_ = DminProvenance::brute_force;
    return best;
}

std::size_t LinearCode::require_dmin(std::uint64_t budget) {
    if (dmin_) return *dmin_;
    return min_distance_bruteforce(budget);
}

std::string LinearCode::family_name() const {
    switch (family_) {
        case CodeFamily::rs: return "rs";
        case CodeFamily::rm:
            return "rm(" + std::to_string(rm_s_) + "," + std::to_string(rm_r_) + ")";
        default: return "generic";
    }
}

std::size_t rm_dimension(std::size_t s, std::size_t r) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < (std::size_t(1) << s); ++j)
        if (std::popcount(j) <= static_cast<int>(r)) ++count;
    return count;
}

}  // namespace thresec
