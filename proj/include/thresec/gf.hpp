#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "thresec/errors.hpp"
#include "thresec/opcount.hpp"

namespace thresec {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// Exact arithmetic over GF(p), p prime, and GF(2^e), e <= 16. Multiplication
// and inversion go through log/antilog tables built at construction time.
// Fields are immutable once built; every operation is pure.
class Field {
  public:
    static FieldPtr prime(std::uint32_t p);
    // poly packs the reduction polynomial coefficients little-endian in
    // degree (x^3+x+1 -> 0b1011). poly == 0 selects the built-in table.
    static FieldPtr binary(std::uint32_t e, std::uint32_t poly = 0);
    static FieldPtr of_order(std::uint32_t q);  // dispatches on q

    std::uint32_t order() const { return q_; }
    std::uint32_t characteristic() const { return p_; }
    std::uint32_t extension_degree() const { return e_; }
    std::uint32_t reduction_poly() const { return poly_; }  // 0 for prime fields
    std::uint32_t alpha() const { return alpha_; }          // primitive element

    bool is_binary() const { return p_ == 2 && e_ > 1; }

    // Two Field objects describe the same field iff order and reduction
    // polynomial agree; handles may differ.
    bool same_as(const Field& other) const {
        return q_ == other.q_ && poly_ == other.poly_;
    }

    // Raw value arithmetic. Values must already be < order(); the checked
    // entry points are the FieldElement operators below.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        opcount::bump();
        if (p_ == 2) return a ^ b;
        std::uint32_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }

    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        opcount::bump();
        if (p_ == 2) return a ^ b;
        return a >= b ? a - b : a + q_ - b;
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (p_ == 2) return a;
        return a == 0 ? 0 : q_ - a;
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        opcount::bump();
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }

    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw DivisionByZeroError("inverse of zero");
        opcount::bump();
        return exp_[q_ - 1 - log_[a]];
    }

    std::uint32_t div(std::uint32_t a, std::uint32_t b) const {
        if (b == 0) throw DivisionByZeroError("division by zero");
        if (a == 0) return 0;
        opcount::bump();
        std::uint32_t d = log_[a] + q_ - 1 - log_[b];
        return exp_[d];
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    std::uint32_t alpha_pow(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }

    void check_value(std::uint32_t v) const {
        if (v >= q_)
            throw Error("value " + std::to_string(v) + " out of range for GF(" +
                        std::to_string(q_) + ")");
    }

  private:
    Field() = default;
    void build_tables();

    std::uint32_t q_ = 0;      // order
    std::uint32_t p_ = 0;      // characteristic
    std::uint32_t e_ = 1;      // extension degree (1 for prime fields)
    std::uint32_t poly_ = 0;   // reduction polynomial, 0 for prime fields
    std::uint32_t alpha_ = 0;  // primitive element
    std::vector<std::uint16_t> exp_;  // alpha^i for i in [0, 2(q-1))
    std::vector<std::uint16_t> log_;  // discrete log base alpha, log_[0] unused
};

// Default low-weight reduction polynomials for GF(2^e), e = 1..16.
std::uint32_t default_reduction_poly(std::uint32_t e);

// A field value tagged with its field; cross-field arithmetic throws.
struct FieldElement {
    std::uint32_t value = 0;
    const Field* field = nullptr;

    FieldElement() = default;
    FieldElement(std::uint32_t v, const Field& f) : value(v), field(&f) {
        f.check_value(v);
    }

    bool is_zero() const { return value == 0; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.value == b.value && a.field->same_as(*b.field);
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }
};

inline void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (!a.field || !b.field || !a.field->same_as(*b.field))
        throw FieldMismatchError("operands belong to different fields");
}

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field->add(a.value, b.value), *a.field};
}

inline FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field->sub(a.value, b.value), *a.field};
}

inline FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field->mul(a.value, b.value), *a.field};
}

inline FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    require_same_field(a, b);
    return {a.field->div(a.value, b.value), *a.field};
}

inline FieldElement inverse(const FieldElement& a) {
    return {a.field->inv(a.value), *a.field};
}

}  // namespace thresec
