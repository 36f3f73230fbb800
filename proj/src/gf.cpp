#include "thresec/gf.hpp"

#include <array>

namespace thresec {

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int poly_degree(std::uint32_t p) {
    int d = -1;
    while (p) {
        ++d;
        p >>= 1;
    }
    return d;
}

// Remainder of a(x) mod b(x) over GF(2).
std::uint32_t poly_mod(std::uint64_t a, std::uint32_t b) {
    int db = poly_degree(b);
    for (int i = 63 - db; i >= 0; --i)
        if (a & (std::uint64_t(1) << (i + db))) a ^= std::uint64_t(b) << i;
    return static_cast<std::uint32_t>(a);
}

std::uint32_t poly_mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t mod) {
    std::uint64_t acc = 0;
    for (int i = 0; i < 32; ++i)
        if (b & (1u << i)) acc ^= std::uint64_t(a) << i;
    return poly_mod(acc, mod);
}

// Exhaustive trial division by every polynomial of degree 1..e/2. Cheap for
// e <= 16 and leaves nothing to argue about.
bool poly_irreducible(std::uint32_t f, std::uint32_t e) {
    if ((f & 1) == 0) return false;  // divisible by x
    for (std::uint32_t d = 1; d <= e / 2; ++d)
        for (std::uint32_t g = (1u << d); g < (2u << d); ++g)
            if (poly_mod(f, g) == 0) return false;
    return true;
}

}  // namespace

std::uint32_t default_reduction_poly(std::uint32_t e) {
    static const std::array<std::uint32_t, 17> table = {
        0,
        0b11,                 // e=1: x+1
        0b111,                // e=2: x^2+x+1
        0b1011,               // e=3: x^3+x+1
        0b10011,              // e=4: x^4+x+1
        0b100101,             // e=5: x^5+x^2+1
        0b1000011,            // e=6: x^6+x+1
        0b10001001,           // e=7: x^7+x^3+1
        0b100011101,          // e=8: x^8+x^4+x^3+x^2+1
        0b1000010001,         // e=9: x^9+x^4+1
        0b10000001001,        // e=10: x^10+x^3+1
        0b100000000101,       // e=11: x^11+x^2+1
        0b1000001010011,      // e=12: x^12+x^6+x^4+x+1
        0b10000000011011,     // e=13: x^13+x^4+x^3+x+1
        0b100010001000011,    // e=14: x^14+x^10+x^6+x+1
        0b1000000000000011,   // e=15: x^15+x+1
        0b10001000000001011,  // e=16: x^16+x^12+x^3+x+1
    };
    if (e < 1 || e > 16) throw Error("extension degree must be in 1..16");
    return table[e];
}

FieldPtr Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
    if (p > (1u << 16)) throw Error("field order too large (max 2^16)");
    auto f = std::shared_ptr<Field>(new Field());
    f->q_ = p;
    f->p_ = p;
    f->e_ = 1;
    f->poly_ = 0;
    f->build_tables();
    return f;
}

FieldPtr Field::binary(std::uint32_t e, std::uint32_t poly) {
    if (e < 1 || e > 16) throw Error("extension degree must be in 1..16");
    if (e == 1) return prime(2);
    if (poly == 0) poly = default_reduction_poly(e);
    if (poly_degree(poly) != static_cast<int>(e))
        throw Error("reduction polynomial degree does not match field");
    if (!poly_irreducible(poly, e))
        throw Error("reduction polynomial is not irreducible");
    auto f = std::shared_ptr<Field>(new Field());
    f->q_ = 1u << e;
    f->p_ = 2;
    f->e_ = e;
    f->poly_ = poly;
    f->build_tables();
    return f;
}

FieldPtr Field::of_order(std::uint32_t q) {
    if (q >= 4 && (q & (q - 1)) == 0) {
        std::uint32_t e = 0;
        while ((1u << e) < q) ++e;
        return binary(e);
    }
    return prime(q);
}

void Field::build_tables() {
    auto mul_slow = [this](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
        if (p_ == 2 && e_ > 1) return poly_mul_mod(a, b, poly_);
        return static_cast<std::uint32_t>((std::uint64_t(a) * b) % q_);
    };

    // Find a generator of the multiplicative group by exhaustive order check,
    // starting from value 2.
    const std::uint32_t group = q_ - 1;
    alpha_ = 0;
    if (q_ == 2) {
        alpha_ = 1;
    } else {
        for (std::uint32_t cand = 2; cand < q_; ++cand) {
            std::uint32_t x = 1;
            std::uint32_t ord = 0;
            do {
                x = mul_slow(x, cand);
                ++ord;
            } while (x != 1 && ord <= group);
            if (x == 1 && ord == group) {
                alpha_ = cand;
                break;
            }
        }
        if (alpha_ == 0) throw Error("no primitive element found");
    }

    exp_.assign(2 * group, 0);
    log_.assign(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < group; ++i) {
        exp_[i] = static_cast<std::uint16_t>(x);
        log_[x] = static_cast<std::uint16_t>(i);
        x = mul_slow(x, alpha_);
    }
    for (std::uint32_t i = group; i < 2 * group; ++i) exp_[i] = exp_[i - group];

    // Construction-time spot check: a * a^-1 == 1 on a sample of elements.
    for (std::uint32_t v = 1, checked = 0; v < q_ && checked < 256;
         v += 1 + q_ / 256, ++checked) {
        std::uint32_t iv = exp_[group - log_[v]];
        if (mul_slow(v, iv) != 1) throw Error("log/antilog table self-check failed");
    }
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    std::uint64_t le = (std::uint64_t(log_[a]) * (e % (q_ - 1))) % (q_ - 1);
    return exp_[le];
}

}  // namespace thresec
