#include "thresec/scheme.hpp"

#include <algorithm>
#include <bit>

namespace thresec {

CodingMap CodingMap::make(Matrix W, std::vector<std::size_t> A) {
    const std::size_t n = W.rows();
    std::vector<char> used(n, 0);
    for (auto i : A) {
        if (i >= n) throw DimensionError("message index out of range");
        if (used[i]) throw Error("duplicate message index");
        used[i] = 1;
    }
    CodingMap cm;
    cm.W = std::move(W);
    cm.A = std::move(A);
    for (std::size_t i = 0; i < n; ++i)
        if (!used[i]) cm.Ac.push_back(i);
    return cm;
}

Vec CodingMap::assemble_input(const Vec& message, const Vec& key) const {
    if (message.size() != m() || key.size() != k())
        throw DimensionError("message/key length does not match scheme");
    if (!message.field->same_as(*field()) || !key.field->same_as(*field()))
        throw FieldMismatchError("message/key field does not match scheme");
    Vec u(field(), n());
    for (std::size_t i = 0; i < A.size(); ++i) u.v[A[i]] = message.v[i];
    for (std::size_t i = 0; i < Ac.size(); ++i) u.v[Ac[i]] = key.v[i];
    return u;
}

Vec CodingMap::encode(const Vec& message, const Vec& key) const {
    // c = m W_A + k W_Ac, identical to u W.
    if (message.size() != m() || key.size() != k())
        throw DimensionError("message/key length does not match scheme");
    if (!message.field->same_as(*field()) || !key.field->same_as(*field()))
        throw FieldMismatchError("message/key field does not match scheme");
    const Field& f = *field();
    Vec c(field(), codeword_len());
    for (std::size_t i = 0; i < A.size(); ++i) {
        std::uint32_t x = message.v[i];
        if (x == 0) continue;
        for (std::size_t j = 0; j < c.size(); ++j)
            c.v[j] = static_cast<std::uint16_t>(
                f.add(c.v[j], f.mul(x, W.get(A[i], j))));
    }
    for (std::size_t i = 0; i < Ac.size(); ++i) {
        std::uint32_t x = key.v[i];
        if (x == 0) continue;
        for (std::size_t j = 0; j < c.size(); ++j)
            c.v[j] = static_cast<std::uint16_t>(
                f.add(c.v[j], f.mul(x, W.get(Ac[i], j))));
    }
    return c;
}

Vec CodingMap::decode(const Vec& codeword, const Vec& key) const {
    if (codeword.size() != codeword_len())
        throw DimensionError("codeword length does not match scheme");
    if (key.size() != k()) throw DimensionError("key length does not match scheme");
    Vec rhs = codeword - key * W_Ac();
    try {
        return solve_row(W_A(), rhs);
    } catch (const InconsistentSystemError&) {
        throw IntegrityError("codeword is not a valid encoding under this key");
    }
}

ThresholdScheme ThresholdScheme::build(LinearCode code, std::vector<std::size_t> A,
                                       std::uint64_t dmin_budget) {
    if (A.size() != code.m())
        throw DimensionError("|A| must equal the code dimension m");
    CodingMap map = CodingMap::make(code.generator().transpose(), std::move(A));

    std::size_t rank_a = rank(map.W_A());
    if (rank_a != map.m())
        throw NotProperError(NotProperError::Side::Message, rank_a, map.m());
    std::size_t rank_ac = rank(map.W_Ac());
    if (rank_ac != map.k())
        throw NotProperError(NotProperError::Side::Key, rank_ac, map.k());

    std::size_t dmin = code.require_dmin(dmin_budget);
    std::size_t t = dmin - 1;
    if (t > map.k())
        throw Error("t > k violates the Singleton bound; generator is broken");

    // Cache the Vandermonde inverse for RS schemes laid out message-first.
    std::optional<Matrix> rs_inv_t;
    bool rs_default = code.family() == CodeFamily::rs;
    for (std::size_t i = 0; rs_default && i < map.A.size(); ++i)
        rs_default = map.A[i] == i;
    if (rs_default) {
        std::vector<std::uint16_t> points;
        for (std::size_t j = 0; j < map.m(); ++j)
            points.push_back(static_cast<std::uint16_t>(code.field()->alpha_pow(j)));
        rs_inv_t = vandermonde_inverse(code.field(), points).transpose();
    }

    return ThresholdScheme(std::move(code), std::move(map), t, std::move(rs_inv_t));
}

ThresholdScheme ThresholdScheme::with_default_layout(LinearCode code,
                                                     std::uint64_t dmin_budget) {
    std::vector<std::size_t> A;
    switch (code.family()) {
        case CodeFamily::rs:
            for (std::size_t i = 0; i < code.m(); ++i) A.push_back(i);
            break;
        case CodeFamily::rm:
            for (std::size_t j = 0; j < code.n(); ++j)
                if (std::popcount(j) <= static_cast<int>(code.rm_r()))
                    A.push_back(j);
            break;
        default:
            throw CapabilityError("generic codes need an explicit index set A");
    }
    return build(std::move(code), std::move(A), dmin_budget);
}

Vec ThresholdScheme::encode(const Vec& message, const Vec& key) const {
    return map_.encode(message, key);
}

Vec ThresholdScheme::decode_generic(const Vec& codeword, const Vec& key) const {
    return map_.decode(codeword, key);
}

Vec ThresholdScheme::decode_rs_fast(const Vec& codeword, const Vec& key) const {
    if (!rs_inv_t_)
        throw CapabilityError(
            "fast path needs an RS scheme with message rows first; use "
            "decode_generic");
    Vec rhs = codeword - key * map_.W_Ac();
    return rhs * *rs_inv_t_;
}

}  // namespace thresec
