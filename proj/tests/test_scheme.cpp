#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "thresec/scheme.hpp"

using namespace thresec;

namespace {

Vec index_to_vec(const FieldPtr& f, std::uint64_t idx, std::size_t len) {
    Vec v(f, len);
    std::uint32_t q = f->order();
    for (std::size_t i = 0; i < len; ++i) {
        v.v[i] = static_cast<std::uint16_t>(idx % q);
        idx /= q;
    }
    return v;
}

std::uint64_t pow_u64(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

}  // namespace

TEST_CASE("RM(3,2) default layout is proper with t = 1") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(3, 2));
    CHECK(s.n() == 8);
    CHECK(s.m() == 7);
    CHECK(s.k() == 1);
    CHECK(s.t() == 1);
    CHECK(s.A_c() == std::vector<std::size_t>{7});  // popcount > 2
}

TEST_CASE("GF(5) RS n=4 m=3 with A = first rows is proper, t = k = 1") {
    auto f5 = Field::prime(5);
    auto s = ThresholdScheme::build(LinearCode::reed_solomon(f5, 4, 3), {0, 1, 2});
    CHECK(s.t() == 1);
    CHECK(s.k() == 1);
    CHECK(s.has_rs_fast_path());
}

TEST_CASE("two identical key rows fail the key-side rank condition") {
    auto f2 = Field::prime(2);
    // [4,2] code whose last two W rows (the key side) coincide.
    Matrix g = Matrix::from_rows(f2, {{1, 0, 1, 1}, {0, 1, 1, 1}});
    auto code = LinearCode::generic(g);
    try {
        ThresholdScheme::build(std::move(code), {0, 1});
        FAIL("expected NotProperError");
    } catch (const NotProperError& e) {
        CHECK(e.side == NotProperError::Side::Key);
        CHECK(e.rank_found == 1);
        CHECK(e.rank_needed == 2);
    }
}

TEST_CASE("message-side deficiency is reported with the deficient rank") {
    auto f2 = Field::prime(2);
    Matrix g = Matrix::from_rows(f2, {{1, 0, 1, 0}, {0, 1, 0, 1}});
    auto code = LinearCode::generic(g);
    // A = {0, 2}: W rows 0 and 2 are (1,0) and (1,0) -> rank 1.
    try {
        ThresholdScheme::build(std::move(code), {0, 2});
        FAIL("expected NotProperError");
    } catch (const NotProperError& e) {
        CHECK(e.side == NotProperError::Side::Message);
        CHECK(e.rank_found == 1);
    }
}

TEST_CASE("encode matches the direct u*W product and is linear") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1));
    auto f2 = s.field();
    CHECK(s.m() == 3);
    CHECK(s.k() == 1);

    Vec zero_m(f2, 3), zero_k(f2, 1);
    CHECK(s.encode(zero_m, zero_k) == Vec(f2, 3));

    Vec msg(f2, {1, 0, 1}), key(f2, {1});
    Vec direct = s.assemble_input(msg, key) * s.W();
    CHECK(s.encode(msg, key) == direct);

    // linearity over all pairs
    for (std::uint64_t a = 0; a < 16; ++a)
        for (std::uint64_t b = 0; b < 16; ++b) {
            Vec m1 = index_to_vec(f2, a & 7, 3), k1 = index_to_vec(f2, a >> 3, 1);
            Vec m2 = index_to_vec(f2, b & 7, 3), k2 = index_to_vec(f2, b >> 3, 1);
            CHECK(s.encode(m1 + m2, k1 + k2) ==
                  s.encode(m1, k1) + s.encode(m2, k2));
        }
}

TEST_CASE("decode_generic round trip, exhaustive on RM(2,1)") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1));
    auto f2 = s.field();
    for (std::uint64_t mi = 0; mi < 8; ++mi)
        for (std::uint64_t ki = 0; ki < 2; ++ki) {
            Vec msg = index_to_vec(f2, mi, 3), key = index_to_vec(f2, ki, 1);
            CHECK(s.decode_generic(s.encode(msg, key), key) == msg);
        }
}

// RM(s,r) pairs whose default layout is proper. k > m never is (W_Ac is k x m,
// so its rank cannot reach k), which rules out low-r layouts like RM(2,0).
static const std::vector<std::pair<std::size_t, std::size_t>> kProperRm = {
    {1, 0}, {1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2},
    {3, 3}, {4, 2}, {4, 3}, {4, 4},
};

TEST_CASE("round trips across schemes, exhaustive when q^n <= 2^16") {
    std::vector<ThresholdScheme> schemes;
    for (auto [ss, r] : kProperRm)
        schemes.push_back(
            ThresholdScheme::with_default_layout(LinearCode::reed_muller(ss, r)));
    schemes.push_back(ThresholdScheme::with_default_layout(
        LinearCode::reed_solomon(Field::prime(5), 4, 3)));

    for (const auto& s : schemes) {
        auto f = s.field();
        std::uint64_t total = pow_u64(f->order(), s.n());
        REQUIRE(total <= (1ull << 16));
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t qm = pow_u64(f->order(), s.m());
            Vec msg = index_to_vec(f, idx % qm, s.m());
            Vec key = index_to_vec(f, idx / qm, s.k());
            CHECK(s.decode_generic(s.encode(msg, key), key) == msg);
        }
    }
}

TEST_CASE("wrong key decodes to a wrong message, silently") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1));
    auto f2 = s.field();
    // W_Ac here is the single row (1,1,1): injective as a map of the key.
    for (std::uint64_t mi = 0; mi < 8; ++mi)
        for (std::uint64_t ki = 0; ki < 2; ++ki) {
            Vec msg = index_to_vec(f2, mi, 3), key = index_to_vec(f2, ki, 1);
            Vec cw = s.encode(msg, key);
            Vec wrong = index_to_vec(f2, ki ^ 1, 1);
            Vec out = s.decode_generic(cw, wrong);
            CHECK(out.v != msg.v);
        }
}

TEST_CASE("tampering a square proper scheme stays inside the coset") {
    // With rank(W_A) = m and codewords of length m, every word is a valid
    // encoding under every key, so a symbol flip decodes to a different
    // message instead of raising IntegrityError.
    auto f5 = Field::prime(5);
    auto s = ThresholdScheme::build(LinearCode::reed_solomon(f5, 4, 3), {0, 1, 2});
    Vec msg(f5, {1, 2, 3}), key(f5, {4});
    Vec cw = s.encode(msg, key);
    Vec tampered = cw;
    tampered.v[0] = static_cast<std::uint16_t>((tampered.v[0] + 1) % 5);
    Vec out = s.decode_generic(tampered, key);
    CHECK(out.v != msg.v);
}

TEST_CASE("IntegrityError fires when the coset is a proper subset") {
    // A coding map with a deficient message side leaves codewords in a
    // strict subspace; words outside it are rejected.
    auto f2 = Field::prime(2);
    Matrix w = Matrix::from_rows(f2, {{1, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}});
    CodingMap map = CodingMap::make(w, {0, 1, 2});
    Vec msg(f2, {1, 0, 1}), key(f2, {0});
    Vec cw = map.encode(msg, key);
    Vec bad = cw;
    bad.v[0] ^= 1;  // (1,1,0) and (0,0,1) span only {000,110,001,111}
    CHECK_THROWS_AS(map.decode(bad, key), IntegrityError);
}

TEST_CASE("decode_rs_fast equals decode_generic on all GF(5) inputs") {
    auto f5 = Field::prime(5);
    auto s = ThresholdScheme::build(LinearCode::reed_solomon(f5, 4, 3), {0, 1, 2});
    CHECK(s.decode_rs_fast(Vec(f5, 3), Vec(f5, 1)) == Vec(f5, 3));
    for (std::uint64_t mi = 0; mi < 125; ++mi)
        for (std::uint64_t ki = 0; ki < 5; ++ki) {
            Vec msg = index_to_vec(f5, mi, 3), key = index_to_vec(f5, ki, 1);
            Vec cw = s.encode(msg, key);
            CHECK(s.decode_rs_fast(cw, key) == s.decode_generic(cw, key));
            CHECK(s.decode_rs_fast(cw, key) == msg);
        }
}

TEST_CASE("decode_rs_fast round trip on random GF(8) n=7 m=5 inputs") {
    auto f8 = Field::binary(3);
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_solomon(f8, 7, 5));
    CHECK(s.t() == 2);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 1000; ++trial) {
        Vec msg(f8, 5), key(f8, 2);
        for (auto& x : msg.v) x = rng() % 8;
        for (auto& x : key.v) x = rng() % 8;
        Vec cw = s.encode(msg, key);
        CHECK(s.decode_rs_fast(cw, key) == msg);
        CHECK(s.decode_generic(cw, key) == msg);
    }
}

TEST_CASE("rs fast path refuses non-RS layouts") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1));
    CHECK_THROWS_AS(s.decode_rs_fast(Vec(s.field(), 3), Vec(s.field(), 1)),
                    CapabilityError);

    // RS with a shuffled (non-default) index set also has no fast path.
    auto f5 = Field::prime(5);
    auto shuffled =
        ThresholdScheme::build(LinearCode::reed_solomon(f5, 4, 3), {1, 2, 3});
    CHECK(!shuffled.has_rs_fast_path());
}

TEST_CASE("fixed key: distinct messages give distinct codewords") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1));
    auto f2 = s.field();
    for (std::uint64_t ki = 0; ki < 2; ++ki) {
        Vec key = index_to_vec(f2, ki, 1);
        std::set<std::vector<std::uint16_t>> seen;
        for (std::uint64_t mi = 0; mi < 8; ++mi)
            seen.insert(s.encode(index_to_vec(f2, mi, 3), key).v);
        CHECK(seen.size() == 8);
    }
}

TEST_CASE("t <= k holds on every constructed scheme") {
    for (auto [ss, r] : kProperRm) {
        auto s =
            ThresholdScheme::with_default_layout(LinearCode::reed_muller(ss, r));
        CHECK(s.t() <= s.k());
    }
    // RS default layouts need k <= m for the key-side rank, so m >= n/2.
    auto f8 = Field::binary(3);
    for (std::size_t m = 4; m <= 6; ++m) {
        auto s = ThresholdScheme::with_default_layout(
            LinearCode::reed_solomon(f8, 7, m));
        CHECK(s.t() == s.k());  // MDS: t = k exactly (d_min cross-checked below)
        auto code = LinearCode::reed_solomon(f8, 7, m);
        CHECK(code.min_distance_bruteforce() == 7 - m + 1);
    }
}

TEST_CASE("k >= m attaches a warning flag, not an error") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(3, 1));
    CHECK(s.m() == 4);
    CHECK(s.k() == 4);
    CHECK(s.key_longer_than_message());
}

TEST_CASE("k > m layouts can never be proper") {
    // RM(2,0) default layout: W_Ac is 3 x 1, rank at most 1 < k = 3.
    CHECK_THROWS_AS(
        ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 0)),
        NotProperError);
}

TEST_CASE("k = 0 degenerate scheme works") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 2));
    CHECK(s.k() == 0);
    CHECK(s.t() == 0);
    auto f2 = s.field();
    Vec msg(f2, {1, 0, 1, 1}), key(f2, 0);
    CHECK(s.decode_generic(s.encode(msg, key), key) == msg);
}
