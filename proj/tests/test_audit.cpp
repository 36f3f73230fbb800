#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "thresec/audit.hpp"
#include "thresec/robust.hpp"

using namespace thresec;

namespace {

constexpr double kTol = 1e-9;

ThresholdScheme rm42() {
    return ThresholdScheme::with_default_layout(LinearCode::reed_muller(4, 2));
}

ThresholdScheme rs_gf5() {
    return ThresholdScheme::with_default_layout(
        LinearCode::reed_solomon(Field::prime(5), 4, 3));
}

// W with the message-side rank dropped by fusing two message rows.
CodingMap message_deficient_map() {
    auto f2 = Field::prime(2);
    // rows 0,1 identical and both in A: rank(W_A) = 2 over 3 message rows.
    Matrix w = Matrix::from_rows(
        f2, {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    return CodingMap::make(w, {0, 1, 2});
}

// W with the key-side rank dropped: two identical key rows.
CodingMap key_deficient_map() {
    auto f2 = Field::prime(2);
    Matrix w = Matrix::from_rows(f2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                      {1, 1, 0}, {1, 1, 0}});
    return CodingMap::make(w, {0, 1, 2});
}

}  // namespace

TEST_CASE("entropy kernel: uniform over 2^j outcomes is exactly j bits") {
    for (std::size_t j = 0; j <= 12; ++j) {
        std::vector<std::uint64_t> counts(std::size_t(1) << j, 7);
        CHECK(std::abs(entropy_bits(counts, counts.size() * 7) - double(j)) <=
              1e-12);
    }
}

TEST_CASE("key security: zero leakage on proper schemes") {
    CHECK(std::abs(audit_key_security(rm42().map())) <= kTol);
    CHECK(std::abs(audit_key_security(rs_gf5().map())) <= kTol);
}

TEST_CASE("key security: message-side rank deficit leaks log2(q) per rank") {
    double leak = audit_key_security(message_deficient_map());
    CHECK(leak == doctest::Approx(1.0).epsilon(1e-9));  // deficit 1, q = 2
}

TEST_CASE("reliability: zero residual on proper schemes, positive when deficient") {
    CHECK(std::abs(audit_reliability(rm42().map())) <= kTol);
    CHECK(std::abs(audit_reliability(rs_gf5().map())) <= kTol);
    CHECK(audit_reliability(message_deficient_map()) ==
          doctest::Approx(1.0).epsilon(1e-9));

    // k = 0 with square invertible W: bijection, residual 0.
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 2));
    CHECK(std::abs(audit_reliability(s.map())) <= kTol);
}

TEST_CASE("threshold audit: RM(4,2) passes at t = 3 over all 696 subsets") {
    auto res = audit_threshold(rm42().map(), 3);
    CHECK(res.subsets_checked == 696);
    CHECK(!res.sampled);
    CHECK(res.max_deviation_bits <= kTol);
}

TEST_CASE("threshold audit: GF(5) RS passes at t = 1 on all singletons") {
    auto res = audit_threshold(rs_gf5().map(), 1);
    CHECK(res.subsets_checked == 4);
    CHECK(res.max_deviation_bits <= kTol);
}

TEST_CASE("threshold audit: sampling mode activates and stays deterministic") {
    AuditOptions opts;
    opts.subset_limit = 50;
    auto a = audit_threshold(rm42().map(), 3, opts);
    auto b = audit_threshold(rm42().map(), 3, opts);
    CHECK(a.sampled);
    CHECK(a.subsets_checked == 50);
    CHECK(a.max_deviation_bits == b.max_deviation_bits);
    CHECK(a.worst_subset == b.worst_subset);
    CHECK(a.max_deviation_bits <= kTol);
}

TEST_CASE("threshold maximality: RM(3,2) pair witness loses exactly one bit") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(3, 2));
    auto res = audit_threshold_maximality(s);
    CHECK(res.witness.size() == 2);  // d_min = 2
    CHECK(res.deviation_bits == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("threshold maximality: RM(4,2) size-4 witness, H drops 4 -> 3") {
    auto res = audit_threshold_maximality(rm42());
    CHECK(res.witness.size() == 4);
    CHECK(res.h_prior_bits == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(res.h_cond_bits == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(res.deviation_bits >= 1.0 - kTol);
}

TEST_CASE("eve equivocation equals k*log2(q) on proper schemes") {
    CHECK(audit_eve_equivocation(rm42().map()) ==
          doctest::Approx(5.0).epsilon(1e-9));
    CHECK(audit_eve_equivocation(rs_gf5().map()) ==
          doctest::Approx(std::log2(5.0)).epsilon(1e-9));
}

TEST_CASE("eve equivocation: one-time pad layout gives m bits") {
    // W = [I; I]: message rows I, key rows I; k = m = 3.
    auto f2 = Field::prime(2);
    Matrix w = Matrix::from_rows(f2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1},
                                      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CodingMap otp = CodingMap::make(w, {0, 1, 2});
    CHECK(audit_eve_equivocation(otp) == doctest::Approx(3.0).epsilon(1e-9));
    // In the u-subset sense the underlying [6,3,2] code gives t = 1: the
    // pair {m_i, k_i} leaks one bit through c_i = m_i + k_i.
    CHECK(audit_threshold(otp, 1).max_deviation_bits <= kTol);
    auto pairs = audit_threshold(otp, 2);
    CHECK(pairs.max_deviation_bits >= 1.0 - kTol);
}

TEST_CASE("eve equivocation drops by the key-side rank deficit") {
    // k = 2 but rank(W_Ac) = 1: equivocation (k-1)*log2(q) = 1 bit.
    CHECK(audit_eve_equivocation(key_deficient_map()) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("key reuse: RM(2,1) leaks nothing over two codewords") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1));
    CHECK(std::abs(audit_key_reuse(s.map(), 2)) <= kTol);
}

TEST_CASE("key reuse: v = 1 reduces to the key security audit") {
    auto s = ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1));
    double via_reuse = audit_key_reuse(s.map(), 1);
    double via_keysec = audit_key_security(s.map());
    CHECK(via_reuse == doctest::Approx(via_keysec).epsilon(1e-12));
}

TEST_CASE("key reuse: message-side deficit leaks, capped by H(k)") {
    // The deficient coordinate carries the key verbatim, so both codewords
    // reveal it: I(k; c1, c2) = H(k) = 1 bit here. (The v * log2(q) * deficit
    // count from the proper-code algebra does not apply once codewords stop
    // being uniform; mutual information cannot exceed H(k).)
    double leak = audit_key_reuse(message_deficient_map(), 2);
    CHECK(leak == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(leak >= 1.0 - kTol);  // strictly positive
    // Key-side deficiency alone leaks nothing about the key, also over reuse;
    // it shows up in the equivocation audit instead.
    CHECK(std::abs(audit_key_reuse(key_deficient_map(), 2)) <= kTol);
}

TEST_CASE("full audit report on RM(4,2)") {
    auto rep = run_full_audit(rm42());
    CHECK(rep.all_pass);
    CHECK(rep.pass_key_security);
    CHECK(rep.pass_threshold);
    CHECK(rep.threshold.subsets_checked == 696);
    CHECK(rep.pass_maximality);
    CHECK(rep.maximality.has_value());
    CHECK(rep.eve_equivocation_bits == doctest::Approx(5.0).epsilon(1e-9));
    // v*m+k = 27 symbols exceeds the 2^24 default budget: reuse is skipped.
    CHECK(!rep.key_reuse_bits.has_value());

    auto rep21 = run_full_audit(
        ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1)));
    CHECK(rep21.key_reuse_bits.has_value());
    CHECK(std::abs(*rep21.key_reuse_bits) <= kTol);
    CHECK(rep21.all_pass);
}

TEST_CASE("full audit fails exactly the predicted claims on broken maps") {
    auto bad_msg = run_map_audit(message_deficient_map(), 1);
    CHECK(!bad_msg.pass_key_security);
    CHECK(!bad_msg.pass_reliability);
    CHECK(bad_msg.key_security_bits >= std::log2(2.0) - kTol);

    auto bad_key = run_map_audit(key_deficient_map(), 1);
    CHECK(bad_key.pass_key_security);  // key security needs only the message side
    CHECK(bad_key.pass_reliability);
    CHECK(!bad_key.pass_equivocation);
}

TEST_CASE("composed concat map audits clean") {
    auto f2 = Field::prime(2);
    Matrix g(f2, 3, 7);
    for (std::size_t j = 0; j < 7; ++j)
        for (std::size_t i = 0; i < 3; ++i) g.set(i, j, ((j + 1) >> i) & 1);
    ConcatScheme cs(
        ThresholdScheme::with_default_layout(LinearCode::reed_muller(2, 1)),
        LinearCode::generic(g));
    auto map = cs.composed_map();
    CHECK(std::abs(audit_key_security(map)) <= kTol);
    CHECK(audit_threshold(map, cs.t()).max_deviation_bits <= kTol);
    CHECK(std::abs(audit_reliability(map)) <= kTol);
}

TEST_CASE("budget is enforced with a distinct error") {
    auto s = rm42();
    CHECK_THROWS_AS(audit_key_security(s.map(), 1 << 10), BudgetExceededError);
    AuditOptions opts;
    opts.budget = 1 << 10;
    CHECK_THROWS_AS(audit_threshold(s.map(), 3, opts), BudgetExceededError);
}
