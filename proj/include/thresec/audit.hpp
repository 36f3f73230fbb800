#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thresec/scheme.hpp"

namespace thresec {

// The audit engine certifies the information-theoretic claims by enumerating
// the full joint distribution of (message, key, codeword) and evaluating the
// entropies exactly. Probabilities stay integer occurrence counts until the
// final log2 evaluation, so float error enters only at the last step.

struct AuditOptions {
    std::uint64_t budget = 1ull << 24;   // max joint states enumerated
    std::size_t subset_limit = 10000;    // sampling activates above this
    std::uint64_t sample_seed = 1;
    std::size_t reuse_v = 2;             // codewords per key in the reuse audit
    double tolerance = 1e-9;             // bits
};

// Exact entropy in bits of a distribution given by occurrence counts.
double entropy_bits(const std::vector<std::uint64_t>& counts, std::uint64_t total);

// I(k; c) in bits.
double audit_key_security(const CodingMap& map, std::uint64_t budget = 1ull << 24);

// H(m | c, k) in bits; zero iff the codeword and key pin the message.
double audit_reliability(const CodingMap& map, std::uint64_t budget = 1ull << 24);

// H(m | c) in bits; k * log2(q) for a proper scheme.
double audit_eve_equivocation(const CodingMap& map,
                              std::uint64_t budget = 1ull << 24);

// I(k; c_1, ..., c_v) in bits over v independent uniform messages.
double audit_key_reuse(const CodingMap& map, std::size_t v,
                       std::uint64_t budget = 1ull << 24);

struct ThresholdAuditResult {
    double max_deviation_bits = 0.0;        // max |H(v|c) - H(v)|
    std::vector<std::size_t> worst_subset;  // argmax
    std::size_t subsets_checked = 0;
    bool sampled = false;
};

// Checks H(v|c) = H(v) for every subset v of input positions with
// 1 <= |v| <= t (or a seeded sample when there are too many subsets).
ThresholdAuditResult audit_threshold(const CodingMap& map, std::size_t t,
                                     const AuditOptions& opts = {});

struct MaximalityResult {
    std::vector<std::size_t> witness;  // support of a weight-d_min codeword
    double h_prior_bits = 0.0;
    double h_cond_bits = 0.0;
    double deviation_bits = 0.0;  // h_prior - h_cond, expected >= log2(q)
};

// Exhibits a subset of size t+1 that violates threshold security, pinning
// t = d_min - 1 as maximal.
MaximalityResult audit_threshold_maximality(const ThresholdScheme& scheme,
                                            const AuditOptions& opts = {});

struct AuditReport {
    std::string scheme_desc;
    std::uint64_t budget = 0;
    std::size_t n = 0, m = 0, k = 0, t = 0;
    double symbol_bits = 0.0;  // log2(q)
    double tolerance = 1e-9;

    double key_security_bits = 0.0;
    double reliability_residual_bits = 0.0;
    ThresholdAuditResult threshold;
    std::optional<MaximalityResult> maximality;
    double eve_equivocation_bits = 0.0;
    double eve_equivocation_expected_bits = 0.0;
    std::optional<double> key_reuse_bits;
    std::size_t key_reuse_v = 0;

    bool pass_key_security = false;
    bool pass_reliability = false;
    bool pass_threshold = false;
    bool pass_maximality = false;
    bool pass_equivocation = false;
    bool pass_key_reuse = false;
    bool all_pass = false;
};

// Full audit of a certified scheme, including the maximality witness.
AuditReport run_full_audit(const ThresholdScheme& scheme,
                           const AuditOptions& opts = {});

// Full audit of a bare coding map (composed or deliberately broken); t must
// be supplied and no maximality witness is searched.
AuditReport run_map_audit(const CodingMap& map, std::size_t t,
                          const AuditOptions& opts = {},
                          const std::string& desc = "coding-map");

}  // namespace thresec
