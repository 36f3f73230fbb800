#include "thresec/audit.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

namespace thresec {

double entropy_bits(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
    double acc = 0.0;
    for (auto c : counts)
        if (c > 0) acc += double(c) * std::log2(double(c));
    return std::log2(double(total)) - acc / double(total);
}

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= base;
    return r;
}

void check_budget(double log2_states, std::uint64_t budget, const char* what) {
    if (log2_states > std::log2(double(budget)))
        throw BudgetExceededError(std::string(what) +
                                  " exceeds the enumeration budget");
}

// Partial codewords of every message index and every key index; full
// codewords combine by linearity, c(m, k) = cm[m] + ck[k].
struct PartialCodewords {
    std::vector<std::uint16_t> cm;  // [q^m * L]
    std::vector<std::uint16_t> ck;  // [q^k * L]
    std::uint64_t qm = 1, qk = 1;
    std::size_t L = 0;
    std::uint32_t q = 0;

    std::uint64_t pack(const std::uint16_t* a, const std::uint16_t* b) const {
        const Field& f = *field_;
        std::uint64_t idx = 0;
        for (std::size_t j = L; j-- > 0;) idx = idx * q + f.add(a[j], b[j]);
        return idx;
    }

    const Field* field_ = nullptr;
};

PartialCodewords partial_codewords(const CodingMap& map, std::uint64_t budget) {
    const std::uint32_t q = map.field()->order();
    const Field& f = *map.field();
    check_budget(double(map.n()) * std::log2(double(q)), budget, "q^n");

    PartialCodewords pc;
    pc.q = q;
    pc.L = map.codeword_len();
    pc.qm = pow_u64(q, map.m());
    pc.qk = pow_u64(q, map.k());
    pc.field_ = &f;

    auto fill = [&](const std::vector<std::size_t>& rows, std::uint64_t count,
                    std::vector<std::uint16_t>& out) {
        out.assign(count * pc.L, 0);
        std::vector<std::uint16_t> digits(rows.size(), 0);
        for (std::uint64_t idx = 1; idx < count; ++idx) {
            // odometer step: copy previous row, apply digit deltas
            std::copy(out.begin() + (idx - 1) * pc.L, out.begin() + idx * pc.L,
                      out.begin() + idx * pc.L);
            std::uint16_t* cw = out.data() + idx * pc.L;
            std::size_t i = 0;
            while (digits[i] == q - 1) {
                std::uint32_t delta = f.sub(0, q - 1);
                for (std::size_t j = 0; j < pc.L; ++j)
                    cw[j] = static_cast<std::uint16_t>(
                        f.add(cw[j], f.mul(delta, map.W.get(rows[i], j))));
                digits[i] = 0;
                ++i;
            }
            for (std::size_t j = 0; j < pc.L; ++j)
                cw[j] = static_cast<std::uint16_t>(
                    f.add(cw[j], f.mul(f.sub(digits[i] + 1, digits[i]),
                                       map.W.get(rows[i], j))));
            ++digits[i];
        }
    };
    fill(map.A, pc.qm, pc.cm);
    fill(map.Ac, pc.qk, pc.ck);
    return pc;
}

}  // namespace

double audit_key_security(const CodingMap& map, std::uint64_t budget) {
    PartialCodewords pc = partial_codewords(map, budget);
    const std::uint64_t qL = pow_u64(pc.q, pc.L);
    check_budget(double(pc.L) * std::log2(double(pc.q)), budget, "q^L");

    std::vector<std::uint64_t> counts_c(qL, 0);
    std::vector<std::uint64_t> fiber(qL, 0);
    double h_c_given_k = 0.0;
    for (std::uint64_t ki = 0; ki < pc.qk; ++ki) {
        std::fill(fiber.begin(), fiber.end(), 0);
        const std::uint16_t* ck = pc.ck.data() + ki * pc.L;
        for (std::uint64_t mi = 0; mi < pc.qm; ++mi) {
            std::uint64_t idx = pc.pack(pc.cm.data() + mi * pc.L, ck);
            ++fiber[idx];
            ++counts_c[idx];
        }
        h_c_given_k += entropy_bits(fiber, pc.qm);
    }
    h_c_given_k /= double(pc.qk);
    return entropy_bits(counts_c, pc.qm * pc.qk) - h_c_given_k;
}

double audit_reliability(const CodingMap& map, std::uint64_t budget) {
    // H(m|c,k) = H(m,c,k) - H(c,k); every (m,k) pair yields a distinct
    // triple, so H(m,c,k) = n log2 q exactly.
    PartialCodewords pc = partial_codewords(map, budget);
    const std::uint32_t q = pc.q;
    double joint = 0.0;  // sum of cnt*log2(cnt) over (k, c) cells
    std::vector<std::uint64_t> fiber(pow_u64(q, pc.L), 0);
    std::vector<std::uint64_t> touched;
    for (std::uint64_t ki = 0; ki < pc.qk; ++ki) {
        touched.clear();
        const std::uint16_t* ck = pc.ck.data() + ki * pc.L;
        for (std::uint64_t mi = 0; mi < pc.qm; ++mi) {
            std::uint64_t idx = pc.pack(pc.cm.data() + mi * pc.L, ck);
            if (fiber[idx]++ == 0) touched.push_back(idx);
        }
        for (auto idx : touched) {
            joint += double(fiber[idx]) * std::log2(double(fiber[idx]));
            fiber[idx] = 0;
        }
    }
    const std::uint64_t total = pc.qm * pc.qk;
    double h_ck = std::log2(double(total)) - joint / double(total);
    double h_mck = double(map.n()) * std::log2(double(q));
    return h_mck - h_ck;
}

double audit_eve_equivocation(const CodingMap& map, std::uint64_t budget) {
    // H(m|c) = H(m,c) - H(c); per-message slices never hold more than q^k
    // distinct codewords.
    PartialCodewords pc = partial_codewords(map, budget);
    const std::uint64_t qL = pow_u64(pc.q, pc.L);
    std::vector<std::uint64_t> counts_c(qL, 0);
    std::vector<std::uint64_t> slice(qL, 0);
    std::vector<std::uint64_t> touched;
    double joint = 0.0;
    for (std::uint64_t mi = 0; mi < pc.qm; ++mi) {
        touched.clear();
        const std::uint16_t* cm = pc.cm.data() + mi * pc.L;
        for (std::uint64_t ki = 0; ki < pc.qk; ++ki) {
            std::uint64_t idx = pc.pack(cm, pc.ck.data() + ki * pc.L);
            ++counts_c[idx];
            if (slice[idx]++ == 0) touched.push_back(idx);
        }
        for (auto idx : touched) {
            joint += double(slice[idx]) * std::log2(double(slice[idx]));
            slice[idx] = 0;
        }
    }
    const std::uint64_t total = pc.qm * pc.qk;
    double h_mc = std::log2(double(total)) - joint / double(total);
    double h_c = entropy_bits(counts_c, total);
    return h_mc - h_c;
}

double audit_key_reuse(const CodingMap& map, std::size_t v, std::uint64_t budget) {
    if (v == 0) throw Error("key reuse audit needs v >= 1");
    const std::uint32_t q = map.field()->order();
    check_budget(double(v * map.m() + map.k()) * std::log2(double(q)), budget,
                 "q^(v*m+k)");
    check_budget(double(v * map.codeword_len()) * std::log2(double(q)), budget,
                 "q^(v*L)");
    PartialCodewords pc = partial_codewords(map, budget);
    const std::uint64_t qL = pow_u64(q, pc.L);
    const std::uint64_t tuple_states = pow_u64(qL, v);

    std::vector<std::uint64_t> counts_tuple(tuple_states, 0);
    std::vector<std::uint64_t> fiber(tuple_states, 0);
    const std::uint64_t tuples = pow_u64(pc.qm, v);
    double h_given_k = 0.0;
    std::vector<std::uint64_t> mis(v, 0);
    for (std::uint64_t ki = 0; ki < pc.qk; ++ki) {
        std::fill(fiber.begin(), fiber.end(), 0);
        const std::uint16_t* ck = pc.ck.data() + ki * pc.L;
        std::fill(mis.begin(), mis.end(), 0);
        for (std::uint64_t step = 0; step < tuples; ++step) {
            std::uint64_t idx = 0;
            for (std::size_t j = v; j-- > 0;)
                idx = idx * qL + pc.pack(pc.cm.data() + mis[j] * pc.L, ck);
            ++fiber[idx];
            ++counts_tuple[idx];
            std::size_t d = 0;
            while (d < v && ++mis[d] == pc.qm) mis[d++] = 0;
        }
        h_given_k += entropy_bits(fiber, tuples);
    }
    h_given_k /= double(pc.qk);
    return entropy_bits(counts_tuple, tuples * pc.qk) - h_given_k;
}

namespace {

// Codeword index for every input u in odometer order over q^n states.
std::vector<std::uint32_t> codeword_table(const CodingMap& map,
                                          std::uint64_t budget) {
    const std::uint32_t q = map.field()->order();
    const Field& f = *map.field();
    check_budget(double(map.n()) * std::log2(double(q)), budget, "q^n");
    const std::uint64_t total = pow_u64(q, map.n());
    const std::size_t L = map.codeword_len();

    std::vector<std::uint32_t> table(total);
    std::vector<std::uint16_t> digits(map.n(), 0), cw(L, 0);
    auto pack = [&]() {
        std::uint64_t idx = 0;
        for (std::size_t j = L; j-- > 0;) idx = idx * q + cw[j];
        return static_cast<std::uint32_t>(idx);
    };
    table[0] = pack();
    for (std::uint64_t u = 1; u < total; ++u) {
        std::size_t i = 0;
        while (digits[i] == q - 1) {
            std::uint32_t delta = f.sub(0, q - 1);
            for (std::size_t j = 0; j < L; ++j)
                cw[j] = static_cast<std::uint16_t>(
                    f.add(cw[j], f.mul(delta, map.W.get(i, j))));
            digits[i] = 0;
            ++i;
        }
        std::uint32_t delta = f.sub(digits[i] + 1, digits[i]);
        for (std::size_t j = 0; j < L; ++j)
            cw[j] = static_cast<std::uint16_t>(
                f.add(cw[j], f.mul(delta, map.W.get(i, j))));
        ++digits[i];
        table[u] = pack();
    }
    return table;
}

// |H(v|c) - H(v)| for one subset, via exact joint counts.
double subset_deviation(const CodingMap& map,
                        const std::vector<std::uint32_t>& cw_table,
                        double h_c_bits,
                        const std::vector<std::size_t>& subset) {
    const std::uint32_t q = map.field()->order();
    const std::uint64_t total = cw_table.size();
    const std::uint64_t qv = pow_u64(q, subset.size());
    const std::uint64_t qL = pow_u64(q, map.codeword_len());

    std::vector<std::uint64_t> place(subset.size());
    for (std::size_t j = 0; j < subset.size(); ++j)
        place[j] = pow_u64(q, subset[j]);

    std::vector<std::uint64_t> joint(qv * qL, 0);
    std::vector<std::uint64_t> counts_v(qv, 0);
    for (std::uint64_t u = 0; u < total; ++u) {
        std::uint64_t vi = 0;
        for (std::size_t j = subset.size(); j-- > 0;)
            vi = vi * q + (u / place[j]) % q;
        ++joint[vi * qL + cw_table[u]];
        ++counts_v[vi];
    }
    double h_vc = entropy_bits(joint, total);
    double h_v = entropy_bits(counts_v, total);
    return std::abs(h_v - (h_vc - h_c_bits));
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t sz = idx.size();
    std::size_t i = sz;
    while (i-- > 0) {
        if (idx[i] != i + n - sz) {
            ++idx[i];
            for (std::size_t j = i + 1; j < sz; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t n,
                                                        std::size_t max_size) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t sz = 1; sz <= max_size && sz <= n; ++sz) {
        std::vector<std::size_t> idx(sz);
        for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
        do {
            out.push_back(idx);
        } while (next_combination(idx, n));
    }
    return out;
}

std::uint64_t count_subsets(std::size_t n, std::size_t max_size) {
    std::uint64_t total = 0, binom = 1;
    for (std::size_t sz = 1; sz <= max_size; ++sz) {
        binom = binom * (n - sz + 1) / sz;
        total += binom;
        if (total > (1ull << 40)) break;  // plenty; avoids overflow worries
    }
    return total;
}

}  // namespace

ThresholdAuditResult audit_threshold(const CodingMap& map, std::size_t t,
                                     const AuditOptions& opts) {
    ThresholdAuditResult res;
    if (t == 0 || map.n() == 0) return res;
    if (t > map.n()) throw Error("t exceeds the number of input positions");
    check_budget(double(t + map.codeword_len()) *
                     std::log2(double(map.field()->order())),
                 opts.budget, "q^(t+L)");

    auto cw_table = codeword_table(map, opts.budget);
    const std::uint64_t qL = pow_u64(map.field()->order(), map.codeword_len());
    std::vector<std::uint64_t> counts_c(qL, 0);
    for (auto c : cw_table) ++counts_c[c];
    const double h_c = entropy_bits(counts_c, cw_table.size());

    std::vector<std::vector<std::size_t>> subsets;
    if (count_subsets(map.n(), t) <= opts.subset_limit) {
        subsets = enumerate_subsets(map.n(), t);
    } else {
        // Seeded sample of distinct subsets, sizes drawn uniformly in 1..t.
        res.sampled = true;
        std::mt19937_64 rng(opts.sample_seed);
        std::set<std::vector<std::size_t>> seen;
        while (seen.size() < opts.subset_limit) {
            std::size_t sz = 1 + rng() % t;
            std::set<std::size_t> pick;
            while (pick.size() < sz) pick.insert(rng() % map.n());
            seen.emplace(pick.begin(), pick.end());
        }
        subsets.assign(seen.begin(), seen.end());
    }
    res.subsets_checked = subsets.size();

    std::vector<double> deviations(subsets.size());
    const std::size_t workers =
        std::min<std::size_t>(std::thread::hardware_concurrency() > 0
                                  ? std::thread::hardware_concurrency()
                                  : 1,
                              subsets.size());
    if (workers > 1 && subsets.size() > 8) {
        std::vector<std::future<void>> futs;
        std::size_t chunk = (subsets.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            std::size_t lo = w * chunk, hi = std::min(lo + chunk, subsets.size());
            if (lo >= hi) break;
            futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
                for (std::size_t i = lo; i < hi; ++i)
                    deviations[i] = subset_deviation(map, cw_table, h_c, subsets[i]);
            }));
        }
        for (auto& f : futs) f.get();
    } else {
        for (std::size_t i = 0; i < subsets.size(); ++i)
            deviations[i] = subset_deviation(map, cw_table, h_c, subsets[i]);
    }

    for (std::size_t i = 0; i < subsets.size(); ++i) {
        if (deviations[i] > res.max_deviation_bits) {
            res.max_deviation_bits = deviations[i];
            res.worst_subset = subsets[i];
        }
    }
    if (res.worst_subset.empty() && !subsets.empty()) res.worst_subset = subsets[0];
    return res;
}

MaximalityResult audit_threshold_maximality(const ThresholdScheme& scheme,
                                            const AuditOptions& opts) {
    LinearCode code = scheme.code();  // copy: brute force may set provenance
    const std::size_t dmin = code.require_dmin(opts.budget);
    const std::uint32_t q = code.field()->order();
    const Field& f = *code.field();

    // First weight-d_min codeword in message odometer order.
    check_budget(double(code.m()) * std::log2(double(q)), opts.budget, "q^m");
    std::uint64_t total = pow_u64(q, code.m());
    std::vector<std::uint16_t> digits(code.m(), 0), cw(code.n(), 0);
    std::vector<std::size_t> support;
    for (std::uint64_t idx = 1; idx < total && support.empty(); ++idx) {
        std::size_t i = 0;
        while (digits[i] == q - 1) {
            std::uint32_t delta = f.sub(0, q - 1);
            for (std::size_t j = 0; j < code.n(); ++j)
                cw[j] = static_cast<std::uint16_t>(
                    f.add(cw[j], f.mul(delta, code.generator().get(i, j))));
            digits[i] = 0;
            ++i;
        }
        std::uint32_t delta = f.sub(digits[i] + 1, digits[i]);
        for (std::size_t j = 0; j < code.n(); ++j)
            cw[j] = static_cast<std::uint16_t>(
                f.add(cw[j], f.mul(delta, code.generator().get(i, j))));
        ++digits[i];
        std::vector<std::size_t> sup;
        for (std::size_t j = 0; j < code.n(); ++j)
            if (cw[j] != 0) sup.push_back(j);
        if (sup.size() == dmin) support = sup;
    }
    if (support.empty()) throw Error("no minimum-weight codeword found");

    check_budget(double(support.size() + scheme.map().codeword_len()) *
                     std::log2(double(q)),
                 opts.budget, "q^(d_min+L)");
    auto cw_table = codeword_table(scheme.map(), opts.budget);
    const std::uint64_t qL =
        pow_u64(q, scheme.map().codeword_len());
    std::vector<std::uint64_t> counts_c(qL, 0);
    for (auto c : cw_table) ++counts_c[c];
    double h_c = entropy_bits(counts_c, cw_table.size());

    // Recompute the two entropies for the witness subset.
    const std::uint64_t qv = pow_u64(q, support.size());
    std::vector<std::uint64_t> place(support.size());
    for (std::size_t j = 0; j < support.size(); ++j)
        place[j] = pow_u64(q, support[j]);
    std::vector<std::uint64_t> joint(qv * qL, 0), counts_v(qv, 0);
    for (std::uint64_t u = 0; u < cw_table.size(); ++u) {
        std::uint64_t vi = 0;
        for (std::size_t j = support.size(); j-- > 0;)
            vi = vi * q + (u / place[j]) % q;
        ++joint[vi * qL + cw_table[u]];
        ++counts_v[vi];
    }
    MaximalityResult res;
    res.witness = support;
    res.h_prior_bits = entropy_bits(counts_v, cw_table.size());
    res.h_cond_bits = entropy_bits(joint, cw_table.size()) - h_c;
    res.deviation_bits = res.h_prior_bits - res.h_cond_bits;
    return res;
}

namespace {

AuditReport assemble_report(const CodingMap& map, std::size_t t,
                            const AuditOptions& opts, const std::string& desc,
                            const ThresholdScheme* scheme) {
    AuditReport r;
    r.scheme_desc = desc;
    r.budget = opts.budget;
    r.n = map.n();
    r.m = map.m();
    r.k = map.k();
    r.t = t;
    r.symbol_bits = std::log2(double(map.field()->order()));
    r.tolerance = opts.tolerance;

    r.key_security_bits = audit_key_security(map, opts.budget);
    r.reliability_residual_bits = audit_reliability(map, opts.budget);
    r.threshold = audit_threshold(map, t, opts);
    r.eve_equivocation_bits = audit_eve_equivocation(map, opts.budget);
    r.eve_equivocation_expected_bits = double(map.k()) * r.symbol_bits;

    if (scheme) r.maximality = audit_threshold_maximality(*scheme, opts);

    r.key_reuse_v = opts.reuse_v;
    double reuse_states =
        double(opts.reuse_v * map.m() + map.k()) * r.symbol_bits;
    if (reuse_states <= std::log2(double(opts.budget)))
        r.key_reuse_bits = audit_key_reuse(map, opts.reuse_v, opts.budget);

    const double tol = opts.tolerance;
    r.pass_key_security = r.key_security_bits <= tol;
    r.pass_reliability = r.reliability_residual_bits <= tol;
    r.pass_threshold = r.threshold.max_deviation_bits <= tol;
    r.pass_maximality =
        !r.maximality || r.maximality->deviation_bits >= r.symbol_bits - tol;
    r.pass_equivocation =
        std::abs(r.eve_equivocation_bits - r.eve_equivocation_expected_bits) <=
        tol;
    r.pass_key_reuse = !r.key_reuse_bits || *r.key_reuse_bits <= tol;
    r.all_pass = r.pass_key_security && r.pass_reliability && r.pass_threshold &&
                 r.pass_maximality && r.pass_equivocation && r.pass_key_reuse;
    return r;
}

}  // namespace

AuditReport run_full_audit(const ThresholdScheme& scheme,
                           const AuditOptions& opts) {
    return assemble_report(scheme.map(), scheme.t(), opts,
                           scheme.code().family_name(), &scheme);
}

AuditReport run_map_audit(const CodingMap& map, std::size_t t,
                          const AuditOptions& opts, const std::string& desc) {
    return assemble_report(map, t, opts, desc, nullptr);
}

}  // namespace thresec
