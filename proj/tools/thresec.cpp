// Command-line front end: scheme construction, key generation, encoding,
// decoding, channel simulation, and the information-theoretic audit.
//
// Exit codes: 0 success, 1 usage/parse error, 2 capability or budget limit,
// 3 integrity/decoding/proper-ness failure, 4 audit claim failure.

#include <cstdio>
#include <iostream>
#include <map>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "thresec/io.hpp"

using namespace thresec;
using nlohmann::json;

namespace {

struct UniformSampler {
    std::mt19937_64 rng;
    explicit UniformSampler(std::uint64_t seed) : rng(seed) {}

    std::uint16_t symbol(std::uint32_t q) {
        const std::uint64_t lim = UINT64_MAX - UINT64_MAX % q;
        std::uint64_t x;
        do {
            x = rng();
        } while (x >= lim);
        return static_cast<std::uint16_t>(x % q);
    }

    Vec vec(const FieldPtr& f, std::size_t len) {
        Vec v(f, len);
        for (auto& s : v.v) s = symbol(f->order());
        return v;
    }
};

Vec encode_any(const io::LoadedScheme& ls, const Vec& msg, const Vec& key) {
    switch (ls.mode) {
        case io::SchemeMode::concat: return concat_encode(*ls.concat, msg, key);
        case io::SchemeMode::unified_rm:
            return unified_encode(*ls.unified, msg, key);
        default: return ls.plain->encode(msg, key);
    }
}

Vec decode_plain_sc(const ThresholdScheme& s, const Vec& cw, const Vec& key) {
    auto res = sc_decode(KeyMap::from_scheme(s, key), embed_erasures(s, cw),
                         s.A_c());
    Vec msg(s.field(), s.m());
    for (std::size_t i = 0; i < s.m(); ++i) msg.v[i] = res.u[s.A()[i]];
    return msg;
}

Vec decode_unified(const UnifiedRmScheme& us, const NoisyWord& y, const Vec& key) {
    auto res = dec_be(us.key_map(key), y, us.A_c(), us.s(), us.r());
    Vec msg(us.field(), us.m());
    for (std::size_t i = 0; i < us.m(); ++i) msg.v[i] = res.u[us.A()[i]];
    return msg;
}

Vec key_for_block(const std::vector<Vec>& keys, std::size_t i) {
    // A single key line is reused across blocks (safe for proper schemes).
    return keys.size() == 1 ? keys[0] : keys.at(i);
}

int cmd_info(const std::string& scheme_path) {
    auto desc = io::load_descriptor(scheme_path);
    auto ls = io::build_scheme(desc);
    std::cout << "mode: " << io::mode_name(ls.mode) << '\n';
    if (ls.mode == io::SchemeMode::unified_rm) {
        const auto& us = *ls.unified;
        std::cout << "code: rm(" << us.s() << "," << us.r() << ") unified\n";
        std::cout << "n=" << us.n() << " m=" << us.m() << " k=" << us.k()
                  << " t=" << us.t() << '\n';
        std::cout << "q=2\n";
        std::cout << "D_min=" << us.D_min() << '\n';
        if (us.k() >= us.m())
            std::cout << "warning: key length >= message length\n";
        return 0;
    }
    const auto& s = *ls.plain;
    std::cout << "code: " << s.code().family_name() << '\n';
    std::cout << "n=" << s.n() << " m=" << s.m() << " k=" << s.k()
              << " t=" << s.t() << '\n';
    std::cout << "q=" << s.field()->order() << '\n';
    if (s.code().dmin()) {
        std::cout << "d_min=" << *s.code().dmin() << " ["
                  << (s.code().dmin_provenance() == DminProvenance::analytic
                          ? "analytic"
                          : "brute-force")
                  << "]\n";
    }
    if (ls.mode == io::SchemeMode::concat)
        std::cout << "inner: [" << ls.concat->N() << "," << s.m() << ","
                  << ls.concat->D_min() << "] D_min=" << ls.concat->D_min()
                  << '\n';
    std::cout << "proper: certified\n";
    if (s.key_longer_than_message())
        std::cout << "warning: key length >= message length\n";
    return 0;
}

int cmd_keygen(const std::string& scheme_path, std::uint64_t seed,
               const std::string& out, std::size_t blocks) {
    auto ls = io::build_scheme(io::load_descriptor(scheme_path));
    UniformSampler smp(seed);
    std::vector<Vec> keys;
    for (std::size_t b = 0; b < blocks; ++b)
        keys.push_back(smp.vec(ls.field(), ls.key_len()));
    io::save_blocks(out, keys);
    return 0;
}

int cmd_encode(const std::string& scheme_path, const std::string& message_path,
               const std::string& key_path, const std::string& out,
               bool binary) {
    auto ls = io::build_scheme(io::load_descriptor(scheme_path));
    auto msgs = io::load_blocks(message_path, ls.field());
    auto keys = io::load_blocks(key_path, ls.field());
    std::vector<Vec> out_blocks;
    for (std::size_t i = 0; i < msgs.size(); ++i)
        out_blocks.push_back(encode_any(ls, msgs[i], key_for_block(keys, i)));
    if (binary)
        io::save_packed(out, out_blocks);
    else
        io::save_blocks(out, out_blocks);
    return 0;
}

int cmd_decode(const std::string& scheme_path, const std::string& input_path,
               const std::string& key_path, const std::string& out,
               std::string decoder, bool binary) {
    auto ls = io::build_scheme(io::load_descriptor(scheme_path));
    if (decoder == "auto") {
        decoder = ls.mode == io::SchemeMode::concat      ? "concat"
                  : ls.mode == io::SchemeMode::unified_rm ? "dec-be"
                                                          : "generic";
    }
    auto keys = io::load_blocks(key_path, ls.field());
    std::vector<Vec> out_blocks;

    if (decoder == "dec-be" || decoder == "concat") {
        if (binary)
            throw CapabilityError(
                "erasure-bearing input needs the text format, not --binary");
        auto words = io::load_noisy_blocks(input_path, ls.field());
        for (std::size_t i = 0; i < words.size(); ++i) {
            const Vec key = key_for_block(keys, i);
            if (decoder == "dec-be") {
                if (ls.mode != io::SchemeMode::unified_rm)
                    throw CapabilityError("dec-be needs a unified-rm scheme");
                out_blocks.push_back(decode_unified(*ls.unified, words[i], key));
            } else {
                if (ls.mode != io::SchemeMode::concat)
                    throw CapabilityError("concat decoding needs a concat scheme");
                out_blocks.push_back(concat_decode(*ls.concat, words[i], key));
            }
        }
    } else if (decoder == "generic" || decoder == "rs-fast" || decoder == "sc") {
        if (ls.mode != io::SchemeMode::plain)
            throw CapabilityError("decoder '" + decoder +
                                  "' applies to plain schemes");
        const auto& s = *ls.plain;
        auto cws = binary
                       ? io::load_packed(input_path, ls.field(), s.m())
                       : io::load_blocks(input_path, ls.field());
        for (std::size_t i = 0; i < cws.size(); ++i) {
            const Vec key = key_for_block(keys, i);
            if (decoder == "generic")
                out_blocks.push_back(s.decode_generic(cws[i], key));
            else if (decoder == "rs-fast")
                out_blocks.push_back(s.decode_rs_fast(cws[i], key));
            else
                out_blocks.push_back(decode_plain_sc(s, cws[i], key));
        }
    } else {
        throw ParseError("unknown decoder: " + decoder);
    }
    io::save_blocks(out, out_blocks);
    return 0;
}

int cmd_audit(const std::string& scheme_path, const std::string& report_path,
              const AuditOptions& opts) {
    auto desc = io::load_descriptor(scheme_path);
    AuditReport rep;
    if (desc.mode == io::SchemeMode::plain) {
        LinearCode code = io::code_from_json(desc.code, desc.base_dir);
        try {
            ThresholdScheme s =
                desc.A ? ThresholdScheme::build(code, *desc.A)
                       : ThresholdScheme::with_default_layout(code);
            rep = run_full_audit(s, opts);
        } catch (const NotProperError&) {
            // Audit the bare map so the report names the violated claims.
            std::vector<std::size_t> A;
            if (desc.A) {
                A = *desc.A;
            } else {
                for (std::size_t i = 0; i < code.m(); ++i) A.push_back(i);
            }
            CodingMap map =
                CodingMap::make(code.generator().transpose(), std::move(A));
            std::size_t t = code.require_dmin(opts.budget) - 1;
            rep = run_map_audit(map, t, opts,
                                code.family_name() + " (not proper)");
        }
    } else if (desc.mode == io::SchemeMode::concat) {
        auto ls = io::build_scheme(desc);
        rep = run_map_audit(ls.concat->composed_map(), ls.concat->t(), opts,
                            "concat " + ls.plain->code().family_name());
    } else {
        auto ls = io::build_scheme(desc);
        rep = run_map_audit(ls.unified->coding_map(), ls.unified->t(), opts,
                            "unified rm(" + std::to_string(ls.unified->s()) +
                                "," + std::to_string(ls.unified->r()) + ")");
    }

    auto line = [](const char* name, bool pass, double bits) {
        std::printf("%-22s %s  (%.12f bits)\n", name, pass ? "PASS" : "FAIL",
                    bits);
    };
    line("key_security", rep.pass_key_security, rep.key_security_bits);
    line("reliability", rep.pass_reliability, rep.reliability_residual_bits);
    line("threshold", rep.pass_threshold, rep.threshold.max_deviation_bits);
    if (rep.maximality)
        line("threshold_maximality", rep.pass_maximality,
             rep.maximality->deviation_bits);
    line("eve_equivocation", rep.pass_equivocation, rep.eve_equivocation_bits);
    if (rep.key_reuse_bits)
        line("key_reuse", rep.pass_key_reuse, *rep.key_reuse_bits);
    else
        std::printf("%-22s SKIP  (over enumeration budget)\n", "key_reuse");
    std::printf("all_pass: %s\n", rep.all_pass ? "true" : "false");

    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw ParseError("cannot write " + report_path);
        out << io::report_to_json(rep).dump(2) << '\n';
    }
    return rep.all_pass ? 0 : 4;
}

int cmd_simulate(const std::string& scheme_path, const std::string& channel_path,
                 std::size_t trials, std::uint64_t seed,
                 const std::string& report_path) {
    auto ls = io::build_scheme(io::load_descriptor(scheme_path));
    auto spec = io::load_channel(channel_path);
    const std::size_t budget = ls.robustness_dmin() - 1;

    std::size_t successes = 0, within_budget = 0, within_budget_successes = 0;
    std::map<std::size_t, std::size_t> erasure_hist;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        UniformSampler smp(seed + trial);
        Vec msg = smp.vec(ls.field(), ls.message_len());
        Vec key = smp.vec(ls.field(), ls.key_len());
        Vec cw = encode_any(ls, msg, key);
        NoisyWord y = io::apply_channel(spec, cw, trial);
        const std::size_t rho = y.erasure_count();
        ++erasure_hist[rho];
        if (rho <= budget) ++within_budget;

        bool ok = false;
        try {
            Vec decoded(ls.field(), 0);
            switch (ls.mode) {
                case io::SchemeMode::concat:
                    decoded = concat_decode(*ls.concat, y, key);
                    break;
                case io::SchemeMode::unified_rm:
                    decoded = decode_unified(*ls.unified, y, key);
                    break;
                default: {
                    if (rho > 0) throw DecodingFailure("plain scheme, erased symbol");
                    Vec exact(ls.field(), y.size());
                    for (std::size_t i = 0; i < y.size(); ++i)
                        exact.v[i] =
                            static_cast<std::uint16_t>(y.symbols[i].value());
                    decoded = ls.plain->decode_generic(exact, key);
                }
            }
            ok = decoded == msg;
        } catch (const DecodingFailure&) {
            ok = false;
        }
        if (ok) {
            ++successes;
            if (rho <= budget) ++within_budget_successes;
        }
    }

    json stats;
    stats["mode"] = io::mode_name(ls.mode);
    stats["trials"] = trials;
    stats["seed"] = seed;
    stats["successes"] = successes;
    stats["success_rate"] = trials ? double(successes) / double(trials) : 1.0;
    stats["erasure_budget"] = budget;
    stats["trials_within_budget"] = within_budget;
    stats["successes_within_budget"] = within_budget_successes;
    stats["success_rate_within_budget"] =
        within_budget ? double(within_budget_successes) / double(within_budget)
                      : 1.0;
    json hist = json::object();
    for (auto& [rho, count] : erasure_hist) hist[std::to_string(rho)] = count;
    stats["erasure_histogram"] = hist;

    std::cout << stats.dump(2) << '\n';
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw ParseError("cannot write " + report_path);
        out << stats.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"threshold-secure coding with a shared key"};
    app.require_subcommand(1);

    std::string scheme_path, message_path, key_path, input_path, out_path;
    std::string channel_path, report_path, decoder = "auto";
    std::uint64_t seed = 0;
    std::size_t blocks = 1, trials = 100;
    bool binary = false;
    AuditOptions audit_opts;

    auto* info = app.add_subcommand("info", "print scheme parameters");
    info->add_option("--scheme", scheme_path)->required();

    auto* keygen = app.add_subcommand("keygen", "draw a uniform key");
    keygen->add_option("--scheme", scheme_path)->required();
    keygen->add_option("--seed", seed);
    keygen->add_option("--out", out_path)->required();
    keygen->add_option("--blocks", blocks);

    auto* encode = app.add_subcommand("encode", "encode message blocks");
    encode->add_option("--scheme", scheme_path)->required();
    encode->add_option("--message", message_path)->required();
    encode->add_option("--key", key_path)->required();
    encode->add_option("--out", out_path)->required();
    encode->add_flag("--binary", binary, "packed GF(2) output");

    auto* decode = app.add_subcommand("decode", "decode codeword blocks");
    decode->add_option("--scheme", scheme_path)->required();
    decode->add_option("--input", input_path)->required();
    decode->add_option("--key", key_path)->required();
    decode->add_option("--out", out_path)->required();
    decode->add_option("--decoder", decoder)
        ->check(CLI::IsMember({"auto", "generic", "rs-fast", "sc", "dec-be",
                               "concat"}));
    decode->add_flag("--binary", binary, "packed GF(2) input");

    auto* audit = app.add_subcommand("audit", "run the security audits");
    audit->add_option("--scheme", scheme_path)->required();
    audit->add_option("--report", report_path);
    audit->add_option("--budget", audit_opts.budget);
    audit->add_option("--subset-limit", audit_opts.subset_limit,
                      "sample subsets above this count");
    audit->add_option("--reuse-v", audit_opts.reuse_v);
    audit->add_option("--sample-seed", audit_opts.sample_seed);

    auto* simulate = app.add_subcommand("simulate", "encode/channel/decode trials");
    simulate->add_option("--scheme", scheme_path)->required();
    simulate->add_option("--channel", channel_path)->required();
    simulate->add_option("--trials", trials);
    simulate->add_option("--seed", seed);
    simulate->add_option("--report", report_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (info->parsed()) return cmd_info(scheme_path);
        if (keygen->parsed()) return cmd_keygen(scheme_path, seed, out_path, blocks);
        if (encode->parsed())
            return cmd_encode(scheme_path, message_path, key_path, out_path,
                              binary);
        if (decode->parsed())
            return cmd_decode(scheme_path, input_path, key_path, out_path,
                              decoder, binary);
        if (audit->parsed()) return cmd_audit(scheme_path, report_path, audit_opts);
        if (simulate->parsed())
            return cmd_simulate(scheme_path, channel_path, trials, seed,
                                report_path);
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget: " << e.what() << '\n';
        return 2;
    } catch (const CapabilityError& e) {
        std::cerr << "capability: " << e.what() << '\n';
        return 2;
    } catch (const NotProperError& e) {
        std::cerr << "not proper: " << e.what() << '\n';
        return 3;
    } catch (const IntegrityError& e) {
        std::cerr << "integrity: " << e.what() << '\n';
        return 3;
    } catch (const DecodingFailure& e) {
        std::cerr << "decoding failure: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
