#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thresec/audit.hpp"
#include "thresec/channel.hpp"
#include "thresec/robust.hpp"

namespace thresec::io {

// ---- matrix fixtures: first line "rows cols q [poly]", then row-major values

Matrix load_matrix(std::istream& in);
Matrix load_matrix_file(const std::string& path);
void save_matrix(std::ostream& out, const Matrix& m);

// ---- JSON configs

// {"q": 8, "poly": "0b1011"}; poly omitted for prime fields.
FieldPtr field_from_json(const nlohmann::json& j);

// {"family":"rm","s":4,"r":2} | {"family":"rs","q":8,"n":7,"m":5} |
// {"family":"generic","matrix_file":"..."} (resolved against base_dir).
LinearCode code_from_json(const nlohmann::json& j, const std::string& base_dir);

enum class SchemeMode { plain, concat, unified_rm };
const char* mode_name(SchemeMode m);

struct SchemeDescriptor {
    SchemeMode mode = SchemeMode::plain;
    nlohmann::json code;                          // code config
    std::optional<nlohmann::json> inner;          // concat only
    std::optional<std::vector<std::size_t>> A;    // explicit index set
    std::string base_dir;
};

SchemeDescriptor descriptor_from_json(const nlohmann::json& j,
                                      const std::string& base_dir);
SchemeDescriptor load_descriptor(const std::string& path);

// A loaded scheme in any of the three modes.
struct LoadedScheme {
    SchemeMode mode = SchemeMode::plain;
    std::optional<ThresholdScheme> plain;    // plain mode / concat outer
    std::optional<ConcatScheme> concat;
    std::optional<UnifiedRmScheme> unified;

    const FieldPtr& field() const;
    std::size_t message_len() const;
    std::size_t key_len() const;
    std::size_t codeword_len() const;
    std::size_t robustness_dmin() const;  // 1 in plain mode
};

// Builds the scheme, re-verifying proper-ness (throws NotProperError).
LoadedScheme build_scheme(const SchemeDescriptor& desc);

// ---- symbol files: whitespace-separated integers, one block per line;
//      "e" marks an erasure in received words

std::vector<Vec> load_blocks(const std::string& path, const FieldPtr& field);
void save_blocks(const std::string& path, const std::vector<Vec>& blocks);

std::vector<NoisyWord> load_noisy_blocks(const std::string& path,
                                         const FieldPtr& field);
void save_noisy_blocks(const std::string& path,
                       const std::vector<NoisyWord>& blocks);

// ---- packed binary for GF(2): 8 symbols per byte, little-endian bit order

void save_packed(const std::string& path, const std::vector<Vec>& blocks);
std::vector<Vec> load_packed(const std::string& path, const FieldPtr& f2,
                             std::size_t block_len);

// ---- channel specs

struct ChannelSpec {
    enum class Type { bec, pattern };
    Type type = Type::bec;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> erasures;
};

ChannelSpec channel_from_json(const nlohmann::json& j);
ChannelSpec load_channel(const std::string& path);

// Applies the channel to one codeword; BEC seeds derive from the spec seed
// plus the trial index so parallel trials stay reproducible.
NoisyWord apply_channel(const ChannelSpec& spec, const Vec& codeword,
                        std::uint64_t trial);

// ---- audit report rendering

nlohmann::json report_to_json(const AuditReport& r);

}  // namespace thresec::io
