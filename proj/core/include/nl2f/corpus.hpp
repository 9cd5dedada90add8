#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nl2f/table.hpp"

namespace nl2f {

enum class ValidatorId { VO, VP, VC };

inline constexpr ValidatorId kAllValidators[] = {ValidatorId::VO, ValidatorId::VP, ValidatorId::VC};

std::string_view to_string(ValidatorId id) noexcept;
std::optional<ValidatorId> parse_validator_id(std::string_view text);
// Parses a comma separated list such as "VO,VP,VC". Throws ConfigError.
std::vector<ValidatorId> parse_validator_list(std::string_view text);

// The persisted form of a validator decision.
struct VerdictRecord {
  bool accepted = false;
  std::string evidence;
  std::string reason;

  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

// One corpus record: a table, the derived-column formula over it, and the
// (possibly synthetic) utterance describing it.
struct Example {
  std::string id;
  Table table;
  std::string formula;
  std::optional<std::string> utterance;
  // Benchmark task files carry the reference formula here.
  std::optional<std::string> gold_formula;
  std::map<ValidatorId, VerdictRecord> verdicts;
  nlohmann::json provenance = nlohmann::json::object();

  const std::string& reference_formula() const { return gold_formula ? *gold_formula : formula; }

  friend bool operator==(const Example&, const Example&) = default;
};

nlohmann::ordered_json example_to_json(const Example& example);
// `context` prefixes error messages (e.g. "line 4").
Example example_from_json(const nlohmann::json& record, std::string_view context);

std::vector<Example> load_corpus(std::istream& in);
std::vector<Example> load_corpus(const std::filesystem::path& path);

// One compact JSON object per line with a fixed field order.
void save_corpus(const std::vector<Example>& examples, std::ostream& out);
void save_corpus(const std::vector<Example>& examples, const std::filesystem::path& path);

}  // namespace nl2f
