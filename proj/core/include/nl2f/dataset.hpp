#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nl2f/corpus.hpp"
#include "nl2f/formula.hpp"

namespace nl2f::dataset {

// ---------------------------------------------------------------------------
// Filtering

namespace drop_reason {
inline constexpr std::string_view kUnparseable = "unparseable";
inline constexpr std::string_view kNotDerivedColumn = "not-derived-column";
inline constexpr std::string_view kDeprecatedFunction = "deprecated-function";
inline constexpr std::string_view kAllEmptyOutput = "all-empty-output";
}  // namespace drop_reason

struct DroppedExample {
  Example example;
  std::string reason;  // one of drop_reason
  std::string detail;
};

struct FilterResult {
  std::vector<Example> kept;
  std::vector<DroppedExample> dropped;

  std::map<std::string, std::size_t> reason_counts() const;
};

// Drops, in this order: unparseable formulas, formulas referencing columns
// absent from their table, deprecated-function users, and formulas whose
// output is Blank or Error on every row. Formulas using functions outside the
// interpreter are kept and tagged provenance["unevaluable"] = true.
FilterResult filter_corpus(const std::vector<Example>& raw, const std::set<std::string>& deprecated);

// ---------------------------------------------------------------------------
// Statistics

// Buckets 0, 1, 2, 3, 4 and >= 5.
using Histogram = std::array<std::size_t, 6>;

struct SubsetStats {
  std::size_t size = 0;
  std::set<std::string> functions;
  std::size_t total_function_calls = 0;
  std::size_t total_depth = 0;
  std::size_t total_operators = 0;
  Histogram calls_histogram{};
  Histogram depth_histogram{};
  Histogram operators_histogram{};

  std::size_t unique_function_count() const noexcept { return functions.size(); }
  // Absent when size == 0.
  std::optional<double> avg_function_calls() const;
  std::optional<double> avg_depth() const;
  std::optional<double> avg_operator_count() const;

  void add(const formula::Metrics& m);
  // Size-weighted merge.
  SubsetStats& operator+=(const SubsetStats& other);

  friend bool operator==(const SubsetStats&, const SubsetStats&) = default;
};

std::size_t histogram_bucket(int value) noexcept;

// Throws FormulaSyntaxError if a formula does not parse.
SubsetStats subset_stats(const std::vector<Example>& examples);
SubsetStats subset_stats_of_formulas(const std::vector<std::string>& formulas);

nlohmann::ordered_json stats_to_json(const SubsetStats& stats);
// Human-readable summary with the size/functions/calls/depth/ops row and the
// 0..>=5 distribution table.
std::string format_stats_table(const SubsetStats& stats, std::string_view label);

// ---------------------------------------------------------------------------
// Validator overlap

// Signature bit order is VO, VP, VC; index = VO*4 + VP*2 + VC.
struct OverlapPartition {
  std::array<std::size_t, 8> regions{};
  std::size_t excluded = 0;  // missing at least one verdict

  std::size_t total() const noexcept;
  std::size_t accepted_by(ValidatorId id) const noexcept;
  std::size_t none_pass() const noexcept { return regions[0]; }
  std::size_t all_pass() const noexcept { return regions[7]; }

  static std::string signature(std::size_t index);
};

OverlapPartition overlap_partition(const std::vector<Example>& corpus);
nlohmann::ordered_json partition_to_json(const OverlapPartition& partition);

// ---------------------------------------------------------------------------
// Subset selection

// Boolean expression over examples:
//   expr   := term ('|' term)*
//   term   := factor ('&' factor)*
//   factor := 'accepted(' V ')' | 'rejected(' V ')' | 'raw' | 'intersection' | '(' expr ')'
// accepted/rejected only hold for examples carrying a verdict for V;
// 'intersection' is accepted(VO)&accepted(VP)&accepted(VC).
class Selector {
 public:
  static Selector parse(std::string_view text);
  static Selector raw();
  static Selector accepted(ValidatorId id);
  static Selector rejected(ValidatorId id);
  static Selector intersection();

  bool matches(const Example& example) const;
  std::set<ValidatorId> referenced_validators() const;
  const std::string& text() const noexcept { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

// Throws Error if the selector references a validator for which no example
// carries a verdict.
std::vector<Example> select_subset(const std::vector<Example>& corpus, const Selector& selector);

// ---------------------------------------------------------------------------
// Subsampling

// Identifies the sampling algorithm in manifests so subsets are reproducible.
inline constexpr std::string_view kSubsampleAlgorithm = "selection-sampling/mt19937_64/v1";

// Uniform sample without replacement, original order preserved, deterministic
// for a given seed on every platform. Throws Error if target > size.
std::vector<Example> subsample(const std::vector<Example>& examples, std::size_t target, std::uint64_t seed);
std::vector<std::size_t> subsample_indices(std::size_t population, std::size_t target, std::uint64_t seed);

std::set<std::string> unique_functions(const std::vector<Example>& examples);

// Functions used by `reference` but by no formula of `subset`.
std::set<std::string> removed_functions(const std::vector<Example>& reference, const std::vector<Example>& subset);

// ---------------------------------------------------------------------------
// Fine-tuning export

struct FinetuneSplit {
  std::size_t train = 0;
  std::size_t valid = 0;
};

// Writes <out_dir>/train.jsonl and <out_dir>/valid.jsonl with {prompt,
// completion} records: the first `train` examples, then the next `valid`.
// Throws Error if an example has no utterance or the split exceeds the input.
std::vector<std::filesystem::path> export_finetune_files(const std::vector<Example>& examples, FinetuneSplit split,
                                                         const std::filesystem::path& out_dir,
                                                         std::size_t preview_rows = 20);

std::string finetune_prompt(const Example& example, std::size_t preview_rows = 20);

}  // namespace nl2f::dataset
