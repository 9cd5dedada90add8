#include "nl2f/dataset.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "nl2f/error.hpp"
#include "nl2f/interpreter.hpp"
#include "text_util.hpp"

namespace nl2f::dataset {

std::map<std::string, std::size_t> FilterResult::reason_counts() const {
  std::map<std::string, std::size_t> out;
  for (const DroppedExample& d : dropped) ++out[d.reason];
  return out;
}

namespace {

bool is_empty_output(const CellValue& v) {
  return v.is_blank() || v.is_error() || (v.is_text() && trim(v.as_text()).empty());
}

std::string join(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

FilterResult filter_corpus(const std::vector<Example>& raw, const std::set<std::string>& deprecated) {
  FilterResult result;
  for (const Example& ex : raw) {
    auto drop = [&](std::string_view reason, std::string detail) {
      result.dropped.push_back(DroppedExample{ex, std::string(reason), std::move(detail)});
    };
    std::optional<formula::Ast> ast;
    try {
      ast = formula::parse(ex.formula);
    } catch (const FormulaSyntaxError& e) {
      drop(drop_reason::kUnparseable, e.what());
      continue;
    }
    if (!formula::is_derived_column(*ast, ex.table)) {
      std::set<std::string> missing;
      for (const auto& h : formula::column_references(*ast)) {
        if (!ex.table.has_column(h)) missing.insert(h);
      }
      drop(drop_reason::kNotDerivedColumn, "unknown columns: " + join(missing));
      continue;
    }
    const formula::Metrics m = formula::metrics(*ast);
    std::set<std::string> old;
    for (const auto& fn : m.unique_functions) {
      if (deprecated.count(fn)) old.insert(fn);
    }
    if (!old.empty()) {
      drop(drop_reason::kDeprecatedFunction, join(old));
      continue;
    }
    if (auto missing = unsupported_functions(*ast); !missing.empty()) {
      Example kept = ex;
      kept.provenance["unevaluable"] = true;
      kept.provenance["unsupported_functions"] = std::vector<std::string>(missing.begin(), missing.end());
      result.kept.push_back(std::move(kept));
      continue;
    }
    const EvalOutcome out = evaluate_formula(*ast, ex.table);
    if (std::all_of(out.column.cells.begin(), out.column.cells.end(), is_empty_output)) {
      drop(drop_reason::kAllEmptyOutput, "every output row is blank, empty or an error");
      continue;
    }
    result.kept.push_back(ex);
  }
  return result;
}

std::size_t histogram_bucket(int value) noexcept { return static_cast<std::size_t>(std::clamp(value, 0, 5)); }

namespace {

std::optional<double> average(std::size_t total, std::size_t size) {
  if (size == 0) return std::nullopt;
  return static_cast<double>(total) / static_cast<double>(size);
}

}  // namespace

std::optional<double> SubsetStats::avg_function_calls() const { return average(total_function_calls, size); }
std::optional<double> SubsetStats::avg_depth() const { return average(total_depth, size); }
std::optional<double> SubsetStats::avg_operator_count() const { return average(total_operators, size); }

void SubsetStats::add(const formula::Metrics& m) {
  ++size;
  functions.insert(m.unique_functions.begin(), m.unique_functions.end());
  total_function_calls += static_cast<std::size_t>(m.function_call_count);
  total_depth += static_cast<std::size_t>(m.depth);
  total_operators += static_cast<std::size_t>(m.operator_count);
  ++calls_histogram[histogram_bucket(m.function_call_count)];
  ++depth_histogram[histogram_bucket(m.depth)];
  ++operators_histogram[histogram_bucket(m.operator_count)];
}

SubsetStats& SubsetStats::operator+=(const SubsetStats& other) {
  size += other.size;
  functions.insert(other.functions.begin(), other.functions.end());
  total_function_calls += other.total_function_calls;
  total_depth += other.total_depth;
  total_operators += other.total_operators;
  for (std::size_t i = 0; i < calls_histogram.size(); ++i) {
    calls_histogram[i] += other.calls_histogram[i];
    depth_histogram[i] += other.depth_histogram[i];
    operators_histogram[i] += other.operators_histogram[i];
  }
  return *this;
}

SubsetStats subset_stats_of_formulas(const std::vector<std::string>& formulas) {
  SubsetStats s;
  for (const std::string& f : formulas) s.add(formula::metrics(formula::parse(f)));
  return s;
}

SubsetStats subset_stats(const std::vector<Example>& examples) {
  SubsetStats s;
  for (const Example& ex : examples) s.add(formula::metrics(formula::parse(ex.formula)));
  return s;
}

nlohmann::ordered_json stats_to_json(const SubsetStats& stats) {
  auto opt = [](std::optional<double> v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
  nlohmann::ordered_json j;
  j["size"] = stats.size;
  j["unique_functions"] = stats.unique_function_count();
  j["avg_function_calls"] = opt(stats.avg_function_calls());
  j["avg_depth"] = opt(stats.avg_depth());
  j["avg_operator_count"] = opt(stats.avg_operator_count());
  j["functions"] = std::vector<std::string>(stats.functions.begin(), stats.functions.end());
  nlohmann::ordered_json dist;
  dist["buckets"] = {"0", "1", "2", "3", "4", ">=5"};
  dist["function_calls"] = stats.calls_histogram;
  dist["depth"] = stats.depth_histogram;
  dist["operator_count"] = stats.operators_histogram;
  j["distribution"] = std::move(dist);
  return j;
}

std::string format_stats_table(const SubsetStats& stats, std::string_view label) {
  auto avg = [](std::optional<double> v) {
    if (!v) return std::string("-");
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(2) << *v;
    return ss.str();
  };
  std::ostringstream out;
  out << std::left << std::setw(14) << "subset" << std::right << std::setw(8) << "size" << std::setw(13)
      << "# functions" << std::setw(9) << "# calls" << std::setw(8) << "depth" << std::setw(8) << "# ops" << '\n';
  out << std::left << std::setw(14) << label << std::right << std::setw(8) << stats.size << std::setw(13)
      << stats.unique_function_count() << std::setw(9) << avg(stats.avg_function_calls()) << std::setw(8)
      << avg(stats.avg_depth()) << std::setw(8) << avg(stats.avg_operator_count()) << "\n\n";
  out << std::left << std::setw(6) << "" << std::right << std::setw(16) << "fxn. call count" << std::setw(15)
      << "formula depth" << std::setw(11) << "op. count" << '\n';
  static constexpr const char* kBuckets[] = {"0", "1", "2", "3", "4", ">=5"};
  for (std::size_t i = 0; i < 6; ++i) {
    out << std::left << std::setw(6) << kBuckets[i] << std::right << std::setw(16) << stats.calls_histogram[i]
        << std::setw(15) << stats.depth_histogram[i] << std::setw(11) << stats.operators_histogram[i] << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

std::size_t OverlapPartition::total() const noexcept {
  std::size_t t = 0;
  for (std::size_t r : regions) t += r;
  return t;
}

namespace {

unsigned bit_of(ValidatorId id) {
  switch (id) {
    case ValidatorId::VO: return 4;
    case ValidatorId::VP: return 2;
    case ValidatorId::VC: return 1;
  }
  return 0;
}

}  // namespace

std::size_t OverlapPartition::accepted_by(ValidatorId id) const noexcept {
  std::size_t t = 0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (i & bit_of(id)) t += regions[i];
  }
  return t;
}

std::string OverlapPartition::signature(std::size_t index) {
  return {static_cast<char>('0' + ((index >> 2) & 1)), static_cast<char>('0' + ((index >> 1) & 1)),
          static_cast<char>('0' + (index & 1))};
}

OverlapPartition overlap_partition(const std::vector<Example>& corpus) {
  OverlapPartition p;
  for (const Example& ex : corpus) {
    unsigned index = 0;
    bool complete = true;
    for (ValidatorId id : kAllValidators) {
      auto it = ex.verdicts.find(id);
      if (it == ex.verdicts.end()) {
        complete = false;
        break;
      }
      if (it->second.accepted) index |= bit_of(id);
    }
    if (complete) {
      ++p.regions[index];
    } else {
      ++p.excluded;
    }
  }
  return p;
}

nlohmann::ordered_json partition_to_json(const OverlapPartition& partition) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json regions;
  for (std::size_t i = 0; i < partition.regions.size(); ++i) {
    regions[OverlapPartition::signature(i)] = partition.regions[i];
  }
  j["signature_order"] = "VO,VP,VC";
  j["regions"] = std::move(regions);
  nlohmann::ordered_json totals;
  for (ValidatorId id : kAllValidators) totals[std::string(to_string(id))] = partition.accepted_by(id);
  j["accepted_totals"] = std::move(totals);
  j["none_pass"] = partition.none_pass();
  j["all_pass"] = partition.all_pass();
  j["partitioned"] = partition.total();
  j["excluded"] = partition.excluded;
  return j;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> subsample_indices(std::size_t population, std::size_t target, std::uint64_t seed) {
  if (target > population) {
    throw Error("target too large: requested " + std::to_string(target) + " of " + std::to_string(population) +
                " examples");
  }
  // Selection sampling (Knuth, Algorithm S) over raw mt19937_64 output; both
  // are fully specified, unlike std::uniform_*_distribution.
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> out;
  out.reserve(target);
  for (std::size_t i = 0; i < population && out.size() < target; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    if (static_cast<double>(population - i) * u < static_cast<double>(target - out.size())) out.push_back(i);
  }
  return out;
}

std::vector<Example> subsample(const std::vector<Example>& examples, std::size_t target, std::uint64_t seed) {
  std::vector<Example> out;
  for (std::size_t i : subsample_indices(examples.size(), target, seed)) out.push_back(examples[i]);
  return out;
}

std::set<std::string> unique_functions(const std::vector<Example>& examples) {
  std::set<std::string> out;
  for (const Example& ex : examples) {
    auto fns = formula::metrics(formula::parse(ex.formula)).unique_functions;
    out.insert(fns.begin(), fns.end());
  }
  return out;
}

std::set<std::string> removed_functions(const std::vector<Example>& reference, const std::vector<Example>& subset) {
  const std::set<std::string> kept = unique_functions(subset);
  std::set<std::string> out;
  for (const std::string& fn : unique_functions(reference)) {
    if (!kept.count(fn)) out.insert(fn);
  }
  return out;
}

}  // namespace nl2f::dataset
