#pragma once

#include <optional>
#include <string>
#include <vector>

#include "settings.hpp"

namespace nl2f::cli {

struct Common {
  Settings settings;
  std::vector<std::string> command;
  std::string manifest;  // explicit manifest path; default is <out>.manifest.json
  bool record_timing = false;
  bool quiet = false;
};

struct FilterArgs {
  std::string corpus = "-";
  std::string out = "-";
  std::string dropped;
};

struct AnnotateArgs {
  std::string corpus = "-";
  std::string out = "-";
  bool overwrite = false;
};

struct ValidateArgs {
  std::string corpus = "-";
  std::string out = "-";
  std::string validators = "VO,VP,VC";
  std::string checkpoint;
};

struct StatsArgs {
  std::string corpus = "-";
  std::string expr;
  std::string label;
  std::string json;
};

struct PartitionArgs {
  std::string corpus = "-";
  std::string json;
};

struct SelectArgs {
  std::string corpus = "-";
  std::string out = "-";
  std::string expr;
};

struct SubsampleArgs {
  std::string corpus = "-";
  std::string out = "-";
  std::size_t size = 0;
};

struct ExportArgs {
  std::string corpus = "-";
  std::string out_dir;
  std::optional<std::size_t> train;
  std::size_t valid = 0;
};

struct EvaluateArgs {
  std::string tasks;
  std::string out = "-";
  int n = 10;
  double temperature = 0.6;
  std::vector<int> k{5};
  std::string scoring = "unbiased";
};

struct SolvedArgs {
  std::string report;
  std::string tasks;
  std::string json;
};

struct RecoveredArgs {
  std::string base;
  std::string finetuned;
  std::string removed;    // function list file
  std::string reference;  // or: reference corpus ...
  std::string subset;     // ... and the validated subset it was reduced to
};

int run_filter(const Common& common, const FilterArgs& args);
int run_annotate(const Common& common, const AnnotateArgs& args);
int run_validate(const Common& common, const ValidateArgs& args);
int run_stats(const Common& common, const StatsArgs& args);
int run_partition(const Common& common, const PartitionArgs& args);
int run_select(const Common& common, const SelectArgs& args);
int run_subsample(const Common& common, const SubsampleArgs& args);
int run_export(const Common& common, const ExportArgs& args);
int run_evaluate(const Common& common, const EvaluateArgs& args);
int run_analyze_solved(const Common& common, const SolvedArgs& args);
int run_analyze_recovered(const Common& common, const RecoveredArgs& args);

}  // namespace nl2f::cli
