#include <cstdlib>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace nl2f::cli;

namespace {

// Flags that override the config file. Unset flags leave the config value.
struct Overrides {
  std::optional<std::string> endpoint, model, credential_env, mock_script, runner_cmd, lcs_mode;
  std::optional<std::string> deprecated_list, prompts_dir, cache_dir;
  std::optional<double> temperature, num_tol, str_coef;
  std::optional<int> max_tokens, workers, rpm, runner_timeout_ms, runner_memory_mb, preview_rows;
  std::optional<std::uint64_t> seed;
  bool strict_strings = false;

  void apply(Settings& s) const {
    auto set = [](auto& field, const auto& value) {
      if (value) field = *value;
    };
    set(s.endpoint, endpoint);
    set(s.model, model);
    set(s.credential_env, credential_env);
    set(s.mock_script, mock_script);
    set(s.runner_cmd, runner_cmd);
    set(s.lcs_mode, lcs_mode);
    set(s.deprecated_list, deprecated_list);
    set(s.prompts_dir, prompts_dir);
    set(s.cache_dir, cache_dir);
    set(s.temperature, temperature);
    set(s.num_tol, num_tol);
    set(s.str_coef, str_coef);
    set(s.max_tokens, max_tokens);
    set(s.workers, workers);
    set(s.requests_per_minute, rpm);
    set(s.runner_timeout_ms, runner_timeout_ms);
    set(s.runner_memory_mb, runner_memory_mb);
    set(s.preview_rows, preview_rows);
    set(s.seed, seed);
    if (strict_strings) s.strict_strings = true;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build, validate and evaluate NL-to-formula datasets", "nl2f"};
  app.set_version_flag("--version", NL2F_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  Overrides ov;
  Common common;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--seed", ov.seed, "Seed for every random choice (default 0)");
  app.add_option("--endpoint", ov.endpoint, "\"mock\" or a chat-completions URL");
  app.add_option("--model", ov.model, "Model name sent to the endpoint");
  app.add_option("--credential-env", ov.credential_env, "Env var holding the API key");
  app.add_option("--mock-script", ov.mock_script, "JSON prompt->completions script for the mock endpoint");
  app.add_option("--temperature", ov.temperature, "Annotation temperature (default 0.7)");
  app.add_option("--max-tokens", ov.max_tokens, "Completion token limit");
  app.add_option("--rpm", ov.rpm, "Requests per minute for live endpoints (<= 0 disables)");
  app.add_option("--workers", ov.workers, "Concurrent examples");
  app.add_option("--cache-dir", ov.cache_dir, "Response cache (default $NL2F_CACHE_DIR)");
  app.add_option("--runner-cmd", ov.runner_cmd, "Program runner command for VP, e.g. \"py-runner run\"");
  app.add_option("--runner-timeout-ms", ov.runner_timeout_ms, "Per-program time limit");
  app.add_option("--runner-memory-mb", ov.runner_memory_mb, "Per-program memory limit");
  app.add_option("--num-tol", ov.num_tol, "Absolute numeric tolerance (default 0.05)");
  app.add_option("--str-coef", ov.str_coef, "String similarity threshold, exclusive (default 0.8)");
  app.add_flag("--strict-strings", ov.strict_strings, "Compare text without trimming or case folding");
  app.add_option("--lcs-mode", ov.lcs_mode, "contiguous | subsequence")
      ->check(CLI::IsMember({"contiguous", "subsequence"}));
  app.add_option("--preview-rows", ov.preview_rows, "Table rows shown to the model (default 20)");
  app.add_option("--deprecated-list", ov.deprecated_list, "Deprecated function list, one name per line");
  app.add_option("--prompts-dir", ov.prompts_dir, "Directory of prompt template overrides");
  app.add_option("--manifest", common.manifest, "Run manifest path (default <out>.manifest.json)");
  app.add_flag("--record-timing", common.record_timing, "Add wall-clock timing to the manifest");
  app.add_flag("-q,--quiet", common.quiet, "No progress output on stderr");

  auto sub = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->fallthrough();
    return c;
  };

  FilterArgs filter;
  auto* c_filter = sub("filter", "Drop unparseable, deprecated-function, non-derived and all-empty formulas");
  c_filter->add_option("--corpus", filter.corpus, "Input corpus (JSONL, - for stdin)");
  c_filter->add_option("--out", filter.out, "Kept examples (- for stdout)");
  c_filter->add_option("--dropped", filter.dropped, "Dropped ids with reasons (JSONL)");

  AnnotateArgs annotate;
  auto* c_annotate = sub("annotate", "Generate utterances for examples without one");
  c_annotate->add_option("--corpus", annotate.corpus, "Input corpus");
  c_annotate->add_option("--out", annotate.out, "Annotated corpus");
  c_annotate->add_flag("--overwrite", annotate.overwrite, "Re-annotate examples that already have an utterance");

  ValidateArgs validate;
  auto* c_validate = sub("validate", "Run validators and attach verdicts");
  c_validate->add_option("--corpus", validate.corpus, "Input corpus");
  c_validate->add_option("--out", validate.out, "Corpus with verdicts");
  c_validate->add_option("--validators", validate.validators, "Comma separated subset of VO,VP,VC")
      ->capture_default_str();
  c_validate->add_option("--checkpoint", validate.checkpoint, "Resume file for long runs");

  StatsArgs stats;
  auto* c_stats = sub("stats", "Subset size, function and structure statistics");
  c_stats->add_option("--corpus", stats.corpus, "Input corpus");
  c_stats->add_option("--expr", stats.expr, "Selector applied first, e.g. \"accepted(VO)\"");
  c_stats->add_option("--label", stats.label, "Row label");
  c_stats->add_option("--json", stats.json, "Also write machine-readable stats");

  PartitionArgs partition;
  auto* c_partition = sub("partition", "Count examples per validator acceptance signature");
  c_partition->add_option("--corpus", partition.corpus, "Corpus with verdicts");
  c_partition->add_option("--json", partition.json, "Also write the partition as JSON");

  SelectArgs select;
  auto* c_select = sub("select", "Keep examples matching a selector");
  c_select->add_option("--corpus", select.corpus, "Corpus with verdicts");
  c_select->add_option("--out", select.out, "Selected examples");
  c_select->add_option("--expr", select.expr, "accepted(V), rejected(V), raw, intersection, & | ( )")->required();

  SubsampleArgs subsample;
  auto* c_subsample = sub("subsample", "Uniform sample without replacement, seeded by --seed");
  c_subsample->add_option("--corpus", subsample.corpus, "Input corpus");
  c_subsample->add_option("--out", subsample.out, "Sampled examples");
  c_subsample->add_option("--size", subsample.size, "Target size")->required();

  ExportArgs export_args;
  auto* c_export = sub("export", "Write train.jsonl and valid.jsonl prompt/completion files");
  c_export->add_option("--corpus", export_args.corpus, "Annotated corpus");
  c_export->add_option("--out-dir", export_args.out_dir, "Output directory")->required();
  c_export->add_option("--train", export_args.train, "Training records (default: all but --valid)");
  c_export->add_option("--valid", export_args.valid, "Validation records taken after the training ones");

  EvaluateArgs evaluate;
  auto* c_evaluate = sub("evaluate", "pass@k by execution match on benchmark tasks");
  c_evaluate->add_option("--tasks", evaluate.tasks, "Task corpus with utterances")->required();
  c_evaluate->add_option("--out", evaluate.out, "Report (JSON)");
  c_evaluate->add_option("--n", evaluate.n, "Predictions per task")->capture_default_str();
  c_evaluate->add_option("--temp", evaluate.temperature, "Sampling temperature")->capture_default_str();
  c_evaluate->add_option("--k", evaluate.k, "k values (repeatable)")->capture_default_str();
  c_evaluate->add_option("--scoring", evaluate.scoring, "unbiased | first-k")
      ->check(CLI::IsMember({"unbiased", "first-k"}))
      ->capture_default_str();

  auto* c_analyze = sub("analyze", "Post-hoc analyses of evaluation reports");
  c_analyze->require_subcommand(1);
  SolvedArgs solved;
  auto* c_solved = c_analyze->add_subcommand("solved", "Statistics of gold formulas of solved tasks");
  c_solved->fallthrough();
  c_solved->add_option("--report", solved.report, "Evaluation report")->required();
  c_solved->add_option("--tasks", solved.tasks, "Task corpus the report was computed on")->required();
  c_solved->add_option("--json", solved.json, "Also write machine-readable stats");
  RecoveredArgs recovered;
  auto* c_recovered = c_analyze->add_subcommand("recovered", "Removed functions a fine-tuned model uses anew");
  c_recovered->fallthrough();
  c_recovered->add_option("--base", recovered.base, "Base model report")->required();
  c_recovered->add_option("--finetuned", recovered.finetuned, "Fine-tuned model report")->required();
  c_recovered->add_option("--removed", recovered.removed, "Removed function list file");
  c_recovered->add_option("--reference", recovered.reference, "Reference corpus (with --subset)");
  c_recovered->add_option("--subset", recovered.subset, "Validated subset of the reference corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) common.settings = load_settings_file(config_path);
    if (common.settings.cache_dir.empty()) {
      if (const char* env = std::getenv("NL2F_CACHE_DIR")) common.settings.cache_dir = env;
    }
    ov.apply(common.settings);
    common.settings.validate();
    for (int i = 1; i < argc; ++i) common.command.emplace_back(argv[i]);

    if (c_filter->parsed()) return run_filter(common, filter);
    if (c_annotate->parsed()) return run_annotate(common, annotate);
    if (c_validate->parsed()) return run_validate(common, validate);
    if (c_stats->parsed()) return run_stats(common, stats);
    if (c_partition->parsed()) return run_partition(common, partition);
    if (c_select->parsed()) return run_select(common, select);
    if (c_subsample->parsed()) return run_subsample(common, subsample);
    if (c_export->parsed()) return run_export(common, export_args);
    if (c_evaluate->parsed()) return run_evaluate(common, evaluate);
    if (c_solved->parsed()) return run_analyze_solved(common, solved);
    if (c_recovered->parsed()) return run_analyze_recovered(common, recovered);
  } catch (const nl2f::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
