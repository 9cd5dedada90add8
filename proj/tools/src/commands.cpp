#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "io.hpp"
#include "manifest.hpp"

namespace nl2f::cli {

namespace {

void note(const Common& common, const std::string& line) {
  if (!common.quiet) std::cerr << line << '\n';
}

void finish(const Common& common, const RunManifest& manifest, const std::string& out) {
  if (!common.manifest.empty()) {
    manifest.write(common.manifest);
  } else if (out != "-") {
    manifest.write(out + ".manifest.json");
  }
}

std::string lines_of(const std::set<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += n + "\n";
  return out;
}

// Runs fn(i) for every index on `workers` threads; the first exception wins.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn fn) {
  std::atomic<std::size_t> next{0};
  std::mutex m;
  std::exception_ptr failure;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(workers, count));
    for (std::size_t w = 0; w < n; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

int run_filter(const Common& common, const FilterArgs& args) {
  RunManifest manifest(common.command, common.settings, common.record_timing);
  const std::string input = read_input(args.corpus);
  manifest.input(args.corpus, input);
  const auto result = dataset::filter_corpus(parse_corpus(input), common.settings.deprecated());

  const std::string kept = render_corpus(result.kept);
  write_output(args.out, kept);
  manifest.output(args.out, kept);

  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [reason, n] : result.reason_counts()) counts[reason] = n;
  manifest.set("kept", result.kept.size());
  manifest.set("dropped", counts);

  if (!args.dropped.empty()) {
    std::string text;
    for (const auto& d : result.dropped) {
      text += nlohmann::ordered_json{{"id", d.example.id}, {"reason", d.reason}, {"detail", d.detail}}.dump() + "\n";
    }
    write_output(args.dropped, text);
    manifest.output(args.dropped, text);
  }
  std::ostringstream msg;
  msg << "kept " << result.kept.size() << ", dropped " << result.dropped.size();
  for (const auto& [reason, n] : result.reason_counts()) msg << " " << reason << "=" << n;
  note(common, msg.str());
  finish(common, manifest, args.out);
  return 0;
}

int run_annotate(const Common& common, const AnnotateArgs& args) {
  const Settings& s = common.settings;
  RunManifest manifest(common.command, s, common.record_timing);
  const std::string input = read_input(args.corpus);
  manifest.input(args.corpus, input);
  std::vector<Example> corpus = parse_corpus(input);

  auto gateway = s.make_gateway();
  const auto prompts = s.prompts();
  const auto spec = s.model_spec();
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (args.overwrite || !corpus[i].utterance) todo.push_back(i);
  }
  parallel_for(todo.size(), s.workers, [&](std::size_t t) {
    Example& ex = corpus[todo[t]];
    ex.utterance = llm::generate_utterance(*gateway, spec, prompts, ex.table, ex.formula,
                                           static_cast<std::size_t>(s.preview_rows));
    ex.provenance["annotation"] = {{"model", s.model}, {"temperature", s.temperature}};
  });

  const std::string out = render_corpus(corpus);
  write_output(args.out, out);
  manifest.output(args.out, out);
  manifest.set("annotated", todo.size());
  note(common, "annotated " + std::to_string(todo.size()) + " of " + std::to_string(corpus.size()) + " examples");
  finish(common, manifest, args.out);
  return 0;
}

int run_validate(const Common& common, const ValidateArgs& args) {
  const Settings& s = common.settings;
  const std::vector<ValidatorId> which = parse_validator_list(args.validators);
  auto runner = s.make_runner();
  if (!runner && std::find(which.begin(), which.end(), ValidatorId::VP) != which.end()) {
    throw ConfigError("validator VP needs --runner-cmd");
  }
  RunManifest manifest(common.command, s, common.record_timing);
  const std::string input = read_input(args.corpus);
  manifest.input(args.corpus, input);

  auto gateway = s.make_gateway();
  validation::Context ctx;
  ctx.gateway = gateway.get();
  ctx.model = s.model_spec();
  ctx.prompts = s.prompts();
  ctx.match = s.match_options();
  ctx.preview_rows = static_cast<std::size_t>(s.preview_rows);
  ctx.runner = runner.get();
  ctx.runner_timeout_ms = s.runner_timeout_ms;
  ctx.runner_memory_mb = s.runner_memory_mb;
  validation::RunOptions opts;
  opts.workers = static_cast<std::size_t>(s.workers);
  if (!args.checkpoint.empty()) opts.checkpoint = args.checkpoint;

  const auto corpus = validation::run_validation(parse_corpus(input), which, ctx, opts);
  const std::string out = render_corpus(corpus);
  write_output(args.out, out);
  manifest.output(args.out, out);

  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (ValidatorId v : which) {
    std::size_t accepted = 0, rejected = 0, undecided = 0;
    for (const auto& ex : corpus) {
      auto it = ex.verdicts.find(v);
      if (it == ex.verdicts.end()) {
        ++undecided;
      } else if (it->second.accepted) {
        ++accepted;
      } else {
        ++rejected;
      }
    }
    summary[std::string(to_string(v))] = {{"accepted", accepted}, {"rejected", rejected}, {"undecided", undecided}};
    note(common, std::string(to_string(v)) + ": accepted " + std::to_string(accepted) + ", rejected " +
                     std::to_string(rejected) + ", undecided " + std::to_string(undecided));
  }
  manifest.set("validators", summary);
  finish(common, manifest, args.out);
  return 0;
}

int run_stats(const Common&, const StatsArgs& args) {
  std::vector<Example> corpus = parse_corpus(read_input(args.corpus));
  if (!args.expr.empty()) corpus = dataset::select_subset(corpus, dataset::Selector::parse(args.expr));
  const auto stats = dataset::subset_stats(corpus);
  const std::string label = !args.label.empty() ? args.label : !args.expr.empty() ? args.expr : "raw";
  std::cout << dataset::format_stats_table(stats, label);
  if (!args.json.empty()) {
    nlohmann::ordered_json j = dataset::stats_to_json(stats);
    j["label"] = label;
    write_output(args.json, j.dump(2) + "\n");
  }
  return 0;
}

int run_partition(const Common&, const PartitionArgs& args) {
  const auto p = dataset::overlap_partition(parse_corpus(read_input(args.corpus)));
  std::cout << "signature (VO VP VC)  count\n";
  for (std::size_t i = 8; i-- > 0;) {
    std::cout << "  " << dataset::OverlapPartition::signature(i) << "                 " << p.regions[i] << "\n";
  }
  std::cout << "VO accepted " << p.accepted_by(ValidatorId::VO) << ", VP accepted " << p.accepted_by(ValidatorId::VP)
            << ", VC accepted " << p.accepted_by(ValidatorId::VC) << "\n";
  std::cout << "none pass " << p.none_pass() << ", all pass " << p.all_pass() << ", partitioned " << p.total()
            << ", excluded " << p.excluded << "\n";
  if (!args.json.empty()) write_output(args.json, dataset::partition_to_json(p).dump(2) + "\n");
  return 0;
}

int run_select(const Common& common, const SelectArgs& args) {
  RunManifest manifest(common.command, common.settings, common.record_timing);
  const auto selector = dataset::Selector::parse(args.expr);
  const std::string input = read_input(args.corpus);
  manifest.input(args.corpus, input);
  const auto subset = dataset::select_subset(parse_corpus(input), selector);
  const std::string out = render_corpus(subset);
  write_output(args.out, out);
  manifest.output(args.out, out);
  manifest.set("selector", selector.text());
  manifest.set("selected", subset.size());
  note(common, "selected " + std::to_string(subset.size()) + " examples");
  finish(common, manifest, args.out);
  return 0;
}

int run_subsample(const Common& common, const SubsampleArgs& args) {
  RunManifest manifest(common.command, common.settings, common.record_timing);
  const std::string input = read_input(args.corpus);
  manifest.input(args.corpus, input);
  const auto sample = dataset::subsample(parse_corpus(input), args.size, common.settings.seed);
  const std::string out = render_corpus(sample);
  write_output(args.out, out);
  manifest.output(args.out, out);
  manifest.set("subsample_algorithm", std::string(dataset::kSubsampleAlgorithm));
  manifest.set("size", args.size);
  finish(common, manifest, args.out);
  return 0;
}

int run_export(const Common& common, const ExportArgs& args) {
  RunManifest manifest(common.command, common.settings, common.record_timing);
  const std::string input = read_input(args.corpus);
  manifest.input(args.corpus, input);
  const auto corpus = parse_corpus(input);
  if (args.valid > corpus.size()) throw Error("validation split larger than the corpus");
  const dataset::FinetuneSplit split{args.train.value_or(corpus.size() - args.valid), args.valid};
  const auto paths = dataset::export_finetune_files(corpus, split, args.out_dir,
                                                    static_cast<std::size_t>(common.settings.preview_rows));
  for (const auto& p : paths) {
    const std::string rel = (std::filesystem::path(args.out_dir) / p.filename()).string();
    manifest.output(rel, read_input(p.string()));
  }
  manifest.set("split", {{"train", split.train}, {"valid", split.valid}});
  note(common, "wrote " + std::to_string(split.train) + " train and " + std::to_string(split.valid) +
                   " validation records");
  if (!common.manifest.empty()) {
    manifest.write(common.manifest);
  } else {
    manifest.write(std::filesystem::path(args.out_dir) / "manifest.json");
  }
  return 0;
}

int run_evaluate(const Common& common, const EvaluateArgs& args) {
  const Settings& s = common.settings;
  const auto scoring = eval::parse_scoring(args.scoring);
  if (!scoring) throw ConfigError("scoring must be 'unbiased' or 'first-k'");
  RunManifest manifest(common.command, s, common.record_timing);
  const std::string input = read_input(args.tasks);
  manifest.input(args.tasks, input);

  auto gateway = s.make_gateway();
  eval::BenchmarkOptions opts;
  opts.n = args.n;
  opts.temperature = args.temperature;
  opts.k_list = args.k;
  opts.scoring = *scoring;
  opts.workers = static_cast<std::size_t>(s.workers);
  opts.preview_rows = static_cast<std::size_t>(s.preview_rows);
  opts.match = s.match_options();
  const auto report = eval::run_benchmark(*gateway, s.model_spec(), s.prompts(), parse_corpus(input), opts);

  const std::string out = eval::report_to_json(report).dump(2) + "\n";
  write_output(args.out, out);
  manifest.output(args.out, out);
  manifest.set("evaluation", {{"n", args.n}, {"temperature", args.temperature}, {"k", args.k}, {"scoring", args.scoring}});

  for (const auto& [k, v] : report.pass_at_k) {
    std::ostringstream msg;
    msg << "pass@" << k << " = " << v;
    note(common, msg.str());
  }
  note(common, "scored " + std::to_string(report.scored_tasks) + ", transport failures " +
                   std::to_string(report.transport_failures) + ", unevaluable " +
                   std::to_string(report.unevaluable_tasks));
  if (report.transport_failures) note(common, "warning: tasks with transport failures are excluded from pass@k");
  finish(common, manifest, args.out);
  return 0;
}

int run_analyze_solved(const Common&, const SolvedArgs& args) {
  const auto report = eval::report_from_json(nlohmann::json::parse(read_input(args.report)));
  const auto stats = eval::solved_case_analysis(report, parse_corpus(read_input(args.tasks)));
  std::cout << dataset::format_stats_table(stats, "solved (" + report.model + ")");
  if (!args.json.empty()) write_output(args.json, dataset::stats_to_json(stats).dump(2) + "\n");
  return 0;
}

int run_analyze_recovered(const Common& common, const RecoveredArgs& args) {
  std::set<std::string> removed;
  if (!args.removed.empty()) {
    removed = formula::parse_function_list(read_input(args.removed));
  } else if (!args.reference.empty() && !args.subset.empty()) {
    removed = dataset::removed_functions(parse_corpus(read_input(args.reference)),
                                         parse_corpus(read_input(args.subset)));
  } else {
    throw ConfigError("give --removed, or --reference with --subset");
  }
  const auto base = eval::report_from_json(nlohmann::json::parse(read_input(args.base)));
  const auto ft = eval::report_from_json(nlohmann::json::parse(read_input(args.finetuned)));
  const auto recovered = eval::recovered_functions(base, ft, removed);
  std::cout << lines_of(recovered);
  note(common, std::to_string(recovered.size()) + " of " + std::to_string(removed.size()) +
                   " removed functions recovered");
  return 0;
}

}  // namespace nl2f::cli
