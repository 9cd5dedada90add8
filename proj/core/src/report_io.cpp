#include <fstream>

#include "nl2f/error.hpp"
#include "nl2f/eval.hpp"

namespace nl2f::eval {

namespace {

using ojson = nlohmann::ordered_json;

TaskResult::Status parse_status(const std::string& text) {
  for (auto s : {TaskResult::Status::Scored, TaskResult::Status::TransportError, TaskResult::Status::Unevaluable}) {
    if (text == to_string(s)) return s;
  }
  throw CorpusError("unknown task status '" + text + "'");
}

}  // namespace

ojson report_to_json(const BenchmarkReport& report) {
  ojson j;
  j["model"] = report.model;
  j["n"] = report.n;
  j["temperature"] = report.temperature;
  j["scoring"] = std::string(to_string(report.scoring));
  j["k"] = report.k_list;
  ojson summary;
  ojson pass = ojson::object();
  for (const auto& [k, v] : report.pass_at_k) pass[std::to_string(k)] = v;
  summary["pass_at_k"] = std::move(pass);
  summary["scored_tasks"] = report.scored_tasks;
  summary["transport_failures"] = report.transport_failures;
  summary["unevaluable_tasks"] = report.unevaluable_tasks;
  summary["solved_ids"] = report.solved_ids;
  j["summary"] = std::move(summary);
  ojson tasks = ojson::array();
  for (const TaskResult& t : report.tasks) {
    ojson tj;
    tj["id"] = t.task_id;
    tj["status"] = std::string(to_string(t.status));
    tj["correct"] = t.correct;
    if (!t.error.empty()) tj["error"] = t.error;
    ojson samples = ojson::array();
    for (std::size_t i = 0; i < t.completions.size(); ++i) {
      ojson s;
      s["completion"] = t.completions[i];
      if (i < t.predictions.size()) {
        s["prediction"] = t.predictions[i] ? ojson(*t.predictions[i]) : ojson(nullptr);
        s["outcome"] = std::string(to_string(t.outcomes[i]));
      }
      samples.push_back(std::move(s));
    }
    tj["samples"] = std::move(samples);
    tasks.push_back(std::move(tj));
  }
  j["tasks"] = std::move(tasks);
  return j;
}

BenchmarkReport report_from_json(const nlohmann::json& j) {
  try {
    BenchmarkReport r;
    r.model = j.at("model").get<std::string>();
    r.n = j.at("n").get<int>();
    r.temperature = j.at("temperature").get<double>();
    const auto scoring = parse_scoring(j.at("scoring").get<std::string>());
    if (!scoring) throw CorpusError("unknown scoring '" + j.at("scoring").get<std::string>() + "'");
    r.scoring = *scoring;
    r.k_list = j.at("k").get<std::vector<int>>();
    for (const auto& tj : j.at("tasks")) {
      TaskResult t;
      t.task_id = tj.at("id").get<std::string>();
      t.status = parse_status(tj.at("status").get<std::string>());
      t.error = tj.value("error", std::string());
      for (const auto& s : tj.at("samples")) {
        t.completions.push_back(s.at("completion").get<std::string>());
        if (!s.contains("outcome")) continue;
        const auto& p = s.at("prediction");
        t.predictions.push_back(p.is_null() ? std::nullopt : std::optional<std::string>(p.get<std::string>()));
        const auto o = parse_outcome(s.at("outcome").get<std::string>());
        if (!o) throw CorpusError("task '" + t.task_id + "': unknown outcome");
        t.outcomes.push_back(*o);
        if (*o == Outcome::Match) ++t.correct;
      }
      r.tasks.push_back(std::move(t));
    }
    aggregate(r);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(std::string("malformed report: ") + e.what());
  }
}

void save_report(const BenchmarkReport& report, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << report_to_json(report).dump(2) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

BenchmarkReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorpusError(path.string() + ": " + e.what());
  }
  return report_from_json(j);
}

}  // namespace nl2f::eval
