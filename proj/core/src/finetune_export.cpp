#include <fstream>

#include "nl2f/dataset.hpp"
#include "nl2f/error.hpp"
#include "nl2f/llm.hpp"
#include "text_util.hpp"

namespace nl2f::dataset {

std::string finetune_prompt(const Example& example, std::size_t preview_rows) {
  if (!example.utterance || trim(*example.utterance).empty()) {
    throw Error("example '" + example.id + "' has no utterance");
  }
  llm::PromptFields fields;
  fields.table = llm::render_table_preview(example.table, preview_rows);
  fields.utterance = *example.utterance;
  return llm::PromptSet::defaults().render(llm::TemplateId::FormulaPrediction, fields);
}

namespace {

std::string completion_of(const Example& example) {
  std::string f(trim(example.reference_formula()));
  if (f.empty() || f.front() != '=') f.insert(f.begin(), '=');
  return f;
}

void write_split(const std::vector<Example>& examples, std::size_t first, std::size_t count,
                 const std::filesystem::path& path, std::size_t preview_rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  for (std::size_t i = first; i < first + count; ++i) {
    nlohmann::ordered_json rec;
    rec["prompt"] = finetune_prompt(examples[i], preview_rows);
    rec["completion"] = completion_of(examples[i]);
    out << rec.dump() << '\n';
  }
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> export_finetune_files(const std::vector<Example>& examples, FinetuneSplit split,
                                                         const std::filesystem::path& out_dir,
                                                         std::size_t preview_rows) {
  if (split.train + split.valid > examples.size()) {
    throw Error("split " + std::to_string(split.train) + "/" + std::to_string(split.valid) + " exceeds " +
                std::to_string(examples.size()) + " examples");
  }
  for (std::size_t i = 0; i < split.train + split.valid; ++i) finetune_prompt(examples[i], preview_rows);
  std::filesystem::create_directories(out_dir);
  const auto train = out_dir / "train.jsonl";
  const auto valid = out_dir / "valid.jsonl";
  write_split(examples, 0, split.train, train, preview_rows);
  write_split(examples, split.train, split.valid, valid, preview_rows);
  return {train, valid};
}

}  // namespace nl2f::dataset
