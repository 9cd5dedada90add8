#include <fstream>
#include <sstream>

#include "nl2f/error.hpp"
#include "nl2f/llm.hpp"
#include "resources.hpp"

namespace nl2f::llm {

std::string_view to_string(TemplateId id) noexcept {
  switch (id) {
    case TemplateId::Annotate: return "ANNOTATE";
    case TemplateId::OutputPrediction: return "VO_OUTPUT";
    case TemplateId::ProgramGeneration: return "VP_PROGRAM";
    case TemplateId::Classification: return "VC_CLASSIFY";
    case TemplateId::FormulaPrediction: return "NL2F_PREDICT";
  }
  return "?";
}

std::string_view PromptSet::file_name(TemplateId id) {
  switch (id) {
    case TemplateId::Annotate: return "annotate.txt";
    case TemplateId::OutputPrediction: return "vo_output.txt";
    case TemplateId::ProgramGeneration: return "vp_program.txt";
    case TemplateId::Classification: return "vc_classify.txt";
    case TemplateId::FormulaPrediction: return "nl2f_predict.txt";
  }
  return "";
}

std::vector<std::string_view> PromptSet::required_placeholders(TemplateId id) {
  switch (id) {
    case TemplateId::Annotate: return {"{table}", "{formula}"};
    case TemplateId::OutputPrediction: return {"{table}", "{utterance}", "{row_count}"};
    case TemplateId::ProgramGeneration: return {"{table}", "{utterance}"};
    case TemplateId::Classification: return {"{table}", "{formula}", "{utterance}"};
    case TemplateId::FormulaPrediction: return {"{table}", "{utterance}"};
  }
  return {};
}

PromptSet PromptSet::defaults() {
  PromptSet p;
  p.templates_[TemplateId::Annotate] = std::string(resources::prompt_annotate());
  p.templates_[TemplateId::OutputPrediction] = std::string(resources::prompt_output_prediction());
  p.templates_[TemplateId::ProgramGeneration] = std::string(resources::prompt_program_generation());
  p.templates_[TemplateId::Classification] = std::string(resources::prompt_classification());
  p.templates_[TemplateId::FormulaPrediction] = std::string(resources::prompt_formula_prediction());
  return p;
}

void PromptSet::set(TemplateId id, std::string text) {
  for (std::string_view ph : required_placeholders(id)) {
    if (text.find(ph) == std::string::npos) {
      throw ConfigError("prompt template " + std::string(to_string(id)) + " lacks placeholder " + std::string(ph));
    }
  }
  templates_[id] = std::move(text);
}

PromptSet PromptSet::load(const std::filesystem::path& dir) {
  PromptSet p = defaults();
  for (TemplateId id : {TemplateId::Annotate, TemplateId::OutputPrediction, TemplateId::ProgramGeneration,
                        TemplateId::Classification, TemplateId::FormulaPrediction}) {
    const auto path = dir / file_name(id);
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read prompt template '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    p.set(id, ss.str());
  }
  return p;
}

std::string PromptSet::render(TemplateId id, const PromptFields& fields) const {
  const std::string& tpl = text(id);
  const std::pair<std::string_view, const std::string*> slots[] = {
      {"{table}", &fields.table},
      {"{formula}", &fields.formula},
      {"{utterance}", &fields.utterance},
      {"{row_count}", &fields.row_count},
  };
  // Single pass: substituted text is never rescanned.
  std::string out;
  out.reserve(tpl.size() + fields.table.size() + fields.utterance.size());
  std::size_t i = 0;
  while (i < tpl.size()) {
    bool replaced = false;
    if (tpl[i] == '{') {
      for (const auto& [name, value] : slots) {
        if (tpl.compare(i, name.size(), name) == 0) {
          out += *value;
          i += name.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(tpl[i++]);
  }
  // Files end with a newline; prompts do not.
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out;
}

}  // namespace nl2f::llm
