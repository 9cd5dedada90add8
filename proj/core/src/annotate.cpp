#include "nl2f/llm.hpp"
#include "text_util.hpp"

namespace nl2f::llm {

namespace {

std::string preview_field(const CellValue& cell) {
  std::string out;
  for (char c : display_text(cell)) {
    if (c == '|') {
      out += "\\|";
    } else if (c == '\n' || c == '\r') {
      out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string preview_row(const std::vector<std::string>& fields) {
  std::string line = "|";
  for (const std::string& f : fields) {
    line += ' ';
    line += f;
    line += " |";
  }
  return line;
}

}  // namespace

std::string render_table_preview(const Table& table, std::size_t max_rows) {
  std::vector<std::string> headers;
  std::vector<std::string> separators;
  for (const Column& c : table.columns()) {
    headers.push_back(preview_field(CellValue::text(c.header)));
    separators.emplace_back("---");
  }
  std::string out = preview_row(headers);
  out += '\n';
  out += preview_row(separators);
  const std::size_t rows = std::min(table.row_count(), std::max<std::size_t>(max_rows, 1));
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> fields;
    for (const Column& c : table.columns()) fields.push_back(preview_field(c.cells[r]));
    out += '\n';
    out += preview_row(fields);
  }
  return out;
}

std::string strip_quotes(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2) {
    const char a = text.front();
    const char b = text.back();
    if ((a == '"' && b == '"') || (a == '\'' && b == '\'') || (a == '`' && b == '`')) {
      text = trim(text.substr(1, text.size() - 2));
    }
  }
  return std::string(text);
}

std::string generate_utterance(Gateway& gateway, const ChatModelSpec& spec, const PromptSet& prompts,
                               const Table& table, const formula::Ast& formula, std::size_t preview_rows) {
  return generate_utterance(gateway, spec, prompts, table, formula::render(formula), preview_rows);
}

std::string generate_utterance(Gateway& gateway, const ChatModelSpec& spec, const PromptSet& prompts,
                               const Table& table, std::string_view formula_text, std::size_t preview_rows) {
  ChatModelSpec single = spec;
  single.n = 1;
  PromptFields fields;
  fields.table = render_table_preview(table, preview_rows);
  fields.formula = std::string(trim(formula_text));
  const std::string prompt = prompts.render(TemplateId::Annotate, fields);
  const std::vector<std::string> completions = gateway.complete(single, prompt);
  std::string utterance = completions.empty() ? std::string() : strip_quotes(completions.front());
  if (utterance.empty()) throw Error("annotation model returned an empty utterance");
  return utterance;
}

}  // namespace nl2f::llm
