#include "nl2f/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include "nl2f/error.hpp"
#include "text_util.hpp"

namespace nl2f {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void field_error(std::string_view context, std::string_view field, const std::string& what) {
  throw CorpusError(std::string(context) + ": field '" + std::string(field) + "': " + what);
}

const json& require(const json& object, std::string_view context, const char* field) {
  auto it = object.find(field);
  if (it == object.end()) field_error(context, field, "missing");
  return *it;
}

std::string require_string(const json& object, std::string_view context, const char* field) {
  const json& v = require(object, context, field);
  if (!v.is_string()) field_error(context, field, "expected a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const json& object, std::string_view context, const char* field) {
  auto it = object.find(field);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) field_error(context, field, "expected a string");
  return it->get<std::string>();
}

CellValue cell_from_json(const json& v, std::string_view context) {
  switch (v.type()) {
    case json::value_t::string: return parse_cell(v.get_ref<const std::string&>());
    case json::value_t::null: return CellValue::blank();
    case json::value_t::boolean: return CellValue::boolean(v.get<bool>());
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
    case json::value_t::number_float: return CellValue::number(v.get<double>());
    default: field_error(context, "table", "cells must be strings");
  }
}

Table table_from_json(const json& v, std::string_view context) {
  if (!v.is_object()) field_error(context, "table", "expected an object");
  const json& headers = require(v, context, "headers");
  const json& rows = require(v, context, "rows");
  if (!headers.is_array() || headers.empty()) field_error(context, "table.headers", "expected a non-empty array");
  if (!rows.is_array()) field_error(context, "table.rows", "expected an array");

  std::vector<Column> columns;
  for (const json& h : headers) {
    if (!h.is_string()) field_error(context, "table.headers", "headers must be strings");
    columns.push_back(Column{h.get<std::string>(), {}});
  }
  std::size_t r = 0;
  for (const json& row : rows) {
    if (!row.is_array()) field_error(context, "table.rows", "row " + std::to_string(r) + " is not an array");
    if (row.size() != columns.size()) {
      field_error(context, "table.rows",
                  "row count mismatch: row " + std::to_string(r) + " has " + std::to_string(row.size()) +
                      " cells but there are " + std::to_string(columns.size()) + " headers");
    }
    for (std::size_t c = 0; c < columns.size(); ++c) columns[c].cells.push_back(cell_from_json(row[c], context));
    ++r;
  }
  try {
    return Table(std::move(columns));
  } catch (const CorpusError& e) {
    field_error(context, "table", e.what());
  }
}

ojson table_to_json(const Table& table) {
  ojson headers = ojson::array();
  for (const Column& c : table.columns()) headers.push_back(c.header);
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < table.row_count(); ++r) {
    ojson row = ojson::array();
    for (const Column& c : table.columns()) row.push_back(display_text(c.cells[r]));
    rows.push_back(std::move(row));
  }
  ojson out = ojson::object();
  out["headers"] = std::move(headers);
  out["rows"] = std::move(rows);
  return out;
}

}  // namespace

std::string_view to_string(ValidatorId id) noexcept {
  switch (id) {
    case ValidatorId::VO: return "VO";
    case ValidatorId::VP: return "VP";
    case ValidatorId::VC: return "VC";
  }
  return "?";
}

std::optional<ValidatorId> parse_validator_id(std::string_view text) {
  text = trim(text);
  if (iequals(text, "VO")) return ValidatorId::VO;
  if (iequals(text, "VP")) return ValidatorId::VP;
  if (iequals(text, "VC")) return ValidatorId::VC;
  return std::nullopt;
}

std::vector<ValidatorId> parse_validator_list(std::string_view text) {
  std::vector<ValidatorId> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = trim(text.substr(start, end - start));
    if (!item.empty()) {
      auto id = parse_validator_id(item);
      if (!id) throw ConfigError("unknown validator '" + std::string(item) + "' (expected VO, VP or VC)");
      if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
    }
    start = end + 1;
  }
  return out;
}

ojson example_to_json(const Example& example) {
  ojson out = ojson::object();
  out["id"] = example.id;
  out["table"] = table_to_json(example.table);
  out["formula"] = example.formula;
  if (example.gold_formula) out["gold_formula"] = *example.gold_formula;
  if (example.utterance) out["utterance"] = *example.utterance;
  if (!example.verdicts.empty()) {
    ojson verdicts = ojson::object();
    for (const auto& [id, v] : example.verdicts) {
      ojson record = ojson::object();
      record["accepted"] = v.accepted;
      record["evidence"] = v.evidence;
      if (!v.reason.empty()) record["reason"] = v.reason;
      verdicts[std::string(to_string(id))] = std::move(record);
    }
    out["verdicts"] = std::move(verdicts);
  }
  if (!example.provenance.is_null() && !example.provenance.empty()) out["provenance"] = ojson::parse(example.provenance.dump());
  return out;
}

Example example_from_json(const json& record, std::string_view context) {
  if (!record.is_object()) throw CorpusError(std::string(context) + ": record is not an object");
  std::string id = require_string(record, context, "id");
  if (id.empty()) field_error(context, "id", "must not be empty");
  Table table = table_from_json(require(record, context, "table"), context);
  Example ex{std::move(id), std::move(table), require_string(record, context, "formula"),
             optional_string(record, context, "utterance"), optional_string(record, context, "gold_formula"), {},
             json::object()};

  if (auto it = record.find("verdicts"); it != record.end() && !it->is_null()) {
    if (!it->is_object()) field_error(context, "verdicts", "expected an object");
    for (const auto& [key, value] : it->items()) {
      auto vid = parse_validator_id(key);
      if (!vid) field_error(context, "verdicts", "unknown validator '" + key + "'");
      if (!value.is_object()) field_error(context, "verdicts." + key, "expected an object");
      const json& accepted = require(value, context, "accepted");
      if (!accepted.is_boolean()) field_error(context, "verdicts." + key + ".accepted", "expected a boolean");
      VerdictRecord v;
      v.accepted = accepted.get<bool>();
      v.evidence = optional_string(value, context, "evidence").value_or("");
      v.reason = optional_string(value, context, "reason").value_or("");
      ex.verdicts[*vid] = std::move(v);
    }
  }
  if (auto it = record.find("provenance"); it != record.end() && !it->is_null()) {
    if (!it->is_object()) field_error(context, "provenance", "expected an object");
    ex.provenance = *it;
  }
  return ex;
}

std::vector<Example> load_corpus(std::istream& in) {
  std::vector<Example> out;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string context = "line " + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(context + ": malformed JSON: " + e.what());
    }
    Example ex = example_from_json(record, context);
    if (!ids.insert(ex.id).second) throw CorpusError(context + ": field 'id': duplicate id '" + ex.id + "'");
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<Example> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError("cannot open corpus '" + path.string() + "'");
  try {
    return load_corpus(in);
  } catch (const CorpusError& e) {
    throw CorpusError(path.string() + ": " + e.what());
  }
}

void save_corpus(const std::vector<Example>& examples, std::ostream& out) {
  for (const Example& ex : examples) out << example_to_json(ex).dump() << '\n';
}

void save_corpus(const std::vector<Example>& examples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  save_corpus(examples, out);
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace nl2f
