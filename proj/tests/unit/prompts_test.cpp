#include <gtest/gtest.h>

#include "support.hpp"

using namespace nl2f;
using namespace nl2f::llm;
using nl2f::test::make_table;

namespace {

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')) + 1; }

constexpr TemplateId kAll[] = {TemplateId::Annotate, TemplateId::OutputPrediction, TemplateId::ProgramGeneration,
                               TemplateId::Classification, TemplateId::FormulaPrediction};

}  // namespace

TEST(Preview, OneByOneIsThreeLines) {
  const std::string p = render_table_preview(make_table({{"A", {"1"}}}), 20);
  EXPECT_EQ(p, "| A |\n| --- |\n| 1 |");
  EXPECT_EQ(line_count(p), 3u);
}

TEST(Preview, CapsRows) {
  std::vector<std::string> rows;
  for (int i = 0; i < 10; ++i) rows.push_back(std::to_string(i));
  const std::string p = render_table_preview(make_table({{"A", rows}}), 5);
  EXPECT_EQ(line_count(p), 2u + 5u);
  EXPECT_EQ(p.find("| 5 |"), std::string::npos);
}

TEST(Preview, BlankIsEmptyAndPipesEscaped) {
  const std::string p = render_table_preview(make_table({{"A|B", {""}}, {"C", {"x|y"}}}), 20);
  EXPECT_EQ(p, "| A\\|B | C |\n| --- | --- |\n|  | x\\|y |");
}

TEST(Preview, Stable) {
  const Table t = nl2f::test::make_table({{"A", {"1", "2.5", "TRUE"}}, {"B", {"x", "", "#N/A"}}});
  EXPECT_EQ(render_table_preview(t, 20), render_table_preview(t, 20));
}

TEST(Prompts, DefaultsCarryRequiredPlaceholders) {
  const PromptSet p = PromptSet::defaults();
  for (TemplateId id : kAll) {
    for (std::string_view ph : PromptSet::required_placeholders(id)) {
      EXPECT_NE(p.text(id).find(ph), std::string::npos) << to_string(id) << " " << ph;
    }
  }
}

TEST(Prompts, RenderSubstitutesOnce) {
  PromptSet p = PromptSet::defaults();
  p.set(TemplateId::FormulaPrediction, "T={table} U={utterance}");
  PromptFields f;
  f.table = "{utterance}";
  f.utterance = "u";
  EXPECT_EQ(p.render(TemplateId::FormulaPrediction, f), "T={utterance} U=u");
}

TEST(Prompts, SetRejectsMissingPlaceholder) {
  PromptSet p = PromptSet::defaults();
  EXPECT_THROW(p.set(TemplateId::Classification, "{table} {utterance}"), ConfigError);
}

TEST(Prompts, LoadOverridesPresentFiles) {
  nl2f::test::TempDir dir;
  nl2f::test::write_file(dir / "annotate.txt", "Describe {formula} on {table}");
  const PromptSet p = PromptSet::load(dir.path());
  EXPECT_EQ(p.text(TemplateId::Annotate), "Describe {formula} on {table}");
  EXPECT_EQ(p.text(TemplateId::Classification), PromptSet::defaults().text(TemplateId::Classification));

  nl2f::test::write_file(dir / "vc_classify.txt", "no placeholders");
  EXPECT_THROW(PromptSet::load(dir.path()), ConfigError);
}

TEST(StripQuotes, Trims) {
  EXPECT_EQ(strip_quotes("  \"Sum A and B\" "), "Sum A and B");
  EXPECT_EQ(strip_quotes("'x'"), "x");
  EXPECT_EQ(strip_quotes("\"unbalanced"), "\"unbalanced");
  EXPECT_EQ(strip_quotes("plain"), "plain");
}

TEST(Annotate, ReturnsScriptedUtterance) {
  const Table t = make_table({{"A", {"1", "2"}}, {"B", {"3", "4"}}});
  const PromptSet prompts = PromptSet::defaults();
  PromptFields f;
  f.table = render_table_preview(t, kDefaultPreviewRows);
  f.formula = "=[A]+[B]";
  const std::string prompt = prompts.render(TemplateId::Annotate, f);
  f.formula = formula::render(formula::parse("[A]+[B]"));
  const std::string canonical = prompts.render(TemplateId::Annotate, f);
  Gateway g(std::make_shared<MockBackend>(std::map<std::string, std::vector<std::string>>{
                {prompt, {"  \"Add columns A and B\" "}}, {canonical, {"'Add columns A and B'"}}}),
            nl2f::test::quiet_gateway());
  EXPECT_EQ(generate_utterance(g, ChatModelSpec{}, prompts, t, "=[A]+[B]"), "Add columns A and B");
  EXPECT_EQ(generate_utterance(g, ChatModelSpec{}, prompts, t, formula::parse("[A]+[B]")), "Add columns A and B");
}

TEST(Annotate, PromptShowsHeaderAndBoundedRows) {
  std::vector<std::string> rows;
  for (int i = 0; i < 30; ++i) rows.push_back(std::to_string(i * 7));
  const Table t = make_table({{"Qty", rows}});
  std::string seen;
  auto backend = std::make_shared<nl2f::test::FnBackend>([&](const ChatModelSpec&, const std::string& p) {
    seen = p;
    return std::vector<std::string>{"double the quantity"};
  });
  Gateway g(backend, nl2f::test::quiet_gateway());
  generate_utterance(g, ChatModelSpec{}, PromptSet::defaults(), t, "=[Qty]*2", 5);
  EXPECT_NE(seen.find("| Qty |"), std::string::npos);
  EXPECT_NE(seen.find("| 28 |"), std::string::npos);
  EXPECT_EQ(seen.find("| 35 |"), std::string::npos);
  EXPECT_NE(seen.find("=[Qty]*2"), std::string::npos);
}

TEST(Annotate, EmptyCompletionIsAnError) {
  auto backend = std::make_shared<nl2f::test::FnBackend>(
      [](const ChatModelSpec&, const std::string&) { return std::vector<std::string>{"  \"\" "}; });
  Gateway g(backend, nl2f::test::quiet_gateway());
  EXPECT_THROW(generate_utterance(g, ChatModelSpec{}, PromptSet::defaults(), make_table({{"A", {"1"}}}), "=[A]"),
               Error);
}
