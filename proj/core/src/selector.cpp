#include <algorithm>
#include <cctype>
#include <variant>

#include "nl2f/dataset.hpp"
#include "nl2f/error.hpp"

namespace nl2f::dataset {

struct Selector::Node {
  enum class Kind { Raw, Accepted, Rejected, And, Or };
  Kind kind = Kind::Raw;
  ValidatorId validator = ValidatorId::VO;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Selector::Node>;
using Kind = Selector::Node::Kind;

NodePtr leaf(Kind kind, ValidatorId id = ValidatorId::VO) {
  auto n = std::make_shared<Selector::Node>();
  n->kind = kind;
  n->validator = id;
  return n;
}

NodePtr join(Kind kind, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Selector::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr intersection_node() {
  return join(Kind::And, join(Kind::And, leaf(Kind::Accepted, ValidatorId::VO), leaf(Kind::Accepted, ValidatorId::VP)),
              leaf(Kind::Accepted, ValidatorId::VC));
}

class SelectorParser {
 public:
  explicit SelectorParser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("invalid selector at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  NodePtr expr() {
    NodePtr n = term();
    while (eat('|')) n = join(Kind::Or, n, term());
    return n;
  }

  NodePtr term() {
    NodePtr n = factor();
    while (eat('&')) n = join(Kind::And, n, factor());
    return n;
  }

  NodePtr factor() {
    if (eat('(')) {
      NodePtr n = expr();
      expect(')');
      return n;
    }
    const std::size_t start = pos_;
    const std::string w = word();
    if (w == "raw") return leaf(Kind::Raw);
    if (w == "intersection") return intersection_node();
    if (w == "accepted" || w == "rejected") {
      expect('(');
      const std::string v = word();
      auto id = parse_validator_id(v);
      if (!id) fail("unknown validator '" + v + "'");
      expect(')');
      return leaf(w == "accepted" ? Kind::Accepted : Kind::Rejected, *id);
    }
    pos_ = start;
    skip_space();
    if (w.empty()) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end");
    fail("unknown term '" + w + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

bool eval_node(const Selector::Node& n, const Example& ex) {
  switch (n.kind) {
    case Kind::Raw: return true;
    case Kind::Accepted:
    case Kind::Rejected: {
      auto it = ex.verdicts.find(n.validator);
      if (it == ex.verdicts.end()) return false;
      return it->second.accepted == (n.kind == Kind::Accepted);
    }
    case Kind::And: return eval_node(*n.lhs, ex) && eval_node(*n.rhs, ex);
    case Kind::Or: return eval_node(*n.lhs, ex) || eval_node(*n.rhs, ex);
  }
  return false;
}

void collect(const Selector::Node& n, std::set<ValidatorId>& out) {
  if (n.kind == Kind::Accepted || n.kind == Kind::Rejected) out.insert(n.validator);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

Selector Selector::parse(std::string_view text) {
  Selector s;
  s.root_ = SelectorParser(text).parse();
  s.text_ = std::string(text);
  return s;
}

Selector Selector::raw() { return parse("raw"); }

Selector Selector::accepted(ValidatorId id) { return parse("accepted(" + std::string(to_string(id)) + ")"); }

Selector Selector::rejected(ValidatorId id) { return parse("rejected(" + std::string(to_string(id)) + ")"); }

Selector Selector::intersection() { return parse("intersection"); }

bool Selector::matches(const Example& example) const { return eval_node(*root_, example); }

std::set<ValidatorId> Selector::referenced_validators() const {
  std::set<ValidatorId> out;
  collect(*root_, out);
  return out;
}

std::vector<Example> select_subset(const std::vector<Example>& corpus, const Selector& selector) {
  for (ValidatorId id : selector.referenced_validators()) {
    const bool present =
        std::any_of(corpus.begin(), corpus.end(), [&](const Example& ex) { return ex.verdicts.count(id) > 0; });
    if (!present) {
      throw Error("selector '" + selector.text() + "' needs verdicts from " + std::string(to_string(id)) +
                  " but no example carries one");
    }
  }
  std::vector<Example> out;
  for (const Example& ex : corpus) {
    if (selector.matches(ex)) out.push_back(ex);
  }
  return out;
}

}  // namespace nl2f::dataset
