#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <vector>

#include "interp_internal.hpp"
#include "text_util.hpp"
#include "utf8.hpp"

namespace nl2f::interp {

namespace {

using formula::Ast;
using Args = std::span<const Ast>;
constexpr std::size_t kVariadic = std::numeric_limits<std::size_t>::max();

// Evaluates every argument left to right; the first Error short-circuits.
struct Evaluated {
  std::vector<CellValue> values;
  std::optional<CellValue> error;
};

Evaluated eval_all(Args args, const RowEvaluator& ev) {
  Evaluated out;
  out.values.reserve(args.size());
  for (const Ast& a : args) {
    CellValue v = ev.eval(a);
    if (v.is_error()) {
      out.error = std::move(v);
      return out;
    }
    out.values.push_back(std::move(v));
  }
  return out;
}

// Numeric arguments of SUM-style aggregates: Blank skipped, Boolean as 0/1,
// numeric text parsed, other text is #VALUE!.
struct Collected {
  std::vector<double> numbers;
  std::optional<CellValue> error;
};

Collected collect_numbers(Args args, const RowEvaluator& ev) {
  Collected out;
  for (const Ast& a : args) {
    CellValue v = ev.eval(a);
    if (v.is_blank()) continue;
    Number n = to_number(v);
    if (n.error) {
      out.error = n.error;
      return out;
    }
    out.numbers.push_back(n.value);
  }
  return out;
}

// Excel-style rounding helpers work on the value re-read at 15 significant
// digits so that e.g. 2.675 rounds to 2.68.
double clean15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

enum class RoundMode { HalfAwayFromZero, AwayFromZero, TowardZero };

double round_digits(double x, int digits, RoundMode mode) {
  const double scale = std::pow(10.0, std::abs(digits));
  double y = clean15(digits >= 0 ? x * scale : x / scale);
  switch (mode) {
    case RoundMode::HalfAwayFromZero: y = std::round(y); break;
    case RoundMode::AwayFromZero: y = y < 0 ? std::floor(y) : std::ceil(y); break;
    case RoundMode::TowardZero: y = std::trunc(y); break;
  }
  return digits >= 0 ? y / scale : y * scale;
}

Builtin unary_numeric(double (*f)(double)) {
  return {1, 1, [f](Args args, const RowEvaluator& ev) {
            Number n = to_number(ev.eval(args[0]));
            if (n.error) return *n.error;
            return make_number(f(n.value));
          }};
}

Builtin rounding(RoundMode mode, std::size_t min_args) {
  return {min_args, 2, [mode](Args args, const RowEvaluator& ev) {
            Number x = to_number(ev.eval(args[0]));
            if (x.error) return *x.error;
            int digits = 0;
            if (args.size() > 1) {
              Number d = to_number(ev.eval(args[1]));
              if (d.error) return *d.error;
              digits = static_cast<int>(std::trunc(d.value));
            }
            if (std::abs(digits) > 300) return value_error();
            return make_number(round_digits(x.value, digits, mode));
          }};
}

Builtin logical_fold(bool is_and) {
  return {1, kVariadic, [is_and](Args args, const RowEvaluator& ev) {
            bool acc = is_and;
            bool any = false;
            for (const Ast& a : args) {
              CellValue v = ev.eval(a);
              if (v.is_blank()) continue;
              Logical l = to_logical(v);
              if (l.error) return *l.error;
              any = true;
              acc = is_and ? (acc && l.value) : (acc || l.value);
            }
            if (!any) return value_error();
            return CellValue::boolean(acc);
          }};
}

Builtin text_transform(std::string (*f)(std::string_view)) {
  return {1, 1, [f](Args args, const RowEvaluator& ev) {
            Text t = to_text(ev.eval(args[0]));
            if (t.error) return *t.error;
            return CellValue::text(f(t.value));
          }};
}

Builtin concat_all(std::size_t min_args) {
  return {min_args, kVariadic, [](Args args, const RowEvaluator& ev) {
            std::string out;
            for (const Ast& a : args) {
              Text t = to_text(ev.eval(a));
              if (t.error) return *t.error;
              out += t.value;
            }
            return CellValue::text(std::move(out));
          }};
}

Builtin type_test(bool (*pred)(const CellValue&)) {
  return {1, 1, [pred](Args args, const RowEvaluator& ev) { return CellValue::boolean(pred(ev.eval(args[0]))); }};
}

// Optional integer argument (e.g. LEFT's count). nullopt means absent.
struct IntArg {
  std::optional<long long> value;
  std::optional<CellValue> error;
};

IntArg int_arg(Args args, std::size_t i, const RowEvaluator& ev) {
  if (i >= args.size()) return {};
  Number n = to_number(ev.eval(args[i]));
  if (n.error) return {std::nullopt, n.error};
  if (std::abs(n.value) > 1e15) return {std::nullopt, value_error()};
  return {static_cast<long long>(std::trunc(n.value)), {}};
}

std::string trim_spaces(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (char c : s) {
    if (c == ' ') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string proper_case(std::string_view s) {
  std::string out(s);
  bool prev_letter = false;
  for (char& c : out) {
    const bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (letter) c = prev_letter ? ascii_lower(c) : ascii_upper(c);
    prev_letter = letter;
  }
  return out;
}

std::string upper_text(std::string_view s) { return to_upper(s); }
std::string lower_text(std::string_view s) { return to_lower(s); }

// 1-based code-point position of `needle` in `hay` at or after `start`.
std::optional<std::size_t> find_from(const std::vector<char32_t>& hay, const std::vector<char32_t>& needle,
                                     std::size_t start) {
  if (start < 1 || start > hay.size() + 1) return std::nullopt;
  if (needle.empty()) return start;
  for (std::size_t i = start - 1; i + needle.size() <= hay.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(i))) return i + 1;
  }
  return std::nullopt;
}

Builtin finder(bool case_sensitive) {
  return {2, 3, [case_sensitive](Args args, const RowEvaluator& ev) {
            Text needle = to_text(ev.eval(args[0]));
            if (needle.error) return *needle.error;
            Text hay = to_text(ev.eval(args[1]));
            if (hay.error) return *hay.error;
            IntArg start = int_arg(args, 2, ev);
            if (start.error) return *start.error;
            std::string n = case_sensitive ? needle.value : to_lower(needle.value);
            std::string h = case_sensitive ? hay.value : to_lower(hay.value);
            const long long s = start.value.value_or(1);
            if (s < 1) return value_error();
            auto pos = find_from(utf8::decode(h), utf8::decode(n), static_cast<std::size_t>(s));
            if (!pos) return value_error();
            return CellValue::number(static_cast<double>(*pos));
          }};
}

std::map<std::string, Builtin> make_registry() {
  std::map<std::string, Builtin> r;

  r["IF"] = {2, 3, [](Args args, const RowEvaluator& ev) {
               Logical cond = to_logical(ev.eval(args[0]));
               if (cond.error) return *cond.error;
               if (cond.value) return ev.eval(args[1]);
               return args.size() > 2 ? ev.eval(args[2]) : CellValue::boolean(false);
             }};
  r["IFERROR"] = {2, 2, [](Args args, const RowEvaluator& ev) {
                    CellValue v = ev.eval(args[0]);
                    return v.is_error() ? ev.eval(args[1]) : v;
                  }};
  r["IFNA"] = {2, 2, [](Args args, const RowEvaluator& ev) {
                 CellValue v = ev.eval(args[0]);
                 return (v.is_error() && v.error_code() == error_code::kNotAvailable) ? ev.eval(args[1]) : v;
               }};
  r["CHOOSE"] = {2, kVariadic, [](Args args, const RowEvaluator& ev) {
                   IntArg idx = int_arg(args, 0, ev);
                   if (idx.error) return *idx.error;
                   if (*idx.value < 1 || static_cast<std::size_t>(*idx.value) >= args.size()) return value_error();
                   return ev.eval(args[static_cast<std::size_t>(*idx.value)]);
                 }};

  r["AND"] = logical_fold(true);
  r["OR"] = logical_fold(false);
  r["NOT"] = {1, 1, [](Args args, const RowEvaluator& ev) {
                Logical l = to_logical(ev.eval(args[0]));
                if (l.error) return *l.error;
                return CellValue::boolean(!l.value);
              }};

  r["SUM"] = {1, kVariadic, [](Args args, const RowEvaluator& ev) {
                Collected c = collect_numbers(args, ev);
                if (c.error) return *c.error;
                double s = 0;
                for (double x : c.numbers) s += x;
                return make_number(s);
              }};
  r["PRODUCT"] = {1, kVariadic, [](Args args, const RowEvaluator& ev) {
                    Collected c = collect_numbers(args, ev);
                    if (c.error) return *c.error;
                    if (c.numbers.empty()) return CellValue::number(0);
                    double p = 1;
                    for (double x : c.numbers) p *= x;
                    return make_number(p);
                  }};
  r["AVERAGE"] = {1, kVariadic, [](Args args, const RowEvaluator& ev) {
                    Collected c = collect_numbers(args, ev);
                    if (c.error) return *c.error;
                    if (c.numbers.empty()) return CellValue::error(error_code::kDivZero);
                    double s = 0;
                    for (double x : c.numbers) s += x;
                    return make_number(s / static_cast<double>(c.numbers.size()));
                  }};
  r["MIN"] = {1, kVariadic, [](Args args, const RowEvaluator& ev) {
                Collected c = collect_numbers(args, ev);
                if (c.error) return *c.error;
                if (c.numbers.empty()) return CellValue::number(0);
                return CellValue::number(*std::min_element(c.numbers.begin(), c.numbers.end()));
              }};
  r["MAX"] = {1, kVariadic, [](Args args, const RowEvaluator& ev) {
                Collected c = collect_numbers(args, ev);
                if (c.error) return *c.error;
                if (c.numbers.empty()) return CellValue::number(0);
                return CellValue::number(*std::max_element(c.numbers.begin(), c.numbers.end()));
              }};
  r["COUNT"] = {1, kVariadic, [](Args args, const RowEvaluator& ev) {
                  double n = 0;
                  for (const Ast& a : args) {
                    CellValue v = ev.eval(a);
                    if (v.is_number() || v.is_boolean() || (v.is_text() && parse_number(trim(v.as_text())))) ++n;
                  }
                  return CellValue::number(n);
                }};
  r["COUNTA"] = {1, kVariadic, [](Args args, const RowEvaluator& ev) {
                   double n = 0;
                   for (const Ast& a : args) {
                     if (!ev.eval(a).is_blank()) ++n;
                   }
                   return CellValue::number(n);
                 }};

  r["ABS"] = unary_numeric([](double x) { return std::abs(x); });
  r["INT"] = unary_numeric([](double x) { return std::floor(x); });
  r["SIGN"] = unary_numeric([](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); });
  r["SQRT"] = unary_numeric([](double x) { return x < 0 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(x); });
  r["ROUND"] = rounding(RoundMode::HalfAwayFromZero, 2);
  r["ROUNDUP"] = rounding(RoundMode::AwayFromZero, 2);
  r["ROUNDDOWN"] = rounding(RoundMode::TowardZero, 2);
  r["TRUNC"] = rounding(RoundMode::TowardZero, 1);
  r["MOD"] = {2, 2, [](Args args, const RowEvaluator& ev) {
                Number a = to_number(ev.eval(args[0]));
                if (a.error) return *a.error;
                Number b = to_number(ev.eval(args[1]));
                if (b.error) return *b.error;
                if (b.value == 0.0) return CellValue::error(error_code::kDivZero);
                return make_number(a.value - b.value * std::floor(a.value / b.value));
              }};
  r["POWER"] = {2, 2, [](Args args, const RowEvaluator& ev) {
                  Number a = to_number(ev.eval(args[0]));
                  if (a.error) return *a.error;
                  Number b = to_number(ev.eval(args[1]));
                  if (b.error) return *b.error;
                  if (a.value == 0.0 && b.value < 0) return CellValue::error(error_code::kDivZero);
                  return make_number(std::pow(a.value, b.value));
                }};
  r["PI"] = {0, 0, [](Args, const RowEvaluator&) { return CellValue::number(std::numbers::pi); }};

  r["CONCATENATE"] = concat_all(1);
  r["CONCAT"] = concat_all(1);
  r["LEN"] = {1, 1, [](Args args, const RowEvaluator& ev) {
                Text t = to_text(ev.eval(args[0]));
                if (t.error) return *t.error;
                return CellValue::number(static_cast<double>(utf8::length(t.value)));
              }};
  r["LEFT"] = {1, 2, [](Args args, const RowEvaluator& ev) {
                 Text t = to_text(ev.eval(args[0]));
                 if (t.error) return *t.error;
                 IntArg n = int_arg(args, 1, ev);
                 if (n.error) return *n.error;
                 const long long count = n.value.value_or(1);
                 if (count < 0) return value_error();
                 auto cps = utf8::decode(t.value);
                 const std::size_t k = std::min<std::size_t>(cps.size(), static_cast<std::size_t>(count));
                 return CellValue::text(utf8::encode(cps.data(), cps.data() + k));
               }};
  r["RIGHT"] = {1, 2, [](Args args, const RowEvaluator& ev) {
                  Text t = to_text(ev.eval(args[0]));
                  if (t.error) return *t.error;
                  IntArg n = int_arg(args, 1, ev);
                  if (n.error) return *n.error;
                  const long long count = n.value.value_or(1);
                  if (count < 0) return value_error();
                  auto cps = utf8::decode(t.value);
                  const std::size_t k = std::min<std::size_t>(cps.size(), static_cast<std::size_t>(count));
                  return CellValue::text(utf8::encode(cps.data() + (cps.size() - k), cps.data() + cps.size()));
                }};
  r["MID"] = {3, 3, [](Args args, const RowEvaluator& ev) {
                Text t = to_text(ev.eval(args[0]));
                if (t.error) return *t.error;
                IntArg start = int_arg(args, 1, ev);
                if (start.error) return *start.error;
                IntArg n = int_arg(args, 2, ev);
                if (n.error) return *n.error;
                if (*start.value < 1 || *n.value < 0) return value_error();
                auto cps = utf8::decode(t.value);
                const std::size_t from = std::min<std::size_t>(cps.size(), static_cast<std::size_t>(*start.value - 1));
                const std::size_t k = std::min<std::size_t>(cps.size() - from, static_cast<std::size_t>(*n.value));
                return CellValue::text(utf8::encode(cps.data() + from, cps.data() + from + k));
              }};
  r["UPPER"] = text_transform(upper_text);
  r["LOWER"] = text_transform(lower_text);
  r["PROPER"] = text_transform(proper_case);
  r["TRIM"] = text_transform(trim_spaces);
  r["REPT"] = {2, 2, [](Args args, const RowEvaluator& ev) {
                 Text t = to_text(ev.eval(args[0]));
                 if (t.error) return *t.error;
                 IntArg n = int_arg(args, 1, ev);
                 if (n.error) return *n.error;
                 if (*n.value < 0 || static_cast<double>(*n.value) * static_cast<double>(t.value.size()) > 32767) {
                   return value_error();
                 }
                 std::string out;
                 for (long long i = 0; i < *n.value; ++i) out += t.value;
                 return CellValue::text(std::move(out));
               }};
  r["EXACT"] = {2, 2, [](Args args, const RowEvaluator& ev) {
                  Evaluated e = eval_all(args, ev);
                  if (e.error) return *e.error;
                  return CellValue::boolean(display_text(e.values[0]) == display_text(e.values[1]));
                }};
  r["SUBSTITUTE"] = {3, 4, [](Args args, const RowEvaluator& ev) {
                       Evaluated e = eval_all(args.first(3), ev);
                       if (e.error) return *e.error;
                       IntArg instance = int_arg(args, 3, ev);
                       if (instance.error) return *instance.error;
                       if (instance.value && *instance.value < 1) return value_error();
                       const std::string text = display_text(e.values[0]);
                       const std::string from = display_text(e.values[1]);
                       const std::string to = display_text(e.values[2]);
                       if (from.empty()) return CellValue::text(text);
                       std::string out;
                       std::size_t pos = 0;
                       long long seen = 0;
                       for (;;) {
                         std::size_t hit = text.find(from, pos);
                         if (hit == std::string::npos) break;
                         ++seen;
                         out.append(text, pos, hit - pos);
                         const bool replace = !instance.value || *instance.value == seen;
                         out += replace ? to : from;
                         pos = hit + from.size();
                       }
                       out.append(text, pos, std::string::npos);
                       return CellValue::text(std::move(out));
                     }};
  r["FIND"] = finder(true);
  r["SEARCH"] = finder(false);
  r["VALUE"] = {1, 1, [](Args args, const RowEvaluator& ev) {
                  CellValue v = ev.eval(args[0]);
                  if (v.is_boolean()) return value_error();
                  Number n = to_number(v);
                  if (n.error) return *n.error;
                  return CellValue::number(n.value);
                }};

  r["ISBLANK"] = type_test([](const CellValue& v) { return v.is_blank(); });
  r["ISNUMBER"] = type_test([](const CellValue& v) { return v.is_number(); });
  r["ISTEXT"] = type_test([](const CellValue& v) { return v.is_text(); });
  r["ISERROR"] = type_test([](const CellValue& v) { return v.is_error(); });
  r["ISNA"] = type_test([](const CellValue& v) { return v.is_error() && v.error_code() == error_code::kNotAvailable; });
  r["NA"] = {0, 0, [](Args, const RowEvaluator&) { return CellValue::error(error_code::kNotAvailable); }};
  return r;
}

}  // namespace

const std::map<std::string, Builtin>& builtins() {
  static const std::map<std::string, Builtin> registry = make_registry();
  return registry;
}

}  // namespace nl2f::interp
