#ifndef FRCOMPLEX_BIBER_HPP
#define FRCOMPLEX_BIBER_HPP

// Register features in the style of Biber's tagger, counted with declarative
// token-window rules and normalized by the document's word count.
//
// Rule file: one rule per line, `name<TAB>expression`, '#' comments.
//
//   expression  := sequence ( "||" sequence )*
//   sequence    := element ( element | gap )*
//   element     := "[" condition ( "&" condition )* "]" [ "?" ]
//   gap         := "..." N        (skip 0..N arbitrary tokens)
//   condition   := field op value ( "," value )*
//   field       := surface | lower | lemma | pos | tense | kind
//   op          := "=" | "!=" | "$=" (suffix) | "!$=" | "^=" (prefix)
//
// A rule counts the word positions, within one sentence, at which any of
// its sequences matches.

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "frcomplex/errors.hpp"
#include "frcomplex/segmentation.hpp"
#include "frcomplex/text.hpp"

namespace frcomplex {

inline constexpr std::array<std::string_view, 40> kBiberFeatureNames = {
    "pastVerbs",       "presVerbs",     "placeAdverbials", "timeAdverbials", "1persProns",   "2persProns",
    "3persProns",      "impersProns",   "demonstrProns",   "indefProns",     "doAsProVerb",  "whQuestions",
    "nominalizations", "Nouns",         "beAsMain",        "WHclauses",      "piedPiping",   "sncRelatives",
    "causative",       "conditional",   "otherSubord",     "preposn",        "attrAdj",      "ADV",
    "conjuncts",       "downtoners",    "amplifiers",      "generalEmphatics", "publicVerbs", "privateVerbs",
    "suasiveVerbs",    "seemappear",    "possibModals",    "necessModals",   "predicModals", "contractions",
    "thatDeletion",    "strandedPrep",  "syntNegn",        "analNegn"};

namespace biber {

enum class Field { surface, lower, lemma, pos, tense, kind };
enum class Op { equals, not_equals, suffix, not_suffix, prefix };

struct Condition {
  Field field = Field::lower;
  Op op = Op::equals;
  std::vector<std::string> values;
};

struct Element {
  std::vector<Condition> conditions;
  bool optional = false;
  // Gap elements skip up to `max_gap` tokens and carry no conditions.
  bool gap = false;
  std::size_t max_gap = 0;
};

using Sequence = std::vector<Element>;

inline std::string_view kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::word: return "word";
    case TokenKind::number: return "number";
    case TokenKind::punctuation: return "punct";
  }
  return "punct";
}

inline std::string_view field_value(const Token& t, Field f) {
  switch (f) {
    case Field::surface: return t.surface;
    case Field::lower: return t.lower;
    case Field::lemma: return t.lemma;
    case Field::pos: return pos_name(t.pos);
    case Field::tense: return verb_form_name(t.verb_form);
    case Field::kind: return kind_name(t.kind);
  }
  return {};
}

inline bool holds(const Condition& c, const Token& t) {
  const std::string_view v = field_value(t, c.field);
  auto any = [&](auto pred) { return std::any_of(c.values.begin(), c.values.end(), pred); };
  switch (c.op) {
    case Op::equals: return any([&](const std::string& x) { return v == x; });
    case Op::not_equals: return !any([&](const std::string& x) { return v == x; });
    case Op::suffix: return any([&](const std::string& x) { return text::ends_with(v, x); });
    case Op::not_suffix: return !any([&](const std::string& x) { return text::ends_with(v, x); });
    case Op::prefix: return any([&](const std::string& x) { return text::starts_with(v, x); });
  }
  return false;
}

inline bool element_matches(const Element& e, const Token& t) {
  return std::all_of(e.conditions.begin(), e.conditions.end(), [&](const Condition& c) { return holds(c, t); });
}

/// Does `seq[k..]` match starting at token `i`?
inline bool match_from(const std::vector<Token>& toks, std::size_t i, const Sequence& seq, std::size_t k) {
  if (k == seq.size()) return true;
  const Element& e = seq[k];
  if (e.gap) {
    for (std::size_t skip = 0; skip <= e.max_gap && i + skip <= toks.size(); ++skip)
      if (match_from(toks, i + skip, seq, k + 1)) return true;
    return false;
  }
  if (i < toks.size() && element_matches(e, toks[i]) && match_from(toks, i + 1, seq, k + 1)) return true;
  return e.optional && match_from(toks, i, seq, k + 1);
}

namespace parse {

inline Field parse_field(std::string_view s, const std::string& ctx) {
  if (s == "surface") return Field::surface;
  if (s == "lower") return Field::lower;
  if (s == "lemma") return Field::lemma;
  if (s == "pos") return Field::pos;
  if (s == "tense") return Field::tense;
  if (s == "kind") return Field::kind;
  throw ConfigError(ctx + ": unknown field '" + std::string(s) + "'");
}

inline Condition parse_condition(std::string_view raw, const std::string& ctx) {
  const std::string_view s = text::trim(raw);
  const auto eq = s.find('=');
  if (eq == std::string_view::npos || eq == 0) throw ConfigError(ctx + ": expected field op value in '" + std::string(s) + "'");
  Condition c;
  std::size_t field_end = eq;
  if (s[eq - 1] == '$') {
    const bool negated = eq >= 2 && s[eq - 2] == '!';
    c.op = negated ? Op::not_suffix : Op::suffix;
    field_end = eq - (negated ? 2 : 1);
  } else if (s[eq - 1] == '!') {
    c.op = Op::not_equals;
    field_end = eq - 1;
  } else if (s[eq - 1] == '^') {
    c.op = Op::prefix;
    field_end = eq - 1;
  } else {
    c.op = Op::equals;
  }
  c.field = parse_field(text::trim(s.substr(0, field_end)), ctx);
  for (auto& v : text::split(s.substr(eq + 1), ',')) {
    const auto t = text::trim(v);
    if (t.empty()) throw ConfigError(ctx + ": empty value in '" + std::string(s) + "'");
    c.values.push_back(c.field == Field::surface ? std::string(t) : text::fold(t));
  }
  if (c.field == Field::pos)
    for (const auto& v : c.values)
      if (!parse_pos(v)) throw ConfigError(ctx + ": unknown part of speech '" + v + "'");
  if (c.field == Field::tense)
    for (const auto& v : c.values)
      if (!parse_verb_form(v)) throw ConfigError(ctx + ": unknown verb form '" + v + "'");
  if (c.field == Field::kind)
    for (const auto& v : c.values)
      if (v != "word" && v != "number" && v != "punct") throw ConfigError(ctx + ": unknown token kind '" + v + "'");
  return c;
}

inline Sequence parse_sequence(std::string_view s, const std::string& ctx) {
  Sequence seq;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
    } else if (s[i] == '[') {
      const auto close = s.find(']', i);
      if (close == std::string_view::npos) throw ConfigError(ctx + ": unterminated '['");
      Element e;
      for (auto& part : text::split(s.substr(i + 1, close - i - 1), '&')) e.conditions.push_back(parse_condition(part, ctx));
      i = close + 1;
      if (i < s.size() && s[i] == '?') {
        e.optional = true;
        ++i;
      }
      seq.push_back(std::move(e));
    } else if (s.substr(i, 3) == "...") {
      i += 3;
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == i) throw ConfigError(ctx + ": gap '...' needs a maximum length");
      Element e;
      e.gap = true;
      e.max_gap = std::stoul(std::string(s.substr(i, j - i)));
      seq.push_back(e);
      i = j;
    } else {
      throw ConfigError(ctx + ": unexpected character '" + std::string(1, s[i]) + "'");
    }
  }
  if (seq.empty()) throw ConfigError(ctx + ": empty sequence");
  if (seq.front().gap || seq.front().optional) throw ConfigError(ctx + ": a sequence must start with a required element");
  return seq;
}

}  // namespace parse
}  // namespace biber

struct BiberRule {
  std::string name;
  std::string expression;
  std::vector<biber::Sequence> alternatives;

  /// Number of word positions in the sentence at which the rule matches.
  /// Matches never start on punctuation, so counts never exceed the word count.
  std::size_t count_in(const std::vector<Token>& tokens) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!tokens[i].counts_as_word()) continue;
      for (const auto& alt : alternatives)
        if (biber::match_from(tokens, i, alt, 0)) {
          ++n;
          break;
        }
    }
    return n;
  }
};

inline BiberRule parse_biber_rule(std::string name, std::string_view expression) {
  BiberRule r;
  r.name = std::move(name);
  r.expression = std::string(text::trim(expression));
  const std::string ctx = "rule " + r.name;
  std::size_t start = 0;
  while (true) {
    const auto bar = r.expression.find("||", start);
    const auto piece = std::string_view(r.expression).substr(start, bar == std::string::npos ? std::string::npos : bar - start);
    r.alternatives.push_back(biber::parse::parse_sequence(piece, ctx));
    if (bar == std::string::npos) break;
    start = bar + 2;
  }
  return r;
}

/// The full, validated rule set, in canonical feature order.
class BiberRuleSet {
 public:
  explicit BiberRuleSet(std::vector<BiberRule> rules) {
    std::map<std::string, BiberRule> by_name;
    for (auto& r : rules) {
      if (std::find(kBiberFeatureNames.begin(), kBiberFeatureNames.end(), r.name) == kBiberFeatureNames.end())
        throw ConfigError("unknown Biber feature '" + r.name + "'");
      if (by_name.contains(r.name)) throw ConfigError("duplicate rule for Biber feature '" + r.name + "'");
      by_name.emplace(r.name, std::move(r));
    }
    for (auto name : kBiberFeatureNames) {
      auto it = by_name.find(std::string(name));
      if (it == by_name.end()) throw ConfigError("missing rule for Biber feature '" + std::string(name) + "'");
      rules_.push_back(std::move(it->second));
    }
  }

  const std::vector<BiberRule>& rules() const noexcept { return rules_; }

 private:
  std::vector<BiberRule> rules_;
};

inline BiberRuleSet parse_biber_rules(std::istream& in, const std::string& source) {
  std::vector<BiberRule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (lineno == 1) v = text::strip_bom(v);
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    const auto t = text::trim(v);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = t.find('\t');
    if (tab == std::string_view::npos) throw ParseError(source, lineno, "expected name<TAB>expression");
    try {
      rules.push_back(parse_biber_rule(std::string(text::trim(t.substr(0, tab))), t.substr(tab + 1)));
    } catch (const ConfigError& e) {
      throw ParseError(source, lineno, e.what());
    }
  }
  return BiberRuleSet(std::move(rules));
}

inline BiberRuleSet load_biber_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open Biber rules: " + path.string());
  return parse_biber_rules(in, path.string());
}

/// Match count of every rule divided by the document's word count, in
/// canonical order. An empty document yields all zeros.
inline std::vector<double> biber_features(const AnalyzedDocument& doc, const BiberRuleSet& rules) {
  std::vector<double> out(rules.rules().size(), 0.0);
  const double words = static_cast<double>(doc.word_tokens.size());
  if (words == 0.0) return out;
  for (std::size_t r = 0; r < rules.rules().size(); ++r) {
    std::size_t count = 0;
    for (const auto& s : doc.sentences) count += rules.rules()[r].count_in(s.tokens);
    out[r] = static_cast<double>(count) / words;
  }
  return out;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_BIBER_HPP
