#ifndef FRCOMPLEX_RULES_HPP
#define FRCOMPLEX_RULES_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frcomplex/errors.hpp"
#include "frcomplex/lexicon.hpp"
#include "frcomplex/text.hpp"

namespace frcomplex {

/// Morphological reading of a verb token. Non-verbs carry `none`.
enum class VerbForm { none, infinitive, participle_present, participle_past, present, past, future, conditional };

inline std::string_view verb_form_name(VerbForm f) {
  switch (f) {
    case VerbForm::none: return "none";
    case VerbForm::infinitive: return "infinitive";
    case VerbForm::participle_present: return "participle_present";
    case VerbForm::participle_past: return "participle_past";
    case VerbForm::present: return "present";
    case VerbForm::past: return "past";
    case VerbForm::future: return "future";
    case VerbForm::conditional: return "conditional";
  }
  return "none";
}

inline std::optional<VerbForm> parse_verb_form(std::string_view s) {
  for (auto f : {VerbForm::none, VerbForm::infinitive, VerbForm::participle_present, VerbForm::participle_past,
                 VerbForm::present, VerbForm::past, VerbForm::future, VerbForm::conditional})
    if (s == verb_form_name(f)) return f;
  return std::nullopt;
}

inline bool is_finite(VerbForm f) {
  return f == VerbForm::present || f == VerbForm::past || f == VerbForm::future || f == VerbForm::conditional;
}

using Phrase = std::vector<std::string>;

/// Language-specific knobs of tokenization, tagging and clause detection,
/// loaded from a sectioned line-oriented file.
struct SegmentationRules {
  std::set<std::string> abbreviations;  // folded, with the trailing period
  std::vector<Phrase> subordinators;
  std::vector<Phrase> relatives;
  std::vector<Phrase> coordinators;
  std::vector<std::pair<std::string, Pos>> suffix_pos;          // longest first
  std::set<std::string> auxiliaries;                            // finite forms of etre/avoir
  std::vector<std::pair<std::string, VerbForm>> tense_suffix;   // longest first

  static std::optional<Pos> longest_suffix(const std::vector<std::pair<std::string, Pos>>& table,
                                           std::string_view word, std::size_t min_stem) {
    for (const auto& [suffix, pos] : table)
      if (text::ends_with(word, suffix) &&
          text::count_code_points(word) >= text::count_code_points(suffix) + min_stem)
        return pos;
    return std::nullopt;
  }

  std::optional<Pos> pos_for_suffix(std::string_view folded_word) const {
    return longest_suffix(suffix_pos, folded_word, 2);
  }

  /// `min_stem` code points must precede the suffix ("fait" is not "-ait").
  std::optional<VerbForm> tense_for_suffix(std::string_view folded_word, std::size_t min_stem = 2) const {
    for (const auto& [suffix, form] : tense_suffix)
      if (text::ends_with(folded_word, suffix) &&
          text::count_code_points(folded_word) >= text::count_code_points(suffix) + min_stem)
        return form;
    return std::nullopt;
  }
};

namespace detail {

inline Phrase parse_phrase(std::string_view line) {
  Phrase p;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) p.push_back(text::fold(w));
  return p;
}

template <typename T>
void sort_longest_first(std::vector<std::pair<std::string, T>>& v) {
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
}

}  // namespace detail

inline SegmentationRules parse_segmentation_rules(std::istream& in, const std::string& source) {
  SegmentationRules r;
  std::string section;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (lineno == 1) v = text::strip_bom(v);
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    const auto t = text::trim(v);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError(source, lineno, "unterminated section header");
      section = std::string(t.substr(1, t.size() - 2));
      static const std::set<std::string> known = {"ABBREVIATIONS", "SUBORDINATORS", "RELATIVES",    "COORDINATORS",
                                                  "SUFFIX_POS",    "AUXILIARIES",   "TENSE_SUFFIX"};
      if (!known.contains(section)) throw ParseError(source, lineno, "unknown section [" + section + "]");
      seen.insert(section);
      continue;
    }
    if (section.empty()) throw ParseError(source, lineno, "entry outside of any section");
    if (section == "ABBREVIATIONS") {
      r.abbreviations.insert(text::fold(t));
    } else if (section == "SUBORDINATORS") {
      r.subordinators.push_back(detail::parse_phrase(t));
    } else if (section == "RELATIVES") {
      r.relatives.push_back(detail::parse_phrase(t));
    } else if (section == "COORDINATORS") {
      r.coordinators.push_back(detail::parse_phrase(t));
    } else if (section == "AUXILIARIES") {
      r.auxiliaries.insert(text::fold(t));
    } else {
      const auto cols = text::split(t, '\t');
      if (cols.size() != 2) throw ParseError(source, lineno, "expected pattern<TAB>value");
      const std::string suffix = text::fold(text::trim(cols[0]));
      const auto value = text::trim(cols[1]);
      if (suffix.empty()) throw ParseError(source, lineno, "empty suffix");
      if (section == "SUFFIX_POS") {
        const auto pos = parse_pos(value);
        if (!pos) throw ParseError(source, lineno, "unknown part of speech '" + std::string(value) + "'");
        r.suffix_pos.emplace_back(suffix, *pos);
      } else {
        const auto form = parse_verb_form(value);
        if (!form) throw ParseError(source, lineno, "unknown verb form '" + std::string(value) + "'");
        r.tense_suffix.emplace_back(suffix, *form);
      }
    }
  }
  for (const char* required : {"ABBREVIATIONS", "SUBORDINATORS", "RELATIVES", "COORDINATORS", "SUFFIX_POS"})
    if (!seen.contains(required)) throw ConfigError(source + ": missing section [" + required + "]");
  detail::sort_longest_first(r.suffix_pos);
  detail::sort_longest_first(r.tense_suffix);
  return r;
}

inline SegmentationRules load_segmentation_rules(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open segmentation rules: " + path.string());
  return parse_segmentation_rules(in, path.string());
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_RULES_HPP
