#ifndef FRCOMPLEX_METRICS_HPP
#define FRCOMPLEX_METRICS_HPP

// Vocabulary, syntactic and readability measures of an analyzed document.
// Zero denominators yield 0 so every measure is defined for every input.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "frcomplex/lexicon.hpp"
#include "frcomplex/segmentation.hpp"

namespace frcomplex {

namespace detail {

inline double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

}  // namespace detail

/// Case-folded forms of the word tokens, numbers excluded.
inline std::vector<std::string> diversity_forms(const AnalyzedDocument& doc) {
  std::vector<std::string> out;
  out.reserve(doc.word_tokens.size());
  for (const auto& t : doc.word_tokens)
    if (t.is_word()) out.push_back(t.lower);
  return out;
}

struct VocabularyMetrics {
  double pa = 0.0;       // % of words outside the simple-word list
  double unigram = 0.0;  // mean smoothed log-probability of lemmas
  double nlm = 0.0;      // mean letters per word
  double word_length = 0.0;  // mean characters per word, hyphens and apostrophes included
};

inline VocabularyMetrics vocabulary_metrics(const AnalyzedDocument& doc, const Lexicon& lexicon) {
  VocabularyMetrics m;
  std::size_t words = 0;
  std::size_t rare = 0;
  std::vector<std::string> lemmas;
  double letters = 0.0;
  double chars = 0.0;
  for (const auto& t : doc.word_tokens) {
    letters += static_cast<double>(t.char_len);
    chars += static_cast<double>(text::count_code_points(t.surface));
    if (!t.is_word()) continue;
    ++words;
    if (!lexicon.is_simple(t.lower)) ++rare;
    lemmas.push_back(t.lemma);
  }
  const double n = static_cast<double>(doc.word_tokens.size());
  m.pa = 100.0 * detail::ratio(static_cast<double>(rare), static_cast<double>(words));
  m.unigram = lemmas.empty() ? 0.0 : unigram_logprob(lexicon, lemmas);
  m.nlm = detail::ratio(letters, n);
  m.word_length = detail::ratio(chars, n);
  return m;
}

struct SyntacticMetrics {
  double mls = 0.0;
  double mlc = 0.0;
  double dc_c = 0.0;
  double mlt = 0.0;
  double tu_s = 0.0;
  double ctu_tu = 0.0;
  double c_tu = 0.0;
  double cp_c = 0.0;
  double cp_tu = 0.0;
  double c_s = 0.0;
  double nws90 = 0.0;
  double ps30 = 0.0;
};

/// Nearest-rank percentile of an unsorted sample; 0 when empty.
inline double nearest_rank(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(values.size())));
  rank = std::clamp<std::size_t>(rank, 1, values.size());
  return values[rank - 1];
}

inline SyntacticMetrics syntactic_metrics(const AnalyzedDocument& doc) {
  SyntacticMetrics m;
  const double s = static_cast<double>(doc.sentences.size());
  const double w = static_cast<double>(doc.word_tokens.size());
  const double c = static_cast<double>(doc.clause_count());
  const double dc = static_cast<double>(doc.dependent_clause_count());
  const double tu = static_cast<double>(doc.t_unit_count());
  const double ctu = static_cast<double>(doc.complex_t_unit_count());
  const double cp = static_cast<double>(doc.coordinate_phrase_count);
  using detail::ratio;
  m.mls = ratio(w, s);
  m.mlc = ratio(w, c);
  m.dc_c = ratio(dc, c);
  m.mlt = ratio(w, tu);
  m.tu_s = ratio(tu, s);
  m.ctu_tu = ratio(ctu, tu);
  m.c_tu = ratio(c, tu);
  m.cp_c = ratio(cp, c);
  m.cp_tu = ratio(cp, tu);
  m.c_s = ratio(c, s);
  std::vector<double> lengths;
  std::size_t long_sentences = 0;
  for (const auto& sent : doc.sentences) {
    const auto len = sent.word_count();
    lengths.push_back(static_cast<double>(len));
    if (len > 30) ++long_sentences;
  }
  m.nws90 = nearest_rank(std::move(lengths), 0.9);
  m.ps30 = 100.0 * ratio(static_cast<double>(long_sentences), s);
  return m;
}

// Kandel-Moles takes syllables per 100 words.
inline constexpr double kMnsScale = 100.0;

inline double kandel_moles(double mls, double mns) { return 207.0 - 1.015 * mls - 0.736 * mns; }

inline double flesch_reading_ease(double mls, double syllables_per_word) {
  return 206.835 - 1.015 * mls - 84.6 * syllables_per_word;
}

struct ReadabilityMetrics {
  double fk_ease = 206.835;
  double km_score = 207.0;
  double bingui = 0.0;
  double mns = 0.0;  // syllables per 100 words
};

/// Numbers count as one syllable; words use count_syllables.
inline ReadabilityMetrics readability_metrics(const AnalyzedDocument& doc) {
  ReadabilityMetrics m;
  const double s = static_cast<double>(doc.sentences.size());
  const double w = static_cast<double>(doc.word_tokens.size());
  double syllables = 0.0;
  for (const auto& t : doc.word_tokens) syllables += t.is_word() ? static_cast<double>(count_syllables(t.lower)) : 1.0;
  std::size_t marks = 0;
  for (const auto& sent : doc.sentences)
    for (const auto& t : sent.tokens)
      if (t.kind == TokenKind::punctuation &&
          (t.surface == "," || t.surface == ";" || t.surface == ":" || t.surface == "(" || t.surface == ")"))
        ++marks;
  const double mls = detail::ratio(w, s);
  const double spw = detail::ratio(syllables, w);
  m.mns = kMnsScale * spw;
  m.km_score = kandel_moles(mls, m.mns);
  m.fk_ease = flesch_reading_ease(mls, spw);
  m.bingui = detail::ratio(static_cast<double>(marks), s);
  return m;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_METRICS_HPP
