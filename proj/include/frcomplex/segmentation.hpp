#ifndef FRCOMPLEX_SEGMENTATION_HPP
#define FRCOMPLEX_SEGMENTATION_HPP

// Raw text -> tokens -> sentences -> clauses -> T-units.
//
// Clause detection is rule based: one clause per finite verb, with clause
// boundaries opened by the subordinators, relative markers and coordinators
// listed in SegmentationRules. A T-unit is an independent clause together
// with the dependent clauses attached to it.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frcomplex/errors.hpp"
#include "frcomplex/lexicon.hpp"
#include "frcomplex/rules.hpp"
#include "frcomplex/text.hpp"

namespace frcomplex {

enum class TokenKind { word, number, punctuation };

struct Token {
  std::string surface;
  std::string lower;
  TokenKind kind = TokenKind::punctuation;
  // Letters for words, digits for numbers, 0 for punctuation.
  std::size_t char_len = 0;
  std::string lemma;
  Pos pos = Pos::other;
  VerbForm verb_form = VerbForm::none;
  // A blank line separates this token from the previous one.
  bool paragraph_break_before = false;

  bool is_word() const noexcept { return kind == TokenKind::word; }
  // Words and numbers both count towards length-based metrics.
  bool counts_as_word() const noexcept { return kind != TokenKind::punctuation; }
  bool is_finite_verb() const noexcept { return pos == Pos::verb && is_finite(verb_form); }
};

struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct Clause {
  TokenSpan token_span;
  bool dependent = false;
  std::optional<std::size_t> finite_verb_index;
};

struct TUnit {
  std::vector<std::size_t> clause_indices;
  bool complex = false;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<Clause> clauses;
  std::vector<TUnit> t_units;

  std::size_t word_count() const {
    return static_cast<std::size_t>(
        std::count_if(tokens.begin(), tokens.end(), [](const Token& t) { return t.counts_as_word(); }));
  }
  std::size_t dependent_clause_count() const {
    return static_cast<std::size_t>(
        std::count_if(clauses.begin(), clauses.end(), [](const Clause& c) { return c.dependent; }));
  }
  std::size_t complex_t_unit_count() const {
    return static_cast<std::size_t>(
        std::count_if(t_units.begin(), t_units.end(), [](const TUnit& t) { return t.complex; }));
  }
};

struct AnalyzedDocument {
  std::string source_id;
  std::vector<Sentence> sentences;
  std::vector<Token> word_tokens;  // words and numbers, in document order
  std::size_t coordinate_phrase_count = 0;

  std::size_t clause_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.clauses.size();
    return n;
  }
  std::size_t dependent_clause_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.dependent_clause_count();
    return n;
  }
  std::size_t t_unit_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.t_units.size();
    return n;
  }
  std::size_t complex_t_unit_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.complex_t_unit_count();
    return n;
  }
};

// ---------------------------------------------------------------------------
// Tokenization

namespace detail {

// Apostrophe-bearing words that are single lexical units.
inline constexpr std::array<std::string_view, 5> kUnsplitApostropheWords = {
    "aujourd'hui", "prud'homme", "prud'hommes", "presqu'île", "presqu'îles"};

inline bool is_known_elision(std::string_view folded) {
  if (folded == "quelqu'") return true;
  for (const auto& [elided, full] : kElisions)
    if (folded == elided) return true;
  return false;
}

inline Token make_token(std::u32string_view cps, TokenKind kind, bool paragraph_break) {
  Token t;
  t.surface = text::encode_utf8(cps);
  t.lower = text::fold(t.surface);
  t.kind = kind;
  t.paragraph_break_before = paragraph_break;
  if (kind == TokenKind::word) {
    t.char_len = static_cast<std::size_t>(std::count_if(cps.begin(), cps.end(), text::is_letter));
  } else if (kind == TokenKind::number) {
    t.char_len = static_cast<std::size_t>(std::count_if(cps.begin(), cps.end(), text::is_digit));
  }
  t.lemma = t.lower;
  return t;
}

// Splits a word span after each internal elision apostrophe.
inline void emit_word(std::u32string_view span, bool& paragraph_break, std::vector<Token>& out) {
  const std::string folded = text::fold(text::encode_utf8(span));
  for (auto w : kUnsplitApostropheWords) {
    if (folded == w) {
      out.push_back(make_token(span, TokenKind::word, paragraph_break));
      paragraph_break = false;
      return;
    }
  }
  std::size_t start = 0;
  for (std::size_t i = 0; i < span.size(); ++i) {
    if (text::is_apostrophe(span[i]) && i + 1 < span.size()) {
      out.push_back(make_token(span.substr(start, i + 1 - start), TokenKind::word, paragraph_break));
      paragraph_break = false;
      start = i + 1;
    }
  }
  out.push_back(make_token(span.substr(start), TokenKind::word, paragraph_break));
  paragraph_break = false;
}

}  // namespace detail

/// Splits UTF-8 text into word, number and punctuation tokens.
///
/// Elided forms ("l'", "qu'") become separate words, hyphenated compounds stay
/// whole, "..." is a single punctuation token, and a digit run followed
/// directly by letters ("250g") is a number then a word.
inline std::vector<Token> tokenize(std::string_view utf8) {
  const std::u32string cps = text::decode_utf8(text::strip_bom(utf8));
  std::vector<Token> out;
  const std::size_t n = cps.size();
  std::size_t i = 0;
  bool paragraph_break = false;
  auto is_alnum = [](char32_t c) { return text::is_letter(c) || text::is_digit(c); };

  while (i < n) {
    const char32_t c = cps[i];
    if (text::is_space(c)) {
      std::size_t newlines = 0;
      while (i < n && text::is_space(cps[i])) {
        if (cps[i] == U'\n') ++newlines;
        ++i;
      }
      if (newlines >= 2 && !out.empty()) paragraph_break = true;
      continue;
    }
    if (text::is_letter(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (is_alnum(cps[j])) {
          ++j;
        } else if ((text::is_apostrophe(cps[j]) || text::is_hyphen(cps[j])) && j + 1 < n && text::is_letter(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      // Elision written with a space after the apostrophe ("l' arbre").
      if (j < n && text::is_apostrophe(cps[j])) {
        std::u32string with(cps.substr(i, j - i));
        with.push_back(U'\'');
        if (detail::is_known_elision(text::fold(text::encode_utf8(with)))) ++j;
      }
      detail::emit_word(std::u32string_view(cps).substr(i, j - i), paragraph_break, out);
      i = j;
      continue;
    }
    if (text::is_digit(c)) {
      std::size_t j = i + 1;
      while (j < n) {
        if (text::is_digit(cps[j])) {
          ++j;
        } else if ((cps[j] == U'.' || cps[j] == U',') && j + 1 < n && text::is_digit(cps[j + 1])) {
          j += 2;
        } else {
          break;
        }
      }
      out.push_back(detail::make_token(std::u32string_view(cps).substr(i, j - i), TokenKind::number, paragraph_break));
      paragraph_break = false;
      i = j;
      continue;
    }
    std::size_t len = 1;
    if (c == U'.' && i + 2 < n && cps[i + 1] == U'.' && cps[i + 2] == U'.') {
      len = 3;
      while (i + len < n && cps[i + len] == U'.') ++len;
    }
    out.push_back(detail::make_token(std::u32string_view(cps).substr(i, len), TokenKind::punctuation, paragraph_break));
    paragraph_break = false;
    i += len;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sentences

namespace detail {

inline bool is_terminator(const Token& t) {
  if (t.kind != TokenKind::punctuation) return false;
  return t.surface == "." || t.surface == "!" || t.surface == "?" || t.surface == "…" ||
         (t.surface.size() >= 3 && t.surface.find_first_not_of('.') == std::string::npos);
}

inline bool is_closer(const Token& t) {
  static constexpr std::array<std::string_view, 8> closers = {"»", "\"", ")", "]", "'", "”", "’", "}"};
  if (t.kind != TokenKind::punctuation) return false;
  return std::find(closers.begin(), closers.end(), t.surface) != closers.end();
}

}  // namespace detail

/// Groups tokens into sentences. Boundaries fall after ". ! ? …" (unless the
/// period closes a listed abbreviation) and at blank lines.
inline std::vector<Sentence> split_sentences(std::vector<Token> tokens, const SegmentationRules& rules) {
  std::vector<Sentence> out;
  Sentence cur;
  auto flush = [&] {
    if (cur.tokens.empty()) return;
    const bool has_word = cur.word_count() > 0;
    if (!has_word && !out.empty()) {
      auto& prev = out.back().tokens;
      prev.insert(prev.end(), std::make_move_iterator(cur.tokens.begin()), std::make_move_iterator(cur.tokens.end()));
    } else {
      out.push_back(std::move(cur));
    }
    cur = Sentence{};
  };

  const std::size_t n = tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (tokens[i].paragraph_break_before) flush();
    cur.tokens.push_back(std::move(tokens[i]));
    const Token& t = cur.tokens.back();
    if (!detail::is_terminator(t)) continue;
    if (t.surface == "." && cur.tokens.size() >= 2) {
      const Token& prev = cur.tokens[cur.tokens.size() - 2];
      if (prev.is_word() && rules.abbreviations.contains(prev.lower + ".")) continue;
    }
    while (i + 1 < n && !tokens[i + 1].paragraph_break_before &&
           (detail::is_terminator(tokens[i + 1]) || detail::is_closer(tokens[i + 1]))) {
      cur.tokens.push_back(std::move(tokens[++i]));
    }
    flush();
  }
  flush();
  // A leading run of punctuation-only text cannot merge backwards; fold it
  // into the following sentence.
  if (out.size() >= 2 && out.front().word_count() == 0) {
    auto& next = out[1].tokens;
    next.insert(next.begin(), out.front().tokens.begin(), out.front().tokens.end());
    out.erase(out.begin());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Syllables

namespace detail {

inline bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
    case 0xE9: case 0xE8: case 0xEA: case 0xE0: case 0xE2: case 0xEE:
    case 0xF4: case 0xFB: case 0xF9: case 0xEB: case 0xEF: case 0xFC:
    case 0xE6: case 0x153: case 0xFF:
      return true;
    default:
      return false;
  }
}

}  // namespace detail

/// French syllable estimate: maximal vowel groups, minus a silent final "e"
/// when the word part has at least two groups. Hyphenated parts are counted
/// separately. Never less than 1.
inline std::size_t count_syllables(std::string_view word) {
  const std::u32string cps = text::decode_utf8(text::fold(word));
  if (std::none_of(cps.begin(), cps.end(), text::is_letter))
    throw ValidationError("count_syllables: '" + std::string(word) + "' contains no letters");
  std::size_t total = 0;
  std::size_t groups = 0;
  bool in_group = false;
  char32_t last_letter = 0;
  auto close_part = [&] {
    if (groups >= 2 && last_letter == U'e') --groups;
    total += groups;
    groups = 0;
    in_group = false;
    last_letter = 0;
  };
  for (char32_t c : cps) {
    if (c == U'-') {
      close_part();
      continue;
    }
    if (!text::is_letter(c)) {
      in_group = false;
      continue;
    }
    const bool v = detail::is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
    last_letter = c;
  }
  close_part();
  return std::max<std::size_t>(total, 1);
}

// ---------------------------------------------------------------------------
// Part of speech

namespace detail {

inline bool ends_in_infinitive(std::string_view w) {
  return text::ends_with(w, "er") || text::ends_with(w, "ir") || text::ends_with(w, "re") ||
         text::ends_with(w, "oir");
}

inline VerbForm classify_verb(const Token& t, bool known, const SegmentationRules& rules) {
  if (t.lower == "être" || t.lower == "avoir") return VerbForm::infinitive;
  if (known && t.lower == t.lemma && ends_in_infinitive(t.lower)) return VerbForm::infinitive;
  if (rules.auxiliaries.contains(t.lower)) {
    if (auto f = rules.tense_for_suffix(t.lower, 0); f && is_finite(*f)) return *f;
    return VerbForm::present;
  }
  if (auto f = rules.tense_for_suffix(t.lower)) return *f;
  return VerbForm::present;
}

// Tokens allowed between an auxiliary and its participle ("n'a pas encore vu").
inline bool may_separate_aux(const Token& t) {
  if (t.pos == Pos::adverb) return true;
  static constexpr std::array<std::string_view, 10> fillers = {"pas",  "plus",   "jamais", "rien",    "point",
                                                               "guère", "déjà", "encore", "toujours", "tout"};
  return std::find(fillers.begin(), fillers.end(), t.lower) != fillers.end();
}

}  // namespace detail

/// Assigns lemma, POS and verb form to every token.
///
/// Known words take the lexicon reading (highest frequency). Unknown words
/// fall back to the longest matching suffix rule, else `other`. A verb that
/// follows a finite auxiliary is read as a participle and the auxiliary then
/// carries the compound tense.
inline std::vector<Token> tag_pos(std::vector<Token> tokens, const Lexicon& lexicon, const SegmentationRules& rules) {
  for (auto& t : tokens) {
    if (t.kind != TokenKind::word) {
      t.pos = Pos::other;
      t.lemma = t.lower;
      t.verb_form = VerbForm::none;
      continue;
    }
    const auto entry = lexicon.lookup(t.lower);
    if (entry) {
      t.pos = entry->pos;
      t.lemma = entry->lemma;
    } else {
      t.pos = rules.pos_for_suffix(t.lower).value_or(Pos::other);
      t.lemma = expand_elision(t.lower);
    }
    t.verb_form = t.pos == Pos::verb ? detail::classify_verb(t, entry.has_value(), rules) : VerbForm::none;
  }

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token& aux = tokens[i];
    if (aux.pos != Pos::verb || !is_finite(aux.verb_form) || !rules.auxiliaries.contains(aux.lower)) continue;
    for (std::size_t j = i + 1; j < tokens.size() && j <= i + 4; ++j) {
      Token& next = tokens[j];
      if (next.pos == Pos::verb) {
        if (next.verb_form == VerbForm::infinitive || next.verb_form == VerbForm::participle_present) break;
        if (rules.auxiliaries.contains(next.lower) && next.lower != "été" && next.lower != "eu") break;
        next.verb_form = VerbForm::participle_past;
        if (aux.verb_form == VerbForm::present) aux.verb_form = VerbForm::past;
        break;
      }
      if (!detail::may_separate_aux(next)) break;
    }
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Clauses and T-units

enum class MarkerKind { subordinator, relative, coordinator };

struct Marker {
  MarkerKind kind;
  std::size_t length;
};

namespace detail {

inline std::size_t match_phrase(const std::vector<Token>& toks, std::size_t i, const Phrase& p) {
  if (p.empty() || i + p.size() > toks.size()) return 0;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (toks[i + k].kind != TokenKind::word || toks[i + k].lower != p[k]) return 0;
  return p.size();
}

inline std::size_t longest_match(const std::vector<Token>& toks, std::size_t i, const std::vector<Phrase>& phrases) {
  std::size_t best = 0;
  for (const auto& p : phrases) best = std::max(best, match_phrase(toks, i, p));
  return best;
}

inline std::size_t first_word_index(const std::vector<Token>& toks) {
  for (std::size_t i = 0; i < toks.size(); ++i)
    if (toks[i].counts_as_word()) return i;
  return toks.size();
}

}  // namespace detail

/// Clause marker starting at token `i`, if any. Longest phrase wins; at equal
/// length subordinators beat relatives beat coordinators. A relative marker
/// opening the sentence is interrogative and not a marker.
inline std::optional<Marker> marker_at(const std::vector<Token>& toks, std::size_t i, const SegmentationRules& rules) {
  const std::size_t sub = detail::longest_match(toks, i, rules.subordinators);
  const std::size_t rel = detail::longest_match(toks, i, rules.relatives);
  const std::size_t coord = detail::longest_match(toks, i, rules.coordinators);
  const bool sentence_initial = i == detail::first_word_index(toks);
  if (sentence_initial && rel > 0 && rel >= sub) return std::nullopt;
  if (sub > 0 && sub >= rel && sub >= coord) return Marker{MarkerKind::subordinator, sub};
  if (rel > 0 && rel >= coord) return Marker{MarkerKind::relative, rel};
  if (coord > 0) return Marker{MarkerKind::coordinator, coord};
  return std::nullopt;
}

/// True when a finite verb occurs after the marker at `i` and before the next
/// marker (or the end of the sentence).
inline bool finite_verb_follows(const std::vector<Token>& toks, std::size_t i, std::size_t marker_len,
                                const SegmentationRules& rules) {
  for (std::size_t j = i + marker_len; j < toks.size(); ++j) {
    if (marker_at(toks, j, rules)) return false;
    if (toks[j].is_finite_verb()) return true;
  }
  return false;
}

/// Partitions the sentence tokens into clauses, one per finite verb.
inline Sentence segment_clauses(Sentence sentence, const SegmentationRules& rules) {
  const auto& toks = sentence.tokens;
  const std::size_t n = toks.size();
  sentence.clauses.clear();
  sentence.t_units.clear();

  struct Open {
    std::size_t start = 0;
    bool pending_dependent = false;
    bool dependent = false;
    std::optional<std::size_t> finite;
  } cur;

  auto close_at = [&](std::size_t end) {
    sentence.clauses.push_back(Clause{TokenSpan{cur.start, end}, cur.dependent, cur.finite});
  };

  std::size_t i = 0;
  while (i < n) {
    if (auto m = marker_at(toks, i, rules)) {
      if (finite_verb_follows(toks, i, m->length, rules)) {
        const bool subordinating = m->kind != MarkerKind::coordinator;
        if (cur.finite) {
          close_at(i);
          cur = Open{i, subordinating, false, std::nullopt};
        } else if (subordinating) {
          cur.pending_dependent = true;
        }
      }
      i += m->length;
      continue;
    }
    if (toks[i].is_finite_verb()) {
      if (!cur.finite) {
        cur.finite = i;
        cur.dependent = cur.pending_dependent;
      } else {
        // Second finite verb without a marker: split after the last clause
        // punctuation since the previous verb, else before the new verb's
        // clitics and subject pronoun.
        const std::size_t prev = *cur.finite;
        std::optional<std::size_t> split;
        for (std::size_t k = i; k > prev + 1; --k) {
          const auto& s = toks[k - 1].surface;
          if (toks[k - 1].kind == TokenKind::punctuation && (s == "," || s == ";" || s == ":")) {
            split = k;
            break;
          }
        }
        if (!split) {
          std::size_t k = i;
          while (k > prev + 1 && (toks[k - 1].pos == Pos::pronoun || toks[k - 1].lower == "ne" ||
                                  toks[k - 1].lower == "n'"))
            --k;
          split = k;
        }
        close_at(*split);
        cur = Open{*split, false, false, i};
      }
    }
    ++i;
  }
  if (n > 0 || sentence.clauses.empty()) close_at(n);
  // Verbless sentence: a single independent clause.
  if (sentence.clauses.size() == 1 && !sentence.clauses.front().finite_verb_index)
    sentence.clauses.front().dependent = false;
  return sentence;
}

/// Groups clauses into T-units: each independent clause opens one, dependent
/// clauses join the current one. Leading dependent clauses join the first
/// independent clause that follows them.
inline Sentence segment_t_units(Sentence sentence) {
  sentence.t_units.clear();
  bool current_has_independent = false;
  for (std::size_t c = 0; c < sentence.clauses.size(); ++c) {
    const bool dependent = sentence.clauses[c].dependent;
    if (sentence.t_units.empty() || (!dependent && current_has_independent)) {
      sentence.t_units.push_back(TUnit{});
      current_has_independent = false;
    }
    sentence.t_units.back().clause_indices.push_back(c);
    if (!dependent) current_has_independent = true;
  }
  for (auto& tu : sentence.t_units) tu.complex = tu.clause_indices.size() > 1;
  return sentence;
}

/// Coordinators that join non-clausal constituents, i.e. that are not
/// followed by a finite verb before the next marker.
inline std::size_t count_coordinate_phrases(const Sentence& sentence, const SegmentationRules& rules) {
  const auto& toks = sentence.tokens;
  std::size_t count = 0;
  std::size_t i = 0;
  while (i < toks.size()) {
    auto m = marker_at(toks, i, rules);
    if (!m) {
      ++i;
      continue;
    }
    if (m->kind == MarkerKind::coordinator && !finite_verb_follows(toks, i, m->length, rules)) ++count;
    i += m->length;
  }
  return count;
}

/// Full analysis of one text: tokenize, tag, split sentences, segment
/// clauses and T-units, count coordinate phrases.
inline AnalyzedDocument analyze_document(std::string_view text, const Lexicon& lexicon, const SegmentationRules& rules,
                                         std::string source_id = {}) {
  AnalyzedDocument doc;
  doc.source_id = std::move(source_id);
  doc.sentences = split_sentences(tag_pos(tokenize(text), lexicon, rules), rules);
  for (auto& s : doc.sentences) {
    s = segment_t_units(segment_clauses(std::move(s), rules));
    doc.coordinate_phrase_count += count_coordinate_phrases(s, rules);
    for (const auto& t : s.tokens)
      if (t.counts_as_word()) doc.word_tokens.push_back(t);
  }
  return doc;
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_SEGMENTATION_HPP
