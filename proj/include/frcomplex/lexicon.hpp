#ifndef FRCOMPLEX_LEXICON_HPP
#define FRCOMPLEX_LEXICON_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "frcomplex/errors.hpp"
#include "frcomplex/text.hpp"

namespace frcomplex {

enum class Pos { noun, verb, adjective, adverb, pronoun, preposition, conjunction, determiner, other };

inline constexpr std::array<Pos, 9> kAllPos = {Pos::noun,        Pos::verb,        Pos::adjective,
                                               Pos::adverb,      Pos::pronoun,     Pos::preposition,
                                               Pos::conjunction, Pos::determiner,  Pos::other};

inline std::string_view pos_name(Pos p) {
  switch (p) {
    case Pos::noun: return "noun";
    case Pos::verb: return "verb";
    case Pos::adjective: return "adjective";
    case Pos::adverb: return "adverb";
    case Pos::pronoun: return "pronoun";
    case Pos::preposition: return "preposition";
    case Pos::conjunction: return "conjunction";
    case Pos::determiner: return "determiner";
    case Pos::other: return "other";
  }
  return "other";
}

/// Accepts the English names above as well as Lexique-style category codes
/// (NOM, VER, AUX, ADJ, ADV, PRO:per, PRE, CON, ART:def, ...).
inline std::optional<Pos> parse_pos(std::string_view raw) {
  const std::string s = text::fold(text::trim(raw));
  for (Pos p : kAllPos)
    if (s == pos_name(p)) return p;
  const std::string head = s.substr(0, s.find(':'));
  if (head == "nom" || head == "noun" || head == "n") return Pos::noun;
  if (head == "ver" || head == "aux" || head == "v") return Pos::verb;
  if (head == "adj") {
    // ADJ:pos, ADJ:dem, ADJ:ind, ADJ:int, ADJ:num are determiner-like in Lexique.
    return s == "adj" ? Pos::adjective : Pos::determiner;
  }
  if (head == "adv") return Pos::adverb;
  if (head == "pro") return Pos::pronoun;
  if (head == "pre" || head == "prep") return Pos::preposition;
  if (head == "con" || head == "conj") return Pos::conjunction;
  if (head == "art" || head == "det") return Pos::determiner;
  if (head == "ono" || head == "lia" || head == "x") return Pos::other;
  return std::nullopt;
}

/// Tie-break order for equally frequent readings: lower rank wins.
inline int pos_priority(Pos p) {
  switch (p) {
    case Pos::verb: return 0;
    case Pos::noun: return 1;
    case Pos::adjective: return 2;
    case Pos::adverb: return 3;
    case Pos::pronoun: return 4;
    case Pos::determiner: return 5;
    case Pos::preposition: return 6;
    case Pos::conjunction: return 7;
    case Pos::other: return 8;
  }
  return 8;
}

struct LexiconEntry {
  std::string lemma;
  double freq_per_million = 0.0;
  Pos pos = Pos::other;

  friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

/// Elided forms and the full word they stand for.
inline constexpr std::array<std::pair<std::string_view, std::string_view>, 12> kElisions = {{
    {"l'", "le"},
    {"d'", "de"},
    {"j'", "je"},
    {"n'", "ne"},
    {"s'", "se"},
    {"c'", "ce"},
    {"qu'", "que"},
    {"m'", "me"},
    {"t'", "te"},
    {"jusqu'", "jusque"},
    {"lorsqu'", "lorsque"},
    {"puisqu'", "puisque"},
}};

/// Maps an elided form to its full form; other words are returned unchanged.
inline std::string expand_elision(std::string_view folded) {
  for (const auto& [elided, full] : kElisions)
    if (folded == elided) return std::string(full);
  return std::string(folded);
}

class Lexicon {
 public:
  static constexpr double kDefaultAlpha = 0.01;
  static constexpr double kPerMillion = 1e6;

  Lexicon() = default;

  /// Adds a reading; on duplicate forms the higher frequency wins, ties go to
  /// the POS with the higher priority.
  void add_entry(std::string_view form, LexiconEntry entry) {
    if (!(entry.freq_per_million >= 0.0) || !std::isfinite(entry.freq_per_million))
      throw ValidationError("negative or non-finite frequency for '" + std::string(form) + "'");
    entry.lemma = text::fold(entry.lemma);
    std::string key = text::fold(form);
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      lemma_freq_[entry.lemma] += entry.freq_per_million;
      entries_.emplace(std::move(key), std::move(entry));
      return;
    }
    LexiconEntry& cur = it->second;
    const bool replace =
        entry.freq_per_million > cur.freq_per_million ||
        (entry.freq_per_million == cur.freq_per_million && pos_priority(entry.pos) < pos_priority(cur.pos));
    if (!replace) return;
    lemma_freq_[cur.lemma] -= cur.freq_per_million;
    if (lemma_freq_[cur.lemma] <= 0.0) lemma_freq_.erase(cur.lemma);
    lemma_freq_[entry.lemma] += entry.freq_per_million;
    cur = std::move(entry);
  }

  void add_simple_word(std::string_view w) { simple_words_.insert(text::fold(w)); }

  /// Case-folded exact match; elided forms are looked up as their full word.
  std::optional<LexiconEntry> lookup(std::string_view word) const {
    const std::string key = expand_elision(text::fold(word));
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  bool is_simple(std::string_view word) const {
    const std::string key = text::fold(word);
    return simple_words_.contains(key) || simple_words_.contains(expand_elision(key));
  }

  /// Summed per-million frequency of all forms carrying this lemma; 0 if unknown.
  double lemma_frequency(std::string_view lemma) const {
    auto it = lemma_freq_.find(text::fold(lemma));
    return it == lemma_freq_.end() ? 0.0 : it->second;
  }

  std::size_t entry_count() const noexcept { return entries_.size(); }
  std::size_t simple_word_count() const noexcept { return simple_words_.size(); }
  double total_tokens_basis() const noexcept { return kPerMillion; }

  const std::unordered_map<std::string, LexiconEntry>& entries() const noexcept { return entries_; }
  const std::unordered_set<std::string>& simple_words() const noexcept { return simple_words_; }

 private:
  std::unordered_set<std::string> simple_words_;
  std::unordered_map<std::string, LexiconEntry> entries_;
  std::unordered_map<std::string, double> lemma_freq_;
};

/// One word per line, '#' starts a comment.
inline void read_simple_words(std::istream& in, const std::string& source, Lexicon& lex) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (lineno == 1) v = text::strip_bom(v);
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = text::trim(v);
    if (v.empty()) continue;
    if (v.find_first_of(" \t") != std::string_view::npos)
      throw ParseError(source, lineno, "expected a single word per line");
    lex.add_simple_word(v);
  }
  if (lex.simple_word_count() == 0) throw ValidationError(source + ": simple word list is empty");
}

/// TSV with a header line: form, lemma, freq_per_million, pos.
inline void read_frequency_lexicon(std::istream& in, const std::string& source, Lexicon& lex) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view v = line;
    if (lineno == 1) v = text::strip_bom(v);
    if (!v.empty() && v.back() == '\r') v.remove_suffix(1);
    if (text::trim(v).empty()) continue;
    const auto cols = text::split(v, '\t');
    if (!header_seen) {
      header_seen = true;
      if (cols.size() < 4 || text::fold(text::trim(cols[0])) != "form")
        throw ParseError(source, lineno, "missing header 'form<TAB>lemma<TAB>freq_per_million<TAB>pos'");
      continue;
    }
    if (cols.size() != 4) throw ParseError(source, lineno, "expected 4 tab-separated columns");
    const auto form = text::trim(cols[0]);
    const auto lemma = text::trim(cols[1]);
    if (form.empty() || lemma.empty()) throw ParseError(source, lineno, "empty form or lemma");
    double freq = 0.0;
    try {
      std::size_t used = 0;
      const std::string f(text::trim(cols[2]));
      freq = std::stod(f, &used);
      if (used != f.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ParseError(source, lineno, "invalid frequency '" + cols[2] + "'");
    }
    if (!(freq >= 0.0) || !std::isfinite(freq)) throw ParseError(source, lineno, "frequency must be >= 0");
    const auto pos = parse_pos(cols[3]);
    if (!pos) throw ParseError(source, lineno, "unknown part of speech '" + cols[3] + "'");
    lex.add_entry(form, LexiconEntry{text::fold(lemma), freq, *pos});
  }
  if (!header_seen) throw ParseError(source, 1, "missing header line");
}

inline Lexicon load_lexicon(const std::filesystem::path& simple_list_path,
                            const std::filesystem::path& freq_lexicon_path) {
  Lexicon lex;
  std::ifstream simple(simple_list_path);
  if (!simple) throw LoadError("cannot open simple word list: " + simple_list_path.string());
  read_simple_words(simple, simple_list_path.string(), lex);
  std::ifstream freq(freq_lexicon_path);
  if (!freq) throw LoadError("cannot open frequency lexicon: " + freq_lexicon_path.string());
  read_frequency_lexicon(freq, freq_lexicon_path.string(), lex);
  return lex;
}

/// Mean smoothed log-probability of the lemmas under the lexicon's unigram
/// distribution: log((f + alpha) / (1e6 + alpha * V)), V = entry count.
inline double unigram_logprob(const Lexicon& lex, std::span<const std::string> lemmas,
                              double alpha = Lexicon::kDefaultAlpha) {
  if (lemmas.empty()) throw ValidationError("unigram_logprob: empty lemma list");
  const double denom = std::log(Lexicon::kPerMillion + alpha * static_cast<double>(lex.entry_count()));
  double sum = 0.0;
  for (const auto& l : lemmas) sum += std::log(lex.lemma_frequency(l) + alpha) - denom;
  return sum / static_cast<double>(lemmas.size());
}

}  // namespace frcomplex

#endif  // FRCOMPLEX_LEXICON_HPP
