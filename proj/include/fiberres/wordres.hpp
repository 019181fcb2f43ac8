#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "fiberres/resolve.hpp"

namespace fiberres {

using Side = FiberProductAlgebra::Side;

inline Side opposite(Side s) { return s == Side::S ? Side::T : Side::S; }

/// E letters come from the resolution of k over S, F letters from k over T,
/// P letters from the resolution of M over the factor M lives on.
enum class Tag { E = 0, F = 1, P = 2 };

struct Letter {
  Tag tag;
  int hdeg;
  std::size_t index;
  int idegree;

  friend bool operator<(const Letter& a, const Letter& b) {
    return std::tie(a.tag, a.hdeg, a.index) < std::tie(b.tag, b.hdeg, b.index);
  }
  friend bool operator==(const Letter& a, const Letter& b) {
    return a.tag == b.tag && a.hdeg == b.hdeg && a.index == b.index;
  }
};

struct Word {
  std::vector<Letter> letters;

  int hdeg() const;
  int idegree() const;
  Letter leading() const { return letters.front(); }
  Word tail() const { return Word{std::vector<Letter>(letters.begin() + 1, letters.end())}; }

  /// (homological degree, length, letters lexicographically)
  friend bool operator<(const Word& a, const Word& b);
  friend bool operator==(const Word& a, const Word& b) { return a.letters == b.letters; }
};

/// The three resolutions a word complex is built from.
struct WordData {
  FiberProductAlgebra fp;
  Side module_side = Side::S;
  FreeResolution E, F, P;

  const FreeResolution& resolution(Tag t) const { return t == Tag::E ? E : t == Tag::F ? F : P; }
  Side side_of(Tag t) const { return t == Tag::E ? Side::S : t == Tag::F ? Side::T : module_side; }
  /// Tag required immediately left of a letter with tag t.
  Tag left_of(Tag t) const { return side_of(t) == Side::S ? Tag::F : Tag::E; }
};

/// Human-readable form such as e1.f1.p0, with _idx when a step has rank > 1.
std::string word_label(const WordData& data, const Word& w);
bool word_is_valid(const WordData& data, const Word& w);

/// All words of homological degree <= hmax, one list per degree, sorted.
/// Throws if E, F or P is not minimal or E, F do not resolve k.
std::vector<std::vector<Word>> generate_words(const WordData& data, int hmax);

struct WordTerm {
  int coeff_degree;  // degree of the coefficient in R
  Vec coeff;         // element of R
  Word word;
};

/// Differential of the leftmost letter, coefficients moved into R; a leading
/// letter of homological degree 1 is deleted and its coefficient multiplies
/// the tail. A lone P letter of degree 0 has no differential (empty result).
std::vector<WordTerm> word_differential(const WordData& data, const Word& w);

struct WordComplex {
  WordData data;
  std::vector<std::vector<Word>> words;   // all words by homological degree
  std::vector<std::vector<Word>> basis;   // words with internal degree <= dmax
  FreeResolution complex;                 // over R, resolving M restricted to R
  ComplexReport report;
};

/// Assembles the complex from given resolutions (P resolves M over the
/// factor on `module_side`).
WordComplex assemble_word_complex(WordData data, int hmax, int dmax);

/// Resolves k over S and T and M over its factor, then assembles and verifies.
/// Throws with the failing bidegree when verification fails.
WordComplex build_word_resolution(const FiberProductAlgebra& fp, const ModulePtr& M, Side module_side, int hmax,
                                  int dmax);

/// Closed-form word counts from the ranks of E, F, P.
PowerSeries word_count_series(const WordData& data, int hmax);
BigradedSeries word_count_bigraded(const WordData& data, int hmax, int dmax);

}  // namespace fiberres
