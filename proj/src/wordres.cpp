#include "fiberres/wordres.hpp"

#include <algorithm>
#include <functional>

namespace fiberres {

int Word::hdeg() const {
  int s = 0;
  for (const auto& l : letters) s += l.hdeg;
  return s;
}

int Word::idegree() const {
  int s = 0;
  for (const auto& l : letters) s += l.idegree;
  return s;
}

bool operator<(const Word& a, const Word& b) {
  const int ha = a.hdeg(), hb = b.hdeg();
  if (ha != hb) return ha < hb;
  if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
  return a.letters < b.letters;
}

std::string word_label(const WordData& data, const Word& w) {
  std::string s;
  for (const auto& l : w.letters) {
    if (!s.empty()) s += ".";
    s += l.tag == Tag::E ? "e" : l.tag == Tag::F ? "f" : "p";
    s += std::to_string(l.hdeg);
    if (data.resolution(l.tag).rank(l.hdeg) > 1) s += "_" + std::to_string(l.index);
  }
  return s;
}

bool word_is_valid(const WordData& data, const Word& w) {
  if (w.letters.empty() || w.letters.back().tag != Tag::P) return false;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    const Letter& l = w.letters[k];
    const FreeResolution& res = data.resolution(l.tag);
    if (l.hdeg > res.length() || l.index >= res.rank(l.hdeg)) return false;
    if (l.idegree != res.generator_degrees(l.hdeg)[l.index]) return false;
    if (k + 1 < w.letters.size()) {
      if (l.tag == Tag::P || l.hdeg < 1) return false;
      if (l.tag != data.left_of(w.letters[k + 1].tag)) return false;
    }
  }
  return true;
}

namespace {

void check_inputs(const WordData& data) {
  for (Tag t : {Tag::E, Tag::F, Tag::P}) {
    const FreeResolution& res = data.resolution(t);
    for (int i = 1; i <= res.length(); ++i)
      if (!res.d[i].entries_in_max_ideal())
        throw Error(std::string("input resolution ") + (t == Tag::E ? "E" : t == Tag::F ? "F" : "P") +
                    " is not minimal at step " + std::to_string(i));
  }
  for (Tag t : {Tag::E, Tag::F}) {
    const FreeResolution& res = data.resolution(t);
    if (res.rank(0) != 1 || res.generator_degrees(0)[0] != 0 || res.module->total_dim() != 1)
      throw Error("E and F must resolve the residue field");
  }
  if (data.E.A != data.fp.S || data.F.A != data.fp.T)
    throw Error("E and F must be resolutions over the factors of the fiber product");
  if (data.P.A != (data.module_side == Side::S ? data.fp.S : data.fp.T))
    throw Error("P must be a resolution over the factor the module lives on");
}

std::vector<Letter> letters_of(const FreeResolution& res, Tag tag, int h) {
  std::vector<Letter> out;
  if (h > res.length()) return out;
  for (std::size_t g = 0; g < res.rank(h); ++g) out.push_back({tag, h, g, res.generator_degrees(h)[g]});
  return out;
}

}  // namespace

std::vector<std::vector<Word>> generate_words(const WordData& data, int hmax) {
  check_inputs(data);
  std::vector<std::vector<Word>> out(hmax + 1);
  std::vector<Letter> prefix;  // built right to left
  std::function<void(Tag, int)> extend = [&](Tag right, int budget) {
    Word w;
    w.letters.assign(prefix.rbegin(), prefix.rend());
    out[w.hdeg()].push_back(w);
    const Tag tag = data.left_of(right);
    const FreeResolution& res = data.resolution(tag);
    for (int h = 1; h <= budget; ++h)
      for (const Letter& l : letters_of(res, tag, h)) {
        prefix.push_back(l);
        extend(tag, budget - h);
        prefix.pop_back();
      }
  };
  for (int a = 0; a <= hmax; ++a)
    for (const Letter& p : letters_of(data.P, Tag::P, a)) {
      prefix.assign(1, p);
      extend(Tag::P, hmax - a);
    }
  for (auto& list : out) std::sort(list.begin(), list.end());
  return out;
}

std::vector<WordTerm> word_differential(const WordData& data, const Word& w) {
  if (!word_is_valid(data, w)) throw Error("invalid word " + word_label(data, w));
  const Letter x = w.leading();
  std::vector<WordTerm> out;
  if (x.hdeg == 0) return out;  // only a lone P letter has degree 0
  const FreeResolution& res = data.resolution(x.tag);
  if (x.hdeg > res.length()) throw Error("word letter beyond the resolution window");
  const Side side = data.side_of(x.tag);
  const ModuleMap& dx = res.d[x.hdeg];
  const GradedModule& below = *res.free[x.hdeg - 1];
  const Word tail = w.tail();
  for (std::size_t g = 0; g < below.rank(); ++g) {
    const int gdeg = below.generator_degrees()[g];
    const int cdeg = x.idegree - gdeg;
    if (cdeg < 0) continue;
    Vec c = dx.entry(g, x.index);
    if (c.empty() || is_zero(c)) continue;
    WordTerm term{cdeg, data.fp.embed(side, cdeg, c), {}};
    if (x.tag != Tag::P && x.hdeg == 1) {
      term.word = tail;  // E_0 and F_0 are the algebras themselves: 1·w' = w'
    } else {
      term.word.letters.push_back({x.tag, x.hdeg - 1, g, gdeg});
      term.word.letters.insert(term.word.letters.end(), tail.letters.begin(), tail.letters.end());
    }
    out.push_back(std::move(term));
  }
  return out;
}

WordComplex assemble_word_complex(WordData data, int hmax, int dmax) {
  WordComplex wc;
  wc.words = generate_words(data, hmax);
  const AlgebraPtr& R = data.fp.R;

  FreeResolution& G = wc.complex;
  G.A = R;
  G.module = restrict_to_fiber(data.P.module, data.fp, data.module_side);
  G.hmax = hmax;
  G.dmax = dmax;
  std::vector<std::map<Word, std::size_t>> index(hmax + 1);
  for (int i = 0; i <= hmax; ++i) {
    std::vector<Word> basis;
    std::vector<int> degs;
    std::vector<std::string> labels;
    for (const Word& w : wc.words[i])
      if (w.idegree() <= dmax) {
        index[i][w] = basis.size();
        basis.push_back(w);
        degs.push_back(w.idegree());
        labels.push_back(word_label(data, w));
      }
    G.free.push_back(std::make_shared<GradedModule>(GradedModule::free(R, degs, labels, dmax)));
    wc.basis.push_back(std::move(basis));
  }
  // augmentation: P_0 letters map as in P
  {
    ModuleMap eps{G.free[0], G.module, {}};
    for (const Word& w : wc.basis[0]) eps.images.push_back(data.P.d[0].images[w.leading().index]);
    G.d.push_back(std::move(eps));
  }
  for (int i = 1; i <= hmax; ++i) {
    ModuleMap di{G.free[i], G.free[i - 1], {}};
    const GradedModule& target = *G.free[i - 1];
    for (const Word& w : wc.basis[i]) {
      const int d = w.idegree();
      Vec img(target.dim(d), 0);
      for (const WordTerm& t : word_differential(data, w)) {
        auto it = index[i - 1].find(t.word);
        if (it == index[i - 1].end()) throw Error("differential leaves the word basis at " + word_label(data, w));
        auto block = std::span<Scalar>(img).subspan(target.offset(d, it->second), t.coeff.size());
        axpy(R->field(), block, t.coeff, 1);
      }
      di.images.push_back(std::move(img));
    }
    G.d.push_back(std::move(di));
  }
  wc.data = std::move(data);
  return wc;
}

WordComplex build_word_resolution(const FiberProductAlgebra& fp, const ModulePtr& M, Side module_side, int hmax,
                                  int dmax) {
  WordData data;
  data.fp = fp;
  data.module_side = module_side;
  data.E = minimal_resolution(residue_module(fp.S, dmax), hmax, dmax);
  data.F = minimal_resolution(residue_module(fp.T, dmax), hmax, dmax);
  data.P = minimal_resolution(M, hmax, dmax);
  WordComplex wc = assemble_word_complex(std::move(data), hmax, dmax);
  wc.report = verify_complex(wc.complex);
  if (!wc.report.pass) throw Error("word complex verification failed: " + wc.report.first_failure);
  return wc;
}

namespace {

PowerSeries rank_series(const FreeResolution& r, int hmax) {
  std::vector<BigInt> c;
  for (int i = 0; i <= hmax; ++i) c.emplace_back(i <= r.length() ? r.rank(i) : 0);
  return PowerSeries(std::move(c), hmax);
}

BigradedSeries rank_bigraded(const FreeResolution& r, int hmax, int dmax) {
  BigradedSeries s(hmax, dmax);
  for (int i = 0; i <= std::min(hmax, r.length()); ++i)
    for (int g : r.generator_degrees(i))
      if (g <= dmax) s.at(i, g) += 1;
  return s;
}

}  // namespace

PowerSeries word_count_series(const WordData& data, int hmax) {
  auto hE = rank_series(data.E, hmax), hF = rank_series(data.F, hmax), hP = rank_series(data.P, hmax);
  // letters adjacent to P come from the factor opposite to M
  return data.module_side == Side::S ? word_count_series(hE, hF, hP) : word_count_series(hF, hE, hP);
}

BigradedSeries word_count_bigraded(const WordData& data, int hmax, int dmax) {
  auto hE = rank_bigraded(data.E, hmax, dmax), hF = rank_bigraded(data.F, hmax, dmax),
       hP = rank_bigraded(data.P, hmax, dmax);
  return data.module_side == Side::S ? word_count_series(hE, hF, hP) : word_count_series(hF, hE, hP);
}

}  // namespace fiberres
