#pragma once

// Weyl group elements, reduced words, Bruhat covers, minimal coset
// representatives and type A permutation combinatorics.
//
// An element is identified by its action on the simple roots: column j of
// the action matrix holds the coefficients of w(a_j). Words are lists of
// 1-based simple reflection labels read left to right, w = s_{w[0]} s_{w[1]} ...

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "flaghom/error.hpp"
#include "flaghom/rootsys.hpp"

namespace flaghom {

using Word = std::vector<int>;

inline constexpr std::size_t kDefaultElementCap = 1'000'000;

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h ^= std::hash<int>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

namespace detail {

using Action = std::vector<int>;  // rank x rank, column-major

inline Action identity_action(int r) {
  Action a(static_cast<std::size_t>(r) * r, 0);
  for (int i = 0; i < r; ++i) a[static_cast<std::size_t>(i) * r + i] = 1;
  return a;
}

inline Root column(const Action& a, int r, int j) {
  auto first = a.begin() + static_cast<std::ptrdiff_t>(j - 1) * r;
  return Root(std::vector<int>(first, first + r));
}

inline Root apply(const Action& a, int r, const Root& x) {
  std::vector<int> out(r, 0);
  for (int j = 0; j < r; ++j) {
    const int c = x.coeffs()[j];
    if (c == 0) continue;
    for (int i = 0; i < r; ++i) out[i] += c * a[static_cast<std::size_t>(j) * r + i];
  }
  return Root(std::move(out));
}

// w -> w s_i : w(s_i a_j) = w(a_j) - C[i][j] w(a_i).
inline void right_multiply(const RootSystem& sys, Action& a, int i) {
  const int r = sys.rank();
  const Action wi(a.begin() + static_cast<std::ptrdiff_t>(i - 1) * r,
                  a.begin() + static_cast<std::ptrdiff_t>(i) * r);
  for (int j = 1; j <= r; ++j) {
    const int c = sys.cartan()(i, j);
    if (c == 0) continue;
    for (int k = 0; k < r; ++k) a[static_cast<std::size_t>(j - 1) * r + k] -= c * wi[k];
  }
}

// w -> s_i w : apply s_i to every column.
inline void left_multiply(const RootSystem& sys, Action& a, int i) {
  const int r = sys.rank();
  const auto& row = sys.cartan().matrix()[i - 1];
  for (int j = 0; j < r; ++j) {
    int p = 0;
    for (int k = 0; k < r; ++k) p += row[k] * a[static_cast<std::size_t>(j) * r + k];
    a[static_cast<std::size_t>(j) * r + (i - 1)] -= p;
  }
}

inline Action action_of_word(const RootSystem& sys, std::span<const int> word) {
  Action a = identity_action(sys.rank());
  for (int s : word) {
    sys.check_label(s);
    right_multiply(sys, a, s);
  }
  return a;
}

inline bool column_negative(const Action& a, int r, int j) {
  for (int k = 0; k < r; ++k)
    if (a[static_cast<std::size_t>(j - 1) * r + k] < 0) return true;
  return false;
}

// Lexicographically smallest reduced word: peel off the smallest left descent.
// Left descents of w are the right descents of w^{-1}, whose action we get
// from any reduced word of w found through right descents.
inline Word canonical_word(const RootSystem& sys, const Action& action) {
  const int r = sys.rank();
  Action w = action;
  Word peeled;  // w s_{p0} s_{p1} ... = e, hence w^{-1} = s_{p0} s_{p1} ...
  for (bool again = true; again;) {
    again = false;
    for (int i = 1; i <= r; ++i)
      if (column_negative(w, r, i)) {
        peeled.push_back(i);
        right_multiply(sys, w, i);
        again = true;
        break;
      }
  }
  Action inv = action_of_word(sys, peeled);
  Word out;
  out.reserve(peeled.size());
  for (bool again = true; again;) {
    again = false;
    for (int a = 1; a <= r; ++a)
      if (column_negative(inv, r, a)) {
        out.push_back(a);
        right_multiply(sys, inv, a);
        again = true;
        break;
      }
  }
  return out;
}

}  // namespace detail

// One-line form of s_{w[0]} ... s_{w[k]} in S_n; right multiplication by s_i
// swaps positions i and i+1.
inline std::vector<int> one_line_of_word(std::span<const int> word, int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  for (int s : word) {
    if (s < 1 || s >= n) throw InvalidArgument("generator out of range for S_n");
    std::swap(p[s - 1], p[s]);
  }
  return p;
}

class WeylElement {
 public:
  WeylElement() = default;

  int rank() const { return rank_; }
  int length() const { return static_cast<int>(word_.size()); }
  const Word& word() const { return word_; }
  const std::vector<int>& action() const { return action_; }
  const std::optional<std::vector<int>>& one_line() const { return one_line_; }
  bool is_identity() const { return word_.empty(); }

  // w(a_j).
  Root image_of_simple(int j) const { return detail::column(action_, rank_, j); }
  Root apply(const Root& x) const { return detail::apply(action_, rank_, x); }

  bool operator==(const WeylElement& o) const { return action_ == o.action_; }

  // "e" or "s1 s2 s1".
  std::string word_string() const {
    if (word_.empty()) return "e";
    std::string s;
    for (std::size_t k = 0; k < word_.size(); ++k) {
      if (k) s += ' ';
      s += 's' + std::to_string(word_[k]);
    }
    return s;
  }

  // Only the factory functions below build elements.
  static WeylElement from_action(const RootSystem& sys, detail::Action action, Word canonical) {
    WeylElement e;
    e.rank_ = sys.rank();
    e.action_ = std::move(action);
    e.word_ = std::move(canonical);
    if (sys.family() == Family::A) {
      e.one_line_ = one_line_of_word(e.word_, sys.rank() + 1);
      assert(e.one_line_matches_action());
    }
    return e;
  }

  // Type A: column j must equal e_{w(j)} - e_{w(j+1)} written over a_1..a_{n-1}.
  bool one_line_matches_action() const {
    if (!one_line_) return false;
    const auto& p = *one_line_;
    for (int j = 1; j <= rank_; ++j) {
      std::vector<int> c(rank_, 0);
      int lo = p[j - 1], hi = p[j], sign = 1;
      if (lo > hi) { std::swap(lo, hi); sign = -1; }
      for (int k = lo; k < hi; ++k) c[k - 1] = sign;
      if (Root(c) != image_of_simple(j)) return false;
    }
    return true;
  }

 private:
  int rank_ = 0;
  Word word_;
  detail::Action action_;
  std::optional<std::vector<int>> one_line_;
};

inline WeylElement element_from_action(const RootSystem& sys, detail::Action action) {
  Word w = detail::canonical_word(sys, action);
  return WeylElement::from_action(sys, std::move(action), std::move(w));
}

inline WeylElement element_from_word(const RootSystem& sys, std::span<const int> word) {
  return element_from_action(sys, detail::action_of_word(sys, word));
}

inline WeylElement identity_element(const RootSystem& sys) {
  return WeylElement::from_action(sys, detail::identity_action(sys.rank()), {});
}

inline WeylElement multiply(const RootSystem& sys, const WeylElement& x, const WeylElement& y) {
  detail::Action a = x.action();
  for (int s : y.word()) detail::right_multiply(sys, a, s);
  return element_from_action(sys, std::move(a));
}

inline WeylElement inverse(const RootSystem& sys, const WeylElement& x) {
  Word rev(x.word().rbegin(), x.word().rend());
  return element_from_word(sys, rev);
}

// Positive roots of the form s_{w[0]} ... s_{w[k-1]}(a_{w[k]}), in word order.
// The word is reduced iff all of them are positive.
inline std::vector<Root> word_roots(const RootSystem& sys, std::span<const int> word) {
  std::vector<Root> out;
  out.reserve(word.size());
  detail::Action prefix = detail::identity_action(sys.rank());
  for (int s : word) {
    sys.check_label(s);
    out.push_back(detail::column(prefix, sys.rank(), s));
    detail::right_multiply(sys, prefix, s);
  }
  return out;
}

inline bool is_reduced(const RootSystem& sys, std::span<const int> word) {
  const auto roots = word_roots(sys, word);
  return std::all_of(roots.begin(), roots.end(), [](const Root& r) { return r.is_positive(); });
}

// Pi_w: positive roots sent to negative roots by w^{-1}, listed along the
// canonical word.
inline std::vector<Root> inversion_set(const RootSystem& sys, const WeylElement& w) {
  return word_roots(sys, w.word());
}

// All elements of length <= max_length (all of W when absent), ordered by
// length and then lexicographically by canonical word.
inline std::vector<WeylElement> enumerate_weyl(const RootSystem& sys, std::optional<int> max_length = std::nullopt,
                                               std::size_t cap = kDefaultElementCap) {
  if (!max_length && classical_weyl_order(sys.family(), sys.rank()) > cap)
    throw Unsupported("group too large");
  const int limit = max_length.value_or(static_cast<int>(sys.positive_roots().size()));
  std::vector<WeylElement> out{identity_element(sys)};
  std::unordered_set<std::vector<int>, VectorHash> previous;
  std::vector<std::size_t> level{0};  // indices into out
  for (int len = 1; len <= limit && !level.empty(); ++len) {
    std::unordered_map<std::vector<int>, std::size_t, VectorHash> found;
    std::vector<std::pair<detail::Action, Word>> fresh;
    // Scanning generators in increasing order, and each level in word order,
    // makes the first hit of an element its lexicographically least word.
    for (int a = 1; a <= sys.rank(); ++a) {
      for (std::size_t idx : level) {
        detail::Action act = out[idx].action();
        detail::left_multiply(sys, act, a);
        if (previous.count(act) || found.count(act)) continue;
        Word w{a};
        w.insert(w.end(), out[idx].word().begin(), out[idx].word().end());
        found.emplace(act, fresh.size());
        fresh.emplace_back(std::move(act), std::move(w));
        if (out.size() + fresh.size() > cap) throw Unsupported("group too large");
      }
    }
    std::sort(fresh.begin(), fresh.end(), [](const auto& x, const auto& y) { return x.second < y.second; });
    previous.clear();
    for (std::size_t idx : level) previous.insert(out[idx].action());
    level.clear();
    for (auto& [act, w] : fresh) {
      level.push_back(out.size());
      out.push_back(WeylElement::from_action(sys, std::move(act), std::move(w)));
    }
  }
  return out;
}

// (w, w') with w covering w' in the Bruhat order, obtained by deleting the
// letter at 1-based position deleted_index of the canonical word of w.
struct CoveringPair {
  WeylElement w;
  WeylElement w_prime;
  int deleted_index = 0;
  Word deleted_word;  // canonical word of w with the letter removed
  Root beta;          // w = s_beta w'
  Root gamma;         // w = w' s_gamma
};

inline std::vector<CoveringPair> bruhat_covers(const RootSystem& sys, const WeylElement& w) {
  std::vector<CoveringPair> out;
  const Word& word = w.word();
  const int len = w.length();
  const auto prefix_roots = word_roots(sys, word);
  for (int I = 1; I <= len; ++I) {
    Word del(word);
    del.erase(del.begin() + (I - 1));
    if (!is_reduced(sys, del)) continue;
    CoveringPair p;
    p.w = w;
    p.w_prime = element_from_word(sys, del);
    p.deleted_index = I;
    p.deleted_word = std::move(del);
    p.beta = prefix_roots[I - 1];  // v(a_I), v = s_1 ... s_{I-1}
    Root g = sys.simple_root(word[I - 1]);
    for (int k = I + 1; k <= len; ++k) g = sys.reflect(word[k - 1], g);  // u^{-1}(a_I)
    p.gamma = std::move(g);
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parabolic data.

class ThetaSubset {
 public:
  ThetaSubset() = default;
  ThetaSubset(int rank, std::vector<int> included) : rank_(rank), included_(std::move(included)) {
    std::sort(included_.begin(), included_.end());
    included_.erase(std::unique(included_.begin(), included_.end()), included_.end());
    for (int i : included_)
      if (i < 1 || i > rank_) throw InvalidArgument("theta index " + std::to_string(i) + " out of range");
  }
  static ThetaSubset from_complement(int rank, std::vector<int> complement) {
    ThetaSubset c(rank, std::move(complement));
    return ThetaSubset(rank, c.complement());
  }
  static ThetaSubset empty(int rank) { return ThetaSubset(rank, {}); }
  static ThetaSubset all(int rank) {
    std::vector<int> v(rank);
    for (int i = 0; i < rank; ++i) v[i] = i + 1;
    return ThetaSubset(rank, std::move(v));
  }
  // Subset with the given bitmask (bit i-1 set <=> a_i in theta).
  static ThetaSubset from_mask(int rank, unsigned mask) {
    std::vector<int> v;
    for (int i = 1; i <= rank; ++i)
      if (mask & (1u << (i - 1))) v.push_back(i);
    return ThetaSubset(rank, std::move(v));
  }

  int rank() const { return rank_; }
  const std::vector<int>& included() const { return included_; }
  int size() const { return static_cast<int>(included_.size()); }
  bool contains(int i) const { return std::binary_search(included_.begin(), included_.end(), i); }
  std::vector<int> complement() const {
    std::vector<int> c;
    for (int i = 1; i <= rank_; ++i)
      if (!contains(i)) c.push_back(i);
    return c;
  }

 private:
  int rank_ = 0;
  std::vector<int> included_;
};

// w is in W^Theta iff l(w s_a) > l(w), i.e. w(a) > 0, for every a in Theta.
inline bool is_minimal_representative(const WeylElement& w, const ThetaSubset& theta) {
  return std::all_of(theta.included().begin(), theta.included().end(),
                     [&](int a) { return w.image_of_simple(a).is_positive(); });
}

inline std::vector<WeylElement> minimal_representatives(const RootSystem& sys, const ThetaSubset& theta,
                                                        std::optional<int> max_length = std::nullopt,
                                                        std::size_t cap = kDefaultElementCap) {
  if (theta.rank() != sys.rank()) throw InvalidArgument("theta rank does not match the system");
  std::vector<WeylElement> out;
  for (auto& w : enumerate_weyl(sys, max_length, cap))
    if (is_minimal_representative(w, theta)) out.push_back(std::move(w));
  return out;
}

// Longest element of the parabolic subgroup generated by the labels.
inline WeylElement longest_element(const RootSystem& sys, std::span<const int> labels) {
  detail::Action a = detail::identity_action(sys.rank());
  for (bool again = true; again;) {
    again = false;
    for (int i : labels)
      if (!detail::column_negative(a, sys.rank(), i)) {
        detail::right_multiply(sys, a, i);
        again = true;
        break;
      }
  }
  return element_from_action(sys, std::move(a));
}

// Longest element of W^Theta: w_0 w_{0,Theta}.
inline WeylElement longest_minimal_representative(const RootSystem& sys, const ThetaSubset& theta) {
  std::vector<int> all(sys.rank());
  for (int i = 0; i < sys.rank(); ++i) all[i] = i + 1;
  return multiply(sys, longest_element(sys, all), longest_element(sys, theta.included()));
}

// ---------------------------------------------------------------------------
// Type A: one-line forms, Lehmer codes and code spectra.

inline void validate_permutation(std::span<const int> p) {
  std::vector<bool> seen(p.size() + 1, false);
  for (int v : p) {
    if (v < 1 || v > static_cast<int>(p.size()) || seen[v]) throw InvalidArgument("invalid one-line form");
    seen[v] = true;
  }
}

// Bruhat covering test in S_n: w = w' (i, j) with i < j, w'(i) < w'(j) and no
// i < k < j with w'(i) < w'(k) < w'(j). Returns 1-based (i, j).
inline std::optional<std::pair<int, int>> covers_oracle_typeA(std::span<const int> w, std::span<const int> wp) {
  validate_permutation(w);
  validate_permutation(wp);
  if (w.size() != wp.size()) throw InvalidArgument("invalid one-line form");
  std::vector<int> diff;
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k] != wp[k]) diff.push_back(static_cast<int>(k));
  if (diff.size() != 2) return std::nullopt;
  const int i = diff[0], j = diff[1];
  if (w[i] != wp[j] || w[j] != wp[i] || wp[i] > wp[j]) return std::nullopt;
  for (int k = i + 1; k < j; ++k)
    if (wp[i] < wp[k] && wp[k] < wp[j]) return std::nullopt;
  return std::pair{i + 1, j + 1};
}

inline WeylElement element_from_one_line(const RootSystem& sys, std::span<const int> perm) {
  if (sys.family() != Family::A) throw InvalidArgument("one-line forms need type A");
  validate_permutation(perm);
  if (static_cast<int>(perm.size()) != sys.rank() + 1) throw InvalidArgument("invalid one-line form");
  // Bubble sort: p s_{i1} s_{i2} ... = id gives p = ... s_{i2} s_{i1}.
  std::vector<int> p(perm.begin(), perm.end());
  Word peeled;
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (p[i] > p[i + 1]) {
        std::swap(p[i], p[i + 1]);
        peeled.push_back(static_cast<int>(i) + 1);
        again = true;
      }
  }
  Word w(peeled.rbegin(), peeled.rend());
  return element_from_word(sys, w);
}

// code_i = #{k > i : w_k < w_i}.
inline std::vector<int> lehmer_code(std::span<const int> perm) {
  validate_permutation(perm);
  std::vector<int> code(perm.size(), 0);
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t k = i + 1; k < perm.size(); ++k)
      if (perm[k] < perm[i]) ++code[i];
  return code;
}

// Nondecreasing list in which i appears code_i times.
inline std::vector<int> code_spectrum(std::span<const int> perm) {
  const auto code = lehmer_code(perm);
  std::vector<int> spec;
  for (std::size_t i = 0; i < code.size(); ++i) spec.insert(spec.end(), code[i], static_cast<int>(i) + 1);
  return spec;
}

inline std::vector<int> permutation_from_code_spectrum(std::span<const int> spectrum, int n) {
  if (n < 1) throw InvalidArgument("invalid code spectrum");
  std::vector<int> code(n, 0);
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    const int b = spectrum[k];
    if (b < 1 || b > n - 1 || (k > 0 && spectrum[k - 1] > b)) throw InvalidArgument("invalid code spectrum");
    ++code[b - 1];
  }
  for (int i = 0; i < n; ++i)
    if (code[i] > n - 1 - i) throw InvalidArgument("invalid code spectrum");
  std::vector<int> avail(n);
  for (int i = 0; i < n; ++i) avail[i] = i + 1;
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) {
    perm[i] = avail[code[i]];
    avail.erase(avail.begin() + code[i]);
  }
  return perm;
}

inline WeylElement from_code_spectrum(const RootSystem& sys, std::span<const int> spectrum) {
  if (sys.family() != Family::A) throw InvalidArgument("code spectra need type A");
  return element_from_one_line(sys, permutation_from_code_spectrum(spectrum, sys.rank() + 1));
}

}  // namespace flaghom
