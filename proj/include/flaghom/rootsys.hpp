#pragma once

// Finite reduced root systems built from Cartan data.
//
// Conventions used throughout the library:
//  - simple roots are labelled 1..rank (generator labels are 1-based),
//  - cartan(i, j) = <a_i^vee, a_j>, so s_i(b) = b - (sum_j cartan(i, j) b_j) a_i,
//  - roots are integer coefficient vectors over the simple basis
//    (coeffs[0] is the coefficient of a_1),
//  - the symmetrizer d_i stands for <a_i, a_i>/2 in the smallest integral scale,
//    so (a_i, a_j) = d_i * cartan(i, j).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flaghom/error.hpp"

namespace flaghom {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

inline Family parse_family(const std::string& s) {
  if (s.size() == 1) {
    switch (s[0]) {
      case 'A': case 'a': return Family::A;
      case 'B': case 'b': return Family::B;
      case 'C': case 'c': return Family::C;
      case 'D': case 'd': return Family::D;
      case 'E': case 'e': return Family::E;
      case 'F': case 'f': return Family::F;
      case 'G': case 'g': return Family::G;
      default: break;
    }
  }
  throw InvalidArgument("unknown root system family '" + s + "'");
}

inline char family_letter(Family f) { return static_cast<char>(f); }

inline bool simply_laced(Family f) {
  return f == Family::A || f == Family::D || f == Family::E;
}

// Number of positive roots of the irreducible system of the given type.
inline std::size_t classical_positive_root_count(Family f, int r) {
  const auto n = static_cast<std::size_t>(r);
  switch (f) {
    case Family::A: return n * (n + 1) / 2;
    case Family::B:
    case Family::C: return n * n;
    case Family::D: return n * (n - 1);
    case Family::E: return r == 6 ? 36 : r == 7 ? 63 : 120;
    case Family::F: return 24;
    case Family::G: return 6;
  }
  return 0;
}

// |W| for the irreducible system, saturating at UINT64_MAX (never reached here).
inline std::uint64_t classical_weyl_order(Family f, int r) {
  auto fact = [](int k) {
    std::uint64_t v = 1;
    for (int i = 2; i <= k; ++i) v *= static_cast<std::uint64_t>(i);
    return v;
  };
  switch (f) {
    case Family::A: return fact(r + 1);
    case Family::B:
    case Family::C: return (std::uint64_t{1} << r) * fact(r);
    case Family::D: return (std::uint64_t{1} << (r - 1)) * fact(r);
    case Family::E: return r == 6 ? 51840ULL : r == 7 ? 2903040ULL : 696729600ULL;
    case Family::F: return 1152;
    case Family::G: return 12;
  }
  return 0;
}

class CartanData {
 public:
  // Standard matrix for the family. Type A follows the path a_1 - ... - a_r;
  // B, C, D, E, F and G use Bourbaki numbering (F4: a_1, a_2 long).
  static CartanData standard(Family family, int rank) {
    check_rank(family, rank);
    // Gram matrix of the simple roots with short roots of squared length 2.
    std::vector<std::vector<int>> gram(rank, std::vector<int>(rank, 0));
    std::vector<int> len2(rank, 2);
    std::vector<std::pair<int, int>> edges;
    switch (family) {
      case Family::A:
        for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
        break;
      case Family::B:
        for (int i = 0; i + 1 < rank; ++i) len2[i] = 4;
        for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
        break;
      case Family::C:
        len2[rank - 1] = 4;
        for (int i = 0; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
        break;
      case Family::D:
        for (int i = 0; i + 2 < rank; ++i) edges.emplace_back(i, i + 1);
        edges.emplace_back(rank - 3, rank - 1);
        break;
      case Family::E:
        edges = {{0, 2}, {2, 3}, {3, 4}, {1, 3}};
        for (int i = 4; i + 1 < rank; ++i) edges.emplace_back(i, i + 1);
        break;
      case Family::F:
        len2 = {4, 4, 2, 2};
        edges = {{0, 1}, {1, 2}, {2, 3}};
        break;
      case Family::G:
        len2 = {2, 6};
        edges = {{0, 1}};
        break;
    }
    for (int i = 0; i < rank; ++i) gram[i][i] = len2[i];
    for (auto [i, j] : edges) {
      // Bond strength m: (a_i, a_j) = -max(len2)/2 for every Dynkin bond here.
      const int v = -std::max(len2[i], len2[j]) / 2;
      gram[i][j] = gram[j][i] = v;
    }
    std::vector<std::vector<int>> c(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) c[i][j] = 2 * gram[i][j] / gram[i][i];
    return CartanData(family, std::move(c));
  }

  // Arbitrary matrix labelled with a family; the symmetrizer is derived.
  CartanData(Family family, std::vector<std::vector<int>> matrix)
      : family_(family), rank_(static_cast<int>(matrix.size())), matrix_(std::move(matrix)) {
    check_rank(family_, rank_);
    for (const auto& row : matrix_)
      if (static_cast<int>(row.size()) != rank_) throw InvalidArgument("Cartan matrix is not square");
    for (int i = 0; i < rank_; ++i) {
      if (matrix_[i][i] != 2) throw InvalidArgument("Cartan matrix diagonal must be 2");
      for (int j = 0; j < rank_; ++j) {
        if (i == j) continue;
        if (matrix_[i][j] > 0) throw InvalidArgument("Cartan matrix off-diagonal entries must be <= 0");
        if ((matrix_[i][j] == 0) != (matrix_[j][i] == 0))
          throw InvalidArgument("Cartan matrix zero pattern is not symmetric");
      }
    }
    symmetrizer_ = derive_symmetrizer();
  }

  Family family() const { return family_; }
  int rank() const { return rank_; }
  // 1-based labels.
  int operator()(int i, int j) const { return matrix_[i - 1][j - 1]; }
  const std::vector<std::vector<int>>& matrix() const { return matrix_; }
  const std::vector<int>& symmetrizer() const { return symmetrizer_; }

  // (a_i, a_j) in the symmetrizer's scale.
  int inner(int i, int j) const { return symmetrizer_[i - 1] * matrix_[i - 1][j - 1]; }

  CartanData transposed(Family family) const {
    std::vector<std::vector<int>> t(rank_, std::vector<int>(rank_));
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) t[i][j] = matrix_[j][i];
    return CartanData(family, std::move(t));
  }

  bool operator==(const CartanData&) const = default;

  static void check_rank(Family f, int r) {
    bool ok = r >= 1;
    switch (f) {
      case Family::A: break;
      case Family::B:
      case Family::C: ok = r >= 2; break;
      case Family::D: ok = r >= 3; break;
      case Family::E: ok = r >= 6 && r <= 8; break;
      case Family::F: ok = r == 4; break;
      case Family::G: ok = r == 2; break;
    }
    if (!ok)
      throw InvalidArgument(std::string("rank ") + std::to_string(r) + " is not valid for family " +
                            family_letter(f));
  }

 private:
  // Solves d_i C[i][j] = d_j C[j][i] along the adjacency graph with rational
  // propagation, then clears denominators.
  std::vector<int> derive_symmetrizer() const {
    std::vector<std::int64_t> num(rank_, 0), den(rank_, 1);
    std::vector<bool> seen(rank_, false);
    for (int start = 0; start < rank_; ++start) {
      if (seen[start]) continue;
      seen[start] = true;
      num[start] = 1;
      std::vector<int> stack{start};
      while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < rank_; ++j) {
          if (i == j || matrix_[i][j] == 0 || seen[j]) continue;
          // d_j = d_i C[i][j] / C[j][i]
          num[j] = num[i] * matrix_[i][j];
          den[j] = den[i] * matrix_[j][i];
          const auto g = std::gcd(num[j], den[j]);
          num[j] /= g;
          den[j] /= g;
          if (den[j] < 0) { num[j] = -num[j]; den[j] = -den[j]; }
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    std::int64_t l = 1;
    for (auto d : den) l = std::lcm(l, d);
    std::vector<std::int64_t> d(rank_);
    for (int i = 0; i < rank_; ++i) d[i] = num[i] * (l / den[i]);
    std::int64_t g = 0;
    for (auto v : d) g = std::gcd(g, v);
    std::vector<int> out(rank_);
    for (int i = 0; i < rank_; ++i) {
      out[i] = static_cast<int>(d[i] / g);
      if (out[i] <= 0) throw InvalidArgument("Cartan matrix is not symmetrizable");
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if (static_cast<std::int64_t>(out[i]) * matrix_[i][j] != static_cast<std::int64_t>(out[j]) * matrix_[j][i])
          throw InvalidArgument("Cartan matrix is not symmetrizable");
    return out;
  }

  Family family_;
  int rank_;
  std::vector<std::vector<int>> matrix_;
  std::vector<int> symmetrizer_;
};

// Integer coefficient vector over the simple basis.
class Root {
 public:
  Root() = default;
  explicit Root(std::vector<int> coeffs) : coeffs_(std::move(coeffs)) {}

  static Root simple(int rank, int i) {
    std::vector<int> c(rank, 0);
    c[i - 1] = 1;
    return Root(std::move(c));
  }

  int rank() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<int>& coeffs() const { return coeffs_; }
  // 1-based label.
  int operator[](int i) const { return coeffs_[i - 1]; }

  int height() const { return std::accumulate(coeffs_.begin(), coeffs_.end(), 0); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](int v) { return v == 0; });
  }
  bool is_positive() const {
    return !is_zero() && std::all_of(coeffs_.begin(), coeffs_.end(), [](int v) { return v >= 0; });
  }
  bool is_negative() const {
    return !is_zero() && std::all_of(coeffs_.begin(), coeffs_.end(), [](int v) { return v <= 0; });
  }
  // Index of the simple root if this is one, else nullopt.
  std::optional<int> simple_index() const {
    if (height() != 1 || !is_positive()) return std::nullopt;
    for (int i = 0; i < rank(); ++i)
      if (coeffs_[i] == 1) return i + 1;
    return std::nullopt;
  }

  Root operator-() const {
    Root r = *this;
    for (auto& v : r.coeffs_) v = -v;
    return r;
  }
  Root& operator+=(const Root& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Root& operator-=(const Root& o) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend Root operator+(Root a, const Root& b) { return a += b; }
  friend Root operator-(Root a, const Root& b) { return a -= b; }
  friend Root operator*(int k, Root a) {
    for (auto& v : a.coeffs_) v *= k;
    return a;
  }

  auto operator<=>(const Root&) const = default;

  // "a1+2a2", "-a3", "0".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < rank(); ++i) {
      const int v = coeffs_[i];
      if (v == 0) continue;
      if (v < 0) os << '-';
      else if (!first) os << '+';
      if (std::abs(v) != 1) os << std::abs(v);
      os << 'a' << (i + 1);
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  std::vector<int> coeffs_;
};

// Positive roots sort by height, then with larger leading coefficients first,
// which lists the simple roots as a_1, a_2, ...
inline bool root_order(const Root& a, const Root& b) {
  if (a.height() != b.height()) return a.height() < b.height();
  return a.coeffs() > b.coeffs();
}

class RootSystem {
 public:
  explicit RootSystem(CartanData cartan) : cartan_(std::move(cartan)) {
    generate();
    multiplicity_.assign(positive_.size(), 1);
  }

  static RootSystem standard(Family f, int rank) { return RootSystem(CartanData::standard(f, rank)); }

  const CartanData& cartan() const { return cartan_; }
  Family family() const { return cartan_.family(); }
  int rank() const { return cartan_.rank(); }

  const std::vector<Root>& positive_roots() const { return positive_; }
  // Coroot coefficients over the dual simple basis, aligned with positive_roots().
  const std::vector<Root>& coroot_table() const { return coroots_; }
  const std::vector<int>& multiplicities() const { return multiplicity_; }

  bool split() const {
    return std::all_of(multiplicity_.begin(), multiplicity_.end(), [](int m) { return m == 1; });
  }

  // Returns a copy carrying the given root multiplicities (dim g_delta).
  // Standard constructions are always split; this exists so the sigma and
  // phi routes can be exercised with non-trivial data.
  RootSystem with_multiplicities(std::vector<int> mult) const {
    if (mult.size() != positive_.size()) throw InvalidArgument("one multiplicity per positive root expected");
    if (std::any_of(mult.begin(), mult.end(), [](int m) { return m < 1; }))
      throw InvalidArgument("root multiplicities must be positive");
    RootSystem copy = *this;
    copy.multiplicity_ = std::move(mult);
    return copy;
  }

  Root simple_root(int i) const {
    check_label(i);
    return Root::simple(rank(), i);
  }

  // <a_i^vee, beta>.
  int pairing(int i, const Root& beta) const {
    check_label(i);
    const auto& row = cartan_.matrix()[i - 1];
    int s = 0;
    for (int j = 0; j < rank(); ++j) s += row[j] * beta.coeffs()[j];
    return s;
  }

  // s_i(beta) = beta - <a_i^vee, beta> a_i.
  Root reflect(int i, const Root& beta) const {
    check_root_shape(beta);
    std::vector<int> c = beta.coeffs();
    c[i - 1] -= pairing(i, beta);
    return Root(std::move(c));
  }

  bool contains(const Root& r) const {
    if (r.rank() != rank()) return false;
    if (r.is_positive()) return index_.count(r.coeffs()) != 0;
    if (r.is_negative()) return index_.count((-r).coeffs()) != 0;
    return false;
  }

  std::optional<std::size_t> positive_index(const Root& r) const {
    auto it = index_.find(r.coeffs());
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  int multiplicity(const Root& r) const {
    const Root p = r.is_negative() ? -r : r;
    auto idx = positive_index(p);
    if (!idx) throw InvalidArgument("not a root of the system: " + r.to_string());
    return multiplicity_[*idx];
  }

  // <alpha, alpha> in the symmetrizer scale (simple a_i has 2 d_i).
  std::int64_t norm2(const Root& r) const {
    std::int64_t s = 0;
    for (int i = 1; i <= rank(); ++i)
      for (int j = 1; j <= rank(); ++j)
        s += static_cast<std::int64_t>(r[i]) * r[j] * cartan_.inner(i, j);
    return s;
  }

  // alpha^vee over the dual simple basis: d*_delta = d_delta <delta,delta>/<alpha,alpha>.
  Root coroot(const Root& alpha) const {
    if (!contains(alpha)) throw InvalidArgument("not a root of the system: " + alpha.to_string());
    const std::int64_t n = norm2(alpha);
    std::vector<int> c(rank());
    for (int i = 1; i <= rank(); ++i) {
      const std::int64_t num = static_cast<std::int64_t>(alpha[i]) * 2 * cartan_.symmetrizer()[i - 1];
      if (num % n != 0) throw CheckFailure("coroot coefficient is not integral for " + alpha.to_string());
      c[i - 1] = static_cast<int>(num / n);
    }
    return Root(std::move(c));
  }

  // The system of coroots, with simple roots a_i^vee in the same labelling.
  RootSystem dual() const {
    Family f = family();
    if (f == Family::B) f = Family::C;
    else if (f == Family::C) f = Family::B;
    return RootSystem(cartan_.transposed(f));
  }

  Root highest_root() const { return positive_.back(); }

  // Connected components of the Dynkin subdiagram spanned by the labels.
  int components(std::span<const int> labels) const {
    std::vector<int> ls(labels.begin(), labels.end());
    std::vector<bool> seen(ls.size(), false);
    int count = 0;
    for (std::size_t s = 0; s < ls.size(); ++s) {
      if (seen[s]) continue;
      ++count;
      std::vector<std::size_t> stack{s};
      seen[s] = true;
      while (!stack.empty()) {
        const auto a = stack.back();
        stack.pop_back();
        for (std::size_t b = 0; b < ls.size(); ++b)
          if (!seen[b] && cartan_(ls[a], ls[b]) != 0) {
            seen[b] = true;
            stack.push_back(b);
          }
      }
    }
    return count;
  }

  void check_label(int i) const {
    if (i < 1 || i > rank())
      throw InvalidArgument("simple root label " + std::to_string(i) + " out of range 1.." + std::to_string(rank()));
  }

 private:
  void check_root_shape(const Root& r) const {
    if (r.rank() != rank()) throw InvalidArgument("root has wrong rank");
  }

  // Breadth-first closure of the simple roots under simple reflections,
  // keeping positive roots. s_i permutes the positive roots other than a_i, so
  // this terminates exactly when the system is finite.
  void generate() {
    const std::size_t bound = classical_positive_root_count(family(), rank());
    std::vector<Root> queue;
    for (int i = 1; i <= rank(); ++i) queue.push_back(Root::simple(rank(), i));
    std::map<std::vector<int>, std::size_t> seen;
    for (const auto& r : queue) seen.emplace(r.coeffs(), 0);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Root cur = queue[head];
      for (int i = 1; i <= rank(); ++i) {
        if (cur == Root::simple(rank(), i)) continue;
        Root next = reflect(i, cur);
        if (!next.is_positive()) throw InvalidArgument("not finite type");
        if (seen.emplace(next.coeffs(), 0).second) {
          queue.push_back(std::move(next));
          if (queue.size() > bound) throw InvalidArgument("not finite type");
        }
      }
    }
    if (queue.size() != bound) throw InvalidArgument("not finite type");
    std::sort(queue.begin(), queue.end(), root_order);
    positive_ = std::move(queue);
    for (std::size_t k = 0; k < positive_.size(); ++k) index_.emplace(positive_[k].coeffs(), k);
    coroots_.reserve(positive_.size());
    for (const auto& r : positive_) coroots_.push_back(coroot(r));
  }

  CartanData cartan_;
  std::vector<Root> positive_;
  std::vector<Root> coroots_;
  std::vector<int> multiplicity_;
  std::map<std::vector<int>, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Sums of products of Killing numbers along an ordered sequence of simple
// roots. Positions x, y are 1-based into `sequence`, whose entries are simple
// root labels (repetition allowed).

inline std::int64_t killing(const RootSystem& sys, std::span<const int> seq, int x, int y) {
  return sys.cartan()(seq[x - 1], seq[y - 1]);
}

// P^l_{x,y}: sum over x < j_1 < ... < j_l < y of
// <d_x^vee, d_j1> <d_j1^vee, d_j2> ... <d_jl^vee, d_y>.
inline std::int64_t p_sum(const RootSystem& sys, std::span<const int> seq, int x, int y, int l) {
  const int m = static_cast<int>(seq.size());
  if (x < 1 || y > m || x >= y || l < 0 || l >= y - x) throw InvalidArgument("invalid P-sum indices");
  for (int s : seq) sys.check_label(s);
  if (l == 0) return killing(sys, seq, x, y);
  // chain[k] = weighted count of chains x < j_1 < ... < j_t = k.
  std::vector<std::int64_t> chain(m + 1, 0), next(m + 1, 0);
  for (int k = x + 1; k < y; ++k) chain[k] = killing(sys, seq, x, k);
  for (int t = 2; t <= l; ++t) {
    std::fill(next.begin(), next.end(), 0);
    for (int k = x + 1; k < y; ++k) {
      if (chain[k] == 0) continue;
      for (int k2 = k + 1; k2 < y; ++k2) next[k2] += chain[k] * killing(sys, seq, k, k2);
    }
    std::swap(chain, next);
  }
  std::int64_t total = 0;
  for (int k = x + 1; k < y; ++k) total += chain[k] * killing(sys, seq, k, y);
  return total;
}

// s_1 ... s_{m-1}(d_m) by the closed alternating P-sum formula.
inline Root conjugated_root(const RootSystem& sys, std::span<const int> seq) {
  const int m = static_cast<int>(seq.size());
  if (m < 1) throw InvalidArgument("conjugated_root needs a non-empty sequence");
  for (int s : seq) sys.check_label(s);
  std::vector<int> c(sys.rank(), 0);
  c[seq[m - 1] - 1] += 1;
  for (int i = 1; i < m; ++i) {
    std::int64_t coeff = 0;
    for (int l = 0; l <= m - i - 1; ++l) {
      const std::int64_t p = p_sum(sys, seq, i, m, l);
      coeff += (l % 2 == 0) ? -p : p;  // (-1)^(l-1)
    }
    c[seq[i - 1] - 1] += static_cast<int>(coeff);
  }
  return Root(std::move(c));
}

}  // namespace flaghom
