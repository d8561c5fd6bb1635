#pragma once

// Cellular chain complexes of (partial) flag manifolds and their homology.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "flaghom/coeffs.hpp"
#include "flaghom/error.hpp"
#include "flaghom/rootsys.hpp"
#include "flaghom/smith.hpp"
#include "flaghom/weyl.hpp"

namespace flaghom {

enum class Ring { Integer, Mod2 };

inline std::string to_string(Ring r) { return r == Ring::Integer ? "Z" : "Z/2"; }

struct HomologyGroup {
  int degree = 0;
  std::size_t free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, each dividing the next

  // Number of cyclic summands of even order.
  std::size_t even_torsion() const {
    std::size_t n = 0;
    for (const auto& t : torsion)
      if (t % 2 == 0) ++n;
    return n;
  }

  bool operator==(const HomologyGroup&) const = default;

  // "0", "Z", "Z^2 + (Z2)^3", "Z2 + Z4".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank) {
      os << "Z";
      if (free_rank > 1) os << '^' << free_rank;
      first = false;
    }
    std::size_t k = 0;
    while (k < torsion.size()) {
      std::size_t run = k;
      while (run < torsion.size() && torsion[run] == torsion[k]) ++run;
      if (!first) os << " + ";
      first = false;
      const auto count = run - k;
      if (count > 1) os << "(Z" << torsion[k] << ")^" << count;
      else os << "Z" << torsion[k];
      k = run;
    }
    return first ? "0" : os.str();
  }
};

inline HomologyGroup elementary_two_group(int degree, std::size_t exponent) {
  HomologyGroup h;
  h.degree = degree;
  h.torsion.assign(exponent, BigInt(2));
  return h;
}

struct ChainComplex {
  Ring ring = Ring::Integer;
  ThetaSubset theta;
  int max_degree = 0;
  int top_dimension = 0;  // dimension of the flag manifold
  std::vector<std::vector<WeylElement>> cells;  // cells[k], k = 0..max_degree
  // boundaries[k] : rows = cells[k], cols = cells[k-1]; boundaries[0] is empty.
  std::vector<IntMatrix> boundaries;
  std::vector<KappaReport> pairs;  // covering pairs inside W^Theta, by degree then row
  // Top-degree cells whose single nonzero boundary entry had an undetermined
  // sign; their orientation is chosen so that the entry is +|c|.
  std::vector<std::pair<int, std::size_t>> reoriented;

  std::size_t cell_count(int k) const {
    return k >= 0 && k < static_cast<int>(cells.size()) ? cells[k].size() : 0;
  }
};

inline void verify_square_zero(const ChainComplex& cx) {
  for (int k = 2; k <= cx.max_degree; ++k) {
    IntMatrix prod = multiply(cx.boundaries[k], cx.boundaries[k - 1]);
    for (std::size_t r = 0; r < prod.rows(); ++r)
      for (std::size_t c = 0; c < prod.cols(); ++c) {
        const auto v = cx.ring == Ring::Mod2 ? prod(r, c) % 2 : prod(r, c);
        if (v != 0)
          throw CheckFailure("boundary of boundary is nonzero at degree " + std::to_string(k) + " for cell " +
                             cx.cells[k][r].word_string());
      }
  }
}

// Cells are W^Theta by length (enumeration order); entries are c(w, w') for
// covering pairs inside W^Theta. Every pair is cross-checked across all
// kappa routes when cross_check is set.
inline ChainComplex build_complex(const RootSystem& sys, const ThetaSubset& theta, int max_degree, Ring ring,
                                  SignPolicy policy = SignPolicy::PaperRules, bool cross_check = true) {
  if (max_degree < 0) throw InvalidArgument("max degree must be >= 0");
  if (ring == Ring::Integer && policy == SignPolicy::MagnitudeOnly)
    throw InvalidArgument("integral complexes need a sign policy");
  ChainComplex cx;
  cx.ring = ring;
  cx.theta = theta;
  cx.max_degree = max_degree;
  cx.top_dimension = longest_minimal_representative(sys, theta).length();
  cx.cells.resize(max_degree + 1);
  for (auto& w : minimal_representatives(sys, theta, max_degree)) cx.cells[w.length()].push_back(std::move(w));

  std::optional<DualHeightRoute> dual;
  if (cross_check && DualHeightRoute::applicable(sys.family())) dual.emplace(sys);

  cx.boundaries.resize(max_degree + 1);
  for (int k = 1; k <= max_degree; ++k) {
    std::unordered_map<std::vector<int>, std::size_t, VectorHash> col_index;
    for (std::size_t c = 0; c < cx.cells[k - 1].size(); ++c) col_index.emplace(cx.cells[k - 1][c].action(), c);
    IntMatrix m(cx.cells[k].size(), cx.cells[k - 1].size());
    for (std::size_t r = 0; r < cx.cells[k].size(); ++r) {
      std::vector<std::size_t> unknown;  // columns with an undetermined sign
      std::vector<std::size_t> unknown_pairs;  // matching indices into cx.pairs
      for (auto& pair : bruhat_covers(sys, cx.cells[k][r])) {
        auto it = col_index.find(pair.w_prime.action());
        if (it == col_index.end()) continue;
        KappaReport rep;
        if (cross_check) {
          rep = analyze_pair(sys, pair, dual ? &*dual : nullptr, policy);
        } else {
          rep.coefficient = coefficient(sys, pair, policy);
          rep.kappa_sigma = rep.coefficient.kappa;
          rep.pair = std::move(pair);
        }
        if (ring == Ring::Mod2) {
          m(r, it->second) = rep.coefficient.magnitude % 2;
        } else if (auto v = rep.coefficient.value()) {
          m(r, it->second) = *v;
        } else {
          unknown.push_back(it->second);
          unknown_pairs.push_back(cx.pairs.size());
        }
        cx.pairs.push_back(std::move(rep));
      }
      if (unknown.empty()) continue;
      std::size_t nonzero = 0;
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(r, c) != 0) ++nonzero;
      const auto& first = cx.pairs[unknown_pairs.front()];
      if (k == max_degree && unknown.size() == 1 && nonzero == 0) {
        m(r, unknown.front()) = first.coefficient.magnitude;
        cx.reoriented.emplace_back(k, r);
        continue;
      }
      throw Unsupported("sign-indeterminate pair " + describe_pair(first.pair));
    }
    cx.boundaries[k] = std::move(m);
  }
  cx.boundaries[0] = IntMatrix(cx.cells[0].size(), 0);
  verify_square_zero(cx);
  return cx;
}

// H_0 .. H_up_to. Needs the complex through degree up_to + 1 unless the
// complex already reaches the top cell (groups above it are 0).
inline std::vector<HomologyGroup> homology_groups(const ChainComplex& cx, int up_to_degree) {
  const bool complete = cx.max_degree >= cx.top_dimension;
  if (up_to_degree < 0 || (!complete && up_to_degree + 1 > cx.max_degree))
    throw InvalidArgument("complex not built through degree " + std::to_string(up_to_degree + 1));

  std::vector<SmithForm> forms(cx.max_degree + 2);
  auto rank_of = [&](int k) -> std::size_t {
    if (k <= 0 || k > cx.max_degree) return 0;
    return forms[k].rank;
  };
  for (int k = 1; k <= cx.max_degree; ++k) {
    if (cx.ring == Ring::Integer) forms[k] = smith_normal_form(cx.boundaries[k]);
    else forms[k].rank = rank_mod2(cx.boundaries[k]);
  }
  std::vector<HomologyGroup> out;
  for (int k = 0; k <= up_to_degree; ++k) {
    HomologyGroup h;
    h.degree = k;
    h.free_rank = cx.cell_count(k) - rank_of(k) - rank_of(k + 1);
    if (cx.ring == Ring::Integer && k + 1 <= cx.max_degree)
      for (const auto& d : forms[k + 1].invariant_factors)
        if (d > 1) h.torsion.push_back(d);
    out.push_back(std::move(h));
  }
  return out;
}

// dim H_k(Z/2) = b_k + t_k(2) + t_{k-1}(2).
inline bool universal_coefficients_consistent(const std::vector<HomologyGroup>& integral,
                                              const std::vector<HomologyGroup>& mod2) {
  for (std::size_t k = 0; k < integral.size() && k < mod2.size(); ++k) {
    std::size_t expected = integral[k].free_rank + integral[k].even_torsion();
    if (k > 0) expected += integral[k - 1].even_torsion();
    if (mod2[k].free_rank != expected) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Type A closed forms. n is the size of the permutation group (system A_{n-1}).

struct ThetaProfile {
  ThetaSubset theta;
  std::vector<int> complement_positions;  // d_1 < ... < d_k
  int r_theta = 0;                        // Dynkin components of Theta
};

// Maximal runs of consecutive labels; the type A diagram is a path.
inline int consecutive_runs(const std::vector<int>& sorted_labels) {
  int runs = 0;
  for (std::size_t k = 0; k < sorted_labels.size(); ++k)
    if (k == 0 || sorted_labels[k] != sorted_labels[k - 1] + 1) ++runs;
  return runs;
}

inline ThetaProfile theta_profile(const ThetaSubset& theta) {
  return ThetaProfile{theta, theta.complement(), consecutive_runs(theta.included())};
}

inline void check_typeA_theta(int n, const ThetaSubset& theta) {
  if (n < 2 || theta.rank() != n - 1) throw InvalidArgument("theta does not belong to A_" + std::to_string(n - 1));
}

struct ClosedFormHomology {
  HomologyGroup h1;
  std::optional<HomologyGroup> h2;  // stated for n >= 4 only
};

inline long long binomial2(long long m) { return m < 2 ? 0 : m * (m - 1) / 2; }

// H_1 = (Z2)^(n-|Theta|-1); H_2 = (Z2)^N, N = C(n-|Theta|-1, 2) + r_Theta - 1.
inline ClosedFormHomology h1_h2_closed_form(int n, const ThetaSubset& theta) {
  if (n < 3) throw Unsupported("formula out of stated range");
  check_typeA_theta(n, theta);
  const int free_simple = n - theta.size() - 1;
  ClosedFormHomology out;
  out.h1 = elementary_two_group(1, static_cast<std::size_t>(free_simple));
  if (n >= 4) {
    const long long N = binomial2(free_simple) + theta_profile(theta).r_theta - 1;
    if (N < 0) throw CheckFailure("negative H2 exponent");
    out.h2 = elementary_two_group(2, static_cast<std::size_t>(N));
  }
  return out;
}

// Orientable iff all gaps d_{j+1} - d_j (d_0 = 0, d_{k+1} = n) share a parity.
inline bool orientable_typeA(int n, const ThetaSubset& theta) {
  check_typeA_theta(n, theta);
  std::vector<int> d{0};
  for (int c : theta.complement()) d.push_back(c);
  d.push_back(n);
  const int parity = (d[1] - d[0]) % 2;
  for (std::size_t j = 1; j + 1 < d.size(); ++j)
    if ((d[j + 1] - d[j]) % 2 != parity) return false;
  return true;
}

struct TopCellReport {
  WeylElement top;
  std::vector<std::pair<CoveringPair, int>> covers;  // (pair, kappa)
  bool orientable = true;
};

// The top cell has zero boundary iff every kappa of its covers inside W^Theta
// is odd.
inline TopCellReport top_cell_report(const RootSystem& sys, const ThetaSubset& theta) {
  TopCellReport rep;
  rep.top = longest_minimal_representative(sys, theta);
  for (auto& pair : bruhat_covers(sys, rep.top)) {
    if (!is_minimal_representative(pair.w_prime, theta)) continue;
    const int kappa = coefficient(sys, pair, SignPolicy::MagnitudeOnly).kappa;
    if (kappa % 2 == 0) rep.orientable = false;
    rep.covers.emplace_back(std::move(pair), kappa);
  }
  return rep;
}

inline bool orientable_via_topcell(const RootSystem& sys, const ThetaSubset& theta) {
  return top_cell_report(sys, theta).orientable;
}

// Coefficient k counts W^Theta elements of length k, i.e. dim H_k(F_Theta; Z/2).
inline std::vector<long long> poincare_mod2(const RootSystem& sys, const ThetaSubset& theta) {
  std::vector<long long> poly;
  for (const auto& w : minimal_representatives(sys, theta)) {
    if (static_cast<int>(poly.size()) <= w.length()) poly.resize(w.length() + 1, 0);
    ++poly[w.length()];
  }
  return poly;
}

}  // namespace flaghom
