#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/sln.hpp"
#include "kdirac/weights.hpp"

namespace kdirac {

/// Block-composition parabolic of sl_n: g = l ⊕ u ⊕ ū with u the strictly
/// upper cross-block part, ū the strictly lower, l the block diagonal.
/// The ū basis is prescaled so that (u_i, ubar_j) are exact B-dual pairs.
class ParabolicAlgebra {
 public:
  ParabolicAlgebra(LieAlgebraSln algebra, std::vector<std::size_t> composition)
      : algebra_(std::move(algebra)), composition_(std::move(composition)) {
    const std::size_t n = algebra_.n();
    if (composition_.empty() ||
        std::accumulate(composition_.begin(), composition_.end(), std::size_t{0}) != n)
      throw std::invalid_argument("ParabolicAlgebra: composition must sum to n");
    for (auto part : composition_)
      if (part == 0) throw std::invalid_argument("ParabolicAlgebra: zero part");

    block_of_.resize(n);
    std::size_t pos = 0;
    for (std::size_t b = 0; b < composition_.size(); ++b)
      for (std::size_t k = 0; k < composition_[b]; ++k) block_of_[pos++] = b;

    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (block_of_[i] < block_of_[j])
          u_positions_.emplace_back(i, j);
        else if (block_of_[i] == block_of_[j])
          l_offdiag_.emplace_back(i, j);
      }
  }

  const LieAlgebraSln& algebra() const { return algebra_; }
  const RootSystem& root_system() const { return algebra_.root_system(); }
  const std::vector<std::size_t>& composition() const { return composition_; }
  std::size_t n() const { return algebra_.n(); }
  std::size_t block_of(std::size_t idx) const { return block_of_[idx]; }

  std::size_t dim_u() const { return u_positions_.size(); }
  std::size_t dim_l() const { return l_offdiag_.size() + algebra_.n() - 1; }

  const std::vector<std::pair<std::size_t, std::size_t>>& u_positions() const {
    return u_positions_;
  }

  /// a-th basis vector of u: E_ij at the a-th cross-block position.
  Matrix u_element(std::size_t a) const {
    return algebra_.e_matrix(u_positions_[a].first, u_positions_[a].second);
  }
  /// B-dual basis vector of ū: E_ji / (2n), so B(u_a, ubar_b) = δ_ab.
  Matrix ubar_element(std::size_t a) const {
    return Rational(1, 2 * static_cast<long>(n())) *
           algebra_.e_matrix(u_positions_[a].second, u_positions_[a].first);
  }

  /// Root of u_element(a) in fundamental coordinates.
  Weight u_root(std::size_t a) const {
    return root_system().root(u_positions_[a].first, u_positions_[a].second);
  }
  std::vector<Weight> delta_u() const {
    std::vector<Weight> roots;
    for (std::size_t a = 0; a < dim_u(); ++a) roots.push_back(u_root(a));
    return roots;
  }

  /// l basis: in-block off-diagonal E_ij, then the Cartan H_k.
  std::vector<Matrix> l_basis() const {
    std::vector<Matrix> basis;
    for (const auto& [i, j] : l_offdiag_) basis.push_back(algebra_.e_matrix(i, j));
    for (std::size_t k = 0; k + 1 < n(); ++k) basis.push_back(algebra_.h_matrix(k));
    return basis;
  }

  /// B-dual pairs spanning l; B restricted to l is nondegenerate.
  std::vector<std::pair<Matrix, Matrix>> l_dual_pairs() const {
    std::vector<std::pair<Matrix, Matrix>> pairs;
    const Rational inv2n(1, 2 * static_cast<long>(n()));
    for (const auto& [i, j] : l_offdiag_)
      pairs.emplace_back(algebra_.e_matrix(i, j), inv2n * algebra_.e_matrix(j, i));
    const std::size_t r = n() - 1;
    Matrix gram(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        gram(i, j) = algebra_.killing_form(algebra_.h_matrix(i), algebra_.h_matrix(j));
    const Matrix gram_inv = inverse(gram);
    for (std::size_t i = 0; i < r; ++i) {
      Matrix dual(n(), n());
      for (std::size_t j = 0; j < r; ++j) dual += gram_inv(i, j) * algebra_.h_matrix(j);
      pairs.emplace_back(algebra_.h_matrix(i), dual);
    }
    return pairs;
  }

  bool is_in_l(const Matrix& x) const {
    if (x.rows() != n() || x.cols() != n() || x.trace() != 0) return false;
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < n(); ++j)
        if (block_of_[i] != block_of_[j] && x(i, j) != 0) return false;
    return true;
  }

  /// Coefficients over the u basis; throws when x has entries outside u.
  std::vector<Rational> expand_u(const Matrix& x) const {
    return expand_nilpotent(x, /*upper=*/true);
  }
  /// Coefficients over the scaled ū basis.
  std::vector<Rational> expand_ubar(const Matrix& x) const {
    return expand_nilpotent(x, /*upper=*/false);
  }

  /// Simple-root indices internal to the blocks (the simple roots of l).
  std::vector<std::size_t> levi_simple_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s + 1 < n(); ++s)
      if (block_of_[s] == block_of_[s + 1]) out.push_back(s);
    return out;
  }

  bool is_l_dominant(const Weight& w) const {
    for (auto s : levi_simple_indices())
      if (w[s] < 0) return false;
    return true;
  }

  std::vector<Weight> delta_l_positive() const {
    std::vector<Weight> roots;
    for (const auto& [i, j] : l_offdiag_)
      if (i < j) roots.push_back(root_system().root(i, j));
    return roots;
  }

  Weight rho_g() const { return root_system().rho(); }
  Weight rho_l() const { return root_system().rho_of(delta_l_positive()); }
  Weight rho_u() const { return root_system().rho_of(delta_u()); }
  Weight rho_ubar() const { return -rho_u(); }

  /// dim of the irreducible l-module with highest weight mu: the Weyl formula
  /// on each diagonal block; the central characters contribute factor 1.
  Integer levi_weyl_dim(const Weight& mu) const {
    if (!is_l_dominant(mu)) throw std::invalid_argument("levi_weyl_dim: not l-dominant");
    Integer dim = 1;
    std::size_t offset = 0;
    for (auto part : composition_) {
      if (part >= 2) {
        RootSystem block_rs(part);
        Weight block_mu(part - 1);
        for (std::size_t s = 0; s + 1 < part; ++s) block_mu[s] = mu[offset + s];
        dim *= block_rs.weyl_dim(block_mu);
      }
      offset += part;  // consumes part-1 internal simples plus one crossing
    }
    return dim;
  }

  /// Composition rendered as "n1+n2+...".
  std::string composition_str() const {
    std::string out;
    for (std::size_t i = 0; i < composition_.size(); ++i) {
      if (i) out += "+";
      out += std::to_string(composition_[i]);
    }
    return out;
  }

 private:
  std::vector<Rational> expand_nilpotent(const Matrix& x, bool upper) const {
    if (x.rows() != n() || x.cols() != n()) throw std::invalid_argument("expand: bad shape");
    std::vector<Rational> c(dim_u(), Rational(0));
    Matrix residual = x;
    for (std::size_t a = 0; a < dim_u(); ++a) {
      const auto [i, j] = u_positions_[a];
      if (upper) {
        c[a] = x(i, j);
        residual(i, j) = 0;
      } else {
        c[a] = Rational(2 * static_cast<long>(n())) * x(j, i);
        residual(j, i) = 0;
      }
    }
    if (!residual.is_zero())
      throw std::invalid_argument(upper ? "expand_u: element not in u"
                                        : "expand_ubar: element not in ubar");
    return c;
  }

  LieAlgebraSln algebra_;
  std::vector<std::size_t> composition_;
  std::vector<std::size_t> block_of_;
  std::vector<std::pair<std::size_t, std::size_t>> u_positions_;
  std::vector<std::pair<std::size_t, std::size_t>> l_offdiag_;
};

/// Builds the parabolic for a composition; "2+1" style parsing lives in the CLI.
inline ParabolicAlgebra parabolic_split(const LieAlgebraSln& algebra,
                                        const std::vector<std::size_t>& composition) {
  return ParabolicAlgebra(algebra, composition);
}

/// Parses "n1+n2+...+nk".
inline std::vector<std::size_t> parse_composition(const std::string& text) {
  std::vector<std::size_t> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t plus = text.find('+', start);
    const std::string tok = text.substr(start, plus - start);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("parse_composition: malformed '" + text + "'");
    parts.push_back(static_cast<std::size_t>(std::stoul(tok)));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return parts;
}

}  // namespace kdirac
