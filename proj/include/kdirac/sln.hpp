#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/matrix.hpp"
#include "kdirac/weights.hpp"

namespace kdirac {

/// The Lie algebra sl_n over the rationals, with its matrix basis
/// {E_ij : i != j} ∪ {H_k = E_kk − E_{k+1,k+1}} and the invariant form
/// B(X,Y) = 2n·trace(XY) extending the Killing form.
class LieAlgebraSln {
 public:
  explicit LieAlgebraSln(std::size_t n) : n_(n), root_system_(n) {
    if (n < 2) throw std::invalid_argument("LieAlgebraSln: need n >= 2");
    // basis order: E_ij for i != j lexicographically, then H_1..H_{n-1}
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        eij_index_.emplace_back(i, j);
        basis_.push_back(e_matrix(i, j));
        labels_.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      }
    for (std::size_t k = 0; k + 1 < n; ++k) {
      basis_.push_back(h_matrix(k));
      labels_.push_back("H" + std::to_string(k + 1));
    }
  }

  std::size_t n() const { return n_; }
  std::size_t dim() const { return n_ * n_ - 1; }
  const RootSystem& root_system() const { return root_system_; }

  const std::vector<Matrix>& basis() const { return basis_; }
  const Matrix& basis_element(std::size_t idx) const { return basis_[idx]; }
  const std::string& label(std::size_t idx) const { return labels_[idx]; }

  Matrix e_matrix(std::size_t i, std::size_t j) const {
    Matrix m(n_, n_);
    m(i, j) = 1;
    return m;
  }
  /// H_{k+1} = E_{k,k} − E_{k+1,k+1} (0-based k).
  Matrix h_matrix(std::size_t k) const {
    Matrix m(n_, n_);
    m(k, k) = 1;
    m(k + 1, k + 1) = -1;
    return m;
  }

  std::size_t e_index(std::size_t i, std::size_t j) const {
    for (std::size_t a = 0; a < eij_index_.size(); ++a)
      if (eij_index_[a] == std::make_pair(i, j)) return a;
    throw std::invalid_argument("e_index: bad pair");
  }
  std::size_t h_index(std::size_t k) const { return eij_index_.size() + k; }

  static Matrix bracket(const Matrix& x, const Matrix& y) { return commutator(x, y); }

  /// B(X,Y) = 2n·trace(XY).
  Rational killing_form(const Matrix& x, const Matrix& y) const {
    return Rational(2 * static_cast<long>(n_)) * (x * y).trace();
  }

  /// Coefficients of a traceless matrix over the fixed basis.
  std::vector<Rational> expand(const Matrix& x) const {
    if (x.rows() != n_ || x.cols() != n_) throw std::invalid_argument("expand: bad shape");
    if (x.trace() != 0) throw std::invalid_argument("expand: matrix not traceless");
    std::vector<Rational> c(dim(), Rational(0));
    for (std::size_t a = 0; a < eij_index_.size(); ++a)
      c[a] = x(eij_index_[a].first, eij_index_[a].second);
    // diagonal part: diag = Σ c_k diag(H_k) solved by prefix sums
    Rational prefix = 0;
    for (std::size_t k = 0; k + 1 < n_; ++k) {
      prefix += x(k, k);
      c[h_index(k)] = prefix;
    }
    return c;
  }

  /// B-dual basis pairs (b_i, d_i) with B(b_i, d_j) = δ_ij, spanning sl_n.
  const std::vector<std::pair<Matrix, Matrix>>& dual_pairs() const {
    if (dual_pairs_.empty()) {
      const Rational inv2n(1, 2 * static_cast<long>(n_));
      for (const auto& [i, j] : eij_index_)
        dual_pairs_.emplace_back(e_matrix(i, j), inv2n * e_matrix(j, i));
      // Cartan part: invert the Gram matrix of B on the H basis
      const std::size_t r = n_ - 1;
      Matrix gram(r, r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) gram(i, j) = killing_form(h_matrix(i), h_matrix(j));
      const Matrix gram_inv = inverse(gram);
      for (std::size_t i = 0; i < r; ++i) {
        Matrix dual(n_, n_);
        for (std::size_t j = 0; j < r; ++j) dual += gram_inv(i, j) * h_matrix(j);
        dual_pairs_.emplace_back(h_matrix(i), dual);
      }
    }
    return dual_pairs_;
  }

 private:
  std::size_t n_;
  RootSystem root_system_;
  std::vector<std::pair<std::size_t, std::size_t>> eij_index_;
  std::vector<Matrix> basis_;
  std::vector<std::string> labels_;
  mutable std::vector<std::pair<Matrix, Matrix>> dual_pairs_;
};

}  // namespace kdirac
