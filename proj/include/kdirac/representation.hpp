#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kdirac/linalg.hpp"
#include "kdirac/matrix.hpp"
#include "kdirac/parabolic.hpp"
#include "kdirac/sln.hpp"
#include "kdirac/span.hpp"
#include "kdirac/weights.hpp"

namespace kdirac {

/// A finite-dimensional sl_n-module given by exact action matrices for every
/// algebra basis element, on a basis of h-weight vectors (H acts diagonally).
struct Representation {
  LieAlgebraSln algebra;
  std::size_t dim = 0;
  std::vector<Matrix> action_on_basis;  // indexed like algebra.basis()
  std::vector<Weight> weights;          // h-weight of each module basis vector
  std::optional<Weight> highest_weight;

  const Matrix& action(std::size_t algebra_idx) const { return action_on_basis[algebra_idx]; }

  /// Action of an arbitrary traceless matrix, by expanding over the basis.
  Matrix act(const Matrix& element) const {
    const auto coeffs = algebra.expand(element);
    Matrix out(dim, dim);
    for (std::size_t b = 0; b < coeffs.size(); ++b)
      if (coeffs[b] != 0) out += coeffs[b] * action_on_basis[b];
    return out;
  }

  std::map<Weight, std::vector<std::size_t>> weight_spaces() const {
    std::map<Weight, std::vector<std::size_t>> spaces;
    for (std::size_t i = 0; i < dim; ++i) spaces[weights[i]].push_back(i);
    return spaces;
  }
};

/// Reads weights off the diagonal H-actions; throws when some H is not
/// diagonal on the module basis.
inline void derive_weights(Representation& rep) {
  rep.weights.assign(rep.dim, Weight(rep.algebra.n() - 1));
  for (std::size_t k = 0; k + 1 < rep.algebra.n(); ++k) {
    const Matrix& h = rep.action_on_basis[rep.algebra.h_index(k)];
    for (std::size_t i = 0; i < rep.dim; ++i)
      for (std::size_t j = 0; j < rep.dim; ++j) {
        if (i == j)
          rep.weights[i][k] = h(i, i);
        else if (h(i, j) != 0)
          throw std::runtime_error("derive_weights: H action not diagonal");
      }
  }
}

inline Representation trivial_rep(const LieAlgebraSln& a) {
  Representation rep{a, 1, std::vector<Matrix>(a.dim(), Matrix(1, 1)), {}, Weight(a.n() - 1)};
  derive_weights(rep);
  return rep;
}

inline Representation standard_rep(const LieAlgebraSln& a) {
  Representation rep{a};
  rep.dim = a.n();
  for (std::size_t b = 0; b < a.dim(); ++b) rep.action_on_basis.push_back(a.basis_element(b));
  derive_weights(rep);
  Weight hw(a.n() - 1);
  hw[0] = 1;
  rep.highest_weight = hw;
  return rep;
}

/// Λ^k of the standard representation; basis indexed by k-subsets of
/// {0..n-1} in lexicographic order, acted on by derivations.
inline Representation exterior_power_std(const LieAlgebraSln& a, std::size_t k) {
  const std::size_t n = a.n();
  if (k == 0 || k >= n) throw std::invalid_argument("exterior_power_std: need 0 < k < n");
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> cur;
  const std::function<void(std::size_t)> gen = [&](std::size_t from) {
    if (cur.size() == k) {
      subsets.push_back(cur);
      return;
    }
    for (std::size_t v = from; v < n; ++v) {
      cur.push_back(v);
      gen(v + 1);
      cur.pop_back();
    }
  };
  gen(0);
  std::map<std::vector<std::size_t>, std::size_t> index_of;
  for (std::size_t i = 0; i < subsets.size(); ++i) index_of[subsets[i]] = i;

  Representation rep{a};
  rep.dim = subsets.size();
  for (std::size_t b = 0; b < a.dim(); ++b) {
    const Matrix& x = a.basis_element(b);
    Matrix m(rep.dim, rep.dim);
    for (std::size_t col = 0; col < subsets.size(); ++col) {
      const auto& A = subsets[col];
      for (std::size_t pos = 0; pos < k; ++pos)
        for (std::size_t out = 0; out < n; ++out) {
          const Rational coeff = x(out, A[pos]);
          if (coeff == 0) continue;
          if (out == A[pos]) {
            m(col, col) += coeff;
            continue;
          }
          const auto [sign, target] = substitute_in_monomial(A, pos, out);
          if (sign != 0) m(index_of.at(target), col) += Rational(sign) * coeff;
        }
    }
    rep.action_on_basis.push_back(std::move(m));
  }
  derive_weights(rep);
  Weight hw(a.n() - 1);
  hw[k - 1] = 1;
  rep.highest_weight = hw;
  return rep;
}

/// Tensor product with index (i,j) -> i*dim(b)+j and coproduct action
/// X ⊗ 1 + 1 ⊗ X.
inline Representation tensor(const Representation& r1, const Representation& r2) {
  Representation rep{r1.algebra};
  rep.dim = r1.dim * r2.dim;
  const Matrix i1 = Matrix::identity(r1.dim), i2 = Matrix::identity(r2.dim);
  for (std::size_t b = 0; b < rep.algebra.dim(); ++b)
    rep.action_on_basis.push_back(Matrix::kronecker(r1.action_on_basis[b], i2) +
                                  Matrix::kronecker(i1, r2.action_on_basis[b]));
  derive_weights(rep);
  return rep;
}

/// The irreducible module of highest weight λ, cut out of a tensor product of
/// exterior powers of the standard representation: locate the λ-highest
/// weight vector (joint kernel of the simple raising operators inside the
/// λ-weight space) and generate its cyclic span with the simple lowering
/// operators. The result is checked against the Weyl dimension formula.
inline Representation build_irrep(const LieAlgebraSln& a, const Weight& lambda) {
  const std::size_t r = a.n() - 1;
  if (lambda.rank() != r) throw std::invalid_argument("build_irrep: rank mismatch");
  if (!lambda.is_dominant() || !lambda.is_integral())
    throw std::invalid_argument("build_irrep: weight must be dominant integral");
  if (lambda.is_zero()) return trivial_rep(a);

  std::optional<Representation> ambient;
  for (std::size_t s = 0; s < r; ++s) {
    const long mult = to_long(lambda[s]);
    if (mult == 0) continue;
    const Representation factor = exterior_power_std(a, s + 1);
    for (long c = 0; c < mult; ++c)
      ambient = ambient ? tensor(*ambient, factor) : factor;
  }

  // highest weight vector: kernel of the stacked simple raisings on the
  // λ-weight space (the Cartan component, so it is unique up to scale)
  std::vector<std::size_t> lambda_idx;
  for (std::size_t i = 0; i < ambient->dim; ++i)
    if (ambient->weights[i] == lambda) lambda_idx.push_back(i);
  if (lambda_idx.empty()) throw std::runtime_error("build_irrep: missing λ weight space");

  Matrix stacked(0, lambda_idx.size());
  for (std::size_t s = 0; s < r; ++s) {
    const Matrix& raise = ambient->action_on_basis[ambient->algebra.e_index(s, s + 1)];
    Matrix restricted(ambient->dim, lambda_idx.size());
    for (std::size_t c = 0; c < lambda_idx.size(); ++c)
      for (std::size_t i = 0; i < ambient->dim; ++i) restricted(i, c) = raise(i, lambda_idx[c]);
    stacked = stacked.rows() ? Matrix::vcat(stacked, restricted) : restricted;
  }
  const SubspaceBasis hw_local = kernel_basis(stacked);
  if (hw_local.dim() != 1)
    throw std::runtime_error("build_irrep: highest weight vector not unique");

  std::vector<Rational> seed(ambient->dim, Rational(0));
  for (std::size_t c = 0; c < lambda_idx.size(); ++c) seed[lambda_idx[c]] = hw_local.vectors(c, 0);

  GradedSpan span(ambient->weights);
  span.add(seed);
  std::vector<std::vector<Rational>> queue{seed};
  std::vector<const Matrix*> lowerings;
  for (std::size_t s = 0; s < r; ++s)
    lowerings.push_back(&ambient->action_on_basis[ambient->algebra.e_index(s + 1, s)]);
  while (!queue.empty()) {
    const std::vector<Rational> v = std::move(queue.back());
    queue.pop_back();
    for (const Matrix* low : lowerings) {
      std::vector<Rational> image(ambient->dim, Rational(0));
      for (std::size_t i = 0; i < ambient->dim; ++i)
        for (std::size_t j = 0; j < ambient->dim; ++j)
          if ((*low)(i, j) != 0 && v[j] != 0) image[i] += (*low)(i, j) * v[j];
      if (span.add(image)) queue.push_back(std::move(image));
    }
  }

  const Matrix basis = span.basis_columns();
  Representation rep{a};
  rep.dim = basis.cols();
  if (Integer(rep.dim) != a.root_system().weyl_dim(lambda))
    throw std::runtime_error("build_irrep: dimension disagrees with the Weyl formula");
  for (std::size_t b = 0; b < a.dim(); ++b)
    rep.action_on_basis.push_back(
        solve_full_column_rank(basis, ambient->action_on_basis[b] * basis));
  rep.weights = span.column_weights();
  derive_weights(rep);  // cross-checks diagonality against span weights
  rep.highest_weight = lambda;
  return rep;
}

/// Casimir Σ_i action(b_i)·action(d_i) over B-dual pairs of g or of the Levi.
inline Matrix casimir_matrix(const Representation& rep,
                             const std::vector<std::pair<Matrix, Matrix>>& dual_pairs) {
  Matrix out(rep.dim, rep.dim);
  for (const auto& [b, d] : dual_pairs) out += rep.act(b) * rep.act(d);
  return out;
}

}  // namespace kdirac
