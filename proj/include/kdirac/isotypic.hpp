#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kdirac/linalg.hpp"
#include "kdirac/matrix.hpp"
#include "kdirac/representation.hpp"
#include "kdirac/span.hpp"
#include "kdirac/spin.hpp"

namespace kdirac {

/// One isotypic component of a completely reducible module: all constituents
/// of highest weight mu, with the projector along the other components.
struct IsotypicBlock {
  Weight mu;
  SubspaceBasis basis;
  Matrix hw_vectors;  // ambient x multiplicity, the highest weight vectors
  Matrix projector;
  std::size_t multiplicity = 0;
};

/// Decomposes a module with diagonal Cartan action into isotypic components:
/// highest weight vectors are the joint kernel of the raising operators inside
/// each weight space, components are generated by the lowering operators, and
/// projectors are cut along the resulting direct sum. Blocks are ordered
/// lexicographically by highest weight.
inline std::vector<IsotypicBlock> isotypic_decomposition(
    const std::vector<Matrix>& raising_ops, const std::vector<Matrix>& lowering_ops,
    const std::vector<Weight>& coordinate_weights,
    const std::function<Integer(const Weight&)>& irrep_dim) {
  const std::size_t ambient = coordinate_weights.size();
  std::map<Weight, std::vector<std::size_t>> weight_spaces;
  for (std::size_t i = 0; i < ambient; ++i) weight_spaces[coordinate_weights[i]].push_back(i);

  std::vector<IsotypicBlock> blocks;
  for (const auto& [w, idx] : weight_spaces) {
    // joint kernel of the raising operators on this weight space
    Matrix stacked(raising_ops.size() * ambient, idx.size());
    for (std::size_t r = 0; r < raising_ops.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t i = 0; i < ambient; ++i)
          stacked(r * ambient + i, c) = raising_ops[r](i, idx[c]);
    const SubspaceBasis hw_local =
        raising_ops.empty() ? SubspaceBasis::full(idx.size()) : kernel_basis(stacked);
    if (hw_local.dim() == 0) continue;

    IsotypicBlock block;
    block.mu = w;
    block.multiplicity = hw_local.dim();
    block.hw_vectors = Matrix(ambient, hw_local.dim());
    for (std::size_t c = 0; c < hw_local.dim(); ++c)
      for (std::size_t k = 0; k < idx.size(); ++k)
        block.hw_vectors(idx[k], c) = hw_local.vectors(k, c);

    // generate the component from all highest weight vectors
    GradedSpan span(coordinate_weights);
    std::vector<std::vector<Rational>> queue;
    for (std::size_t c = 0; c < hw_local.dim(); ++c) {
      std::vector<Rational> v(ambient, Rational(0));
      for (std::size_t i = 0; i < ambient; ++i) v[i] = block.hw_vectors(i, c);
      span.add(v);
      queue.push_back(std::move(v));
    }
    while (!queue.empty()) {
      const std::vector<Rational> v = std::move(queue.back());
      queue.pop_back();
      for (const Matrix& low : lowering_ops) {
        std::vector<Rational> image(ambient, Rational(0));
        for (std::size_t i = 0; i < ambient; ++i)
          for (std::size_t j = 0; j < ambient; ++j)
            if (low(i, j) != 0 && v[j] != 0) image[i] += low(i, j) * v[j];
        if (span.add(image)) queue.push_back(std::move(image));
      }
    }
    block.basis = SubspaceBasis{ambient, span.basis_columns()};
    if (Integer(block.basis.dim()) !=
        Integer(block.multiplicity) * irrep_dim(block.mu))
      throw std::runtime_error("isotypic_decomposition: component dimension mismatch");
    blocks.push_back(std::move(block));
  }

  std::size_t total = 0;
  for (const auto& b : blocks) total += b.basis.dim();
  if (total != ambient)
    throw std::runtime_error("isotypic_decomposition: components do not exhaust the space");

  // projectors along the direct sum, one inversion for all blocks
  Matrix m(ambient, 0);
  for (const auto& b : blocks) m = Matrix::hcat(m, b.basis.vectors);
  Matrix m_inv;
  try {
    m_inv = inverse(m);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("isotypic_decomposition: decomposition failed (non-semisimple?)");
  }
  std::size_t offset = 0;
  for (auto& b : blocks) {
    Matrix rows(b.basis.dim(), ambient);
    for (std::size_t i = 0; i < b.basis.dim(); ++i)
      for (std::size_t j = 0; j < ambient; ++j) rows(i, j) = m_inv(offset + i, j);
    b.projector = b.basis.vectors * rows;
    offset += b.basis.dim();
  }
  return blocks;
}

/// Isotypic decomposition of a constructed module under g itself.
inline std::vector<IsotypicBlock> isotypic_decomposition_g(const Representation& rep) {
  const LieAlgebraSln& a = rep.algebra;
  std::vector<Matrix> raisers, lowerings;
  for (std::size_t s = 0; s + 1 < a.n(); ++s) {
    raisers.push_back(rep.action_on_basis[a.e_index(s, s + 1)]);
    lowerings.push_back(rep.action_on_basis[a.e_index(s + 1, s)]);
  }
  const RootSystem& rs = a.root_system();
  return isotypic_decomposition(raisers, lowerings, rep.weights,
                                [&rs](const Weight& w) { return rs.weyl_dim(w); });
}

/// Isotypic decomposition of V ⊗ S under the Levi factor, through the
/// Σ-action (module action on V, adjoint action on S).
inline std::vector<IsotypicBlock> isotypic_decomposition_levi(const Representation& rep,
                                                              const SpinModule& spin) {
  const ParabolicAlgebra& p = spin.parabolic();
  const LieAlgebraSln& a = p.algebra();
  std::vector<Matrix> raisers, lowerings;
  for (auto s : p.levi_simple_indices()) {
    raisers.push_back(sigma_action(rep, spin, a.e_matrix(s, s + 1)));
    lowerings.push_back(sigma_action(rep, spin, a.e_matrix(s + 1, s)));
  }
  return isotypic_decomposition(raisers, lowerings, tensor_weights(rep, spin),
                                [&p](const Weight& w) { return p.levi_weyl_dim(w); });
}

}  // namespace kdirac
