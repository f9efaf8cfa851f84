#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kdirac/matrix.hpp"
#include "kdirac/weights.hpp"

namespace kdirac {

/// Sign bookkeeping for derivation actions on wedge monomials: the term with
/// basis index `out` substituted for the element at position `pos` of the
/// sorted monomial. Returns (sign, sorted result), sign 0 when the result
/// has a repeated factor.
inline std::pair<int, std::vector<std::size_t>> substitute_in_monomial(
    const std::vector<std::size_t>& sorted, std::size_t pos, std::size_t out) {
  std::vector<std::size_t> rest;
  rest.reserve(sorted.size());
  for (std::size_t t = 0; t < sorted.size(); ++t)
    if (t != pos) rest.push_back(sorted[t]);
  int sign = (pos % 2 == 0) ? 1 : -1;  // move the slot to the front
  std::size_t insert_at = 0;
  for (const auto v : rest) {
    if (v == out) return {0, {}};
    if (v < out) ++insert_at;
  }
  if (insert_at % 2 == 1) sign = -sign;  // move `out` from the front into place
  rest.insert(rest.begin() + static_cast<long>(insert_at), out);
  return {sign, rest};
}

/// Incrementally accumulated span of weight-homogeneous vectors. Every
/// ambient coordinate carries a fixed weight; added vectors must be supported
/// on a single weight. Each weight group is kept in reduced echelon form, so
/// the extracted basis is canonical regardless of insertion order.
class GradedSpan {
 public:
  explicit GradedSpan(const std::vector<Weight>& coordinate_weights)
      : coord_weights_(coordinate_weights) {
    for (std::size_t i = 0; i < coord_weights_.size(); ++i)
      groups_[coord_weights_[i]].ambient_indices.push_back(i);
  }

  std::size_t ambient_dim() const { return coord_weights_.size(); }

  std::size_t dim() const {
    std::size_t d = 0;
    for (const auto& [w, g] : groups_) d += g.rows.size();
    return d;
  }

  /// Adds a vector; returns false when it is already in the span. Throws if
  /// the vector mixes weights.
  bool add(const std::vector<Rational>& vec) {
    if (vec.size() != ambient_dim()) throw std::invalid_argument("GradedSpan::add: bad size");
    // locate the weight from the first nonzero coordinate
    std::size_t first = ambient_dim();
    for (std::size_t i = 0; i < vec.size(); ++i)
      if (vec[i] != 0) {
        first = i;
        break;
      }
    if (first == ambient_dim()) return false;  // zero vector
    const Weight& w = coord_weights_[first];
    Group& g = groups_.at(w);

    std::vector<Rational> local(g.ambient_indices.size(), Rational(0));
    for (std::size_t k = 0; k < g.ambient_indices.size(); ++k)
      local[k] = vec[g.ambient_indices[k]];
    // verify homogeneity: all support must lie in this weight group
    {
      Rational support_mass = 0;
      for (const auto& c : local) support_mass += c * c;
      Rational total_mass = 0;
      for (const auto& c : vec) total_mass += c * c;
      if (support_mass != total_mass)
        throw std::invalid_argument("GradedSpan::add: vector mixes weights");
    }

    for (std::size_t r = 0; r < g.rows.size(); ++r) {
      const Rational f = local[g.pivots[r]];
      if (f == 0) continue;
      for (std::size_t k = 0; k < local.size(); ++k) local[k] -= f * g.rows[r][k];
    }
    std::size_t pivot = local.size();
    for (std::size_t k = 0; k < local.size(); ++k)
      if (local[k] != 0) {
        pivot = k;
        break;
      }
    if (pivot == local.size()) return false;

    const Rational inv = 1 / local[pivot];
    for (auto& c : local) c *= inv;
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
      const Rational f = g.rows[r][pivot];
      if (f == 0) continue;
      for (std::size_t k = 0; k < local.size(); ++k) g.rows[r][k] -= f * local[k];
    }
    // insert sorted by pivot
    std::size_t at = 0;
    while (at < g.pivots.size() && g.pivots[at] < pivot) ++at;
    g.rows.insert(g.rows.begin() + static_cast<long>(at), std::move(local));
    g.pivots.insert(g.pivots.begin() + static_cast<long>(at), pivot);
    return true;
  }

  /// Basis as ambient columns, groups ordered by weight (highest first).
  Matrix basis_columns() const {
    Matrix out(ambient_dim(), dim());
    std::size_t col = 0;
    for (auto it = groups_.rbegin(); it != groups_.rend(); ++it) {
      const Group& g = it->second;
      for (const auto& row : g.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out(g.ambient_indices[k], col) = row[k];
        ++col;
      }
    }
    return out;
  }

  /// Weight of each basis column, aligned with basis_columns().
  std::vector<Weight> column_weights() const {
    std::vector<Weight> out;
    for (auto it = groups_.rbegin(); it != groups_.rend(); ++it)
      for (std::size_t r = 0; r < it->second.rows.size(); ++r) out.push_back(it->first);
    return out;
  }

 private:
  struct Group {
    std::vector<std::size_t> ambient_indices;
    std::vector<std::vector<Rational>> rows;  // reduced echelon, local coords
    std::vector<std::size_t> pivots;
  };

  std::vector<Weight> coord_weights_;
  std::map<Weight, Group> groups_;
};

}  // namespace kdirac
