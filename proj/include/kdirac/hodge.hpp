#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/dirac.hpp"
#include "kdirac/isotypic.hpp"
#include "kdirac/linalg.hpp"
#include "kdirac/matrix.hpp"
#include "kdirac/representation.hpp"
#include "kdirac/spin.hpp"

namespace kdirac {

/// c(λ,μ) = (μ+ρ(ū)+ρ_l, μ+ρ(ū)+ρ_l) − (λ+ρ_g, λ+ρ_g); the scalar by which
/// D² acts on the μ-isotypic part of V(λ) ⊗ S.
inline Rational scalar_c(const ParabolicAlgebra& p, const Weight& lambda, const Weight& mu) {
  const RootSystem& rs = p.root_system();
  return rs.norm_sq(mu + p.rho_ubar() + p.rho_l()) - rs.norm_sq(lambda + p.rho_g());
}

/// Isotypic block of V(λ) ⊗ S under the Levi, decorated with c(λ,μ).
struct DiracBlock {
  Weight mu;
  SubspaceBasis basis;
  Matrix hw_vectors;
  Matrix projector;
  std::size_t multiplicity = 0;
  Rational c;
};

struct DiracBlockData {
  Weight lambda;
  std::vector<DiracBlock> blocks;
  std::vector<std::size_t> i_set;  // block indices with c != 0
  std::vector<std::size_t> j_set;  // block indices with c == 0
};

/// Decomposes V ⊗ S under the Levi and verifies that D² is exactly
/// c(λ,μ)·id on every block; a mismatch is a hard failure.
inline DiracBlockData isotypic_blocks(const Representation& rep, const SpinModule& spin,
                                      const Matrix& dirac_squared) {
  if (!rep.highest_weight)
    throw std::invalid_argument("isotypic_blocks: representation has no highest weight label");
  DiracBlockData data;
  data.lambda = *rep.highest_weight;
  for (auto& block : isotypic_decomposition_levi(rep, spin)) {
    DiracBlock db{std::move(block.mu), std::move(block.basis), std::move(block.hw_vectors),
                  std::move(block.projector), block.multiplicity, Rational(0)};
    db.c = scalar_c(spin.parabolic(), data.lambda, db.mu);
    if (dirac_squared * db.basis.vectors != db.c * db.basis.vectors)
      throw std::runtime_error("isotypic_blocks: D^2 is not c(λ,μ)·id on block μ=" +
                               db.mu.str());
    (db.c != 0 ? data.i_set : data.j_set).push_back(data.blocks.size());
    data.blocks.push_back(std::move(db));
  }
  return data;
}

inline Matrix blocks_span(const DiracBlockData& data, const std::vector<std::size_t>& which) {
  if (data.blocks.empty()) return Matrix(0, 0);
  Matrix out(data.blocks.front().basis.ambient_dim, 0);
  for (auto idx : which) out = Matrix::hcat(out, data.blocks[idx].basis.vectors);
  return out;
}

/// The six subspaces of the Hodge-type decomposition and the projector onto
/// the harmonics, with every identity checked exactly.
struct HodgeDecomposition {
  SubspaceBasis ker_D, im_D, ker_d, im_d, ker_del, im_del;
  Matrix harmonic_projector;  // onto Ker D along Im D
  bool direct_sum_vs = false;       // V⊗S = Ker D ⊕ Im D
  bool ker_is_intersection = false; // Ker D = Ker d ∩ Ker ∂
  bool ker_d_split = false;         // Ker d = Ker D ⊕ Im d
  bool ker_del_split = false;       // Ker ∂ = Ker D ⊕ Im ∂
  bool im_split = false;            // Im D = Im d ⊕ Im ∂
  bool d2_on_im_d = false;          // D²|_{Im d} = 2d∂, bijective
  bool d2_on_im_del = false;        // D²|_{Im ∂} = 2∂d, bijective

  bool all_ok() const {
    return direct_sum_vs && ker_is_intersection && ker_d_split && ker_del_split && im_split &&
           d2_on_im_d && d2_on_im_del;
  }
};

inline bool is_direct_sum_equal(const Matrix& a, const Matrix& b, const Matrix& whole) {
  if (a.cols() + b.cols() != rank(whole)) return false;
  if (intersect_spans(a, b).dim() != 0) return false;
  return same_span(Matrix::hcat(a, b), whole);
}

inline HodgeDecomposition hodge_decompose(const Matrix& dirac, const Matrix& d,
                                          const Matrix& del) {
  HodgeDecomposition h;
  h.ker_D = kernel_basis(dirac);
  h.im_D = image_basis(dirac);
  h.ker_d = kernel_basis(d);
  h.im_d = image_basis(d);
  h.ker_del = kernel_basis(del);
  h.im_del = image_basis(del);

  const std::size_t n = dirac.rows();
  h.direct_sum_vs = (h.ker_D.dim() + h.im_D.dim() == n) &&
                    intersect_spans(h.ker_D.vectors, h.im_D.vectors).dim() == 0;
  h.ker_is_intersection =
      same_span(intersect_spans(h.ker_d.vectors, h.ker_del.vectors).vectors, h.ker_D.vectors);
  h.ker_d_split = is_direct_sum_equal(h.ker_D.vectors, h.im_d.vectors, h.ker_d.vectors);
  h.ker_del_split = is_direct_sum_equal(h.ker_D.vectors, h.im_del.vectors, h.ker_del.vectors);
  h.im_split = is_direct_sum_equal(h.im_d.vectors, h.im_del.vectors, h.im_D.vectors);

  const Matrix d2 = dirac * dirac;
  const auto bijective_restriction = [&](const SubspaceBasis& sub, const Matrix& twice) {
    const Matrix on_sub = d2 * sub.vectors;
    if (on_sub != twice * sub.vectors) return false;
    if (rank(on_sub) != sub.dim()) return false;       // injective on the subspace
    return span_contains(sub.vectors, on_sub);         // lands back inside it
  };
  h.d2_on_im_d = bijective_restriction(h.im_d, Rational(2) * (d * del));
  h.d2_on_im_del = bijective_restriction(h.im_del, Rational(2) * (del * d));

  if (h.direct_sum_vs) h.harmonic_projector = projector_along(h.ker_D, h.im_D);
  return h;
}

inline bool verify_j_blocks_span_kernel(const DiracBlockData& data, const HodgeDecomposition& h) {
  return same_span(blocks_span(data, data.j_set), h.ker_D.vectors);
}
inline bool verify_i_blocks_span_image(const DiracBlockData& data, const HodgeDecomposition& h) {
  return same_span(blocks_span(data, data.i_set), h.im_D.vectors);
}

/// T = Σ_{μ ∈ I(λ)} c(λ,μ)^{-1} Q(μ): inverse of D² on Im D, zero on Ker D.
inline GradedOperator splitting_operator(const DiracBlockData& data) {
  if (data.blocks.empty()) return GradedOperator{Matrix(0, 0), 0};
  const std::size_t n = data.blocks.front().basis.ambient_dim;
  Matrix t(n, n);
  for (auto idx : data.i_set) t += (1 / data.blocks[idx].c) * data.blocks[idx].projector;
  return GradedOperator{std::move(t), 0};
}

inline bool commutes_with_all(const Matrix& m, const std::vector<Matrix>& ops) {
  for (const auto& op : ops)
    if (m * op != op * m) return false;
  return true;
}

/// Σ-action matrices of the whole Levi basis on V ⊗ S.
inline std::vector<Matrix> levi_sigma_actions(const Representation& rep, const SpinModule& spin) {
  std::vector<Matrix> out;
  for (const auto& x : spin.parabolic().l_basis()) out.push_back(sigma_action(rep, spin, x));
  return out;
}

struct SplittingOperators {
  Matrix t;        // = T
  Matrix sigma_d;  // 2d∂T: projection of Ker d onto Im d along Ker D
  Matrix sigma_del;
  bool t_projection = false;   // D²T = TD² = (TD²)²
  bool t_commutes = false;     // with d, ∂ and the Levi action
  bool sigma_d_ok = false;
  bool sigma_del_ok = false;
  bool all_ok() const { return t_projection && t_commutes && sigma_d_ok && sigma_del_ok; }
};

/// Builds T, σ_d = 2d∂T and σ_∂ = 2∂dT and checks: idempotence, exact images
/// Im d and Im ∂, degree preservation, Levi equivariance, and that every
/// (co)boundary is fixed (σ_d·d = d, σ_∂·∂ = ∂).
inline SplittingOperators main_theorem_splittings(const Representation& rep,
                                                  const SpinModule& spin,
                                                  const DiracBlockData& blocks,
                                                  const Matrix& dirac, const Matrix& d,
                                                  const Matrix& del,
                                                  const HodgeDecomposition& h) {
  SplittingOperators s;
  s.t = splitting_operator(blocks).matrix;
  const Matrix d2 = dirac * dirac;
  const Matrix d2t = d2 * s.t;
  s.t_projection = (d2t == s.t * d2) && (d2t * d2t == d2t);

  const auto l_ops = levi_sigma_actions(rep, spin);
  s.t_commutes = commutes_with_all(s.t, {d, del}) && commutes_with_all(s.t, l_ops);

  s.sigma_d = Rational(2) * (d * (del * s.t));
  s.sigma_del = Rational(2) * (del * (d * s.t));

  const auto check_sigma = [&](const Matrix& sigma, const Matrix& differential,
                               const SubspaceBasis& image) {
    if (sigma * sigma != sigma) return false;
    if (canonical_span(sigma) != canonical_span(image.vectors)) return false;
    if (!has_degree_shift(spin, rep.dim, sigma, 0)) return false;
    if (!commutes_with_all(sigma, l_ops)) return false;
    return sigma * differential == differential;  // splits the inclusion
  };
  s.sigma_d_ok = check_sigma(s.sigma_d, d, h.im_d);
  s.sigma_del_ok = check_sigma(s.sigma_del, del, h.im_del);
  return s;
}

// ---------------------------------------------------------------------------
// Cohomology tables
// ---------------------------------------------------------------------------

struct CohomologyRow {
  std::size_t degree = 0;
  std::size_t dim = 0;
  std::vector<std::pair<Weight, std::size_t>> weights;  // (μ, multiplicity), lex order
};

struct CohomologyTable {
  std::string variant;  // "u-homology", "ubar-cohomology" or "ker-D"
  std::vector<CohomologyRow> rows;

  std::size_t total_dim() const {
    std::size_t t = 0;
    for (const auto& r : rows) t += r.dim;
    return t;
  }
  bool same_content(const CohomologyTable& o) const {
    if (rows.size() != o.rows.size()) return false;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (rows[k].dim != o.rows[k].dim || rows[k].weights != o.rows[k].weights) return false;
    return true;
  }
};

inline std::vector<std::vector<std::size_t>> degree_index_sets(const SpinModule& spin,
                                                               std::size_t dim_v) {
  std::vector<std::vector<std::size_t>> out(spin.dim_u() + 1);
  for (std::size_t s = 0; s < spin.dim(); ++s)
    for (std::size_t v = 0; v < dim_v; ++v) out[spin.degree(s)].push_back(s * dim_v + v);
  return out;
}

inline Matrix restrict_columns(const Matrix& m, const std::vector<std::size_t>& idx) {
  Matrix out(m.rows(), idx.size());
  for (std::size_t c = 0; c < idx.size(); ++c)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, c) = m(i, idx[c]);
  return out;
}

/// Lifts a local kernel (coordinates idx) back into the ambient space.
inline Matrix lift_columns(const Matrix& local, const std::vector<std::size_t>& idx,
                           std::size_t ambient) {
  Matrix out(ambient, local.cols());
  for (std::size_t c = 0; c < local.cols(); ++c)
    for (std::size_t k = 0; k < idx.size(); ++k) out(idx[k], c) = local(k, c);
  return out;
}

/// Multiplicity of the Levi type μ inside the l-submodule spanned by `span`:
/// the dimension of its intersection with the ambient highest weight vectors.
inline std::size_t multiplicity_in(const Matrix& span, const DiracBlock& block) {
  if (span.cols() == 0) return 0;
  return intersect_spans(span, block.hw_vectors).dim();
}

inline std::vector<std::pair<Weight, std::size_t>> weights_of_quotient(
    const Matrix& ker_span, const Matrix& im_span, const DiracBlockData& blocks) {
  std::vector<std::pair<Weight, std::size_t>> out;
  for (const auto& b : blocks.blocks) {
    const long mult = static_cast<long>(multiplicity_in(ker_span, b)) -
                      static_cast<long>(multiplicity_in(im_span, b));
    if (mult > 0) out.emplace_back(b.mu, static_cast<std::size_t>(mult));
  }
  return out;
}

enum class HomologyVariant { u_homology, ubar_cohomology };

/// Graded dimensions and Levi highest weights of H_•(u,V) (from ∂) or
/// H^•(ū,V) (from d), by exact rank computations per degree.
inline CohomologyTable cohomology(const Representation& rep, const SpinModule& spin,
                                  const Matrix& differential, HomologyVariant variant,
                                  const DiracBlockData& blocks) {
  const auto degs = degree_index_sets(spin, rep.dim);
  const std::size_t ambient = rep.dim * spin.dim();
  CohomologyTable table;
  table.variant = variant == HomologyVariant::u_homology ? "u-homology" : "ubar-cohomology";
  for (std::size_t k = 0; k <= spin.dim_u(); ++k) {
    const Matrix at_k = restrict_columns(differential, degs[k]);
    const Matrix ker_local = kernel_basis(at_k).vectors;
    const Matrix ker_span = lift_columns(ker_local, degs[k], ambient);

    // incoming differential: from degree k+1 for ∂, from k−1 for d
    Matrix im_span(ambient, 0);
    if (variant == HomologyVariant::u_homology && k + 1 <= spin.dim_u())
      im_span = image_basis(restrict_columns(differential, degs[k + 1])).vectors;
    else if (variant == HomologyVariant::ubar_cohomology && k > 0)
      im_span = image_basis(restrict_columns(differential, degs[k - 1])).vectors;

    CohomologyRow row;
    row.degree = k;
    row.dim = ker_span.cols() - im_span.cols();
    row.weights = weights_of_quotient(ker_span, im_span, blocks);
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Harmonics table: Ker D is graded, so its degree-k slice is the kernel of
/// D restricted to degree k.
inline CohomologyTable harmonics_table(const Representation& rep, const SpinModule& spin,
                                       const Matrix& dirac, const DiracBlockData& blocks) {
  const auto degs = degree_index_sets(spin, rep.dim);
  const std::size_t ambient = rep.dim * spin.dim();
  CohomologyTable table;
  table.variant = "ker-D";
  for (std::size_t k = 0; k <= spin.dim_u(); ++k) {
    const Matrix ker_local = kernel_basis(restrict_columns(dirac, degs[k])).vectors;
    const Matrix ker_span = lift_columns(ker_local, degs[k], ambient);
    CohomologyRow row;
    row.degree = k;
    row.dim = ker_span.cols();
    row.weights = weights_of_quotient(ker_span, Matrix(ambient, 0), blocks);
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Number of permutations of {1..n} of each length (inversion count);
/// the graded dimension of the Borel u-cohomology of any irreducible module.
inline std::vector<Integer> sn_length_counts(std::size_t n) {
  std::vector<Integer> poly{1};
  for (std::size_t i = 2; i <= n; ++i) {
    std::vector<Integer> next(poly.size() + i - 1, Integer(0));
    for (std::size_t a = 0; a < poly.size(); ++a)
      for (std::size_t b = 0; b < i; ++b) next[a + b] += poly[a];
    poly = std::move(next);
  }
  return poly;
}

inline Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  Rational out = 1;
  for (std::size_t i = 0; i < k; ++i)
    out *= Rational(static_cast<long>(n - i)) / Rational(static_cast<long>(i + 1));
  return numerator(out);
}

/// Σ(−1)^k dim H^k must telescope to Σ(−1)^k C(dim u, k)·dim V.
inline bool euler_characteristic_ok(const CohomologyTable& table, std::size_t dim_u,
                                    std::size_t dim_v) {
  Integer lhs = 0, rhs = 0;
  for (const auto& row : table.rows) {
    const Integer sign = (row.degree % 2 == 0) ? 1 : -1;
    lhs += sign * Integer(row.dim);
    rhs += sign * binomial(dim_u, row.degree) * Integer(dim_v);
  }
  return lhs == rhs;
}

}  // namespace kdirac
