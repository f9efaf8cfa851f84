#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "kdirac/matrix.hpp"
#include "kdirac/representation.hpp"
#include "kdirac/spin.hpp"

namespace kdirac {

/// Endomorphism of V ⊗ S with a declared spin-degree shift
/// (−1 for the boundary map, +1 for the coboundary map, 0 for even
/// operators, nullopt for mixed ones such as D).
struct GradedOperator {
  Matrix matrix;
  std::optional<int> degree_shift;
};

/// True when every nonzero entry maps spin degree k into k + shift.
inline bool has_degree_shift(const SpinModule& spin, std::size_t dim_v, const Matrix& m,
                             int shift) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) == 0) continue;
      const long di = static_cast<long>(spin.degree(i / dim_v));
      const long dj = static_cast<long>(spin.degree(j / dim_v));
      if (di != dj + shift) return false;
    }
  return true;
}

/// Chevalley–Eilenberg boundary map of u-homology with coefficients in V,
/// on Λ•u ⊗ V. Signs are normalized so that ∂² = 0 and D = 2∂ + d hold
/// simultaneously:
///   ∂(x_1∧…∧x_k ⊗ w) = Σ_i (−1)^i x_1∧…x̂_i…∧x_k ⊗ x_i·w
///                     + Σ_{i<j} (−1)^{i+j} [x_i,x_j]∧x_1∧…x̂_i…x̂_j…∧x_k ⊗ w.
inline GradedOperator boundary_map(const Representation& rep, const SpinModule& spin) {
  const ParabolicAlgebra& p = spin.parabolic();
  const Matrix iv = Matrix::identity(rep.dim);
  Matrix out(rep.dim * spin.dim(), rep.dim * spin.dim());

  // module term: Σ_a (−π(x_a)) ⊗ contraction_a
  for (std::size_t a = 0; a < p.dim_u(); ++a)
    out += tensor_operator(Rational(-1) * rep.act(p.u_element(a)), spin.contraction(a));

  // bracket term, acting on the spin factor alone
  Matrix br(spin.dim(), spin.dim());
  for (std::size_t col = 0; col < spin.dim(); ++col) {
    const auto& A = spin.subset(col);
    for (std::size_t pos_i = 0; pos_i < A.size(); ++pos_i)
      for (std::size_t pos_j = pos_i + 1; pos_j < A.size(); ++pos_j) {
        const int pair_sign = ((pos_i + pos_j) % 2 == 0) ? 1 : -1;  // (−1)^{i+j}, 1-based
        const auto coeffs =
            p.expand_u(commutator(p.u_element(A[pos_i]), p.u_element(A[pos_j])));
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t < A.size(); ++t)
          if (t != pos_i && t != pos_j) rest.push_back(A[t]);
        for (std::size_t b = 0; b < coeffs.size(); ++b) {
          if (coeffs[b] == 0) continue;
          std::size_t insert_at = 0;
          bool repeated = false;
          for (const auto v : rest) {
            if (v == b) repeated = true;
            if (v < b) ++insert_at;
          }
          if (repeated) continue;
          std::vector<std::size_t> target = rest;
          target.insert(target.begin() + static_cast<long>(insert_at), b);
          const int wedge_sign = (insert_at % 2 == 0) ? 1 : -1;
          br(spin.index_of(target), col) += Rational(pair_sign * wedge_sign) * coeffs[b];
        }
      }
  }
  out += tensor_operator(iv, br);
  return GradedOperator{std::move(out), -1};
}

/// Coboundary map of ū-cohomology with coefficients in V, transported onto
/// Λ•u ⊗ V through the pairing u ≅ ū* fixed by the dual bases. Built by
/// evaluating the standard cochain formula
///   (dω)(y_0,…,y_k) = Σ_i (−1)^i y_i·ω(…ŷ_i…)
///                   + Σ_{i<j} (−1)^{i+j} ω([y_i,y_j], …ŷ_i…ŷ_j…)
/// on monomial cochains, independently of the boundary-map assembly.
inline GradedOperator coboundary_map(const Representation& rep, const SpinModule& spin) {
  const ParabolicAlgebra& p = spin.parabolic();
  const Matrix iv = Matrix::identity(rep.dim);
  Matrix out(rep.dim * spin.dim(), rep.dim * spin.dim());

  // module term: Σ_a π(y_a) ⊗ wedge_a
  for (std::size_t a = 0; a < p.dim_u(); ++a)
    out += tensor_operator(rep.act(p.ubar_element(a)), spin.wedge(a));

  // bracket term: evaluate on tuples indexed by the target monomial B
  Matrix br(spin.dim(), spin.dim());
  for (std::size_t row = 0; row < spin.dim(); ++row) {
    const auto& B = spin.subset(row);
    if (B.size() < 2) continue;
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = i + 1; j < B.size(); ++j) {
        const int pair_sign = ((i + j) % 2 == 0) ? 1 : -1;  // (−1)^{i+j}, 0-based
        const auto coeffs =
            p.expand_ubar(commutator(p.ubar_element(B[i]), p.ubar_element(B[j])));
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t < B.size(); ++t)
          if (t != i && t != j) rest.push_back(B[t]);
        for (std::size_t c = 0; c < coeffs.size(); ++c) {
          if (coeffs[c] == 0) continue;
          // the cochain y*_A eats (y_c, rest…); nonzero only when A = {c} ∪ rest
          std::size_t insert_at = 0;
          bool repeated = false;
          for (const auto v : rest) {
            if (v == c) repeated = true;
            if (v < c) ++insert_at;
          }
          if (repeated) continue;
          std::vector<std::size_t> source = rest;
          source.insert(source.begin() + static_cast<long>(insert_at), c);
          const int sort_sign = (insert_at % 2 == 0) ? 1 : -1;
          br(row, spin.index_of(source)) += Rational(pair_sign * sort_sign) * coeffs[c];
        }
      }
  }
  out += tensor_operator(iv, br);
  return GradedOperator{std::move(out), +1};
}

/// Kostant's cubic Dirac operator on V ⊗ S, assembled basis-free from the
/// B-dual pairs of s = u ⊕ ū:
///   D = Σ_a [ π(x_a) ⊗ c(y_a) + π(y_a) ⊗ c(x_a) ] + 1 ⊗ φ(v).
/// `flip_contraction_sign` is a deliberate fault injection for sign-sensitivity
/// probes; it breaks the Clifford relation and the 2∂ + d identity.
inline GradedOperator dirac_operator(const Representation& rep, const SpinModule& spin,
                                     bool flip_contraction_sign = false) {
  const ParabolicAlgebra& p = spin.parabolic();
  Matrix out(rep.dim * spin.dim(), rep.dim * spin.dim());
  const Rational contraction_scale = flip_contraction_sign ? Rational(2) : Rational(-2);
  for (std::size_t a = 0; a < p.dim_u(); ++a) {
    out += tensor_operator(rep.act(p.u_element(a)), contraction_scale * spin.contraction(a));
    out += tensor_operator(rep.act(p.ubar_element(a)), spin.wedge(a));
  }
  out += tensor_operator(Matrix::identity(rep.dim), cubic_element(spin).phi_v.matrix);
  return GradedOperator{std::move(out), std::nullopt};
}

struct SquareFormulaReport {
  Rational constant;
  std::size_t residual_rank = 0;
  bool ok = false;
};

/// Checks D² = −Ω_g ⊗ 1 + γ(Ω_l) + c·id with c = (ρ_l,ρ_l) − (ρ_g,ρ_g),
/// as an exact matrix identity.
inline SquareFormulaReport verify_square_formula(const Representation& rep,
                                                 const SpinModule& spin, const Matrix& dirac) {
  const ParabolicAlgebra& p = spin.parabolic();
  const RootSystem& rs = p.root_system();
  SquareFormulaReport report;
  report.constant = rs.norm_sq(p.rho_l()) - rs.norm_sq(p.rho_g());

  const Matrix omega_v = casimir_matrix(rep, rep.algebra.dual_pairs());
  const Matrix residual = dirac * dirac +
                          tensor_operator(omega_v, Matrix::identity(spin.dim())) -
                          gamma_omega_l(rep, spin) -
                          report.constant * Matrix::identity(rep.dim * spin.dim());
  report.residual_rank = rank(residual);
  report.ok = residual.is_zero();
  return report;
}

}  // namespace kdirac
