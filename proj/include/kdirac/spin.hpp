#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/matrix.hpp"
#include "kdirac/parabolic.hpp"
#include "kdirac/representation.hpp"
#include "kdirac/span.hpp"
#include "kdirac/weights.hpp"

namespace kdirac {

/// The spin module S = Λ•u of the Clifford algebra C(u ⊕ ū), with basis the
/// subsets of the u-basis, ordered by size then lexicographically. Elements
/// of u act by exterior multiplication, elements of ū by −2 × contraction
/// against B, which realizes x·x = −B(x,x) without leaving the rationals.
class SpinModule {
 public:
  explicit SpinModule(ParabolicAlgebra parabolic) : parabolic_(std::move(parabolic)) {
    m_ = parabolic_.dim_u();
    if (m_ > 20) throw std::invalid_argument("SpinModule: u too large");
    dim_ = static_cast<std::size_t>(1) << m_;
    for (std::size_t mask = 0; mask < dim_; ++mask) {
      std::vector<std::size_t> subset;
      for (std::size_t a = 0; a < m_; ++a)
        if (mask & (static_cast<std::size_t>(1) << a)) subset.push_back(a);
      subsets_.push_back(std::move(subset));
    }
    std::sort(subsets_.begin(), subsets_.end(),
              [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
              });
    for (std::size_t i = 0; i < dim_; ++i) index_of_[subsets_[i]] = i;
    for (std::size_t i = 0; i < dim_; ++i) {
      Weight w(parabolic_.n() - 1);
      for (auto a : subsets_[i]) w += parabolic_.u_root(a);
      weights_.push_back(std::move(w));
    }
  }

  const ParabolicAlgebra& parabolic() const { return parabolic_; }
  std::size_t dim_u() const { return m_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& subset(std::size_t i) const { return subsets_[i]; }
  std::size_t index_of(const std::vector<std::size_t>& subset) const {
    return index_of_.at(subset);
  }
  std::size_t degree(std::size_t i) const { return subsets_[i].size(); }
  const Weight& weight(std::size_t i) const { return weights_[i]; }
  const std::vector<Weight>& weights() const { return weights_; }

  /// Serialized as a sorted 1-based index list over Δ(u), e.g. "{1,3}".
  std::string element_str(std::size_t i) const {
    std::string out = "{";
    for (std::size_t t = 0; t < subsets_[i].size(); ++t) {
      if (t) out += ",";
      out += std::to_string(subsets_[i][t] + 1);
    }
    return out + "}";
  }

  /// Exterior multiplication by the a-th u basis vector.
  Matrix wedge(std::size_t a) const {
    Matrix m(dim_, dim_);
    for (std::size_t col = 0; col < dim_; ++col) {
      const auto& A = subsets_[col];
      if (std::find(A.begin(), A.end(), a) != A.end()) continue;
      std::size_t insert_at = 0;
      while (insert_at < A.size() && A[insert_at] < a) ++insert_at;
      std::vector<std::size_t> target = A;
      target.insert(target.begin() + static_cast<long>(insert_at), a);
      m(index_of_.at(target), col) = (insert_at % 2 == 0) ? 1 : -1;
    }
    return m;
  }

  /// Contraction in the first slot against the functional B(ubar_a, ·),
  /// which picks out the a-th u coordinate.
  Matrix contraction(std::size_t a) const {
    Matrix m(dim_, dim_);
    for (std::size_t col = 0; col < dim_; ++col) {
      const auto& A = subsets_[col];
      const auto it = std::find(A.begin(), A.end(), a);
      if (it == A.end()) continue;
      const std::size_t pos = static_cast<std::size_t>(it - A.begin());
      std::vector<std::size_t> target = A;
      target.erase(target.begin() + static_cast<long>(pos));
      m(index_of_.at(target), col) = (pos % 2 == 0) ? 1 : -1;
    }
    return m;
  }

 private:
  ParabolicAlgebra parabolic_;
  std::size_t m_ = 0;
  std::size_t dim_ = 0;
  std::vector<std::vector<std::size_t>> subsets_;
  std::map<std::vector<std::size_t>, std::size_t> index_of_;
  std::vector<Weight> weights_;
};

/// Operator on the spin module; parity +1 for even (degree-preserving mod 2),
/// −1 for odd, 0 for mixed or zero.
struct CliffordOp {
  Matrix matrix;
  int parity = 0;
};

inline int parity_of(const SpinModule& spin, const Matrix& m) {
  bool even_seen = false, odd_seen = false;
  for (std::size_t i = 0; i < spin.dim(); ++i)
    for (std::size_t j = 0; j < spin.dim(); ++j) {
      if (m(i, j) == 0) continue;
      (((spin.degree(i) + spin.degree(j)) % 2 == 0) ? even_seen : odd_seen) = true;
    }
  if (even_seen && odd_seen) return 0;
  if (odd_seen) return -1;
  return even_seen ? 1 : 0;
}

/// Spin action of an element of s = u ⊕ ū: u acts by wedge, ū by −2 ×
/// contraction; the Clifford relation zw + wz = −2B(z,w) holds exactly.
inline CliffordOp clifford_action(const SpinModule& spin, const Matrix& s_element) {
  const ParabolicAlgebra& p = spin.parabolic();
  // split into the strictly-upper and strictly-lower cross-block parts
  Matrix upper(p.n(), p.n()), lower(p.n(), p.n());
  for (std::size_t i = 0; i < p.n(); ++i)
    for (std::size_t j = 0; j < p.n(); ++j) {
      if (s_element(i, j) == 0) continue;
      if (p.block_of(i) < p.block_of(j))
        upper(i, j) = s_element(i, j);
      else if (p.block_of(i) > p.block_of(j))
        lower(i, j) = s_element(i, j);
      else
        throw std::invalid_argument("clifford_action: element not in u ⊕ ubar");
    }
  const auto cu = p.expand_u(upper);
  const auto cb = p.expand_ubar(lower);
  Matrix m(spin.dim(), spin.dim());
  for (std::size_t a = 0; a < p.dim_u(); ++a) {
    if (cu[a] != 0) m += cu[a] * spin.wedge(a);
    if (cb[a] != 0) m += Rational(-2) * cb[a] * spin.contraction(a);
  }
  const int par = parity_of(spin, m);
  return CliffordOp{std::move(m), par};
}

/// s basis for Clifford monomials: indices 0..m-1 are the u basis, m..2m-1
/// the (B-dual scaled) ū basis.
inline Matrix s_basis_element(const ParabolicAlgebra& p, std::size_t idx) {
  return idx < p.dim_u() ? p.u_element(idx) : p.ubar_element(idx - p.dim_u());
}

/// Chevalley map by full antisymmetrization, valid in non-orthogonal bases:
/// φ(z_1∧…∧z_k) = (1/k!) Σ_σ sgn(σ) c(z_σ(1))···c(z_σ(k)).
inline CliffordOp chevalley(const SpinModule& spin,
                            const std::vector<std::pair<Rational, std::vector<std::size_t>>>& wedge_terms) {
  const std::size_t two_m = 2 * spin.dim_u();
  std::vector<Matrix> c_basis;
  for (std::size_t i = 0; i < two_m; ++i)
    c_basis.push_back(clifford_action(spin, s_basis_element(spin.parabolic(), i)).matrix);

  Matrix out(spin.dim(), spin.dim());
  for (const auto& [coeff, indices] : wedge_terms) {
    if (coeff == 0) continue;
    if (indices.empty()) {
      out += coeff * Matrix::identity(spin.dim());
      continue;
    }
    std::vector<std::size_t> perm(indices.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    Rational factorial = 1;
    for (std::size_t i = 2; i <= perm.size(); ++i) factorial *= Rational(static_cast<long>(i));
    Matrix sym(spin.dim(), spin.dim());
    do {
      // parity of the permutation by counting inversions
      int inversions = 0;
      for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
          if (perm[i] > perm[j]) ++inversions;
      Matrix prod = c_basis[indices[perm[0]]];
      for (std::size_t i = 1; i < perm.size(); ++i) prod = prod * c_basis[indices[perm[i]]];
      sym += Rational(inversions % 2 == 0 ? 1 : -1) * prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out += coeff / factorial * sym;
  }
  const int par = parity_of(spin, out);
  return CliffordOp{std::move(out), par};
}

/// The degree-3 element v of Λ•s whose 3-form satisfies 2ω(X,Y,Z) = B([X,Y],Z),
/// expanded over the B-dual monomials of the s basis, plus its spin action.
struct CubicTerm {
  std::vector<std::pair<Rational, std::vector<std::size_t>>> wedge_expansion;
  CliffordOp phi_v;
};

inline CubicTerm cubic_element(const SpinModule& spin) {
  const ParabolicAlgebra& p = spin.parabolic();
  const std::size_t two_m = 2 * p.dim_u();
  const auto dual_index = [&](std::size_t i) { return (i + p.dim_u()) % two_m; };

  std::map<std::vector<std::size_t>, Rational> terms;
  for (std::size_t i = 0; i < two_m; ++i)
    for (std::size_t j = i + 1; j < two_m; ++j) {
      const Matrix bracket_ij =
          commutator(s_basis_element(p, i), s_basis_element(p, j));
      for (std::size_t k = j + 1; k < two_m; ++k) {
        const Rational omega =
            Rational(1, 2) * p.algebra().killing_form(bracket_ij, s_basis_element(p, k));
        if (omega == 0) continue;
        // sort the dual triple, tracking the wedge sign
        std::array<std::size_t, 3> duals{dual_index(i), dual_index(j), dual_index(k)};
        int sign = 1;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2 - a; ++b)
            if (duals[b] > duals[b + 1]) {
              std::swap(duals[b], duals[b + 1]);
              sign = -sign;
            }
        terms[{duals[0], duals[1], duals[2]}] += Rational(sign) * omega;
      }
    }

  CubicTerm cubic;
  for (const auto& [triple, coeff] : terms)
    if (coeff != 0) cubic.wedge_expansion.emplace_back(coeff, std::vector<std::size_t>(triple.begin(), triple.end()));
  cubic.phi_v = chevalley(spin, cubic.wedge_expansion);
  return cubic;
}

/// The embedding ν: l → C(s) realized on the spin module,
/// ν(X) = −(1/4) Σ_a [ c([X,x_a]) c(y_a) + c([X,y_a]) c(x_a) ] over the dual
/// pairs of s. It satisfies [ν(X), c(z)] = c([X,z]) and shifts every spin
/// weight by ρ(ū).
inline CliffordOp nu_embedding(const SpinModule& spin, const Matrix& x_in_l) {
  const ParabolicAlgebra& p = spin.parabolic();
  if (!p.is_in_l(x_in_l)) throw std::invalid_argument("nu_embedding: element not in l");
  Matrix acc(spin.dim(), spin.dim());
  for (std::size_t a = 0; a < p.dim_u(); ++a) {
    const Matrix xa = p.u_element(a), ya = p.ubar_element(a);
    acc += clifford_action(spin, commutator(x_in_l, xa)).matrix *
           clifford_action(spin, ya).matrix;
    acc += clifford_action(spin, commutator(x_in_l, ya)).matrix *
           clifford_action(spin, xa).matrix;
  }
  Matrix m = Rational(-1, 4) * acc;
  const int par = parity_of(spin, m);
  return CliffordOp{std::move(m), par};
}

/// Adjoint action of X ∈ l on S = Λ•u, extended as a derivation.
inline Matrix levi_action_on_spin(const SpinModule& spin, const Matrix& x_in_l) {
  const ParabolicAlgebra& p = spin.parabolic();
  if (!p.is_in_l(x_in_l)) throw std::invalid_argument("levi_action_on_spin: element not in l");
  Matrix m(spin.dim(), spin.dim());
  for (std::size_t col = 0; col < spin.dim(); ++col) {
    const auto& A = spin.subset(col);
    for (std::size_t pos = 0; pos < A.size(); ++pos) {
      const auto coeffs = p.expand_u(commutator(x_in_l, p.u_element(A[pos])));
      for (std::size_t b = 0; b < coeffs.size(); ++b) {
        if (coeffs[b] == 0) continue;
        if (b == A[pos]) {
          m(col, col) += coeffs[b];
          continue;
        }
        const auto [sign, target] = substitute_in_monomial(A, pos, b);
        if (sign != 0) m(spin.index_of(target), col) += Rational(sign) * coeffs[b];
      }
    }
  }
  return m;
}

/// Operator on V ⊗ S in the spin-major basis: index = s·dim(V) + v.
inline Matrix tensor_operator(const Matrix& on_rep, const Matrix& on_spin) {
  return Matrix::kronecker(on_spin, on_rep);
}

/// Weight of every V ⊗ S coordinate, spin-major.
inline std::vector<Weight> tensor_weights(const Representation& rep, const SpinModule& spin) {
  std::vector<Weight> out;
  out.reserve(rep.dim * spin.dim());
  for (std::size_t s = 0; s < spin.dim(); ++s)
    for (std::size_t v = 0; v < rep.dim; ++v) out.push_back(rep.weights[v] + spin.weight(s));
  return out;
}

/// The Σ-action of X ∈ l on V ⊗ S: X on V plus the adjoint action on S.
inline Matrix sigma_action(const Representation& rep, const SpinModule& spin,
                           const Matrix& x_in_l) {
  return tensor_operator(rep.act(x_in_l), Matrix::identity(spin.dim())) +
         tensor_operator(Matrix::identity(rep.dim), levi_action_on_spin(spin, x_in_l));
}

/// γ(Ω_l) = Σ_i (b_i⊗1 + 1⊗ν(b_i))·(d_i⊗1 + 1⊗ν(d_i)) over B-dual pairs
/// of l, as one exact matrix on V ⊗ S.
inline Matrix gamma_omega_l(const Representation& rep, const SpinModule& spin) {
  const ParabolicAlgebra& p = spin.parabolic();
  const Matrix iv = Matrix::identity(rep.dim), is = Matrix::identity(spin.dim());
  Matrix out(rep.dim * spin.dim(), rep.dim * spin.dim());
  for (const auto& [b, d] : p.l_dual_pairs()) {
    const Matrix left = tensor_operator(rep.act(b), is) +
                        tensor_operator(iv, nu_embedding(spin, b).matrix);
    const Matrix right = tensor_operator(rep.act(d), is) +
                         tensor_operator(iv, nu_embedding(spin, d).matrix);
    out += left * right;
  }
  return out;
}

}  // namespace kdirac
