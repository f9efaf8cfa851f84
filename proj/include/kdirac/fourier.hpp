#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kdirac/hodge.hpp"
#include "kdirac/representation.hpp"
#include "kdirac/spin.hpp"
#include "kdirac/weights.hpp"

namespace kdirac {

/// Weight multiplicities of the irreducible module V_λ by Freudenthal's
/// recursion, computed exactly; the total is checked against the Weyl
/// dimension formula.
inline std::map<Weight, Integer> weight_multiplicities(const RootSystem& rs,
                                                       const Weight& lambda) {
  if (!lambda.is_dominant() || !lambda.is_integral())
    throw std::invalid_argument("weight_multiplicities: not dominant integral");
  const std::size_t r = rs.rank();
  const auto positive = rs.positive_roots();
  const Weight rho = rs.rho();

  // lowest weight w0·λ for type A: reversed and negated coordinates
  Weight lowest(r);
  for (std::size_t i = 0; i < r; ++i) lowest[i] = -lambda[r - 1 - i];
  const auto span_coords = rs.root_coordinates(lambda - lowest);
  std::vector<long> box(r);
  for (std::size_t i = 0; i < r; ++i) box[i] = to_long(span_coords[i]);

  // enumerate λ − Σ m_i α_i over the box, by height then lexicographically
  std::vector<std::vector<long>> offsets;
  std::vector<long> cur(r, 0);
  const std::function<void(std::size_t)> gen = [&](std::size_t pos) {
    if (pos == r) {
      offsets.push_back(cur);
      return;
    }
    for (long v = 0; v <= box[pos]; ++v) {
      cur[pos] = v;
      gen(pos + 1);
    }
    cur[pos] = 0;
  };
  gen(0);
  std::sort(offsets.begin(), offsets.end(), [](const auto& a, const auto& b) {
    long ha = 0, hb = 0;
    for (auto v : a) ha += v;
    for (auto v : b) hb += v;
    if (ha != hb) return ha < hb;
    return a < b;
  });

  const auto weight_at = [&](const std::vector<long>& off) {
    Weight w = lambda;
    for (std::size_t i = 0; i < r; ++i)
      if (off[i] != 0) w -= Rational(off[i]) * rs.simple_root(i);
    return w;
  };

  std::map<Weight, Integer> mult;
  const Rational top_norm = rs.norm_sq(lambda + rho);
  for (const auto& off : offsets) {
    const Weight mu = weight_at(off);
    if (mu == lambda) {
      mult[mu] = 1;
      continue;
    }
    Rational numerator_sum = 0;
    for (const auto& alpha : positive) {
      Weight shifted = mu;
      while (true) {
        shifted += alpha;
        // λ − (μ+tα) leaves the positive root cone monotonically, so stop there
        bool inside = true;
        for (const auto& coord : rs.root_coordinates(lambda - shifted))
          if (coord < 0) {
            inside = false;
            break;
          }
        if (!inside) break;
        const auto it = mult.find(shifted);
        if (it != mult.end() && it->second != 0)
          numerator_sum += rs.pairing(shifted, alpha) * Rational(it->second);
      }
    }
    const Rational denom = top_norm - rs.norm_sq(mu + rho);
    if (denom == 0) {
      if (numerator_sum != 0)
        throw std::runtime_error("weight_multiplicities: degenerate Freudenthal step");
      continue;
    }
    const Rational m = 2 * numerator_sum / denom;
    if (!is_integer(m) || m < 0)
      throw std::runtime_error("weight_multiplicities: non-integral multiplicity");
    if (m != 0) mult[mu] = numerator(m);
  }

  Integer total = 0;
  for (const auto& [w, m] : mult) total += m;
  if (total != rs.weyl_dim(lambda))
    throw std::runtime_error("weight_multiplicities: total disagrees with Weyl dimension");
  return mult;
}

/// Weight multiset of the spin module Λ•u.
inline std::map<Weight, Integer> spin_weight_multiset(const ParabolicAlgebra& p) {
  std::map<Weight, Integer> out;
  const std::size_t m = p.dim_u();
  for (std::size_t mask = 0; mask < (static_cast<std::size_t>(1) << m); ++mask) {
    Weight w(p.n() - 1);
    for (std::size_t a = 0; a < m; ++a)
      if (mask & (static_cast<std::size_t>(1) << a)) w += p.u_root(a);
    out[w] += 1;
  }
  return out;
}

inline std::map<Weight, Integer> convolve_multisets(const std::map<Weight, Integer>& a,
                                                    const std::map<Weight, Integer>& b) {
  std::map<Weight, Integer> out;
  for (const auto& [wa, ma] : a)
    for (const auto& [wb, mb] : b) out[wa + wb] += ma * mb;
  return out;
}

/// Weight multiset of the irreducible l-module with highest weight mu:
/// Freudenthal on each diagonal block, convolved, with the crossing
/// coordinates carried along unchanged.
inline std::map<Weight, Integer> levi_irrep_weights(const ParabolicAlgebra& p,
                                                    const Weight& mu) {
  std::map<Weight, Integer> acc{{mu, 1}};
  std::size_t offset = 0;
  for (auto part : p.composition()) {
    if (part >= 2) {
      RootSystem block_rs(part);
      Weight block_mu(part - 1);
      for (std::size_t s = 0; s + 1 < part; ++s) block_mu[s] = mu[offset + s];
      std::map<Weight, Integer> block_offsets;  // offsets from mu, global coords
      for (const auto& [bw, m] : weight_multiplicities(block_rs, block_mu)) {
        const auto off = block_rs.root_coordinates(block_mu - bw);
        Weight global_offset(p.n() - 1);
        for (std::size_t s = 0; s + 1 < part; ++s)
          if (off[s] != 0)
            global_offset += off[s] * p.root_system().simple_root(offset + s);
        block_offsets[global_offset] += m;
      }
      std::map<Weight, Integer> next;
      for (const auto& [w, m] : acc)
        for (const auto& [off, mo] : block_offsets) next[w - off] += m * mo;
      acc = std::move(next);
    }
    offset += part;
  }
  return acc;
}

/// Decomposes a finite weight multiset into Levi highest weights by peeling:
/// repeatedly take the maximal remaining weight against ρ_l (which is always
/// l-dominant and a constituent highest weight) and subtract its character.
inline std::vector<std::pair<Weight, Integer>> levi_character_decomposition(
    const ParabolicAlgebra& p, std::map<Weight, Integer> multiset) {
  const Weight rho_l = p.rho_l();
  const RootSystem& rs = p.root_system();
  std::vector<std::pair<Weight, Integer>> out;
  while (!multiset.empty()) {
    const Weight* best = nullptr;
    Rational best_score;
    for (const auto& [w, m] : multiset) {
      if (m == 0) continue;
      const Rational score = rs.pairing(w, rho_l);
      if (!best || score > best_score || (score == best_score && *best < w)) {
        best = &w;
        best_score = score;
      }
    }
    if (!best) break;
    const Weight mu = *best;
    if (!p.is_l_dominant(mu))
      throw std::runtime_error("levi_character_decomposition: maximal weight not dominant");
    const Integer mult = multiset.at(mu);
    for (const auto& [w, m] : levi_irrep_weights(p, mu)) {
      auto it = multiset.find(w);
      if (it == multiset.end() || it->second < mult * m)
        throw std::runtime_error("levi_character_decomposition: negative multiplicity");
      it->second -= mult * m;
      if (it->second == 0) multiset.erase(it);
    }
    out.emplace_back(mu, mult);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// ---------------------------------------------------------------------------
// Scans and estimates
// ---------------------------------------------------------------------------

struct CgScanRow {
  Weight lambda;
  Weight mu;
  Rational c;
  Integer dim_w_mu;
};

struct CgScanReport {
  long lmax = 0;
  std::vector<CgScanRow> rows;
  Rational min_abs_c;       // minimum of |c(λ,μ)| over c ≠ 0; 0 when none seen
  long first_level_attained = -1;  // smallest Λ at which the final minimum appears
  std::vector<std::pair<long, Rational>> running_min;  // per truncation level
  bool positive = false;
};

/// Enumerates all λ up to the truncation level, decomposes V_λ ⊗ S under the
/// Levi by weight combinatorics alone, and scans |c(λ,μ)| over the blocks
/// with c ≠ 0.
inline CgScanReport cg_scan(const ParabolicAlgebra& p, long lmax) {
  const RootSystem& rs = p.root_system();
  CgScanReport report;
  report.lmax = lmax;
  const auto spin_weights = spin_weight_multiset(p);

  std::map<long, Rational> min_at_level;
  for (const auto& lambda : dominant_weights_up_to(rs.rank(), lmax)) {
    const auto product = convolve_multisets(weight_multiplicities(rs, lambda), spin_weights);
    for (const auto& [mu, mult] : levi_character_decomposition(p, product)) {
      CgScanRow row{lambda, mu, scalar_c(p, lambda, mu), p.levi_weyl_dim(mu)};
      const long level = to_long(lambda.level());
      if (row.c != 0) {
        const Rational abs_c = rational_abs(row.c);
        auto it = min_at_level.find(level);
        if (it == min_at_level.end() || abs_c < it->second) min_at_level[level] = abs_c;
      }
      report.rows.push_back(std::move(row));
    }
  }

  Rational running;
  bool seen = false;
  for (long level = 0; level <= lmax; ++level) {
    const auto it = min_at_level.find(level);
    if (it != min_at_level.end() && (!seen || it->second < running)) {
      running = it->second;
      seen = true;
    }
    if (seen) report.running_min.emplace_back(level, running);
  }
  if (seen) {
    report.min_abs_c = running;
    report.positive = running > 0;
    for (const auto& [level, value] : report.running_min)
      if (value == running) {
        report.first_level_attained = level;
        break;
      }
  }
  return report;
}

struct SeriesTerm {
  Weight lambda;
  Rational term;
  Rational partial_sum;
};

struct SeriesReport {
  long n_exp = 0, m_exp = 0, lmax = 0;
  std::vector<SeriesTerm> terms;  // ordered by level, then lexicographically
  long decay_exponent = 0;        // n·#Δ+ − 2m + (rank−1)
  bool convergent = false;        // exponent ≤ −2
  bool partial_sums_monotone = true;
};

/// Partial sums of Σ_λ (dim V_λ)^n (1+c(λ))^{−m} over the truncation, with
/// the polynomial decay exponent deciding convergence of the full series.
inline SeriesReport casimir_growth_series(const RootSystem& rs, long n_exp, long m_exp,
                                          long lmax) {
  SeriesReport report;
  report.n_exp = n_exp;
  report.m_exp = m_exp;
  report.lmax = lmax;
  const long positive_count = static_cast<long>(rs.positive_roots().size());
  report.decay_exponent =
      n_exp * positive_count - 2 * m_exp + (static_cast<long>(rs.rank()) - 1);
  report.convergent = report.decay_exponent <= -2;

  auto lambdas = dominant_weights_up_to(rs.rank(), lmax);
  std::sort(lambdas.begin(), lambdas.end(), [](const Weight& a, const Weight& b) {
    if (a.level() != b.level()) return a.level() < b.level();
    return a < b;
  });
  Rational sum = 0;
  for (const auto& lambda : lambdas) {
    const Rational dim(rs.weyl_dim(lambda));
    const Rational term =
        rational_pow(dim, n_exp) * rational_pow(1 + rs.casimir_scalar(lambda), -m_exp);
    sum += term;
    report.terms.push_back({lambda, term, sum});
  }
  return report;
}

struct DimensionEstimate {
  Weight lambda;
  Integer sum_of_squares;  // Σ_{I(λ)} mult·(dim W_μ)², constituents counted
  Integer bound;           // (dim V_λ)²(dim S)²
  bool ok = false;
};

inline DimensionEstimate dimension_estimate_check(const ParabolicAlgebra& p,
                                                  const DiracBlockData& blocks,
                                                  std::size_t dim_v, std::size_t dim_s) {
  DimensionEstimate est;
  est.lambda = blocks.lambda;
  est.sum_of_squares = 0;
  for (auto idx : blocks.i_set) {
    const Integer w = p.levi_weyl_dim(blocks.blocks[idx].mu);
    est.sum_of_squares += Integer(blocks.blocks[idx].multiplicity) * w * w;
  }
  est.bound = Integer(dim_v) * Integer(dim_v) * Integer(dim_s) * Integer(dim_s);
  est.ok = est.sum_of_squares <= est.bound;
  return est;
}

// ---------------------------------------------------------------------------
// Truncated smooth representation model
// ---------------------------------------------------------------------------

/// Finite model of a smooth representation of SU(n): a weighted direct sum of
/// isotypic components V(λ) = V_λ ⊗ C^{m(λ)} over a finite truncation, with
/// the ℓ¹-style seminorm family |v|_p = Σ_λ (1+c(λ))^p ‖v(λ)‖_∞.
struct SmoothRepModel {
  std::size_t n = 2;
  std::vector<std::size_t> composition;
  std::vector<Weight> truncation;   // dominant highest weights, sorted
  long multiplicity_exponent = 0;   // m(λ) = (1+|λ|)^p

  Integer multiplicity(const Weight& lambda) const {
    Rational base = 1 + lambda.level();
    return numerator(rational_pow(base, multiplicity_exponent));
  }
  Rational seminorm_weight(const RootSystem& rs, const Weight& lambda, long p) const {
    return rational_pow(1 + rs.casimir_scalar(lambda), p);
  }
};

inline SmoothRepModel make_model(std::size_t n, const std::vector<std::size_t>& composition,
                                 long lmax, long multiplicity_exponent) {
  SmoothRepModel model;
  model.n = n;
  model.composition = composition;
  model.truncation = dominant_weights_up_to(n - 1, lmax);
  model.multiplicity_exponent = multiplicity_exponent;
  return model;
}

struct SeminormCheckReport {
  long m_exp = 0;
  long seminorm_index = 0;
  std::size_t samples = 0;
  std::size_t failures = 0;
  bool ok = false;
};

/// Exact check of the isotypic-projection seminorm bound
///   (1+c(λ))^m |P(λ)v|_p ≤ (dim V_λ)² |(1+Ω_g)^m v|_p
/// on pseudo-random rational vectors over the truncated model, with q = p.
inline SeminormCheckReport seminorm_estimate_check(const SmoothRepModel& model, long m_exp,
                                                   std::size_t samples, std::uint64_t seed,
                                                   long seminorm_index = 1) {
  const RootSystem rs(model.n);
  SeminormCheckReport report;
  report.m_exp = m_exp;
  report.seminorm_index = seminorm_index;
  report.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 9);

  std::vector<Integer> dims;
  for (const auto& lambda : model.truncation)
    dims.push_back(rs.weyl_dim(lambda) * model.multiplicity(lambda));

  for (std::size_t s = 0; s < samples; ++s) {
    // one random block vector per λ; the max-coordinate norm per block
    std::vector<Rational> block_norm(model.truncation.size(), Rational(0));
    for (std::size_t b = 0; b < model.truncation.size(); ++b) {
      // sample a sparse support; any vector is a valid witness for the bound
      const long len = dims[b] < 6 ? static_cast<long>(dims[b]) : 6;
      for (long i = 0; i < len; ++i) {
        const Rational coord = Rational(num(rng)) / Rational(den(rng));
        block_norm[b] = std::max(block_norm[b], rational_abs(coord));
      }
    }
    Rational rhs_norm = 0;  // |(1+Ω)^m v|_p
    for (std::size_t b = 0; b < model.truncation.size(); ++b) {
      const Rational c = rs.casimir_scalar(model.truncation[b]);
      rhs_norm += model.seminorm_weight(rs, model.truncation[b], seminorm_index) *
                  rational_pow(1 + c, m_exp) * block_norm[b];
    }
    for (std::size_t b = 0; b < model.truncation.size(); ++b) {
      const Weight& lambda = model.truncation[b];
      const Rational c = rs.casimir_scalar(lambda);
      const Rational lhs = rational_pow(1 + c, m_exp) *
                           model.seminorm_weight(rs, lambda, seminorm_index) * block_norm[b];
      const Rational dim(rs.weyl_dim(lambda));
      if (lhs > dim * dim * rhs_norm) ++report.failures;
    }
  }
  report.ok = report.failures == 0;
  return report;
}

/// Induced max-column-sum operator norm.
inline Rational column_sum_norm(const Matrix& m) {
  Rational best = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational sum = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) sum += rational_abs(m(i, j));
    best = std::max(best, sum);
  }
  return best;
}

struct GlobalTBlockRow {
  Weight lambda;
  Integer dim_v;
  Rational t_norm;
  bool norm_ok = false;        // ‖T_λ‖ ≤ c_g^{-1}
  bool projection_ok = false;  // D²T = TD² = (TD²)²
  bool commutes_ok = false;    // with d, ∂ and the Levi action
  bool image_ok = false;       // Im D²T = Im D
  bool kernel_ok = false;      // Ker D²T = Ker D
  bool all_ok() const {
    return norm_ok && projection_ok && commutes_ok && image_ok && kernel_ok;
  }
};

struct GlobalTReport {
  Rational c_g;
  long m0 = 0;       // smallest exponent with a convergent (dim V)⁴ series
  Rational c0;       // c_g^{-1}(dim S)² Σ_λ (dim V_λ)⁴ (1+c(λ))^{−m0}
  std::vector<GlobalTBlockRow> blocks;
  bool ok = false;
};

/// Assembles the blockwise splitting operator T = ⊕ T_λ over the truncation
/// and verifies the projection identities, commutation, norm bound and the
/// kernel/image identifications block by block.
inline GlobalTReport global_T(const SmoothRepModel& model) {
  if (model.truncation.empty()) throw std::invalid_argument("global_T: empty truncation");
  const LieAlgebraSln algebra(model.n);
  const ParabolicAlgebra parab = parabolic_split(algebra, model.composition);
  const RootSystem& rs = algebra.root_system();

  GlobalTReport report;
  long scan_level = 1;
  for (const auto& lambda : model.truncation)
    scan_level = std::max(scan_level, to_long(lambda.level()));
  report.c_g = cg_scan(parab, scan_level).min_abs_c;
  if (report.c_g == 0) throw std::runtime_error("global_T: no nonzero c(λ,μ) in range");

  const long positive_count = static_cast<long>(rs.positive_roots().size());
  const long rank = static_cast<long>(rs.rank());
  report.m0 = 0;
  while (4 * positive_count - 2 * report.m0 + (rank - 1) > -2) ++report.m0;

  const SpinModule spin{parab};
  const Rational dim_s_sq =
      Rational(static_cast<long>(spin.dim())) * Rational(static_cast<long>(spin.dim()));
  report.c0 = 0;
  bool all = true;
  for (const auto& lambda : model.truncation) {
    const Representation rep = build_irrep(algebra, lambda);
    const GradedOperator dop = dirac_operator(rep, spin);
    const Matrix d2 = dop.matrix * dop.matrix;
    const DiracBlockData blocks = isotypic_blocks(rep, spin, d2);
    const Matrix t = splitting_operator(blocks).matrix;
    const Matrix d = coboundary_map(rep, spin).matrix;
    const Matrix del = boundary_map(rep, spin).matrix;

    GlobalTBlockRow row;
    row.lambda = lambda;
    row.dim_v = rs.weyl_dim(lambda);
    row.t_norm = column_sum_norm(t);
    row.norm_ok = row.t_norm * report.c_g <= 1;
    const Matrix d2t = d2 * t;
    row.projection_ok = (d2t == t * d2) && (d2t * d2t == d2t);
    row.commutes_ok = commutes_with_all(t, {d, del}) &&
                      commutes_with_all(t, levi_sigma_actions(rep, spin));
    row.image_ok = same_span(d2t, image_basis(dop.matrix).vectors);
    row.kernel_ok = same_span(kernel_basis(d2t).vectors, kernel_basis(dop.matrix).vectors);
    all = all && row.all_ok();

    const Rational dim_v(row.dim_v);
    report.c0 += (1 / report.c_g) * dim_s_sq * rational_pow(dim_v, 4) *
                 rational_pow(1 + rs.casimir_scalar(lambda), -report.m0);
    report.blocks.push_back(std::move(row));
  }
  report.ok = all;
  return report;
}

}  // namespace kdirac
