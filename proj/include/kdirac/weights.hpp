#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kdirac/linalg.hpp"
#include "kdirac/matrix.hpp"

namespace kdirac {

/// A weight of sl_n in fundamental-weight coordinates: coords[k] is the value
/// on the coroot H_{k+1}. Dominance is then a sign check.
struct Weight {
  std::vector<Rational> coords;

  Weight() = default;
  explicit Weight(std::size_t rank) : coords(rank, Rational(0)) {}
  Weight(std::initializer_list<Rational> c) : coords(c) {}
  explicit Weight(std::vector<Rational> c) : coords(std::move(c)) {}

  std::size_t rank() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  Rational& operator[](std::size_t i) { return coords[i]; }

  bool operator==(const Weight& o) const { return coords == o.coords; }
  bool operator!=(const Weight& o) const { return coords != o.coords; }
  bool operator<(const Weight& o) const {
    return std::lexicographical_compare(coords.begin(), coords.end(), o.coords.begin(),
                                        o.coords.end());
  }

  Weight& operator+=(const Weight& o) {
    if (rank() != o.rank()) throw std::invalid_argument("Weight+: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    if (rank() != o.rank()) throw std::invalid_argument("Weight-: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(const Rational& s, Weight a) {
    for (auto& c : a.coords) c *= s;
    return a;
  }
  Weight operator-() const { return Rational(-1) * (*this); }

  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
  bool is_dominant() const {
    for (const auto& c : coords)
      if (c < 0) return false;
    return true;
  }
  bool is_integral() const {
    for (const auto& c : coords)
      if (!is_integer(c)) return false;
    return true;
  }

  /// Sum of fundamental coordinates; the |λ| used for truncation bounds.
  Rational level() const {
    Rational s = 0;
    for (const auto& c : coords) s += c;
    return s;
  }

  /// Bracketed coordinate list, e.g. "[1,1]".
  std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) out += ",";
      out += coords[i].str();
    }
    return out + "]";
  }
};

/// Parses "[a1,...,ak]" with rational entries.
inline Weight parse_weight(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("parse_weight: expected [a1,...,ak], got '" + text + "'");
  Weight w;
  std::string body = text.substr(1, text.size() - 2);
  if (body.empty()) return w;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    w.coords.push_back(parse_rational(body.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return w;
}

/// Root data for type A_{n-1} with the pairing dual to the Killing form
/// B = 2n·trace of sl_n. Under this normalization (α,α) = 1/n for every root.
class RootSystem {
 public:
  explicit RootSystem(std::size_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("RootSystem: need n >= 2");
    const std::size_t r = rank();
    Matrix gram(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        const long cart = (i == j) ? 2 : ((i + 1 == j || j + 1 == i) ? -1 : 0);
        gram(i, j) = Rational(2 * static_cast<long>(n)) * cart;
      }
    gram_ = gram;
    gram_inv_ = inverse(gram);
  }

  std::size_t n() const { return n_; }
  std::size_t rank() const { return n_ - 1; }

  /// Simple root α_{s+1} in fundamental coordinates (a Cartan-matrix column).
  Weight simple_root(std::size_t s) const {
    Weight w(rank());
    for (std::size_t j = 0; j < rank(); ++j)
      w[j] = (j == s) ? 2 : ((j + 1 == s || s + 1 == j) ? -1 : 0);
    return w;
  }

  /// Root e_i − e_j (0-based, i < j) = α_{i+1} + ... + α_j.
  Weight root(std::size_t i, std::size_t j) const {
    Weight w(rank());
    for (std::size_t s = i; s < j; ++s) w += simple_root(s);
    return w;
  }

  std::vector<Weight> positive_roots() const {
    std::vector<Weight> roots;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) roots.push_back(root(i, j));
    return roots;
  }

  /// The form on weight space dual to B restricted to the Cartan subalgebra.
  Rational pairing(const Weight& a, const Weight& b) const {
    if (a.rank() != rank() || b.rank() != rank())
      throw std::invalid_argument("pairing: rank mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j) s += a[i] * gram_inv_(i, j) * b[j];
    return s;
  }

  Rational norm_sq(const Weight& a) const { return pairing(a, a); }

  /// ρ = sum of fundamental weights = (1,...,1).
  Weight rho() const {
    Weight w(rank());
    for (auto& c : w.coords) c = 1;
    return w;
  }

  /// Half the sum of the given roots.
  Weight rho_of(const std::vector<Weight>& roots) const {
    Weight s(rank());
    for (const auto& r : roots) s += r;
    return Rational(1, 2) * s;
  }

  /// Casimir eigenvalue (λ+ρ, λ+ρ) − (ρ, ρ) on the irreducible of highest
  /// weight λ.
  Rational casimir_scalar(const Weight& lambda) const {
    return norm_sq(lambda + rho()) - norm_sq(rho());
  }

  /// Weyl dimension formula for sl_n, evaluated through the partition
  /// coordinates l_i = λ_i + ... + λ_{n-1}.
  Integer weyl_dim(const Weight& lambda) const {
    if (!lambda.is_dominant() || !lambda.is_integral())
      throw std::invalid_argument("weyl_dim: weight not dominant integral");
    std::vector<Rational> l(n_, Rational(0));
    for (std::size_t i = n_ - 1; i-- > 0;) l[i] = l[i + 1] + lambda[i];
    Rational dim = 1;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        dim *= (l[i] - l[j] + Rational(static_cast<long>(j - i))) /
               Rational(static_cast<long>(j - i));
    if (!is_integer(dim)) throw std::runtime_error("weyl_dim: non-integer result");
    return numerator(dim);
  }

  /// Coordinates of λ in the simple-root basis (rational in general).
  std::vector<Rational> root_coordinates(const Weight& lambda) const {
    Matrix rhs(rank(), 1);
    for (std::size_t i = 0; i < rank(); ++i) rhs(i, 0) = lambda[i];
    // fundamental coords = CartanMatrix · root coords; Cartan = gram / (2n)
    Matrix cart(rank(), rank());
    for (std::size_t i = 0; i < rank(); ++i)
      for (std::size_t j = 0; j < rank(); ++j)
        cart(i, j) = gram_(i, j) / Rational(2 * static_cast<long>(n_));
    const Matrix sol = solve_full_column_rank(cart, rhs);
    std::vector<Rational> out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = sol(i, 0);
    return out;
  }

 private:
  std::size_t n_;
  Matrix gram_;
  Matrix gram_inv_;
};

/// All dominant integral weights with level (sum of coordinates) at most lmax,
/// in lexicographic order.
inline std::vector<Weight> dominant_weights_up_to(std::size_t rank, long lmax) {
  std::vector<Weight> out;
  Weight current(rank);
  const std::function<void(std::size_t, long)> rec = [&](std::size_t pos, long remaining) {
    if (pos == rank) {
      out.push_back(current);
      return;
    }
    for (long v = 0; v <= remaining; ++v) {
      current[pos] = v;
      rec(pos + 1, remaining - v);
    }
  };
  rec(0, lmax);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kdirac
