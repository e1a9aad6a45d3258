#pragma once

#include "feec/combinatorics.hpp"
#include "feec/linalg.hpp"
#include "feec/polynomial.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace feec
{

/// Polynomial differential k-form sum_sigma a_sigma dx^sigma on Q^n.
/// Zero components are never stored; forms with k > n are always zero.
class PolyForm
{
public:
  using Components = std::map<IncreasingSequence, Polynomial>;

  PolyForm(int n, int k);

  static PolyForm scalar(const Polynomial& p);
  /// c x^alpha dx^sigma.
  static PolyForm monomial(int n, MultiIndex alpha,
                           const IncreasingSequence& sigma,
                           const Rational& c = 1);
  /// p dx^sigma.
  static PolyForm from_component(const IncreasingSequence& sigma,
                                 const Polynomial& p);

  int n() const { return n_; }
  int k() const { return k_; }
  const Components& components() const { return components_; }
  bool is_zero() const { return components_.empty(); }
  Polynomial component(const IncreasingSequence& sigma) const;

  void add_component(const IncreasingSequence& sigma, const Polynomial& p);

  /// Largest coefficient degree, kZeroDegree for the zero form.
  int degree() const;

  PolyForm& operator+=(const PolyForm& other);
  PolyForm& operator-=(const PolyForm& other);
  PolyForm& operator*=(const Rational& c);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(PolyForm a, const Rational& c) { return a *= c; }
  friend PolyForm operator*(const Rational& c, PolyForm a) { return a *= c; }
  /// Multiplies every coefficient by the 0-form p.
  friend PolyForm operator*(const Polynomial& p, const PolyForm& u);
  PolyForm operator-() const { return *this * Rational(-1); }

  friend bool operator==(const PolyForm&, const PolyForm&) = default;

  /// Coordinates in the monomial-form basis, keyed by (sigma rank, alpha)
  /// so that key order is lexicographic in (sigma, alpha).
  SparseVector coordinates() const;

  /// Canonical rendering: "c x^[a1,..,an] dx[s1,..,sk]" terms joined by
  /// " + " in lexicographic (sigma, alpha) order, or "0".
  std::string to_string() const;

private:
  void check_compatible(const PolyForm& other) const;
  int n_;
  int k_;
  Components components_;
};

PolyForm operator*(const Polynomial& p, const PolyForm& u);

/// Inverse of PolyForm::to_string. Throws std::invalid_argument.
PolyForm parse_form(std::string_view text, int n, int k);

/// Affine map with full column rank (an embedding of Q^m into Q^n).
class AffineEmbedding
{
public:
  /// Throws std::invalid_argument if the linear part is rank deficient.
  explicit AffineEmbedding(AffineMap map);
  const AffineMap& map() const { return map_; }
  int source_dim() const { return map_.source_dim(); }
  int target_dim() const { return map_.target_dim(); }

private:
  AffineMap map_;
};

PolyForm wedge(const PolyForm& a, const PolyForm& b);
PolyForm exterior_derivative(const PolyForm& u);

/// Contraction with the vector field x - base (base defaults to the origin).
PolyForm koszul(const PolyForm& u,
                std::span<const Rational> base = std::span<const Rational>{});

/// F^* u for an affine F whose target dimension is u.n().
PolyForm pullback(const PolyForm& u, const AffineMap& map);

/// Trace of u on the image of a face parametrization.
PolyForm trace_to_face(const PolyForm& u, const AffineEmbedding& face);

/// Linear degree of the monomial form x^alpha dx^sigma: the number of
/// variables with exponent one that do not appear in sigma.
int ldeg(MultiIndex alpha, const IncreasingSequence& sigma);

/// Integral of an n-form over the oriented n-simplex with the given ordered
/// vertices in Q^n. Throws std::invalid_argument on degree mismatch or a
/// degenerate simplex.
Rational integrate_simplex(const PolyForm& u,
                           const std::vector<std::vector<Rational>>& vertices);

/// Integral of an n-form over the box prod [lo_i, hi_i] with the standard
/// orientation of Q^n.
Rational integrate_box(const PolyForm& u, std::span<const Rational> lo,
                       std::span<const Rational> hi);

/// All monomial k-forms x^alpha dx^sigma in n variables with deg alpha = r,
/// in lexicographic (sigma, alpha) order.
std::vector<PolyForm> monomial_forms(int n, int k, int r);

} // namespace feec
