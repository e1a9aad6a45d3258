#pragma once

#include "feec/combinatorics.hpp"
#include "feec/linalg.hpp"
#include "feec/rational.hpp"

#include <climits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace feec
{

/// Degree reported for the zero polynomial, so that "deg <= r" holds for it.
inline constexpr int kZeroDegree = INT_MIN;

/// Affine map t -> A t + b from Q^m to Q^n. A is stored n x m.
struct AffineMap
{
  RationalMatrix linear;
  std::vector<Rational> offset;

  int source_dim() const { return static_cast<int>(linear.cols()); }
  int target_dim() const { return static_cast<int>(linear.rows()); }

  std::vector<Rational> operator()(std::span<const Rational> t) const;

  static AffineMap identity(int n);
  /// (this o inner)(t) = this(inner(t)).
  AffineMap compose(const AffineMap& inner) const;
  /// Inverse of a square invertible map. Throws std::domain_error.
  AffineMap inverse() const;
};

/// Multivariate polynomial with rational coefficients in x^1..x^n.
/// No stored coefficient is zero.
class Polynomial
{
public:
  using Terms = std::map<MultiIndex, Rational>;

  explicit Polynomial(int n = 0);

  static Polynomial constant(int n, const Rational& c);
  static Polynomial variable(int n, int i);
  static Polynomial monomial(int n, MultiIndex alpha, const Rational& c = 1);

  int n() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree, kZeroDegree for the zero polynomial.
  int degree() const;
  Rational coefficient(MultiIndex alpha) const;

  /// Adds c x^alpha in place.
  void add_term(MultiIndex alpha, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b)
  {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b)
  {
    return a -= b;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c)
  {
    return a *= c;
  }
  friend Polynomial operator*(const Rational& c, Polynomial a)
  {
    return a *= c;
  }
  Polynomial operator-() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Polynomial pow(int e) const;

  /// Exact value at a rational point (length n).
  Rational evaluate(std::span<const Rational> x) const;

  std::string to_string() const;

private:
  void check_same_dim(const Polynomial& other) const;
  int n_;
  Terms terms_;
};

Polynomial operator*(const Polynomial& a, const Polynomial& b);

/// Elementwise arithmetic entry point.
enum class PolyOp
{
  add,
  sub,
  mul
};
Polynomial poly_arith(const Polynomial& a, const Polynomial& b, PolyOp op);
Polynomial scale(const Polynomial& a, const Rational& c);

/// d p / d x^j, 1 <= j <= n. Throws std::out_of_range.
Polynomial partial_derivative(const Polynomial& p, int j);

/// Sum of the terms of total degree exactly r.
Polynomial homogeneous_part(const Polynomial& p, int r);

/// Degree ignoring every variable that appears to the first power.
int sdeg(MultiIndex alpha);
/// Maximum sdeg over the stored monomials; kZeroDegree for zero.
int sdeg(const Polynomial& p);

/// p o map, a polynomial in map.source_dim() variables.
/// Throws std::invalid_argument if map.target_dim() != p.n().
Polynomial compose_affine(const Polynomial& p, const AffineMap& map);

/// Barycentric coordinates of a nondegenerate simplex with n+1 vertices in
/// Q^n, expanded in Cartesian monomials.
struct BarycentricSystem
{
  std::vector<std::vector<Rational>> vertices;
  std::vector<Polynomial> lambdas;
};

/// Throws std::invalid_argument for affinely dependent vertices.
BarycentricSystem barycentric(const std::vector<std::vector<Rational>>& simplex);

} // namespace feec
