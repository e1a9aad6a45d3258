#pragma once

// Test-side oracles. Nothing here calls the library's integration or
// degree-of-freedom code; polynomials are handled as plain exponent maps.

#include "feec/forms.hpp"
#include "feec/spaces.hpp"

#include <gmpxx.h>

#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle
{

using Exps = std::vector<int>;
using Poly = std::map<Exps, mpq_class>;

inline void add(Poly& p, const Exps& e, const mpq_class& c)
{
  auto& v = p[e];
  v += c;
  if (v == 0)
    p.erase(e);
}

inline Poly mul(const Poly& a, const Poly& b)
{
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b)
    {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      add(out, e, ca * cb);
    }
  return out;
}

inline Poly power(const Poly& p, int m, int n)
{
  Poly out{{Exps(n, 0), 1}};
  for (int i = 0; i < m; ++i)
    out = mul(out, p);
  return out;
}

/// Integral over the reference simplex conv{0, e_1, .., e_n}, computed by
/// integrating x_n from 0 to 1 - x_1 - .. - x_{n-1}, then x_{n-1}, and so on.
inline mpq_class iterated_simplex_integral(Poly p, int n)
{
  for (int j = n - 1; j >= 0; --j)
  {
    // Upper limit 1 - sum_{i<j} x_i.
    Poly upper{{Exps(n, 0), 1}};
    for (int i = 0; i < j; ++i)
    {
      Exps e(n, 0);
      e[i] = 1;
      add(upper, e, -1);
    }
    Poly next;
    for (const auto& [e, c] : p)
    {
      const int a = e[j];
      Exps rest = e;
      rest[j] = 0;
      const Poly term = mul(Poly{{rest, c / mpq_class(a + 1)}},
                            power(upper, a + 1, n));
      for (const auto& [e2, c2] : term)
        add(next, e2, c2);
    }
    p = next;
  }
  return p.empty() ? mpq_class(0) : p.begin()->second;
}

inline mpq_class det(std::vector<std::vector<mpq_class>> m)
{
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  mpq_class total = 0;
  for (std::size_t c = 0; c < n; ++c)
  {
    std::vector<std::vector<mpq_class>> minor;
    for (std::size_t r = 1; r < n; ++r)
    {
      std::vector<mpq_class> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c)
          row.push_back(m[r][cc]);
      minor.push_back(row);
    }
    total += (c % 2 == 0 ? 1 : -1) * m[0][c] * det(minor);
  }
  return total;
}

/// Integral of x^alpha dx^1 ^ .. ^ dx^n over the oriented simplex with the
/// given vertices: substitute x = v_0 + sum_j t_j (v_j - v_0) and multiply by
/// the Jacobian determinant.
inline mpq_class simplex_monomial_integral(
    const Exps& alpha, const std::vector<std::vector<mpq_class>>& v)
{
  const int n = static_cast<int>(alpha.size());
  std::vector<std::vector<mpq_class>> jac(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      jac[i][j] = v[j + 1][i] - v[0][i];
  Poly p{{Exps(n, 0), 1}};
  for (int i = 0; i < n; ++i)
  {
    Poly xi{{Exps(n, 0), v[0][i]}};
    for (int j = 0; j < n; ++j)
    {
      Exps e(n, 0);
      e[j] = 1;
      add(xi, e, jac[i][j]);
    }
    p = mul(p, power(xi, alpha[i], n));
  }
  return det(jac) * iterated_simplex_integral(p, n);
}

/// Q_r^- degrees of freedom as tensor products of the one-dimensional ones:
/// endpoint values and moments against t^j, j <= r-2, for 0-forms, moments
/// against t^j, j <= r-1, for 1-forms. Each row lists the functional values
/// on the given forms.
inline std::vector<std::vector<mpq_class>>
qminus_tensor_functionals(int r, int k, int n,
                          const std::vector<feec::PolyForm>& forms)
{
  struct OneD
  {
    int degree; // form degree on the interval
    int kind;   // -1: value at 0, -2: value at 1, j >= 0: moment t^j
  };
  std::vector<OneD> zero, one;
  zero.push_back({0, -1});
  zero.push_back({0, -2});
  for (int j = 0; j <= r - 2; ++j)
    zero.push_back({0, j});
  for (int j = 0; j <= r - 1; ++j)
    one.push_back({1, j});
  auto eval_1d = [](const OneD& f, int a) -> mpq_class
  {
    if (f.kind == -1)
      return a == 0 ? 1 : 0;
    if (f.kind == -2)
      return 1;
    return mpq_class(1, a + f.kind + 1);
  };

  std::vector<std::vector<mpq_class>> rows;
  std::vector<OneD> pick(n);
  std::function<void(int, int)> rec = [&](int axis, int used)
  {
    if (axis == n)
    {
      if (used != k)
        return;
      std::vector<int> sigma;
      for (int i = 0; i < n; ++i)
        if (pick[i].degree == 1)
          sigma.push_back(i + 1);
      const feec::IncreasingSequence s(sigma, n);
      std::vector<mpq_class> row;
      for (const auto& u : forms)
      {
        mpq_class total = 0;
        const feec::Polynomial coefficient = u.component(s);
        for (const auto& [alpha, c] : coefficient.terms())
        {
          mpq_class prod = c;
          for (int i = 0; i < n; ++i)
            prod *= eval_1d(pick[i], alpha[i + 1]);
          total += prod;
        }
        row.push_back(total);
      }
      rows.push_back(row);
      return;
    }
    for (const auto& f : zero)
    {
      pick[axis] = f;
      rec(axis + 1, used);
    }
    for (const auto& f : one)
    {
      pick[axis] = f;
      rec(axis + 1, used + 1);
    }
  };
  rec(0, 0);
  return rows;
}

} // namespace oracle

namespace testing_util
{

/// Random form with small integer coefficients and degree <= r.
inline feec::PolyForm random_form(std::mt19937& rng, int n, int k, int r,
                                  int terms = 4)
{
  feec::PolyForm u(n, k);
  if (k > n)
    return u;
  const auto sigmas = feec::enumerate_sigma(k, n);
  const auto alphas = feec::monomials_up_to(n, r);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> ps(0, sigmas.size() - 1);
  std::uniform_int_distribution<std::size_t> pa(0, alphas.size() - 1);
  for (int t = 0; t < terms; ++t)
    u += feec::PolyForm::monomial(n, alphas[pa(rng)], sigmas[ps(rng)],
                                  coef(rng));
  return u;
}

/// Random form whose coefficients are homogeneous of degree r.
inline feec::PolyForm random_homogeneous(std::mt19937& rng, int n, int k,
                                         int r, int terms = 4)
{
  feec::PolyForm u(n, k);
  const auto sigmas = feec::enumerate_sigma(k, n);
  const auto alphas = feec::monomials_of_degree(n, r);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<std::size_t> ps(0, sigmas.size() - 1);
  std::uniform_int_distribution<std::size_t> pa(0, alphas.size() - 1);
  for (int t = 0; t < terms; ++t)
    u += feec::PolyForm::monomial(n, alphas[pa(rng)], sigmas[ps(rng)],
                                  coef(rng));
  return u;
}

/// Random invertible affine map of Q^n with small entries.
inline feec::AffineMap random_affine(std::mt19937& rng, int m, int n)
{
  std::uniform_int_distribution<int> e(-2, 2);
  while (true)
  {
    feec::AffineMap f{feec::RationalMatrix(n, m),
                      std::vector<feec::Rational>(n)};
    for (int i = 0; i < n; ++i)
    {
      f.offset[i] = feec::make_rational(e(rng), 2);
      for (int j = 0; j < m; ++j)
        f.linear(i, j) = e(rng);
    }
    if (static_cast<int>(feec::rank(f.linear)) == std::min(m, n))
      return f;
  }
}

inline feec::PolyForm form(const char* text, int n, int k)
{
  return feec::parse_form(text, n, k);
}

inline feec::Polynomial x(int n, int i) { return feec::Polynomial::variable(n, i); }

inline feec::IncreasingSequence seq(std::vector<int> e, int n)
{
  return feec::IncreasingSequence(std::move(e), n);
}

} // namespace testing_util
