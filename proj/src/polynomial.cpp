#include "feec/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

using namespace feec;

//-----------------------------------------------------------------------------
std::vector<Rational> AffineMap::operator()(std::span<const Rational> t) const
{
  if (static_cast<int>(t.size()) != source_dim())
    throw std::invalid_argument("affine map argument has wrong length");
  std::vector<Rational> x = offset;
  for (int i = 0; i < target_dim(); ++i)
    for (int j = 0; j < source_dim(); ++j)
      x[i] += linear(i, j) * t[j];
  return x;
}
//-----------------------------------------------------------------------------
AffineMap AffineMap::identity(int n)
{
  AffineMap m{RationalMatrix(n, n), std::vector<Rational>(n)};
  for (int i = 0; i < n; ++i)
    m.linear(i, i) = 1;
  return m;
}
//-----------------------------------------------------------------------------
AffineMap AffineMap::compose(const AffineMap& inner) const
{
  if (inner.target_dim() != source_dim())
    throw std::invalid_argument("affine composition dimension mismatch");
  AffineMap m{RationalMatrix(target_dim(), inner.source_dim()), offset};
  for (int i = 0; i < target_dim(); ++i)
  {
    for (int j = 0; j < inner.source_dim(); ++j)
      for (int l = 0; l < source_dim(); ++l)
        m.linear(i, j) += linear(i, l) * inner.linear(l, j);
    for (int l = 0; l < source_dim(); ++l)
      m.offset[i] += linear(i, l) * inner.offset[l];
  }
  return m;
}
//-----------------------------------------------------------------------------
AffineMap AffineMap::inverse() const
{
  if (source_dim() != target_dim())
    throw std::domain_error("only square affine maps are invertible");
  AffineMap m{feec::inverse(linear), std::vector<Rational>(source_dim())};
  for (int i = 0; i < source_dim(); ++i)
    for (int j = 0; j < source_dim(); ++j)
      m.offset[i] -= m.linear(i, j) * offset[j];
  return m;
}
//-----------------------------------------------------------------------------
Polynomial::Polynomial(int n) : n_(n)
{
  if (n < 0 or n > kMaxDim)
    throw std::invalid_argument("polynomial dimension out of range");
}
//-----------------------------------------------------------------------------
Polynomial Polynomial::constant(int n, const Rational& c)
{
  Polynomial p(n);
  p.add_term(MultiIndex(), c);
  return p;
}
//-----------------------------------------------------------------------------
Polynomial Polynomial::variable(int n, int i)
{
  if (i < 1 or i > n)
    throw std::out_of_range("variable index out of range");
  return monomial(n, MultiIndex().with(i, 1));
}
//-----------------------------------------------------------------------------
Polynomial Polynomial::monomial(int n, MultiIndex alpha, const Rational& c)
{
  Polynomial p(n);
  p.add_term(alpha, c);
  return p;
}
//-----------------------------------------------------------------------------
int Polynomial::degree() const
{
  int d = kZeroDegree;
  for (const auto& [a, c] : terms_)
    d = std::max(d, a.degree());
  return d;
}
//-----------------------------------------------------------------------------
Rational Polynomial::coefficient(MultiIndex alpha) const
{
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}
//-----------------------------------------------------------------------------
void Polynomial::add_term(MultiIndex alpha, const Rational& c)
{
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted)
  {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}
//-----------------------------------------------------------------------------
void Polynomial::check_same_dim(const Polynomial& other) const
{
  if (other.n_ != n_)
    throw std::invalid_argument("polynomial dimension mismatch");
}
//-----------------------------------------------------------------------------
Polynomial& Polynomial::operator+=(const Polynomial& other)
{
  check_same_dim(other);
  for (const auto& [a, c] : other.terms_)
    add_term(a, c);
  return *this;
}
//-----------------------------------------------------------------------------
Polynomial& Polynomial::operator-=(const Polynomial& other)
{
  check_same_dim(other);
  for (const auto& [a, c] : other.terms_)
    add_term(a, -c);
  return *this;
}
//-----------------------------------------------------------------------------
Polynomial& Polynomial::operator*=(const Rational& c)
{
  if (c == 0)
    terms_.clear();
  else
    for (auto& [a, v] : terms_)
      v *= c;
  return *this;
}
//-----------------------------------------------------------------------------
Polynomial feec::operator*(const Polynomial& a, const Polynomial& b)
{
  a.check_same_dim(b);
  Polynomial p(a.n());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      p.add_term(ma + mb, ca * cb);
  return p;
}
//-----------------------------------------------------------------------------
Polynomial Polynomial::operator-() const
{
  Polynomial p = *this;
  for (auto& [a, c] : p.terms_)
    c = -c;
  return p;
}
//-----------------------------------------------------------------------------
Polynomial Polynomial::pow(int e) const
{
  if (e < 0)
    throw std::invalid_argument("negative polynomial power");
  Polynomial result = constant(n_, 1);
  Polynomial base = *this;
  while (e > 0)
  {
    if (e & 1)
      result = result * base;
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return result;
}
//-----------------------------------------------------------------------------
Rational Polynomial::evaluate(std::span<const Rational> x) const
{
  if (static_cast<int>(x.size()) != n_)
    throw std::invalid_argument("evaluation point has wrong dimension");
  Rational s = 0;
  for (const auto& [a, c] : terms_)
  {
    Rational t = c;
    for (int i = 1; i <= n_; ++i)
    {
      Rational f;
      mpz_pow_ui(f.get_num_mpz_t(), x[i - 1].get_num_mpz_t(), a[i]);
      mpz_pow_ui(f.get_den_mpz_t(), x[i - 1].get_den_mpz_t(), a[i]);
      t *= f;
    }
    s += t;
  }
  return s;
}
//-----------------------------------------------------------------------------
std::string Polynomial::to_string() const
{
  if (terms_.empty())
    return "0";
  std::string s;
  for (const auto& [a, c] : terms_)
  {
    if (!s.empty())
      s += " + ";
    s += feec::to_string(c) + " x^[";
    for (int i = 1; i <= n_; ++i)
    {
      if (i > 1)
        s += ",";
      s += std::to_string(a[i]);
    }
    s += "]";
  }
  return s;
}
//-----------------------------------------------------------------------------
Polynomial feec::poly_arith(const Polynomial& a, const Polynomial& b,
                            PolyOp op)
{
  switch (op)
  {
  case PolyOp::add:
    return a + b;
  case PolyOp::sub:
    return a - b;
  case PolyOp::mul:
    return a * b;
  }
  throw std::invalid_argument("unknown polynomial operation");
}
//-----------------------------------------------------------------------------
Polynomial feec::scale(const Polynomial& a, const Rational& c) { return a * c; }
//-----------------------------------------------------------------------------
Polynomial feec::partial_derivative(const Polynomial& p, int j)
{
  if (j < 1 or j > p.n())
    throw std::out_of_range("partial derivative index out of range");
  Polynomial out(p.n());
  for (const auto& [a, c] : p.terms())
  {
    const int e = a[j];
    if (e > 0)
      out.add_term(a.with(j, e - 1), c * e);
  }
  return out;
}
//-----------------------------------------------------------------------------
Polynomial feec::homogeneous_part(const Polynomial& p, int r)
{
  Polynomial out(p.n());
  for (const auto& [a, c] : p.terms())
    if (a.degree() == r)
      out.add_term(a, c);
  return out;
}
//-----------------------------------------------------------------------------
int feec::sdeg(MultiIndex alpha)
{
  int s = 0;
  for (int i = 1; i <= kMaxDim; ++i)
    if (alpha[i] != 1)
      s += alpha[i];
  return s;
}
//-----------------------------------------------------------------------------
int feec::sdeg(const Polynomial& p)
{
  int s = kZeroDegree;
  for (const auto& [a, c] : p.terms())
    s = std::max(s, sdeg(a));
  return s;
}
//-----------------------------------------------------------------------------
Polynomial feec::compose_affine(const Polynomial& p, const AffineMap& map)
{
  if (map.target_dim() != p.n())
    throw std::invalid_argument("compose_affine: map target dimension "
                                "does not match polynomial");
  const int m = map.source_dim();
  // Substituted coordinates x^i(t) and their powers, built lazily.
  std::vector<std::vector<Polynomial>> powers(p.n());
  for (int i = 0; i < p.n(); ++i)
  {
    Polynomial xi = Polynomial::constant(m, map.offset[i]);
    for (int j = 0; j < m; ++j)
      xi += Polynomial::variable(m, j + 1) * map.linear(i, j);
    powers[i].push_back(Polynomial::constant(m, 1));
    powers[i].push_back(std::move(xi));
  }
  auto power = [&](int i, int e) -> const Polynomial&
  {
    while (static_cast<int>(powers[i].size()) <= e)
      powers[i].push_back(powers[i].back() * powers[i][1]);
    return powers[i][e];
  };
  Polynomial out(m);
  for (const auto& [a, c] : p.terms())
  {
    Polynomial t = Polynomial::constant(m, c);
    for (int i = 0; i < p.n(); ++i)
      if (a[i + 1] > 0)
        t = t * power(i, a[i + 1]);
    out += t;
  }
  return out;
}
//-----------------------------------------------------------------------------
BarycentricSystem
feec::barycentric(const std::vector<std::vector<Rational>>& simplex)
{
  const int n = static_cast<int>(simplex.size()) - 1;
  if (n < 0)
    throw std::invalid_argument("simplex needs at least one vertex");
  for (const auto& v : simplex)
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("simplex vertex has wrong dimension");
  // Rows: (1, v_j); lambda_i(x) = sum_j c_ij x^j + c_i0 solves M^T c = e_i.
  RationalMatrix m(n + 1, n + 1);
  for (int j = 0; j <= n; ++j)
  {
    m(j, 0) = 1;
    for (int l = 0; l < n; ++l)
      m(j, l + 1) = simplex[j][l];
  }
  if (determinant(m) == 0)
    throw std::invalid_argument("degenerate simplex");
  const RationalMatrix inv = inverse(m);
  BarycentricSystem sys{simplex, {}};
  for (int i = 0; i <= n; ++i)
  {
    // lambda_i(v_j) = delta_ij  <=>  column i of inv holds its coefficients.
    Polynomial l = Polynomial::constant(n, inv(0, i));
    for (int c = 1; c <= n; ++c)
      l += Polynomial::variable(n, c) * inv(c, i);
    sys.lambdas.push_back(std::move(l));
  }
  return sys;
}
