#include "feec/forms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

using namespace feec;

//-----------------------------------------------------------------------------
PolyForm::PolyForm(int n, int k) : n_(n), k_(k)
{
  if (n < 0 or n > kMaxDim)
    throw std::invalid_argument("form dimension out of range");
  if (k < 0)
    throw std::invalid_argument("negative form degree");
}
//-----------------------------------------------------------------------------
PolyForm PolyForm::scalar(const Polynomial& p)
{
  PolyForm u(p.n(), 0);
  u.add_component(IncreasingSequence({}, p.n()), p);
  return u;
}
//-----------------------------------------------------------------------------
PolyForm PolyForm::monomial(int n, MultiIndex alpha,
                            const IncreasingSequence& sigma,
                            const Rational& c)
{
  return from_component(sigma, Polynomial::monomial(n, alpha, c));
}
//-----------------------------------------------------------------------------
PolyForm PolyForm::from_component(const IncreasingSequence& sigma,
                                  const Polynomial& p)
{
  PolyForm u(p.n(), sigma.size());
  u.add_component(sigma, p);
  return u;
}
//-----------------------------------------------------------------------------
Polynomial PolyForm::component(const IncreasingSequence& sigma) const
{
  auto it = components_.find(sigma);
  return it == components_.end() ? Polynomial(n_) : it->second;
}
//-----------------------------------------------------------------------------
void PolyForm::add_component(const IncreasingSequence& sigma,
                             const Polynomial& p)
{
  if (sigma.n() != n_ or sigma.size() != k_ or p.n() != n_)
    throw std::invalid_argument("form component has wrong shape");
  if (p.is_zero())
    return;
  auto [it, inserted] = components_.try_emplace(sigma, p);
  if (!inserted)
  {
    it->second += p;
    if (it->second.is_zero())
      components_.erase(it);
  }
}
//-----------------------------------------------------------------------------
int PolyForm::degree() const
{
  int d = kZeroDegree;
  for (const auto& [s, p] : components_)
    d = std::max(d, p.degree());
  return d;
}
//-----------------------------------------------------------------------------
void PolyForm::check_compatible(const PolyForm& other) const
{
  if (other.n_ != n_ or other.k_ != k_)
    throw std::invalid_argument("form shape mismatch");
}
//-----------------------------------------------------------------------------
PolyForm& PolyForm::operator+=(const PolyForm& other)
{
  check_compatible(other);
  for (const auto& [s, p] : other.components_)
    add_component(s, p);
  return *this;
}
//-----------------------------------------------------------------------------
PolyForm& PolyForm::operator-=(const PolyForm& other)
{
  check_compatible(other);
  for (const auto& [s, p] : other.components_)
    add_component(s, -p);
  return *this;
}
//-----------------------------------------------------------------------------
PolyForm& PolyForm::operator*=(const Rational& c)
{
  if (c == 0)
    components_.clear();
  else
    for (auto& [s, p] : components_)
      p *= c;
  return *this;
}
//-----------------------------------------------------------------------------
PolyForm feec::operator*(const Polynomial& p, const PolyForm& u)
{
  PolyForm out(u.n(), u.k());
  for (const auto& [s, a] : u.components())
    out.add_component(s, p * a);
  return out;
}
//-----------------------------------------------------------------------------
SparseVector PolyForm::coordinates() const
{
  SparseVector v;
  for (const auto& [s, p] : components_)
  {
    const std::uint64_t hi = static_cast<std::uint64_t>(sigma_rank(s)) << 56;
    for (const auto& [a, c] : p.terms())
      v.emplace_back(hi | a.packed(), c);
  }
  // std::map order on sigma is lexicographic, matching sigma_rank.
  return v;
}
//-----------------------------------------------------------------------------
std::string PolyForm::to_string() const
{
  if (components_.empty())
    return "0";
  std::string out;
  for (const auto& [s, p] : components_)
  {
    std::string dx = "dx[";
    for (int i = 0; i < s.size(); ++i)
      dx += (i ? "," : "") + std::to_string(s[i]);
    dx += "]";
    for (const auto& [a, c] : p.terms())
    {
      if (!out.empty())
        out += " + ";
      out += feec::to_string(c) + " x^[";
      for (int i = 1; i <= n_; ++i)
        out += (i > 1 ? "," : "") + std::to_string(a[i]);
      out += "] " + dx;
    }
  }
  return out;
}
//-----------------------------------------------------------------------------
namespace
{
std::vector<int> parse_int_list(std::string_view body)
{
  std::vector<int> out;
  std::string item;
  std::istringstream in{std::string(body)};
  while (std::getline(in, item, ','))
  {
    if (item.empty())
      throw std::invalid_argument("empty list entry in form text");
    std::size_t used = 0;
    out.push_back(std::stoi(item, &used));
    if (used != item.size())
      throw std::invalid_argument("malformed integer in form text");
  }
  return out;
}
} // namespace
//-----------------------------------------------------------------------------
PolyForm feec::parse_form(std::string_view text, int n, int k)
{
  PolyForm u(n, k);
  if (text == "0")
    return u;
  std::size_t pos = 0;
  while (pos <= text.size())
  {
    std::size_t end = text.find(" + ", pos);
    if (end == std::string_view::npos)
      end = text.size();
    const std::string_view term = text.substr(pos, end - pos);
    // "<coef> x^[a] dx[s]"
    const auto sp1 = term.find(' ');
    const auto xa = term.find("x^[");
    const auto xa_end = term.find(']', xa);
    const auto dx = term.find("dx[", xa_end);
    const auto dx_end = term.find(']', dx);
    if (sp1 == std::string_view::npos or xa != sp1 + 1
        or xa_end == std::string_view::npos or dx != xa_end + 2
        or dx_end != term.size() - 1)
      throw std::invalid_argument("malformed form term: " + std::string(term));
    const Rational c = parse_rational(term.substr(0, sp1));
    const auto alpha = parse_int_list(term.substr(xa + 3, xa_end - xa - 3));
    const auto sigma = parse_int_list(term.substr(dx + 3, dx_end - dx - 3));
    if (static_cast<int>(alpha.size()) != n)
      throw std::invalid_argument("form term has wrong number of exponents");
    if (static_cast<int>(sigma.size()) != k)
      throw std::invalid_argument("form term has wrong degree");
    u += PolyForm::monomial(n, MultiIndex(alpha), IncreasingSequence(sigma, n),
                            c);
    pos = end + 3;
  }
  return u;
}
//-----------------------------------------------------------------------------
AffineEmbedding::AffineEmbedding(AffineMap map) : map_(std::move(map))
{
  if (static_cast<int>(rank(map_.linear)) != map_.source_dim())
    throw std::invalid_argument("affine embedding must have full column rank");
}
//-----------------------------------------------------------------------------
PolyForm feec::wedge(const PolyForm& a, const PolyForm& b)
{
  if (a.n() != b.n())
    throw std::invalid_argument("wedge of forms in different dimensions");
  PolyForm out(a.n(), a.k() + b.k());
  if (a.k() + b.k() > a.n())
    return out;
  for (const auto& [sa, pa] : a.components())
    for (const auto& [sb, pb] : b.components())
    {
      const int sign = merge_sign(sa, sb);
      if (sign == 0)
        continue;
      out.add_component(merge(sa, sb), pa * pb * Rational(sign));
    }
  return out;
}
//-----------------------------------------------------------------------------
PolyForm feec::exterior_derivative(const PolyForm& u)
{
  PolyForm out(u.n(), u.k() + 1);
  if (u.k() >= u.n())
    return out;
  for (const auto& [s, p] : u.components())
    for (int j = 1; j <= u.n(); ++j)
    {
      if (s.contains(j))
        continue;
      const Polynomial dp = partial_derivative(p, j);
      if (dp.is_zero())
        continue;
      const IncreasingSequence sj({j}, u.n());
      out.add_component(merge(sj, s), dp * Rational(merge_sign(sj, s)));
    }
  return out;
}
//-----------------------------------------------------------------------------
PolyForm feec::koszul(const PolyForm& u, std::span<const Rational> base)
{
  if (!base.empty() and static_cast<int>(base.size()) != u.n())
    throw std::invalid_argument("koszul base point has wrong dimension");
  if (u.k() == 0)
    return PolyForm(u.n(), 0);
  PolyForm out(u.n(), u.k() - 1);
  for (const auto& [s, p] : u.components())
    for (int j = 0; j < s.size(); ++j)
    {
      const int i = s[j];
      Polynomial xi = Polynomial::variable(u.n(), i);
      if (!base.empty())
        xi -= Polynomial::constant(u.n(), base[i - 1]);
      out.add_component(s.without(i),
                        p * xi * Rational(j % 2 == 0 ? 1 : -1));
    }
  return out;
}
//-----------------------------------------------------------------------------
PolyForm feec::pullback(const PolyForm& u, const AffineMap& map)
{
  if (map.target_dim() != u.n())
    throw std::invalid_argument("pullback: map target does not match form");
  const int m = map.source_dim();
  PolyForm out(m, u.k());
  if (u.k() > m)
    return out;
  const auto taus = enumerate_sigma(u.k(), m);
  for (const auto& [s, p] : u.components())
  {
    const Polynomial q = compose_affine(p, map);
    for (const auto& tau : taus)
    {
      // dF^{s_1} ^ ... ^ dF^{s_k} has coefficient det A[s, tau] on dt^tau.
      RationalMatrix minor(u.k(), u.k());
      for (int i = 0; i < u.k(); ++i)
        for (int j = 0; j < u.k(); ++j)
          minor(i, j) = map.linear(s[i] - 1, tau[j] - 1);
      const Rational det = determinant(minor);
      if (det != 0)
        out.add_component(tau, q * det);
    }
  }
  return out;
}
//-----------------------------------------------------------------------------
PolyForm feec::trace_to_face(const PolyForm& u, const AffineEmbedding& face)
{
  return pullback(u, face.map());
}
//-----------------------------------------------------------------------------
int feec::ldeg(MultiIndex alpha, const IncreasingSequence& sigma)
{
  int count = 0;
  for (int i = 1; i <= sigma.n(); ++i)
    if (alpha[i] == 1 and !sigma.contains(i))
      ++count;
  return count;
}
//-----------------------------------------------------------------------------
namespace
{
mpz_class factorial(int n)
{
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}
} // namespace
//-----------------------------------------------------------------------------
Rational
feec::integrate_simplex(const PolyForm& u,
                        const std::vector<std::vector<Rational>>& vertices)
{
  const int n = u.n();
  if (u.k() != n)
    throw std::invalid_argument("integrate_simplex needs a top-degree form");
  if (static_cast<int>(vertices.size()) != n + 1)
    throw std::invalid_argument("simplex has wrong number of vertices");
  if (n + 1 > kMaxDim)
    throw std::invalid_argument("simplex dimension too large");
  for (const auto& v : vertices)
    if (static_cast<int>(v.size()) != n)
      throw std::invalid_argument("simplex vertex has wrong dimension");
  RationalMatrix edges(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      edges(i, j) = vertices[j + 1][i] - vertices[0][i];
  const Rational det = determinant(edges);
  if (det == 0)
    throw std::invalid_argument("degenerate simplex");
  const Polynomial a = u.component(IncreasingSequence::from_mask(
      (1u << n) - 1, n));
  // x = sum_i lambda_i v_i, then integrate monomials in lambda with
  //   int_T lambda^a dV = n! vol(T) prod a_i! / (|a| + n)!
  // where n! vol(T) = |det|; the sign of det carries the orientation.
  AffineMap to_bary{RationalMatrix(n, n + 1), std::vector<Rational>(n)};
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < n; ++j)
      to_bary.linear(j, i) = vertices[i][j];
  const Polynomial b = compose_affine(a, to_bary);
  Rational sum = 0;
  for (const auto& [alpha, c] : b.terms())
  {
    mpz_class num = 1;
    for (int i = 1; i <= n + 1; ++i)
      num *= factorial(alpha[i]);
    Rational w(num, factorial(alpha.degree() + n));
    w.canonicalize();
    sum += c * w;
  }
  return det * sum;
}
//-----------------------------------------------------------------------------
Rational feec::integrate_box(const PolyForm& u, std::span<const Rational> lo,
                             std::span<const Rational> hi)
{
  const int n = u.n();
  if (u.k() != n)
    throw std::invalid_argument("integrate_box needs a top-degree form");
  if (static_cast<int>(lo.size()) != n or static_cast<int>(hi.size()) != n)
    throw std::invalid_argument("box bounds have wrong dimension");
  for (int i = 0; i < n; ++i)
    if (lo[i] == hi[i])
      throw std::invalid_argument("degenerate box");
  const Polynomial a
      = u.component(IncreasingSequence::from_mask((1u << n) - 1, n));
  Rational sum = 0;
  for (const auto& [alpha, c] : a.terms())
  {
    Rational t = c;
    for (int i = 0; i < n; ++i)
    {
      const int e = alpha[i + 1] + 1;
      Rational h, l;
      mpz_pow_ui(h.get_num_mpz_t(), hi[i].get_num_mpz_t(), e);
      mpz_pow_ui(h.get_den_mpz_t(), hi[i].get_den_mpz_t(), e);
      mpz_pow_ui(l.get_num_mpz_t(), lo[i].get_num_mpz_t(), e);
      mpz_pow_ui(l.get_den_mpz_t(), lo[i].get_den_mpz_t(), e);
      t *= (h - l) / e;
    }
    sum += t;
  }
  return sum;
}
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::monomial_forms(int n, int k, int r)
{
  std::vector<PolyForm> out;
  if (k > n or r < 0)
    return out;
  const auto alphas = monomials_of_degree(n, r);
  for (const auto& s : enumerate_sigma(k, n))
    for (const auto& a : alphas)
      out.push_back(PolyForm::monomial(n, a, s));
  return out;
}
