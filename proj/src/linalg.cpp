#include "feec/linalg.hpp"

#include <stdexcept>

using namespace feec;

namespace
{
// Forward elimination with partial (first nonzero) pivoting. Returns the
// rank and accumulates the determinant sign/scale when square.
std::size_t eliminate(RationalMatrix& m, Rational* det,
                      std::vector<Rational>* rhs)
{
  std::size_t row = 0;
  if (det)
    *det = 1;
  for (std::size_t col = 0; col < m.cols() and row < m.rows(); ++col)
  {
    std::size_t piv = row;
    while (piv < m.rows() and m(piv, col) == 0)
      ++piv;
    if (piv == m.rows())
    {
      if (det)
        *det = 0;
      continue;
    }
    if (piv != row)
    {
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(piv, j), m(row, j));
      if (rhs)
        std::swap((*rhs)[piv], (*rhs)[row]);
      if (det)
        *det = -*det;
    }
    const Rational p = m(row, col);
    if (det)
      *det *= p;
    for (std::size_t i = row + 1; i < m.rows(); ++i)
    {
      if (m(i, col) == 0)
        continue;
      const Rational f = m(i, col) / p;
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) -= f * m(row, j);
      if (rhs)
        (*rhs)[i] -= f * (*rhs)[row];
    }
    ++row;
  }
  return row;
}
} // namespace

//-----------------------------------------------------------------------------
Rational feec::determinant(RationalMatrix m)
{
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant of non-square matrix");
  if (m.rows() == 0)
    return 1;
  Rational det;
  const std::size_t r = eliminate(m, &det, nullptr);
  return r == m.rows() ? det : Rational(0);
}
//-----------------------------------------------------------------------------
std::size_t feec::rank(RationalMatrix m) { return eliminate(m, nullptr, nullptr); }
//-----------------------------------------------------------------------------
std::optional<std::vector<Rational>> feec::solve(RationalMatrix m,
                                                 std::vector<Rational> b)
{
  const std::size_t n = m.rows();
  if (m.cols() != n or b.size() != n)
    throw std::invalid_argument("solve requires a square system");
  if (eliminate(m, nullptr, &b) != n)
    return std::nullopt;
  // After elimination the pivots sit on the diagonal.
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;)
  {
    Rational s = b[i];
    for (std::size_t j = i + 1; j < n; ++j)
      s -= m(i, j) * x[j];
    x[i] = s / m(i, i);
  }
  return x;
}
//-----------------------------------------------------------------------------
RationalMatrix feec::inverse(const RationalMatrix& m)
{
  const std::size_t n = m.rows();
  RationalMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j)
  {
    std::vector<Rational> e(n);
    e[j] = 1;
    auto x = solve(m, e);
    if (!x)
      throw std::domain_error("matrix is singular");
    for (std::size_t i = 0; i < n; ++i)
      inv(i, j) = (*x)[i];
  }
  return inv;
}
//-----------------------------------------------------------------------------
Echelon::IntRow Echelon::to_primitive(const SparseVector& v)
{
  IntRow row;
  row.reserve(v.size());
  mpz_class lcm = 1;
  for (const auto& [c, q] : v)
    if (q != 0)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  mpz_class g = 0;
  for (const auto& [c, q] : v)
  {
    if (q == 0)
      continue;
    mpz_class z = q.get_num() * (lcm / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    row.emplace_back(c, std::move(z));
  }
  if (g > 1)
    for (auto& [c, z] : row)
      mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
  return row;
}
//-----------------------------------------------------------------------------
Echelon::IntRow Echelon::reduce(IntRow v) const
{
  IntRow next;
  while (!v.empty())
  {
    auto it = pivots_.find(v.front().first);
    if (it == pivots_.end())
      break;
    const IntRow& p = it->second;
    // v <- p0 * v - v0 * p, cancelling the leading entry.
    const mpz_class a = p.front().second;
    const mpz_class b = v.front().second;
    next.clear();
    next.reserve(v.size() + p.size());
    std::size_t i = 1, j = 1;
    mpz_class g = 0;
    auto push = [&](std::uint64_t c, mpz_class&& z)
    {
      if (z == 0)
        return;
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
      next.emplace_back(c, std::move(z));
    };
    while (i < v.size() or j < p.size())
    {
      if (j == p.size() or (i < v.size() and v[i].first < p[j].first))
      {
        push(v[i].first, a * v[i].second);
        ++i;
      }
      else if (i == v.size() or p[j].first < v[i].first)
      {
        push(p[j].first, -b * p[j].second);
        ++j;
      }
      else
      {
        push(v[i].first, a * v[i].second - b * p[j].second);
        ++i;
        ++j;
      }
    }
    if (g > 1)
      for (auto& [c, z] : next)
        mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), g.get_mpz_t());
    std::swap(v, next);
  }
  return v;
}
//-----------------------------------------------------------------------------
bool Echelon::insert(const SparseVector& v)
{
  IntRow r = reduce(to_primitive(v));
  if (r.empty())
    return false;
  pivots_.emplace(r.front().first, std::move(r));
  return true;
}
//-----------------------------------------------------------------------------
bool Echelon::in_span(const SparseVector& v) const
{
  return reduce(to_primitive(v)).empty();
}
//-----------------------------------------------------------------------------
std::size_t feec::rank(const std::vector<SparseVector>& rows)
{
  Echelon e;
  for (const auto& r : rows)
    e.insert(r);
  return e.rank();
}
