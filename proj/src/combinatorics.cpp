#include "feec/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

using namespace feec;

//-----------------------------------------------------------------------------
IncreasingSequence::IncreasingSequence(std::vector<int> entries, int n)
{
  if (n < 0 or n > kMaxDim)
    throw std::invalid_argument("ambient dimension out of range");
  if (static_cast<int>(entries.size()) > n)
    throw std::invalid_argument("sequence longer than ambient dimension");
  for (std::size_t i = 0; i < entries.size(); ++i)
  {
    if (entries[i] < 1 or entries[i] > n)
      throw std::invalid_argument("sequence entry outside [1, n]");
    if (i > 0 and entries[i] <= entries[i - 1])
      throw std::invalid_argument("sequence is not strictly increasing");
    entries_[i] = static_cast<std::int8_t>(entries[i]);
  }
  size_ = static_cast<std::int8_t>(entries.size());
  n_ = static_cast<std::int8_t>(n);
}
//-----------------------------------------------------------------------------
std::vector<int> IncreasingSequence::entries() const
{
  return std::vector<int>(entries_.begin(), entries_.begin() + size_);
}
//-----------------------------------------------------------------------------
bool IncreasingSequence::contains(int index) const
{
  return position(index) >= 0;
}
//-----------------------------------------------------------------------------
int IncreasingSequence::position(int index) const
{
  for (int i = 0; i < size_; ++i)
    if (entries_[i] == index)
      return i;
  return -1;
}
//-----------------------------------------------------------------------------
std::uint32_t IncreasingSequence::mask() const
{
  std::uint32_t m = 0;
  for (int i = 0; i < size_; ++i)
    m |= 1u << (entries_[i] - 1);
  return m;
}
//-----------------------------------------------------------------------------
IncreasingSequence IncreasingSequence::from_mask(std::uint32_t mask, int n)
{
  IncreasingSequence s;
  s.n_ = static_cast<std::int8_t>(n);
  for (int i = 1; i <= n; ++i)
    if (mask & (1u << (i - 1)))
      s.entries_[s.size_++] = static_cast<std::int8_t>(i);
  return s;
}
//-----------------------------------------------------------------------------
IncreasingSequence IncreasingSequence::without(int index) const
{
  if (!contains(index))
    throw std::invalid_argument("index not in sequence");
  return from_mask(mask() & ~(1u << (index - 1)), n_);
}
//-----------------------------------------------------------------------------
std::string IncreasingSequence::to_string() const
{
  std::string s = "(";
  for (int i = 0; i < size_; ++i)
  {
    if (i > 0)
      s += ",";
    s += std::to_string(entries_[i]);
  }
  return s + ")";
}
//-----------------------------------------------------------------------------
MultiIndex::MultiIndex(const std::vector<int>& exponents)
{
  if (static_cast<int>(exponents.size()) > kMaxDim)
    throw std::invalid_argument("too many variables");
  for (std::size_t i = 0; i < exponents.size(); ++i)
  {
    if (exponents[i] < 0 or exponents[i] > 255)
      throw std::invalid_argument("exponent out of range");
    packed_ |= static_cast<std::uint64_t>(exponents[i])
               << shift(static_cast<int>(i) + 1);
  }
}
//-----------------------------------------------------------------------------
MultiIndex MultiIndex::with(int i, int exponent) const
{
  if (exponent < 0 or exponent > 255)
    throw std::overflow_error("exponent out of range");
  MultiIndex m = *this;
  m.packed_ &= ~(std::uint64_t{0xFF} << shift(i));
  m.packed_ |= static_cast<std::uint64_t>(exponent) << shift(i);
  return m;
}
//-----------------------------------------------------------------------------
int MultiIndex::degree() const
{
  int d = 0;
  for (int i = 1; i <= kMaxDim; ++i)
    d += (*this)[i];
  return d;
}
//-----------------------------------------------------------------------------
std::vector<int> MultiIndex::exponents(int n) const
{
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i)
    e[i] = (*this)[i + 1];
  return e;
}
//-----------------------------------------------------------------------------
MultiIndex feec::operator+(MultiIndex a, MultiIndex b)
{
  MultiIndex m;
  for (int i = 1; i <= kMaxDim; ++i)
  {
    const int e = a[i] + b[i];
    if (e > 255)
      throw std::overflow_error("exponent overflow");
    m.packed_ |= static_cast<std::uint64_t>(e) << MultiIndex::shift(i);
  }
  return m;
}
//-----------------------------------------------------------------------------
std::int64_t feec::binomial(int n, int k)
{
  if (n < 0 or k < 0 or k > n)
    return 0;
  k = std::min(k, n - k);
  std::int64_t b = 1;
  for (int i = 1; i <= k; ++i)
    b = b * (n - k + i) / i;
  return b;
}
//-----------------------------------------------------------------------------
std::vector<IncreasingSequence> feec::enumerate_sigma(int k, int n)
{
  if (n < 0 or n > kMaxDim or k < 0 or k > n)
    throw std::invalid_argument("enumerate_sigma requires 0 <= k <= n");
  std::vector<IncreasingSequence> out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i)
    cur[i] = i + 1;
  while (true)
  {
    out.emplace_back(cur, n);
    int i = k - 1;
    while (i >= 0 and cur[i] == n - k + i + 1)
      --i;
    if (i < 0)
      break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j)
      cur[j] = cur[j - 1] + 1;
  }
  return out;
}
//-----------------------------------------------------------------------------
int feec::sigma_rank(const IncreasingSequence& sigma)
{
  // Count the sequences preceding sigma lexicographically.
  const int n = sigma.n();
  const int k = sigma.size();
  int rank = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i)
  {
    for (int v = prev + 1; v < sigma[i]; ++v)
      rank += static_cast<int>(binomial(n - v, k - i - 1));
    prev = sigma[i];
  }
  return rank;
}
//-----------------------------------------------------------------------------
IncreasingSequence feec::complement(const IncreasingSequence& sigma)
{
  const std::uint32_t all = (1u << sigma.n()) - 1;
  return IncreasingSequence::from_mask(all & ~sigma.mask(), sigma.n());
}
//-----------------------------------------------------------------------------
int feec::merge_sign(const IncreasingSequence& sigma,
                     const IncreasingSequence& tau)
{
  if (sigma.mask() & tau.mask())
    return 0;
  // Inversions of the concatenation: pairs (s in sigma, t in tau) with s > t.
  int inversions = 0;
  for (int i = 0; i < sigma.size(); ++i)
    for (int j = 0; j < tau.size(); ++j)
      if (sigma[i] > tau[j])
        ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}
//-----------------------------------------------------------------------------
IncreasingSequence feec::merge(const IncreasingSequence& sigma,
                               const IncreasingSequence& tau)
{
  if (sigma.mask() & tau.mask())
    throw std::invalid_argument("merge of overlapping sequences");
  return IncreasingSequence::from_mask(sigma.mask() | tau.mask(),
                                       std::max(sigma.n(), tau.n()));
}
//-----------------------------------------------------------------------------
namespace
{
void fill_degree(int n, int var, int remaining, std::vector<int>& cur,
                 std::vector<MultiIndex>& out)
{
  if (var == n - 1)
  {
    cur[var] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e)
  {
    cur[var] = e;
    fill_degree(n, var + 1, remaining - e, cur, out);
  }
}
} // namespace
//-----------------------------------------------------------------------------
std::vector<MultiIndex> feec::monomials_of_degree(int n, int degree)
{
  if (n < 0 or n > kMaxDim)
    throw std::invalid_argument("ambient dimension out of range");
  std::vector<MultiIndex> out;
  if (degree < 0)
    return out;
  if (n == 0)
  {
    if (degree == 0)
      out.emplace_back();
    return out;
  }
  std::vector<int> cur(n);
  fill_degree(n, 0, degree, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}
//-----------------------------------------------------------------------------
std::vector<MultiIndex> feec::monomials_up_to(int n, int degree)
{
  std::vector<MultiIndex> out;
  for (int d = 0; d <= degree; ++d)
  {
    auto m = monomials_of_degree(n, d);
    out.insert(out.end(), m.begin(), m.end());
  }
  return out;
}
