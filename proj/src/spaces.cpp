#include "feec/spaces.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

using namespace feec;

//-----------------------------------------------------------------------------
std::string feec::to_string(Family f)
{
  switch (f)
  {
  case Family::P:
    return "P";
  case Family::Pminus:
    return "Pminus";
  case Family::Qminus:
    return "Qminus";
  case Family::S:
    return "S";
  }
  return "?";
}
//-----------------------------------------------------------------------------
std::string feec::to_string(ElementKind e)
{
  return e == ElementKind::simplex ? "simplex" : "box";
}
//-----------------------------------------------------------------------------
Family feec::parse_family(std::string_view name)
{
  if (name == "P")
    return Family::P;
  if (name == "Pminus")
    return Family::Pminus;
  if (name == "Qminus")
    return Family::Qminus;
  if (name == "S")
    return Family::S;
  throw std::invalid_argument("unknown family: " + std::string(name));
}
//-----------------------------------------------------------------------------
ElementKind feec::element_of(Family f)
{
  return (f == Family::P or f == Family::Pminus) ? ElementKind::simplex
                                                 : ElementKind::box;
}
//-----------------------------------------------------------------------------
void SpaceSpec::validate() const
{
  if (n < 0 or n > kMaxDim - 1)
    throw std::invalid_argument("space dimension n out of range");
  if (k < 0 or k > n)
    throw std::invalid_argument("form degree k must satisfy 0 <= k <= n");
  switch (family)
  {
  case Family::P:
    if (r < 0)
      throw std::invalid_argument("P requires r >= 0");
    break;
  case Family::Pminus:
  case Family::Qminus:
    if (r < 1)
      throw std::invalid_argument(feec::to_string(family)
                                  + " requires r >= 1");
    break;
  case Family::S:
    if (r < 1 and !(r == 0 and k == n))
      throw std::invalid_argument("S requires r >= 1");
    break;
  }
}
//-----------------------------------------------------------------------------
bool SpaceSpec::is_valid() const
{
  try
  {
    validate();
    return true;
  }
  catch (const std::invalid_argument&)
  {
    return false;
  }
}
//-----------------------------------------------------------------------------
std::string SpaceSpec::to_string() const
{
  return feec::to_string(family) + "_" + std::to_string(r) + "Lambda^"
         + std::to_string(k) + "(n=" + std::to_string(n) + ")";
}
//-----------------------------------------------------------------------------
std::vector<PolyForm>
feec::independent_subset(const std::vector<PolyForm>& generators)
{
  Echelon e;
  std::vector<PolyForm> out;
  for (const auto& g : generators)
    if (e.insert(g.coordinates()))
      out.push_back(g);
  return out;
}
//-----------------------------------------------------------------------------
std::size_t feec::span_rank(const std::vector<PolyForm>& forms)
{
  Echelon e;
  for (const auto& f : forms)
    e.insert(f.coordinates());
  return e.rank();
}
//-----------------------------------------------------------------------------
bool feec::span_contains(const std::vector<PolyForm>& span,
                         const std::vector<PolyForm>& items,
                         PolyForm* witness)
{
  Echelon e;
  for (const auto& f : span)
    e.insert(f.coordinates());
  for (const auto& u : items)
    if (!e.in_span(u.coordinates()))
    {
      if (witness)
        *witness = u;
      return false;
    }
  return true;
}
//-----------------------------------------------------------------------------
bool feec::spans_equal(const std::vector<PolyForm>& a,
                       const std::vector<PolyForm>& b)
{
  return span_contains(a, b) and span_contains(b, a);
}
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::polynomial_forms(int n, int k, int r)
{
  std::vector<PolyForm> out;
  if (k > n or r < 0)
    return out;
  const auto alphas = monomials_up_to(n, r);
  for (const auto& s : enumerate_sigma(k, n))
    for (const auto& a : alphas)
      out.push_back(PolyForm::monomial(n, a, s));
  return out;
}
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::basis_Hrl(int r, int l, int k, int n)
{
  std::vector<PolyForm> out;
  if (k > n or r < 0)
    return out;
  const auto alphas = monomials_of_degree(n, r);
  for (const auto& s : enumerate_sigma(k, n))
    for (const auto& a : alphas)
      if (ldeg(a, s) >= l)
        out.push_back(PolyForm::monomial(n, a, s));
  return out;
}
//-----------------------------------------------------------------------------
namespace
{
std::vector<PolyForm> j_generators(int r, int k, int n)
{
  std::vector<PolyForm> gens;
  if (k < 0 or k + 1 > n)
    return gens;
  // ldeg of a (k+1)-form monomial is at most n - k - 1.
  for (int l = 1; l <= n - k - 1; ++l)
    for (const auto& m : basis_Hrl(r + l - 1, l, k + 1, n))
      gens.push_back(koszul(m));
  return gens;
}
} // namespace
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::basis_J(int r, int k, int n)
{
  return independent_subset(j_generators(r, k, n));
}
//-----------------------------------------------------------------------------
SpaceBasis feec::basis_P(int r, int k, int n)
{
  const SpaceSpec spec{Family::P, n, r, k};
  spec.validate();
  return {spec, polynomial_forms(n, k, r)};
}
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::pminus_generators(int r, int k, int n)
{
  auto gens = polynomial_forms(n, k, r - 1);
  for (const auto& m : monomial_forms(n, k + 1, r - 1))
    gens.push_back(koszul(m));
  return gens;
}
//-----------------------------------------------------------------------------
SpaceBasis feec::basis_Pminus(int r, int k, int n)
{
  const SpaceSpec spec{Family::Pminus, n, r, k};
  spec.validate();
  return {spec, independent_subset(pminus_generators(r, k, n))};
}
//-----------------------------------------------------------------------------
SpaceBasis feec::basis_Qminus(int r, int k, int n)
{
  const SpaceSpec spec{Family::Qminus, n, r, k};
  spec.validate();
  SpaceBasis b{spec, {}};
  // Degree <= r - 1 in the variables of the alternator, <= r in the others.
  for (const auto& s : enumerate_sigma(k, n))
  {
    std::vector<int> bound(n);
    for (int i = 1; i <= n; ++i)
      bound[i - 1] = s.contains(i) ? r - 1 : r;
    std::vector<int> e(n, 0);
    // Odometer over the box of exponents, last variable fastest, which is
    // lexicographic order in alpha.
    while (true)
    {
      b.forms.push_back(PolyForm::monomial(n, MultiIndex(e), s));
      int i = n - 1;
      while (i >= 0 and e[i] == bound[i])
        e[i--] = 0;
      if (i < 0)
        break;
      ++e[i];
    }
  }
  return b;
}
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::serendipity_generators(int r, int k, int n)
{
  auto gens = polynomial_forms(n, k, r);
  for (auto& g : j_generators(r, k, n))
    gens.push_back(std::move(g));
  if (k >= 1)
    for (const auto& g : j_generators(r + 1, k - 1, n))
    {
      PolyForm dg = exterior_derivative(g);
      if (!dg.is_zero())
        gens.push_back(std::move(dg));
    }
  return gens;
}
//-----------------------------------------------------------------------------
SpaceBasis feec::basis_S(int r, int k, int n)
{
  const SpaceSpec spec{Family::S, n, r, k};
  spec.validate();
  return {spec, independent_subset(serendipity_generators(r, k, n))};
}
//-----------------------------------------------------------------------------
namespace
{
struct CachedSpace
{
  SpaceBasis basis;
  Echelon echelon;
};

std::mutex cache_mutex;
std::map<SpaceSpec, std::unique_ptr<const CachedSpace>> cache;

const CachedSpace& cached(const SpaceSpec& spec)
{
  {
    std::lock_guard lock(cache_mutex);
    if (auto it = cache.find(spec); it != cache.end())
      return *it->second;
  }
  spec.validate();
  auto entry = std::make_unique<CachedSpace>();
  switch (spec.family)
  {
  case Family::P:
    entry->basis = basis_P(spec.r, spec.k, spec.n);
    break;
  case Family::Pminus:
    entry->basis = basis_Pminus(spec.r, spec.k, spec.n);
    break;
  case Family::Qminus:
    entry->basis = basis_Qminus(spec.r, spec.k, spec.n);
    break;
  case Family::S:
    entry->basis = basis_S(spec.r, spec.k, spec.n);
    break;
  }
  for (const auto& f : entry->basis.forms)
    entry->echelon.insert(f.coordinates());
  std::lock_guard lock(cache_mutex);
  auto [it, inserted] = cache.try_emplace(spec, std::move(entry));
  return *it->second;
}
} // namespace
//-----------------------------------------------------------------------------
const SpaceBasis& feec::basis(const SpaceSpec& spec)
{
  return cached(spec).basis;
}
//-----------------------------------------------------------------------------
std::optional<std::int64_t> feec::dimension_formula(const SpaceSpec& spec)
{
  spec.validate();
  const int n = spec.n, r = spec.r, k = spec.k;
  switch (spec.family)
  {
  case Family::P:
    return binomial(n + r, n - k) * binomial(r + k, r);
  case Family::Pminus:
    return binomial(n + r, n - k) * binomial(r + k - 1, k);
  case Family::Qminus:
  {
    std::int64_t d = binomial(n, k);
    for (int i = 0; i < k; ++i)
      d *= r;
    for (int i = k; i < n; ++i)
      d *= r + 1;
    return d;
  }
  case Family::S:
    return std::nullopt;
  }
  return std::nullopt;
}
//-----------------------------------------------------------------------------
std::int64_t feec::dimension(const SpaceSpec& spec, DimensionMethod method)
{
  if (method == DimensionMethod::formula)
  {
    auto d = dimension_formula(spec);
    if (!d)
      throw std::invalid_argument("no closed-form dimension for "
                                  + spec.to_string());
    return *d;
  }
  return static_cast<std::int64_t>(cached(spec).echelon.rank());
}
//-----------------------------------------------------------------------------
bool feec::membership(const PolyForm& u, const SpaceSpec& spec)
{
  if (u.n() != spec.n or u.k() != spec.k)
    throw std::invalid_argument("membership: form shape does not match space");
  return cached(spec).echelon.in_span(u.coordinates());
}
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::translate(const std::vector<PolyForm>& forms,
                                      std::span<const Rational> shift)
{
  std::vector<PolyForm> out;
  if (forms.empty())
    return out;
  const int n = forms.front().n();
  AffineMap t = AffineMap::identity(n);
  for (int i = 0; i < n; ++i)
    t.offset[i] = -shift[i];
  for (const auto& f : forms)
    out.push_back(pullback(f, t));
  return out;
}
