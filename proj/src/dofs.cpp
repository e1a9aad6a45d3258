#include "feec/dofs.hpp"

#include <stdexcept>

using namespace feec;

//-----------------------------------------------------------------------------
std::vector<std::vector<Rational>> feec::reference_vertices(ElementKind kind,
                                                            int n)
{
  std::vector<std::vector<Rational>> v;
  if (kind == ElementKind::simplex)
  {
    v.emplace_back(n);
    for (int i = 0; i < n; ++i)
    {
      v.emplace_back(n);
      v.back()[i] = 1;
    }
  }
  else
  {
    for (int c = 0; c < (1 << n); ++c)
    {
      v.emplace_back(n);
      for (int j = 0; j < n; ++j)
        v.back()[j] = (c >> j) & 1;
    }
  }
  return v;
}
//-----------------------------------------------------------------------------
std::vector<FaceRef> feec::reference_faces(ElementKind kind, int n, int d)
{
  if (d < 0 or d > n)
    throw std::invalid_argument("face dimension out of range");
  std::vector<FaceRef> faces;
  if (kind == ElementKind::simplex)
  {
    const auto verts = reference_vertices(kind, n);
    // (d+1)-subsets of {0..n} via increasing sequences in {1..n+1}.
    for (const auto& s : enumerate_sigma(d + 1, n + 1))
    {
      std::vector<int> ids;
      for (int i = 0; i <= d; ++i)
        ids.push_back(s[i] - 1);
      AffineMap m{RationalMatrix(n, d), verts[ids[0]]};
      for (int j = 0; j < d; ++j)
        for (int i = 0; i < n; ++i)
          m.linear(i, j) = verts[ids[j + 1]][i] - verts[ids[0]][i];
      faces.push_back({kind, d, static_cast<int>(faces.size()), ids,
                       AffineEmbedding(std::move(m))});
    }
    return faces;
  }
  for (const auto& free : enumerate_sigma(d, n))
  {
    const auto fixed = complement(free);
    for (int bits = 0; bits < (1 << (n - d)); ++bits)
    {
      AffineMap m{RationalMatrix(n, d), std::vector<Rational>(n)};
      int base = 0;
      for (int j = 0; j < n - d; ++j)
      {
        // First fixed axis is the most significant bit.
        const int value = (bits >> (n - d - 1 - j)) & 1;
        m.offset[fixed[j] - 1] = value;
        base |= value << (fixed[j] - 1);
      }
      for (int j = 0; j < d; ++j)
        m.linear(free[j] - 1, j) = 1;
      std::vector<int> ids;
      for (int t = 0; t < (1 << d); ++t)
      {
        int v = base;
        for (int j = 0; j < d; ++j)
          if ((t >> j) & 1)
            v |= 1 << (free[j] - 1);
        ids.push_back(v);
      }
      faces.push_back({kind, d, static_cast<int>(faces.size()), ids,
                       AffineEmbedding(std::move(m))});
    }
  }
  return faces;
}
//-----------------------------------------------------------------------------
std::vector<PolyForm> feec::dof_weights(const SpaceSpec& spec, int d)
{
  const int k = spec.k;
  const int r = spec.r;
  if (d < k)
    return {};
  const int m = d - k;
  switch (spec.family)
  {
  case Family::Pminus:
    return polynomial_forms(d, m, r + k - d - 1);
  case Family::P:
  {
    const int s = r + k - d;
    if (m == 0)
      return polynomial_forms(d, 0, s);
    if (s < 1)
      return {};
    return basis_Pminus(s, m, d).forms;
  }
  case Family::S:
    return polynomial_forms(d, m, r - 2 * m);
  case Family::Qminus:
  {
    const int s = r - 1;
    if (s >= 1)
      return basis_Qminus(s, m, d).forms;
    if (s == 0 and m == 0)
      return polynomial_forms(d, 0, 0);
    return {};
  }
  }
  return {};
}
//-----------------------------------------------------------------------------
DofSet feec::make_dofs(const SpaceSpec& spec, const std::vector<FaceRef>& faces)
{
  DofSet set{spec, {}, {}};
  std::vector<std::vector<PolyForm>> weights(spec.n + 1);
  std::vector<bool> have(spec.n + 1, false);
  for (const auto& f : faces)
  {
    if (!have[f.dim])
    {
      weights[f.dim] = dof_weights(spec, f.dim);
      have[f.dim] = true;
      set.per_face.push_back(
          {f.dim, 0, static_cast<int>(weights[f.dim].size())});
    }
    for (auto& pf : set.per_face)
      if (pf.dim == f.dim)
        ++pf.faces;
    for (const auto& q : weights[f.dim])
      set.functionals.push_back({f, q});
  }
  return set;
}
//-----------------------------------------------------------------------------
bool feec::has_element(const SpaceSpec& spec)
{
  return spec.is_valid() and !(spec.family == Family::P and spec.r == 0
                               and spec.k < spec.n);
}
//-----------------------------------------------------------------------------
DofSet feec::dofs(const SpaceSpec& spec)
{
  spec.validate();
  if (!has_element(spec))
    throw std::invalid_argument(spec.to_string()
                                + " has no unisolvent degrees of freedom");
  std::vector<FaceRef> faces;
  for (int d = 0; d <= spec.n; ++d)
    for (auto& f : reference_faces(spec.element(), spec.n, d))
      faces.push_back(std::move(f));
  return make_dofs(spec, faces);
}
//-----------------------------------------------------------------------------
DofSet feec::dofs_lagrange(int r, int n)
{
  if (r < 1)
    throw std::invalid_argument("Lagrange elements require r >= 1");
  return dofs({Family::Pminus, n, r, 0});
}
DofSet feec::dofs_Pminus(int r, int k, int n)
{
  return dofs({Family::Pminus, n, r, k});
}
DofSet feec::dofs_P(int r, int k, int n) { return dofs({Family::P, n, r, k}); }
DofSet feec::dofs_S(int r, int k, int n) { return dofs({Family::S, n, r, k}); }
DofSet feec::dofs_Qminus(int r, int k, int n)
{
  return dofs({Family::Qminus, n, r, k});
}
//-----------------------------------------------------------------------------
namespace
{
Rational integrate_on_face(const FaceRef& face, const PolyForm& top)
{
  const int d = face.dim;
  if (face.kind == ElementKind::simplex)
    return integrate_simplex(top, reference_vertices(ElementKind::simplex, d));
  const std::vector<Rational> lo(d, Rational(0)), hi(d, Rational(1));
  return integrate_box(top, lo, hi);
}

Rational apply_pulled(const FaceRef& face, const PolyForm& pulled,
                      const PolyForm& weight)
{
  if (weight.n() != face.dim or pulled.k() + weight.k() != face.dim)
    throw std::invalid_argument(
        "degree of freedom: trace and weight do not form a top form");
  return integrate_on_face(face, wedge(pulled, weight));
}

bool same_face(const FaceRef& a, const FaceRef& b)
{
  return a.dim == b.dim and a.index == b.index and a.vertices == b.vertices
         and a.kind == b.kind;
}
} // namespace
//-----------------------------------------------------------------------------
Rational feec::apply(const DofFunctional& phi, const PolyForm& u)
{
  if (u.n() != phi.face.embedding.target_dim())
    throw std::invalid_argument("degree of freedom: form lives in wrong space");
  return apply_pulled(phi.face, pullback(u, phi.face.embedding.map()),
                      phi.weight);
}
//-----------------------------------------------------------------------------
RationalMatrix feec::dof_matrix(const std::vector<DofFunctional>& dofs,
                                const std::vector<PolyForm>& forms)
{
  RationalMatrix m(dofs.size(), forms.size());
  std::vector<PolyForm> pulled;
  const FaceRef* current = nullptr;
  for (std::size_t i = 0; i < dofs.size(); ++i)
  {
    const auto& phi = dofs[i];
    if (!current or !same_face(*current, phi.face))
    {
      current = &phi.face;
      pulled.clear();
      for (const auto& f : forms)
        pulled.push_back(pullback(f, phi.face.embedding.map()));
    }
    for (std::size_t j = 0; j < forms.size(); ++j)
      m(i, j) = apply_pulled(phi.face, pulled[j], phi.weight);
  }
  return m;
}
//-----------------------------------------------------------------------------
RationalMatrix feec::dof_matrix(const SpaceBasis& basis, const DofSet& dofs)
{
  if (basis.spec != dofs.spec)
    throw std::invalid_argument("dof_matrix: basis and dofs belong to "
                                "different spaces");
  return dof_matrix(dofs.functionals, basis.forms);
}
//-----------------------------------------------------------------------------
UnisolvenceReport feec::unisolvence_check(const SpaceSpec& spec)
{
  const SpaceBasis& b = basis(spec);
  const DofSet set = dofs(spec);
  UnisolvenceReport rep{spec,
                        static_cast<std::int64_t>(b.size()),
                        static_cast<std::int64_t>(set.size()),
                        set.per_face,
                        b.size() == set.size(),
                        false};
  if (rep.count_ok)
    rep.determinant_nonzero = determinant(dof_matrix(b, set)) != 0;
  return rep;
}
//-----------------------------------------------------------------------------
nlohmann::json feec::to_json(const SpaceSpec& spec)
{
  return {{"family", to_string(spec.family)},
          {"n", spec.n},
          {"r", spec.r},
          {"k", spec.k},
          {"element", to_string(spec.element())}};
}
//-----------------------------------------------------------------------------
nlohmann::json feec::to_json(const UnisolvenceReport& report)
{
  nlohmann::json per_face = nlohmann::json::array();
  for (const auto& f : report.per_face)
    per_face.push_back(
        {{"d", f.dim}, {"faces", f.faces}, {"count_per_face", f.count_per_face}});
  return {{"spec", to_json(report.spec)},
          {"dim", report.dim},
          {"dof_count", report.dof_count},
          {"per_face", per_face},
          {"count_ok", report.count_ok},
          {"determinant_nonzero", report.determinant_nonzero}};
}
