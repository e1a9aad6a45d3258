#include "feec/mesh.hpp"

#include "feec/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

using namespace feec;

//-----------------------------------------------------------------------------
std::string feec::to_string(MeshKind kind)
{
  return kind == MeshKind::simplicial ? "simplicial" : "cubical";
}
//-----------------------------------------------------------------------------
ElementKind feec::element_of(MeshKind kind)
{
  return kind == MeshKind::simplicial ? ElementKind::simplex : ElementKind::box;
}
//-----------------------------------------------------------------------------
namespace
{
// Half-space a.x + b >= 0.
struct HalfSpace
{
  std::vector<Rational> a;
  Rational b;
};

int permutation_parity(std::vector<int> p)
{
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j])
        sign = -sign;
  return sign;
}

// Calls f on every m-subset of {0..count-1}; stops when f returns false.
bool for_each_subset(int count, int m,
                     const std::function<bool(const std::vector<int>&)>& f)
{
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i)
    idx[i] = i;
  if (m > count)
    return true;
  while (true)
  {
    if (!f(idx))
      return false;
    int i = m - 1;
    while (i >= 0 and idx[i] == count - m + i)
      --i;
    if (i < 0)
      return true;
    ++idx[i];
    for (int j = i + 1; j < m; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}
} // namespace
//-----------------------------------------------------------------------------
Mesh::Mesh(MeshKind kind, int n, std::vector<std::vector<Rational>> vertices,
           std::vector<std::vector<int>> elements)
    : kind_(kind), n_(n), vertices_(std::move(vertices)),
      elements_(std::move(elements))
{
  if (n < 1 or n > kMaxDim - 1)
    throw std::invalid_argument("mesh dimension out of range");
  if (elements_.empty())
    throw std::invalid_argument("mesh has no elements");
  validate_elements();
  validate_conformity();
  build_faces();
}
//-----------------------------------------------------------------------------
void Mesh::validate_elements() const
{
  for (const auto& v : vertices_)
    if (static_cast<int>(v.size()) != n_)
      throw std::invalid_argument("vertex coordinate count does not match n");
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (std::size_t j = i + 1; j < vertices_.size(); ++j)
      if (vertices_[i] == vertices_[j])
        throw std::invalid_argument("duplicate vertex coordinates");

  const std::size_t nv = kind_ == MeshKind::simplicial
                             ? static_cast<std::size_t>(n_ + 1)
                             : std::size_t{1} << n_;
  std::set<std::vector<int>> seen;
  for (const auto& e : elements_)
  {
    if (e.size() != nv)
      throw std::invalid_argument(
          to_string(kind_) + " element needs " + std::to_string(nv)
          + " vertices");
    for (int id : e)
      if (id < 0 or id >= static_cast<int>(vertices_.size()))
        throw std::invalid_argument("element vertex id out of range");
    auto sorted = e;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("element repeats a vertex");
    if (!seen.insert(sorted).second)
      throw std::invalid_argument("nonconforming mesh: duplicate element");

    if (kind_ == MeshKind::simplicial)
    {
      RationalMatrix m(n_, n_);
      for (int j = 0; j < n_; ++j)
        for (int i = 0; i < n_; ++i)
          m(i, j) = vertices_[e[j + 1]][i] - vertices_[e[0]][i];
      if (determinant(m) == 0)
        throw std::invalid_argument("degenerate element");
      continue;
    }
    const auto& lo = vertices_[e.front()];
    const auto& hi = vertices_[e.back()];
    for (int j = 0; j < n_; ++j)
      if (hi[j] == lo[j])
        throw std::invalid_argument("degenerate element");
      else if (hi[j] < lo[j])
        throw std::invalid_argument(
            "cubical element vertices are not in reference order");
    for (std::size_t i = 0; i < nv; ++i)
      for (int j = 0; j < n_; ++j)
      {
        const Rational expect = ((i >> j) & 1) ? hi[j] : lo[j];
        if (vertices_[e[i]][j] != expect)
          throw std::invalid_argument(
              "cubical element is not an axis-aligned box in reference order");
      }
  }
}
//-----------------------------------------------------------------------------
void Mesh::validate_conformity() const
{
  // Two elements conform when their intersection is the convex hull of their
  // shared vertices. The intersection is a polytope, so it suffices that each
  // of its vertices is a shared vertex.
  auto halfspaces = [&](const std::vector<int>& e)
  {
    std::vector<HalfSpace> hs;
    if (kind_ == MeshKind::simplicial)
    {
      std::vector<std::vector<Rational>> pts;
      for (int id : e)
        pts.push_back(vertices_[id]);
      for (const auto& lam : barycentric(pts).lambdas)
      {
        HalfSpace h{std::vector<Rational>(n_), lam.coefficient(MultiIndex())};
        for (int j = 0; j < n_; ++j)
          h.a[j] = lam.coefficient(MultiIndex().with(j + 1, 1));
        hs.push_back(std::move(h));
      }
      return hs;
    }
    const auto& lo = vertices_[e.front()];
    const auto& hi = vertices_[e.back()];
    for (int j = 0; j < n_; ++j)
    {
      HalfSpace l{std::vector<Rational>(n_), -lo[j]};
      l.a[j] = 1;
      HalfSpace u{std::vector<Rational>(n_), hi[j]};
      u.a[j] = -1;
      hs.push_back(std::move(l));
      hs.push_back(std::move(u));
    }
    return hs;
  };
  auto bounds = [&](const std::vector<int>& e)
  {
    std::vector<Rational> lo = vertices_[e[0]], hi = vertices_[e[0]];
    for (int id : e)
      for (int j = 0; j < n_; ++j)
      {
        lo[j] = std::min(lo[j], vertices_[id][j]);
        hi[j] = std::max(hi[j], vertices_[id][j]);
      }
    return std::pair{lo, hi};
  };

  for (std::size_t a = 0; a < elements_.size(); ++a)
    for (std::size_t b = a + 1; b < elements_.size(); ++b)
    {
      const auto [lo_a, hi_a] = bounds(elements_[a]);
      const auto [lo_b, hi_b] = bounds(elements_[b]);
      bool apart = false;
      for (int j = 0; j < n_; ++j)
        apart = apart or hi_a[j] < lo_b[j] or hi_b[j] < lo_a[j];
      if (apart)
        continue;

      std::set<int> shared;
      for (int id : elements_[a])
        if (std::find(elements_[b].begin(), elements_[b].end(), id)
            != elements_[b].end())
          shared.insert(id);

      auto hs = halfspaces(elements_[a]);
      for (auto& h : halfspaces(elements_[b]))
        hs.push_back(std::move(h));
      const bool ok = for_each_subset(
          static_cast<int>(hs.size()), n_,
          [&](const std::vector<int>& pick)
          {
            RationalMatrix m(n_, n_);
            std::vector<Rational> rhs(n_);
            for (int i = 0; i < n_; ++i)
            {
              for (int j = 0; j < n_; ++j)
                m(i, j) = hs[pick[i]].a[j];
              rhs[i] = -hs[pick[i]].b;
            }
            const auto x = solve(m, rhs);
            if (!x)
              return true;
            for (const auto& h : hs)
            {
              Rational s = h.b;
              for (int j = 0; j < n_; ++j)
                s += h.a[j] * (*x)[j];
              if (s < 0)
                return true;
            }
            for (int id : shared)
              if (vertices_[id] == *x)
                return true;
            return false;
          });
      if (!ok)
        throw std::invalid_argument(
            "nonconforming mesh: elements " + std::to_string(a) + " and "
            + std::to_string(b) + " do not meet in a common face");

      if (kind_ == MeshKind::cubical and !shared.empty())
      {
        // The shared vertices must form a face of each box.
        for (std::size_t e : {a, b})
        {
          bool is_face = false;
          for (int d = 0; d <= n_ and !is_face; ++d)
            for (const auto& f : reference_faces(ElementKind::box, n_, d))
            {
              std::set<int> ids;
              for (int v : f.vertices)
                ids.insert(elements_[e][v]);
              if (ids == shared)
              {
                is_face = true;
                break;
              }
            }
          if (!is_face)
            throw std::invalid_argument(
                "nonconforming mesh: shared vertices do not form a face");
        }
      }
    }
}
//-----------------------------------------------------------------------------
void Mesh::build_faces()
{
  const auto ek = element_kind();
  faces_.assign(n_ + 1, {});
  face_elements_.assign(n_ + 1, {});
  element_faces_.assign(elements_.size(),
                        std::vector<std::vector<int>>(n_ + 1));
  orientation_ = element_faces_;
  std::vector<std::map<std::vector<int>, int>> index(n_ + 1);
  std::vector<std::vector<std::pair<std::vector<int>, int>>> local(
      elements_.size() * (n_ + 1));

  for (int d = 0; d <= n_; ++d)
  {
    const auto ref = reference_faces(ek, n_, d);
    std::set<std::vector<int>> keys;
    for (std::size_t e = 0; e < elements_.size(); ++e)
    {
      auto& slots = local[e * (n_ + 1) + d];
      for (const auto& f : ref)
      {
        std::vector<int> ids;
        for (int v : f.vertices)
          ids.push_back(elements_[e][v]);
        int sign = 1;
        if (ek == ElementKind::simplex)
          sign = permutation_parity(ids);
        std::sort(ids.begin(), ids.end());
        keys.insert(ids);
        slots.emplace_back(ids, sign);
      }
    }
    for (const auto& key : keys)
    {
      index[d][key] = static_cast<int>(faces_[d].size());
      faces_[d].push_back(key);
    }
    face_elements_[d].assign(faces_[d].size(), {});
    for (std::size_t e = 0; e < elements_.size(); ++e)
      for (const auto& [key, sign] : local[e * (n_ + 1) + d])
      {
        const int f = index[d][key];
        element_faces_[e][d].push_back(f);
        orientation_[e][d].push_back(sign);
        face_elements_[d][f].push_back(static_cast<int>(e));
      }
  }
}
//-----------------------------------------------------------------------------
const std::vector<std::vector<int>>& Mesh::faces(int d) const
{
  if (d < 0 or d > n_)
    throw std::out_of_range("face dimension out of range");
  return faces_[d];
}
//-----------------------------------------------------------------------------
const std::vector<int>& Mesh::element_faces(int e, int d) const
{
  return element_faces_.at(e).at(d);
}
//-----------------------------------------------------------------------------
int Mesh::face_orientation(int e, int d, int i) const
{
  return orientation_.at(e).at(d).at(i);
}
//-----------------------------------------------------------------------------
const std::vector<int>& Mesh::face_elements(int d, int f) const
{
  return face_elements_.at(d).at(f);
}
//-----------------------------------------------------------------------------
AffineMap Mesh::chart(int e) const
{
  const auto& el = elements_.at(e);
  AffineMap m{RationalMatrix(n_, n_), vertices_[el.front()]};
  if (kind_ == MeshKind::simplicial)
  {
    for (int j = 0; j < n_; ++j)
      for (int i = 0; i < n_; ++i)
        m.linear(i, j) = vertices_[el[j + 1]][i] - vertices_[el[0]][i];
  }
  else
  {
    for (int j = 0; j < n_; ++j)
      m.linear(j, j) = vertices_[el.back()][j] - vertices_[el.front()][j];
  }
  return m;
}
//-----------------------------------------------------------------------------
AffineMap Mesh::face_parametrization(int d, int f) const
{
  const auto& ids = faces(d).at(f);
  if (kind_ == MeshKind::simplicial)
  {
    AffineMap m{RationalMatrix(n_, d), vertices_[ids[0]]};
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < n_; ++i)
        m.linear(i, j) = vertices_[ids[j + 1]][i] - vertices_[ids[0]][i];
    return m;
  }
  std::vector<Rational> lo = vertices_[ids[0]], hi = vertices_[ids[0]];
  for (int id : ids)
    for (int j = 0; j < n_; ++j)
    {
      lo[j] = std::min(lo[j], vertices_[id][j]);
      hi[j] = std::max(hi[j], vertices_[id][j]);
    }
  AffineMap m{RationalMatrix(n_, d), lo};
  int col = 0;
  for (int j = 0; j < n_; ++j)
    if (hi[j] != lo[j])
      m.linear(j, col++) = hi[j] - lo[j];
  if (col != d)
    throw std::logic_error("box face has the wrong number of free axes");
  return m;
}
//-----------------------------------------------------------------------------
nlohmann::json Mesh::to_json() const
{
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : vertices_)
  {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v)
      row.push_back(feec::to_string(x));
    verts.push_back(row);
  }
  return {{"kind", to_string(kind_)},
          {"n", n_},
          {"vertices", verts},
          {"elements", elements_}};
}
//-----------------------------------------------------------------------------
Mesh feec::read_mesh(const nlohmann::json& doc)
{
  if (!doc.is_object())
    throw std::invalid_argument("mesh document must be a JSON object");
  for (const char* key : {"kind", "n", "vertices", "elements"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("mesh document lacks \"") + key
                                  + "\"");
  const auto kind_name = doc.at("kind").get<std::string>();
  MeshKind kind;
  if (kind_name == "simplicial")
    kind = MeshKind::simplicial;
  else if (kind_name == "cubical")
    kind = MeshKind::cubical;
  else
    throw std::invalid_argument("unknown mesh kind: " + kind_name);
  const int n = doc.at("n").get<int>();
  std::vector<std::vector<Rational>> vertices;
  for (const auto& row : doc.at("vertices"))
  {
    std::vector<Rational> v;
    for (const auto& x : row)
    {
      if (x.is_string())
        v.push_back(parse_rational(x.get<std::string>()));
      else if (x.is_number_integer())
        v.push_back(Rational(x.get<long>()));
      else
        throw std::invalid_argument(
            "vertex coordinates must be rational strings or integers");
    }
    vertices.push_back(std::move(v));
  }
  auto elements = doc.at("elements").get<std::vector<std::vector<int>>>();
  return Mesh(kind, n, std::move(vertices), std::move(elements));
}
//-----------------------------------------------------------------------------
Mesh feec::read_mesh_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot read mesh file " + path.string());
  nlohmann::json doc;
  try
  {
    in >> doc;
  }
  catch (const nlohmann::json::exception& e)
  {
    throw std::invalid_argument("malformed mesh file " + path.string() + ": "
                                + e.what());
  }
  return read_mesh(doc);
}
//-----------------------------------------------------------------------------
std::vector<std::string> feec::builtin_mesh_names()
{
  return {"square2", "square4", "tet2",  "cube6",
          "quad2",   "quad4",   "cube1", "cube2"};
}
//-----------------------------------------------------------------------------
Mesh feec::builtin_mesh(const std::string& name)
{
  using V = std::vector<std::vector<Rational>>;
  using E = std::vector<std::vector<int>>;
  auto unit_cube = []
  {
    V v;
    for (int i = 0; i < 8; ++i)
      v.push_back({i & 1, (i >> 1) & 1, (i >> 2) & 1});
    return v;
  };
  if (name == "square2")
    return Mesh(MeshKind::simplicial, 2, V{{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                E{{0, 1, 2}, {0, 2, 3}});
  if (name == "square4")
    return Mesh(MeshKind::simplicial, 2,
                V{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {Rational(1, 2), Rational(1, 2)}},
                E{{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
  if (name == "tet2")
    return Mesh(MeshKind::simplicial, 3,
                V{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}},
                E{{0, 1, 2, 3}, {1, 2, 3, 4}});
  if (name == "cube6")
  {
    // One tetrahedron per axis ordering, walking 0 -> 7 along unit steps.
    E elements;
    std::vector<int> axes{0, 1, 2};
    do
    {
      std::vector<int> t{0};
      int v = 0;
      for (int a : axes)
        t.push_back(v |= 1 << a);
      elements.push_back(t);
    } while (std::next_permutation(axes.begin(), axes.end()));
    return Mesh(MeshKind::simplicial, 3, unit_cube(), elements);
  }
  if (name == "quad2")
    return Mesh(MeshKind::cubical, 2,
                V{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}},
                E{{0, 1, 3, 4}, {1, 2, 4, 5}});
  if (name == "quad4")
  {
    V v;
    for (int y = 0; y < 3; ++y)
      for (int x = 0; x < 3; ++x)
        v.push_back({x, y});
    E elements;
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x)
      {
        const int b = x + 3 * y;
        elements.push_back({b, b + 1, b + 3, b + 4});
      }
    return Mesh(MeshKind::cubical, 2, v, elements);
  }
  if (name == "cube1")
    return Mesh(MeshKind::cubical, 3, unit_cube(), E{{0, 1, 2, 3, 4, 5, 6, 7}});
  if (name == "cube2")
  {
    V v;
    for (int z = 0; z < 2; ++z)
      for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 3; ++x)
          v.push_back({x, y, z});
    E elements(2);
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i < 8; ++i)
        elements[s].push_back(s + (i & 1) + 3 * (((i >> 1) & 1) + 2 * ((i >> 2) & 1)));
    return Mesh(MeshKind::cubical, 3, v, elements);
  }
  throw std::invalid_argument("unknown built-in mesh: " + name);
}
//-----------------------------------------------------------------------------
nlohmann::json PiecewiseForm::to_json() const
{
  nlohmann::json p = nlohmann::json::array();
  for (const auto& u : pieces)
    p.push_back(u.to_string());
  return {{"n", n}, {"k", k}, {"pieces", p}};
}
//-----------------------------------------------------------------------------
PiecewiseForm feec::restrict_to_elements(const PolyForm& u,
                                         std::size_t elements)
{
  return {u.n(), u.k(), std::vector<PolyForm>(elements, u)};
}
//-----------------------------------------------------------------------------
PiecewiseForm feec::parse_piecewise(const nlohmann::json& doc, int n, int k)
{
  const nlohmann::json& list = doc.is_object() ? doc.at("pieces") : doc;
  if (!list.is_array())
    throw std::invalid_argument("piecewise form must list one form per element");
  PiecewiseForm u{n, k, {}};
  for (const auto& s : list)
    u.pieces.push_back(parse_form(s.get<std::string>(), n, k));
  return u;
}
//-----------------------------------------------------------------------------
PiecewiseForm feec::exterior_derivative(const PiecewiseForm& u)
{
  PiecewiseForm out{u.n, u.k + 1, {}};
  for (const auto& p : u.pieces)
    out.pieces.push_back(exterior_derivative(p));
  return out;
}
//-----------------------------------------------------------------------------
namespace
{
void check_compatible(const Mesh& mesh, const SpaceSpec& spec)
{
  spec.validate();
  if (!has_element(spec))
    throw std::invalid_argument(spec.to_string()
                                + " has no unisolvent degrees of freedom");
  if (spec.n != mesh.n())
    throw std::invalid_argument("space dimension differs from mesh dimension");
  if (spec.element() != mesh.element_kind())
    throw std::invalid_argument(to_string(spec.family) + " does not live on a "
                                + to_string(mesh.kind()) + " mesh");
}

std::vector<PolyForm> element_shapes(const Mesh& mesh, const SpaceSpec& spec,
                                     int e)
{
  const AffineMap to_reference = mesh.chart(e).inverse();
  std::vector<PolyForm> out;
  for (const auto& f : basis(spec).forms)
    out.push_back(pullback(f, to_reference));
  return out;
}
} // namespace
//-----------------------------------------------------------------------------
std::size_t feec::face_sum_dimension(const Mesh& mesh, const SpaceSpec& spec)
{
  check_compatible(mesh, spec);
  std::size_t total = 0;
  for (int d = 0; d <= mesh.n(); ++d)
    total += mesh.num_faces(d) * dof_weights(spec, d).size();
  return total;
}
//-----------------------------------------------------------------------------
GlobalSpace feec::assemble(const Mesh& mesh, const SpaceSpec& spec)
{
  check_compatible(mesh, spec);
  GlobalSpace space{std::make_shared<const Mesh>(mesh), spec, {}, {}, 0};
  const int n = mesh.n();
  std::vector<std::vector<PolyForm>> weights(n + 1);
  std::size_t next = 0;
  space.face_dofs.resize(n + 1);
  for (int d = 0; d <= n; ++d)
  {
    weights[d] = dof_weights(spec, d);
    for (std::size_t f = 0; f < mesh.num_faces(d); ++f)
    {
      std::vector<std::size_t> ids(weights[d].size());
      for (auto& id : ids)
        id = next++;
      space.face_dofs[d].push_back(std::move(ids));
    }
  }
  space.dimension = next;

  std::vector<std::vector<AffineEmbedding>> params(n + 1);
  for (int d = 0; d <= n; ++d)
    for (std::size_t f = 0; f < mesh.num_faces(d); ++f)
      params[d].emplace_back(mesh.face_parametrization(d, static_cast<int>(f)));

  space.elements.resize(mesh.num_elements());
  parallel_for(mesh.num_elements(),
               [&](std::size_t e)
               {
                 const int ei = static_cast<int>(e);
                 ElementSpace& el = space.elements[e];
                 el.chart = mesh.chart(ei);
                 el.shapes = element_shapes(mesh, spec, ei);
                 for (int d = 0; d <= n; ++d)
                 {
                   const auto& faces = mesh.element_faces(ei, d);
                   for (std::size_t i = 0; i < faces.size(); ++i)
                   {
                     const int f = faces[i];
                     const FaceRef face{mesh.element_kind(), d, f,
                                        mesh.faces(d)[f], params[d][f]};
                     for (std::size_t q = 0; q < weights[d].size(); ++q)
                     {
                       el.dofs.push_back({face, weights[d][q]});
                       el.global_ids.push_back(space.face_dofs[d][f][q]);
                       el.signs.push_back(1);
                       el.face_orientation.push_back(
                           mesh.face_orientation(ei, d, static_cast<int>(i)));
                     }
                   }
                 }
                 if (el.dofs.size() != el.shapes.size())
                   throw std::logic_error("element functional count differs "
                                          "from the shape space dimension");
                 el.inverse_dof_matrix
                     = inverse(dof_matrix(el.dofs, el.shapes));
               });
  return space;
}
//-----------------------------------------------------------------------------
std::size_t feec::conforming_dimension(const Mesh& mesh, const SpaceSpec& spec)
{
  check_compatible(mesh, spec);
  const int n = mesh.n();
  std::vector<std::vector<PolyForm>> shapes(mesh.num_elements());
  std::vector<std::uint64_t> offset(mesh.num_elements() + 1, 0);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e)
  {
    shapes[e] = element_shapes(mesh, spec, static_cast<int>(e));
    offset[e + 1] = offset[e] + shapes[e].size();
  }
  Echelon constraints;
  for (int d = spec.k; d < n; ++d)
    for (std::size_t f = 0; f < mesh.num_faces(d); ++f)
    {
      const auto& owners = mesh.face_elements(d, static_cast<int>(f));
      if (owners.size() < 2)
        continue;
      const AffineEmbedding param(
          mesh.face_parametrization(d, static_cast<int>(f)));
      auto traces = [&](int e)
      {
        std::vector<SparseVector> out;
        for (const auto& s : shapes[e])
          out.push_back(trace_to_face(s, param).coordinates());
        return out;
      };
      const auto first = traces(owners[0]);
      for (std::size_t m = 1; m < owners.size(); ++m)
      {
        const auto other = traces(owners[m]);
        std::map<std::uint64_t, SparseVector> rows;
        for (std::size_t j = 0; j < first.size(); ++j)
          for (const auto& [key, v] : first[j])
            rows[key].emplace_back(offset[owners[0]] + j, v);
        for (std::size_t j = 0; j < other.size(); ++j)
          for (const auto& [key, v] : other[j])
            rows[key].emplace_back(offset[owners[m]] + j, -v);
        for (const auto& [key, row] : rows)
          constraints.insert(row);
      }
    }
  return offset.back() - constraints.rank();
}
//-----------------------------------------------------------------------------
PiecewiseForm feec::from_global_coefficients(const GlobalSpace& space,
                                             const std::vector<Rational>& values)
{
  if (values.size() != space.dimension)
    throw std::invalid_argument("coefficient vector has the wrong length");
  PiecewiseForm out{space.spec.n, space.spec.k,
                    std::vector<PolyForm>(space.elements.size(),
                                          PolyForm(space.spec.n, space.spec.k))};
  parallel_for(space.elements.size(),
               [&](std::size_t e)
               {
                 const auto& el = space.elements[e];
                 const auto& inv = el.inverse_dof_matrix;
                 for (std::size_t j = 0; j < el.shapes.size(); ++j)
                 {
                   Rational c = 0;
                   for (std::size_t i = 0; i < el.dofs.size(); ++i)
                     c += inv(j, i) * el.signs[i] * values[el.global_ids[i]];
                   if (c != 0)
                     out.pieces[e] += el.shapes[j] * c;
                 }
               });
  return out;
}
//-----------------------------------------------------------------------------
std::vector<Rational> feec::global_dof_values(const GlobalSpace& space,
                                              const PiecewiseForm& u)
{
  if (u.pieces.size() != space.elements.size())
    throw std::invalid_argument("piecewise form needs one piece per element");
  if (u.n != space.spec.n or u.k != space.spec.k)
    throw std::invalid_argument("piecewise form has the wrong shape");
  std::vector<std::vector<Rational>> local(space.elements.size());
  parallel_for(space.elements.size(),
               [&](std::size_t e)
               {
                 const auto& el = space.elements[e];
                 const auto m = dof_matrix(el.dofs, {u.pieces[e]});
                 for (std::size_t i = 0; i < el.dofs.size(); ++i)
                   local[e].push_back(m(i, 0) * el.signs[i]);
               });
  std::vector<Rational> values(space.dimension);
  std::vector<bool> set(space.dimension, false);
  for (std::size_t e = 0; e < space.elements.size(); ++e)
  {
    const auto& el = space.elements[e];
    for (std::size_t i = 0; i < el.dofs.size(); ++i)
    {
      const auto g = el.global_ids[i];
      if (!set[g])
      {
        values[g] = local[e][i];
        set[g] = true;
      }
      else if (values[g] != local[e][i])
        throw std::invalid_argument("projection input has multi-valued "
                                    "degrees of freedom on a shared face");
    }
  }
  return values;
}
//-----------------------------------------------------------------------------
PiecewiseForm feec::project(const GlobalSpace& space, const PiecewiseForm& u)
{
  return from_global_coefficients(space, global_dof_values(space, u));
}
//-----------------------------------------------------------------------------
PiecewiseForm feec::project(const GlobalSpace& space, const PolyForm& u)
{
  return project(space, restrict_to_elements(u, space.elements.size()));
}
//-----------------------------------------------------------------------------
bool feec::continuity_check(const Mesh& mesh, const PiecewiseForm& u)
{
  if (u.pieces.size() != mesh.num_elements())
    throw std::invalid_argument("piecewise form needs one piece per element");
  for (int d = u.k; d < mesh.n(); ++d)
    for (std::size_t f = 0; f < mesh.num_faces(d); ++f)
    {
      const auto& owners = mesh.face_elements(d, static_cast<int>(f));
      if (owners.size() < 2)
        continue;
      const AffineEmbedding param(
          mesh.face_parametrization(d, static_cast<int>(f)));
      const PolyForm first = trace_to_face(u.pieces[owners[0]], param);
      for (std::size_t m = 1; m < owners.size(); ++m)
        if (trace_to_face(u.pieces[owners[m]], param) != first)
          return false;
    }
  return true;
}
//-----------------------------------------------------------------------------
bool feec::continuity_check(const GlobalSpace& space, const PiecewiseForm& u)
{
  return continuity_check(*space.mesh, u);
}
//-----------------------------------------------------------------------------
int feec::next_level_degree(Family family, int r)
{
  return family == Family::P or family == Family::S ? r - 1 : r;
}
//-----------------------------------------------------------------------------
namespace
{
std::pair<SpaceSpec, SpaceSpec> commuting_levels(const Mesh& mesh,
                                                 Family family, int r, int k)
{
  const SpaceSpec here{family, mesh.n(), r, k};
  here.validate();
  const SpaceSpec next{family, mesh.n(), next_level_degree(family, r), k + 1};
  if (!has_element(here))
    throw std::invalid_argument(here.to_string() + " is not a finite element");
  if (k + 1 > mesh.n() or !has_element(next))
    throw std::invalid_argument("missing adjacent level: " + here.to_string()
                                + " has no successor in its complex");
  return {here, next};
}

// Returns the index of the first element where the two sides differ, or -1.
long commuting_mismatch(const GlobalSpace& here, const GlobalSpace& next,
                        const PiecewiseForm& u, PiecewiseForm* lhs_out,
                        PiecewiseForm* rhs_out)
{
  const PiecewiseForm lhs = exterior_derivative(project(here, u));
  const PiecewiseForm rhs = project(next, exterior_derivative(u));
  long bad = -1;
  for (std::size_t e = 0; e < lhs.pieces.size() and bad < 0; ++e)
    if (lhs.pieces[e] != rhs.pieces[e])
      bad = static_cast<long>(e);
  if (lhs_out)
    *lhs_out = lhs;
  if (rhs_out)
    *rhs_out = rhs;
  return bad;
}
} // namespace
//-----------------------------------------------------------------------------
Certificate feec::check_commuting(const Mesh& mesh, Family family, int r,
                                  const PiecewiseForm& u)
{
  const auto [here, next] = commuting_levels(mesh, family, r, u.k);
  const GlobalSpace sh = assemble(mesh, here);
  const GlobalSpace sn = assemble(mesh, next);
  PiecewiseForm lhs, rhs;
  const long bad = commuting_mismatch(sh, sn, u, &lhs, &rhs);
  Certificate c{"commuting",
                {{"family", to_string(family)},
                 {"n", mesh.n()},
                 {"r", r},
                 {"k", u.k},
                 {"mesh", to_string(mesh.kind())},
                 {"elements", mesh.num_elements()}},
                bad < 0,
                {{"input", u.to_json()["pieces"]},
                 {"d_of_projection", lhs.to_json()["pieces"]},
                 {"projection_of_d", rhs.to_json()["pieces"]}}};
  if (bad >= 0)
    c.witness["first_mismatch_element"] = bad;
  return c;
}
//-----------------------------------------------------------------------------
Certificate feec::check_commuting_monomials(const Mesh& mesh, Family family,
                                            int r)
{
  Certificate c{"commuting_monomials",
                {{"family", to_string(family)},
                 {"n", mesh.n()},
                 {"r", r},
                 {"mesh", to_string(mesh.kind())},
                 {"elements", mesh.num_elements()}},
                true,
                nlohmann::json::array()};
  for (int k = 0; k < mesh.n(); ++k)
  {
    const SpaceSpec here{family, mesh.n(), r, k};
    const SpaceSpec next{family, mesh.n(), next_level_degree(family, r), k + 1};
    if (!has_element(here) or !has_element(next))
      continue;
    const GlobalSpace sh = assemble(mesh, here);
    const GlobalSpace sn = assemble(mesh, next);
    const auto inputs = polynomial_forms(mesh.n(), k, r + 1);
    std::vector<long> bad(inputs.size(), -1);
    parallel_for(inputs.size(),
                 [&](std::size_t i)
                 {
                   bad[i] = commuting_mismatch(
                       sh, sn, restrict_to_elements(inputs[i],
                                                    mesh.num_elements()),
                       nullptr, nullptr);
                 });
    nlohmann::json w = {{"k", k},
                        {"level_k", here.to_string()},
                        {"level_k_plus_1", next.to_string()},
                        {"inputs", inputs.size()}};
    std::size_t failures = 0;
    for (std::size_t i = 0; i < inputs.size(); ++i)
      if (bad[i] >= 0)
      {
        if (failures++ == 0)
          w["counterexample"] = inputs[i].to_string();
      }
    w["failures"] = failures;
    c.pass = c.pass and failures == 0;
    c.witness.push_back(w);
  }
  return c;
}
//-----------------------------------------------------------------------------
Certificate feec::check_assembly(const Mesh& mesh, const SpaceSpec& spec)
{
  const GlobalSpace space = assemble(mesh, spec);
  const std::size_t face_sum = face_sum_dimension(mesh, spec);
  const std::size_t oracle = conforming_dimension(mesh, spec);
  std::vector<char> continuous(space.dimension, 0);
  std::vector<char> reproduces(space.dimension, 0);
  parallel_for(space.dimension,
               [&](std::size_t i)
               {
                 std::vector<Rational> e(space.dimension);
                 e[i] = 1;
                 const auto phi = from_global_coefficients(space, e);
                 continuous[i] = continuity_check(mesh, phi);
                 reproduces[i] = global_dof_values(space, phi) == e;
               });
  const auto all = [](const std::vector<char>& v)
  { return std::all_of(v.begin(), v.end(), [](char b) { return b != 0; }); };
  nlohmann::json faces = nlohmann::json::array();
  for (int d = 0; d <= mesh.n(); ++d)
    faces.push_back({{"d", d},
                     {"faces", mesh.num_faces(d)},
                     {"per_face", dof_weights(spec, d).size()}});
  Certificate c{"assembly",
                to_json(spec),
                false,
                {{"face_sum", face_sum},
                 {"assembled_dimension", space.dimension},
                 {"conforming_dimension", oracle},
                 {"basis_continuous", all(continuous)},
                 {"basis_dual", all(reproduces)},
                 {"faces", faces}}};
  c.parameters["mesh"] = to_string(mesh.kind());
  c.parameters["elements"] = mesh.num_elements();
  c.pass = face_sum == space.dimension and oracle == space.dimension
           and all(continuous) and all(reproduces);
  return c;
}
