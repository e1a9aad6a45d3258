#include "doctest.h"

#include "feec/mesh.hpp"

#include "helpers.hpp"

#include <random>
#include <stdexcept>

using namespace feec;
using testing_util::form;
using testing_util::x;

namespace
{
using V = std::vector<std::vector<Rational>>;
using E = std::vector<std::vector<int>>;

Mesh unit_triangle() { return Mesh(MeshKind::simplicial, 2, V{{0, 0}, {1, 0}, {0, 1}}, E{{0, 1, 2}}); }

PiecewiseForm random_member(const GlobalSpace& space, std::mt19937& rng)
{
  std::uniform_int_distribution<int> c(-4, 4);
  std::vector<Rational> values(space.dimension);
  for (auto& v : values)
    v = make_rational(c(rng), 1 + (c(rng) + 4) % 3);
  return from_global_coefficients(space, values);
}
} // namespace

TEST_CASE("builtin meshes have the expected face counts")
{
  const std::map<std::string, std::vector<std::size_t>> expected{
      {"square2", {4, 5, 2}},    {"square4", {5, 8, 4}}, {"tet2", {5, 9, 7, 2}},
      {"cube6", {8, 19, 18, 6}}, {"quad2", {6, 7, 2}},   {"quad4", {9, 12, 4}},
      {"cube1", {8, 12, 6, 1}},  {"cube2", {12, 20, 11, 2}}};
  for (const auto& name : builtin_mesh_names())
  {
    CAPTURE(name);
    const auto m = builtin_mesh(name);
    std::vector<std::size_t> counts;
    long euler = 0;
    for (int d = 0; d <= m.n(); ++d)
    {
      counts.push_back(m.num_faces(d));
      euler += (d % 2 == 0 ? 1 : -1) * static_cast<long>(m.num_faces(d));
    }
    CHECK(counts == expected.at(name));
    // Every builtin mesh covers a contractible region.
    CHECK(euler == 1);
  }
  CHECK_THROWS_AS(builtin_mesh("nope"), std::invalid_argument);
}

TEST_CASE("read_mesh")
{
  const auto square = read_mesh(nlohmann::json::parse(R"({
    "kind": "simplicial", "n": 2,
    "vertices": [["0","0"],["1","0"],["1","1"],["0","1"]],
    "elements": [[0,1,2],[0,2,3]]})"));
  CHECK(square.num_faces(1) == 5);
  const auto cube = read_mesh(nlohmann::json::parse(R"({
    "kind": "cubical", "n": 3,
    "vertices": [[0,0,0],[1,0,0],[0,1,0],[1,1,0],[0,0,1],[1,0,1],[0,1,1],[1,1,1]],
    "elements": [[0,1,2,3,4,5,6,7]]})"));
  CHECK(cube.num_faces(0) == 8);
  CHECK(cube.num_faces(1) == 12);
  CHECK(cube.num_faces(2) == 6);
  CHECK(read_mesh(square.to_json()).to_json() == square.to_json());
}

TEST_CASE("nonconforming and malformed meshes are rejected")
{
  // Two triangles sharing half of an edge.
  CHECK_THROWS_AS(Mesh(MeshKind::simplicial, 2, V{{0, 0}, {2, 0}, {0, 1}, {1, 0}, {3, 0}, {2, -1}},
                       E{{0, 1, 2}, {3, 4, 5}}),
                  std::invalid_argument);
  // Overlapping interiors.
  CHECK_THROWS_AS(Mesh(MeshKind::simplicial, 2, V{{0, 0}, {1, 0}, {0, 1}, {Rational(1, 4), Rational(1, 4)}},
                       E{{0, 1, 2}, {0, 1, 3}}),
                  std::invalid_argument);
  // Hanging node on a box face.
  CHECK_THROWS_AS(Mesh(MeshKind::cubical, 2,
                       V{{0, 0}, {2, 0}, {0, 2}, {2, 2}, {2, 1}, {3, 1}, {3, 2}},
                       E{{0, 1, 2, 3}, {4, 5, 3, 6}}),
                  std::invalid_argument);
  // Boxes offset by half a cell.
  CHECK_THROWS_AS(Mesh(MeshKind::cubical, 1, V{{0}, {2}, {1}, {3}}, E{{0, 1}, {2, 3}}),
                  std::invalid_argument);
  // Degenerate simplex.
  CHECK_THROWS_AS(Mesh(MeshKind::simplicial, 2, V{{0, 0}, {1, 0}, {2, 0}}, E{{0, 1, 2}}),
                  std::invalid_argument);
  // Box vertices not in reference order.
  CHECK_THROWS_AS(Mesh(MeshKind::cubical, 2, V{{0, 0}, {1, 0}, {0, 1}, {1, 1}}, E{{0, 1, 3, 2}}),
                  std::invalid_argument);
  // Wrong vertex count for the kind.
  CHECK_THROWS_AS(Mesh(MeshKind::cubical, 2, V{{0, 0}, {1, 0}, {0, 1}}, E{{0, 1, 2}}),
                  std::invalid_argument);
  // Vertex id out of range and repeated element.
  CHECK_THROWS_AS(Mesh(MeshKind::simplicial, 2, V{{0, 0}, {1, 0}, {0, 1}}, E{{0, 1, 3}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Mesh(MeshKind::simplicial, 2, V{{0, 0}, {1, 0}, {0, 1}}, E{{0, 1, 2}, {2, 1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_mesh(nlohmann::json::parse(
                      R"({"kind":"hex","n":2,"vertices":[],"elements":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(read_mesh(nlohmann::json::parse(
                      R"({"kind":"simplicial","n":2,"vertices":[[0,0],[1,0],[0]],"elements":[[0,1,2]]})")),
                  std::invalid_argument);
  CHECK_THROWS(read_mesh_file("/nonexistent/mesh.json"));
}

TEST_CASE("mesh files match the builtin meshes")
{
  for (const auto& name : builtin_mesh_names())
  {
    CAPTURE(name);
    const auto m = read_mesh_file(std::string(FEEC_DATA_DIR) + "/meshes/" + name + ".json");
    CHECK(m.to_json() == builtin_mesh(name).to_json());
  }
}

TEST_CASE("shared faces and orientations")
{
  const auto m = builtin_mesh("square2");
  // The diagonal {0, 2} is the only edge with two elements.
  int shared = 0;
  for (std::size_t f = 0; f < m.num_faces(1); ++f)
    if (m.face_elements(1, static_cast<int>(f)).size() == 2)
    {
      ++shared;
      CHECK(m.faces(1)[f] == std::vector<int>{0, 2});
    }
  CHECK(shared == 1);
  const auto q = builtin_mesh("cube2");
  for (std::size_t e = 0; e < q.num_elements(); ++e)
    for (int d = 0; d <= 3; ++d)
      for (std::size_t i = 0; i < q.element_faces(static_cast<int>(e), d).size(); ++i)
        CHECK(q.face_orientation(static_cast<int>(e), d, static_cast<int>(i)) == 1);
  // Element charts send reference vertices to the listed mesh vertices.
  for (const auto& name : builtin_mesh_names())
  {
    const auto mesh = builtin_mesh(name);
    const auto ref = reference_vertices(mesh.element_kind(), mesh.n());
    for (std::size_t e = 0; e < mesh.num_elements(); ++e)
    {
      const auto chart = mesh.chart(static_cast<int>(e));
      for (std::size_t i = 0; i < ref.size(); ++i)
        CHECK(chart(ref[i]) == mesh.vertices()[mesh.elements()[e][i]]);
    }
  }
}

TEST_CASE("assembled dimensions on the two-triangle square")
{
  const auto m = builtin_mesh("square2");
  CHECK(assemble(m, {Family::P, 2, 1, 0}).dimension == 4);
  CHECK(assemble(m, {Family::Pminus, 2, 1, 1}).dimension == 5);
  CHECK(assemble(m, {Family::P, 2, 1, 2}).dimension == 6);
  CHECK(assemble(m, {Family::P, 2, 2, 0}).dimension == 9);
  CHECK_THROWS_AS(assemble(m, {Family::Qminus, 2, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(assemble(m, {Family::P, 3, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(assemble(m, {Family::P, 2, 0, 0}), std::invalid_argument);
}

TEST_CASE("Whitney forms have one functional per edge")
{
  for (const auto& name : builtin_mesh_names())
  {
    const auto m = builtin_mesh(name);
    if (m.kind() != MeshKind::simplicial)
      continue;
    CHECK(assemble(m, {Family::Pminus, m.n(), 1, 1}).dimension == m.num_faces(1));
    CHECK(assemble(m, {Family::Pminus, m.n(), 1, m.n() - 1}).dimension
          == m.num_faces(m.n() - 1));
  }
}

TEST_CASE("assembly identity and conforming dimension")
{
  for (const auto& name : builtin_mesh_names())
  {
    const auto m = builtin_mesh(name);
    const std::vector<Family> families = m.kind() == MeshKind::simplicial
                                             ? std::vector<Family>{Family::P, Family::Pminus}
                                             : std::vector<Family>{Family::Qminus, Family::S};
    for (auto fam : families)
      for (int k = 0; k <= m.n(); ++k)
      {
        CAPTURE(name);
        CAPTURE(k);
        const SpaceSpec spec{fam, m.n(), 1, k};
        const auto c = check_assembly(m, spec);
        CHECK(c.pass);
        CHECK(assemble(m, spec).dimension == face_sum_dimension(m, spec));
        CHECK(conforming_dimension(m, spec) == face_sum_dimension(m, spec));
      }
  }
}

TEST_CASE("projection")
{
  const auto m = builtin_mesh("square4");
  const auto space = assemble(m, {Family::P, 2, 1, 0});
  const auto x1 = PolyForm::scalar(x(2, 1));
  for (const auto& piece : project(space, x1).pieces)
    CHECK(piece == x1);

  const auto tri = assemble(unit_triangle(), {Family::P, 2, 1, 0});
  const auto p = project(tri, PolyForm::scalar(x(2, 1) * x(2, 1)));
  REQUIRE(p.pieces.size() == 1);
  const auto& interp = p.pieces[0].component(IncreasingSequence({}, 2));
  CHECK(interp.evaluate(std::vector<Rational>{0, 0}) == 0);
  CHECK(interp.evaluate(std::vector<Rational>{1, 0}) == 1);
  CHECK(interp.evaluate(std::vector<Rational>{0, 1}) == 0);
  CHECK(global_dof_values(tri, p) == std::vector<Rational>{0, 1, 0});
}

TEST_CASE("projection is idempotent and reproduces members")
{
  std::mt19937 rng(31);
  for (const auto& name : {"square2", "quad2", "tet2", "cube2"})
  {
    const auto m = builtin_mesh(name);
    const std::vector<Family> families = m.kind() == MeshKind::simplicial
                                             ? std::vector<Family>{Family::P, Family::Pminus}
                                             : std::vector<Family>{Family::Qminus, Family::S};
    for (auto fam : families)
      for (int k = 0; k <= m.n(); ++k)
      {
        const auto space = assemble(m, {fam, m.n(), 2, k});
        const auto member = random_member(space, rng);
        CHECK(project(space, member).pieces == member.pieces);
        const auto u = testing_util::random_form(rng, m.n(), k, 3);
        const auto once = project(space, u);
        CHECK(project(space, once).pieces == once.pieces);
      }
  }
}

TEST_CASE("continuity")
{
  std::mt19937 rng(41);
  const auto m = builtin_mesh("square2");
  const auto p2 = assemble(m, {Family::P, 2, 2, 0});
  for (int trial = 0; trial < 5; ++trial)
    CHECK(continuity_check(p2, random_member(p2, rng)));
  const PiecewiseForm jump{2, 0, {PolyForm::scalar(Polynomial::constant(2, 1)),
                                  PolyForm::scalar(Polynomial::constant(2, 2))}};
  CHECK_FALSE(continuity_check(m, jump));
  CHECK_THROWS_AS(global_dof_values(p2, jump), std::invalid_argument);
  const auto whitney = assemble(m, {Family::Pminus, 2, 1, 1});
  for (int trial = 0; trial < 5; ++trial)
    CHECK(continuity_check(whitney, random_member(whitney, rng)));
  // Normal components may jump; tangential ones may not.
  const PiecewiseForm normal_jump{2, 1, {form("1/1 x^[0,0] dx[1] + -1/1 x^[0,0] dx[2]", 2, 1),
                                         PolyForm(2, 1)}};
  CHECK(continuity_check(m, normal_jump));
  const PiecewiseForm tangential_jump{2, 1, {form("1/1 x^[0,0] dx[1]", 2, 1), PolyForm(2, 1)}};
  CHECK_FALSE(continuity_check(m, tangential_jump));
  // Piecewise 2-forms carry no continuity constraint in two dimensions.
  const PiecewiseForm top{2, 2, {form("1/1 x^[0,0] dx[1,2]", 2, 2), PolyForm(2, 2)}};
  CHECK(continuity_check(m, top));
}

TEST_CASE("a broken local-to-global map breaks continuity")
{
  for (const auto& name : {"square2", "quad2", "tet2"})
  {
    const auto m = builtin_mesh(name);
    const Family fam = m.kind() == MeshKind::simplicial ? Family::P : Family::Qminus;
    auto space = assemble(m, {fam, m.n(), 1, 0});
    // Swap two shared vertex ids on the second element.
    auto& ids = space.elements[1].global_ids;
    std::vector<std::size_t> shared;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (auto id : space.elements[0].global_ids)
        if (ids[i] == id)
          shared.push_back(i);
    REQUIRE(shared.size() >= 2);
    std::swap(ids[shared[0]], ids[shared[1]]);
    std::vector<Rational> values(space.dimension);
    for (std::size_t i = 0; i < values.size(); ++i)
      values[i] = static_cast<long>(i * i);
    CHECK_FALSE(continuity_check(m, from_global_coefficients(space, values)));
  }
}

TEST_CASE("commuting projections")
{
  const auto m = builtin_mesh("square2");
  const auto u0 = restrict_to_elements(PolyForm::scalar(x(2, 1) * x(2, 1) * x(2, 2)), 2);
  CHECK(check_commuting(m, Family::Pminus, 2, u0).pass);
  const auto u1 = restrict_to_elements(form("1/1 x^[1,1] dx[1]", 2, 1), 2);
  CHECK(check_commuting(m, Family::Pminus, 1, u1).pass);

  // Members of the k-level space: both sides equal du.
  std::mt19937 rng(51);
  const auto space = assemble(m, {Family::Pminus, 2, 2, 1});
  const auto w = random_member(space, rng);
  const auto c = check_commuting(m, Family::Pminus, 2, w);
  CHECK(c.pass);
  CHECK(c.witness["d_of_projection"] == exterior_derivative(w).to_json()["pieces"]);

  // P_0 Lambda^1 is not an element in two dimensions.
  CHECK_THROWS_AS(check_commuting(m, Family::P, 1, u0), std::invalid_argument);
  CHECK(next_level_degree(Family::P, 3) == 2);
  CHECK(next_level_degree(Family::S, 3) == 2);
  CHECK(next_level_degree(Family::Pminus, 3) == 3);
  CHECK(next_level_degree(Family::Qminus, 3) == 3);
}

TEST_CASE("commuting projections on monomials")
{
  for (const auto& name : {"square2", "quad2"})
  {
    const auto m = builtin_mesh(name);
    const std::vector<Family> families = m.kind() == MeshKind::simplicial
                                             ? std::vector<Family>{Family::P, Family::Pminus}
                                             : std::vector<Family>{Family::Qminus, Family::S};
    for (auto fam : families)
      for (int r = 1; r <= 2; ++r)
        CHECK(check_commuting_monomials(m, fam, r).pass);
  }
}

TEST_CASE("piecewise forms")
{
  const auto u = parse_piecewise(nlohmann::json::parse(R"(["1/1 x^[1,0] dx[]", "0"])"), 2, 0);
  CHECK(u.pieces.size() == 2);
  CHECK(exterior_derivative(u).pieces[0] == form("1/1 x^[0,0] dx[1]", 2, 1));
  CHECK(parse_piecewise(u.to_json(), 2, 0).pieces == u.pieces);
  CHECK_THROWS(parse_piecewise(nlohmann::json::parse(R"("x")"), 2, 0));
}
