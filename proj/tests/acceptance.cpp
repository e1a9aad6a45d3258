// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include "feec/complexes.hpp"
#include "feec/mesh.hpp"

#include "helpers.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

using namespace feec;

namespace
{

struct Outcome
{
  bool pass = true;
  std::string detail;

  void fail(const std::string& what)
  {
    if (pass)
      detail = what;
    pass = false;
  }
};

std::string spec_name(Family f, int n, int r, int k)
{
  return SpaceSpec{f, n, r, k}.to_string();
}

Outcome table1()
{
  Outcome o;
  const auto c = check_table1(4, 6);
  if (!c.pass)
    o.fail(c.witness["mismatches"].dump());
  if (o.pass)
    o.detail = c.witness["entries"].dump() + " entries";
  return o;
}

Outcome dimension_formulas()
{
  Outcome o;
  int checked = 0;
  for (int n = 1; n <= 4; ++n)
    for (int r = 1; r <= 6; ++r)
      for (int k = 0; k <= n; ++k)
      {
        const auto p = binomial(n + r, n - k) * binomial(r + k, r);
        const auto pm = binomial(n + r, n - k) * binomial(r + k - 1, k);
        const auto rank_p = static_cast<std::int64_t>(span_rank(basis_P(r, k, n).forms));
        const auto rank_pm = static_cast<std::int64_t>(span_rank(basis_Pminus(r, k, n).forms));
        if (rank_p != p)
          o.fail(spec_name(Family::P, n, r, k));
        if (rank_pm != pm)
          o.fail(spec_name(Family::Pminus, n, r, k));
        // dim Pminus / dim P = r / (r + k), exactly.
        if (Rational(rank_pm) / Rational(rank_p) != Rational(r) / Rational(r + k))
          o.fail("ratio " + spec_name(Family::Pminus, n, r, k));
        ++checked;
      }
  if (o.pass)
    o.detail = std::to_string(checked) + " (n, r, k) triples";
  return o;
}

Outcome unisolvence()
{
  Outcome o;
  int checked = 0;
  auto one = [&](const SpaceSpec& s, const std::vector<DofFunctional>& functionals)
  {
    const auto& b = basis(s);
    if (functionals.size() != b.size())
      return o.fail("count " + s.to_string());
    if (determinant(dof_matrix(functionals, b.forms)) == 0)
      return o.fail("singular " + s.to_string());
    ++checked;
  };
  for (int n = 1; n <= 3; ++n)
  {
    for (int r = 1; r <= 4; ++r)
    {
      one({Family::P, n, r, 0}, dofs_lagrange(r, n).functionals);
      for (int k = 0; k <= n; ++k)
      {
        one({Family::P, n, r, k}, dofs_P(r, k, n).functionals);
        one({Family::Pminus, n, r, k}, dofs_Pminus(r, k, n).functionals);
      }
    }
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
      {
        one({Family::Qminus, n, r, k}, dofs_Qminus(r, k, n).functionals);
        one({Family::S, n, r, k}, dofs_S(r, k, n).functionals);
      }
  }
  if (o.pass)
    o.detail = std::to_string(checked) + " element spaces";
  return o;
}

Outcome homotopy()
{
  Outcome o;
  std::size_t checked = 0;
  for (int n = 1; n <= 4; ++n)
    for (int r = 0; r <= 5; ++r)
      for (int k = 0; k <= n; ++k)
        for (const auto& w : monomial_forms(n, k, r))
        {
          auto lhs = koszul(exterior_derivative(w));
          if (k > 0)
            lhs += exterior_derivative(koszul(w));
          if (lhs != Rational(k + r) * w)
            o.fail(w.to_string());
          ++checked;
        }
  if (o.pass)
    o.detail = std::to_string(checked) + " basis forms";
  return o;
}

Outcome exactness()
{
  Outcome o;
  int checked = 0;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 4; ++r)
    {
      for (const ComplexSpec& spec :
           {ComplexSpec{Family::P, n, r}, ComplexSpec{Family::Pminus, n, r},
            ComplexSpec{Family::P, n, r, ComplexKind::koszul}})
      {
        const auto c = check_exactness(spec);
        if (!c.pass)
          o.fail(c.to_json().dump());
        for (const auto& l : c.witness["levels"])
          if (l["rank"].get<int>() + l["nullity"].get<int>() != l["dim"].get<int>())
            o.fail("rank + nullity != dim in " + spec.to_json().dump());
        ++checked;
      }
      for (int k = 0; k <= n; ++k)
      {
        const auto c = check_direct_sum(n, r, k);
        if (!c.pass or c.witness["intersection_dim"] != 0)
          o.fail(c.to_json().dump());
        ++checked;
      }
    }
  if (o.pass)
    o.detail = std::to_string(checked) + " certificates";
  return o;
}

Outcome serendipity()
{
  Outcome o;
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
    {
      for (const auto& c : {check_S_properties(n, r), check_S0_sdeg(n, r), check_S_top(n, r)})
        if (!c.pass)
          o.fail(c.to_json().dump());
      // Independent membership check: sdeg <= r monomials span S_r Lambda^0.
      std::vector<PolyForm> low;
      for (int deg = 0; deg <= r + n; ++deg)
        for (const auto& a : monomials_of_degree(n, deg))
          if (sdeg(a) <= r)
            low.push_back(PolyForm::monomial(n, a, IncreasingSequence({}, n)));
      if (!spans_equal(low, basis_S(r, 0, n).forms))
        o.fail("sdeg span n=" + std::to_string(n) + " r=" + std::to_string(r));
      if (!spans_equal(basis_S(r, n, n).forms, basis_P(r, n, n).forms))
        o.fail("top degree n=" + std::to_string(n));
    }
  if (o.pass)
    o.detail = "n <= 3, r <= 3";
  return o;
}

Outcome commuting()
{
  Outcome o;
  int checked = 0;
  for (const char* name : {"square2", "quad2"})
  {
    const Mesh m = builtin_mesh(name);
    const std::vector<Family> families = m.kind() == MeshKind::simplicial
                                             ? std::vector<Family>{Family::P, Family::Pminus}
                                             : std::vector<Family>{Family::Qminus, Family::S};
    for (Family f : families)
      for (int r = 1; r <= 3; ++r)
      {
        const auto c = check_commuting_monomials(m, f, r);
        if (!c.pass)
          o.fail(std::string(name) + " " + c.to_json().dump());
        ++checked;
      }
  }
  if (o.pass)
    o.detail = std::to_string(checked) + " (mesh, family, r) sweeps";
  return o;
}

Outcome assembly()
{
  Outcome o;
  int checked = 0;
  int simplicial = 0, cubical = 0;
  for (const auto& name : builtin_mesh_names())
  {
    const Mesh m = builtin_mesh(name);
    (m.kind() == MeshKind::simplicial ? simplicial : cubical) += 1;
    const std::vector<Family> families = m.kind() == MeshKind::simplicial
                                             ? std::vector<Family>{Family::P, Family::Pminus}
                                             : std::vector<Family>{Family::Qminus, Family::S};
    for (Family f : families)
      for (int r = 1; r <= 2; ++r)
        for (int k = 0; k <= m.n(); ++k)
        {
          const SpaceSpec s{f, m.n(), r, k};
          if (!has_element(s))
            continue;
          // Face sum computed here from the per-face weight counts.
          std::size_t face_sum = 0;
          for (int d = 0; d <= m.n(); ++d)
            face_sum += m.num_faces(d) * dof_weights(s, d).size();
          if (assemble(m, s).dimension != face_sum)
            o.fail(name + " " + s.to_string());
          const auto c = check_assembly(m, s);
          if (!c.pass)
            o.fail(name + " " + c.to_json().dump());
          ++checked;
        }
    if (m.kind() == MeshKind::simplicial
        and assemble(m, {Family::Pminus, m.n(), 1, 1}).dimension != m.num_faces(1))
      o.fail("Whitney count on " + name);
  }
  if (simplicial < 3 or cubical < 3)
    o.fail("fewer than 3 meshes of a kind");
  if (o.pass)
    o.detail = std::to_string(checked) + " spaces on " + std::to_string(simplicial) + " simplicial and "
               + std::to_string(cubical) + " cubical meshes";
  return o;
}

Outcome oracle_integration()
{
  Outcome o;
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n)
  {
    std::vector<int> top(n);
    for (int i = 0; i < n; ++i)
      top[i] = i + 1;
    const IncreasingSequence sigma(top, n);
    std::vector<std::vector<Rational>> ref(n + 1, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      ref[i + 1][i] = 1;
    // A second, skewed simplex with negative orientation.
    auto skew = ref;
    skew[0][0] = Rational(1, 3);
    if (n >= 2)
      std::swap(skew[1], skew[2]);
    skew[n][0] = Rational(-2, 5);
    for (const auto& a : monomials_up_to(n, 6))
    {
      const auto u = PolyForm::monomial(n, a, sigma);
      for (const auto& simplex : {ref, skew})
      {
        const std::vector<std::vector<mpq_class>> v(simplex.begin(), simplex.end());
        if (integrate_simplex(u, simplex) != oracle::simplex_monomial_integral(a.exponents(n), v))
          o.fail(u.to_string());
        ++checked;
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(checked) + " monomial integrals";
  return o;
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Table 1 dimensions for Qminus and S, n <= 4, r <= 6", table1},
      {"dimension formulas and ratio identity, n <= 4, r <= 6", dimension_formulas},
      {"unisolvence of P, Lagrange, Pminus (r <= 4) and Qminus, S (r <= 3), n <= 3", unisolvence},
      {"homotopy formula on full monomial bases, n <= 4, r <= 5", homotopy},
      {"exactness of the P, Pminus and Koszul complexes and the direct sum, n <= 3, r <= 4",
       exactness},
      {"S property suite, sdeg description and top degree, n <= 3, r <= 3", serendipity},
      {"commuting projections on the two-element meshes", commuting},
      {"assembly identity on builtin meshes", assembly},
      {"integration against the iterated-integral oracle, degree <= 6, n <= 3",
       oracle_integration}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i)
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = criteria[i].second();
    }
    catch (const std::exception& e)
    {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %zu: %s [%s, %.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
