#include "doctest.h"

#include "feec/complexes.hpp"
#include "feec/spaces.hpp"

#include "helpers.hpp"

#include <random>
#include <stdexcept>

using namespace feec;
using testing_util::form;
using testing_util::seq;
using testing_util::x;

namespace
{
bool contains(const std::vector<PolyForm>& set, const PolyForm& u)
{
  for (const auto& v : set)
    if (v == u)
      return true;
  return false;
}

PolyForm mono(std::vector<int> alpha, std::vector<int> sigma, int n)
{
  return PolyForm::monomial(n, MultiIndex(alpha), seq(std::move(sigma), n));
}

std::int64_t C(int n, int k) { return binomial(n, k); }
} // namespace

TEST_CASE("basis_P sizes")
{
  CHECK(basis_P(1, 1, 3).size() == 12);
  CHECK(basis_P(0, 0, 2).size() == 1);
  CHECK(basis_P(4, 0, 3).size() == 35);
}

TEST_CASE("basis_Hrl")
{
  const auto h = basis_Hrl(2, 2, 1, 3);
  CHECK(contains(h, mono({0, 1, 1}, {1}, 3)));
  CHECK_FALSE(contains(h, mono({0, 2, 0}, {1}, 3)));
  for (int k = 0; k <= 3; ++k)
    CHECK(basis_Hrl(0, 1, k, 3).empty());
  CHECK(spans_equal(basis_Hrl(1, 1, 0, 2),
                    {PolyForm::scalar(x(2, 1)), PolyForm::scalar(x(2, 2))}));
}

TEST_CASE("basis_Pminus")
{
  CHECK(basis_Pminus(1, 1, 3).size() == 6);
  CHECK(basis_Pminus(1, 0, 3).size() == 4);
  CHECK(spans_equal(basis_Pminus(1, 0, 3).forms, basis_P(1, 0, 3).forms));
  CHECK(basis_Pminus(2, 2, 3).size() == 15);
}

TEST_CASE("basis_J")
{
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      CHECK(basis_J(r, n, n).empty());
  // kappa of x^3 dx^1 ^ dx^2, an element of H_{1,1} Lambda^2 in three variables.
  const auto g = koszul(mono({0, 0, 1}, {1, 2}, 3));
  CHECK(span_contains(basis_J(1, 1, 3), {g}));
  CHECK_FALSE(span_contains(basis_P(1, 1, 3).forms, {g}));
  // n-form monomials have ldeg 0, so J_r Lambda^{n-1} is empty.
  CHECK(basis_J(1, 1, 2).empty());
}

TEST_CASE("basis_S and basis_Qminus sizes")
{
  CHECK(basis_S(2, 1, 3).size() == 48);
  CHECK(basis_S(1, 3, 3).size() == 4);
  CHECK(basis_S(3, 0, 2).size() == 12);
  CHECK(basis_Qminus(2, 1, 3).size() == 54);
  CHECK(basis_Qminus(1, 0, 2).size() == 4);
  CHECK(basis_Qminus(1, 2, 2).size() == 1);
}

TEST_CASE("Qminus in two dimensions is the tensor product space")
{
  for (int r = 1; r <= 3; ++r)
  {
    std::vector<PolyForm> expected;
    for (int a = 0; a <= r - 1; ++a)
      for (int b = 0; b <= r; ++b)
      {
        expected.push_back(mono({a, b}, {1}, 2));
        expected.push_back(mono({b, a}, {2}, 2));
      }
    CHECK(spans_equal(basis_Qminus(r, 1, 2).forms, expected));
  }
}

TEST_CASE("dimension by formula and by rank")
{
  CHECK(dimension({Family::Qminus, 4, 2, 2}, DimensionMethod::formula) == 216);
  CHECK(dimension({Family::S, 4, 6, 4}, DimensionMethod::rank) == 210);
  CHECK_THROWS_AS(dimension({Family::S, 2, 1, 0}, DimensionMethod::formula),
                  std::invalid_argument);
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
      {
        // Closed forms computed here, independently of the library.
        const auto p = C(n + r, n - k) * C(r + k, r);
        const auto pm = C(n + r, n - k) * C(r + k - 1, k);
        CHECK(dimension({Family::P, n, r, k}, DimensionMethod::rank) == p);
        CHECK(dimension({Family::Pminus, n, r, k}, DimensionMethod::rank) == pm);
        CHECK(pm * (r + k) == p * r);
        for (auto fam : {Family::P, Family::Pminus, Family::Qminus})
        {
          const SpaceSpec s{fam, n, r, k};
          CHECK(dimension(s, DimensionMethod::formula)
                == dimension(s, DimensionMethod::rank));
        }
      }
}

TEST_CASE("SpaceSpec validation")
{
  CHECK_THROWS_AS((SpaceSpec{Family::P, 2, 1, 3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SpaceSpec{Family::P, 2, -1, 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SpaceSpec{Family::Pminus, 2, 0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((SpaceSpec{Family::S, 2, 0, 1}.validate()), std::invalid_argument);
  CHECK_NOTHROW((SpaceSpec{Family::S, 2, 0, 2}.validate()));
  CHECK_THROWS_AS(parse_family("Q"), std::invalid_argument);
  CHECK(parse_family("Pminus") == Family::Pminus);
}

TEST_CASE("membership")
{
  CHECK(membership(form("1/1 x^[0,1] dx[1]", 2, 1), {Family::P, 2, 1, 1}));
  CHECK(membership(form("-1/1 x^[0,1] dx[1] + 1/1 x^[1,0] dx[2]", 2, 1),
                   {Family::Pminus, 2, 1, 1}));
  CHECK_FALSE(membership(form("1/1 x^[2,0] dx[1]", 2, 1), {Family::P, 2, 1, 1}));
  CHECK_FALSE(membership(form("1/1 x^[0,1] dx[1]", 2, 1), {Family::Pminus, 2, 1, 1}));
  CHECK_THROWS_AS(membership(form("1/1 x^[0,1] dx[1]", 2, 1), {Family::P, 3, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("Pminus sits between P_{r-1} and P_r")
{
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
      {
        const auto pm = basis_Pminus(r, k, n).forms;
        CHECK(span_contains(basis_P(r, k, n).forms, pm));
        if (r >= 2)
          CHECK(span_contains(pm, basis_P(r - 1, k, n).forms));
      }
}

TEST_CASE("Pminus and S do not depend on the origin")
{
  const std::vector<std::vector<Rational>> shifts{
      {Rational(1, 2), -1, 3}, {2, Rational(1, 3), -1}};
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
        for (const auto& full : shifts)
        {
          const std::span<const Rational> shift(full.data(), n);
          for (auto fam : {Family::Pminus, Family::S})
          {
            const auto& b = basis({fam, n, r, k}).forms;
            CHECK(spans_equal(translate(b, shift), b));
          }
        }
}

TEST_CASE("Pminus and P are invariant under general affine maps")
{
  std::mt19937 rng(21);
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
        for (auto fam : {Family::P, Family::Pminus})
        {
          const auto f = testing_util::random_affine(rng, n, n);
          const SpaceSpec s{fam, n, r, k};
          std::vector<PolyForm> pulled;
          for (const auto& u : basis(s).forms)
            pulled.push_back(pullback(u, f));
          CHECK(spans_equal(pulled, basis(s).forms));
          CHECK(check_affine_invariance(s, f, "random").pass);
        }
}

TEST_CASE("S is invariant under axis-aligned dilations and translations")
{
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r)
      for (int k = 0; k <= n; ++k)
      {
        AffineMap f{RationalMatrix(n, n), std::vector<Rational>(n)};
        for (int i = 0; i < n; ++i)
        {
          f.linear(i, i) = make_rational(i + 2, 3);
          f.offset[i] = make_rational(1 - i, 2);
        }
        for (auto fam : {Family::S, Family::Qminus})
          CHECK(check_affine_invariance({fam, n, r, k}, f, "dilation").pass);
      }
}

TEST_CASE("basis construction is deterministic and cached")
{
  const SpaceSpec s{Family::S, 3, 2, 1};
  const auto& a = basis(s);
  const auto& b = basis(s);
  CHECK(&a == &b);
  CHECK(basis_S(2, 1, 3).forms == a.forms);
}

TEST_CASE("independent_subset keeps the first independent forms")
{
  const auto u = form("1/1 x^[0,1] dx[1]", 2, 1);
  const auto v = form("1/1 x^[1,0] dx[2]", 2, 1);
  const auto kept = independent_subset({u, u * Rational(2), v, u + v});
  REQUIRE(kept.size() == 2);
  CHECK(kept[0] == u);
  CHECK(kept[1] == v);
  CHECK(span_rank({u, v, u - v}) == 2);
  PolyForm w(2, 1);
  CHECK_FALSE(span_contains({u}, {v}, &w));
  CHECK(w == v);
}
