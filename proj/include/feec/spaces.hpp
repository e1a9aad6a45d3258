#pragma once

#include "feec/forms.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace feec
{

enum class Family
{
  P,
  Pminus,
  Qminus,
  S
};

enum class ElementKind
{
  simplex,
  box
};

std::string to_string(Family f);
std::string to_string(ElementKind e);
/// Accepts "P", "Pminus", "Qminus", "S". Throws std::invalid_argument.
Family parse_family(std::string_view name);
/// Simplex for P and Pminus, box for Qminus and S.
ElementKind element_of(Family f);

/// One member of a family: polynomial degree r, form degree k, dimension n.
struct SpaceSpec
{
  Family family;
  int n;
  int r;
  int k;

  ElementKind element() const { return element_of(family); }

  /// Throws std::invalid_argument unless 0 <= k <= n, and r >= 0 for P,
  /// r >= 1 for Pminus and Qminus, r >= 1 for S (r = 0 only for k = n).
  void validate() const;
  bool is_valid() const;
  std::string to_string() const;

  friend auto operator<=>(const SpaceSpec&, const SpaceSpec&) = default;
};

/// Linearly independent forms spanning one family member.
struct SpaceBasis
{
  SpaceSpec spec;
  std::vector<PolyForm> forms;

  std::size_t size() const { return forms.size(); }
};

/// Greedy maximal independent prefix of `generators`, in order.
std::vector<PolyForm> independent_subset(const std::vector<PolyForm>& generators);

std::size_t span_rank(const std::vector<PolyForm>& forms);

/// True if every form of `items` lies in span(`span`). On failure the first
/// offending item is written to `witness` when given.
bool span_contains(const std::vector<PolyForm>& span,
                   const std::vector<PolyForm>& items,
                   PolyForm* witness = nullptr);

bool spans_equal(const std::vector<PolyForm>& a, const std::vector<PolyForm>& b);

/// All monomial k-forms of degree <= r, grouped by sigma then degree.
std::vector<PolyForm> polynomial_forms(int n, int k, int r);

/// Monomial k-forms x^alpha dx^sigma with deg = r and ldeg >= l.
std::vector<PolyForm> basis_Hrl(int r, int l, int k, int n);

/// Basis of the sum over l >= 1 of kappa H_{r+l-1,l} Lambda^{k+1}.
std::vector<PolyForm> basis_J(int r, int k, int n);

SpaceBasis basis_P(int r, int k, int n);
SpaceBasis basis_Pminus(int r, int k, int n);
SpaceBasis basis_Qminus(int r, int k, int n);
SpaceBasis basis_S(int r, int k, int n);

/// Spanning sets straight from the defining formulas, before rank reduction.
/// serendipity_generators also accepts r = 0 (where J_0 vanishes), which is
/// used as the target level of d on S_1.
std::vector<PolyForm> pminus_generators(int r, int k, int n);
std::vector<PolyForm> serendipity_generators(int r, int k, int n);

/// Dispatches on spec.family. Results are cached process-wide.
const SpaceBasis& basis(const SpaceSpec& spec);

enum class DimensionMethod
{
  formula,
  rank
};

/// Closed-form dimension where one exists (P, Pminus, Qminus).
std::optional<std::int64_t> dimension_formula(const SpaceSpec& spec);

/// Throws std::invalid_argument when method == formula and the family has no
/// closed form.
std::int64_t dimension(const SpaceSpec& spec, DimensionMethod method);

/// u in span(basis(spec)). Throws std::invalid_argument on a shape mismatch.
bool membership(const PolyForm& u, const SpaceSpec& spec);

/// Pulls every form back along the translation x -> x - shift, i.e. the same
/// construction carried out on the element translated by `shift`.
std::vector<PolyForm> translate(const std::vector<PolyForm>& forms,
                                std::span<const Rational> shift);

} // namespace feec
