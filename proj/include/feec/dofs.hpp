#pragma once

#include "feec/spaces.hpp"

#include "json.hpp"

#include <vector>

namespace feec
{

/// A d-dimensional face of an element together with its parametrization by
/// the reference d-simplex (simplicial faces) or the unit d-box (box faces).
struct FaceRef
{
  ElementKind kind;
  int dim;
  int index;
  /// Element vertex numbers spanning the face, in parametrization order.
  std::vector<int> vertices;
  AffineEmbedding embedding;
};

/// u -> integral over the face of tr_f(u) ^ weight.
struct DofFunctional
{
  FaceRef face;
  PolyForm weight;
};

struct FaceCount
{
  int dim;
  int faces;
  int count_per_face;
};

struct DofSet
{
  SpaceSpec spec;
  std::vector<DofFunctional> functionals;
  std::vector<FaceCount> per_face;

  std::size_t size() const { return functionals.size(); }
};

/// Vertices of the reference element: conv{0, e_1, ..., e_n} or [0,1]^n.
/// Box vertex i has x^j = bit j-1 of i.
std::vector<std::vector<Rational>> reference_vertices(ElementKind kind, int n);

/// Faces of the reference element of dimension d in canonical order.
/// Simplex faces: (d+1)-subsets of the vertices in lexicographic order, the
/// parametrization t -> v_0 + sum t_j (v_j - v_0) over the sorted subset.
/// Box faces: free axes in lexicographic order, then the fixed coordinates
/// counted in binary; free axis j maps to t_j.
std::vector<FaceRef> reference_faces(ElementKind kind, int n, int d);

/// Weight forms q on a d-dimensional face for the given element space.
/// Empty when the face carries no degrees of freedom.
std::vector<PolyForm> dof_weights(const SpaceSpec& spec, int d);

/// True when the space carries a unisolvent set of degrees of freedom. This
/// excludes P_0 Lambda^k for k < n, which is a valid space but not an element.
bool has_element(const SpaceSpec& spec);

DofSet dofs_lagrange(int r, int n);
DofSet dofs_Pminus(int r, int k, int n);
DofSet dofs_P(int r, int k, int n);
DofSet dofs_S(int r, int k, int n);
DofSet dofs_Qminus(int r, int k, int n);
DofSet dofs(const SpaceSpec& spec);

/// Builds the functionals on the given faces in order, using dof_weights.
DofSet make_dofs(const SpaceSpec& spec, const std::vector<FaceRef>& faces);

/// Exact value of the functional on u. Throws std::invalid_argument when the
/// degrees do not combine to a top form on the face.
Rational apply(const DofFunctional& phi, const PolyForm& u);

/// M(i, j) = apply(dofs[i], forms[j]).
RationalMatrix dof_matrix(const std::vector<DofFunctional>& dofs,
                          const std::vector<PolyForm>& forms);
/// Throws std::invalid_argument if the specs differ.
RationalMatrix dof_matrix(const SpaceBasis& basis, const DofSet& dofs);

struct UnisolvenceReport
{
  SpaceSpec spec;
  std::int64_t dim;
  std::int64_t dof_count;
  std::vector<FaceCount> per_face;
  bool count_ok;
  bool determinant_nonzero;

  bool pass() const { return count_ok and determinant_nonzero; }
};

UnisolvenceReport unisolvence_check(const SpaceSpec& spec);

nlohmann::json to_json(const SpaceSpec& spec);
nlohmann::json to_json(const UnisolvenceReport& report);

} // namespace feec
