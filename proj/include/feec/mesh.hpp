#pragma once

#include "feec/complexes.hpp"
#include "feec/dofs.hpp"
#include "feec/spaces.hpp"

#include "json.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace feec
{

enum class MeshKind
{
  simplicial,
  cubical
};

std::string to_string(MeshKind kind);
ElementKind element_of(MeshKind kind);

/// Conforming mesh of simplices or axis-aligned boxes in Q^n.
///
/// Simplicial elements list n+1 vertex ids. Cubical elements list 2^n vertex
/// ids in reference order: element vertex i sits at lo + bits(i) * (hi - lo)
/// with bit j-1 of i selecting axis j.
///
/// Faces of each dimension are identified by their sorted global vertex ids
/// and enumerated in lexicographic order of those ids. The global
/// parametrization of a face starts at its lowest vertex: for simplices
/// t -> x(w_0) + sum_j t_j (x(w_j) - x(w_0)) over the sorted ids w, for
/// boxes the lower corner plus the free axes in increasing order.
class Mesh
{
public:
  /// Validates the element shapes and conformity. Throws
  /// std::invalid_argument.
  Mesh(MeshKind kind, int n, std::vector<std::vector<Rational>> vertices,
       std::vector<std::vector<int>> elements);

  MeshKind kind() const { return kind_; }
  ElementKind element_kind() const { return element_of(kind_); }
  int n() const { return n_; }
  const std::vector<std::vector<Rational>>& vertices() const
  {
    return vertices_;
  }
  const std::vector<std::vector<int>>& elements() const { return elements_; }
  std::size_t num_elements() const { return elements_.size(); }

  /// Sorted vertex ids of every face of dimension d.
  const std::vector<std::vector<int>>& faces(int d) const;
  std::size_t num_faces(int d) const { return faces(d).size(); }

  /// Global face ids of element e's d-faces in reference face order.
  const std::vector<int>& element_faces(int e, int d) const;

  /// +1 if the element's local parametrization of its i-th d-face induces
  /// the same orientation as the global one, -1 otherwise.
  int face_orientation(int e, int d, int i) const;

  /// Elements containing face f of dimension d, in increasing order.
  const std::vector<int>& face_elements(int d, int f) const;

  /// Reference element -> element e.
  AffineMap chart(int e) const;
  /// Reference d-simplex or unit d-box -> face f in Q^n.
  AffineMap face_parametrization(int d, int f) const;

  nlohmann::json to_json() const;

private:
  MeshKind kind_;
  int n_;
  std::vector<std::vector<Rational>> vertices_;
  std::vector<std::vector<int>> elements_;
  // [d][f]
  std::vector<std::vector<std::vector<int>>> faces_;
  std::vector<std::vector<std::vector<int>>> face_elements_;
  // [e][d][i]
  std::vector<std::vector<std::vector<int>>> element_faces_;
  std::vector<std::vector<std::vector<int>>> orientation_;

  void validate_elements() const;
  void validate_conformity() const;
  void build_faces();
};

/// {"kind": "simplicial"|"cubical", "n": int, "vertices": [[rational]],
///  "elements": [[int]]}. Coordinates may be "p/q" strings or integers.
Mesh read_mesh(const nlohmann::json& doc);
Mesh read_mesh_file(const std::filesystem::path& path);

/// Small meshes shipped with the library.
std::vector<std::string> builtin_mesh_names();
/// Throws std::invalid_argument for an unknown name.
Mesh builtin_mesh(const std::string& name);

/// One polynomial form per element, written in the ambient coordinates.
struct PiecewiseForm
{
  int n = 0;
  int k = 0;
  std::vector<PolyForm> pieces;

  nlohmann::json to_json() const;
};

/// The same form on every element.
PiecewiseForm restrict_to_elements(const PolyForm& u, std::size_t elements);
PiecewiseForm parse_piecewise(const nlohmann::json& doc, int n, int k);
/// Elementwise exterior derivative.
PiecewiseForm exterior_derivative(const PiecewiseForm& u);

struct ElementSpace
{
  AffineMap chart;
  /// Reference basis pushed forward through the chart.
  std::vector<PolyForm> shapes;
  /// Functionals on the element's faces, in global face parametrizations.
  std::vector<DofFunctional> dofs;
  std::vector<std::size_t> global_ids;
  /// Local-to-global signs. The functionals above already use the global
  /// parametrization, so these are +1.
  std::vector<int> signs;
  /// Orientation of the local face parametrization relative to the global
  /// one, per functional.
  std::vector<int> face_orientation;
  /// Inverse of [dofs[i](shapes[j])].
  RationalMatrix inverse_dof_matrix;
};

/// Finite element space assembled from one element family on a mesh.
struct GlobalSpace
{
  std::shared_ptr<const Mesh> mesh;
  SpaceSpec spec;
  /// [d][f] -> global ids of the functionals on face f.
  std::vector<std::vector<std::vector<std::size_t>>> face_dofs;
  std::vector<ElementSpace> elements;
  std::size_t dimension = 0;
};

/// spec.n must equal mesh.n() and spec.family must live on the mesh's
/// element kind. Throws std::invalid_argument otherwise.
GlobalSpace assemble(const Mesh& mesh, const SpaceSpec& spec);

/// Sum over the mesh faces of the per-face functional counts.
std::size_t face_sum_dimension(const Mesh& mesh, const SpaceSpec& spec);

/// Dimension of {u piecewise in V(T) : traces agree on shared faces},
/// computed from the trace-jump constraints alone.
std::size_t conforming_dimension(const Mesh& mesh, const SpaceSpec& spec);

/// The member of the space with the given global functional values.
PiecewiseForm from_global_coefficients(const GlobalSpace& space,
                                       const std::vector<Rational>& values);

/// Global functional values of u. Throws std::invalid_argument if u is
/// piecewise and two elements disagree on a shared functional.
std::vector<Rational> global_dof_values(const GlobalSpace& space,
                                        const PiecewiseForm& u);

PiecewiseForm project(const GlobalSpace& space, const PiecewiseForm& u);
PiecewiseForm project(const GlobalSpace& space, const PolyForm& u);

/// Traces of u agree on every shared face of dimension >= u.k.
bool continuity_check(const Mesh& mesh, const PiecewiseForm& u);
bool continuity_check(const GlobalSpace& space, const PiecewiseForm& u);

/// Degree of the (k+1)-level space in the family's complex.
int next_level_degree(Family family, int r);

/// d(Pi^k u) == Pi^{k+1}(du) elementwise, with the k-level space
/// {family, r, k} and the next level from next_level_degree. Throws
/// std::invalid_argument when the next level does not exist.
Certificate check_commuting(const Mesh& mesh, Family family, int r,
                            const PiecewiseForm& u);

/// Face-sum identity, conforming dimension oracle and continuity of the
/// assembled basis.
Certificate check_assembly(const Mesh& mesh, const SpaceSpec& spec);

/// check_commuting over every monomial k-form of degree <= r+1 and every k
/// whose next level exists.
Certificate check_commuting_monomials(const Mesh& mesh, Family family, int r);

} // namespace feec
