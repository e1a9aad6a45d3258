#pragma once

#include "feec/dofs.hpp"
#include "feec/spaces.hpp"

#include "json.hpp"

#include <array>
#include <string>
#include <vector>

namespace feec
{

/// Machine-readable outcome of one verification.
struct Certificate
{
  std::string claim;
  nlohmann::json parameters;
  bool pass = false;
  nlohmann::json witness;

  nlohmann::json to_json() const;
  /// "claim<TAB>params<TAB>pass|fail"
  std::string tsv_line() const;
};

enum class ComplexKind
{
  de_rham,
  koszul
};

/// A family's chain of spaces k = 0..n. The polynomial degree is held at r
/// for Pminus and Qminus and drops by one per level for P and S. The Koszul
/// variant runs P_{r-k} Lambda^k backwards with kappa.
struct ComplexSpec
{
  Family family;
  int n;
  int r;
  ComplexKind kind = ComplexKind::de_rham;

  int level_degree(int k) const;
  nlohmann::json to_json() const;
};

/// Spanning basis of level k; empty when that level is the zero space.
std::vector<PolyForm> level_basis(const ComplexSpec& spec, int k);

Certificate check_complex(const ComplexSpec& spec);
Certificate check_exactness(const ComplexSpec& spec);
/// (kappa d + d kappa) w = (k + r) w on every monomial w of H_r Lambda^k.
Certificate check_homotopy(int n, int r, int k);
/// H_r Lambda^k = kappa H_{r-1} Lambda^{k+1} (+) d H_{r+1} Lambda^{k-1}.
Certificate check_direct_sum(int n, int r, int k);
/// Degree, inclusion, trace and subcomplex properties of S_r for every k.
Certificate check_S_properties(int n, int r);
/// S_r Lambda^0 equals the span of monomials with sdeg <= r.
Certificate check_S0_sdeg(int n, int r);
/// S_r Lambda^n equals P_r Lambda^n.
Certificate check_S_top(int n, int r);
/// n = 3 vector-proxy descriptions of S_r Lambda^1 and S_r Lambda^2.
Certificate check_S_vector_proxy(int r);
/// Rank of the constructed basis against the closed-form dimension, and
/// dim Pminus = r/(r+k) dim P.
Certificate check_dimension(const SpaceSpec& spec);
Certificate check_unisolvence(const SpaceSpec& spec);
/// Sum over faces of the Pminus per-face counts equals dim P_r^- Lambda^k.
Certificate check_count_identity(int n, int r, int k);
/// Vanishing lemma on the reference n-simplex, as a nullspace computation.
Certificate check_vanishing_lemma(int n, int r, int k);
/// tr_f V(T) is contained in V(f) for every face of dimension >= k.
Certificate check_trace_compatibility(const SpaceSpec& spec);
/// span(F^* basis) == span(basis) for the given affine map of Q^n.
Certificate check_affine_invariance(const SpaceSpec& spec,
                                    const AffineMap& map,
                                    const std::string& label);

/// Dimension table for Qminus (index 0) and S (index 1):
/// [family][n-1][k][r-1] for n = 1..4, r = 1..6.
using Table1 = std::array<std::array<std::array<std::array<int, 6>, 5>, 4>, 2>;
const Table1& table1_expected();
/// Recomputes every entry by rank and compares with table1_expected().
Certificate check_table1(int max_n = 4, int max_r = 6);

} // namespace feec
