"""Exact finite element spaces of differential forms.

Forms are passed as canonical strings, e.g. ``"1/2 x^[1,0] dx[2]"`` for a
1-form in two variables, with ``n`` and ``k`` given alongside.
"""

from ._core import (
    FAMILIES,
    assemble_dimension,
    basis,
    builtin_meshes,
    check_commuting,
    check_direct_sum,
    check_exactness,
    check_homotopy,
    check_S_properties,
    check_table1,
    d,
    dimension,
    dof_counts,
    integrate_simplex,
    koszul,
    member,
    mesh_face_counts,
    project,
    run_cli,
    unisolvence,
    wedge,
)

__all__ = [
    "FAMILIES",
    "assemble_dimension",
    "basis",
    "builtin_meshes",
    "check_commuting",
    "check_direct_sum",
    "check_exactness",
    "check_homotopy",
    "check_S_properties",
    "check_table1",
    "d",
    "dimension",
    "dof_counts",
    "integrate_simplex",
    "koszul",
    "member",
    "mesh_face_counts",
    "project",
    "run_cli",
    "unisolvence",
    "wedge",
]
