"""Combinatorial subspaces, the Euler quotient, and the HH1 basis.

Core claims:
    - the relation matrices C_va, C_ca, C_gamma, B_gamma match the
      hand-computed fixtures and satisfy rank(C_va) = |V|-1,
      rank(C_ca) = rank(B_gamma) = |F|-1
    - |E| - rank(C_gamma) = 2g on every embedded fixture, torus included
    - the vertex and face subspaces are linearly disjoint
    - dim HH1 agrees between the face-count formula and path counting,
      and equals (derivation dimension - inner rank)
    - the HH1 basis carries the expected labels, its face representative
      on the double arrow is D_{p1,p1} - D_{p2,p2} up to sign mod inner,
      and the span does not depend on the dropped face
    - face representatives act on almost-oriented-cycle representatives
      with the pinned integer eigenvalues; on the torus fixture one of
      those eigenvalues is 0
    - the structure table verdicts: faces commute, faces act diagonally,
      and on the double arrow the AL span is genuinely not closed
"""

from fractions import Fraction

import pytest

from quiverdiff.cohomology import (
    adjoint_eigenvalue,
    boundary_matrix,
    combinatorial_report,
    connection_matrix,
    cycle_arrow_matrix,
    happel_dimension,
    hh1_basis,
    hh1_dimension,
    hh1_structure,
    vertex_arrow_matrix,
)
from quiverdiff.derivations import (
    LinearOperator,
    canonical_basis,
    d_rs,
    inner_derivation,
    inner_subspace,
)
from quiverdiff.embedding import RotationSystem, trace_faces
from quiverdiff.errors import (
    CyclicQuiverError,
    DisconnectedError,
    NotAlmostCycleError,
)
from quiverdiff.linalg import RationalMatrix
from quiverdiff.quiver import Quiver

from helpers import (
    EMBEDDED_FIXTURES,
    fixture_embedded,
    fixture_quiver,
    load_fixture,
)

HAPPEL_TABLE = {
    "a2": 0, "a3": 0, "a4": 0, "a5": 0,
    "k2": 3, "k3": 8, "triangle_tails": 2, "grid2x2": 1, "torus_k4": 8,
}


# -- Helpers -----------------------------------------------------------------

def _ints(matrix):
    return [[int(x) for x in row] for row in matrix.rows]


# -- Relation matrices -------------------------------------------------------

def test_vertex_arrow_matrix_pinned():
    assert _ints(vertex_arrow_matrix(fixture_quiver("a2"))) == [[1], [-1]]
    assert _ints(vertex_arrow_matrix(fixture_quiver("a3"))) == [
        [1, 0], [-1, 1], [0, -1],
    ]
    assert _ints(vertex_arrow_matrix(fixture_quiver("k2"))) == [[1, 1], [-1, -1]]


def test_vertex_arrow_matrix_columns_sum_to_zero():
    for name in EMBEDDED_FIXTURES:
        m = vertex_arrow_matrix(fixture_quiver(name))
        for k in range(m.num_cols):
            assert sum(m.entry(i, k) for i in range(m.num_rows)) == 0, name


def test_cycle_arrow_matrix_pinned():
    q, rot = fixture_embedded("k2")
    m = cycle_arrow_matrix(q, trace_faces(rot))
    assert _ints(m) in ([[1, -1], [-1, 1]], [[-1, 1], [1, -1]])

    q3, rot3 = fixture_embedded("a3")
    assert _ints(cycle_arrow_matrix(q3, trace_faces(rot3))) == [[0, 0]]

    qf, rotf = fixture_embedded("triangle_tails")
    rows = _ints(cycle_arrow_matrix(qf, trace_faces(rotf)))
    assert rows[0] == [-x for x in rows[1]]
    assert rows[1] in ([-1, 1, -1, 0, 0], [1, -1, 1, 0, 0])


def test_boundary_matrix_pinned():
    q, rot = fixture_embedded("k2")
    assert _ints(boundary_matrix(trace_faces(rot))) == [[2, -2], [-2, 2]]

    q3, rot3 = fixture_embedded("a3")
    assert _ints(boundary_matrix(trace_faces(rot3))) == [[0]]

    qf, rotf = fixture_embedded("triangle_tails")
    assert _ints(boundary_matrix(trace_faces(rotf))) == [[3, -3], [-3, 3]]


def test_boundary_matrix_is_symmetric_with_zero_row_sums():
    for name in EMBEDDED_FIXTURES:
        _, rot = fixture_embedded(name)
        b = boundary_matrix(trace_faces(rot))
        assert b == b.transpose(), name
        for i in range(b.num_rows):
            assert sum(b.row(i)) == 0, name


def test_connection_matrix_shape():
    q, rot = fixture_embedded("triangle_tails")
    faces = trace_faces(rot)
    c = connection_matrix(q, faces)
    assert c.num_rows == q.num_vertices + len(faces)
    assert c.num_cols == q.num_arrows


def test_rank_theorems_on_all_fixtures():
    for name in EMBEDDED_FIXTURES:
        q, rot = fixture_embedded(name)
        faces = trace_faces(rot)
        assert vertex_arrow_matrix(q).rank() == q.num_vertices - 1, name
        assert cycle_arrow_matrix(q, faces).rank() == len(faces) - 1, name
        assert boundary_matrix(faces).rank() == len(faces) - 1, name


def test_euler_quotient_on_all_fixtures():
    from quiverdiff.embedding import genus

    for name in EMBEDDED_FIXTURES:
        q, rot = fixture_embedded(name)
        c = connection_matrix(q, trace_faces(rot))
        assert q.num_arrows - c.rank() == 2 * genus(rot), name


# -- Report ------------------------------------------------------------------

def test_report_k2_pinned_values():
    q, rot = fixture_embedded("k2")
    rep = combinatorial_report(q, rot)
    assert (rep.num_vertices, rep.num_arrows, rep.num_faces, rep.genus) == (2, 2, 2, 0)
    assert (rep.dim_dv, rep.dim_de, rep.dim_df, rep.dim_sum) == (1, 2, 1, 2)
    assert _ints(rep.b_gamma) == [[2, -2], [-2, 2]]
    assert (rep.rank_c_va, rep.rank_c_ca, rep.rank_c_gamma, rep.rank_b_gamma) == (1, 1, 2, 1)


def test_report_verdicts_hold_everywhere():
    for name in EMBEDDED_FIXTURES:
        q, rot = fixture_embedded(name)
        rep = combinatorial_report(q, rot)
        assert rep.rank_theorems_hold, name
        assert rep.spaces_disjoint, name
        assert rep.euler_holds, name
        assert rep.faces_sum_to_zero, name


def test_report_torus_dimensions():
    q, rot = fixture_embedded("torus_k4")
    rep = combinatorial_report(q, rot)
    assert rep.genus == 1
    assert rep.num_faces == 2
    assert rep.dim_de - rep.dim_sum == 2


def test_report_rejects_cyclic_and_disconnected():
    loop = load_fixture("loop")
    with pytest.raises(CyclicQuiverError):
        combinatorial_report(loop.quiver, loop.rotation)
    disc = fixture_quiver("disconnected")
    with pytest.raises(DisconnectedError):
        combinatorial_report(disc, RotationSystem.canonical(disc))


# -- Dimension formulas ------------------------------------------------------

def test_happel_dimension_table():
    for name, dim in HAPPEL_TABLE.items():
        assert happel_dimension(fixture_quiver(name)) == dim, name


def test_hh1_dimension_agrees_with_happel():
    for name in EMBEDDED_FIXTURES:
        q, rot = fixture_embedded(name)
        assert hh1_dimension(q, rot) == HAPPEL_TABLE[name], name


def test_hh1_dimension_equals_derivations_modulo_inner():
    for name in EMBEDDED_FIXTURES:
        q, rot = fixture_embedded(name)
        outer_dim = len(canonical_basis(q)) - inner_subspace(q).rank()
        assert hh1_dimension(q, rot) == outer_dim, name


# -- HH1 basis ---------------------------------------------------------------

def test_hh1_basis_labels_pinned():
    q, rot = fixture_embedded("triangle_tails")
    assert hh1_basis(q, rot).display_labels() == ("AL(p2,p1p3)", "Face(1)")

    qk, rotk = fixture_embedded("k2")
    assert hh1_basis(qk, rotk).display_labels() == (
        "AL(p1,p2)", "AL(p2,p1)", "Face(1)",
    )

    qa, rota = fixture_embedded("a3")
    assert hh1_basis(qa, rota).display_labels() == ()


def test_hh1_basis_torus_labels_pinned():
    q, rot = fixture_embedded("torus_k4")
    basis = hh1_basis(q, rot)
    assert basis.display_labels() == (
        "AL(a13,a12a23)",
        "AL(a14,a12a24)",
        "AL(a14,a13a34)",
        "AL(a14,a12a23a34)",
        "AL(a24,a23a34)",
        "Face(1)",
        "Extra(a12)",
        "Extra(a13)",
    )
    assert basis.genus == 1


def test_hh1_members_have_unit_cosets():
    for name in ("k2", "triangle_tails", "torus_k4"):
        q, rot = fixture_embedded(name)
        basis = hh1_basis(q, rot)
        for i, op in enumerate(basis.operators):
            coords = basis.coset_coordinates(op)
            assert coords is not None, name
            assert [int(c) for c in coords] == [
                1 if j == i else 0 for j in range(len(basis))
            ], name


def test_inner_derivations_have_zero_coset():
    q, rot = fixture_embedded("k2")
    basis = hh1_basis(q, rot)
    for p in q.paths():
        coords = basis.coset_coordinates(inner_derivation(q, p))
        assert coords == (0, 0, 0)


def test_non_derivation_has_no_coset():
    q, rot = fixture_embedded("k2")
    basis = hh1_basis(q, rot)
    assert basis.coset_coordinates(LinearOperator.identity(q)) is None


def test_k2_face_class_is_the_rescaling_difference():
    q, rot = fixture_embedded("k2")
    basis = hh1_basis(q, rot)
    diff = d_rs(q, "p1", q.arrow_path("p1")) - d_rs(q, "p2", q.arrow_path("p2"))
    coords = basis.coset_coordinates(diff)
    assert coords in ((0, 0, 1), (0, 0, -1))


def test_outer_face_override_and_range_check():
    q, rot = fixture_embedded("triangle_tails")
    other = hh1_basis(q, rot, outer=1)
    assert other.display_labels() == ("AL(p2,p1p3)", "Face(0)")
    assert other.dropped_face == 1
    with pytest.raises(ValueError):
        hh1_basis(q, rot, outer=2)


def test_span_is_independent_of_dropped_face():
    for name in ("k2", "triangle_tails", "grid2x2"):
        q, rot = fixture_embedded(name)
        base = hh1_basis(q, rot, outer=0)
        other = hh1_basis(q, rot, outer=1)
        coords = [base.coset_coordinates(op) for op in other.operators]
        assert all(c is not None for c in coords), name
        m = RationalMatrix([list(c) for c in coords], len(base))
        assert m.rank() == len(base), name


# -- Adjoint eigenvalues -----------------------------------------------------

def test_triangle_tails_eigenvalue_is_minus_three():
    q, rot = fixture_embedded("triangle_tails")
    faces = trace_faces(rot)
    ((r, s),) = q.almost_oriented_cycles()
    lam_bounded = adjoint_eigenvalue(q, faces[1], r, s)
    lam_outer = adjoint_eigenvalue(q, faces[0], r, s)
    assert lam_bounded == -3
    assert lam_outer == 3


def test_k2_eigenvalues_are_plus_minus_two():
    q, rot = fixture_embedded("k2")
    face = trace_faces(rot)[1]
    p1, p2 = q.arrow_path("p1"), q.arrow_path("p2")
    lams = {adjoint_eigenvalue(q, face, "p1", p2), adjoint_eigenvalue(q, face, "p2", p1)}
    assert lams == {2, -2}


def test_face_disjoint_from_the_pair_gives_zero():
    # chain of two bigons: the far bigon's face avoids p1 and p2 entirely
    q = Quiver(
        ["v1", "v2", "v3", "v4"],
        [("p1", "v1", "v2"), ("p2", "v1", "v2"), ("b", "v2", "v3"),
         ("q1", "v3", "v4"), ("q2", "v3", "v4")],
    )
    rot = RotationSystem.canonical(q)
    faces = trace_faces(rot)
    far = next(f for f in faces if f.net[0] == 0 and f.net[1] == 0 and any(f.net))
    assert adjoint_eigenvalue(q, far, "p1", q.arrow_path("p2")) == 0


def test_adjoint_eigenvalue_rejects_improper_pairs():
    q, rot = fixture_embedded("k2")
    face = trace_faces(rot)[0]
    with pytest.raises(NotAlmostCycleError):
        adjoint_eigenvalue(q, face, "p1", q.arrow_path("p1"))

    qf, rotf = fixture_embedded("triangle_tails")
    facef = trace_faces(rotf)[0]
    with pytest.raises(NotAlmostCycleError):
        adjoint_eigenvalue(qf, facef, "p1", qf.arrow_path("p2"))


# -- Structure table ----------------------------------------------------------

def test_structure_k2():
    q, rot = fixture_embedded("k2")
    st = hh1_structure(q, rot)
    assert st.enforced
    assert st.faces_commute
    assert st.face_acts_diagonally
    assert not st.al_brackets_in_al_span  # the AL bracket lands on the face class
    table = {(i, j): coords for i, j, coords in st.brackets}
    assert table[(0, 1)] == (0, 0, 1)
    assert {(i, j, int(lam)) for i, j, lam in st.eigenvalues} == {
        (0, 2, 2), (1, 2, -2),
    }


def test_structure_triangle_tails():
    q, rot = fixture_embedded("triangle_tails")
    st = hh1_structure(q, rot)
    assert st.enforced
    assert st.eigenvalues == ((0, 1, Fraction(-3)),)
    table = {(i, j): coords for i, j, coords in st.brackets}
    assert table[(0, 1)] == (3, 0)
    assert st.faces_commute and st.face_acts_diagonally and st.al_brackets_in_al_span


def test_structure_empty_for_chains():
    q, rot = fixture_embedded("a3")
    st = hh1_structure(q, rot)
    assert st.brackets == () and st.eigenvalues == ()
    assert st.faces_commute and st.face_acts_diagonally and st.al_brackets_in_al_span


def test_structure_torus_is_reported_not_enforced():
    q, rot = fixture_embedded("torus_k4")
    st = hh1_structure(q, rot)
    assert not st.enforced
    assert len(st.basis) == 8
    for _, _, coords in st.brackets:
        assert coords is not None
    assert isinstance(st.al_brackets_in_al_span, bool)


def test_structure_closed_under_bracket_everywhere():
    for name in EMBEDDED_FIXTURES:
        q, rot = fixture_embedded(name)
        st = hh1_structure(q, rot)
        for _, _, coords in st.brackets:
            assert coords is not None, name


def test_hh1_is_stable_under_arrow_relabeling():
    # declare the double arrow with the opposite arrow order
    q = Quiver(["v1", "v2"], [("p2", "v1", "v2"), ("p1", "v1", "v2")])
    st = hh1_structure(q, RotationSystem.canonical(q))
    assert len(st.basis) == 3
    assert {int(lam) for _, _, lam in st.eigenvalues} == {2, -2}
    assert not st.al_brackets_in_al_span
