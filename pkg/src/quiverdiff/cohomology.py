"""Relation matrices, rank theorems, and the structure of HH1.

The edge derivations D_{p,p} (one per arrow) are linearly independent,
so the span of the vertex derivations and the span of the face
derivations both live inside k^E and all rank statements reduce to
integer matrices: C_va expresses each vertex derivation over the edge
basis, C_ca each face derivation, and B_gamma records how faces share
arrows.  On top of those, this module assembles the quotient HH1 =
derivations modulo inner derivations: its dimension (counted three
independent ways), a labeled basis of coset representatives, and the
bracket structure constants with the face eigenvalues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .derivations import (
    DerivationBasis,
    LinearOperator,
    canonical_basis,
    d_rs,
    inner_subspace,
)
from .embedding import FaceCycle, RotationSystem, face_derivation, genus, trace_faces
from .errors import (
    CyclicQuiverError,
    DisconnectedError,
    InternalCheckError,
    NotAlmostCycleError,
)
from .linalg import (
    EchelonBasis,
    LinearSolver,
    RationalMatrix,
    intersect_row_spaces,
    quotient_complement,
)
from .quiver import Path, Quiver

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _require_connected_acyclic(q: Quiver) -> None:
    if not q.is_acyclic():
        raise CyclicQuiverError("the quiver contains a directed cycle")
    if not q.is_connected():
        raise DisconnectedError("the quiver is not connected")


# ----------------------------------------------------------------------
# relation matrices


def vertex_arrow_matrix(q: Quiver) -> RationalMatrix:
    """|V| x |E| matrix of the vertex derivations over the edge basis.

    D_v rescales each arrow by +1 when it leaves v and -1 when it
    enters v, so row v is the signed incidence vector of v.
    """
    _require_connected_acyclic(q)
    rows = []
    for v in range(q.num_vertices):
        row = [_ZERO] * q.num_arrows
        for k, a in enumerate(q.arrows):
            if a.tail == v:
                row[k] += _ONE
            if a.head == v:
                row[k] -= _ONE
        rows.append(row)
    return RationalMatrix(rows, q.num_arrows)


def cycle_arrow_matrix(q: Quiver, faces) -> RationalMatrix:
    """|F| x |E| matrix whose row j is the net sign vector of face j."""
    return RationalMatrix(
        [[Fraction(x) for x in f.net] for f in faces], q.num_arrows
    )


def connection_matrix(q: Quiver, faces) -> RationalMatrix:
    """Vertex rows stacked over face rows."""
    return RationalMatrix.stack(vertex_arrow_matrix(q), cycle_arrow_matrix(q, faces))


def boundary_matrix(faces) -> RationalMatrix:
    """Face-by-face arrow sharing counts.

    Every arrow has one dart in exactly two face walks (possibly the
    same walk twice); an arrow on two distinct faces adds 1 to both
    diagonal entries and -1 to both cross entries, so the matrix is
    symmetric with zero row sums.
    """
    faces = tuple(faces)
    num_arrows = len(faces[0].net) if faces else 0
    owner: dict[int, int] = {}
    for j, f in enumerate(faces):
        for d in f.darts:
            owner[d] = j
    rows = [[_ZERO] * len(faces) for _ in faces]
    for k in range(num_arrows):
        j1, j2 = owner[2 * k], owner[2 * k + 1]
        if j1 != j2:
            rows[j1][j1] += _ONE
            rows[j2][j2] += _ONE
            rows[j1][j2] -= _ONE
            rows[j2][j1] -= _ONE
    return RationalMatrix(rows, len(faces))


# ----------------------------------------------------------------------
# the combinatorial report


@dataclass(frozen=True)
class CombinatorialReport:
    """Dimensions, matrices, ranks, and theorem verdicts in one place.

    Every verdict is recomputable from the stored matrices; none of
    them is assumed in the computation of the others.
    """

    num_vertices: int
    num_arrows: int
    num_faces: int
    genus: int
    dim_dv: int
    dim_de: int
    dim_df: int
    dim_sum: int
    c_va: RationalMatrix
    c_ca: RationalMatrix
    c_gamma: RationalMatrix
    b_gamma: RationalMatrix
    rank_c_va: int
    rank_c_ca: int
    rank_c_gamma: int
    rank_b_gamma: int
    rank_theorems_hold: bool
    spaces_disjoint: bool
    euler_holds: bool
    faces_sum_to_zero: bool
    faces: tuple[FaceCycle, ...]


def combinatorial_report(q: Quiver, rot: RotationSystem) -> CombinatorialReport:
    """Compute all relation matrices and check the rank and Euler laws.

    Verdicts are reported, not raised: a false verdict on valid input
    would falsify a theorem, and the caller decides how loudly to fail.
    """
    _require_connected_acyclic(q)
    faces = trace_faces(rot)
    g = genus(rot)
    c_va = vertex_arrow_matrix(q)
    c_ca = cycle_arrow_matrix(q, faces)
    c_gamma = RationalMatrix.stack(c_va, c_ca)
    b_gamma = boundary_matrix(faces)
    rank_va = c_va.rank()
    rank_ca = c_ca.rank()
    rank_stack = c_gamma.rank()
    rank_b = b_gamma.rank()

    meet = intersect_row_spaces(c_va, c_ca)
    disjoint = meet.num_rows == 0
    if disjoint != (rank_stack == rank_va + rank_ca):
        raise InternalCheckError("subspace intersection disagrees with rank count")

    zero_sum = all(
        sum(c_ca.entry(j, k) for j in range(c_ca.num_rows)) == 0
        for k in range(q.num_arrows)
    )
    return CombinatorialReport(
        num_vertices=q.num_vertices,
        num_arrows=q.num_arrows,
        num_faces=len(faces),
        genus=g,
        dim_dv=rank_va,
        dim_de=q.num_arrows,
        dim_df=rank_ca,
        dim_sum=rank_stack,
        c_va=c_va,
        c_ca=c_ca,
        c_gamma=c_gamma,
        b_gamma=b_gamma,
        rank_c_va=rank_va,
        rank_c_ca=rank_ca,
        rank_c_gamma=rank_stack,
        rank_b_gamma=rank_b,
        rank_theorems_hold=(
            rank_va == q.num_vertices - 1
            and rank_ca == len(faces) - 1
            and rank_b == len(faces) - 1
        ),
        spaces_disjoint=disjoint,
        euler_holds=(q.num_arrows - rank_stack == 2 * g),
        faces_sum_to_zero=zero_sum,
        faces=faces,
    )


# ----------------------------------------------------------------------
# HH1 dimension, three ways


def happel_dimension(q: Quiver) -> int:
    """1 - |V| + sum over arrows a of #paths parallel to a."""
    total = 1 - q.num_vertices
    for k in range(q.num_arrows):
        total += len(q.parallel_paths(q.arrow_path(k)))
    return total


def hh1_dimension(q: Quiver, rot: RotationSystem) -> int:
    """|F| + |almost oriented cycles| - 1 + 2g, cross-checked against
    the path-counting formula."""
    _require_connected_acyclic(q)
    faces = trace_faces(rot)
    g = genus(rot)
    dim = len(faces) + len(q.almost_oriented_cycles()) - 1 + 2 * g
    happel = happel_dimension(q)
    if dim != happel:
        raise InternalCheckError(
            f"face-count dimension {dim} disagrees with path-count dimension {happel}"
        )
    return dim


# ----------------------------------------------------------------------
# the HH1 basis


@dataclass(frozen=True)
class HH1Label:
    """Tag for a coset representative: AL(r, s), Face(f), or Extra(r)."""

    kind: str  # "al" | "face" | "extra"
    arrow: int | None = None
    path: Path | None = None
    face: int | None = None

    def display(self, q: Quiver) -> str:
        if self.kind == "al":
            return f"AL({q.arrows[self.arrow].name},{q.path_display(self.path)})"
        if self.kind == "face":
            return f"Face({self.face})"
        return f"Extra({q.arrows[self.arrow].name})"


class HH1Basis:
    """Labeled coset representatives spanning HH1 = Der / Inn."""

    def __init__(
        self,
        quiver: Quiver,
        rotation: RotationSystem,
        labels,
        operators,
        faces,
        dropped_face: int,
        genus_: int,
        derivation_basis: DerivationBasis,
        inner_matrix: RationalMatrix,
        rep_rows: RationalMatrix,
    ):
        self.quiver = quiver
        self.rotation = rotation
        self.labels: tuple[HH1Label, ...] = tuple(labels)
        self.operators: tuple[LinearOperator, ...] = tuple(operators)
        self.faces: tuple[FaceCycle, ...] = tuple(faces)
        self.dropped_face = dropped_face
        self.genus = genus_
        self.derivation_basis = derivation_basis
        self.inner_matrix = inner_matrix
        self.rep_rows = rep_rows
        self._solver: LinearSolver | None = None

    @property
    def dimension(self) -> int:
        return len(self.operators)

    def __len__(self) -> int:
        return len(self.operators)

    def display_labels(self) -> tuple[str, ...]:
        return tuple(label.display(self.quiver) for label in self.labels)

    def coset_coordinates(self, op: LinearOperator) -> tuple[Fraction, ...] | None:
        """Coordinates of the class of ``op`` in this basis.

        None when op is not a derivation-span member at all; otherwise
        the unique coefficients modulo the inner subspace.
        """
        coords = self.derivation_basis.coordinates_of(op)
        if coords is None:
            return None
        if self._solver is None:
            self._solver = LinearSolver(
                RationalMatrix.stack(self.rep_rows, self.inner_matrix)
            )
        x = self._solver.solve(coords)
        if x is None:
            return None
        return x[: len(self.operators)]


def hh1_basis(q: Quiver, rot: RotationSystem, outer: int | None = None) -> HH1Basis:
    """Coset representatives: one operator per almost oriented cycle,
    one face derivation per face except the dropped one, and 2g edge
    derivations completing the quotient.

    ``outer`` picks the dropped face (default: the first traced face).
    Independence modulo the inner subspace is verified by exact rank,
    and the count is cross-checked against both dimension formulas.
    """
    _require_connected_acyclic(q)
    faces = trace_faces(rot)
    g = genus(rot)
    dropped = 0 if outer is None else outer
    if not 0 <= dropped < len(faces):
        raise ValueError(f"outer face {dropped} out of range ({len(faces)} faces)")

    basis = canonical_basis(q)
    inner = inner_subspace(q, basis)

    labels: list[HH1Label] = []
    operators: list[LinearOperator] = []
    for r, s in q.almost_oriented_cycles():
        labels.append(HH1Label("al", arrow=r, path=s))
        operators.append(d_rs(q, r, s))
    for f, face in enumerate(faces):
        if f != dropped:
            labels.append(HH1Label("face", face=f))
            operators.append(face_derivation(q, face))
    if g:
        for vec in quotient_complement(connection_matrix(q, faces)):
            k = next(i for i, x in enumerate(vec) if x)
            labels.append(HH1Label("extra", arrow=k))
            operators.append(d_rs(q, k, q.arrow_path(k)))

    rep_rows = []
    for label, op in zip(labels, operators):
        coords = basis.coordinates_of(op)
        if coords is None:
            raise InternalCheckError(
                f"representative {label.display(q)} falls outside the derivation span"
            )
        rep_rows.append(coords)
    rep_matrix = RationalMatrix(rep_rows, num_cols=len(basis))

    ech = EchelonBasis(len(basis))
    for row in inner.rows:
        ech.insert(row)
    inner_rank = ech.rank
    for label, row in zip(labels, rep_rows):
        if not ech.insert(row):
            raise InternalCheckError(
                f"representative {label.display(q)} is dependent modulo the inner subspace"
            )
    if ech.rank != inner_rank + len(operators):
        raise InternalCheckError("rank bookkeeping failed in the HH1 basis")
    if len(operators) != hh1_dimension(q, rot):
        raise InternalCheckError(
            f"{len(operators)} representatives for HH1 of dimension {hh1_dimension(q, rot)}"
        )
    return HH1Basis(
        q, rot, labels, operators, faces, dropped, g, basis, inner, rep_matrix
    )


# ----------------------------------------------------------------------
# adjoint action and structure constants


def adjoint_eigenvalue(q: Quiver, face, r: int | str, s: Path) -> Fraction:
    """Eigenvalue of the face's adjoint action on the operator of (r, s).

    With a the face's net coefficients, bracketing the face derivation
    against D_{r,s} rescales it by -a_r + sum of a_x over the arrows x
    of s (with multiplicity).  The identity is verified exactly on
    matrices before the value is returned.
    """
    if isinstance(r, str):
        r = q.arrow_index(r)
    arrow = q.arrows[r]
    if (
        s == q.arrow_path(r)
        or q.path_tail(s) != arrow.tail
        or q.path_head(s) != arrow.head
    ):
        raise NotAlmostCycleError(
            f"({arrow.name}, {q.path_display(s)}) is not an almost oriented cycle"
        )
    coeffs = face.net if isinstance(face, FaceCycle) else tuple(face)
    lam = -Fraction(coeffs[r]) + sum(
        (Fraction(coeffs[x]) for x in s.arrows), _ZERO
    )
    op = d_rs(q, r, s)
    if face_derivation(q, coeffs).bracket(op) != lam * op:
        raise InternalCheckError("adjoint eigenvalue identity failed on matrices")
    return lam


@dataclass(frozen=True)
class StructureTable:
    """Bracket table of the HH1 basis, reduced modulo inner derivations.

    brackets holds (i, j, coordinates of [b_i, b_j]) for i < j; the
    eigenvalues entries (i, j, lam) record the adjoint action of face
    b_j on AL member b_i, i.e. [b_j, b_i] = lam * b_i mod Inn.  When
    ``enforced`` is true (planar embedding) the face-commutation and
    diagonal-action verdicts are guaranteed; the AL-span verdict is
    always informational.
    """

    basis: HH1Basis
    brackets: tuple[tuple[int, int, tuple[Fraction, ...]], ...]
    eigenvalues: tuple[tuple[int, int, Fraction], ...]
    enforced: bool
    faces_commute: bool
    face_acts_diagonally: bool
    al_brackets_in_al_span: bool


def hh1_structure(
    q: Quiver, rot: RotationSystem, outer: int | None = None
) -> StructureTable:
    """Full bracket table of the HH1 basis with face eigenvalues.

    On a planar embedding the face representatives commute with each
    other and act diagonally on the AL representatives; those two facts
    are asserted.  Whether AL brackets stay inside the AL span is only
    reported (it can genuinely fail, e.g. for the double arrow, where
    an AL bracket lands on a face class).
    """
    hb = hh1_basis(q, rot, outer)
    enforced = hb.genus == 0
    n = len(hb)
    brackets = []
    table: dict[tuple[int, int], tuple[Fraction, ...]] = {}
    for i in range(n):
        for j in range(i + 1, n):
            coords = hb.coset_coordinates(hb.operators[i].bracket(hb.operators[j]))
            if coords is None:
                raise InternalCheckError("bracket of representatives left the span")
            brackets.append((i, j, coords))
            table[i, j] = coords

    al = [i for i, lab in enumerate(hb.labels) if lab.kind == "al"]
    face = [i for i, lab in enumerate(hb.labels) if lab.kind == "face"]

    faces_commute = all(
        all(x == 0 for x in table[i, j]) for i in face for j in face if i < j
    )
    eigenvalues = []
    diagonal = True
    for i in al:
        lab = hb.labels[i]
        for j in face:
            lam = adjoint_eigenvalue(
                q, hb.faces[hb.labels[j].face], lab.arrow, lab.path
            )
            eigenvalues.append((i, j, lam))
            coords = table[i, j] if i < j else tuple(-x for x in table[j, i])
            expected = tuple(
                -lam if k == i else _ZERO for k in range(n)
            )
            if coords != expected:
                diagonal = False
    al_closed = all(
        all(x == 0 for k, x in enumerate(table[i, j]) if k not in al)
        for i in al
        for j in al
        if i < j
    )
    if enforced and not faces_commute:
        raise InternalCheckError("face representatives do not commute on a planar embedding")
    if enforced and not diagonal:
        raise InternalCheckError("face action is not diagonal on a planar embedding")
    return StructureTable(
        basis=hb,
        brackets=tuple(brackets),
        eigenvalues=tuple(eigenvalues),
        enforced=enforced,
        faces_commute=faces_commute,
        face_acts_diagonally=diagonal,
        al_brackets_in_al_span=al_closed,
    )
