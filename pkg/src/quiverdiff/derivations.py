"""The derivation Lie algebra of an acyclic quiver's path algebra.

A linear endomorphism D of kGamma is a derivation when the Leibniz
rule D(xy) = D(x)y + xD(y) holds; on the path basis this is a finite
check.  The derivation Lie algebra has an explicit basis: inner
derivations D_s of the acyclic paths s, together with one operator
D_{r,s} for every arrow r and every path s parallel to r.  D_{r,s}
sends a path to the sum of its copies with one occurrence of r
replaced by s, which is the closed form of the defining recursion and
stays meaningful on cyclic quivers as long as it is applied lazily to
individual paths.

A brute-force oracle is included: it solves the raw Leibniz linear
system in the n^2 matrix entries, knowing nothing about the structure
theory, so its solution space is independent ground truth for the
canonical basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .algebra import AlgebraElement
from .errors import (
    InternalCheckError,
    NotACycleError,
    NotParallelError,
    QuiverMismatchError,
    TooLargeError,
)
from .linalg import RationalMatrix
from .quiver import Path, Quiver

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LinearOperator:
    """A linear self-map of kGamma as a matrix over the path basis.

    Column j holds the image of the j-th canonical basis path.
    """

    __slots__ = ("quiver", "matrix")

    def __init__(self, quiver: Quiver, matrix: RationalMatrix):
        n = len(quiver.paths())
        if matrix.num_rows != n or matrix.num_cols != n:
            raise ValueError(f"operator matrix must be {n}x{n}")
        self.quiver = quiver
        self.matrix = matrix

    @classmethod
    def zero(cls, quiver: Quiver) -> "LinearOperator":
        n = len(quiver.paths())
        return cls(quiver, RationalMatrix.zeros(n, n))

    @classmethod
    def identity(cls, quiver: Quiver) -> "LinearOperator":
        return cls(quiver, RationalMatrix.identity(len(quiver.paths())))

    @classmethod
    def from_images(cls, quiver: Quiver, image) -> "LinearOperator":
        """Build an operator from a function basis path -> AlgebraElement."""
        paths = quiver.paths()
        n = len(paths)
        cols = []
        for p in paths:
            img = image(p)
            col = [_ZERO] * n
            if img is not None:
                for term, coeff in img.items():
                    col[quiver.path_index(term)] = coeff
            cols.append(col)
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        return cls(quiver, RationalMatrix(rows, n))

    def _check(self, other: "LinearOperator") -> None:
        if self.quiver is not other.quiver and self.quiver != other.quiver:
            raise QuiverMismatchError("operators live over different quivers")

    def apply(self, a: AlgebraElement | Path) -> AlgebraElement:
        q = self.quiver
        if isinstance(a, Path):
            a = AlgebraElement.from_path(q, a)
        elif q is not a.quiver and q != a.quiver:
            raise QuiverMismatchError("operator and element live over different quivers")
        paths = q.paths()
        vec = [_ZERO] * len(paths)
        for p, c in a.items():
            vec[q.path_index(p)] = c
        out = self.matrix.mat_vec(vec)
        return AlgebraElement(q, [(paths[i], c) for i, c in enumerate(out) if c])

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        """self after other."""
        self._check(other)
        return LinearOperator(self.quiver, self.matrix * other.matrix)

    def bracket(self, other: "LinearOperator") -> "LinearOperator":
        self._check(other)
        return LinearOperator(
            self.quiver, self.matrix * other.matrix - other.matrix * self.matrix
        )

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        self._check(other)
        return LinearOperator(self.quiver, self.matrix + other.matrix)

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        self._check(other)
        return LinearOperator(self.quiver, self.matrix - other.matrix)

    def __neg__(self) -> "LinearOperator":
        return LinearOperator(self.quiver, -self.matrix)

    def __rmul__(self, scalar) -> "LinearOperator":
        if isinstance(scalar, Rational):
            return LinearOperator(self.quiver, Fraction(scalar) * self.matrix)
        return NotImplemented

    @property
    def is_zero(self) -> bool:
        return self.matrix.is_zero

    def flatten(self) -> tuple[Fraction, ...]:
        return tuple(x for row in self.matrix.rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.quiver == other.quiver and self.matrix == other.matrix

    def __repr__(self):
        return f"LinearOperator({self.matrix.num_rows}x{self.matrix.num_cols})"


def bracket(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    return a.bracket(b)


# ----------------------------------------------------------------------
# constructors


def inner_derivation(q: Quiver, a: Path | AlgebraElement) -> LinearOperator:
    """The inner derivation b -> ab - ba."""
    if isinstance(a, Path):
        a = AlgebraElement.from_path(q, a)
    return LinearOperator.from_images(
        q, lambda p: a.commutator(AlgebraElement.from_path(q, p))
    )


def d_rs_apply(q: Quiver, r: int | str, s: Path, p: Path) -> AlgebraElement:
    """Apply D_{r,s} to a single path: replace one occurrence of r by s.

    Works on any quiver, cyclic or not, because it never enumerates the
    path basis.  Trivial paths and paths avoiding r map to zero.
    """
    if isinstance(r, str):
        r = q.arrow_index(r)
    arrow = q.arrows[r]
    if q.path_tail(s) != arrow.tail or q.path_head(s) != arrow.head:
        raise NotParallelError(
            f"path {q.path_display(s)} is not parallel to arrow {arrow.name}"
        )
    terms = []
    for i, a in enumerate(p.arrows):
        if a == r:
            terms.append((Path(p.base, p.arrows[:i] + s.arrows + p.arrows[i + 1 :]), 1))
    return AlgebraElement(q, terms)


def d_rs(q: Quiver, r: int | str, s: Path) -> LinearOperator:
    """Matrix form of D_{r,s} over the path basis (acyclic quivers only)."""
    if isinstance(r, str):
        r = q.arrow_index(r)
    q.paths()
    return LinearOperator.from_images(q, lambda p: d_rs_apply(q, r, s, p))


def d_rs_element(q: Quiver, r: int | str, elem: AlgebraElement) -> LinearOperator:
    """Bilinear extension of d_rs in its second slot.

    Terms of ``elem`` that are not parallel to r contribute nothing.
    """
    if isinstance(r, str):
        r = q.arrow_index(r)
    arrow = q.arrows[r]
    out = LinearOperator.zero(q)
    for s, c in elem.items():
        if q.path_tail(s) == arrow.tail and q.path_head(s) == arrow.head:
            out = out + c * d_rs(q, r, s)
    return out


# ----------------------------------------------------------------------
# derivation tests


def is_derivation(op: LinearOperator) -> bool:
    """Leibniz rule on all basis pairs, zero products included."""
    q = op.quiver
    paths = q.paths()
    elems = [AlgebraElement.from_path(q, p) for p in paths]
    images = [op.apply(p) for p in paths]
    zero = AlgebraElement.zero(q)
    for i, x in enumerate(paths):
        for j, y in enumerate(paths):
            xy = q.concat(x, y)
            lhs = op.apply(xy) if xy is not None else zero
            if lhs != images[i] * elems[j] + elems[i] * images[j]:
                return False
    return True


RULE_VERTEX_SUPPORT = "vertex-image-support"
RULE_VERTEX_PAIR = "vertex-coefficient-sum"
RULE_PATH_FORCED = "path-image-support"
RULE_FACTOR = "factorization-consistency"


@dataclass(frozen=True)
class ConditionViolation:
    rule: str
    message: str


def check_coefficient_conditions(op: LinearOperator) -> list[ConditionViolation]:
    """Structured derivation conditions on the coefficient level.

    Checks, coefficient by coefficient, the four families equivalent to
    the Leibniz rule: the image of a vertex idempotent is supported on
    acyclic paths through that vertex; those coefficients at head and
    tail sum to zero; the image of a nontrivial path p consists of the
    terms forced by the vertex images (q.p and p.q) plus free terms
    parallel to p; and for every factorization p = p1 p2 the parallel
    coefficients are consistent with those of the factors.  The list is
    empty exactly when the operator is a derivation.
    """
    q = op.quiver
    paths = q.paths()
    m = op.matrix
    idx = q.path_index
    violations = []
    disp = q.path_display

    trivial = [p for p in paths if p.is_trivial]
    nontrivial = [p for p in paths if not p.is_trivial]
    acyclic = [p for p in nontrivial if q.path_head(p) != q.path_tail(p)]

    # images of vertex idempotents live on acyclic paths touching the vertex
    for v in trivial:
        col = idx(v)
        for w in paths:
            c = m.entry(idx(w), col)
            if c == 0:
                continue
            touches = q.path_tail(w) == v.base or q.path_head(w) == v.base
            if w.is_trivial or q.path_head(w) == q.path_tail(w) or not touches:
                violations.append(
                    ConditionViolation(
                        RULE_VERTEX_SUPPORT,
                        f"D({disp(v)}) has coefficient {c} on {disp(w)}",
                    )
                )

    # for each acyclic path, the coefficients in the head and tail
    # vertex images must cancel
    for w in acyclic:
        total = m.entry(idx(w), idx(Path(q.path_tail(w)))) + m.entry(
            idx(w), idx(Path(q.path_head(w)))
        )
        if total != 0:
            violations.append(
                ConditionViolation(
                    RULE_VERTEX_PAIR,
                    f"coefficients of {disp(w)} at its endpoints sum to {total}",
                )
            )

    # image of a nontrivial path: forced prefix/suffix terms plus free
    # parallel terms, nothing else
    for p in nontrivial:
        col = idx(p)
        tail, head = q.path_tail(p), q.path_head(p)
        forced: dict[int, Fraction] = {}
        for w in acyclic:
            if q.path_head(w) == tail:
                forced_path = q.concat(w, p)
                c = m.entry(idx(w), idx(Path(tail)))
                if forced_path is not None:
                    k = idx(forced_path)
                    forced[k] = forced.get(k, _ZERO) + c
            if q.path_tail(w) == head:
                forced_path = q.concat(p, w)
                c = m.entry(idx(w), idx(Path(head)))
                if forced_path is not None:
                    k = idx(forced_path)
                    forced[k] = forced.get(k, _ZERO) + c
        for w in paths:
            if q.path_tail(w) == tail and q.path_head(w) == head:
                continue  # parallel coefficients are free here
            actual = m.entry(idx(w), col)
            expected = forced.get(idx(w), _ZERO)
            if actual != expected:
                violations.append(
                    ConditionViolation(
                        RULE_PATH_FORCED,
                        f"D({disp(p)}) has coefficient {actual} on {disp(w)},"
                        f" the vertex images force {expected}",
                    )
                )

    # factorization consistency across every split p = p1 p2
    for p in nontrivial:
        if len(p) < 2:
            continue
        col = idx(p)
        for k in range(1, len(p)):
            p1 = Path(p.base, p.arrows[:k])
            p2 = Path(q.path_head(p1), p.arrows[k:])
            c1, c2 = idx(p1), idx(p2)
            for w in q.parallel_paths(p):
                starts = len(w) >= k and w.arrows[:k] == p1.arrows
                ends = len(w) >= len(p) - k and (
                    w.arrows[len(w) - (len(p) - k) :] == p2.arrows
                )
                expected = _ZERO
                if ends:
                    w1 = Path(w.base, w.arrows[: len(w) - (len(p) - k)])
                    expected += m.entry(idx(w1), c1)
                if starts:
                    w2 = Path(q.path_head(p1), w.arrows[k:])
                    expected += m.entry(idx(w2), c2)
                actual = m.entry(idx(w), col)
                if actual != expected:
                    violations.append(
                        ConditionViolation(
                            RULE_FACTOR,
                            f"coefficient of {disp(w)} in D({disp(p)}) is {actual}"
                            f" but the split {disp(p1)}|{disp(p2)} forces {expected}",
                        )
                    )
    return violations


# ----------------------------------------------------------------------
# the canonical basis


@dataclass(frozen=True)
class DerivationLabel:
    """Tag for a canonical basis member: Inner(s) or EdgePair(r, s)."""

    kind: str  # "inner" | "edge_pair"
    arrow: int | None
    path: Path

    def display(self, q: Quiver) -> str:
        if self.kind == "inner":
            return f"Inner({q.path_display(self.path)})"
        return f"EdgePair({q.arrows[self.arrow].name},{q.path_display(self.path)})"


class DerivationBasis:
    """The canonical ordered basis of the derivation Lie algebra."""

    def __init__(self, quiver: Quiver, labels, operators):
        self.quiver = quiver
        self.labels: tuple[DerivationLabel, ...] = tuple(labels)
        self.operators: tuple[LinearOperator, ...] = tuple(operators)
        self._flat: RationalMatrix | None = None

    def __len__(self) -> int:
        return len(self.operators)

    def flat_rows(self) -> RationalMatrix:
        """Basis operators as stacked row vectors of length |P|^2."""
        if self._flat is None:
            n = len(self.quiver.paths())
            self._flat = RationalMatrix(
                [op.flatten() for op in self.operators], num_cols=n * n
            )
        return self._flat

    def coordinates_of(self, op: LinearOperator) -> tuple[Fraction, ...] | None:
        """Coordinates of ``op`` in this basis, or None if outside the span.

        The basis is triangular enough to read coordinates off directly:
        Inner(w) is the only member moving the idempotent at the head of
        w, and after the inner part is peeled off, EdgePair(r, s) is the
        only member left contributing s to the image of the arrow r.
        The remainder is zero exactly when op lies in the span.
        """
        q = self.quiver
        if op.quiver is not q and op.quiver != q:
            raise QuiverMismatchError("operator lives over a different quiver")
        idx = q.path_index
        residual = op.matrix
        coords = []
        for label, member in zip(self.labels, self.operators):
            if label.kind == "inner":
                w = label.path
                cell = (idx(w), idx(q.trivial_path(q.path_head(w))))
            else:
                cell = (idx(label.path), idx(q.arrow_path(label.arrow)))
            c = residual.entry(*cell)
            coords.append(c)
            if c:
                residual = residual - c * member.matrix
        return tuple(coords) if residual.is_zero else None

    def operator_from_coordinates(self, coords) -> LinearOperator:
        out = LinearOperator.zero(self.quiver)
        for c, op in zip(coords, self.operators):
            if c:
                out = out + Fraction(c) * op
        return out

    def display_labels(self) -> tuple[str, ...]:
        return tuple(label.display(self.quiver) for label in self.labels)


def canonical_basis(q: Quiver) -> DerivationBasis:
    """Inner(s) for s acyclic in path order, then EdgePair(r, s) in
    (arrow, path) order; linearly independent and spanning."""
    labels = []
    operators = []
    for s in q.acyclic_paths():
        labels.append(DerivationLabel("inner", None, s))
        operators.append(inner_derivation(q, s))
    for r in range(q.num_arrows):
        for s in q.parallel_paths(q.arrow_path(r)):
            labels.append(DerivationLabel("edge_pair", r, s))
            operators.append(d_rs(q, r, s))
    return DerivationBasis(q, labels, operators)


def inner_subspace(q: Quiver, basis: DerivationBasis | None = None) -> RationalMatrix:
    """Coordinates of every D_p (p a basis path) in the canonical basis.

    The row space is the inner subspace; for a connected acyclic quiver
    its rank is |P| - 1 because the kernel of p -> D_p is the center k.
    """
    if basis is None:
        basis = canonical_basis(q)
    rows = []
    for p in q.paths():
        coords = basis.coordinates_of(inner_derivation(q, p))
        if coords is None:
            raise InternalCheckError(
                f"inner derivation of {q.path_display(p)} falls outside the canonical span"
            )
        rows.append(coords)
    return RationalMatrix(rows, num_cols=len(basis))


# ----------------------------------------------------------------------
# brute-force oracle


def derivation_space_oracle(q: Quiver, max_paths: int = 60) -> list[LinearOperator]:
    """Solve the raw Leibniz system in the n^2 unknown matrix entries.

    For every basis pair (x, y) and every potential image path w this
    imposes one linear equation relating the unknowns d[w, xy], d[u, x]
    (where u y = w) and d[u, y] (where x u = w).  The system is
    pre-simplified by unit propagation (an equation with one surviving
    unknown forces it to zero) and the residue is solved by exact
    elimination.  Nothing here knows about the structure theory.
    """
    paths = q.paths()
    n = len(paths)
    if n > max_paths:
        raise TooLargeError(f"{n} paths exceed the oracle cap of {max_paths}")
    idx = q.path_index
    rows: set[tuple[tuple[int, Fraction], ...]] = set()
    for jx, x in enumerate(paths):
        for jy, y in enumerate(paths):
            per_w: dict[int, dict[int, int]] = {}
            for ju, u in enumerate(paths):
                w = q.concat(u, y)
                if w is not None:
                    d = per_w.setdefault(idx(w), {})
                    key = ju * n + jx
                    d[key] = d.get(key, 0) + 1
                w = q.concat(x, u)
                if w is not None:
                    d = per_w.setdefault(idx(w), {})
                    key = ju * n + jy
                    d[key] = d.get(key, 0) + 1
            z = q.concat(x, y)
            if z is not None:
                jz = idx(z)
                for wi in range(n):
                    d = per_w.setdefault(wi, {})
                    key = wi * n + jz
                    d[key] = d.get(key, 0) - 1
            for d in per_w.values():
                entries = sorted((u, c) for u, c in d.items() if c)
                if entries:
                    lead = Fraction(entries[0][1])
                    rows.add(tuple((u, Fraction(c) / lead) for u, c in entries))

    # unit propagation: single-unknown equations force zeros
    active = [dict(r) for r in sorted(rows)]
    by_var: dict[int, list[int]] = {}
    for i, row in enumerate(active):
        for u in row:
            by_var.setdefault(u, []).append(i)
    zeroed: set[int] = set()
    queue = [next(iter(row)) for row in active if len(row) == 1]
    while queue:
        u = queue.pop()
        if u in zeroed:
            continue
        zeroed.add(u)
        for i in by_var.get(u, ()):
            row = active[i]
            if u in row:
                del row[u]
                if len(row) == 1:
                    queue.append(next(iter(row)))

    residual = [row for row in active if len(row) >= 2]
    touched = sorted({u for row in residual for u in row})
    col = {u: j for j, u in enumerate(touched)}
    solutions: list[list[Fraction]] = []
    if touched:
        matrix = RationalMatrix(
            [[row.get(u, _ZERO) for u in touched] for row in residual], len(touched)
        )
        for kv in matrix.kernel():
            full = [_ZERO] * (n * n)
            for j, u in enumerate(touched):
                full[u] = kv[j]
            solutions.append(full)
    touched_set = set(touched)
    for u in range(n * n):
        if u not in zeroed and u not in touched_set:
            full = [_ZERO] * (n * n)
            full[u] = _ONE
            solutions.append(full)
    return [
        LinearOperator(q, RationalMatrix([full[w * n : (w + 1) * n] for w in range(n)], n))
        for full in solutions
    ]


# ----------------------------------------------------------------------
# identities that hold on any quiver


def verify_inner_expansion(q: Quiver, c: Path) -> bool:
    """Check D_c against its edge-pair expansion on the generators.

    For an oriented cycle c based at v0 the inner derivation D_c equals
    sum of D_{p, cp} over arrows p leaving v0 minus sum of D_{r, rc}
    over arrows r entering v0.  Both sides are evaluated lazily on
    V union E only, which determines a derivation by the product rule,
    so this works on cyclic quivers where no matrix form exists.
    """
    if c.is_trivial or q.path_head(c) != q.path_tail(c):
        raise NotACycleError("the expansion is defined for nontrivial oriented cycles")
    v0 = q.path_tail(c)
    c_elem = AlgebraElement.from_path(q, c)
    generators = [q.trivial_path(v) for v in range(q.num_vertices)]
    generators += [q.arrow_path(a) for a in range(q.num_arrows)]
    for g in generators:
        g_elem = AlgebraElement.from_path(q, g)
        lhs = c_elem * g_elem - g_elem * c_elem
        rhs = AlgebraElement.zero(q)
        for p in q.out_arrows(v0):
            s = q.concat(c, q.arrow_path(p))
            rhs = rhs + d_rs_apply(q, p, s, g)
        for r in q.in_arrows(v0):
            s = q.concat(q.arrow_path(r), c)
            rhs = rhs - d_rs_apply(q, r, s, g)
        if lhs != rhs:
            return False
    return True


def verify_bracket_identities(q: Quiver) -> dict[str, bool]:
    """Spot-check the closed bracket formulas against matrix brackets.

    inner_inner: [D_p, D_r] is the inner derivation of the commutator pr - rp
    for all basis path pairs.  edge_edge: [D_{r,s}, D_{p,q}] equals
    D_{p, D_{r,s}(q)} - D_{r, D_{p,q}(s)}, the second slot extended
    bilinearly, for all edge pairs.
    """
    paths = q.paths()
    inner_ops = [inner_derivation(q, p) for p in paths]
    elems = [AlgebraElement.from_path(q, p) for p in paths]
    inner_inner = True
    for i, a in enumerate(inner_ops):
        for j, b in enumerate(inner_ops):
            if a.bracket(b) != inner_derivation(q, elems[i].commutator(elems[j])):
                inner_inner = False
                break
        if not inner_inner:
            break
    pairs = []
    for r in range(q.num_arrows):
        for s in q.parallel_paths(q.arrow_path(r)):
            pairs.append((r, s))
    edge_edge = True
    for r, s in pairs:
        op_rs = d_rs(q, r, s)
        for p, t in pairs:
            lhs = op_rs.bracket(d_rs(q, p, t))
            rhs = d_rs_element(q, p, d_rs_apply(q, r, s, t)) - d_rs_element(
                q, r, d_rs_apply(q, p, t, s)
            )
            if lhs != rhs:
                edge_edge = False
                break
        if not edge_edge:
            break
    return {"inner_inner": inner_inner, "edge_edge": edge_edge}


def inner_edge_bracket_sign(q: Quiver) -> int | None:
    """The global sign in [D_p, D_{r,s}] = sign * D_{D_{r,s}(p)}.

    Computed empirically over every acyclic path p and every edge pair
    (r, s) of the quiver; raises when the instances disagree or when a
    bracket is not proportional to the predicted inner derivation.
    Returns None when every instance degenerates to zero.
    """
    edge_ops = []
    for r in range(q.num_arrows):
        for s in q.parallel_paths(q.arrow_path(r)):
            edge_ops.append((r, s, d_rs(q, r, s)))
    sign = None
    for p in q.acyclic_paths():
        dp = inner_derivation(q, p)
        for r, s, op in edge_ops:
            br = dp.bracket(op)
            target = inner_derivation(q, d_rs_apply(q, r, s, p))
            if target.is_zero:
                if not br.is_zero:
                    raise InternalCheckError(
                        "bracket with an edge pair is nonzero on a central image"
                    )
                continue
            if br == target:
                found = 1
            elif br == -target:
                found = -1
            else:
                raise InternalCheckError(
                    "bracket is not proportional to the inner derivation of the image"
                )
            if sign is None:
                sign = found
            elif sign != found:
                raise InternalCheckError("bracket sign is not globally consistent")
    return sign
