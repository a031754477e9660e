"""Command line interface: check, report, hh1, derivations.

Every command reads one quiver file and writes a single line of
canonical JSON (sorted keys, no whitespace, rationals as exact
"num/den" strings) so that identical inputs produce identical bytes.
Exit codes: 0 success, 1 semantic failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .cohomology import combinatorial_report, happel_dimension, hh1_structure
from .derivations import (
    canonical_basis,
    check_coefficient_conditions,
    derivation_space_oracle,
    inner_edge_bracket_sign,
    inner_subspace,
    is_derivation,
    verify_bracket_identities,
)
from .errors import InvalidRotationError, ParseError, QuiverError
from .linalg import EchelonBasis
from . import quiverfile


def _frac(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _matrix(m) -> list[list[str]]:
    return [[_frac(x) for x in row] for row in m.rows]


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")


def _fail(message: str) -> None:
    sys.stderr.write(message + "\n")


def _require_rotation(qf):
    if qf.rotation is None:
        raise QuiverError("the file declares no rotation system")
    return qf.rotation


def cmd_check(qf, args) -> int:
    q = qf.quiver
    acyclic = q.is_acyclic()
    payload = {
        "quiver": qf.name,
        "numVertices": q.num_vertices,
        "numArrows": q.num_arrows,
        "acyclic": acyclic,
        "connected": q.is_connected(),
        "rotation": "absent" if qf.rotation is None else "valid",
    }
    failures = []
    if args.require_acyclic and not acyclic:
        failures.append("CyclicQuiver: the quiver contains a directed cycle")
    payload["ok"] = not failures
    _emit(payload)
    for f in failures:
        _fail(f)
    return 0 if not failures else 1


def cmd_report(qf, args) -> int:
    rot = _require_rotation(qf)
    rep = combinatorial_report(qf.quiver, rot)
    _emit(
        {
            "quiver": qf.name,
            "numVertices": rep.num_vertices,
            "numArrows": rep.num_arrows,
            "numFaces": rep.num_faces,
            "genus": rep.genus,
            "dimDV": rep.dim_dv,
            "dimDE": rep.dim_de,
            "dimDF": rep.dim_df,
            "dimSum": rep.dim_sum,
            "eulerHolds": rep.euler_holds,
            "spacesDisjoint": rep.spaces_disjoint,
            "rankTheoremsHold": rep.rank_theorems_hold,
            "facesSumToZero": rep.faces_sum_to_zero,
            "ranks": {
                "Cva": rep.rank_c_va,
                "Cca": rep.rank_c_ca,
                "Cgamma": rep.rank_c_gamma,
                "Bgamma": rep.rank_b_gamma,
            },
            "matrices": {
                "Cva": _matrix(rep.c_va),
                "Cca": _matrix(rep.c_ca),
                "Cgamma": _matrix(rep.c_gamma),
                "Bgamma": _matrix(rep.b_gamma),
            },
            "faces": [list(f.display(qf.quiver)) for f in rep.faces],
        }
    )
    return 0


def cmd_hh1(qf, args) -> int:
    q = qf.quiver
    rot = _require_rotation(qf)
    outer = args.outer_face if args.outer_face is not None else qf.outer
    st = hh1_structure(q, rot, outer)
    hb = st.basis
    labels = hb.display_labels()
    oracle_dim = None
    if args.oracle:
        ops = derivation_space_oracle(q, max_paths=args.max_oracle_paths)
        oracle_dim = len(ops) - hb.inner_matrix.rank()
    _emit(
        {
            "quiver": qf.name,
            "dim": hb.dimension,
            "faceFormula": hb.dimension,
            "happel": happel_dimension(q),
            "oracle": oracle_dim,
            "genus": hb.genus,
            "droppedFace": hb.dropped_face,
            "basis": list(labels),
            "structure": {
                "enforced": st.enforced,
                "brackets": [
                    {
                        "left": labels[i],
                        "right": labels[j],
                        "coords": [_frac(x) for x in coords],
                    }
                    for i, j, coords in st.brackets
                ],
                "eigenvalues": [
                    {"al": labels[i], "face": labels[j], "value": _frac(lam)}
                    for i, j, lam in st.eigenvalues
                ],
                "verdicts": {
                    "facesCommute": st.faces_commute,
                    "faceActsDiagonally": st.face_acts_diagonally,
                    "alBracketsInAlSpan": st.al_brackets_in_al_span,
                },
            },
        }
    )
    return 0


def cmd_derivations(qf, args) -> int:
    q = qf.quiver
    basis = canonical_basis(q)
    labels = basis.display_labels()
    inner = inner_subspace(q, basis)
    payload = {
        "quiver": qf.name,
        "dim": len(basis),
        "innerRank": inner.rank(),
        "labels": list(labels),
        "basis": [
            {"label": label, "matrix": _matrix(op.matrix)}
            for label, op in zip(labels, basis.operators)
        ],
    }
    if args.oracle:
        ops = derivation_space_oracle(q, max_paths=args.max_oracle_paths)
        ech = EchelonBasis(len(q.paths()) ** 2)
        for row in basis.flat_rows().rows:
            ech.insert(row)
        spans_match = len(ops) == len(basis) and all(
            ech.contains(op.flatten()) for op in ops
        )
        payload["oracle"] = {"dim": len(ops), "spansMatch": spans_match}
    if args.verify:
        members = [
            {
                "label": label,
                "isDerivation": is_derivation(op),
                "violations": len(check_coefficient_conditions(op)),
            }
            for label, op in zip(labels, basis.operators)
        ]
        identities = verify_bracket_identities(q)
        sign = inner_edge_bracket_sign(q)
        payload["verify"] = {
            "members": members,
            "bracketChecks": {
                "innerInner": identities["inner_inner"],
                "edgeEdge": identities["edge_edge"],
            },
            "innerEdgeBracketSign": sign,
        }
    _emit(payload)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverdiff",
        description="Derivation Lie algebras and HH1 of acyclic quiver path algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a quiver file")
    p.add_argument("file")
    p.add_argument(
        "--require-acyclic",
        action="store_true",
        help="fail when the quiver has a directed cycle",
    )
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("report", help="relation matrices, ranks, Euler formula")
    p.add_argument("file")
    p.set_defaults(handler=cmd_report)

    p = sub.add_parser("hh1", help="HH1 dimension, basis, and structure constants")
    p.add_argument("file")
    p.add_argument(
        "--outer-face",
        type=int,
        default=None,
        metavar="N",
        help="index of the face to drop (overrides the file's outer directive)",
    )
    p.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check the dimension against the brute-force Leibniz solver",
    )
    p.add_argument("--max-oracle-paths", type=int, default=60, metavar="N")
    p.set_defaults(handler=cmd_hh1)

    p = sub.add_parser("derivations", help="canonical basis of the derivation algebra")
    p.add_argument("file")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="compare against the brute-force Leibniz solver",
    )
    p.add_argument(
        "--verify",
        action="store_true",
        help="re-check the Leibniz rule, coefficient conditions, and bracket identities",
    )
    p.add_argument("--max-oracle-paths", type=int, default=60, metavar="N")
    p.set_defaults(handler=cmd_derivations)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        qf = quiverfile.load(args.file)
    except OSError as e:
        _fail(f"cannot read {args.file}: {e.strerror or e}")
        return 2
    except (ParseError, InvalidRotationError) as e:
        _fail(str(e))
        return 2
    try:
        return args.handler(qf, args)
    except ValueError as e:
        _fail(str(e))
        return 2
    except QuiverError as e:
        _fail(f"{type(e).__name__}: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
