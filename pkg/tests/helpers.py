"""Shared test utilities: fixture loading and seeded random generators."""

import random
from fractions import Fraction
from pathlib import Path as FsPath

from quiverdiff.quiver import Quiver
from quiverdiff.algebra import AlgebraElement
from quiverdiff.derivations import LinearOperator, canonical_basis
from quiverdiff.embedding import TAIL, HEAD, RotationSystem, dart
from quiverdiff import quiverfile

FIXTURE_DIR = FsPath(__file__).resolve().parent.parent / "quivers"

# fixtures with a rotation system and an acyclic connected quiver
EMBEDDED_FIXTURES = (
    "a2", "a3", "a4", "a5", "k2", "k3", "triangle_tails", "grid2x2", "torus_k4",
)


def load_fixture(name):
    return quiverfile.load(FIXTURE_DIR / (name + ".quiver"))


def fixture_quiver(name):
    return load_fixture(name).quiver


def fixture_embedded(name):
    qf = load_fixture(name)
    assert qf.rotation is not None, name
    return qf.quiver, qf.rotation


def rand_frac(rng, span=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def random_acyclic_quiver(rng, max_vertices=5, max_extra=3):
    """Connected acyclic quiver: a backbone tree plus forward chords.

    Every arrow points from a lower vertex index to a higher one, so
    the result is acyclic by construction; attaching each vertex to an
    earlier one keeps the underlying graph connected.  Parallel arrows
    are possible (and wanted: they create almost oriented cycles).
    """
    nv = rng.randint(2, max_vertices)
    vertices = ["v%d" % i for i in range(nv)]
    arrows = []
    for i in range(1, nv):
        j = rng.randrange(i)
        arrows.append(("a%d" % len(arrows), vertices[j], vertices[i]))
    for _ in range(rng.randint(0, max_extra)):
        i = rng.randrange(nv - 1)
        j = rng.randrange(i + 1, nv)
        arrows.append(("a%d" % len(arrows), vertices[i], vertices[j]))
    return Quiver(vertices, arrows, name="random")


def random_rotation(rng, q):
    orders = []
    for v in range(q.num_vertices):
        darts = [dart(a, TAIL) for a in q.out_arrows(v)]
        darts += [dart(a, HEAD) for a in q.in_arrows(v)]
        rng.shuffle(darts)
        orders.append(darts)
    return RotationSystem(q, orders)


def random_element(rng, q, size=3):
    paths = q.paths()
    elem = AlgebraElement.zero(q)
    for _ in range(size):
        p = paths[rng.randrange(len(paths))]
        elem = elem + AlgebraElement.from_path(q, p, rand_frac(rng))
    return elem


def random_derivation(rng, q, basis=None):
    """A random rational combination of the canonical basis operators."""
    if basis is None:
        basis = canonical_basis(q)
    op = LinearOperator.zero(q)
    for member in basis.operators:
        c = rand_frac(rng, span=2)
        if c:
            op = op + c * member
    return op


def seeded(seed):
    return random.Random(seed)
