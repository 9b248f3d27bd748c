from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import pytest
import sympy

from semitoric import examples, presentations


@lru_cache(maxsize=None)
def example(name):
    return examples.generate_example(name)


@lru_cache(maxsize=None)
def quantum(name):
    return presentations.quantum_cohomology(example(name))


@lru_cache(maxsize=None)
def classical(name):
    return presentations.classical_cohomology(example(name).fan)


NONCOMPACT = ["blp-cxp1", "c2", "conifold-resolution", "o(-1)-cp1", "o(-1)-cp2",
              "o(-2)-cp2", "o(-3)-cp2", "o(-2)-cp1", "o(-3)-cp3"]
ALL = NONCOMPACT + ["cp2"]


def brute_vertices(md):
    """Vertices by solving every n-subset of facet equations."""
    fan = md.fan
    n = fan.rank
    out = set()
    for S in combinations(range(fan.nrays), n):
        M = sympy.Matrix([fan.rays[i] for i in S])
        if M.det() == 0:
            continue
        x = M.LUsolve(sympy.Matrix([md.lam[i] for i in S]))
        if all(sum(a * b for a, b in zip(x, e)) >= l for e, l in zip(fan.rays, md.lam)):
            out.add(tuple(int(t) if t.is_integer else Fraction(int(t.p), int(t.q)) for t in x))
    return out


def interior_point(fan):
    """Sum of all rays, which lies in the interior of the support."""
    return tuple(sum(e[k] for e in fan.rays) for k in range(fan.rank))


@pytest.fixture
def blp():
    return example("blp-cxp1")


@pytest.fixture
def cp2():
    return example("cp2")
