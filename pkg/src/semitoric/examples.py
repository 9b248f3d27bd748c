"""Built-in fans used by the command line and the tests."""

from __future__ import annotations

import re

from .errors import BadParams, UnknownExample
from .polyhedral import Fan, MomentData


def blp():
    fan = Fan(2, [(1, 0), (0, 1), (1, 1), (0, -1)], [(2, 3), (3, 1), (1, 4)], name="blp-cxp1")
    return MomentData(fan, (-1, -1, -1, -1))


def cp2():
    fan = Fan(2, [(1, 0), (0, 1), (-1, -1)], [(1, 2), (2, 3), (1, 3)], name="cp2")
    return MomentData(fan, (0, 0, -3))


def c2():
    fan = Fan(2, [(1, 0), (0, 1)], [(1, 2)], name="c2")
    return MomentData(fan, (0, 0))


def conifold():
    fan = Fan(3, [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)], [(1, 2, 3), (1, 3, 4)],
              name="conifold-resolution")
    return MomentData(fan, (0, 0, 0, -1))


def line_bundle(k, m):
    """Total space of O(-k) over CP^m.

    Rays ``e_1..e_m``, ``b = (k-1, ..., k-1, k)`` and ``z = (1, ..., 1)``; the
    base rays sum to ``k z`` and the zero section is the divisor of ``z``.
    """
    if m < 1 or not 1 <= k <= m + 1:
        raise BadParams(f"o(-k)-cpm needs m >= 1 and 1 <= k <= m + 1, got k={k}, m={m}")
    n = m + 1
    rays = [tuple(int(i == j) for j in range(n)) for i in range(m)]
    rays.append(tuple([k - 1] * m + [k]))
    rays.append(tuple([1] * n))
    base = list(range(1, m + 2))
    cones = [tuple(sorted([i for i in base if i != skip] + [m + 2])) for skip in base]
    lam = [-1] * (m + 1) + [-1 if k <= m else 0]
    return MomentData(Fan(n, rays, cones, name=f"o(-{k})-cp{m}"), tuple(lam))


_FIXED = {"blp-cxp1": blp, "cp2": cp2, "c2": c2, "conifold-resolution": conifold}
_LINE = re.compile(r"o\(-(\d+)\)-cp(\d+)$")

NAMES = ("blp-cxp1", "cp2", "o(-k)-cpm", "conifold-resolution", "c2")


def generate_example(name, k=None, m=None):
    """Moment data for a built-in name; ``o(-k)-cpm`` takes ``k, m`` or e.g. ``o(-2)-cp3``."""
    if name in _FIXED:
        return _FIXED[name]()
    if name == "o(-k)-cpm":
        if k is None or m is None:
            raise BadParams("o(-k)-cpm needs parameters k and m")
        return line_bundle(int(k), int(m))
    match = _LINE.match(name)
    if match:
        return line_bundle(int(match.group(1)), int(match.group(2)))
    raise UnknownExample(f"unknown example {name!r}; known: {', '.join(NAMES)}")


def all_examples():
    """Every fixed example plus the line-bundle family used in the acceptance run."""
    out = [fn() for fn in _FIXED.values()]
    for k, m in [(1, 1), (1, 2), (2, 2), (3, 2), (2, 1), (3, 3)]:
        out.append(line_bundle(k, m))
    return out
