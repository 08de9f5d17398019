"""Published reference data used by regression checks.

The codimension-one list for exceptional types is stored in
``data/codim1_exceptional.json``.  A computed subset Pi of the extended base
is compared by its node set when the reference names that set explicitly and
by its type label otherwise.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .core import build_root_system
from .pseudolevi import pseudo_levi_from_nodes

__all__ = [
    "load_codim1_fixtures", "Codim1Comparison", "compare_codim1", "codim1_unique_subsets",
    "SL4_EXAMPLE", "sl4_example_counts",
]


def load_codim1_fixtures():
    text = resources.files("jordanstrata").joinpath("data/codim1_exceptional.json").read_text()
    data = json.loads(text)
    data.pop("description", None)
    return data


def codim1_unique_subsets(rs, test=None):
    """Node sets Pi with 0 < |Pi| < rank passing the codimension-one test."""
    if test is None:
        from .localgeom import codim1_normal as test
    out = []
    for k in range(1, rs.rank):
        for nodes in itertools.combinations(range(rs.rank + 1), k):
            if test(rs, nodes):
                out.append(nodes)
    return out


@dataclass(frozen=True)
class Codim1Comparison:
    name: str
    computed: frozenset
    expected: frozenset

    @property
    def missing(self):
        return sorted(self.expected - self.computed, key=str)

    @property
    def extra(self):
        return sorted(self.computed - self.expected, key=str)

    @property
    def ok(self):
        return self.computed == self.expected


def _key(rs, nodes, explicit):
    if tuple(nodes) in explicit:
        return "{" + ",".join(f"a{n}" for n in nodes) + "}"
    return pseudo_levi_from_nodes(rs, nodes).type_label


def compare_codim1(name, test=None):
    fx = load_codim1_fixtures()[name]
    rs = build_root_system(name)
    explicit = {tuple(s) for s in fx["sets"]}
    computed = frozenset(_key(rs, n, explicit) for n in codim1_unique_subsets(rs, test))
    expected = frozenset(fx["types"]) | frozenset(_key(rs, s, explicit) for s in explicit)
    return Codim1Comparison(name, computed, expected)


# SL_4: Pi' = {alpha_1}, x_s = 0, zero orbit; r has epsilon coordinates
# (1/5, 1/5, -1/5, -1/5), so C_G(r) has roots +-(e1-e2), +-(e3-e4); v is
# trivial on the first factor and regular on the second.
SL4_EXAMPLE = {
    "type": "A3",
    "pi": (0,),
    "x_s": (0, 0, 0),
    "x_r": (Fraction(0), Fraction(2, 5), Fraction(0)),
    "v": ("A1:[1,1]", "A1:[2]"),
    "expected": (2, 1),
}


def sl4_example_counts():
    """(count at r, count at rv) for the SL_4 configuration."""
    from .localgeom import local_branch_count, local_branch_count_at_r
    from .orbits import parse_orbit_label
    from .stratify import group_point, jordan_triple
    ex = SL4_EXAMPLE
    rs = build_root_system(ex["type"])
    t = jordan_triple(rs, ex["pi"], ex["x_s"])
    p = group_point(rs, ex["x_r"], [parse_orbit_label(s) for s in ex["v"]])
    return local_branch_count_at_r(rs, t, ex["x_r"]), local_branch_count(rs, t, p)
