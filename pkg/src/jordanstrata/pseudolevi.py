"""Pseudo-Levi subsystems, their centres and admissible torus cosets.

A pseudo-Levi subgroup G_Pi is described by a linearly independent set Pi of
roots (a subset of the extended base, or any W-translate of one).  A semisimple
element of finite order centralised by G_Pi is a rational coweight ``x_s``
with ``beta(x_s)`` integral for every beta in Pi, and the coset
``Z(G_Pi)° s`` is ``x_s + V_Pi`` modulo the coroot lattice.

Such cosets are keyed by the vector ``y = (beta(x_s))_beta`` modulo the
lattice ``L_Pi = {(beta(lam))_beta : lam in Q^vee}``; the finite quotient
``Z^Pi / L_Pi`` is the component group Z(G_Pi)/Z(G_Pi)°.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .core import (
    IntegerLattice, RationalSubspace, RootSystem, Subsystem, diagram_components,
    generated_subsystem, solve_q, span_roots, subsystem_from_roots,
)
from .weyl import DEFAULT_BFS_CAP, CapExceeded, subsystem_orbit, subsystem_orbit_conjugate

__all__ = [
    "PseudoLevi", "TorusCoset", "pseudo_levi", "pseudo_levi_from_nodes",
    "enumerate_pseudo_levis", "is_levi", "center_component_group",
    "coset_admissible", "isolated_cosets", "admissible_cosets", "parse_pseudo_levi",
    "format_pseudo_levi", "PseudoLeviClasses",
]


@dataclass(frozen=True, eq=False)
class PseudoLevi:
    """Root data of G_Pi for an independent set of roots ``base``.

    ``nodes`` is the set of extended-base labels (0 for the lowest root) when
    the base is a subset of the extended base, otherwise None.
    """

    rs: RootSystem = field(repr=False)
    base: tuple
    nodes: tuple = None

    @cached_property
    def subsystem(self) -> Subsystem:
        return generated_subsystem(self.rs, self.base)

    @property
    def pi(self):
        return self.nodes if self.nodes is not None else self.base

    @property
    def roots(self):
        return self.subsystem.roots

    @property
    def components(self):
        return self.subsystem.type_multiset

    @property
    def type_label(self):
        return self.subsystem.type_label

    @property
    def rank(self):
        return len(self.base)

    @cached_property
    def base_matrix(self):
        """Rows are the roots of the base in simple-root coordinates."""
        return np.array([self.rs.roots[b] for b in self.base], dtype=np.int64).reshape(
            len(self.base), self.rs.rank)

    @cached_property
    def center_subspace(self) -> RationalSubspace:
        return RationalSubspace.annihilator_of(self.base_matrix.tolist(), self.rs.rank)

    @cached_property
    def value_lattice(self) -> IntegerLattice:
        """L_Pi: values of the base on the coroot lattice, columns (beta(alpha_i^vee))."""
        g = np.array([[int(self.rs.pairing_matrix[b, i]) for i in range(self.rs.rank)]
                      for b in self.base], dtype=np.int64).reshape(len(self.base), self.rs.rank)
        return IntegerLattice(g)

    @cached_property
    def component_group(self):
        return [d for d in self.value_lattice.torsion()]

    @cached_property
    def is_levi_flag(self):
        return is_levi(self.rs, self)

    @cached_property
    def span_roots(self):
        return span_roots(self.rs, self.base)

    @cached_property
    def base_cartan(self):
        """C[k][j] = beta_k(beta_j^vee)."""
        p = self.rs.pairing_matrix
        return [[int(p[bk, bj]) for bj in self.base] for bk in self.base]

    def values(self, x):
        return [self.rs.pair(b, x) for b in self.base]

    def coset_key(self, x):
        """Canonical key of x + V_Pi + Q^vee (requires beta(x) integral on the base)."""
        y = self.values(x)
        if any(v.denominator != 1 for v in y):
            raise ValueError("x_s not centralized by G_Pi")
        return self.value_lattice.reduce([int(v) for v in y])

    def lift(self, y):
        """Coweight in the span of the base coroots with base values ``y``."""
        if not self.base:
            return tuple(Fraction(0) for _ in range(self.rs.rank))
        c = solve_q(self.base_cartan, [Fraction(v) for v in y])
        cor = self.rs.coroot_coweights
        return tuple(sum((c[j] * int(cor[b][i]) for j, b in enumerate(self.base)), Fraction(0))
                     for i in range(self.rs.rank))

    def coset_representatives(self):
        """One integral value vector y per element of Z^Pi / L_Pi."""
        lat = self.value_lattice
        U, d = lat.snf
        n = len(self.base)
        if n == 0:
            return [()]
        uinv = np.array(_inverse_unimodular(U), dtype=object)
        reps = []
        for r in itertools.product(*[range(int(di)) for di in d[:n]]):
            y = uinv.dot(np.array(r, dtype=object))
            reps.append(tuple(int(v) for v in y))
        return reps

    def __repr__(self):
        return f"PseudoLevi({format_pseudo_levi(self)})"


def _inverse_unimodular(U):
    from sympy import Matrix
    return Matrix(U.tolist()).inv().tolist()


@dataclass(frozen=True, eq=False)
class TorusCoset:
    pl: PseudoLevi
    base_point: tuple

    def __post_init__(self):
        vals = self.pl.values(self.base_point)
        if any(v.denominator != 1 for v in vals):
            raise ValueError("x_s not centralized by G_Π")

    @cached_property
    def key(self):
        return self.pl.coset_key(self.base_point)

    @cached_property
    def canonical_point(self):
        """Deterministic representative in the span of the base coroots."""
        U, d = self.pl.value_lattice.snf
        n = len(self.pl.base)
        if n == 0:
            return tuple(Fraction(0) for _ in range(self.pl.rs.rank))
        uinv = np.array(_inverse_unimodular(U), dtype=object)
        y = uinv.dot(np.array(self.key[:n], dtype=object))
        return self.pl.lift([int(v) for v in y])

    def __eq__(self, other):
        return (isinstance(other, TorusCoset) and self.pl.roots == other.pl.roots
                and self.key == other.key)

    def __hash__(self):
        return hash((self.pl.subsystem.key, self.key))

    def __repr__(self):
        from .core import format_vector
        return f"TorusCoset({format_vector(self.canonical_point)})"


def pseudo_levi(rs, base):
    """PseudoLevi from root indices of an independent set."""
    base = tuple(sorted(int(b) for b in base))
    ext = rs.extended_base
    nodes = tuple(sorted(ext.index(b) for b in base)) if all(b in ext for b in base) else None
    return PseudoLevi(rs, base, nodes)


def pseudo_levi_from_nodes(rs, nodes):
    """PseudoLevi from extended-base labels (0 = lowest root)."""
    nodes = tuple(sorted(set(int(n) for n in nodes)))
    if len(nodes) > rs.rank:
        raise ValueError("the extended base is linearly dependent")
    ext = rs.extended_base
    return PseudoLevi(rs, tuple(sorted(ext[n] for n in nodes)), nodes)


def format_pseudo_levi(pl):
    if pl.nodes is not None:
        return f"{pl.rs.name}:{{" + ",".join(f"a{n}" for n in pl.nodes) + "}"
    return f"{pl.rs.name}:roots{{" + ",".join(str(b) for b in pl.base) + "}"


def parse_pseudo_levi(rs, text):
    """Parse ``"E7:{a0,a2,a3}"`` or ``"{a1}"``."""
    body = text.split(":", 1)[1] if ":" in text else text
    body = body.strip().strip("{}").strip()
    if not body:
        return pseudo_levi_from_nodes(rs, ())
    return pseudo_levi_from_nodes(rs, [int(t.strip().lstrip("a")) for t in body.split(",")])


def center_component_group(rs, pl):
    """Invariant factors of Z(G_Pi)/Z(G_Pi)° (simply connected G)."""
    return list(pl.component_group)


def coset_admissible(rs, pl, x_s):
    """True iff the generic element of x_s + V_Pi has centraliser root system Phi_Pi."""
    vals = pl.values(x_s)
    if any(v.denominator != 1 for v in vals):
        raise ValueError("x_s not centralized by G_Π")
    allv = rs.pair_all(x_s)
    extra = [a for a in pl.span_roots if allv[a].denominator == 1 and a not in pl.roots]
    return not extra


def isolated_cosets(rs, pl):
    """Admissible points x (mod Q^vee) with V_Pi = 0, one per coset."""
    if pl.rank < rs.rank:
        raise ValueError("not full rank: infinitely many cosets")
    out = []
    for y in pl.coset_representatives():
        x = pl.lift(y)
        if coset_admissible(rs, pl, x):
            out.append(TorusCoset(pl, x))
    return out


def admissible_cosets(rs, pl):
    """Admissible elements of the component group, as TorusCosets."""
    out = []
    for y in pl.coset_representatives():
        x = pl.lift(y)
        if coset_admissible(rs, pl, x):
            out.append(TorusCoset(pl, x))
    return out


def is_levi(rs, pl, cap=DEFAULT_BFS_CAP):
    """Whether Phi_Pi is W-conjugate to the root system of a subset of the simple roots."""
    sub = pl.subsystem
    if len(pl.base) == 0:
        return True
    for sigma in itertools.combinations(range(rs.rank), pl.rank):
        cand = generated_subsystem(rs, sigma)
        if cand.type_multiset != sub.type_multiset:
            continue
        if subsystem_orbit_conjugate(rs, sub, cand, cap):
            return True
    return False


class PseudoLeviClasses(list):
    """List of class representatives; ``partial`` is True if a cap was hit."""

    partial = False


def enumerate_pseudo_levis(rs, cap=DEFAULT_BFS_CAP, max_size=None):
    """One PseudoLevi per W-class of subsystems Phi_Pi, Pi a proper subset of the extended base.

    Within a class the representative avoids the lowest root when possible
    (a standard Levi position) and is otherwise lexicographically least;
    classes are listed by size and then by that same order.
    """
    ext_nodes = list(range(rs.rank + 1))
    top = rs.rank if max_size is None else min(max_size, rs.rank)
    out = PseudoLeviClasses()
    for size in range(top + 1):
        seen = {}
        order = sorted(itertools.combinations(ext_nodes, size), key=lambda c: (0 in c, c))
        for nodes in order:
            pl = pseudo_levi_from_nodes(rs, nodes)
            sub = pl.subsystem
            bucket = seen.setdefault(sub.type_multiset, [])
            if any(sub.key in orbit for _, orbit in bucket):
                continue
            try:
                keys, _ = subsystem_orbit(rs, sub.roots, cap)
            except CapExceeded as e:
                out.partial = True
                e.partial = out
                raise
            bucket.append((pl, set(keys)))
            out.append(pl)
    return out
