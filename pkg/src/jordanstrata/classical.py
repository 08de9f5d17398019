"""Coordinate model of classical root systems and classical factors.

In the epsilon model A_n roots are e_i - e_j in Q^{n+1}; B_n, C_n, D_n roots
are +-e_i +- e_j together with +-e_i (B) or +-2e_i (C) in Q^n.  A root
subsystem splits into classical factors:

* gl blocks, given by a signed coordinate set ``((i, s_i), ...)``; the roots
  are ``s_i e_i - s_j e_j``.  The set is normalised so that the smallest
  index carries a plus sign;
* special factors ``(letter, indices)`` of type B, C or D.

Weyl group elements act on the epsilon space by signed permutations, which
is how factor labels, including the very even tag, are transported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import solve_q
from .orbits import (
    LeviShape, OrbitLabel, VeryEvenAmbiguity, induce_tagged, induce_partition,
    ls_induce, orbit_labels, zero_orbit,
)

__all__ = [
    "is_classical", "eps_dim", "eps_simple_roots", "eps_roots", "to_eps", "from_eps",
    "Factor", "factors_of", "signed_perms", "transport_labels", "induce_embedded",
    "factor_label_choices", "format_factor",
]


def is_classical(rs):
    return rs.letter in "ABCD"


def eps_dim(rs):
    return rs.rank + 1 if rs.letter == "A" else rs.rank


@lru_cache(maxsize=None)
def _eps_simple(letter, n):
    d = n + 1 if letter == "A" else n
    s = np.zeros((n, d), dtype=np.int64)
    for i in range(n - 1):
        s[i, i], s[i, i + 1] = 1, -1
    if letter == "A":
        s[n - 1, n - 1], s[n - 1, n] = 1, -1
    elif letter == "B":
        s[n - 1, n - 1] = 1
    elif letter == "C":
        s[n - 1, n - 1] = 2
    elif letter == "D":
        s[n - 1, n - 2], s[n - 1, n - 1] = 1, 1
    return s


def eps_simple_roots(rs):
    return _eps_simple(rs.letter, rs.rank)


def eps_roots(rs):
    """All roots in epsilon coordinates, shape (nroots, eps_dim)."""
    return rs.roots.astype(np.int64) @ eps_simple_roots(rs)


def to_eps(rs, x):
    """Epsilon coordinates t of a coweight x, with alpha(x) = <alpha, t>."""
    s = eps_simple_roots(rs).tolist()
    rows = [list(r) for r in s]
    rhs = [Fraction(v) for v in x]
    if rs.letter == "A":
        rows.append([1] * (rs.rank + 1))
        rhs.append(Fraction(0))
    t = solve_q(rows, rhs)
    return tuple(t)


def from_eps(rs, t):
    s = eps_simple_roots(rs)
    return tuple(sum((int(s[i, j]) * Fraction(t[j]) for j in range(s.shape[1])), Fraction(0))
                 for i in range(rs.rank))


def signed_perms(rs, perms):
    """Signed permutations (pi, sign) with w(e_i) = sign[i] e_{pi[i]} for root permutations."""
    perms = np.atleast_2d(perms)
    s = eps_simple_roots(rs).astype(np.float64)
    er = eps_roots(rs).astype(np.float64)
    d = eps_dim(rs)
    basis = s
    if rs.letter == "A":
        basis = np.vstack([s, np.ones((1, d))])
    binv = np.linalg.inv(basis)
    out_pi = np.zeros((len(perms), d), dtype=np.int64)
    out_sg = np.zeros((len(perms), d), dtype=np.int64)
    for k, p in enumerate(perms):
        img = er[p[: rs.rank]]
        if rs.letter == "A":
            img = np.vstack([img, np.ones((1, d))])
        m = np.rint(binv @ img).astype(np.int64)  # row i = image of e_i
        nz = np.nonzero(m)
        out_pi[k, nz[0]] = nz[1]
        out_sg[k, nz[0]] = m[nz]
    return out_pi, out_sg


@dataclass(frozen=True, order=True)
class Factor:
    """A classical factor: ``kind`` is "A" for a gl block or the special letter."""

    kind: str
    coords: tuple   # gl: ((i, s), ...); special: (i, ...)

    @property
    def indices(self):
        return tuple(c[0] for c in self.coords) if self.kind == "A" else self.coords

    @property
    def size(self):
        return len(self.coords)

    @property
    def label_type(self):
        """(letter, rank) of the OrbitLabel carried by this factor."""
        if self.kind == "A":
            return ("A", self.size - 1)
        return (self.kind, self.size)

    def zero(self):
        return zero_orbit(*self.label_type)

    def labels(self):
        return orbit_labels(*self.label_type)

    def negative_count(self):
        return sum(1 for _, s in self.coords if s < 0) if self.kind == "A" else 0


def format_factor(f):
    if f.kind == "A":
        body = ",".join(("" if s > 0 else "-") + f"e{i + 1}" for i, s in f.coords)
        return f"gl{{{body}}}"
    return f"{f.kind}{f.size}{{" + ",".join(f"e{i + 1}" for i in f.coords) + "}"


def _normalise_block(coords):
    coords = sorted(coords)
    if coords[0][1] < 0:
        coords = [(i, -s) for i, s in coords]
    return tuple(coords)


def factors_of(rs, roots):
    """Classical factors of a root subsystem (every coordinate is covered)."""
    er = eps_roots(rs)
    d = eps_dim(rs)
    parent = list(range(d))
    par = [0] * d  # parity relative to parent: s_i = s_parent * (-1)^par
    special = set()
    short = set()
    double = set()

    def find(i):
        if parent[i] == i:
            return i, 0
        r, p = find(parent[i])
        parent[i] = r
        par[i] = (par[i] + p) % 2
        return r, par[i]

    conflict = set()
    for a in roots:
        v = er[a]
        nz = np.nonzero(v)[0]
        if len(nz) == 1:
            i = int(nz[0])
            special.add(i)
            (short if abs(v[i]) == 1 else double).add(i)
            continue
        i, j = int(nz[0]), int(nz[1])
        # root s_i e_i - s_j e_j: s_i = v_i, s_j = -v_j, so s_i s_j = -v_i v_j
        rel = 0 if -v[i] * v[j] > 0 else 1
        ri, pi = find(i)
        rj, pj = find(j)
        if ri == rj:
            if (pi + pj) % 2 != rel:
                conflict.add(ri)
        else:
            parent[rj] = ri
            par[rj] = (pi + pj + rel) % 2
    groups = {}
    for i in range(d):
        r, p = find(i)
        groups.setdefault(r, []).append((i, p))
    bad_roots = {find(i)[0] for i in special} | {find(c)[0] for c in conflict}
    out = []
    for r, members in groups.items():
        idx = tuple(sorted(i for i, _ in members))
        if r in bad_roots:
            if rs.letter == "B":
                kind = "B" if any(i in short for i in idx) else "D"
            else:
                kind = rs.letter
            out.append(Factor(kind, idx))
        else:
            out.append(Factor("A", _normalise_block([(i, 1 - 2 * p) for i, p in members])))
    out.sort()
    return tuple(out)


def default_labels(fs):
    return tuple(f.zero() for f in fs)


def factor_label_choices(fs):
    return [f.labels() for f in fs]


def transport_labels(fs, labels, pi, sg):
    """Apply a signed permutation to factors with labels; returns sorted pairs."""
    out = []
    for f, lab in zip(fs, labels):
        if f.kind == "A":
            nf = Factor("A", _normalise_block([(int(pi[i]), s * int(sg[i])) for i, s in f.coords]))
            out.append((nf, lab))
        else:
            idx = tuple(sorted(int(pi[i]) for i in f.coords))
            neg = sum(1 for i in f.coords if sg[i] < 0)
            nl = lab.flip() if (f.kind == "D" and neg % 2) else lab
            out.append((Factor(f.kind, idx), nl))
    out.sort(key=lambda t: (t[0], t[1].sort_key()))
    return tuple(out)


def _zero_tail(letter):
    return zero_orbit(letter, 0)


def induce_embedded(rs, outer, inner_pairs):
    """Induce labelled factors of a Levi subsystem into the factors ``outer``.

    ``inner_pairs`` is a sequence of (Factor, OrbitLabel) for the smaller
    subsystem; each of its factors must lie inside one outer factor.  Returns
    labels aligned with ``outer``.
    """
    result = []
    for F in outer:
        fidx = set(F.indices)
        inside = [(f, l) for f, l in inner_pairs if set(f.indices) <= fidx]
        if sum(f.size for f, _ in inside) != F.size:
            raise ValueError("inner subsystem does not fit the outer factors")
        if F.kind == "A":
            blocks = [(f, l) for f, l in inside]
            if any(f.kind != "A" for f, _ in blocks):
                raise ValueError("special factor inside a gl factor")
            shape = LeviShape(tuple(f.size for f, _ in blocks))
            lab = ls_induce(shape, [l for _, l in blocks], "A", F.size - 1)
            result.append(lab)
            continue
        blocks = [(f, l) for f, l in inside if f.kind == "A"]
        tails = [(f, l) for f, l in inside if f.kind != "A"]
        if len(tails) > 1 or any(f.kind != F.kind for f, _ in tails):
            raise ValueError("incompatible special factors")
        tail = tails[0][1] if tails else _zero_tail(F.kind)
        m = tails[0][0].size if tails else 0
        # signs relative to natural coordinates of the outer factor
        neg = sum(f.negative_count() for f, _ in blocks)
        shape = LeviShape(tuple(f.size for f, _ in blocks), (F.kind, m))
        orbs = [l for _, l in blocks] + [tail]
        if F.kind == "D":
            result.append(induce_tagged(shape, orbs, "D", F.size, neg % 2))
        else:
            result.append(ls_induce(shape, orbs, F.kind, F.size))
    return tuple(result)
