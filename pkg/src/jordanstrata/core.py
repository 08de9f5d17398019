"""Root systems in simple-root coordinates and exact lattice arithmetic.

Roots are integer vectors in the basis of simple roots.  Elements of the
Cartan subalgebra (coweights) are rational vectors in the basis of
fundamental coweights, so that ``alpha_i(x) == x[i]`` and the pairing of a
root with a coweight is a plain dot product.

Positive roots are ordered by height and then by reverse lexicographic order
of their coordinates, which puts the simple roots at indices ``0..rank-1`` in
Bourbaki order.  The negative of root ``i`` sits at index ``i + npos``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

__all__ = [
    "CartanTypeError", "RootSystem", "Subsystem", "RationalSubspace",
    "IntegerLattice", "build_root_system", "cartan_matrix", "parse_label",
    "subsystem_span", "smith_normal_form", "lattice_coset_membership",
    "identify_cartan_type", "format_vector", "parse_vector", "rank_q",
    "nullspace_q", "solve_q", "generated_subsystem", "subsystem_from_roots",
    "span_roots", "Component", "WEYL_ORDERS", "diagram_components",
    "diagram_involution",
]

WEYL_ORDERS = {
    "A": lambda n: _factorial(n + 1),
    "B": lambda n: 2 ** n * _factorial(n),
    "C": lambda n: 2 ** n * _factorial(n),
    "D": lambda n: 2 ** (n - 1) * _factorial(n),
    "E": lambda n: {6: 51840, 7: 2903040, 8: 696729600}[n],
    "F": lambda n: 1152,
    "G": lambda n: 12,
}

ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


class CartanTypeError(ValueError):
    pass


def parse_label(label):
    """Split ``"E7"`` into ``("E", 7)`` and validate it."""
    if isinstance(label, tuple):
        letter, rank = label
    else:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", str(label))
        if not m:
            raise CartanTypeError(f"unknown Cartan type {label!r}")
        letter, rank = m.group(1).upper(), int(m.group(2))
    ok = {
        "A": rank >= 1, "B": rank >= 2, "C": rank >= 2, "D": rank >= 4,
        "E": rank in (6, 7, 8), "F": rank == 4, "G": rank == 2,
    }.get(letter, False)
    if not ok:
        raise CartanTypeError(f"unknown Cartan type {letter}{rank}")
    return letter, rank


def cartan_matrix(letter, n):
    """Cartan matrix with ``a[i][j] = <alpha_i^vee, alpha_j>``, Bourbaki numbering."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter in "ABCD":
        for i in range(n - 1):
            bond(i, i + 1)
        if letter == "B":
            # alpha_n short
            bond(n - 2, n - 1, -1, -2)
        elif letter == "C":
            bond(n - 2, n - 1, -2, -1)
        elif letter == "D":
            a[n - 2][n - 1] = a[n - 1][n - 2] = 0
            bond(n - 3, n - 1)
    elif letter == "E":
        # 1-3-4-5-...-n with 2 attached to 4
        bond(0, 2)
        bond(2, 3)
        bond(1, 3)
        for i in range(3, n - 1):
            bond(i, i + 1)
    elif letter == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif letter == "G":
        # alpha_1 short
        bond(0, 1, -3, -1)
    return a


def _symmetrizer(a):
    """Half squared lengths d_i with d_i a_ij = d_j a_ji, shortest root d = 1."""
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] != 0 and i != j and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    stack.append(j)
    m = min(d)
    return [x / m for x in d]


def _root_closure(a):
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                c = sum(beta[j] * a[i][j] for j in range(n))
                if c == 0:
                    continue
                gamma = list(beta)
                gamma[i] -= c
                gamma = tuple(gamma)
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    return seen


@dataclass(frozen=True, eq=False)
class RootSystem:
    letter: str
    rank: int
    cartan: tuple
    roots: np.ndarray = field(repr=False)
    npos: int = field(repr=False)
    half_len2: tuple = field(repr=False)

    @property
    def name(self):
        return f"{self.letter}{self.rank}"

    @property
    def cartan_label(self):
        return (self.letter, self.rank)

    @property
    def nroots(self):
        return len(self.roots)

    @property
    def simple_indices(self):
        return list(range(self.rank))

    @property
    def highest_root_index(self):
        return self.npos - 1

    @property
    def lowest_root_index(self):
        return 2 * self.npos - 1

    @property
    def extended_base(self):
        """Root indices of the extended base, node ``k`` is alpha_k (alpha_0 lowest)."""
        return [self.lowest_root_index] + self.simple_indices

    def neg(self, i):
        return i + self.npos if i < self.npos else i - self.npos

    def is_positive(self, i):
        return i < self.npos

    def height(self, i):
        return int(self.roots[i].sum())

    @cached_property
    def index(self):
        return {tuple(int(c) for c in r): i for i, r in enumerate(self.roots)}

    def root_index(self, vec):
        return self.index[tuple(int(c) for c in vec)]

    @cached_property
    def form(self):
        """W-invariant form on simple-root coordinates, shortest roots of length 2."""
        n = self.rank
        return tuple(tuple(self.half_len2[i] * self.cartan[i][j] for j in range(n))
                     for i in range(n))

    @cached_property
    def _form_int(self):
        return np.array([[int(x) for x in row] for row in self.form], dtype=np.int64)

    def inner(self, u, v):
        return int(np.asarray(u) @ self._form_int @ np.asarray(v))

    @cached_property
    def half_lengths(self):
        """(alpha, alpha)/2 for every root, as integers."""
        r = self.roots.astype(np.int64)
        return (np.einsum("ij,jk,ik->i", r, self._form_int, r) // 2).astype(np.int64)

    def is_long(self, i):
        return int(self.half_lengths[i]) == int(self.half_lengths.max())

    @cached_property
    def pairing_matrix(self):
        """P[i, j] = <root_i, root_j^vee>."""
        r = self.roots.astype(np.int64)
        g = r @ self._form_int @ r.T
        return (2 * g) // (2 * self.half_lengths)[None, :]

    @cached_property
    def coroot_matrix(self):
        """Coordinates of each coroot in the basis of simple coroots."""
        d = np.array([int(x) for x in self.half_len2], dtype=np.int64)
        r = self.roots.astype(np.int64)
        return (r * d[None, :]) // self.half_lengths[:, None]

    @cached_property
    def coroot_coweights(self):
        """Each coroot in fundamental-coweight coordinates: row i = (alpha_j(alpha_i^vee))_j."""
        return self.pairing_matrix[: self.rank, :].T.copy()

    @cached_property
    def simple_reflection_perms(self):
        """Permutation of root indices for each simple reflection."""
        perms = []
        a = np.array(self.cartan, dtype=np.int64)
        r = self.roots.astype(np.int64)
        for i in range(self.rank):
            c = r @ a[i]
            img = r.copy()
            img[:, i] -= c
            perms.append(np.array([self.index[tuple(int(x) for x in v)] for v in img],
                                  dtype=np.int32))
        return perms

    def reflection_perm(self, k):
        """Permutation of root indices induced by the reflection in root ``k``."""
        c = self.pairing_matrix[:, k]
        img = self.roots.astype(np.int64) - np.outer(c, self.roots[k])
        return np.array([self.index[tuple(int(x) for x in v)] for v in img], dtype=np.int32)

    @cached_property
    def coroot_lattice(self):
        return IntegerLattice(np.array(self.cartan, dtype=np.int64).T)

    def pair(self, root_index, x):
        """Exact value of a root on a rational coweight."""
        return sum(int(c) * Fraction(v) for c, v in zip(self.roots[root_index], x))

    def pair_all(self, x):
        """Values of all roots on the coweight ``x`` as Fractions."""
        den = lcm(*[Fraction(v).denominator for v in x]) if len(x) else 1
        num = np.array([int(Fraction(v) * den) for v in x], dtype=np.int64)
        vals = self.roots.astype(np.int64) @ num
        return [Fraction(int(v), den) for v in vals]

    def reflect_coweight(self, i, x):
        xi = Fraction(x[i])
        return tuple(Fraction(x[j]) - xi * self.cartan[i][j] for j in range(self.rank))

    def dimension(self):
        return self.nroots + self.rank

    def __repr__(self):
        return f"RootSystem({self.name})"

    def __reduce__(self):
        return (build_root_system, (self.name,))


_CACHE = {}


def build_root_system(label):
    """Root system for a Cartan label such as ``"A3"`` or ``("E", 7)``."""
    letter, n = parse_label(label)
    key = (letter, n)
    if key in _CACHE:
        return _CACHE[key]
    a = cartan_matrix(letter, n)
    pos = sorted(_root_closure(a), key=lambda v: (sum(v), tuple(-c for c in v)))
    pos = [v for v in pos if sum(v) > 0]
    roots = np.array(pos + [tuple(-c for c in v) for v in pos], dtype=np.int16)
    rs = RootSystem(letter, n, tuple(tuple(r) for r in a), roots, len(pos),
                    tuple(_symmetrizer(a)))
    if rs.nroots != ROOT_COUNTS[letter](n):
        raise AssertionError(f"root count mismatch for {rs.name}")
    _CACHE[key] = rs
    return rs


# ----------------------------------------------------------------------------
# exact rational linear algebra


def _rref(rows, ncols):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        m[r] = [v / piv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_q(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(_rref(rows, len(rows[0]))[1])


def nullspace_q(rows, ncols):
    """Basis of {v : rows @ v = 0} as integer vectors."""
    rows = [list(r) for r in rows]
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    red, piv = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, piv):
            v[pc] = -row[f]
        den = lcm(*[x.denominator for x in v])
        basis.append([int(x * den) for x in v])
    return basis


def solve_q(a_rows, b):
    """Some rational solution of ``a @ x = b``, or None."""
    ncols = len(a_rows[0])
    aug = [list(r) + [bv] for r, bv in zip(a_rows, b)]
    red, piv = _rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(red, piv):
        x[pc] = row[ncols]
    return x


# ----------------------------------------------------------------------------
# subspaces and lattices


class RationalSubspace:
    """Subspace of Q^n given by a basis, with an exact membership test."""

    def __init__(self, basis, dim):
        self.dim = dim
        basis = [list(b) for b in basis]
        if basis:
            red, _ = _rref(basis, dim)
            basis = []
            for row in red:
                den = lcm(*[Fraction(x).denominator for x in row])
                basis.append([int(Fraction(x) * den) for x in row])
        self.basis = basis
        self._ann = nullspace_q(self.basis, dim) if basis else \
            [[int(i == j) for j in range(dim)] for i in range(dim)]

    @classmethod
    def annihilator_of(cls, rows, dim):
        """{x : r . x = 0 for every row r}."""
        return cls(nullspace_q(rows, dim) if rows else
                   [[int(i == j) for j in range(dim)] for i in range(dim)], dim)

    @property
    def rank(self):
        return len(self.basis)

    @property
    def annihilator(self):
        return self._ann

    def __contains__(self, x):
        return all(sum(Fraction(a) * Fraction(b) for a, b in zip(r, x)) == 0
                   for r in self._ann)

    def __repr__(self):
        return f"RationalSubspace(dim={self.rank} in Q^{self.dim})"


def smith_normal_form(m):
    """Return ``(U, D, V)`` with ``U @ M @ V == D``, U, V unimodular, d_i | d_{i+1}."""
    mm = Matrix([[int(x) for x in row] for row in np.asarray(m).tolist()])
    if mm.rows == 0 or mm.cols == 0:
        return (np.eye(mm.rows, dtype=object), np.zeros((mm.rows, mm.cols), dtype=object),
                np.eye(mm.cols, dtype=object))
    d, u, v = smith_normal_decomp(mm)
    # sympy may return negative diagonal entries
    for i in range(min(d.rows, d.cols)):
        if d[i, i] < 0:
            d[i, :] = -d[i, :]
            u[i, :] = -u[i, :]
    U = np.array(u.tolist(), dtype=object)
    D = np.array(d.tolist(), dtype=object)
    V = np.array(v.tolist(), dtype=object)
    assert (U.dot(np.asarray(m, dtype=object)).dot(V) == D).all()
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    return U, D, V


class IntegerLattice:
    """Lattice spanned by the integer columns of ``generators``."""

    def __init__(self, generators):
        g = np.asarray(generators, dtype=object)
        if g.ndim == 1:
            g = g.reshape(-1, 1)
        self.generators = g
        self.dim = g.shape[0]
        U, D, V = smith_normal_form(g) if g.shape[1] else \
            (np.eye(self.dim, dtype=object), np.zeros((self.dim, 0), dtype=object), None)
        self._U = U
        self._U64 = np.array(U.tolist(), dtype=np.int64) if self.dim else U
        diag = [int(D[i, i]) for i in range(min(D.shape))]
        self.invariant_factors_all = diag
        self._d = np.array(diag + [0] * (self.dim - len(diag)), dtype=np.int64)

    @property
    def snf(self):
        return self._U, self._d

    @property
    def rank(self):
        return int((self._d != 0).sum())

    def torsion(self):
        """Invariant factors > 1 of Z^dim / L restricted to the saturation."""
        return [int(d) for d in self._d if d > 1]

    def contains(self, x):
        x = [Fraction(v) for v in x]
        if any(v.denominator != 1 for v in x):
            return False
        y = self._U.dot(np.array([int(v) for v in x], dtype=object))
        for yi, di in zip(y, self._d):
            if di == 0:
                if yi != 0:
                    return False
            elif yi % di:
                return False
        return True

    __contains__ = contains

    def contains_many(self, xs):
        """Vectorised membership for an integer array of shape (m, dim)."""
        xs = np.asarray(xs, dtype=np.int64)
        y = xs @ self._U64.T
        d = self._d
        ok = np.ones(len(xs), dtype=bool)
        for i in range(self.dim):
            if d[i] == 0:
                ok &= y[:, i] == 0
            elif d[i] != 1:
                ok &= (y[:, i] % d[i]) == 0
        return ok

    def reduce(self, x):
        """Canonical representative key of the coset ``x + L`` (integer ``x``)."""
        y = self._U.dot(np.array([int(v) for v in x], dtype=object))
        return tuple(int(yi % di) if di else int(yi) for yi, di in zip(y, self._d))

    def __repr__(self):
        return f"IntegerLattice(dim={self.dim}, rank={self.rank})"


def lattice_coset_membership(x, V, L):
    """Decide whether ``x`` lies in ``V + L`` (V a RationalSubspace, L an IntegerLattice)."""
    x = [Fraction(v) for v in x]
    if len(x) != L.dim or (V is not None and V.dim != L.dim):
        raise ValueError("dimension mismatch")
    ann = V.annihilator if V is not None else \
        [[int(i == j) for j in range(L.dim)] for i in range(L.dim)]
    if not ann:
        return True
    px = [sum(a * b for a, b in zip(row, x)) for row in ann]
    gens = np.array(ann, dtype=object).dot(L.generators) if L.generators.shape[1] else \
        np.zeros((len(ann), 0), dtype=object)
    den = lcm(*[v.denominator for v in px])
    if den != 1:
        # membership of a non-integral vector in an integral lattice is impossible
        return False
    return IntegerLattice(gens).contains(px)


# ----------------------------------------------------------------------------
# subsystems


def identify_cartan_type(a):
    """Return ``(letter, rank, order)`` for an indecomposable Cartan matrix.

    ``order`` lists the row indices of ``a`` in Bourbaki numbering.  Rank 2
    doubly laced systems are reported as B2.
    """
    n = len(a)
    adj = {i: [j for j in range(n) if j != i and a[i][j] != 0] for i in range(n)}
    if n == 1:
        return "A", 1, [0]
    mult = {(i, j): a[i][j] * a[j][i] for i in range(n) for j in adj[i]}
    if any(m == 3 for m in mult.values()):
        i, j = next(k for k, m in mult.items() if m == 3)
        short = i if a[i][j] == -3 else j
        return "G", 2, [short, j if short == i else i]
    ends = [i for i in range(n) if len(adj[i]) == 1]
    branch = [i for i in range(n) if len(adj[i]) == 3]

    def walk(start, avoid=None):
        path = [start]
        prev, cur = avoid, start
        while True:
            nxt = [j for j in adj[cur] if j != prev and j not in path]
            if not nxt:
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)

    double = [k for k, m in mult.items() if m == 2]
    if double:
        i, j = double[0]
        longi = i if a[i][j] == -1 else j  # a[long][short] = -1
        shorti = j if longi == i else i
        if n == 2:
            return "B", 2, [longi, shorti]
        for e in ends:
            path = walk(e)
            if path[-1] == shorti and path[-2] == longi:
                return "B", n, path
            if path[-1] == longi and path[-2] == shorti:
                return "C", n, path
            if n == 4 and path[1] == longi and path[2] == shorti:
                return "F", 4, path
        raise AssertionError("unrecognised doubly laced diagram")
    if not branch:
        path = walk(min(ends))
        return "A", n, path
    b = branch[0]
    arms = sorted((walk(j, b) for j in adj[b]), key=lambda p: (len(p), p))
    lens = [len(p) for p in arms]
    if lens[0] == 1 and lens[1] == 1:
        long_arm = arms[2]
        order = long_arm[::-1] + [b, arms[0][0], arms[1][0]]
        return "D", n, order
    if lens == [1, 2, 2]:
        return "E", 6, [arms[1][1], arms[0][0], arms[1][0], b, arms[2][0], arms[2][1]]
    if lens == [1, 2, 3]:
        return "E", 7, [arms[1][1], arms[0][0], arms[1][0], b] + arms[2]
    if lens == [1, 2, 4]:
        return "E", 8, [arms[1][1], arms[0][0], arms[1][0], b] + arms[2]
    raise AssertionError("unrecognised simply laced diagram")


@dataclass(frozen=True)
class Component:
    letter: str
    rank: int
    base: tuple          # root indices, Bourbaki order
    roots: frozenset     # all root indices of the component
    short: bool          # type A component made of short roots

    @property
    def label(self):
        return f"{self.letter}{self.rank}" + ("~" if self.short else "")


@dataclass(frozen=True)
class Subsystem:
    rs: RootSystem = field(repr=False)
    roots: frozenset
    base: tuple
    components: tuple

    @property
    def key(self):
        """Sorted positive root indices, the canonical subsystem key."""
        return tuple(sorted(i for i in self.roots if i < self.rs.npos))

    @property
    def rank(self):
        return len(self.base)

    @property
    def type_multiset(self):
        return tuple(sorted(c.label for c in self.components))

    @property
    def type_label(self):
        if not self.components:
            return "0"
        counts = {}
        for c in self.components:
            counts[c.label] = counts.get(c.label, 0) + 1
        parts = []
        order = sorted(counts, key=lambda s: (-_label_rank(s), s))
        for lab in order:
            k = counts[lab]
            parts.append(f"{k}{lab}" if k > 1 else lab)
        return "+".join(parts)

    def __len__(self):
        return len(self.roots)


def _label_rank(s):
    return int(re.search(r"\d+", s).group())


def diagram_components(rs, indices):
    """Components of the Dynkin diagram of a linearly independent set of roots.

    Returns a list of ``(letter, rank, ordered_indices)`` with each component
    in Bourbaki order; the roots are used as given, not rebased.
    """
    indices = list(indices)
    p = rs.pairing_matrix
    left = list(indices)
    out = []
    while left:
        group = [left.pop(0)]
        changed = True
        while changed:
            changed = False
            for j in list(left):
                if any(p[j, g] != 0 for g in group):
                    group.append(j)
                    left.remove(j)
                    changed = True
        sub = [[int(p[j, i]) for j in group] for i in group]
        letter, rk, order = identify_cartan_type(sub)
        out.append((letter, rk, [group[k] for k in order]))
    return out


def diagram_involution(rs, indices):
    """The involution -w_0 on a linearly independent set of roots, as a dict."""
    m = {}
    for letter, rk, o in diagram_components(rs, indices):
        if letter == "A":
            img = o[::-1]
        elif letter == "D" and rk % 2 == 1:
            img = o[:-2] + [o[-1], o[-2]]
        elif letter == "E" and rk == 6:
            img = [o[5], o[1], o[4], o[3], o[2], o[0]]
        else:
            img = o
        m.update(zip(o, img))
    return m


def span_roots(rs, seed):
    """All roots in the rational span of the given root indices."""
    seed = list(seed)
    if not seed:
        return frozenset()
    rows = [rs.roots[i].tolist() for i in seed]
    ann = nullspace_q(rows, rs.rank)
    if not ann:
        return frozenset(range(rs.nroots))
    a = np.array(ann, dtype=np.int64).T
    vals = rs.roots.astype(np.int64) @ a
    return frozenset(np.nonzero((vals == 0).all(axis=1))[0].tolist())


def subsystem_from_roots(rs, roots):
    """Decompose a closed, symmetric set of roots into irreducible components."""
    roots = frozenset(int(i) for i in roots)
    pos = sorted(i for i in roots if i < rs.npos)
    posset = set(pos)
    vecs = {i: tuple(int(c) for c in rs.roots[i]) for i in pos}
    base = []
    for i in pos:
        v = vecs[i]
        decomposable = False
        for j in pos:
            if j == i or rs.height(j) >= rs.height(i):
                continue
            w = tuple(a - b for a, b in zip(v, vecs[j]))
            k = rs.index.get(w)
            if k is not None and k in posset:
                decomposable = True
                break
        if not decomposable:
            base.append(i)
    p = rs.pairing_matrix
    comps = []
    left = list(base)
    while left:
        group = [left.pop(0)]
        changed = True
        while changed:
            changed = False
            for j in list(left):
                if any(p[j, g] != 0 for g in group):
                    group.append(j)
                    left.remove(j)
                    changed = True
        group.sort()
        sub = [[int(p[j, i]) for j in group] for i in group]
        # sub[i][j] = <alpha_j, alpha_i^vee> = a_ij
        letter, rk, order = identify_cartan_type(sub)
        cbase = tuple(group[k] for k in order)
        croots = span_roots(rs, cbase) & roots
        short = (letter == "A" and rs.letter in "BCFG"
                 and not rs.is_long(cbase[0]))
        comps.append(Component(letter, rk, cbase, frozenset(croots), short))
    comps.sort(key=lambda c: min(c.roots))
    return Subsystem(rs, roots, tuple(sorted(base)), tuple(comps))


def subsystem_span(rs, seed):
    """Root subsystem Phi cap span(seed), decomposed into labelled components."""
    seed = list(seed)
    for i in seed:
        if not 0 <= i < rs.nroots:
            raise IndexError(f"root index {i} out of range")
    return subsystem_from_roots(rs, span_roots(rs, seed))


def generated_subsystem(rs, seed):
    """Smallest subset closed under the reflections in ``seed`` containing ``seed``.

    For a set of independent roots that form a base (such as a subset of the
    extended base) this is the root system with that base.
    """
    seed = list(seed)
    if not seed:
        return subsystem_from_roots(rs, ())
    perms = [rs.reflection_perm(i) for i in seed]
    found = set(seed) | {rs.neg(i) for i in seed}
    frontier = list(found)
    while frontier:
        nxt = []
        for k in frontier:
            for p in perms:
                j = int(p[k])
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    return subsystem_from_roots(rs, found)


# ----------------------------------------------------------------------------
# serialisation


def format_vector(x):
    return ",".join(str(Fraction(v)) for v in x)


def parse_vector(s):
    s = s.strip()
    if not s:
        return ()
    return tuple(Fraction(t.strip()) for t in s.split(","))
