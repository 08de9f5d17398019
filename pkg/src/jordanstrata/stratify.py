"""Jordan triples, Jordan classes, closures, sheets and SL_n strata.

A Jordan class of G is the W-orbit of a triple (Pi', x_s, O): a pseudo-Levi
root subsystem, an admissible torus coset x_s + V_Pi' + Q^vee, and a unipotent
orbit of G_Pi'.  Orbits are recorded per classical factor of Phi_Pi' (see
``classical``), which is also how W transports them.

A point of G up to conjugacy is a GroupPoint (x_r, v): a rational coweight
and unipotent labels on the classical factors of Phi_r = {alpha : alpha(x_r)
integral}.  The closure of J(t) contains (x_r, v) iff for some w in W,
x_r lies in w(x_s + V) + Q^vee and v lies below the orbit induced from
(w Phi', w O) to Phi_r; the regular closure asks for equality instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm

import numpy as np

from .classical import (
    Factor, factors_of, format_factor, induce_embedded, is_classical, signed_perms,
    transport_labels,
)
from .core import RootSystem, format_vector
from .orbits import OrbitLabel, dominance_leq, is_rigid, orbit_dimension
from .pseudolevi import (
    PseudoLevi, TorusCoset, admissible_cosets, coset_admissible, enumerate_pseudo_levis,
    format_pseudo_levi, isolated_cosets, pseudo_levi,
)
from .weyl import (
    DEFAULT_BFS_CAP, DEFAULT_WEYL_CAP, apply_to_roots, coweight_matrices, enumerate_weyl,
)

__all__ = [
    "GuardError", "ExceptionalDataError", "JordanTriple", "GroupPoint", "StratumLabel",
    "jordan_triple", "group_point", "generic_point", "canonical_triple",
    "enumerate_jordan_classes", "is_sheet", "closure_contains_point",
    "regular_closure_contains", "closure_witness", "meets_unipotent",
    "isolated_points_in_regular_closure", "point_key", "central_translate", "sln_strata",
    "triple_to_dict", "point_to_dict", "DEFAULT_RANK_GUARD",
]

DEFAULT_RANK_GUARD = 5


class GuardError(ValueError):
    """Rank guard or unsupported ambient type."""


class ExceptionalDataError(ValueError):
    def __init__(self, msg="exceptional orbit data unsupported"):
        super().__init__(msg)


# ----------------------------------------------------------------------------
# labelled factors


def _trivial(f):
    return f.kind == "A" and f.size == 1


def _complete_labels(rs, roots, labels):
    """Pairs (Factor, OrbitLabel) for all factors of ``roots``.

    ``labels`` is None (zero orbits), a sequence aligned with all factors, a
    sequence aligned with the nontrivial factors, or a mapping Factor -> label.
    """
    if not is_classical(rs):
        if labels:
            raise ExceptionalDataError()
        return ()
    fs = factors_of(rs, roots)
    if labels is None:
        labs = [f.zero() for f in fs]
    elif isinstance(labels, dict):
        labs = [labels.get(f, f.zero()) for f in fs]
    else:
        labels = list(labels)
        if len(labels) == len(fs):
            labs = labels
        else:
            nontriv = [f for f in fs if not _trivial(f)]
            if len(labels) != len(nontriv):
                raise ValueError("orbit labels do not match the factors of the subsystem")
            it = iter(labels)
            labs = [f.zero() if _trivial(f) else next(it) for f in fs]
    out = []
    for f, lab in zip(fs, labs):
        if not isinstance(lab, OrbitLabel):
            raise TypeError("orbit labels must be OrbitLabel instances")
        if (lab.classical_type, lab.rank) != f.label_type:
            raise ValueError(f"label {lab} does not fit factor {format_factor(f)}")
        out.append((f, lab))
    return tuple(out)


def _orbit_key(pairs):
    return tuple((f, l.sort_key()) for f, l in pairs)


def _format_pairs(pairs):
    shown = [f"{format_factor(f)}:{l}" for f, l in pairs if not _trivial(f)]
    return " ".join(shown) if shown else "()"


def _orbit_dim(pairs):
    return sum(orbit_dimension(l) for _, l in pairs)


# ----------------------------------------------------------------------------
# triples and points


@dataclass(frozen=True, eq=False)
class JordanTriple:
    """(Pi', coset x_s + V + Q^vee, orbit pairs)."""

    pseudo_levi: PseudoLevi
    coset: TorusCoset
    orbit: tuple = ()

    @property
    def rs(self):
        return self.pseudo_levi.rs

    @property
    def x_s(self):
        return self.coset.base_point

    @property
    def factors(self):
        return tuple(f for f, _ in self.orbit)

    @property
    def labels(self):
        return tuple(l for _, l in self.orbit)

    @cached_property
    def key(self):
        return (self.pseudo_levi.subsystem.key, self.coset.key, _orbit_key(self.orbit))

    @cached_property
    def dimension(self):
        """dim J = dim G - dim M' + dim O + dim Z(M')."""
        rs = self.rs
        dim_m = len(self.pseudo_levi.roots) + rs.rank
        return rs.dimension() - dim_m + _orbit_dim(self.orbit) + (rs.rank - self.pseudo_levi.rank)

    @cached_property
    def class_orbit_dimension(self):
        """Dimension of the conjugacy classes in J."""
        return self.dimension - (self.rs.rank - self.pseudo_levi.rank)

    def __eq__(self, other):
        return isinstance(other, JordanTriple) and self.rs.name == other.rs.name \
            and self.key == other.key

    def __hash__(self):
        return hash((self.rs.name, self.key))

    def __str__(self):
        return (f"{format_pseudo_levi(self.pseudo_levi)} x_s={format_vector(self.x_s)} "
                f"O={_format_pairs(self.orbit)}")

    __repr__ = __str__


def jordan_triple(rs, pl, x_s=None, labels=None):
    """Build a validated triple; ``pl`` is a PseudoLevi or a tuple of base root indices."""
    if not isinstance(pl, PseudoLevi):
        pl = pseudo_levi(rs, pl)
    x_s = tuple(Fraction(0) for _ in range(rs.rank)) if x_s is None else \
        tuple(Fraction(v) for v in x_s)
    coset = TorusCoset(pl, x_s)
    if not coset_admissible(rs, pl, x_s):
        raise ValueError("coset not admissible: generic centraliser is larger than G_Pi")
    return JordanTriple(pl, coset, _complete_labels(rs, pl.roots, labels))


def _integral_roots(rs, x):
    return frozenset(i for i, v in enumerate(rs.pair_all(x)) if v.denominator == 1)


@dataclass(frozen=True, eq=False)
class GroupPoint:
    """A conjugacy class r v: semisimple coweight x_r and unipotent labels in C_G(r)."""

    rs: RootSystem = field(repr=False)
    semisimple: tuple
    unipotent: tuple = ()

    @cached_property
    def roots(self):
        return _integral_roots(self.rs, self.semisimple)

    @property
    def factors(self):
        return tuple(f for f, _ in self.unipotent)

    @property
    def labels(self):
        return tuple(l for _, l in self.unipotent)

    @cached_property
    def orbit_dimension(self):
        """Dimension of the conjugacy class of r v in G."""
        rs = self.rs
        return rs.dimension() - len(self.roots) - rs.rank + _orbit_dim(self.unipotent)

    def with_labels(self, labels):
        return GroupPoint(self.rs, self.semisimple,
                          _complete_labels(self.rs, self.roots, labels))

    def __str__(self):
        return f"({format_vector(self.semisimple)}, {_format_pairs(self.unipotent)})"

    __repr__ = __str__


def group_point(rs, x_r, labels=None):
    x_r = tuple(Fraction(v) for v in x_r)
    return GroupPoint(rs, x_r, _complete_labels(rs, _integral_roots(rs, x_r), labels))


def generic_point(t, seed=0):
    """A point of J(t) with generic semisimple part in x_s + V and orbit O."""
    rs, pl = t.rs, t.pseudo_levi
    basis = pl.center_subspace.basis
    primes = [10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079, 10091, 10093]
    for P in primes[seed % len(primes):] + primes[: seed % len(primes)]:
        x = list(t.x_s)
        for i, b in enumerate(basis):
            c = Fraction(1 + 31 * i + 7 * seed, P)
            x = [xi + c * bi for xi, bi in zip(x, b)]
        x = tuple(x)
        if _integral_roots(rs, x) == pl.roots:
            return GroupPoint(rs, x, t.orbit)
    raise RuntimeError("no generic point found")


# ----------------------------------------------------------------------------
# Weyl group context


class _Context:
    """The full Weyl group with permutations, signed permutations and coweight matrices."""

    def __init__(self, rs, cap):
        self.rs = rs
        self.table = enumerate_weyl(rs, cap)

    @cached_property
    def perms(self):
        return self.table.perms().astype(np.int64)

    @cached_property
    def inv_perms(self):
        p = self.perms
        inv = np.empty_like(p)
        rows = np.arange(len(p))[:, None]
        inv[rows, p] = np.arange(p.shape[1])[None, :]
        return inv

    @cached_property
    def signed(self):
        return signed_perms(self.rs, self.perms)

    @cached_property
    def cowmats(self):
        return coweight_matrices(self.rs, self.perms)

    def act(self, k, x):
        """w_k x for a rational coweight."""
        m = self.cowmats[k]
        return tuple(sum((int(m[j, i]) * Fraction(x[i]) for i in range(self.rs.rank)),
                         Fraction(0)) for j in range(self.rs.rank))

    def transport(self, k, pairs):
        pi, sg = self.signed
        return transport_labels([f for f, _ in pairs], [l for _, l in pairs], pi[k], sg[k])

    def stabilizer(self, roots):
        roots = sorted(roots)
        if not roots:
            return np.arange(len(self.table))
        mask = np.zeros(self.rs.nroots, dtype=bool)
        mask[roots] = True
        return np.nonzero(mask[self.perms[:, roots]].all(axis=1))[0]

    def mapping(self, src, dst):
        """Index of the first element mapping root set ``src`` onto ``dst`` (or -1)."""
        src = sorted(src)
        if len(src) != len(dst):
            return -1
        if not src:
            return 0
        mask = np.zeros(self.rs.nroots, dtype=bool)
        mask[sorted(dst)] = True
        hit = np.nonzero(mask[self.perms[:, src]].all(axis=1))[0]
        return int(hit[0]) if len(hit) else -1


_CONTEXTS = {}


def _context(rs, cap=DEFAULT_WEYL_CAP):
    key = (rs.name, cap)
    if key not in _CONTEXTS:
        _CONTEXTS[key] = _Context(rs, cap)
    return _CONTEXTS[key]


@lru_cache(maxsize=None)
def _class_reps(name, cap):
    from .core import build_root_system
    return tuple(enumerate_pseudo_levis(build_root_system(name), cap))


def _check_classical(rs, guard):
    if not is_classical(rs):
        raise GuardError(f"{rs.name}: exceptional ambient type unsupported here")
    if guard is not None and rs.rank > guard:
        raise GuardError(f"{rs.name}: rank {rs.rank} exceeds rank guard {guard}")


# ----------------------------------------------------------------------------
# canonical form and enumeration


def _coset_key_under(ctx, k, pl, x):
    """Coset key of w_k x relative to ``pl``: base values (w^-1 beta)(x)."""
    vals = ctx.rs.pair_all(x)
    inv = ctx.inv_perms[k]
    y = [vals[int(inv[b])] for b in pl.base]
    return pl.value_lattice.reduce([int(v) for v in y])


def _orbit_under_stab(ctx, pl, x, pairs, stab):
    """Map (coset key, orbit key) -> (element index, transported pairs) over the stabilizer."""
    out = {}
    for k in stab.tolist():
        ck = _coset_key_under(ctx, k, pl, x)
        tp = ctx.transport(k, pairs) if pairs else ()
        key = (ck, _orbit_key(tp))
        if key not in out:
            out[key] = (k, tp)
    return out


def _rep_for(ctx, pl, bfs_cap):
    """Class representative of Phi_pl and the index of an element mapping pl onto it."""
    sub = pl.subsystem
    for rep in _class_reps(ctx.rs.name, bfs_cap):
        rsub = rep.subsystem
        if rsub.type_multiset != sub.type_multiset or len(rep.base) != len(pl.base):
            continue
        k = ctx.mapping(sub.roots, rsub.roots)
        if k >= 0:
            return rep, k
    raise ValueError("pseudo-Levi subsystem not conjugate to a standard one")


def _make_canonical(rep, ckey, pairs):
    lat = rep.value_lattice
    coset = TorusCoset(rep, _point_from_key(rep, ckey))
    return JordanTriple(rep, coset, pairs)


def _point_from_key(pl, key):
    from .pseudolevi import _inverse_unimodular
    n = len(pl.base)
    if n == 0:
        return tuple(Fraction(0) for _ in range(pl.rs.rank))
    U, _ = pl.value_lattice.snf
    uinv = np.array(_inverse_unimodular(U), dtype=object)
    y = uinv.dot(np.array(key[:n], dtype=object))
    return pl.lift([int(v) for v in y])


def canonical_triple(rs, t, weyl_cap=DEFAULT_WEYL_CAP, bfs_cap=DEFAULT_BFS_CAP):
    """Canonical representative of the W-orbit of ``t``.

    The subsystem is moved to its class representative (a standard position),
    then (coset key, orbit key) is minimised over the stabilizer of that
    subsystem.
    """
    ctx = _context(rs, weyl_cap)
    rep, k = _rep_for(ctx, t.pseudo_levi, bfs_cap)
    x = ctx.act(k, t.x_s)
    pairs = ctx.transport(k, t.orbit) if t.orbit else ()
    stab = ctx.stabilizer(rep.roots)
    orb = _orbit_under_stab(ctx, rep, x, pairs, stab)
    key = min(orb)
    return _make_canonical(rep, key[0], orb[key][1])


def enumerate_jordan_classes(rs, max_rank_guard=DEFAULT_RANK_GUARD, weyl_cap=DEFAULT_WEYL_CAP,
                             bfs_cap=DEFAULT_BFS_CAP):
    """All Jordan classes of a classical simply connected group, as canonical triples."""
    _check_classical(rs, max_rank_guard)
    ctx = _context(rs, weyl_cap)
    out = []
    for rep in _class_reps(rs.name, bfs_cap):
        stab = ctx.stabilizer(rep.roots)
        fs = factors_of(rs, rep.roots)
        choices = [[f.zero()] if _trivial(f) else f.labels() for f in fs]
        seen = set()
        for coset in admissible_cosets(rs, rep):
            for labs in itertools.product(*choices):
                pairs = tuple(zip(fs, labs))
                if (coset.key, _orbit_key(pairs)) in seen:
                    continue
                orb = _orbit_under_stab(ctx, rep, coset.base_point, pairs, stab)
                seen.update(orb)
                key = min(orb)
                out.append(_make_canonical(rep, key[0], orb[key][1]))
    return out


def is_sheet(t):
    """True iff every factor orbit is rigid (J(t) is dense in a sheet)."""
    if not is_classical(t.rs):
        raise ExceptionalDataError()
    return all(is_rigid(l) for _, l in t.orbit)


# ----------------------------------------------------------------------------
# closures


def _scaled(x):
    x = [Fraction(v) for v in x]
    d = lcm(*[v.denominator for v in x]) if x else 1
    return d, np.array([int(v * d) for v in x], dtype=np.int64)


def w_tau_r_mask(rs, t, x_r, images, chunk=200000):
    """Boolean mask of elements (given by simple-root images) with x_r in w(x_s + V) + Q^vee."""
    pl = t.pseudo_levi
    m = len(images)
    if not pl.base:
        return np.ones(m, dtype=bool)
    d, num = _scaled(x_r)
    vals = rs.roots.astype(np.int64) @ num
    ys = np.array([int(v) * d for v in pl.values(t.x_s)], dtype=np.int64)
    out = np.zeros(m, dtype=bool)
    for s in range(0, m, chunk):
        img = apply_to_roots(rs, images[s:s + chunk], pl.base)
        a = vals[img] - ys[None, :]
        ok = (a % d == 0).all(axis=1)
        idx = np.nonzero(ok)[0]
        if len(idx):
            out[s + idx] = pl.value_lattice.contains_many(a[idx] // d)
    return out


def _label_test(rs, t, p, signed, candidates, regular, first=False):
    """Indices among ``candidates`` whose transported orbit induces onto p suitably."""
    if not is_classical(rs):
        raise ExceptionalDataError()
    pi, sg = signed
    outer = p.factors
    cache = {}
    hits = []
    fs, ls = t.factors, t.labels
    for k in candidates:
        tp = transport_labels(fs, ls, pi[k], sg[k])
        ck = _orbit_key(tp)
        if ck not in cache:
            ind = induce_embedded(rs, outer, tp)
            if regular:
                ok = all(a == b for a, b in zip(p.labels, ind))
            else:
                ok = all(dominance_leq(a, b) for a, b in zip(p.labels, ind))
            cache[ck] = ok
        if cache[ck]:
            hits.append(k)
            if first:
                break
    return hits


def _closure_hits(t, p, regular, first, weyl_cap, group=None):
    rs = t.rs
    if group is None:
        ctx = _context(rs, weyl_cap)
        images, signed = ctx.table.images, ctx.signed
    else:
        images = group.images
        signed = signed_perms(rs, group.perms())
    mask = w_tau_r_mask(rs, t, p.semisimple, images)
    cand = np.nonzero(mask)[0].tolist()
    if not cand:
        return []
    return _label_test(rs, t, p, signed, cand, regular, first)


def closure_contains_point(t, p, weyl_cap=DEFAULT_WEYL_CAP, group=None):
    """Whether the class of p lies in the closure of J(t).

    ``group`` restricts the search to a subgroup table (e.g. W_r for closures
    inside a centraliser M).
    """
    return bool(_closure_hits(t, p, False, True, weyl_cap, group))


def regular_closure_contains(t, p, weyl_cap=DEFAULT_WEYL_CAP, group=None):
    """Whether the class of p lies in the regular closure of J(t)."""
    return bool(_closure_hits(t, p, True, True, weyl_cap, group))


def closure_witness(t, p, weyl_cap=DEFAULT_WEYL_CAP):
    """First Weyl element (in W's canonical order) witnessing containment, or None."""
    hits = _closure_hits(t, p, False, True, weyl_cap)
    return _context(t.rs, weyl_cap).table.element(hits[0]) if hits else None


def meets_unipotent(t):
    """True iff G_Pi' is a Levi subgroup and the coset is the identity coset."""
    pl = t.pseudo_levi
    zero = tuple(0 for _ in range(len(pl.base)))
    return pl.is_levi_flag and t.coset.key == pl.value_lattice.reduce(zero)


# ----------------------------------------------------------------------------
# points up to conjugacy


@lru_cache(maxsize=None)
def _coroot_adjugate(rs):
    from sympy import Matrix
    c = Matrix(np.asarray(rs.coroot_coweights)[: rs.rank].tolist())
    f = abs(int(c.det()))
    adj = np.array((c.inv() * f).tolist(), dtype=np.int64)
    return f, adj


def point_key(p, weyl_cap=DEFAULT_WEYL_CAP):
    """Canonical key of the conjugacy class of a point (min over W, x_r taken mod Q^vee)."""
    rs = p.rs
    ctx = _context(rs, weyl_cap)
    f, adj = _coroot_adjugate(rs)
    d, num = _scaled(p.semisimple)
    mod = d * f
    # coroot coordinates of w x, scaled by d f, reduced mod d f
    wx = np.einsum("mji,i->mj", ctx.cowmats, num)
    c = (wx @ adj) % mod
    keys = [tuple(row) for row in c.tolist()]
    best = min(keys)
    cands = [k for k, key in enumerate(keys) if key == best]
    lab = min(_orbit_key(ctx.transport(k, p.unipotent)) for k in cands) if p.unipotent else ()
    return (rs.name, d, best, lab)


def isolated_points_in_regular_closure(t, max_rank_guard=DEFAULT_RANK_GUARD,
                                       weyl_cap=DEFAULT_WEYL_CAP, bfs_cap=DEFAULT_BFS_CAP):
    """Isolated classes (full-rank centraliser) lying in the regular closure of J(t)."""
    rs = t.rs
    _check_classical(rs, max_rank_guard)
    found = {}
    for rep in _class_reps(rs.name, bfs_cap):
        if rep.rank < rs.rank:
            continue
        fs = factors_of(rs, rep.roots)
        choices = [[f.zero()] if _trivial(f) else f.labels() for f in fs]
        for coset in isolated_cosets(rs, rep):
            x = coset.canonical_point
            for labs in itertools.product(*choices):
                p = GroupPoint(rs, x, tuple(zip(fs, labs)))
                if regular_closure_contains(t, p, weyl_cap):
                    found.setdefault(point_key(p, weyl_cap), p)
    return [found[k] for k in sorted(found)]


# ----------------------------------------------------------------------------
# SL_n strata


@dataclass(frozen=True)
class StratumLabel:
    """Union of the central translates k S of a sheet S."""

    sheet: JordanTriple
    translates: tuple
    disjoint: bool

    @property
    def components(self):
        return len(self.translates)


def central_translate(t, k=1, weyl_cap=DEFAULT_WEYL_CAP):
    """Translate J(t) by z^k, z the generator of the centre of SL_n (canonicalised)."""
    rs = t.rs
    if rs.letter != "A":
        raise GuardError("central translation implemented for type A")
    z = [Fraction(0)] * rs.rank
    z[0] = Fraction(k)
    x = tuple(a + b for a, b in zip(t.x_s, z))
    nt = JordanTriple(t.pseudo_levi, TorusCoset(t.pseudo_levi, x), t.orbit)
    return canonical_triple(rs, nt, weyl_cap)


def sln_strata(n, guard=6, weyl_cap=DEFAULT_WEYL_CAP):
    """Sheets of SL_n grouped into strata by central translation."""
    if n < 2 or n > guard:
        raise GuardError(f"SL_{n}: n must lie in 2..{guard}")
    from .core import build_root_system
    rs = build_root_system(f"A{n - 1}")
    sheets = [t for t in enumerate_jordan_classes(rs, max_rank_guard=guard, weyl_cap=weyl_cap)
              if is_sheet(t)]
    done = set()
    out = []
    for s in sheets:
        if s in done:
            continue
        orbit = []
        for k in range(n):
            u = central_translate(s, k, weyl_cap)
            if u not in orbit:
                orbit.append(u)
        done.update(orbit)
        iso = [{point_key(p, weyl_cap) for p in isolated_points_in_regular_closure(
            u, max_rank_guard=guard, weyl_cap=weyl_cap)} for u in orbit]
        disjoint = all(not (a & b) for a, b in itertools.combinations(iso, 2))
        out.append(StratumLabel(s, tuple(orbit), disjoint))
    return out


# ----------------------------------------------------------------------------
# serialisation


def triple_to_dict(t):
    d = {
        "pi": format_pseudo_levi(t.pseudo_levi),
        "type": t.pseudo_levi.type_label,
        "coset": format_vector(t.x_s),
        "orbits": [f"{format_factor(f)}:{l}" for f, l in t.orbit if not _trivial(f)],
        "dim": t.dimension,
    }
    if is_classical(t.rs):
        d["is_sheet"] = is_sheet(t)
    return d


def point_to_dict(p):
    return {
        "semisimple": format_vector(p.semisimple),
        "unipotent": [f"{format_factor(f)}:{l}" for f, l in p.unipotent if not _trivial(f)],
    }
