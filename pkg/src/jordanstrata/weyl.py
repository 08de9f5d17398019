"""Weyl groups as permutation groups of the root list.

A Weyl group element is determined by the images of the simple roots, so
tables store that short integer array per element and expand to full root
permutations on demand.  This keeps W(E7) (2,903,040 elements) in memory.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import WEYL_ORDERS, RootSystem, Subsystem, RationalSubspace, nullspace_q

__all__ = [
    "CapExceeded", "WeylElement", "WeylGroupTable", "enumerate_weyl",
    "reflection_subgroup", "subsystem_orbit", "subsystem_orbit_conjugate",
    "setwise_stabilizer", "double_coset_count", "root_codes", "apply_to_roots",
    "identity", "simple_reflection", "reflection", "element_from_word", "coweight_matrices",
    "DEFAULT_WEYL_CAP", "DEFAULT_BFS_CAP",
]

DEFAULT_WEYL_CAP = 10 ** 7
DEFAULT_BFS_CAP = 5 * 10 ** 6


class CapExceeded(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class _RootCoder:
    """Vectorised map from root coordinate vectors to root indices."""

    def __init__(self, rs):
        self.m = int(np.abs(rs.roots).max())
        self.base = 2 * self.m + 1
        self.weights = self.base ** np.arange(rs.rank, dtype=np.int64)
        codes = self.encode(rs.roots)
        self.order = np.argsort(codes)
        self.sorted_codes = codes[self.order]

    def encode(self, vecs):
        return (np.asarray(vecs, dtype=np.int64) + self.m) @ self.weights

    def lookup(self, vecs):
        codes = self.encode(vecs)
        pos = np.searchsorted(self.sorted_codes, codes)
        pos = np.minimum(pos, len(self.sorted_codes) - 1)
        if not np.array_equal(self.sorted_codes[pos], codes):
            raise ValueError("vector is not a root")
        return self.order[pos]


_CODERS = {}


def root_codes(rs):
    if rs.name not in _CODERS:
        _CODERS[rs.name] = _RootCoder(rs)
    return _CODERS[rs.name]


def perms_from_images(rs, images):
    """Full root permutations for an (m, rank) array of simple-root images."""
    images = np.asarray(images)
    single = images.ndim == 1
    images = np.atleast_2d(images)
    r = rs.roots.astype(np.int64)
    imv = r[images]                       # (m, rank, rank)
    vecs = np.einsum("kj,mjl->mkl", r, imv)  # (m, nroots, rank)
    out = root_codes(rs).lookup(vecs.reshape(-1, rs.rank)).reshape(len(images), -1)
    out = out.astype(np.int32)
    return out[0] if single else out


def _keys(rs, images):
    images = np.asarray(images, dtype=np.int64)
    w = rs.nroots ** np.arange(images.shape[-1], dtype=np.int64)
    if float(rs.nroots) ** rs.rank >= 2 ** 62:
        raise OverflowError("element keys do not fit in 64 bits")
    return images @ w


def element_length(rs, perm):
    return int((np.asarray(perm)[: rs.npos] >= rs.npos).sum())


def reduced_word(rs, perm):
    """Lexicographically least reduced word (1-based generator labels)."""
    perm = np.array(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    word = []
    sperm = rs.simple_reflection_perms
    while True:
        # left descent i: w^{-1}(alpha_i) < 0
        d = next((i for i in range(rs.rank) if inv[i] >= rs.npos), None)
        if d is None:
            return tuple(word)
        word.append(d + 1)
        # w <- s_d w, so w^{-1} <- w^{-1} s_d
        inv = inv[sperm[d]]


@dataclass(frozen=True, eq=False)
class WeylElement:
    rs: RootSystem = field(repr=False)
    perm: np.ndarray = field(repr=False)

    @cached_property
    def word(self):
        return reduced_word(self.rs, self.perm)

    @property
    def length(self):
        return element_length(self.rs, self.perm)

    @property
    def images(self):
        return self.perm[: self.rs.rank]

    @cached_property
    def key(self):
        return int(_keys(self.rs, self.images))

    def __mul__(self, other):
        return WeylElement(self.rs, self.perm[other.perm])

    def inverse(self):
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm), dtype=self.perm.dtype)
        return WeylElement(self.rs, inv)

    def __call__(self, root_index):
        return int(self.perm[root_index])

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def sort_key(self):
        return (len(self.word), self.word)

    def act_coweight(self, x):
        """Image of a rational coweight: (w x)_j = alpha_j(w x) = (w^{-1} alpha_j)(x)."""
        inv = self.inverse().perm
        return tuple(self.rs.pair(int(inv[j]), x) for j in range(self.rs.rank))

    def __repr__(self):
        return "WeylElement(" + (" ".join(f"s{i}" for i in self.word) or "e") + ")"

    def __str__(self):
        return " ".join(f"s{i}" for i in self.word) or "e"


def identity(rs):
    return WeylElement(rs, np.arange(rs.nroots, dtype=np.int32))


def simple_reflection(rs, i):
    """Simple reflection s_i, 1-based as in Bourbaki labels."""
    return WeylElement(rs, rs.simple_reflection_perms[i - 1].astype(np.int32))


def reflection(rs, root_index):
    return WeylElement(rs, rs.reflection_perm(root_index).astype(np.int32))


def element_from_word(rs, word):
    w = identity(rs)
    for i in word:
        w = w * simple_reflection(rs, int(i))
    return w


class WeylGroupTable:
    """Finite set of Weyl group elements stored as simple-root images.

    ``images[k]`` lists the root indices of the images of the simple roots
    under element ``k``.  Elements are kept in a deterministic order, and
    ``gens`` holds generator elements (simple reflections, or the reflections
    generating a reflection subgroup).
    """

    def __init__(self, rs, images, gens, cap=DEFAULT_WEYL_CAP, sort=True):
        self.rs = rs
        images = np.asarray(images, dtype=np.int16).reshape(-1, rs.rank)
        keys = _keys(rs, images)
        if sort:
            order = self._canonical_order(images)
            images, keys = images[order], keys[order]
        self.images = images
        self.keys = keys
        self._sorted = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._sorted]
        self._gens = list(gens) if gens is not None else None
        self.cap = cap

    @property
    def gens(self):
        if self._gens is None:
            self._gens = self._small_generating_set()
        return self._gens

    def _small_generating_set(self):
        """Greedy generating set: add the first element not yet generated."""
        rs = self.rs
        gens = []
        reached = {int(_keys(rs, np.arange(rs.rank)))}
        elems = [np.arange(rs.rank, dtype=np.int64)]
        for k in range(len(self)):
            if int(self.keys[k]) in reached:
                continue
            gens.append(self.element(k))
            # close up under left multiplication by all generators
            gperm = [g.perm.astype(np.int64) for g in gens]
            frontier = np.array(elems)
            while len(frontier):
                nxt = []
                for p in gperm:
                    new = p[frontier]
                    for row, kk in zip(new, _keys(rs, new).tolist()):
                        if kk not in reached:
                            reached.add(kk)
                            nxt.append(row)
                elems.extend(nxt)
                frontier = np.array(nxt)
            if len(reached) == len(self):
                break
        return gens

    def _canonical_order(self, images):
        perms = perms_from_images(self.rs, images)
        words = [reduced_word(self.rs, p) for p in perms]
        return np.array(sorted(range(len(words)), key=lambda k: (len(words[k]), words[k])),
                        dtype=np.int64)

    def __len__(self):
        return len(self.images)

    @property
    def order(self):
        return len(self.images)

    def perm(self, k):
        return perms_from_images(self.rs, self.images[k])

    def perms(self, idx=None, chunk=None):
        """Full permutations for the given indices (all by default)."""
        idx = np.arange(len(self)) if idx is None else np.asarray(idx)
        return perms_from_images(self.rs, self.images[idx])

    def iter_perm_chunks(self, chunk=65536):
        for start in range(0, len(self), chunk):
            idx = np.arange(start, min(start + chunk, len(self)))
            yield idx, perms_from_images(self.rs, self.images[idx])

    def element(self, k):
        return WeylElement(self.rs, self.perm(k))

    def __iter__(self):
        for _, perms in self.iter_perm_chunks():
            for p in perms:
                yield WeylElement(self.rs, p)

    @property
    def elements(self):
        return list(self)

    def index_of_keys(self, keys):
        keys = np.asarray(keys, dtype=np.int64)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        found = self._sorted_keys[pos] == keys
        return np.where(found, self._sorted[pos], -1)

    def index_of(self, w):
        return int(self.index_of_keys([w.key])[0])

    def __contains__(self, w):
        return self.index_of(w) >= 0

    def subset(self, mask_or_idx, gens=None):
        """Sub-table on the selected elements, keeping the ambient order."""
        sel = np.asarray(mask_or_idx)
        if sel.dtype == bool:
            sel = np.nonzero(sel)[0]
        t = WeylGroupTable.__new__(WeylGroupTable)
        t.rs = self.rs
        t.images = self.images[sel]
        t.keys = self.keys[sel]
        t._sorted = np.argsort(t.keys, kind="stable")
        t._sorted_keys = t.keys[t._sorted]
        t._gens = list(gens) if gens is not None else None
        t.cap = self.cap
        return t

    def __repr__(self):
        return f"WeylGroupTable({self.rs.name}, order={len(self)})"


def enumerate_weyl(rs, cap=DEFAULT_WEYL_CAP):
    """All of W, ordered by length and then lexicographic reduced word."""
    expected = WEYL_ORDERS[rs.letter](rs.rank)
    if expected > cap:
        raise CapExceeded(f"group exceeds cap: |W({rs.name})| = {expected} > {cap}")
    a = np.array(rs.cartan, dtype=np.int64)
    coder = root_codes(rs)
    roots = rs.roots.astype(np.int64)
    layer = np.arange(rs.rank, dtype=np.int64)[None, :]
    layers = [layer]
    total = 1
    while True:
        cand = []
        vec = roots[layer]  # (m, rank, rank): vec[k, j] = w_k(alpha_j)
        for i in range(rs.rank):
            # right multiplication by s_i increases length iff w(alpha_i) > 0
            ok = layer[:, i] < rs.npos
            new = vec - a[i][:, None][None, :, :] * vec[:, i][:, None, :]
            idx = coder.lookup(new.reshape(-1, rs.rank)).reshape(len(layer), rs.rank)
            idx = np.where(ok[:, None], idx, -1)
            cand.append(idx)
        # parent-major, generator-minor order gives lex-min words on first occurrence
        cand = np.stack(cand, axis=1).reshape(-1, rs.rank)
        cand = cand[cand[:, 0] >= 0]
        if not len(cand):
            break
        keys = _keys(rs, cand)
        _, first = np.unique(keys, return_index=True)
        layer = cand[np.sort(first)]
        total += len(layer)
        if total > cap:
            raise CapExceeded(f"group exceeds cap: more than {cap} elements", total)
        layers.append(layer)
    images = np.concatenate(layers)
    if len(images) != expected:
        raise AssertionError("Weyl group order mismatch")
    gens = [simple_reflection(rs, i + 1) for i in range(rs.rank)]
    return WeylGroupTable(rs, images, gens, cap, sort=False)


def reflection_subgroup(rs, roots, cap=DEFAULT_WEYL_CAP):
    """Subgroup generated by the reflections in the given root indices."""
    gens = []
    seen = set()
    for r in sorted(set(int(i) for i in roots)):
        g = reflection(rs, r)
        if g.key not in seen:
            seen.add(g.key)
            gens.append(g)
    start = np.arange(rs.rank, dtype=np.int64)[None, :]
    found = {int(_keys(rs, start)[0])}
    frontier = start
    allimg = [start]
    gperm = [g.perm.astype(np.int64) for g in gens]
    while len(frontier):
        nxt = []
        for p in gperm:
            new = p[frontier]
            k = _keys(rs, new)
            fresh = [j for j, kk in enumerate(k.tolist()) if kk not in found]
            for j in fresh:
                found.add(int(k[j]))
            if fresh:
                nxt.append(new[fresh])
        frontier = np.concatenate(nxt) if nxt else np.zeros((0, rs.rank), dtype=np.int64)
        if len(frontier):
            allimg.append(frontier)
        if len(found) > cap:
            raise CapExceeded(f"group exceeds cap: more than {cap} elements", len(found))
    return WeylGroupTable(rs, np.concatenate(allimg), gens, cap, sort=True)


# ----------------------------------------------------------------------------
# orbits of root subsystems


def _mask(rs, roots):
    m = np.zeros(rs.nroots, dtype=bool)
    m[list(roots)] = True
    return m


def _prefilter_label(sub):
    return sub.type_multiset


def subsystem_orbit(rs, roots, cap=DEFAULT_BFS_CAP, stop=None):
    """Orbit of a root set under W, as a list of sorted positive-index keys.

    Breadth-first search over simple reflections on boolean root masks.  If
    ``stop`` (a packed mask) is met the search ends early and returns it.
    """
    start = _mask(rs, roots)
    inv = []
    for p in rs.simple_reflection_perms:
        q = np.empty_like(p)
        q[p] = np.arange(len(p))
        inv.append(q)
    seen = {np.packbits(start).tobytes()}
    frontier = start[None, :]
    out = [start]
    while len(frontier):
        nxt = []
        for q in inv:
            new = frontier[:, q]
            packed = np.packbits(new, axis=1)
            for j in range(len(new)):
                b = packed[j].tobytes()
                if b not in seen:
                    seen.add(b)
                    nxt.append(new[j])
                    if stop is not None and b == stop:
                        return None, True
        if len(seen) > cap:
            raise CapExceeded(f"orbit exceeds BFS cap {cap}: partial size {len(seen)}",
                              len(seen))
        frontier = np.array(nxt) if nxt else np.zeros((0, rs.nroots), dtype=bool)
        out.extend(nxt)
    keys = sorted(tuple(int(i) for i in np.nonzero(m[: rs.npos])[0]) for m in out)
    return keys, False


def subsystem_orbit_conjugate(rs, s1, s2, cap=DEFAULT_BFS_CAP):
    """Decide whether some w in W maps the root set of ``s1`` onto that of ``s2``."""
    r1 = s1.roots if isinstance(s1, Subsystem) else frozenset(s1)
    r2 = s2.roots if isinstance(s2, Subsystem) else frozenset(s2)
    if r1 == r2:
        return True
    if len(r1) != len(r2):
        return False
    if isinstance(s1, Subsystem) and isinstance(s2, Subsystem):
        if _prefilter_label(s1) != _prefilter_label(s2):
            return False
    target = np.packbits(_mask(rs, r2)).tobytes()
    _, hit = subsystem_orbit(rs, r1, cap, stop=target)
    return hit


# ----------------------------------------------------------------------------
# stabilizers and double cosets


def coweight_matrices(rs, perms):
    """Matrices of the elements on fundamental-coweight coordinates.

    Row j of ``M`` gives ``(w x)_j = (w^{-1} alpha_j)(x)``, so ``M[j] = roots[w^{-1}(j)]``.
    """
    perms = np.atleast_2d(perms)
    inv = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    inv[rows, perms] = np.arange(perms.shape[1])[None, :]
    return rs.roots.astype(np.int64)[inv[:, : rs.rank]]


def setwise_stabilizer(wt, target):
    """Elements of ``wt`` preserving a root set or a rational subspace."""
    rs = wt.rs
    keep = np.zeros(len(wt), dtype=bool)
    if isinstance(target, RationalSubspace):
        basis = np.array(target.basis, dtype=object) if target.basis else None
        ann = np.array(target.annihilator, dtype=object) if target.annihilator else None
        for idx, perms in wt.iter_perm_chunks():
            if basis is None or ann is None:
                keep[idx] = True
                continue
            mats = coweight_matrices(rs, perms).astype(object)
            for k, m in zip(idx, mats):
                keep[k] = not (ann.dot(m.dot(basis.T)) != 0).any()
    else:
        if isinstance(target, Subsystem):
            target = target.roots
        mask = _mask(rs, target)
        for idx, perms in wt.iter_perm_chunks():
            keep[idx] = mask[perms][:, mask].all(axis=1) if mask.any() else True
    return wt.subset(keep)


def apply_to_roots(rs, images, root_idx):
    """Images of the given roots under elements given by simple-root images.

    Returns an array of shape (len(images), len(root_idx)).
    """
    images = np.atleast_2d(np.asarray(images, dtype=np.int64))
    coeffs = rs.roots[np.asarray(root_idx, dtype=np.int64)].astype(np.int64)  # (k, rank)
    r = rs.roots.astype(np.int64)
    imv = r[images]  # (m, rank, rank)
    vecs = np.einsum("kj,mjl->mkl", coeffs, imv)
    out = root_codes(rs).lookup(vecs.reshape(-1, rs.rank))
    return out.reshape(len(images), len(root_idx))


def _as_images(rs, group):
    if isinstance(group, WeylGroupTable):
        return group.images.astype(np.int64)
    group = list(group)
    if not group:
        return np.zeros((0, rs.rank), dtype=np.int64)
    return np.array([g.images for g in group], dtype=np.int64)


def double_coset_count(left, middle, right, rs=None):
    """Orbits of left x right on ``middle`` via (a, b).x = a x b^-1.

    ``middle`` is a WeylGroupTable or an iterable of WeylElements; ``left``
    and ``right`` are tables (their generators are used) or element lists.
    Returns the number of orbits and one representative per orbit, the
    minimal element in the order (length, lex-min reduced word).
    """
    if rs is None:
        for g in (middle, left, right):
            if isinstance(g, WeylGroupTable):
                rs = g.rs
                break
        else:
            elems = list(middle) + list(left) + list(right)
            if not elems:
                return 0, []
            rs = elems[0].rs
    img = _as_images(rs, middle)
    n = len(img)
    if n == 0:
        return 0, []
    keys = _keys(rs, img)
    order = np.argsort(keys)
    skeys = keys[order]

    def locate(newkeys):
        pos = np.searchsorted(skeys, newkeys)
        pos = np.minimum(pos, n - 1)
        ok = skeys[pos] == newkeys
        return np.where(ok, order[pos], -1)

    parent = np.arange(n)

    def find(i):
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def union_all(targets):
        if (targets < 0).any():
            raise ValueError("not a (left,right)-stable set")
        src = np.arange(n)
        for i, j in zip(src.tolist(), targets.tolist()):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)

    for a in _generators(left):
        union_all(locate(_keys(rs, a.perm[img])))
    for b in _generators(right):
        # (x b)(alpha_j) = x(b(alpha_j))
        union_all(locate(_keys(rs, apply_to_roots(rs, img, b.perm[: rs.rank]))))
    roots_ = np.array([find(i) for i in range(n)])
    classes = {}
    for i, r in enumerate(roots_.tolist()):
        classes.setdefault(r, []).append(i)
    reps = []
    for members in classes.values():
        perms = perms_from_images(rs, img[members])
        best = min(range(len(members)), key=lambda k: (element_length(rs, perms[k]),
                                                        reduced_word(rs, perms[k])))
        reps.append(WeylElement(rs, perms[best].astype(np.int32)))
    reps.sort(key=lambda w: w.sort_key())
    return len(reps), reps


def _generators(group):
    if isinstance(group, WeylGroupTable):
        return group.gens
    return list(group)
