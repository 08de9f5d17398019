"""Matrix model of so(2k) used to check very even tags of induced orbits.

V has basis e_1..e_k, f_1..f_k with B(e_i, f_j) = delta_ij.  A Levi of gl
blocks on signed coordinate sets plus a D tail is the centraliser of a
grading element h; a random element of x_L + u is in the induced orbit with
high probability.  The tag of a very even nilpotent X is the family of the
Lagrangian L_X = sum_j (im X^j cap ker X^j) relative to span(e_1..e_k).
"""

import random
from fractions import Fraction

from jordanstrata.core import nullspace_q, rank_q


def matmul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(m) if a[i][t]) for j in range(p)]
            for i in range(n)]


def zeros(n):
    return [[0] * n for _ in range(n)]


def coord(k, i, sign):
    """Index of e_i (sign +1) or f_i (sign -1), 0-based i."""
    return i if sign > 0 else k + i


def root_vector(k, a, b):
    """Element of so(2k) mapping basis vector b to basis vector a (and its partner)."""
    n = 2 * k
    x = zeros(n)
    partner = lambda t: t + k if t < k else t - k
    x[a][b] += 1
    x[partner(b)][partner(a)] -= 1
    return x


def add(a, b, c=1):
    return [[a[i][j] + c * b[i][j] for j in range(len(a))] for i in range(len(a))]


def grading(k, blocks, tail):
    """Weights of basis vectors: block j gets weight j+1 times the sign, tail 0."""
    w = [0] * (2 * k)
    for j, block in enumerate(blocks):
        for i, s in block:
            w[i] = s * (j + 1)
            w[i + k] = -s * (j + 1)
    return w


def positive_part_basis(k, w):
    """Root vectors of so(2k) of positive weight for the grading w."""
    out = []
    n = 2 * k
    seen = set()
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            x = root_vector(k, a, b)
            if all(v == 0 for row in x for v in row):
                continue
            key = tuple(tuple(r) for r in x)
            neg = tuple(tuple(-v for v in r) for r in x)
            if key in seen or neg in seen:
                continue
            if w[a] - w[b] > 0:
                seen.add(key)
                out.append(x)
    return out


def gl_nilpotent(k, block, parts):
    """Nilpotent of Jordan type ``parts`` in the gl of a signed block."""
    vecs = [coord(k, i, s) for i, s in block]
    x = zeros(2 * k)
    pos = 0
    for p in parts:
        chain = vecs[pos:pos + p]
        for t in range(1, p):
            x = add(x, root_vector(k, chain[t - 1], chain[t]))
        pos += p
    return x


def richardson_element(k, blocks, block_parts, tail_idx, tail_elem=None, rng=None):
    """Random element of x_L + u for the given signed blocks and tail element."""
    rng = rng or random.Random(1)
    w = grading(k, blocks, tail_idx)
    x = zeros(2 * k) if tail_elem is None else tail_elem
    for block, parts in zip(blocks, block_parts):
        x = add(x, gl_nilpotent(k, block, parts))
    for r in positive_part_basis(k, w):
        x = add(x, r, rng.randint(-9, 9))
    return x


def jordan_type(x):
    n = len(x)
    ranks = [n]
    p = x
    while ranks[-1] > 0:
        ranks.append(rank_q(p))
        p = matmul(p, x)
        if len(ranks) > n + 1:
            raise ValueError("not nilpotent")
    # number of blocks of size >= j is rank(X^{j-1}) - rank(X^j)
    ge = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]
    parts = []
    for j in range(len(ge)):
        exact = ge[j] - (ge[j + 1] if j + 1 < len(ge) else 0)
        parts += [j + 1] * exact
    return tuple(sorted(parts, reverse=True))


def column_space(m):
    cols = [list(c) for c in zip(*m)]
    basis = []
    for c in cols:
        if rank_q(basis + [c]) > len(basis):
            basis.append(c)
    return basis


def kernel(m):
    return nullspace_q(m, len(m[0]))


def intersect(u, v, n):
    """Basis of span(u) cap span(v)."""
    if not u or not v:
        return []
    # solve sum a_i u_i - sum b_j v_j = 0
    mat = [[u[i][r] for i in range(len(u))] + [-v[j][r] for j in range(len(v))] for r in range(n)]
    sols = nullspace_q(mat, len(u) + len(v))
    out = []
    for s in sols:
        vec = [sum(Fraction(s[i]) * u[i][r] for i in range(len(u))) for r in range(n)]
        out.append(vec)
    return out


def lagrangian(x):
    n = len(x)
    total = []
    p = x
    for _ in range(n):
        im = column_space(p)
        ker = kernel(p)
        total += intersect(im, ker, n)
        p = matmul(p, x)
    basis = []
    for v in total:
        if rank_q(basis + [v]) > len(basis):
            basis.append(v)
    return basis


def tag_of(x, k):
    lx = lagrangian(x)
    assert len(lx) == k, "L_X is not Lagrangian"
    ref = [[int(r == i) for r in range(2 * k)] for i in range(k)]
    d = len(intersect(lx, ref, 2 * k))
    return "I" if (d - k) % 2 == 0 else "II"


def induced(k, blocks, block_parts, tail_idx, tail_elem=None, seed=1):
    x = richardson_element(k, blocks, block_parts, tail_idx, tail_elem, random.Random(seed))
    lam = jordan_type(x)
    very_even = all(p % 2 == 0 for p in lam) and all(lam.count(p) % 2 == 0 for p in set(lam))
    return lam, (tag_of(x, k) if very_even else None), x


def tail_element(k, block, parts, tail_idx, seed=7):
    """Richardson element of the so(2m) on the tail coordinates only."""
    rng = random.Random(seed)
    w = [0] * (2 * k)
    for i, s in block:
        w[i], w[i + k] = s, -s
    x = gl_nilpotent(k, block, parts)
    idx = list(tail_idx) + [i + k for i in tail_idx]
    for a in idx:
        for b in idx:
            if a == b or w[a] - w[b] <= 0:
                continue
            r = root_vector(k, a, b)
            if any(v for row in r for v in row):
                x = add(x, r, rng.randint(-9, 9))
    return x


def restrict(x, k, tail_idx):
    idx = list(tail_idx) + [i + k for i in tail_idx]
    return [[x[a][b] for b in idx] for a in idx]


def restricted_label(x, k, tail_idx):
    """(partition, tag) of the restriction of x to the tail coordinates."""
    y = restrict(x, k, tail_idx)
    lam = jordan_type(y)
    ve = all(p % 2 == 0 for p in lam) and all(lam.count(p) % 2 == 0 for p in set(lam))
    return lam, (tag_of(y, len(tail_idx)) if ve else None)
