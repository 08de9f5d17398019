"""Partition calculus for nilpotent orbits in classical Lie algebras.

Orbit labels live on classical factors: ``A`` (gl_a, partitions of a, stored
with rank a-1), ``B`` (so_{2k+1}), ``C`` (sp_{2k}) and ``D`` (so_{2k}).  Small
ranks are allowed so that every factor of a pseudo-Levi subsystem can carry a
label: B0 = so_1, C0 = sp_0, D0 = so_0 and D1 = so_2.

Very even orbits in type D carry a tag ``"I"`` or ``"II"``.  Tag I is the orbit
induced from the Levi gl_k stabilising span(e_1, ..., e_k); see
:func:`induce_tagged` for how tags propagate through induction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

__all__ = [
    "Partition", "OrbitLabel", "LeviShape", "VeryEvenAmbiguity",
    "collapse", "collapse_oracle", "orbit_dimension", "ls_induce", "induce_tagged",
    "induce_partition", "is_rigid", "dominance_leq", "partitions", "valid_partition",
    "orbit_labels", "natural_size", "algebra_dimension", "levi_dimension",
    "parse_orbit_label", "proper_levi_shapes", "is_rigid_by_search",
]


class VeryEvenAmbiguity(ValueError):
    def __init__(self, msg="very-even ambiguity"):
        super().__init__(msg)


def _clean(parts):
    return tuple(sorted((int(p) for p in parts if p > 0), reverse=True))


@dataclass(frozen=True)
class Partition:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", _clean(self.parts))

    @property
    def total(self):
        return sum(self.parts)

    def transpose(self):
        return Partition(transpose(self.parts))

    def multiplicity(self, k):
        return self.parts.count(k)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "[" + ",".join(str(p) for p in self.parts) + "]"


def transpose(parts):
    parts = _clean(parts)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def partitions(n, max_part=None):
    """All partitions of n as weakly decreasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def natural_size(letter, rank):
    """Size of the natural representation whose partitions label the orbits."""
    return {"A": rank + 1, "B": 2 * rank + 1, "C": 2 * rank, "D": 2 * rank}[letter]


def algebra_dimension(letter, rank):
    n = natural_size(letter, rank)
    if letter == "A":
        return n * n - 1
    if letter == "C":
        return n * (n + 1) // 2
    return n * (n - 1) // 2


def valid_partition(letter, parts):
    parts = _clean(parts)
    if letter == "A":
        return True
    bad = 0 if letter in "BD" else 1
    return all(parts.count(p) % 2 == 0 for p in set(parts) if p % 2 == bad)


def is_very_even(letter, parts):
    parts = _clean(parts)
    return (letter == "D" and len(parts) > 0 and all(p % 2 == 0 for p in parts)
            and valid_partition("D", parts))


@dataclass(frozen=True)
class OrbitLabel:
    classical_type: str
    rank: int
    partition: tuple
    very_even_tag: str = None

    def __post_init__(self):
        object.__setattr__(self, "partition", _clean(self.partition))
        if self.classical_type not in "ABCD" or len(self.classical_type) != 1:
            raise ValueError(f"unsupported classical type {self.classical_type}")
        if sum(self.partition) != natural_size(self.classical_type, self.rank):
            raise ValueError(f"{self.partition} is not a partition of "
                             f"{natural_size(self.classical_type, self.rank)}")
        if not valid_partition(self.classical_type, self.partition):
            raise ValueError(f"invalid {self.classical_type} partition {self.partition}")
        ve = is_very_even(self.classical_type, self.partition)
        if ve and self.very_even_tag not in ("I", "II"):
            raise ValueError("very even partition needs a tag I or II")
        if not ve and self.very_even_tag is not None:
            raise ValueError("tag given for a partition that is not very even")

    @property
    def type_label(self):
        return f"{self.classical_type}{self.rank}"

    @property
    def is_very_even(self):
        return self.very_even_tag is not None

    def __str__(self):
        s = f"{self.type_label}:[" + ",".join(str(p) for p in self.partition) + "]"
        return s + (f":{self.very_even_tag}" if self.very_even_tag else "")

    def sort_key(self):
        return (self.classical_type, self.rank, self.partition, self.very_even_tag or "")

    def flip(self):
        """The other very even orbit (identity on other labels)."""
        if not self.very_even_tag:
            return self
        return OrbitLabel(self.classical_type, self.rank, self.partition,
                          "II" if self.very_even_tag == "I" else "I")


def parse_orbit_label(text):
    """Parse ``"C2:[2,1,1]"`` or ``"D4:[2,2,2,2]:I"``."""
    m = re.fullmatch(r"\s*([ABCD])(\d+)\s*:\s*\[([\d,\s]*)\]\s*(?::\s*(I|II))?\s*", text)
    if not m:
        raise ValueError(f"cannot parse orbit label {text!r}")
    parts = tuple(int(t) for t in m.group(3).split(",") if t.strip())
    return OrbitLabel(m.group(1), int(m.group(2)), parts, m.group(4))


def orbit_labels(letter, rank):
    """All orbit labels of the given classical factor, both tags for very even ones."""
    out = []
    for p in partitions(natural_size(letter, rank)):
        if not valid_partition(letter, p):
            continue
        if is_very_even(letter, p):
            out += [OrbitLabel(letter, rank, p, "I"), OrbitLabel(letter, rank, p, "II")]
        else:
            out.append(OrbitLabel(letter, rank, p))
    return out


def zero_orbit(letter, rank):
    n = natural_size(letter, rank)
    return OrbitLabel(letter, rank, (1,) * n)


# ----------------------------------------------------------------------------
# collapse


def collapse(letter, parts):
    """Largest partition of the right kind dominated by ``parts``."""
    lam = list(_clean(parts))
    if letter == "A":
        return tuple(lam)
    bad = 0 if letter in "BD" else 1
    total = sum(lam)
    if letter == "C" and total % 2:
        raise ValueError("no valid C partition of an odd number")
    while True:
        cands = [q for q in set(lam) if q % 2 == bad and lam.count(q) % 2 == 1]
        if not cands:
            return _clean(lam)
        q = max(cands)
        i = max(k for k, v in enumerate(lam) if v == q)
        lam[i] -= 1
        j = next((k for k in range(i + 1, len(lam)) if lam[k] < q - 1), None)
        if j is None:
            lam.append(1)
        else:
            lam[j] += 1
        lam = list(_clean(lam))


def dominates(a, b):
    """True iff partition ``a`` is dominated by ``b`` (a <= b)."""
    a, b = _clean(a), _clean(b)
    if sum(a) != sum(b):
        return False
    sa = sb = 0
    for k in range(max(len(a), len(b))):
        sa += a[k] if k < len(a) else 0
        sb += b[k] if k < len(b) else 0
        if sa > sb:
            return False
    return True


def collapse_oracle(letter, parts):
    """Collapse by brute force: the dominance-maximum valid partition below ``parts``."""
    parts = _clean(parts)
    below = [p for p in partitions(sum(parts)) if valid_partition(letter, p)
             and dominates(p, parts)]
    tops = [p for p in below if all(dominates(q, p) for q in below)]
    if len(tops) != 1:
        raise ValueError("no unique collapse")
    return tops[0]


# ----------------------------------------------------------------------------
# dimensions and order


def orbit_dimension(o):
    lam = o.partition
    t = transpose(lam)
    sq = sum(c * c for c in t)
    n = natural_size(o.classical_type, o.rank)
    if o.classical_type == "A":
        return n * n - sq
    odd = sum(1 for p in lam if p % 2)
    if o.classical_type == "C":
        return n * (n + 1) // 2 - (sq + odd) // 2
    return n * (n - 1) // 2 - (sq - odd) // 2


def dominance_leq(a, b):
    """Closure order: partition dominance, very even twins with different tags incomparable."""
    if (a.classical_type, a.rank) != (b.classical_type, b.rank):
        raise ValueError("type mismatch")
    if a.partition == b.partition:
        return a.very_even_tag == b.very_even_tag
    return dominates(a.partition, b.partition)


# ----------------------------------------------------------------------------
# induction


@dataclass(frozen=True)
class LeviShape:
    """Levi subalgebra gl_{a1} + ... + gl_{ak} (+ tail) of a classical algebra.

    For type A ambients the tail is None and the blocks sum to n+1.  For
    B/C/D the tail is ``(letter, m)`` with the ambient letter.
    """

    gl_blocks: tuple
    tail: tuple = None

    def rank_in(self, letter):
        if letter == "A":
            return sum(self.gl_blocks) - 1
        return sum(self.gl_blocks) + (self.tail[1] if self.tail else 0)

    def is_proper(self, letter):
        if letter == "A":
            return len(self.gl_blocks) > 1
        return len(self.gl_blocks) > 0


def levi_dimension(shape, letter):
    d = sum(a * a for a in shape.gl_blocks)
    if letter == "A":
        return d - 1
    if shape.tail:
        d += algebra_dimension(*shape.tail)
    return d


def _check_shape(shape, orbs, letter, rank):
    if shape.rank_in(letter) != rank:
        raise ValueError("shape does not embed in the ambient algebra")
    if letter != "A" and shape.tail and shape.tail[0] != letter:
        raise ValueError("shape does not embed in the ambient algebra")
    k = len(shape.gl_blocks)
    want = k + (1 if letter != "A" else 0)
    if len(orbs) != want:
        raise ValueError("shape does not match the number of orbit labels")
    for a, o in zip(shape.gl_blocks, orbs):
        if o.classical_type != "A" or o.rank != a - 1:
            raise ValueError("shape does not match the orbit labels")
    if letter != "A":
        t = orbs[-1]
        tail = shape.tail or (letter, 0)
        if (t.classical_type, t.rank) != tail:
            raise ValueError("shape does not match the tail orbit")


def _assemble(shape, orbs, letter):
    if letter == "A":
        lam = []
        for o in orbs:
            p = o.partition
            for i, v in enumerate(p):
                if i < len(lam):
                    lam[i] += v
                else:
                    lam.append(v)
        return _clean(lam)
    lam = list(orbs[-1].partition)
    for o in orbs[:-1]:
        for i, v in enumerate(o.partition):
            if i < len(lam):
                lam[i] += 2 * v
            else:
                lam.append(2 * v)
    return collapse(letter, lam)


def induce_partition(shape, orbs, letter, rank):
    """Partition of the induced orbit (no tag bookkeeping)."""
    _check_shape(shape, orbs, letter, rank)
    return _assemble(shape, orbs, letter)


def ls_induce(shape, orbs, letter, rank=None):
    """Lusztig-Spaltenstein induction from a Levi shape.

    ``orbs`` lists one type-A label per gl block and, for B/C/D, the tail
    label last (use B0/C0/D0 for an empty tail).  A very even result raises
    :class:`VeryEvenAmbiguity` because the tag depends on how the Levi sits.
    """
    if rank is None:
        rank = shape.rank_in(letter)
    lam = induce_partition(shape, orbs, letter, rank)
    if is_very_even(letter, lam):
        raise VeryEvenAmbiguity()
    return OrbitLabel(letter, rank, lam)


def induce_tagged(shape, orbs, letter, rank, negative_parity):
    """Induction for an embedded Levi in type D with a sign-parity datum.

    ``negative_parity`` is the parity of the number of negative signs used
    by the gl blocks (each block is a signed set of coordinates).  When the
    result is very even and every block has even size, the tag is I exactly
    when the negative-sign parity, plus one if the tail carries tag II, is
    even.  Blocks of odd size make the sign data ill defined, and a result
    that is very even although the tail is not is never produced by the
    standard recipe; both raise :class:`VeryEvenAmbiguity`.
    """
    lam = induce_partition(shape, orbs, letter, rank)
    if not is_very_even(letter, lam):
        return OrbitLabel(letter, rank, lam)
    tail = orbs[-1]
    if any(a % 2 for a in shape.gl_blocks):
        raise VeryEvenAmbiguity()
    if tail.partition and not tail.is_very_even:
        raise VeryEvenAmbiguity()
    flips = int(negative_parity) + (1 if tail.very_even_tag == "II" else 0)
    return OrbitLabel(letter, rank, lam, "I" if flips % 2 == 0 else "II")


# ----------------------------------------------------------------------------
# rigidity


def is_rigid(o):
    """Standard partition criterion for rigid orbits."""
    lam = o.partition
    if o.classical_type == "A":
        return all(p == 1 for p in lam)
    ext = list(lam) + [0]
    if any(ext[i] - ext[i + 1] > 1 for i in range(len(ext) - 1)):
        return False
    bad = 1 if o.classical_type in "BD" else 0
    return not any(lam.count(p) == 2 for p in set(lam) if p % 2 == bad)


def _compositions(n):
    if n == 0:
        yield ()
        return
    for k in range(1, n + 1):
        for rest in _compositions(n - k):
            yield (k,) + rest


def proper_levi_shapes(letter, rank):
    """All proper Levi shapes up to reordering of the gl blocks."""
    seen = set()
    if letter == "A":
        for comp in _compositions(rank + 1):
            key = tuple(sorted(comp, reverse=True))
            if len(comp) > 1 and key not in seen:
                seen.add(key)
                yield LeviShape(key)
        return
    for m in range(rank):
        for comp in _compositions(rank - m):
            key = tuple(sorted(comp, reverse=True))
            if (key, m) not in seen:
                seen.add((key, m))
                yield LeviShape(key, (letter, m))


def _tail_labels(letter, m):
    return orbit_labels(letter, m)


def induced_partitions(letter, rank):
    """Partitions of all orbits induced from proper Levi subalgebras."""
    out = set()
    for shape in proper_levi_shapes(letter, rank):
        block_choices = [orbit_labels("A", a - 1) for a in shape.gl_blocks]
        tails = [] if letter == "A" else [_tail_labels(*shape.tail)]
        for combo in itertools.product(*(block_choices + tails)):
            out.add(induce_partition(shape, list(combo), letter, rank))
    return out


def is_rigid_by_search(o):
    """Rigidity by exhaustive search over proper Levi shapes and their orbits."""
    return o.partition not in induced_partitions(o.classical_type, o.rank)
