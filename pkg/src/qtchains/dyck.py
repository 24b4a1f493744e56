"""Quasi-Dyck vectors, their shift classes, and the area/dinv/deficit statistics.

A quasi-Dyck vector starts at 0 and never rises by more than 1 between
consecutive entries.  Prepending a 0 and shifting every entry up by one keeps
the underlying lattice object, and each class under that move has a unique
shortest nonnegative member.  Classes correspond to integer partitions.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterator

from .partitions import Partition

Vector = tuple[int, ...]


def is_qdv(v) -> bool:
    """True for a nonempty int tuple starting at 0 with rises of at most 1."""
    if not v or v[0] != 0:
        return False
    return all(v[i + 1] <= v[i] + 1 for i in range(len(v) - 1))


def check_qdv(v) -> Vector:
    t = tuple(v)
    if not is_qdv(t):
        raise ValueError(f"not a quasi-Dyck vector: {t}")
    return t


def parse_vector(text: str) -> Vector:
    """Parse digit notation like '0122011' or '01222(-1)001(-1)(-1)'."""
    s = text.strip()
    out: list[int] = []
    i = 0
    while i < len(s):
        c = s[i]
        if c == "(":
            j = s.index(")", i)
            out.append(int(s[i + 1 : j]))
            i = j + 1
        elif c.isdigit():
            out.append(int(c))
            i += 1
        else:
            raise ValueError(f"unexpected {c!r} in {text!r}")
    return check_qdv(out)


def format_vector(v: Vector) -> str:
    """Inverse of parse_vector; entries outside 0..9 are parenthesized."""
    return "".join(str(x) if 0 <= x <= 9 else f"({x})" for x in v)


# ---------------------------------------------------------------- class moves

def lift(v: Vector) -> Vector:
    """Prepend a 0 and shift up: the longer representative of the same class."""
    return (0,) + tuple(x + 1 for x in v)


def unlift(v: Vector) -> Vector | None:
    """Drop the first entry and shift down, or None when the result would not start at 0."""
    if len(v) >= 2 and v[1] == 1:
        return tuple(x - 1 for x in v[1:])
    return None


@lru_cache(maxsize=None)
def reduce(v: Vector) -> Vector:
    """The unique shortest nonnegative representative of the class of v."""
    while min(v) < 0:
        v = lift(v)
    while len(v) >= 2 and v[1] == 1 and min(v[1:]) >= 1:
        v = tuple(x - 1 for x in v[1:])
    return v


def is_reduced(v: Vector) -> bool:
    """True when v equals its own reduction."""
    if min(v) < 0:
        return False
    return len(v) == 1 or v[1] == 0 or 0 in v[2:]


# ---------------------------------------------------------------- statistics

def area(v: Vector) -> int:
    """Sum of the entries."""
    return sum(v)


@lru_cache(maxsize=None)
def dinv(v: Vector) -> int:
    """Count pairs i < j with v_i - v_j in {0, 1}.

    Class invariant; vectors with negative entries are reduced first, which
    matches counting against the infinite descending run to the left.
    """
    if min(v) < 0:
        v = reduce(v)
    total = 0
    seen: dict[int, int] = {}
    for x in v:
        total += seen.get(x, 0) + seen.get(x + 1, 0)
        seen[x] = seen.get(x, 0) + 1
    return total


def defc(v: Vector) -> int:
    """Deficit: the size of the partition of the class minus dinv."""
    n = len(v)
    return comb(n, 2) - sum(v) - dinv(v)


def defc_pairs(v: Vector) -> int:
    """Count the deficit pairs of a nonnegative vector directly.

    A pair i < j counts when v_i - v_j >= 2, or when v_i < v_j and the value
    v_i already occurred strictly before position i.
    """
    if min(v) < 0:
        raise ValueError("defc_pairs needs a nonnegative vector")
    first: dict[int, int] = {}
    for idx, x in enumerate(v):
        first.setdefault(x, idx)
    total = 0
    for j in range(len(v)):
        for i in range(j):
            if v[i] - v[j] >= 2 or (v[i] < v[j] and first[v[i]] < i):
                total += 1
    return total


def area_delta(v: Vector) -> int:
    """Area of the reduced representative."""
    return sum(reduce(v))


# ------------------------------------------------------- partitions <-> classes

def mind(p: Partition) -> int:
    """Shortest length of a nonnegative vector in the class of p."""
    if not p:
        return 1
    return max(len(p) + 1, max(a + i for i, a in enumerate(p, start=1)))


def qdv_from_partition(p: Partition, n: int) -> Vector:
    """Length-n vector of the class of p; needs n above the number of parts."""
    if n < len(p) + 1:
        raise ValueError(f"need n > {len(p)} for {p}")
    ell = len(p)
    return tuple(j - (p[n - j - 1] if n - j - 1 < ell else 0) for j in range(n))


def area_n(p: Partition, n: int) -> int:
    """Area of the length-n vector of the class of p."""
    return comb(n, 2) - sum(p)


def partition_from_class(v: Vector) -> Partition:
    """Partition of the class of v; any representative gives the same answer."""
    n = len(v)
    parts = []
    for i in range(1, n + 1):
        a = n - i - v[n - i]
        if a <= 0:
            break
        parts.append(a)
    return tuple(parts)


def class_from_partition(p: Partition) -> Vector:
    """Reduced vector of the class of p."""
    return qdv_from_partition(p, mind(p))


def classify_vector(v: Vector) -> str:
    """One of 'binary', 'ternary-reduced', 'ternary-nonreduced', 'cycled-ternary', 'other'."""
    check_qdv(v)
    if all(x in (0, 1) for x in v):
        return "binary"
    if all(0 <= x <= 2 for x in v):
        return "ternary-reduced" if is_reduced(v) else "ternary-nonreduced"
    if all(-1 <= x <= 2 for x in v):
        last2 = max((i for i, x in enumerate(v) if x == 2), default=-1)
        if all(x != -1 for x in v[:last2]):
            return "cycled-ternary"
    return "other"


# ------------------------------------------------------------- enumeration

def dyck_vectors(n: int) -> Iterator[Vector]:
    """Yield every nonnegative length-n vector, in lexicographic order."""
    if n < 1:
        return

    def go(prefix: list[int]) -> Iterator[Vector]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for x in range(prefix[-1] + 2):
            prefix.append(x)
            yield from go(prefix)
            prefix.pop()

    yield from go([0])


def enumerate_deficit(k: int, d_max: int) -> list[Vector]:
    """All reduced vectors with deficit k and dinv at most d_max.

    Ordered by dinv, then by class partition in reverse lexicographic order.
    Depth-first search over nonnegative vectors; appending an entry can only
    grow both statistics, so overshooting branches are cut.  Any class here
    has a representative of length at most d_max + k + 1.
    """
    cap = d_max + k + 1
    cnt = [0] * (cap + 3)
    found: dict[int, list[tuple[Partition, Vector]]] = {}

    def go(v: list[int], maxv: int, d: int, kq: int) -> None:
        if kq == k and (len(v) == 1 or v[1] == 0 or 0 in v[2:]):
            vv = tuple(v)
            found.setdefault(d, []).append((partition_from_class(vv), vv))
        if len(v) >= cap:
            return
        top = v[-1] + 1
        # ge[x]: earlier entries >= x; rep[x]: repeated earlier entries < x
        ge = [0] * (maxv + 4)
        for val in range(maxv, -1, -1):
            ge[val] = ge[val + 1] + cnt[val]
        rep = [0] * (top + 3)
        for val in range(top + 1):
            rep[val + 1] = rep[val] + (cnt[val] - 1 if cnt[val] > 1 else 0)
        for x in range(top + 1):
            dd = d + cnt[x] + cnt[x + 1]
            if dd > d_max:
                continue
            kk = kq + ge[x + 2] + rep[x]
            if kk > k:
                continue
            v.append(x)
            cnt[x] += 1
            go(v, max(maxv, x), dd, kk)
            cnt[x] -= 1
            v.pop()

    cnt[0] = 1
    go([0], 0, 0, 0)
    cnt[0] = 0
    out: list[Vector] = []
    for d in sorted(found):
        for _, vv in sorted(found[d], reverse=True):
            out.append(vv)
    return out
