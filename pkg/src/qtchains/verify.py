"""Chain objects over the step maps, and the verification predicates.

A chain for a partition mu of the deficit k is a dinv-consecutive list of
deficit-k classes, given by the initial points of its maximal first-order
segments; the last segment is the infinite orbit of the base class of mu.
The predicates below are the machine-checkable clauses that make a family
of chains a certificate for the joint symmetry of the path sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .dyck import Vector, defc, dinv, reduce
from .partitions import Partition, format_partition
from .poly import QtPolynomial
from .steps import nu1
from .tails import tail2_iter, ti, ti2, ti_dinv, ti_mind


class Chain:
    """Lazy materialization of a chain from its segment initial points."""

    def __init__(self, mu: Partition, start_dinv: int, generators: list[Vector]):
        if not generators:
            raise ValueError("a chain needs at least one segment")
        self.mu = tuple(mu)
        self.start_dinv = start_dinv
        self.generators = [tuple(g) for g in generators]
        self._finite: list[Vector] | None = None
        self._tail: list[Vector] = []

    def __repr__(self) -> str:
        return f"Chain({format_partition(self.mu)}, start={self.start_dinv})"

    def _finite_part(self) -> list[Vector]:
        if self._finite is None:
            out: list[Vector] = []
            for g in self.generators[:-1]:
                c: Vector | None = g
                while c is not None:
                    out.append(c)
                    c = nu1(c)
            self._finite = out
        return self._finite

    def elements_upto(self, d: int) -> list[Vector]:
        """Chain elements from start_dinv through dinv d, in order."""
        fin = self._finite_part()
        need = d - self.start_dinv + 1
        while len(fin) + len(self._tail) < need:
            if not self._tail:
                self._tail.append(self.generators[-1])
            else:
                nxt = nu1(self._tail[-1])
                if nxt is None:
                    raise RuntimeError(f"final segment of {self} stopped")
                self._tail.append(nxt)
        return (fin + self._tail)[:max(need, 0)]

    def element(self, d: int) -> Vector:
        """The chain element with dinv d."""
        if d < self.start_dinv:
            raise IndexError(f"{self} starts at {self.start_dinv}, asked for {d}")
        return self.elements_upto(d)[d - self.start_dinv]

    def mind_profile(self, upto: int) -> list[int]:
        """Reduced lengths of the elements through dinv upto."""
        return [len(c) for c in self.elements_upto(upto)]

    def amh_horizon(self) -> int:
        return ti_dinv(self.mu) + ti_mind(self.mu) + 1


@dataclass(frozen=True)
class AmhVectors:
    """Descent data of a length profile: positions, flat run lengths, values."""

    a: tuple[int, ...]
    m: tuple[int, ...]
    h: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.a)


def amh_vectors(chain: Chain) -> AmhVectors:
    """Descent positions, flat runs, and lengths of the chain's profile.

    A descent is the start plus every place the reduced length drops; the
    profile is scanned through the horizon past the final base class, after
    which no further drops occur.
    """
    prof = chain.mind_profile(chain.amh_horizon())
    i0 = chain.start_dinv
    des = [0] + [j for j in range(1, len(prof)) if prof[j - 1] > prof[j]]
    a, m, h = [], [], []
    for j in des:
        a.append(i0 + j)
        h.append(prof[j])
        r = 0
        while j + r + 1 < len(prof) and prof[j + r + 1] == prof[j]:
            r += 1
        m.append(r)
    return AmhVectors(tuple(a), tuple(m), tuple(h))


# ------------------------------------------------------------- check reports

@dataclass(frozen=True)
class CheckResult:
    clause: str
    ok: bool
    witness: str = ""


def all_ok(results: list[CheckResult]) -> bool:
    return all(r.ok for r in results)


def report_lines(results: list[CheckResult]) -> list[str]:
    return [
        f"{r.clause} {'ok' if r.ok else 'FAIL'}" + (f" {r.witness}" if r.witness else "")
        for r in results
    ]


def _res(clause: str, ok: bool, witness: str = "") -> CheckResult:
    return CheckResult(clause, ok, "" if ok else witness)


def check_basic(chain: Chain, partner: Chain) -> list[CheckResult]:
    """Deficit and dinv bookkeeping, start positions, ending orbit, disjointness."""
    out: list[CheckResult] = []
    mu = chain.mu
    k = sum(mu)
    horizon = chain.amh_horizon()
    try:
        els = chain.elements_upto(horizon)
    except RuntimeError as e:
        return [_res("basic-a", False, str(e))]
    bad = [
        (i, c)
        for i, c in enumerate(els)
        if defc(c) != k or dinv(c) != chain.start_dinv + i or reduce(c) != c
    ]
    out.append(
        _res(
            "basic-a",
            not bad,
            bad and f"element {bad[0][1]} at slot {chain.start_dinv + bad[0][0]}" or "",
        )
    )
    out.append(
        _res(
            "basic-b",
            len(set(els)) == len(els),
            f"repeated element in chain for {format_partition(mu)}",
        )
    )
    out.append(
        _res(
            "basic-c",
            chain.start_dinv == len(partner.mu) and partner.start_dinv == len(mu),
            f"starts {chain.start_dinv},{partner.start_dinv} vs lengths "
            f"{len(partner.mu)},{len(mu)}",
        )
    )
    out.append(
        _res(
            "basic-d",
            chain.generators[-1] == ti(mu),
            f"last generator {chain.generators[-1]} is not the base vector of "
            f"{format_partition(mu)}",
        )
    )
    if chain.mu == partner.mu:
        out.append(
            _res(
                "basic-e",
                chain.generators == partner.generators,
                "self-paired chain differs from partner",
            )
        )
    else:
        shared = set(els) & set(partner.elements_upto(partner.amh_horizon()))
        out.append(_res("basic-e", not shared, f"shared classes {sorted(shared)[:3]}"))
    return out


def _run_profile(h: int, m: int, count: int) -> list[int]:
    """h taken m+1 times, then h+1 taken h times, h+2 taken h+1 times, ..."""
    out = [h] * (m + 1)
    lvl = h + 1
    while len(out) < count:
        out.extend([lvl] * (lvl - 1))
        lvl += 1
    return out[:count]


def check_local(chain: Chain) -> list[CheckResult]:
    """The profile between descents follows the staircase of the descent value."""
    amh = amh_vectors(chain)
    out = [
        _res(
            "local-a",
            amh.a[-1] == ti_dinv(chain.mu),
            f"last descent {amh.a[-1]} vs base dinv {ti_dinv(chain.mu)}",
        )
    ]
    prof = chain.mind_profile(chain.amh_horizon())
    ok = True
    witness = ""
    for i in range(amh.size - 1):
        lo = amh.a[i] - chain.start_dinv
        hi = amh.a[i + 1] - chain.start_dinv
        run = prof[lo:hi]
        want = _run_profile(amh.h[i], amh.m[i], len(run))
        if run != want or len(run) < amh.m[i] + 2:
            ok = False
            witness = f"run {i} is {run}, wanted prefix {want} with a rise"
            break
    out.append(_res("local-b", ok, witness))
    return out


def check_extra(chain: Chain) -> list[CheckResult]:
    """Valley shape, run height bounds, drop criterion, extended orbit containment."""
    amh = amh_vectors(chain)
    out: list[CheckResult] = []

    rising = False
    valley = True
    for i in range(1, amh.size):
        if amh.h[i] > amh.h[i - 1]:
            rising = True
        elif amh.h[i] < amh.h[i - 1] and rising:
            valley = False
            break
    out.append(_res("extra-a", valley, f"h vector {amh.h} is not a valley"))

    prof = chain.mind_profile(chain.amh_horizon())
    ok = True
    witness = ""
    for i in range(amh.size - 1):
        lo = amh.a[i] - chain.start_dinv
        hi = amh.a[i + 1] - chain.start_dinv
        cap = 1 + max(amh.h[i], amh.h[i + 1])
        if any(x > cap for x in prof[lo:hi]):
            ok = False
            witness = f"run {i} exceeds {cap}"
            break
    out.append(_res("extra-b", ok, witness))

    els = chain.elements_upto(chain.amh_horizon())
    ok = True
    witness = ""
    for i in range(len(els) - 1):
        drop_next = len(els[i]) < len(els[i + 1])
        starts_00 = els[i] == (0,) or els[i][:2] == (0, 0)
        if drop_next != starts_00:
            ok = False
            witness = f"element {els[i]} at {chain.start_dinv + i}"
            break
    out.append(_res("extra-c", ok, witness))

    ok = True
    witness = ""
    d2 = dinv(ti2(chain.mu))
    base = ti(chain.mu)
    if d2 < chain.start_dinv:
        ok = False
        witness = f"extended orbit starts at {d2}, below the chain"
    else:
        for off, cls in enumerate(tail2_iter(chain.mu)):
            if cls == base:
                break
            if chain.element(d2 + off) != cls:
                ok = False
                witness = f"extended orbit departs from the chain at dinv {d2 + off}"
                break
    out.append(_res("extra-d", ok, witness))
    return out


def check_amh(amh: AmhVectors, partner: AmhVectors, k: int) -> list[CheckResult]:
    """Reversal symmetry of the descent data and the position identity."""
    out = [
        _res("amh-a", amh.size == partner.size, f"sizes {amh.size} vs {partner.size}")
    ]
    if amh.size != partner.size:
        return out
    out.append(
        _res(
            "amh-b",
            amh.h == tuple(reversed(partner.h)) and amh.m == tuple(reversed(partner.m)),
            f"h/m vectors {amh.h},{amh.m} vs reversed {partner.h},{partner.m}",
        )
    )
    bad = [
        i
        for i in range(amh.size)
        if amh.a[i] + amh.m[i] + k + partner.a[amh.size - 1 - i] != comb(amh.h[i], 2)
    ]
    out.append(_res("amh-c", not bad, bad and f"position identity fails at {bad[0]}" or ""))
    return out


# ---------------------------------------------------------------- path sums

def cat_n_mu(n: int, chain: Chain) -> QtPolynomial:
    """Sum of q^(C(n,2)-k-d) t^d over chain elements of reduced length at most n.

    Stops once the final orbit's reduced lengths pass n; they never return.
    """
    k = sum(chain.mu)
    base_dinv = ti_dinv(chain.mu)
    terms: dict[tuple[int, int], int] = {}
    d = chain.start_dinv
    while True:
        c = chain.element(d)
        if len(c) <= n:
            terms[(comb(n, 2) - k - d, d)] = 1
        elif d >= base_dinv:
            break
        d += 1
    return QtPolynomial(terms)


def opposite_bruteforce(chain: Chain, partner: Chain, n_max: int) -> list[CheckResult]:
    """Path sums of the pair are mirror images in q and t, for each n up to n_max."""
    out: list[CheckResult] = []
    for n in range(1, n_max + 1):
        lhs = cat_n_mu(n, chain)
        rhs = cat_n_mu(n, partner).swap()
        out.append(
            _res(
                f"opposite-n{n}",
                lhs == rhs,
                f"{format_partition(chain.mu)}: {lhs} vs {rhs}",
            )
        )
    return out
