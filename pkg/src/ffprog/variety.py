"""Enumeration of the eight-variable auxiliary variety and its Q-fibers.

For a normalized pair (P1, P2) with P2' = P2 - P1, the variety V consists of
the points y in F_p^8 satisfying

    R1 = P1(y4) - P1(y3) - P1(y2) + P1(y1) = 0
    R2 = P1(y8) - P1(y7) - P1(y6) + P1(y5) = 0
    R3 = P2(y6) - P2(y5) - P2(y2) + P2(y1) = 0
    R4 = P2'(y7) - P2'(y5) - P2'(y3) + P2'(y1) = 0

and the object of interest is the histogram c[a] = #{y in V : Q(y) = a}
where Q = P2(y8) - P2(y7) - P2(y4) + P2(y3).

The production path exploits the product structure of the system.  Writing
u = (y1, y2, y3, y4) and v = (y5, y6, y7, y8), the constraints say u and v
both lie in S = {P1(u2) - P1(u1) = P1(u4) - P1(u3)} and share the same value
of the pair (T2, T3) = (P2'(u3) - P2'(u1), P2(u2) - P2(u1)); moreover
Q(u, v) = G(v) - G(u) for G(u) = P2(u4) - P2(u3).  So it suffices to build
the joint histogram K[t2, t3, g] of (T2, T3, G) over S, which costs
O(deg(P1) * p^3) with a preimage table for P1, and then

    c[a] = sum over (t2, t3) of sum_g K[t2, t3, g] * K[t2, t3, (g + a) mod p]

by circular autocorrelation along the g axis.  Everything is integer
arithmetic on int64 arrays, so results are exact and runs are deterministic.

Two slower paths back this up: a four-variable walk that resolves the
dependent slots y4, y6, y7, y8 through preimage tables (the transparent
reference), and a flat scan of all p^8 tuples (the naive oracle, p <= 5).
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

import numpy as np

from .errors import CharTooSmall, CorruptFiberFile, WorkBudgetExceeded
from .field import PrimeField, field_new, value_table
from .polys import IntPoly, NormalizedPair
from .fourier import char_sums_over_fibers

DEFAULT_BUDGET = 2_000_000_000

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class PreimageTable:
    """For each value v, the sorted list of roots of P(y) = v."""

    field: PrimeField
    poly: IntPoly
    table: tuple

    def preimages(self, v: int):
        return self.table[v % self.field.p]


def build_preimage_table(poly: IntPoly, field: PrimeField) -> PreimageTable:
    if poly.degree != float("-inf") and field.p <= poly.degree:
        raise CharTooSmall(
            f"preimage table needs p > deg = {poly.degree}, got p = {field.p}"
        )
    values = value_table(poly, field)
    buckets: list[list[int]] = [[] for _ in range(field.p)]
    for y in range(field.p):
        buckets[int(values[y])].append(y)
    return PreimageTable(field, poly, tuple(tuple(b) for b in buckets))


def _csr_preimages(values: np.ndarray, p: int):
    """CSR layout of the preimage lists of a value table.

    Returns (counts, offsets, roots): the roots with value v occupy
    roots[offsets[v] : offsets[v] + counts[v]], each run ascending.
    """
    counts = np.bincount(values, minlength=p)
    order = np.argsort(values, kind="stable")
    offsets = np.zeros(p, dtype=np.int64)
    np.cumsum(counts[:-1], out=offsets[1:])
    return counts.astype(np.int64), offsets, order.astype(np.int64)


@dataclass
class FiberDistribution:
    """Exact fiber histogram of Q over the variety."""

    field: PrimeField
    pair: NormalizedPair
    c: np.ndarray
    v_size: int
    w_size: int
    max_fiber: int

    @classmethod
    def from_histogram(cls, field, pair, c) -> "FiberDistribution":
        c = np.asarray(c, dtype=np.int64)
        if c.shape != (field.p,) or (c < 0).any():
            raise ValueError("histogram must be p nonnegative counts")
        v_size = int(c.sum())
        p4 = field.p**4
        upper = pair.r1**2 * pair.r2**2 * p4
        if not p4 <= v_size <= upper:
            raise ValueError(
                f"fiber histogram total {v_size} violates [{p4}, {upper}]"
            )
        return cls(
            field=field,
            pair=pair,
            c=c,
            v_size=v_size,
            w_size=int(np.dot(c, c)),
            max_fiber=int(c.max()),
        )

    def digest(self) -> str:
        payload = ",".join(str(int(v)) for v in self.c)
        return hashlib.sha256(payload.encode()).hexdigest()

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "p": self.field.p,
            "pair": self.pair.key(),
            "pair_hash": self.pair.pair_hash(),
            "c": [int(v) for v in self.c],
            "v_size": self.v_size,
            "w_size": self.w_size,
            "max_fiber": self.max_fiber,
            "digest": self.digest(),
        }

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path, pair: NormalizedPair) -> "FiberDistribution":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if raw.get("schema") != SCHEMA_VERSION:
            raise CorruptFiberFile(f"{path}: unsupported schema {raw.get('schema')}")
        if raw.get("pair") != pair.key() or raw.get("pair_hash") != pair.pair_hash():
            raise CorruptFiberFile(f"{path}: fiber file is for a different pair")
        field = field_new(int(raw["p"]))
        c = np.asarray(raw["c"], dtype=np.int64)
        try:
            dist = cls.from_histogram(field, pair, c)
        except ValueError as exc:
            raise CorruptFiberFile(f"{path}: {exc}") from exc
        for key, got in (
            ("v_size", dist.v_size),
            ("w_size", dist.w_size),
            ("max_fiber", dist.max_fiber),
            ("digest", dist.digest()),
        ):
            if raw.get(key) != got:
                raise CorruptFiberFile(
                    f"{path}: stored {key} {raw.get(key)!r} != derived {got!r}"
                )
        return dist


def work_estimate(pair: NormalizedPair, p: int) -> int:
    """Elementary-step estimate r1 * r2 * p^4 used by the budget gate."""
    return pair.r1 * pair.r2 * p**4


def _gate(pair: NormalizedPair, field: PrimeField, budget: int) -> None:
    pair.require_char(field)
    est = work_estimate(pair, field.p)
    if est > budget:
        raise WorkBudgetExceeded(
            f"estimated {est} steps for p = {field.p} exceeds budget {budget}"
        )


def enumerate_fibers(
    pair: NormalizedPair,
    field: PrimeField,
    budget: int = DEFAULT_BUDGET,
) -> FiberDistribution:
    """Exact Q-fiber histogram via the split-and-autocorrelate algorithm."""
    _gate(pair, field, budget)
    p = field.p
    t1 = value_table(pair.p1, field)
    t2 = value_table(pair.p2, field)
    t2p = value_table(pair.p2prime, field)

    counts, offsets, roots = _csr_preimages(t1, p)

    # Joint histogram K[t2, t3, g] over S, indexed flat as (t2*p + t3)*p + g.
    kflat = np.zeros(p * p * p, dtype=np.int64)

    # Chunk the (u1, u2, u3) base grid to bound peak memory.
    rows_per_u1 = p * p
    block = max(1, 4_000_000 // rows_per_u1)
    u2g, u3g = np.meshgrid(
        np.arange(p, dtype=np.int64), np.arange(p, dtype=np.int64), indexing="ij"
    )
    u2g = u2g.ravel()
    u3g = u3g.ravel()
    for u1_lo in range(0, p, block):
        u1s = np.arange(u1_lo, min(u1_lo + block, p), dtype=np.int64)
        u1 = np.repeat(u1s, rows_per_u1)
        u2 = np.tile(u2g, len(u1s))
        u3 = np.tile(u3g, len(u1s))

        s = (t1[u2] - t1[u1] + t1[u3]) % p
        cnt = counts[s]
        total = int(cnt.sum())
        if total == 0:
            continue
        row = np.repeat(np.arange(len(s), dtype=np.int64), cnt)
        starts = np.concatenate(([0], np.cumsum(cnt)[:-1]))
        within = np.arange(total, dtype=np.int64) - np.repeat(starts, cnt)
        u4 = roots[offsets[s[row]] + within]

        u1r, u2r, u3r = u1[row], u2[row], u3[row]
        z2 = (t2p[u3r] - t2p[u1r]) % p
        z3 = (t2[u2r] - t2[u1r]) % p
        g = (t2[u4] - t2[u3r]) % p
        key = (z2 * p + z3) * p + g
        kflat += np.bincount(key, minlength=p * p * p)

    k2 = kflat.reshape(p * p, p)
    c = np.empty(p, dtype=np.int64)
    for a in range(p):
        c[a] = int(np.einsum("rg,rg->", k2, np.roll(k2, -a, axis=1)))
    return FiberDistribution.from_histogram(field, pair, c)


def enumerate_fibers_reference(
    pair: NormalizedPair,
    field: PrimeField,
    budget: int = DEFAULT_BUDGET,
) -> FiberDistribution:
    """Transparent four-variable walk with dependent-slot preimage tables.

    Loops (y1, y2, y3, y5); y4, y6, y7 come from the preimage lists forced
    by R1, R3, R4, then y8 from R2.  Pure Python, so only suitable for small
    p, but it shares no code with the fast path.
    """
    _gate(pair, field, budget)
    p = field.p
    t1 = [int(v) for v in value_table(pair.p1, field)]
    t2 = [int(v) for v in value_table(pair.p2, field)]
    t2p = [int(v) for v in value_table(pair.p2prime, field)]
    pre1 = build_preimage_table(pair.p1, field).table
    pre2 = build_preimage_table(pair.p2, field).table
    pre2p = build_preimage_table(pair.p2prime, field).table

    c = [0] * p
    for y1 in range(p):
        a1, b1, c1 = t1[y1], t2[y1], t2p[y1]
        for y2 in range(p):
            a12 = t1[y2] - a1
            b12 = t2[y2] - b1
            for y3 in range(p):
                l4 = pre1[(t1[y3] + a12) % p]
                if not l4:
                    continue
                v4 = [(t2[y3] - t2[y4]) % p for y4 in l4]
                c34 = t2p[y3] - c1
                for y5 in range(p):
                    l6 = pre2[(t2[y5] + b12) % p]
                    if not l6:
                        continue
                    l7 = pre2p[(t2p[y5] + c34) % p]
                    if not l7:
                        continue
                    a5 = t1[y5]
                    for y6 in l6:
                        a56 = t1[y6] - a5
                        for y7 in l7:
                            q7 = t2[y7]
                            for y8 in pre1[(t1[y7] + a56) % p]:
                                q0 = t2[y8] - q7
                                for v in v4:
                                    c[(q0 + v) % p] += 1
    return FiberDistribution.from_histogram(field, pair, np.asarray(c))


def enumerate_fibers_naive(
    pair: NormalizedPair,
    field: PrimeField,
    budget: int = DEFAULT_BUDGET,
) -> FiberDistribution:
    """Flat scan of all p^8 tuples.  The oracle; keep p tiny."""
    _gate(pair, field, budget)
    p = field.p
    t1 = [int(v) for v in value_table(pair.p1, field)]
    t2 = [int(v) for v in value_table(pair.p2, field)]
    t2p = [int(v) for v in value_table(pair.p2prime, field)]
    c = [0] * p
    for y in itertools.product(range(p), repeat=8):
        if (t1[y[3]] - t1[y[2]] - t1[y[1]] + t1[y[0]]) % p:
            continue
        if (t1[y[7]] - t1[y[6]] - t1[y[5]] + t1[y[4]]) % p:
            continue
        if (t2[y[5]] - t2[y[4]] - t2[y[1]] + t2[y[0]]) % p:
            continue
        if (t2p[y[6]] - t2p[y[4]] - t2p[y[2]] + t2p[y[0]]) % p:
            continue
        c[(t2[y[7]] - t2[y[6]] - t2[y[3]] + t2[y[2]]) % p] += 1
    return FiberDistribution.from_histogram(field, pair, np.asarray(c))


ENUMERATORS = {
    "fast": enumerate_fibers,
    "loop": enumerate_fibers_reference,
    "naive8": enumerate_fibers_naive,
}


@dataclass(frozen=True)
class GrowthRow:
    p: int
    v_size: int
    v_ratio: float
    w_size: int
    w_ratio: float
    max_fiber: int
    fiber_ratio: float
    charsum_scaled: float

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "v_size": self.v_size,
            "v_over_p4": self.v_ratio,
            "w_size": self.w_size,
            "w_over_p7": self.w_ratio,
            "max_fiber": self.max_fiber,
            "max_fiber_over_p3": self.fiber_ratio,
            "max_charsum_sqrtp": self.charsum_scaled,
        }


CSV_COLUMNS = (
    "p",
    "v_size",
    "v_over_p4",
    "w_size",
    "w_over_p7",
    "max_fiber",
    "max_fiber_over_p3",
    "max_charsum_sqrtp",
)


@dataclass
class SweepReport:
    pair: NormalizedPair
    rows: list

    def to_json_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "pair": self.pair.key(),
            "rows": [r.to_json_dict() for r in self.rows],
        }


def growth_row(dist: FiberDistribution) -> GrowthRow:
    p = dist.field.p
    cs = char_sums_over_fibers(dist)
    scaled = float(np.abs(cs[1:]).max() * np.sqrt(p)) if p > 1 else 0.0
    return GrowthRow(
        p=p,
        v_size=dist.v_size,
        v_ratio=dist.v_size / p**4,
        w_size=dist.w_size,
        w_ratio=dist.w_size / p**7,
        max_fiber=dist.max_fiber,
        fiber_ratio=dist.max_fiber / p**3,
        charsum_scaled=scaled,
    )


def growth_report(
    pair: NormalizedPair,
    primes,
    budget: int = DEFAULT_BUDGET,
    fibers_by_p=None,
) -> SweepReport:
    """Size and character-sum growth across a prime sweep.

    ``fibers_by_p`` lets callers supply already-enumerated distributions
    (for example from cache); missing primes are enumerated here.
    """
    rows = []
    for p in sorted(primes):
        dist = None if fibers_by_p is None else fibers_by_p.get(p)
        if dist is None:
            dist = enumerate_fibers(pair, field_new(p), budget=budget)
        rows.append(growth_row(dist))
    return SweepReport(pair=pair, rows=rows)
