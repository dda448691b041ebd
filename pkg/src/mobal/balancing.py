"""Balanced interval selections over paired integer vector sequences.

Given sequences x_1..x_m and y_1..y_m of 2n-dimensional integer vectors,
a union I of at most n index intervals can always be chosen so that
summing x inside I and y outside I lands close to half of the grand total
sum(x_i + y_i) in every component simultaneously.  Three variants:

* paired        -- 0 <= x_i, y_i <= z; half-open intervals {a..b-1};
                   two-sided error of at most 2n*z around half the total.
* integer       -- signed x_i with -z <= x_i <= z; the partition
                   imbalance sum_in(x) - sum_out(x) stays within 4n*z.
                   Realized by the substitution x' = z + x, y' = z - x
                   followed by the paired search.
* combinatorial -- arbitrary nonnegative x_i, y_i; at most n closed,
                   disjoint, nonempty intervals plus the boundary
                   correction sum_j y_{b_j}; one-sided bound of half the
                   grand total.

A satisfying family exists for every input meeting the preconditions, so
each search scans endpoint tuples in lexicographic order and returns the
first hit; running off the end of the scan indicates a defect and raises
SearchInvariantError.  All sums use Python integers, so componentwise
totals of m*z cannot overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator

from .errors import PreconditionError, SearchInvariantError
from .pareto import Weight, vec_add, vec_leq, vec_total, vec_zero

PAIRED = "paired"
INTEGER = "integer"
COMBINATORIAL = "combinatorial"
VARIANTS = (PAIRED, INTEGER, COMBINATORIAL)


@dataclass(frozen=True)
class IntervalFamily:
    """Index intervals over {1..m}, stored as (a, b) pairs.

    The paired and integer variants read (a, b) as the half-open index set
    {a, .., b-1} (empty when a == b); the combinatorial variant reads it
    as the closed set {a, .., b} and additionally keeps b_j < a_{j+1}.
    """

    intervals: tuple[tuple[int, int], ...]
    m: int


@dataclass(frozen=True)
class BalancingInstance:
    """Input sequences for one balancing run.

    All vectors share the even dimension 2n; `y` is absent for the
    integer variant and `z` is absent for the combinatorial one.
    """

    x: tuple[Weight, ...]
    y: tuple[Weight, ...] | None = None
    z: Weight | None = None
    n: int | None = None

    def __post_init__(self):
        if not self.x:
            raise PreconditionError("need at least one x vector (m >= 1)")
        dim = len(self.x[0])
        if dim == 0 or dim % 2:
            raise PreconditionError(f"vector dimension must be even >= 2, got {dim}")
        if self.n is None:
            object.__setattr__(self, "n", dim // 2)
        if 2 * self.n != dim:
            raise PreconditionError(f"n={self.n} does not match dimension {dim}")
        for seq in (self.x, self.y or ()):
            for v in seq:
                if len(v) != dim:
                    raise PreconditionError("mixed vector dimensions")
        if self.y is not None and len(self.y) != len(self.x):
            raise PreconditionError("x and y must have the same length")
        if self.z is not None and len(self.z) != dim:
            raise PreconditionError("z dimension mismatch")

    @property
    def m(self) -> int:
        return len(self.x)

    @property
    def dimension(self) -> int:
        return len(self.x[0])


@dataclass(frozen=True)
class BalanceResult:
    """A found family together with the sums it realizes.

    `correction` is the boundary term sum_j y_{b_j} of the combinatorial
    variant and the zero vector otherwise; all three sums are
    recomputable from the instance and the family alone.
    """

    family: IntervalFamily
    in_sum: Weight
    out_sum: Weight
    correction: Weight


def _prefix(seq: tuple[Weight, ...], dim: int) -> list[list[int]]:
    # pre[c][i] = sum of component c over the first i vectors
    pre = [[0] * (len(seq) + 1) for _ in range(dim)]
    for i, v in enumerate(seq):
        for c in range(dim):
            pre[c][i + 1] = pre[c][i] + v[c]
    return pre


def _half_open_member(intervals: tuple[tuple[int, int], ...], i: int) -> bool:
    return any(a <= i < b for a, b in intervals)


def _closed_member(intervals: tuple[tuple[int, int], ...], i: int) -> bool:
    return any(a <= i <= b for a, b in intervals)


def _check_paired_pre(inst: BalancingInstance) -> None:
    if inst.y is None or inst.z is None:
        raise PreconditionError("paired balancing needs x, y and z")
    if any(c < 0 for c in inst.z):
        raise PreconditionError("z must be nonnegative")
    for label, seq in (("x", inst.x), ("y", inst.y)):
        for i, v in enumerate(seq):
            if any(c < 0 for c in v):
                raise PreconditionError(f"{label}[{i}] = {v} has a negative component")
            if not vec_leq(v, inst.z):
                raise PreconditionError(f"{label}[{i}] = {v} exceeds the bound z = {inst.z}")


def balance_paired(inst: BalancingInstance) -> BalanceResult:
    """First half-open family whose mixed sum is within 2n*z of half the total.

    Scans all 1 <= a_1 <= b_1 <= ... <= a_n <= b_n <= m in lexicographic
    order.  The bound is checked in doubled integers: with S the mixed
    sum and T the grand total, -4nz <= 2S - T <= 4nz componentwise.
    """
    _check_paired_pre(inst)
    m, n, dim = inst.m, inst.n, inst.dimension
    assert inst.y is not None and inst.z is not None
    pre_x = _prefix(inst.x, dim)
    pre_y = _prefix(inst.y, dim)
    total = [pre_x[c][m] + pre_y[c][m] for c in range(dim)]
    total_y = [pre_y[c][m] for c in range(dim)]
    lim = [4 * n * inst.z[c] for c in range(dim)]

    for t in combinations_with_replacement(range(1, m + 1), 2 * n):
        ok = True
        for c in range(dim):
            px, py = pre_x[c], pre_y[c]
            acc = total_y[c]
            for j in range(0, 2 * n, 2):
                a, b = t[j], t[j + 1]
                acc += px[b - 1] - px[a - 1] - py[b - 1] + py[a - 1]
            d = 2 * acc - total[c]
            if d < -lim[c] or d > lim[c]:
                ok = False
                break
        if ok:
            intervals = tuple((t[j], t[j + 1]) for j in range(0, 2 * n, 2))
            family = IntervalFamily(intervals, m)
            in_sum, out_sum = _paired_sums(inst.x, inst.y, intervals)
            return BalanceResult(family, in_sum, out_sum, vec_zero(dim))
    raise SearchInvariantError(
        "paired balancing scan exhausted although a family must exist"
    )


def _paired_sums(
    x: tuple[Weight, ...], y: tuple[Weight, ...], intervals
) -> tuple[Weight, Weight]:
    dim = len(x[0])
    in_sum, out_sum = vec_zero(dim), vec_zero(dim)
    for i in range(1, len(x) + 1):
        if _half_open_member(intervals, i):
            in_sum = vec_add(in_sum, x[i - 1])
        else:
            out_sum = vec_add(out_sum, y[i - 1])
    return in_sum, out_sum


def balance_integer(x: tuple[Weight, ...], z: Weight) -> BalanceResult:
    """Signed balancing through the shift x' = z + x, y' = z - x.

    The returned family keeps the half-open convention; in_sum/out_sum
    are the sums of the original signed x inside and outside, and their
    difference stays within 4n*z componentwise.
    """
    if not x:
        raise PreconditionError("need at least one x vector (m >= 1)")
    if any(c < 0 for c in z):
        raise PreconditionError("z must be nonnegative")
    for i, v in enumerate(x):
        if len(v) != len(z):
            raise PreconditionError("x/z dimension mismatch")
        if any(abs(c) > b for c, b in zip(v, z)):
            raise PreconditionError(f"x[{i}] = {v} outside the band [-z, z], z = {z}")
    shifted = BalancingInstance(
        x=tuple(vec_add(z, v) for v in x),
        y=tuple(tuple(b - c for c, b in zip(v, z)) for v in x),
        z=vec_add(z, z),
    )
    paired = balance_paired(shifted)
    intervals = paired.family.intervals
    dim = len(z)
    in_sum, out_sum = vec_zero(dim), vec_zero(dim)
    for i in range(1, len(x) + 1):
        if _half_open_member(intervals, i):
            in_sum = vec_add(in_sum, x[i - 1])
        else:
            out_sum = vec_add(out_sum, x[i - 1])
    return BalanceResult(paired.family, in_sum, out_sum, vec_zero(dim))


def _separated_tuples(m: int, count: int) -> Iterator[tuple[tuple[int, int], ...]]:
    # closed intervals 1 <= a_1 <= b_1 < a_2 <= b_2 < ... <= m, lexicographic
    if count == 0:
        yield ()
        return
    stack: list[tuple[int, int]] = []

    def rec(start: int) -> Iterator[tuple[tuple[int, int], ...]]:
        depth = len(stack)
        for a in range(start, m + 1):
            for b in range(a, m + 1):
                stack.append((a, b))
                if depth + 1 == count:
                    yield tuple(stack)
                else:
                    yield from rec(b + 1)
                stack.pop()

    yield from rec(1)


def balance_combinatorial(inst: BalancingInstance) -> BalanceResult:
    """Closed disjoint intervals with boundary correction, one-sided bound.

    Finds the smallest interval count n' in {0..min(n, m)} and, within
    it, the lexicographically first endpoint tuple such that
    sum_j y_{b_j} + sum_{i in I} x_i + sum_{i not in I} y_i is at least
    half the grand total, componentwise.
    """
    if inst.y is None:
        raise PreconditionError("combinatorial balancing needs x and y")
    for label, seq in (("x", inst.x), ("y", inst.y)):
        for i, v in enumerate(seq):
            if any(c < 0 for c in v):
                raise PreconditionError(f"{label}[{i}] = {v} has a negative component")
    m, n, dim = inst.m, inst.n, inst.dimension
    pre_x = _prefix(inst.x, dim)
    pre_y = _prefix(inst.y, dim)
    total = [pre_x[c][m] + pre_y[c][m] for c in range(dim)]
    total_y = [pre_y[c][m] for c in range(dim)]

    for nprime in range(0, min(n, m) + 1):
        for intervals in _separated_tuples(m, nprime):
            ok = True
            for c in range(dim):
                px, py = pre_x[c], pre_y[c]
                acc = total_y[c]
                for a, b in intervals:
                    # closed interval contribution plus the y_b correction
                    acc += px[b] - px[a - 1] - py[b] + py[a - 1] + inst.y[b - 1][c]
                if 2 * acc < total[c]:
                    ok = False
                    break
            if ok:
                family = IntervalFamily(intervals, m)
                in_sum, out_sum, corr = _combinatorial_sums(inst.x, inst.y, intervals)
                return BalanceResult(family, in_sum, out_sum, corr)
    raise SearchInvariantError(
        "combinatorial balancing scan exhausted although a family must exist"
    )


def _combinatorial_sums(
    x: tuple[Weight, ...], y: tuple[Weight, ...], intervals
) -> tuple[Weight, Weight, Weight]:
    dim = len(x[0])
    in_sum, out_sum, corr = vec_zero(dim), vec_zero(dim), vec_zero(dim)
    for i in range(1, len(x) + 1):
        if _closed_member(intervals, i):
            in_sum = vec_add(in_sum, x[i - 1])
        else:
            out_sum = vec_add(out_sum, y[i - 1])
    for _, b in intervals:
        corr = vec_add(corr, y[b - 1])
    return in_sum, out_sum, corr


def _check_family_shape(
    family: IntervalFamily, m: int, n: int, variant: str
) -> None:
    if family.m != m:
        raise PreconditionError(f"family covers m={family.m}, instance has m={m}")
    prev_b = None
    for a, b in family.intervals:
        if not (1 <= a <= m and 1 <= b <= m and a <= b):
            raise PreconditionError(f"interval ({a}, {b}) malformed for m={m}")
        if prev_b is not None:
            if variant == COMBINATORIAL and a <= prev_b:
                raise PreconditionError("combinatorial intervals must satisfy b_j < a_{j+1}")
            if variant != COMBINATORIAL and a < prev_b:
                raise PreconditionError("intervals must be sorted with b_j <= a_{j+1}")
        prev_b = b
    cap = min(n, m) if variant == COMBINATORIAL else n
    if len(family.intervals) > cap:
        raise PreconditionError(
            f"{len(family.intervals)} intervals exceed the cap of {cap} for {variant}"
        )


def verify_balance(inst: BalancingInstance, result: BalanceResult, variant: str) -> bool:
    """Recompute the sums with a direct index scan and re-check the bound.

    Shares no state with the searches: membership is re-decided per
    index and the inequality is evaluated from scratch.  A malformed
    family raises; stale result sums or a violated inequality return
    False.
    """
    if variant not in VARIANTS:
        raise PreconditionError(f"unknown variant {variant!r}")
    m, n, dim = inst.m, inst.n, inst.dimension
    _check_family_shape(result.family, m, n, variant)
    intervals = result.family.intervals

    if variant == PAIRED:
        if inst.y is None or inst.z is None:
            raise PreconditionError("paired verification needs y and z")
        in_sum, out_sum = _paired_sums(inst.x, inst.y, intervals)
        if (in_sum, out_sum, vec_zero(dim)) != (
            result.in_sum,
            result.out_sum,
            result.correction,
        ):
            return False
        total = vec_total(inst.x, dim)
        total = vec_add(total, vec_total(inst.y, dim))
        mixed = vec_add(in_sum, out_sum)
        return all(
            abs(2 * mixed[c] - total[c]) <= 4 * n * inst.z[c] for c in range(dim)
        )

    if variant == INTEGER:
        if inst.z is None:
            raise PreconditionError("integer verification needs z")
        in_sum, out_sum = vec_zero(dim), vec_zero(dim)
        for i in range(1, m + 1):
            if _half_open_member(intervals, i):
                in_sum = vec_add(in_sum, inst.x[i - 1])
            else:
                out_sum = vec_add(out_sum, inst.x[i - 1])
        if (in_sum, out_sum, vec_zero(dim)) != (
            result.in_sum,
            result.out_sum,
            result.correction,
        ):
            return False
        return all(
            abs(in_sum[c] - out_sum[c]) <= 4 * n * inst.z[c] for c in range(dim)
        )

    if inst.y is None:
        raise PreconditionError("combinatorial verification needs y")
    in_sum, out_sum, corr = _combinatorial_sums(inst.x, inst.y, intervals)
    if (in_sum, out_sum, corr) != (result.in_sum, result.out_sum, result.correction):
        return False
    total = vec_total(inst.x, dim)
    total = vec_add(total, vec_total(inst.y, dim))
    lhs = vec_add(corr, vec_add(in_sum, out_sum))
    return all(2 * lhs[c] >= total[c] for c in range(dim))
