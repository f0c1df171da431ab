"""Subadditive maps into ordered monoids and the cocycles they induce.

A map r with r(1) = 0 and r(st) <= r(s) + r(t) (written additively; the
monoid interface is abstract) induces the cocycle that records where
subadditivity is tight.  Chains of ideals lift r to tuples ordered
lexicographically, grading it by chain depth, and padding a chain with
radical powers turns the chain cocycle itself into an induced cocycle.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (
    AlgebraContext,
    DescendingChain,
    MonomialIdeal,
    chain_levels,
    ideal_lattice_op,
)
from .cocycles import (
    Cocycle,
    CocycleViolation,
    EQUAL,
    LESS,
    compare,
    inertial_group,
    validate_cocycle,
)
from .decomposition import cocycle_from_chain
from .errors import InternalInvariantError, ValidationError
from .groups import Group, Subgroup

__all__ = [
    "OrderedMonoid",
    "AdditiveNaturals",
    "LexProduct",
    "SemilinearMap",
    "RViolation",
    "validate_r",
    "as_semilinear",
    "cocycle_from_r",
    "chain_lift",
    "PaddedLift",
    "padded_lift",
    "ExhaustionCertificate",
    "search_realization",
    "random_semilinear",
]


class OrderedMonoid(ABC):
    """A totally ordered monoid whose neutral element is the minimum.

    The order must be strictly translation compatible: x < y implies
    xz < yz and zx < zy.  Nothing here enforces cancellativity; the axioms
    above are the only ones relied on.
    """

    @property
    @abstractmethod
    def neutral(self):
        ...

    @abstractmethod
    def combine(self, x, y):
        ...

    @abstractmethod
    def lt(self, x, y) -> bool:
        ...

    @abstractmethod
    def contains(self, x) -> bool:
        ...

    def le(self, x, y) -> bool:
        return x == y or self.lt(x, y)


class AdditiveNaturals(OrderedMonoid):
    """Nonnegative integers under addition, the monoid of all examples."""

    @property
    def neutral(self) -> int:
        return 0

    def combine(self, x: int, y: int) -> int:
        return x + y

    def lt(self, x: int, y: int) -> bool:
        return x < y

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0

    def __eq__(self, other) -> bool:
        return isinstance(other, AdditiveNaturals)

    def __hash__(self) -> int:
        return hash(AdditiveNaturals)

    def __repr__(self) -> str:
        return "AdditiveNaturals()"


class LexProduct(OrderedMonoid):
    """Componentwise product of monoids ordered lexicographically."""

    def __init__(self, factors: Sequence[OrderedMonoid]):
        if not factors:
            raise ValidationError("a lexicographic product needs at least one factor")
        self.factors = tuple(factors)

    @property
    def neutral(self) -> tuple:
        return tuple(m.neutral for m in self.factors)

    def combine(self, x: tuple, y: tuple) -> tuple:
        return tuple(m.combine(a, b) for m, a, b in zip(self.factors, x, y))

    def lt(self, x: tuple, y: tuple) -> bool:
        for m, a, b in zip(self.factors, x, y):
            if a != b:
                return m.lt(a, b)
        return False

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == len(self.factors)
            and all(m.contains(a) for m, a in zip(self.factors, x))
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, LexProduct) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash((LexProduct, self.factors))

    def __repr__(self) -> str:
        return f"LexProduct({len(self.factors)} factors)"


@dataclass(frozen=True)
class RViolation:
    kind: str  # "length", "element", "neutral", or "subadditive"
    where: tuple
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} violation at {self.where}: {self.detail}"


@dataclass(frozen=True)
class SemilinearMap:
    """A validated subadditive map; construct through validate_r."""

    group: Group
    monoid: OrderedMonoid
    values: tuple

    def __call__(self, s: int):
        return self.values[s]

    @property
    def m_subgroup(self) -> Subgroup:
        neutral = self.monoid.neutral
        members = tuple(
            s for s in range(self.group.order) if self.values[s] == neutral
        )
        return Subgroup(group=self.group, members=members)

    def __repr__(self) -> str:
        return f"SemilinearMap({list(self.values)})"


def validate_r(
    group: Group, monoid: OrderedMonoid, values: Sequence
) -> Union[SemilinearMap, RViolation]:
    """Check a value table against the subadditive-map axioms.

    Returns the first violation found: wrong length, a value outside the
    monoid, a non-neutral value at the identity, or the first pair where
    subadditivity fails (row-major).
    """
    values = tuple(values)
    if len(values) != group.order:
        return RViolation(
            kind="length",
            where=(len(values),),
            detail=f"expected {group.order} values",
        )
    for s, v in enumerate(values):
        if not monoid.contains(v):
            return RViolation(
                kind="element", where=(s,), detail=f"{v!r} is not a monoid element"
            )
    if values[0] != monoid.neutral:
        return RViolation(
            kind="neutral",
            where=(0,),
            detail=f"identity maps to {values[0]!r}, not {monoid.neutral!r}",
        )
    for s in range(group.order):
        for t in range(group.order):
            bound = monoid.combine(values[s], values[t])
            if monoid.lt(bound, values[group.mul(s, t)]):
                return RViolation(
                    kind="subadditive",
                    where=(s, t),
                    detail=f"r({group.mul(s, t)}) exceeds r({s}) + r({t})",
                )
    result = SemilinearMap(group=group, monoid=monoid, values=values)
    try:
        result.m_subgroup
    except ValidationError as exc:
        raise InternalInvariantError(
            f"neutral fiber of a subadditive map is not a subgroup: {exc}"
        ) from exc
    return result


def as_semilinear(group: Group, monoid: OrderedMonoid, values: Sequence) -> SemilinearMap:
    result = validate_r(group, monoid, values)
    if isinstance(result, RViolation):
        raise ValidationError(str(result))
    return result


def cocycle_from_r(r: SemilinearMap) -> Cocycle:
    """The induced cocycle: 1 exactly where subadditivity is an equality."""
    n = r.group.order
    rows = tuple(
        tuple(
            1 if r.values[r.group.mul(s, t)] == r.monoid.combine(r.values[s], r.values[t]) else 0
            for t in range(n)
        )
        for s in range(n)
    )
    result = validate_cocycle(rows, r.group)
    if isinstance(result, CocycleViolation):
        raise InternalInvariantError(f"induced table is not a cocycle: {result}")
    if inertial_group(result).members != r.m_subgroup.members:
        raise InternalInvariantError("inertial group differs from the neutral fiber")
    return result


def _match_context(r: SemilinearMap, chain: DescendingChain) -> AlgebraContext:
    ctx = chain.ctx
    if ctx.group != r.group or cocycle_from_r(r).values != ctx.cocycle.values:
        raise ValidationError("chain context does not match the induced cocycle of r")
    return ctx


def chain_lift(r: SemilinearMap, chain: DescendingChain) -> SemilinearMap:
    """Grade r by chain depth into a lexicographic power of its monoid.

    An element at level a of the chain (0 outside it) maps to r repeated
    k+1-a times followed by a neutral entries.  The neutral fiber is
    unchanged, and the induced cocycle sits between the chain cocycle and
    the original: (f_r)_chain <= f_lift <= f_r, with equality on the left
    when the chain runs from J all the way down to the zero ideal.
    """
    ctx = _match_context(r, chain)
    k = len(chain)
    levels = chain_levels(chain)
    target = LexProduct((r.monoid,) * (k + 1))
    neutral = r.monoid.neutral
    values = []
    for s in range(r.group.order):
        level = levels.get(s, 0)
        values.append((r.values[s],) * (k + 1 - level) + (neutral,) * level)
    lifted = validate_r(r.group, target, tuple(values))
    if isinstance(lifted, RViolation):
        raise InternalInvariantError(f"lift is not subadditive: {lifted}")
    if lifted.m_subgroup.members != r.m_subgroup.members:
        raise InternalInvariantError("lift changed the neutral fiber")
    lower = cocycle_from_chain(ctx, chain)
    middle = cocycle_from_r(lifted)
    if compare(lower, middle) not in (LESS, EQUAL):
        raise InternalInvariantError("chain cocycle is not below the lifted cocycle")
    if compare(middle, ctx.cocycle) not in (LESS, EQUAL):
        raise InternalInvariantError("lifted cocycle is not below the original")
    full_span = (
        chain.ideals[0].mask == ctx._gstar_mask and chain.ideals[-1].mask == 0
    )
    if full_span and lower.values != middle.values:
        raise InternalInvariantError(
            "full-span chain lift does not reproduce the chain cocycle"
        )
    return lifted


@dataclass(frozen=True)
class PaddedLift:
    chain: DescendingChain
    lifted: SemilinearMap
    certified: bool


def padded_lift(r: SemilinearMap, chain: DescendingChain) -> PaddedLift:
    """Pad a chain with radical powers so its cocycle is induced by a lift.

    The prefix inserts J and the sums J^(2^i) + I_1 until the power falls
    inside I_1; the suffix squares I_k down to the zero ideal.  Certified
    means the lift of the padded chain induces exactly the chain cocycle of
    the original chain.
    """
    ctx = _match_context(r, chain)
    radical = MonomialIdeal(ctx=ctx, members=frozenset(ctx.gstar))
    zero = MonomialIdeal(ctx=ctx, members=frozenset())
    first, last = chain.ideals[0], chain.ideals[-1]

    prefix: List[MonomialIdeal] = []
    power = radical
    while not power <= first:
        prefix.append(
            radical if not prefix else ideal_lattice_op("sum", power, first)
        )
        power = ideal_lattice_op("product", power, power)

    suffix: List[MonomialIdeal] = []
    power = last
    while power.mask:
        power = ideal_lattice_op("product", power, power)
        if power.mask:
            suffix.append(power)
    if last.mask:
        suffix.append(zero)

    padded = DescendingChain(ideals=tuple(prefix) + chain.ideals + tuple(suffix))
    lifted = chain_lift(r, padded)
    certified = (
        cocycle_from_chain(ctx, chain).values == cocycle_from_r(lifted).values
    )
    return PaddedLift(chain=padded, lifted=lifted, certified=certified)


@dataclass(frozen=True)
class ExhaustionCertificate:
    """Witness that no subadditive map with values up to bound induces f."""

    bound: int
    nodes_explored: int


def _completion_schedule(ctx: AlgebraContext) -> List[List[Tuple[int, int, int]]]:
    """For each G* position, the pairs whose constraint closes at that step."""
    position = {s: i for i, s in enumerate(ctx.gstar)}
    n = ctx.group.order
    schedule: List[List[Tuple[int, int, int]]] = [[] for _ in ctx.gstar]
    for s in range(n):
        for t in range(n):
            p = ctx.mul(s, t)
            involved = [position[e] for e in (s, t, p) if e in position]
            if involved:
                schedule[max(involved)].append((s, t, p))
    return schedule


def _search_from(
    ctx: AlgebraContext,
    bound: int,
    schedule: List[List[Tuple[int, int, int]]],
    first_value: Optional[int],
) -> Tuple[Optional[Tuple[int, ...]], int]:
    gstar = ctx.gstar
    values: Dict[int, int] = {s: 0 for s in ctx.inertial.members}
    nodes = 0

    def feasible(i: int) -> bool:
        for s, t, p in schedule[i]:
            total = values[s] + values[t]
            if ctx.f(s, t) == 1:
                if values[p] != total:
                    return False
            elif values[p] >= total:
                return False
        return True

    def walk(i: int) -> Optional[Tuple[int, ...]]:
        nonlocal nodes
        if i == len(gstar):
            return tuple(values[s] for s in range(ctx.group.order))
        candidates = (
            (first_value,) if i == 0 and first_value is not None else range(1, bound + 1)
        )
        for v in candidates:
            nodes += 1
            values[gstar[i]] = v
            if feasible(i):
                found = walk(i + 1)
                if found is not None:
                    return found
        del values[gstar[i]]
        return None

    witness = walk(0)
    return witness, nodes


def search_realization(
    ctx: AlgebraContext, bound: int, threads: int = 1
) -> Union[SemilinearMap, ExhaustionCertificate]:
    """Find the least natural-valued map inducing f, or rule every one out.

    Depth-first over G* in index order with values in [1, bound]; the
    inertial group is pinned to 0.  Each assignment is checked against
    every pair constraint it completes: equality where f is 1, strict
    inequality where f is 0.  The witness is re-verified through
    cocycle_from_r before being returned.
    """
    if bound < 1:
        raise ValidationError("bound must be at least 1")
    schedule = _completion_schedule(ctx)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(
                    lambda v: _search_from(ctx, bound, schedule, v),
                    range(1, bound + 1),
                )
            )
        nodes = sum(r[1] for r in results)
        witnesses = [r[0] for r in results if r[0] is not None]
        witness = min(witnesses) if witnesses else None
    else:
        witness, nodes = _search_from(ctx, bound, schedule, None)
    if witness is None:
        return ExhaustionCertificate(bound=bound, nodes_explored=nodes)
    found = as_semilinear(ctx.group, AdditiveNaturals(), witness)
    if cocycle_from_r(found).values != ctx.cocycle.values:
        raise InternalInvariantError("search witness does not induce the cocycle")
    return found


def random_semilinear(group: Group, rng, cap: int = 12) -> SemilinearMap:
    """A random valid map over the naturals, by min-plus closing a draw."""
    values = [0] + [rng.randint(0, cap) for _ in range(group.order - 1)]
    changed = True
    while changed:
        changed = False
        for s, t in itertools.product(range(group.order), repeat=2):
            bound = values[s] + values[t]
            p = group.mul(s, t)
            if values[p] > bound:
                values[p] = bound
                changed = True
    return as_semilinear(group, AdditiveNaturals(), tuple(values))
