"""Monomial two-sided ideals of the crossed product algebra attached to a
cocycle: principal ideals, radical powers, the N_k partition, annihilators,
lattice operations, and descending chains.

Ideals are subsets of the non-inertial indices, closed under one-sided basis
multiplication whenever the cocycle value is 1.  Internally each ideal also
carries a bitmask keyed to the group index order; all set algebra runs on the
masks.  Only proper ideals are represented: the zero ideal is the empty set
and the radical J is the whole of G*, but the algebra itself is never an
ideal value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .cocycles import Cocycle, inertial_group
from .errors import InternalInvariantError, ValidationError
from .groups import Group, Subgroup

__all__ = [
    "AlgebraContext",
    "MonomialIdeal",
    "DescendingChain",
    "principal_ideal",
    "ideal_closure",
    "radical_powers",
    "nk_partition",
    "classify_annihilators",
    "ideal_lattice_op",
    "chain_level",
    "chain_levels",
]


class AlgebraContext:
    """A cocycle together with its inertial group and non-inertial set G*.

    G* must be nonempty: with G* empty the algebra is simple and none of the
    ideal constructions apply.
    """

    def __init__(self, cocycle: Cocycle):
        self.group: Group = cocycle.group
        self.cocycle: Cocycle = cocycle
        self.inertial: Subgroup = inertial_group(cocycle)
        hset = frozenset(self.inertial.members)
        self.gstar: Tuple[int, ...] = tuple(
            s for s in range(self.group.order) if s not in hset
        )
        if not self.gstar:
            raise ValidationError(
                "the inertial group is all of G; no non-inertial elements exist"
            )
        self._hset = hset
        self._gstar_mask = _mask_of(self.gstar)
        self._values = cocycle.values
        self._table = self.group.table

    def f(self, s: int, t: int) -> int:
        return self._values[s][t]

    def mul(self, s: int, t: int) -> int:
        return self._table[s][t]

    def in_inertial(self, s: int) -> bool:
        return s in self._hset

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AlgebraContext)
            and self.group == other.group
            and self.cocycle.values == other.cocycle.values
        )

    def __hash__(self) -> int:
        return hash((self.group.table, self.cocycle.values))

    def __repr__(self) -> str:
        return f"AlgebraContext(order={self.group.order}, gstar={list(self.gstar)})"


def _mask_of(members: Iterable[int]) -> int:
    m = 0
    for s in members:
        m |= 1 << s
    return m


def _members_of(mask: int) -> Tuple[int, ...]:
    out = []
    s = 0
    while mask:
        if mask & 1:
            out.append(s)
        mask >>= 1
        s += 1
    return tuple(out)


def _closure_mask(ctx: AlgebraContext, seed_mask: int) -> int:
    """Smallest mask containing seed_mask closed under basis multiplication."""
    values = ctx._values
    table = ctx._table
    n = ctx.group.order
    mask = seed_mask
    frontier = list(_members_of(seed_mask))
    while frontier:
        s = frontier.pop()
        row = values[s]
        trow = table[s]
        for t in range(n):
            if row[t] == 1:
                p = trow[t]
                bit = 1 << p
                if not mask & bit:
                    mask |= bit
                    frontier.append(p)
            if values[t][s] == 1:
                p = table[t][s]
                bit = 1 << p
                if not mask & bit:
                    mask |= bit
                    frontier.append(p)
    return mask


def _is_closed_mask(ctx: AlgebraContext, mask: int) -> bool:
    values = ctx._values
    table = ctx._table
    n = ctx.group.order
    for s in _members_of(mask):
        row = values[s]
        trow = table[s]
        for t in range(n):
            if row[t] == 1 and not mask >> trow[t] & 1:
                return False
            if values[t][s] == 1 and not mask >> table[t][s] & 1:
                return False
    return True


@dataclass(frozen=True)
class MonomialIdeal:
    """A two-sided monomial ideal, stored as its subset of G*."""

    ctx: AlgebraContext
    members: FrozenSet[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", frozenset(self.members))
        mask = _mask_of(self.members)
        if mask & ~self.ctx._gstar_mask:
            bad = sorted(set(self.members) - set(self.ctx.gstar))
            raise ValidationError(f"not-in-gstar: {bad}")
        if not _is_closed_mask(self.ctx, mask):
            raise ValidationError(
                f"set {sorted(self.members)} is not closed under basis multiplication"
            )
        object.__setattr__(self, "mask", mask)

    mask: int = 0  # filled in __post_init__

    @property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    def __contains__(self, s: int) -> bool:
        return self.mask >> s & 1 == 1

    def __le__(self, other: "MonomialIdeal") -> bool:
        return self.mask & ~other.mask == 0

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"MonomialIdeal({list(self.sorted_members)})"


def _ideal_from_mask(ctx: AlgebraContext, mask: int) -> MonomialIdeal:
    return MonomialIdeal(ctx=ctx, members=frozenset(_members_of(mask)))


def principal_ideal(ctx: AlgebraContext, s: int) -> MonomialIdeal:
    """The smallest ideal containing basis element s, by breadth-first closure."""
    if not 0 <= s < ctx.group.order:
        raise ValidationError(f"element {s} out of range")
    if ctx.in_inertial(s):
        raise ValidationError(f"not-in-gstar: {s}")
    return _ideal_from_mask(ctx, _closure_mask(ctx, 1 << s))


def ideal_closure(ctx: AlgebraContext, seed: Iterable[int]) -> MonomialIdeal:
    """The smallest ideal containing every seed element; empty seed gives 0."""
    seed = set(seed)
    for s in seed:
        if not 0 <= s < ctx.group.order or ctx.in_inertial(s):
            raise ValidationError(f"not-in-gstar: {s}")
    return _ideal_from_mask(ctx, _closure_mask(ctx, _mask_of(seed)))


def _product_mask(ctx: AlgebraContext, a: int, b: int) -> int:
    values = ctx._values
    table = ctx._table
    out = 0
    for s in _members_of(a):
        row = values[s]
        trow = table[s]
        for t in _members_of(b):
            if row[t] == 1:
                out |= 1 << trow[t]
    return out


def ideal_lattice_op(kind: str, a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """sum, intersection, or product of two ideals of the same context.

    Sums and intersections of closed sets are closed; the product
    {s t : s in a, t in b, f(s,t) = 1} is closed because the product of
    two-sided ideals is two-sided, and that is asserted rather than re-closed
    so implementation bugs surface.
    """
    if a.ctx != b.ctx:
        raise ValidationError("ctx mismatch between ideals")
    cache = a.ctx.__dict__.setdefault("_lattice_cache", {})
    key = (kind, a.mask, b.mask)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if kind == "sum":
        mask = a.mask | b.mask
    elif kind == "intersection":
        mask = a.mask & b.mask
    elif kind == "product":
        mask = _product_mask(a.ctx, a.mask, b.mask)
        if not _is_closed_mask(a.ctx, mask):
            raise InternalInvariantError("ideal product is not closed")
    else:
        raise ValidationError(f"unknown lattice operation {kind!r}")
    result = _ideal_from_mask(a.ctx, mask)
    cache[key] = result
    return result


def radical_powers(ctx: AlgebraContext) -> Tuple[List[MonomialIdeal], int]:
    """All nonzero powers [J, J^2, .., J^t] and the nilpotency t + 1."""
    powers_masks = [ctx._gstar_mask]
    while True:
        nxt = _product_mask(ctx, powers_masks[-1], ctx._gstar_mask)
        if nxt == 0:
            break
        if nxt == powers_masks[-1]:
            raise InternalInvariantError("radical is not nilpotent")
        powers_masks.append(nxt)
    powers = [_ideal_from_mask(ctx, m) for m in powers_masks]
    return powers, len(powers) + 1


def _n1_direct_mask(ctx: AlgebraContext) -> int:
    """N_1 from the defining property: no factorization within G*."""
    values = ctx._values
    table = ctx._table
    factorable = 0
    for s in ctx.gstar:
        row = values[s]
        trow = table[s]
        for t in ctx.gstar:
            if row[t] == 1:
                factorable |= 1 << trow[t]
    return ctx._gstar_mask & ~factorable


def nk_partition(ctx: AlgebraContext) -> List[FrozenSet[int]]:
    """The sets N_k = J^k \\ J^{k+1}; their union is G*.

    N_1 is computed both from the radical filtration and from the
    no-factorization characterization, and the two must agree.
    """
    powers, _ = radical_powers(ctx)
    masks = [p.mask for p in powers] + [0]
    layers = [masks[i] & ~masks[i + 1] for i in range(len(powers))]
    if layers[0] != _n1_direct_mask(ctx):
        raise InternalInvariantError("the two N_1 characterizations disagree")
    union = 0
    for m in layers:
        union |= m
    if union != ctx._gstar_mask:
        raise InternalInvariantError("N_k layers do not cover G*")
    return [frozenset(_members_of(m)) for m in layers]


def _annihilator_mask(ctx: AlgebraContext) -> int:
    values = ctx._values
    out = 0
    for s in ctx.gstar:
        row = values[s]
        if all(row[t] == 0 and values[t][s] == 0 for t in ctx.gstar):
            out |= 1 << s
    return out


def classify_annihilators(ctx: AlgebraContext) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Two-sided annihilators of J split into (trivial, nontrivial).

    Trivial means the element also lies in N_1.  Both sets are closed under
    the double coset action h1 s h2, which is asserted.
    """
    ann = _annihilator_mask(ctx)
    n1 = _n1_direct_mask(ctx)
    table = ctx._table
    for s in _members_of(ann):
        for h1 in ctx.inertial.members:
            for h2 in ctx.inertial.members:
                if not ann >> table[table[h1][s]][h2] & 1:
                    raise InternalInvariantError(
                        "annihilator set is not closed under the double coset action"
                    )
    trivial = ann & n1
    return (
        frozenset(_members_of(trivial)),
        frozenset(_members_of(ann & ~n1)),
    )


@dataclass(frozen=True)
class DescendingChain:
    """A weakly descending sequence I_1 >= .. >= I_k of ideals, k >= 2."""

    ideals: Tuple[MonomialIdeal, ...]

    def __post_init__(self) -> None:
        if len(self.ideals) < 2:
            raise ValidationError("chain-too-short: need at least two ideals")
        ctx = self.ideals[0].ctx
        for ideal in self.ideals[1:]:
            if ideal.ctx != ctx:
                raise ValidationError("chain mixes ideals of different contexts")
        for i in range(len(self.ideals) - 1):
            if self.ideals[i + 1].mask & ~self.ideals[i].mask:
                raise ValidationError(
                    f"chain not descending: ideal {i + 2} is not contained in ideal {i + 1}"
                )

    @property
    def ctx(self) -> AlgebraContext:
        return self.ideals[0].ctx

    def __len__(self) -> int:
        return len(self.ideals)

    def __repr__(self) -> str:
        parts = ", ".join(str(list(i.sorted_members)) for i in self.ideals)
        return f"DescendingChain({parts})"


def chain_level(chain: DescendingChain, s: int) -> int:
    """The largest a with s in I_a.  Undefined outside I_1."""
    if s not in chain.ideals[0]:
        raise ValidationError(f"undefined-level: {s} is not in the first ideal")
    level = 1
    for a, ideal in enumerate(chain.ideals[1:], start=2):
        if s in ideal:
            level = a
    return level


def chain_levels(chain: DescendingChain) -> Dict[int, int]:
    """Levels for every element of G*, with 0 meaning outside I_1.

    The extended convention I_0 = J, I_{k+1} = 0 used by the lift
    construction; elements of the inertial group are not in the map.
    """
    levels = {s: 0 for s in chain.ctx.gstar}
    for a, ideal in enumerate(chain.ideals, start=1):
        for s in ideal.members:
            levels[s] = a
    return levels
