"""Idempotent normalized weak 2-cocycles and the raw binary tables around them.

A cocycle is an n x n table over {0, 1} with value 1 whenever either argument
is the identity, satisfying f(s,t) * f(st,r) = f(t,r) * f(s,tr) for all
triples.  Because the values are idempotent the Galois twist collapses and the
checker can use plain products.  ``vee`` and ``pointwise_product`` return
unvalidated BinaryTable objects on purpose: the set of cocycles is not closed
under either operation, and callers must revalidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .errors import InternalInvariantError, ValidationError
from .groups import Group, Subgroup, subgroup

__all__ = [
    "BinaryTable",
    "Cocycle",
    "CocycleViolation",
    "validate_cocycle",
    "as_cocycle",
    "inertial_group",
    "waterhouse",
    "compare",
    "vee",
    "pointwise_product",
    "EQUAL",
    "LESS",
    "GREATER",
    "INCOMPARABLE",
]

EQUAL = "equal"
LESS = "less"
GREATER = "greater"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class BinaryTable:
    """An n x n table over {0, 1} with no cocycle requirement."""

    group: Group
    values: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = self.group.order
        if len(self.values) != n or any(len(row) != n for row in self.values):
            raise ValidationError(f"shape-error: table is not {n} x {n}")
        if any(v not in (0, 1) for row in self.values for v in row):
            raise ValidationError("table entries must be 0 or 1")

    def rows(self) -> Tuple[str, ...]:
        """The table as 0/1 character rows, row = first argument."""
        return tuple("".join(str(v) for v in row) for row in self.values)


@dataclass(frozen=True)
class Cocycle(BinaryTable):
    """A BinaryTable that passed validate_cocycle.

    Construct through :func:`validate_cocycle`; the constructor itself only
    re-checks shape, so code that fabricates instances directly (the census
    mutation control does) owns the consequences.
    """


@dataclass(frozen=True)
class CocycleViolation:
    """First point where a table fails the cocycle requirements."""

    kind: str  # "normalization" or "identity"
    where: Tuple[int, ...]  # (s,) for normalization, (s, t, r) for identity
    detail: str

    def __str__(self) -> str:
        return f"{self.kind} violated at {self.where}: {self.detail}"


def _coerce(table: Union[BinaryTable, Sequence[Sequence[int]]], group: Optional[Group]) -> BinaryTable:
    if isinstance(table, BinaryTable):
        return table
    if group is None:
        raise ValidationError("raw rows need an explicit group")
    return BinaryTable(group=group, values=tuple(tuple(row) for row in table))


def validate_cocycle(
    table: Union[BinaryTable, Sequence[Sequence[int]]],
    group: Optional[Group] = None,
) -> Union[Cocycle, CocycleViolation]:
    """Return a Cocycle, or a report naming the first violated requirement.

    Normalization is checked first, then the cocycle identity over all
    triples in row-major (s, t, r) order, so the reported violation is
    deterministic.
    """
    t = _coerce(table, group)
    g = t.group
    n = g.order
    v = t.values
    for s in range(n):
        if v[0][s] != 1 or v[s][0] != 1:
            return CocycleViolation(
                kind="normalization",
                where=(s,),
                detail=f"f(1,{s}) = {v[0][s]}, f({s},1) = {v[s][0]}, both must be 1",
            )
    mul = g.table
    for s in range(1, n):
        row_s = v[s]
        for tt in range(1, n):
            st = mul[s][tt]
            f_st = row_s[tt]
            row_prod = v[st]
            row_t = v[tt]
            row_tmul = mul[tt]
            for r in range(1, n):
                if f_st * row_prod[r] != row_t[r] * row_s[row_tmul[r]]:
                    return CocycleViolation(
                        kind="identity",
                        where=(s, tt, r),
                        detail=(
                            f"f({s},{tt})*f({st},{r}) = {f_st * row_prod[r]} but "
                            f"f({tt},{r})*f({s},{mul[tt][r]}) = {row_t[r] * row_s[row_tmul[r]]}"
                        ),
                    )
    return Cocycle(group=g, values=v)


def as_cocycle(
    table: Union[BinaryTable, Sequence[Sequence[int]]],
    group: Optional[Group] = None,
) -> Cocycle:
    """validate_cocycle that raises instead of returning the report."""
    result = validate_cocycle(table, group)
    if isinstance(result, CocycleViolation):
        raise ValidationError(str(result))
    return result


def inertial_group(f: Cocycle) -> Subgroup:
    """The subgroup H(f) = {s : f(s, s^-1) = 1}.

    For a valid cocycle this set is closed; if it is not, an invalid table
    slipped past validation and we fail loudly.
    """
    g = f.group
    members = [s for s in range(g.order) if f.values[s][g.inverse[s]] == 1]
    try:
        return subgroup(g, members)
    except ValidationError as exc:
        raise InternalInvariantError(
            f"inertial set {members} is not a subgroup: {exc}"
        ) from exc


def waterhouse(group: Group, sub: Subgroup) -> Cocycle:
    """The minimum cocycle with inertial group H: 1 iff an argument is in H."""
    h = set(sub.members)
    rows = [
        [1 if (s in h or t in h) else 0 for t in range(group.order)]
        for s in range(group.order)
    ]
    f = as_cocycle(rows, group)
    if tuple(inertial_group(f).members) != sub.members:
        raise InternalInvariantError("waterhouse table has the wrong inertial group")
    return f


def _support(t: BinaryTable) -> frozenset:
    return frozenset(
        (s, u) for s, row in enumerate(t.values) for u, v in enumerate(row) if v
    )


def compare(f: BinaryTable, g: BinaryTable) -> str:
    """Support-containment order: equal, less, greater, or incomparable."""
    if f.group != g.group:
        raise ValidationError("domain-mismatch: cocycles live on different groups")
    a, b = _support(f), _support(g)
    if a == b:
        return EQUAL
    if a < b:
        return LESS
    if a > b:
        return GREATER
    return INCOMPARABLE


def _same_group(tables: Sequence[BinaryTable]) -> Group:
    if not tables:
        raise ValidationError("need at least one table")
    g = tables[0].group
    if any(t.group != g for t in tables):
        raise ValidationError("domain-mismatch: tables live on different groups")
    return g


def vee(tables: Sequence[BinaryTable]) -> BinaryTable:
    """Pointwise maximum.  The result is not validated."""
    g = _same_group(tables)
    n = g.order
    rows = [
        [max(t.values[s][u] for t in tables) for u in range(n)] for s in range(n)
    ]
    return BinaryTable(group=g, values=tuple(tuple(r) for r in rows))


def pointwise_product(tables: Sequence[BinaryTable]) -> BinaryTable:
    """Entrywise product.  The result is not validated."""
    g = _same_group(tables)
    n = g.order
    rows = [
        [min(t.values[s][u] for t in tables) for u in range(n)] for s in range(n)
    ]
    return BinaryTable(group=g, values=tuple(tuple(r) for r in rows))
