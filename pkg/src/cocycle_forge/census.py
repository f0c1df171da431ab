"""Exhaustive enumeration of idempotent cocycles and ideals on small groups,
and the property sweep that grinds every identity of the package against
that ground truth.

The enumeration fills the table over non-identity pairs cell by cell,
checking each cocycle triple the moment its last cell is assigned, which
prunes the raw 2^((n-1)^2) space to the tiny set of valid tables.  The
property sweep is also the negative control: a fabricated table with one
flipped entry must fail either validation or at least one check here.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    AlgebraContext,
    DescendingChain,
    MonomialIdeal,
    _ideal_from_mask,
    _is_closed_mask,
    classify_annihilators,
    ideal_closure,
    ideal_lattice_op,
    nk_partition,
    radical_powers,
)
from .cocycles import Cocycle, CocycleViolation, inertial_group, validate_cocycle, waterhouse
from .decomposition import (
    DecompositionReport,
    _classes_of,
    check_identity,
    cocycle_mod_ideal,
    decompose_by_bstar,
    decompose_by_classes,
    morphism_check,
)
from .errors import ForgeError, ValidationError
from .generators import all_generators, n1_set, principal_via_generators
from .groups import Group, Subgroup
from .semilinear import chain_lift, cocycle_from_r, padded_lift, random_semilinear

__all__ = [
    "CensusConfig",
    "CensusStream",
    "enumerate_cocycles",
    "enumerate_ideals",
    "descending_multichains",
    "PropertyFailure",
    "CocycleCheckResult",
    "check_cocycle_properties",
    "CensusReport",
    "property_suite",
    "MutationOutcome",
    "mutation_report",
    "CensusRecord",
    "census_records",
]


@dataclass(frozen=True)
class CensusConfig:
    group: Group
    inertial: Optional[Subgroup] = None
    max_candidates: int = 1_000_000
    max_chains_per_cocycle: int = 10_000

    def __post_init__(self) -> None:
        if self.max_candidates < 1 or self.max_chains_per_cocycle < 1:
            raise ValidationError("census limits must be positive")
        if self.inertial is not None and self.inertial.group != self.group:
            raise ValidationError("inertial filter belongs to a different group")


@dataclass(frozen=True)
class CensusStream:
    cocycles: Tuple[Cocycle, ...]
    truncated: bool


def _triple_schedule(group: Group) -> List[List[Tuple[int, int, int, int]]]:
    """Cocycle triples keyed by the free cell that completes them.

    Each entry holds the four cell positions (row-major over non-identity
    pairs, -1 for cells pinned to 1 by normalization) of
    f(s,t), f(st,r), f(t,r), f(s,tr).
    """
    n = group.order
    m = n - 1

    def pos(s: int, t: int) -> int:
        return (s - 1) * m + (t - 1) if s and t else -1

    schedule: List[List[Tuple[int, int, int, int]]] = [[] for _ in range(m * m)]
    for s in range(1, n):
        for t in range(1, n):
            st = group.mul(s, t)
            for r in range(1, n):
                cells = (pos(s, t), pos(st, r), pos(t, r), pos(s, group.mul(t, r)))
                schedule[max(cells)].append(cells)
    return schedule


def _complete_prefix(
    group: Group,
    schedule: List[List[Tuple[int, int, int, int]]],
    prefix: Tuple[int, ...],
    limit: int,
) -> Tuple[List[Tuple[int, ...]], bool]:
    """All valid completions of a partial cell assignment, 0 tried before 1."""
    m = group.order - 1
    total = m * m
    vals = [1] * total

    def cell(i: int) -> int:
        return 1 if i < 0 else vals[i]

    def consistent(i: int) -> bool:
        for c1, c2, c3, c4 in schedule[i]:
            if cell(c1) * cell(c2) != cell(c3) * cell(c4):
                return False
        return True

    for i, v in enumerate(prefix):
        vals[i] = v
        if not consistent(i):
            return [], False
    found: List[Tuple[int, ...]] = []
    truncated = False

    def walk(i: int) -> bool:
        nonlocal truncated
        if i == total:
            if len(found) >= limit:
                truncated = True
                return False
            found.append(tuple(vals))
            return True
        for v in (0, 1):
            vals[i] = v
            if consistent(i) and not walk(i + 1):
                return False
        vals[i] = 1
        return True

    walk(len(prefix))
    return found, truncated


def _rows_from_cells(group: Group, cells: Tuple[int, ...]) -> Tuple[Tuple[int, ...], ...]:
    n = group.order
    m = n - 1
    rows = [tuple([1] * n)]
    for s in range(1, n):
        rows.append((1,) + tuple(cells[(s - 1) * m : s * m]))
    return tuple(rows)


def enumerate_cocycles(cfg: CensusConfig, threads: int = 1) -> CensusStream:
    """Every idempotent cocycle of the group, in flattened-bits order.

    The optional inertial filter keeps only the tables with that exact
    inertial subgroup.  Exceeding max_candidates sets the truncation flag.
    """
    group = cfg.group
    schedule = _triple_schedule(group)
    if threads > 1 and group.order > 2:
        m = group.order - 1
        prefixes = [tuple(int(b) for b in format(k, f"0{m}b")) for k in range(2 ** m)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(
                pool.map(
                    lambda p: _complete_prefix(group, schedule, p, cfg.max_candidates),
                    prefixes,
                )
            )
        tables: List[Tuple[int, ...]] = []
        truncated = False
        for chunk, flag in chunks:
            truncated = truncated or flag
            tables.extend(chunk)
        tables = tables[: cfg.max_candidates]
        if len(tables) == cfg.max_candidates and sum(len(c) for c, _ in chunks) > len(tables):
            truncated = True
    else:
        tables, truncated = _complete_prefix(group, schedule, (), cfg.max_candidates)
    cocycles = []
    for cells in tables:
        rows = _rows_from_cells(group, cells)
        result = validate_cocycle(rows, group)
        if isinstance(result, CocycleViolation):
            raise ValidationError(f"enumerated table failed validation: {result}")
        if cfg.inertial is not None and inertial_group(result).members != cfg.inertial.members:
            continue
        cocycles.append(result)
    return CensusStream(cocycles=tuple(cocycles), truncated=truncated)


def enumerate_ideals(ctx: AlgebraContext) -> List[MonomialIdeal]:
    """All monomial ideals, sorted by size then members.

    Up to |G*| = 12 every subset is tested directly; up to 20 the lattice
    generated by the principal ideals is closed under sum and intersection,
    which reaches everything because each ideal is the sum of the principal
    ideals of its members.
    """
    g = len(ctx.gstar)
    if g > 20:
        raise ValidationError(f"size-error: |G*| = {g} exceeds the ideal enumeration cap")
    if g <= 12:
        masks = set()
        for bits in range(1 << g):
            mask = 0
            for i in range(g):
                if bits >> i & 1:
                    mask |= 1 << ctx.gstar[i]
            if _is_closed_mask(ctx, mask):
                masks.add(mask)
    else:
        masks = {0, ctx._gstar_mask}
        for s in ctx.gstar:
            masks.add(ideal_closure(ctx, (s,)).mask)
        grew = True
        while grew:
            grew = False
            current = sorted(masks)
            for a, b in combinations(current, 2):
                for mask in (a | b, a & b):
                    if mask not in masks:
                        masks.add(mask)
                        grew = True
    ideals = [_ideal_from_mask(ctx, mask) for mask in masks]
    ideals.sort(key=lambda i: (len(i), i.sorted_members))
    return ideals


def descending_multichains(
    ideals: Sequence[MonomialIdeal], max_len: int = 4, cap: int = 10_000
) -> Tuple[List[DescendingChain], bool]:
    """Weakly descending ideal sequences of length 2..max_len, capped."""
    order = list(ideals)
    below = [
        [j for j, small in enumerate(order) if small <= big]
        for big in order
    ]
    chains: List[DescendingChain] = []
    level: List[Tuple[int, ...]] = [(i,) for i in range(len(order))]
    for _ in range(2, max_len + 1):
        nxt = []
        for seq in level:
            for j in below[seq[-1]]:
                nxt.append(seq + (j,))
        for seq in nxt:
            if len(chains) >= cap:
                return chains, True
            chains.append(DescendingChain(ideals=tuple(order[i] for i in seq)))
        level = nxt
    return chains, False


@dataclass(frozen=True)
class PropertyFailure:
    check: str
    group_order: int
    cocycle_rows: Tuple[str, ...]
    detail: str


@dataclass(frozen=True)
class CocycleCheckResult:
    counts: Dict[str, int]
    failures: Tuple[PropertyFailure, ...]


def _run_suite_checks(ctx: AlgebraContext, max_chains: int) -> CocycleCheckResult:
    counts: Dict[str, int] = {}
    failures: List[PropertyFailure] = []
    rows = ctx.cocycle.rows()
    n = ctx.group.order

    def record(check: str, ok: bool, detail: str = "") -> None:
        counts[check] = counts.get(check, 0) + 1
        if not ok:
            failures.append(
                PropertyFailure(
                    check=check, group_order=n, cocycle_rows=rows, detail=detail
                )
            )

    def guarded(check: str, fn, detail: str = "") -> None:
        try:
            result = fn()
        except ForgeError as exc:
            record(check, False, f"{detail} raised: {exc}")
            return
        if isinstance(result, bool):
            record(check, result, detail)
        else:
            record(check, result.ok, f"{detail} {result.counterexample}")

    ideals = enumerate_ideals(ctx)
    chains, _ = descending_multichains(ideals, cap=max_chains)

    for chain in chains:
        label = f"chain={[list(i.sorted_members) for i in chain.ideals]}"
        guarded("leq_f", lambda c=chain: check_identity("leq_f", ctx, chain=c), label)
        guarded(
            "chain_break",
            lambda c=chain: check_identity("chain_break", ctx, chain=c),
            label,
        )
        guarded(
            "waterhouse_iff",
            lambda c=chain: check_identity("waterhouse_iff", ctx, chain=c),
            label,
        )

    trivial, _ = classify_annihilators(ctx)
    base_n1 = n1_set(ctx)
    for ideal in ideals:
        label = f"ideal={list(ideal.sorted_members)}"

        def n1_union(i=ideal):
            sub = AlgebraContext(cocycle_mod_ideal(ctx, i))
            return n1_set(sub) == base_n1 | i.members

        guarded("n1_of_quotient", n1_union, label)

        def members_trivial(i=ideal):
            sub = AlgebraContext(cocycle_mod_ideal(ctx, i))
            sub_trivial, _ = classify_annihilators(sub)
            return i.members <= sub_trivial

        guarded("ideal_members_trivial_in_quotient", members_trivial, label)
        guarded(
            "fI_eq_f",
            lambda i=ideal: check_identity("fI_eq_f", ctx, ideal=i),
            label,
        )
        guarded(
            "morphism", lambda i=ideal: morphism_check(ctx, i).ok, label
        )

        def replaceable(i=ideal):
            inner = ideal_closure(ctx, trivial & i.members)
            return check_identity(
                "trivial_annih_replace", ctx, first=i, second=inner
            )

        guarded("trivial_annih_replace", replaceable, label)

    for a, b in combinations(ideals, 2):
        label = f"pair=({list(a.sorted_members)}, {list(b.sorted_members)})"
        outer = ideal_lattice_op("sum", a, b)
        guarded(
            "sum_product",
            lambda o=outer, x=a, y=b: check_identity(
                "sum_product", ctx, outer=o, inner=[x, y]
            ),
            label,
        )
        guarded(
            "intersection_vee",
            lambda o=outer, x=a, y=b: check_identity(
                "intersection_vee", ctx, outer=o, inner=[x, y]
            ),
            label,
        )
        if not a.mask & b.mask:
            guarded(
                "cap_zero",
                lambda x=a, y=b: check_identity("cap_zero", ctx, ideals=[x, y]),
                label,
            )

    def principal_routes():
        gens = all_generators(ctx)
        for s in ctx.gstar:
            principal_via_generators(ctx, s, gens)
        return True

    guarded("principal_two_routes", principal_routes)

    def bstar_parts():
        decompose_by_bstar(ctx)
        return True

    guarded("bstar_recombination", bstar_parts)

    f0 = waterhouse(ctx.group, ctx.inertial)
    if ctx.cocycle.values != f0.values:

        def class_parts():
            outcome = decompose_by_classes(ctx)
            if isinstance(outcome, DecompositionReport):
                return outcome.recombines and all(p.strict for p in outcome.parts)
            return True

        guarded("class_decomposition", class_parts)

    return CocycleCheckResult(counts=counts, failures=tuple(failures))


def check_cocycle_properties(cocycle: Cocycle, max_chains: int = 10_000) -> CocycleCheckResult:
    """Run the full identity sweep against one cocycle.

    Raising checks are reported as failures rather than propagated, so a
    fabricated (mutated) table lands in the failure list with the first
    broken invariant named.
    """
    try:
        ctx = AlgebraContext(cocycle)
    except ValidationError:
        # the all-ones cocycle: the algebra has no radical, nothing to check
        return CocycleCheckResult(counts={}, failures=())
    return _run_suite_checks(ctx, max_chains)


@dataclass(frozen=True)
class CensusReport:
    group_order: int
    cocycle_count: int
    skipped_simple: int
    truncated: bool
    counts: Dict[str, int]
    failures: Tuple[PropertyFailure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def property_suite(
    cfg: CensusConfig, threads: int = 1, lift_samples: int = 3, seed: int = 0
) -> CensusReport:
    """Sweep every census cocycle, plus sampled subadditive-map lifts.

    Deterministic for a fixed seed: the lift checks draw random maps from a
    seeded generator, everything else is exhaustive.
    """
    stream = enumerate_cocycles(cfg, threads=threads)
    counts: Dict[str, int] = {}
    failures: List[PropertyFailure] = []
    skipped = 0

    def merge(result: CocycleCheckResult) -> None:
        for k, v in result.counts.items():
            counts[k] = counts.get(k, 0) + v
        failures.extend(result.failures)

    workers = [
        c for c in stream.cocycles if inertial_group(c).members != tuple(range(cfg.group.order))
    ]
    skipped = len(stream.cocycles) - len(workers)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(
                    lambda c: check_cocycle_properties(c, cfg.max_chains_per_cocycle),
                    workers,
                )
            )
        for result in results:
            merge(result)
    else:
        for c in workers:
            merge(check_cocycle_properties(c, cfg.max_chains_per_cocycle))

    rng = random.Random(seed)
    for _ in range(lift_samples):
        r = random_semilinear(cfg.group, rng)
        fr = cocycle_from_r(r)
        if inertial_group(fr).members == tuple(range(cfg.group.order)):
            continue
        ctx = AlgebraContext(fr)
        chains, _ = descending_multichains(
            enumerate_ideals(ctx), cap=min(64, cfg.max_chains_per_cocycle)
        )
        for chain in chains:
            counts["lift_sandwich"] = counts.get("lift_sandwich", 0) + 1
            try:
                chain_lift(r, chain)
                if not padded_lift(r, chain).certified:
                    raise ValidationError("padding certificate failed")
            except ForgeError as exc:
                failures.append(
                    PropertyFailure(
                        check="lift_sandwich",
                        group_order=cfg.group.order,
                        cocycle_rows=fr.rows(),
                        detail=f"r={list(r.values)} {exc}",
                    )
                )

    return CensusReport(
        group_order=cfg.group.order,
        cocycle_count=len(stream.cocycles),
        skipped_simple=skipped,
        truncated=stream.truncated,
        counts=counts,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class MutationOutcome:
    detected: bool
    stage: Optional[str]  # "validation" or "properties"
    where: Optional[tuple]
    detail: str


def mutation_report(cocycle: Cocycle, s: int, t: int) -> MutationOutcome:
    """Flip one entry of a valid table and report what catches it."""
    n = cocycle.group.order
    if not (0 <= s < n and 0 <= t < n):
        raise ValidationError(f"cell ({s}, {t}) out of range for order {n}")
    rows = [list(r) for r in cocycle.values]
    rows[s][t] ^= 1
    flipped = tuple(tuple(r) for r in rows)
    outcome = validate_cocycle(flipped, cocycle.group)
    if isinstance(outcome, CocycleViolation):
        return MutationOutcome(
            detected=True,
            stage="validation",
            where=outcome.where,
            detail=f"{outcome.kind}: {outcome.detail}",
        )
    fabricated = Cocycle(group=cocycle.group, values=flipped)
    result = check_cocycle_properties(fabricated)
    if result.failures:
        first = result.failures[0]
        return MutationOutcome(
            detected=True,
            stage="properties",
            where=(s, t),
            detail=f"{first.check}: {first.detail}",
        )
    return MutationOutcome(
        detected=False, stage=None, where=(s, t), detail="mutation went unnoticed"
    )


@dataclass(frozen=True)
class CensusRecord:
    """Fingerprint of one census cocycle: the largest k with J^k nonzero,
    the layer sizes |N_k|, and the number of annihilator double-coset
    classes (trivial and non-trivial together)."""

    order: int
    bits: str
    inertial: Tuple[int, ...]
    max_power: int
    nk_sizes: Tuple[int, ...]
    annihilator_classes: int


def census_records(stream: CensusStream) -> List[CensusRecord]:
    """Fingerprint every cocycle of a census for the text output."""
    records = []
    for c in stream.cocycles:
        bits = "".join(c.rows())
        members = inertial_group(c).members
        if members == tuple(range(c.group.order)):
            records.append(
                CensusRecord(
                    order=c.group.order,
                    bits=bits,
                    inertial=members,
                    max_power=0,
                    nk_sizes=(),
                    annihilator_classes=0,
                )
            )
            continue
        ctx = AlgebraContext(c)
        powers, _ = radical_powers(ctx)
        layers = nk_partition(ctx)
        trivial, nontrivial = classify_annihilators(ctx)
        classes = _classes_of(ctx, sorted(trivial | nontrivial))
        records.append(
            CensusRecord(
                order=c.group.order,
                bits=bits,
                inertial=members,
                max_power=len(powers),
                nk_sizes=tuple(len(l) for l in layers),
                annihilator_classes=len(classes),
            )
        )
    return records
