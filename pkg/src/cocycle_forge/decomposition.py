"""Chain cocycles, quotient cocycles, the identity catalog, annihilator-class
decomposition, and the homomorphism checks between an algebra and its
quotients.

The central construction takes a weakly descending chain of ideals
I_1 >= .. >= I_k and keeps an f-product only when all three basis elements
involved sit in the same layer I_i \\ I_{i+1} with i < k.  The one-ideal
quotient cocycle keeps a product exactly when it does not fall into the
ideal; both descriptions are computed on every call and must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (
    AlgebraContext,
    DescendingChain,
    MonomialIdeal,
    chain_levels,
    classify_annihilators,
    ideal_closure,
    ideal_lattice_op,
    principal_ideal,
    radical_powers,
)
from .cocycles import (
    Cocycle,
    CocycleViolation,
    EQUAL,
    LESS,
    compare,
    pointwise_product,
    validate_cocycle,
    vee,
    waterhouse,
)
from .errors import InternalInvariantError, PreconditionError, ValidationError
from .generators import Word, _n1_mask, all_generators, bstar, ideal_of_word

__all__ = [
    "IdentityCheck",
    "MorphismReport",
    "DecompositionPart",
    "DecompositionReport",
    "UniqueClassVerdict",
    "TransportCertificate",
    "cocycle_from_chain",
    "cocycle_mod_ideal",
    "unique_class_ideal",
    "decompose_by_classes",
    "decompose_by_bstar",
    "check_identity",
    "morphism_check",
    "quotient_transport",
    "IDENTITY_NAMES",
]


def _finish(ctx: AlgebraContext, rows: List[List[int]], what: str) -> Cocycle:
    """Validate a constructed table and check the inertial group is kept."""
    result = validate_cocycle(tuple(tuple(r) for r in rows), ctx.group)
    if isinstance(result, CocycleViolation):
        raise InternalInvariantError(f"{what} produced an invalid cocycle: {result}")
    support = [s for s in range(ctx.group.order) if result.values[s][ctx.group.inv(s)] == 1]
    if tuple(support) != ctx.inertial.members:
        raise InternalInvariantError(f"{what} changed the inertial group")
    return result


def cocycle_from_chain(ctx: AlgebraContext, chain: DescendingChain) -> Cocycle:
    """The cocycle of a descending chain.

    A product f(s,t) = 1 survives only when s, t, and st all lie in the same
    layer I_i \\ I_{i+1} with 1 <= i <= k-1; arguments in the inertial group
    always give 1.
    """
    if chain.ctx != ctx:
        raise ValidationError("chain was built over a different context")
    cache: Dict[Tuple[int, ...], Cocycle] = ctx.__dict__.setdefault("_chain_cache", {})
    key = tuple(ideal.mask for ideal in chain.ideals)
    hit = cache.get(key)
    if hit is not None:
        return hit
    n = ctx.group.order
    k = len(chain)
    levels = chain_levels(chain)
    rows = [[1] * n for _ in range(n)]
    for s in ctx.gstar:
        row = rows[s]
        for t in ctx.gstar:
            if ctx.f(s, t) == 1:
                p = ctx.mul(s, t)
                if ctx.in_inertial(p):
                    raise InternalInvariantError(
                        "product of non-inertial elements landed in the inertial group"
                    )
                ls = levels[s]
                row[t] = 1 if 1 <= ls <= k - 1 and levels[t] == ls == levels[p] else 0
            else:
                row[t] = 0
    result = _finish(ctx, rows, "cocycle_from_chain")
    cache[key] = result
    return result


def cocycle_mod_ideal(ctx: AlgebraContext, ideal: MonomialIdeal) -> Cocycle:
    """The quotient cocycle of a single ideal: keep f(s,t) when st avoids it.

    Equals the chain cocycle of {J, I}; both are computed and compared, so
    the direct rule and the layer rule police each other.  I = J gives the
    Waterhouse idempotent and I = 0 gives f back.
    """
    if ideal.ctx != ctx:
        raise ValidationError("ideal was built over a different context")
    cache: Dict[int, Cocycle] = ctx.__dict__.setdefault("_mod_cache", {})
    hit = cache.get(ideal.mask)
    if hit is not None:
        return hit
    n = ctx.group.order
    rows = [[1] * n for _ in range(n)]
    for s in ctx.gstar:
        row = rows[s]
        for t in ctx.gstar:
            row[t] = 1 if ctx.f(s, t) == 1 and ctx.mul(s, t) not in ideal else 0
    result = _finish(ctx, rows, "cocycle_mod_ideal")
    radical = MonomialIdeal(ctx=ctx, members=frozenset(ctx.gstar))
    via_chain = cocycle_from_chain(ctx, DescendingChain(ideals=(radical, ideal)))
    if result.values != via_chain.values:
        raise InternalInvariantError(
            "quotient cocycle disagrees with the two-term chain cocycle"
        )
    cache[ideal.mask] = result
    return result


def _principal_ideals(ctx: AlgebraContext) -> Dict[int, MonomialIdeal]:
    cached = ctx.__dict__.get("_principal_cache")
    if cached is None:
        cached = {s: principal_ideal(ctx, s) for s in ctx.gstar}
        ctx.__dict__["_principal_cache"] = cached
    return cached


def _double_coset(ctx: AlgebraContext, s: int) -> Tuple[int, ...]:
    hs = ctx.inertial.members
    return tuple(sorted({ctx.mul(ctx.mul(h1, s), h2) for h1 in hs for h2 in hs}))


def unique_class_ideal(ctx: AlgebraContext, rho: int) -> MonomialIdeal:
    """Sum of all principal ideals avoiding rho.

    The quotient by the result has [rho] as its unique class of non-trivial
    annihilators; that is re-derived from the quotient context and asserted.
    """
    if not 0 <= rho < ctx.group.order or ctx.in_inertial(rho):
        raise ValidationError(f"not-in-gstar: {rho}")
    if _n1_mask(ctx) >> rho & 1:
        raise ValidationError(f"rho-in-n1: {rho} admits no factorization")
    principal = _principal_ideals(ctx)
    members = frozenset(
        s for g in ctx.gstar if rho not in principal[g] for s in principal[g].members
    )
    ideal = MonomialIdeal(ctx=ctx, members=members)
    sub_ctx = AlgebraContext(cocycle_mod_ideal(ctx, ideal))
    _, sub_nontrivial = classify_annihilators(sub_ctx)
    if sub_nontrivial != frozenset(_double_coset(ctx, rho)):
        raise InternalInvariantError(
            f"quotient by the ideal of {rho} does not isolate its class"
        )
    return ideal


@dataclass(frozen=True)
class DecompositionPart:
    representative: int
    ideal: MonomialIdeal
    cocycle: Cocycle
    strict: bool


@dataclass(frozen=True)
class DecompositionReport:
    parts: Tuple[DecompositionPart, ...]
    recombines: bool


@dataclass(frozen=True)
class UniqueClassVerdict:
    """The cocycle has a single non-trivial annihilator class, so the
    class construction cannot split it into strictly smaller parts."""

    class_members: Tuple[int, ...]

    @property
    def representative(self) -> int:
        return self.class_members[0]


def _classes_of(ctx: AlgebraContext, members: Sequence[int]) -> List[Tuple[int, ...]]:
    seen = set()
    classes = []
    for s in sorted(members):
        if s not in seen:
            cls = _double_coset(ctx, s)
            seen.update(cls)
            classes.append(cls)
    return classes


def decompose_by_classes(
    ctx: AlgebraContext,
) -> Union[DecompositionReport, UniqueClassVerdict]:
    """Split f into quotient cocycles indexed by classes of J^2 elements.

    With a single non-trivial annihilator class no strict splitting exists
    and the verdict is returned instead.  Otherwise every double coset class
    of J^2 contributes the part (rho, unique_class_ideal(rho), quotient),
    the bounds f0 < part < f are recorded per part, and the join of all
    parts is compared against f.
    """
    f = ctx.cocycle
    f0 = waterhouse(ctx.group, ctx.inertial)
    if f.values == f0.values:
        raise ValidationError("nothing-to-decompose: the cocycle is its Waterhouse idempotent")
    _, nontrivial = classify_annihilators(ctx)
    if not nontrivial:
        raise InternalInvariantError(
            "a cocycle above its Waterhouse idempotent has no non-trivial annihilator"
        )
    nta_classes = _classes_of(ctx, sorted(nontrivial))
    if len(nta_classes) == 1:
        return UniqueClassVerdict(class_members=nta_classes[0])
    powers, _ = radical_powers(ctx)
    square = powers[1]
    parts = []
    for cls in _classes_of(ctx, square.sorted_members):
        rho = cls[0]
        ideal = unique_class_ideal(ctx, rho)
        part_cocycle = cocycle_mod_ideal(ctx, ideal)
        strict = (
            compare(f0, part_cocycle) == LESS and compare(part_cocycle, f) == LESS
        )
        parts.append(
            DecompositionPart(
                representative=rho, ideal=ideal, cocycle=part_cocycle, strict=strict
            )
        )
    joined = vee([p.cocycle for p in parts])
    return DecompositionReport(
        parts=tuple(parts), recombines=joined.values == f.values
    )


def decompose_by_bstar(ctx: AlgebraContext) -> List[Tuple[Word, Cocycle]]:
    """One part per maximal non-trivial-annihilator word.

    Each word gamma yields the chain cocycle of {J, I_gamma, 0} where
    I_gamma sums the principal ideals of the word's letters.  The join of
    the parts must reproduce f; with no such words f must already be its
    Waterhouse idempotent.
    """
    words = bstar(all_generators(ctx))
    radical = MonomialIdeal(ctx=ctx, members=frozenset(ctx.gstar))
    zero = MonomialIdeal(ctx=ctx, members=frozenset())
    parts: List[Tuple[Word, Cocycle]] = []
    for word in words:
        chain = DescendingChain(ideals=(radical, ideal_of_word(word), zero))
        parts.append((word, cocycle_from_chain(ctx, chain)))
    if parts:
        joined = vee([c for _, c in parts]).values
    else:
        joined = waterhouse(ctx.group, ctx.inertial).values
    if joined != ctx.cocycle.values:
        raise InternalInvariantError("maximal-word parts do not recombine to f")
    return parts


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    ok: bool
    counterexample: Optional[tuple] = None


def _first_diff(a, b) -> Optional[Tuple[int, int, int, int]]:
    for s, (ra, rb) in enumerate(zip(a, b)):
        for t, (va, vb) in enumerate(zip(ra, rb)):
            if va != vb:
                return (s, t, va, vb)
    return None


def _tables_check(name: str, lhs, rhs) -> IdentityCheck:
    diff = _first_diff(lhs, rhs)
    return IdentityCheck(name=name, ok=diff is None, counterexample=diff)


def _subchain(chain: DescendingChain, lo: int, hi: int) -> DescendingChain:
    return DescendingChain(ideals=chain.ideals[lo:hi])


def _check_chain_break(ctx, chain: DescendingChain, split: Optional[int] = None):
    k = len(chain)
    if split is not None:
        if not 2 <= split <= k - 1:
            raise PreconditionError(f"split position must lie in [2, {k - 1}]")
        lhs = cocycle_from_chain(ctx, chain).values
        rhs = vee(
            [
                cocycle_from_chain(ctx, _subchain(chain, 0, split)),
                cocycle_from_chain(ctx, _subchain(chain, split - 1, k)),
            ]
        ).values
        return _tables_check("chain_break", lhs, rhs)
    lhs = cocycle_from_chain(ctx, chain).values
    pair_tables = [
        cocycle_from_chain(ctx, _subchain(chain, i, i + 2)) for i in range(k - 1)
    ]
    return _tables_check("chain_break", lhs, vee(pair_tables).values)


def _check_waterhouse_iff(ctx, chain: DescendingChain):
    f0 = waterhouse(ctx.group, ctx.inertial)
    collapses = cocycle_from_chain(ctx, chain).values == f0.values
    squeezed = True
    witness = None
    for a in range(len(chain) - 1):
        sq = ideal_lattice_op("product", chain.ideals[a], chain.ideals[a])
        if not sq <= chain.ideals[a + 1]:
            squeezed = False
            witness = (a + 1, tuple(sorted(sq.members - chain.ideals[a + 1].members)))
            break
    ok = collapses == squeezed
    return IdentityCheck(
        name="waterhouse_iff",
        ok=ok,
        counterexample=None if ok else (collapses, squeezed, witness),
    )


def _pair_chain(ctx, outer: MonomialIdeal, inner: MonomialIdeal) -> Cocycle:
    return cocycle_from_chain(ctx, DescendingChain(ideals=(outer, inner)))


def _require_nested(outer: MonomialIdeal, inner: Sequence[MonomialIdeal]) -> None:
    if not inner:
        raise PreconditionError("need at least one inner ideal")
    for i, ideal in enumerate(inner):
        if not ideal <= outer:
            raise PreconditionError(f"inner ideal {i + 1} is not contained in the outer one")


def _check_sum_product(ctx, outer: MonomialIdeal, inner: Sequence[MonomialIdeal]):
    _require_nested(outer, inner)
    total = reduce(lambda a, b: ideal_lattice_op("sum", a, b), inner)
    lhs = _pair_chain(ctx, outer, total).values
    rhs = pointwise_product([_pair_chain(ctx, outer, i) for i in inner]).values
    return _tables_check("sum_product", lhs, rhs)


def _check_intersection_vee(ctx, outer: MonomialIdeal, inner: Sequence[MonomialIdeal]):
    _require_nested(outer, inner)
    total = reduce(lambda a, b: ideal_lattice_op("intersection", a, b), inner)
    lhs = _pair_chain(ctx, outer, total).values
    rhs = vee([_pair_chain(ctx, outer, i) for i in inner]).values
    return _tables_check("intersection_vee", lhs, rhs)


def _check_cap_zero(ctx, ideals: Sequence[MonomialIdeal]):
    if not ideals:
        raise PreconditionError("need at least one ideal")
    meet = reduce(lambda a, b: ideal_lattice_op("intersection", a, b), ideals)
    if meet.members:
        raise PreconditionError(
            f"ideals intersect in {sorted(meet.members)}, not in zero"
        )
    rhs = vee([cocycle_mod_ideal(ctx, i) for i in ideals]).values
    return _tables_check("cap_zero", ctx.cocycle.values, rhs)


def _check_fI_eq_f(ctx, ideal: MonomialIdeal):
    trivial, _ = classify_annihilators(ctx)
    unchanged = cocycle_mod_ideal(ctx, ideal).values == ctx.cocycle.values
    expected = ideal.members <= trivial
    ok = unchanged == expected
    return IdentityCheck(
        name="fI_eq_f",
        ok=ok,
        counterexample=None if ok else (unchanged, expected, tuple(sorted(ideal.members - trivial))),
    )


def _check_trivial_annih_replace(ctx, first: MonomialIdeal, second: MonomialIdeal):
    trivial, _ = classify_annihilators(ctx)
    if not second <= first:
        raise PreconditionError("second ideal is not contained in the first")
    if not second.members <= trivial:
        raise PreconditionError(
            f"second ideal contains non-trivial-annihilator members "
            f"{sorted(second.members - trivial)}"
        )
    zero = MonomialIdeal(ctx=ctx, members=frozenset())
    lhs = _pair_chain(ctx, first, second).values
    rhs = _pair_chain(ctx, first, zero).values
    return _tables_check("trivial_annih_replace", lhs, rhs)


def _check_leq_f(ctx, chain: DescendingChain):
    verdict = compare(cocycle_from_chain(ctx, chain), ctx.cocycle)
    ok = verdict in (LESS, EQUAL)
    return IdentityCheck(name="leq_f", ok=ok, counterexample=None if ok else (verdict,))


IDENTITY_NAMES = (
    "chain_break",
    "waterhouse_iff",
    "sum_product",
    "intersection_vee",
    "cap_zero",
    "fI_eq_f",
    "trivial_annih_replace",
    "leq_f",
)


def check_identity(name: str, ctx: AlgebraContext, **kwargs) -> IdentityCheck:
    """Evaluate one named identity, returning a counterexample on failure.

    Violated hypotheses raise PreconditionError; a False result always means
    the identity itself failed on valid input.
    """
    checks = {
        "chain_break": _check_chain_break,
        "waterhouse_iff": _check_waterhouse_iff,
        "sum_product": _check_sum_product,
        "intersection_vee": _check_intersection_vee,
        "cap_zero": _check_cap_zero,
        "fI_eq_f": _check_fI_eq_f,
        "trivial_annih_replace": _check_trivial_annih_replace,
        "leq_f": _check_leq_f,
    }
    if name not in checks:
        raise ValidationError(f"unknown identity {name!r}; choose from {IDENTITY_NAMES}")
    return checks[name](ctx, **kwargs)


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    scaling_ok: bool
    first_violation: Optional[Tuple[int, int]]
    phi_kernel: Tuple[int, ...]
    phi_kernel_ok: bool
    psi_ok: bool
    psi_first_violation: Optional[Tuple[int, int]]
    dims: Tuple[int, int, int]
    dimension_ok: bool
    section_ok: bool


def morphism_check(ctx: AlgebraContext, ideal: MonomialIdeal) -> MorphismReport:
    """Verify the scaling map into the quotient cocycle's algebra.

    With a(s) = 1 exactly when s avoids the ideal, the map x_s -> a(s) y_s
    must satisfy f(s,t) a(st) = a(s) a(t) f_I(s,t) at every pair; its kernel
    is the ideal.  The projection that drops ideal members must likewise be
    multiplicative on the surviving basis, the dimensions must split, and
    projecting back the section must be the identity.
    """
    if ideal.ctx != ctx:
        raise ValidationError("ideal was built over a different context")
    n = ctx.group.order
    fI = cocycle_mod_ideal(ctx, ideal)
    a = [0 if s in ideal else 1 for s in range(n)]
    first = None
    for s in range(n):
        for t in range(n):
            st = ctx.mul(s, t)
            if ctx.f(s, t) * a[st] != a[s] * a[t] * fI.values[s][t]:
                first = (s, t)
                break
        if first:
            break
    phi_kernel = tuple(s for s in range(n) if a[s] == 0)
    phi_kernel_ok = phi_kernel == ideal.sorted_members
    psi_first = None
    for s in range(n):
        for t in range(n):
            keep = a[ctx.mul(s, t)]
            if fI.values[s][t] * keep != ctx.f(s, t) * keep:
                psi_first = (s, t)
                break
        if psi_first:
            break
    survivors = [s for s in range(n) if a[s] == 1]
    dims = (n, len(survivors), len(ideal))
    dimension_ok = dims[0] == dims[1] + dims[2]
    psi = {s: (s if a[s] == 1 else None) for s in range(n)}
    section_ok = all(psi[s] == s for s in survivors)
    ok = (
        first is None
        and phi_kernel_ok
        and psi_first is None
        and dimension_ok
        and section_ok
    )
    return MorphismReport(
        ok=ok,
        scaling_ok=first is None,
        first_violation=first,
        phi_kernel=phi_kernel,
        phi_kernel_ok=phi_kernel_ok,
        psi_ok=psi_first is None,
        psi_first_violation=psi_first,
        dims=dims,
        dimension_ok=dimension_ok,
        section_ok=section_ok,
    )


@dataclass(frozen=True)
class TransportCertificate:
    union_ideal: MonomialIdeal
    equal: bool
    psi_kernel: Tuple[int, ...]
    chain_equal: Optional[bool] = None


def quotient_transport(
    ctx: AlgebraContext,
    ideal: MonomialIdeal,
    p_members: Sequence[int],
    chain: Optional[DescendingChain] = None,
) -> TransportCertificate:
    """Quotienting twice equals quotienting once by the union.

    P must be an ideal of the quotient context; the union P with I is then
    automatically closed in the original context, and the double quotient
    (f_I)_P coincides with f over the union ideal.  Given a full chain
    ending at I, the member sets of its ideals transport to a chain of the
    quotient context with an equal chain cocycle.
    """
    fI = cocycle_mod_ideal(ctx, ideal)
    sub_ctx = AlgebraContext(fI)
    try:
        p_ideal = MonomialIdeal(ctx=sub_ctx, members=frozenset(p_members))
    except ValidationError as exc:
        raise ValidationError(f"invalid-ideal: {exc}") from exc
    union = set(p_ideal.members) | set(ideal.members)
    union_ideal = ideal_closure(ctx, union)
    if union_ideal.members != frozenset(union):
        raise InternalInvariantError("union of quotient ideal and kernel is not closed")
    lhs = cocycle_mod_ideal(sub_ctx, p_ideal)
    rhs = cocycle_mod_ideal(ctx, union_ideal)
    if lhs.values != rhs.values:
        raise InternalInvariantError("double quotient differs from the union quotient")
    chain_equal = None
    if chain is not None:
        if chain.ctx != ctx:
            raise ValidationError("chain was built over a different context")
        if chain.ideals[-1].members != ideal.members:
            raise ValidationError("chain must end at the quotient ideal")
        transported = DescendingChain(
            ideals=tuple(
                MonomialIdeal(ctx=sub_ctx, members=i.members) for i in chain.ideals
            )
        )
        chain_equal = (
            cocycle_from_chain(ctx, chain).values
            == cocycle_from_chain(sub_ctx, transported).values
        )
        if not chain_equal:
            raise InternalInvariantError("chain transport changed the chain cocycle")
    return TransportCertificate(
        union_ideal=union_ideal,
        equal=True,
        psi_kernel=ideal.sorted_members,
        chain_equal=chain_equal,
    )
