"""Achievable orders of linear automorphisms of smooth hypersurfaces.

For degree d and N variables every such order divides one of finitely many
bounds built from Klein-block orders |1-(1-d)^a| and chain orders
(d-1)^(b-1). This module enumerates those bounds, reduces them to the
divisibility-maximal ones, and realizes each order by an explicit diagonal
automorphism of a simple polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .abelian import (
    divisors,
    element_order_set,
    factorize,
    maximal_under_divisibility,
    quotient_group,
)
from .diagact import (
    DiagonalAutomorphism,
    acts_with_character,
    block_generators,
    combine,
    pgl_order,
    predicted_group,
)
from .errors import VerificationFailure
from .polyforms import SimpleType, Support, simple_support


def klein_order(d: int, a: int) -> int:
    return abs(1 - (1 - d) ** a)


def chain_order(d: int, b: int) -> int:
    return (d - 1) ** (b - 1)


@dataclass(frozen=True)
class OrderCase:
    """One bound from the case analysis; every order in that case divides ``bound_value``.

    ``parameters`` is ``(N,)`` for cases i and ii, the Klein lengths for iii
    and iv, and the Klein lengths followed by the chain length for v.
    """

    case_tag: str
    parameters: tuple[int, ...]
    bound_value: int

    def describe(self) -> str:
        if self.case_tag in ("i", "ii"):
            return f"({self.case_tag}) N={self.parameters[0]}"
        if self.case_tag == "v":
            return f"(v) a={self.parameters[:-1]} b={self.parameters[-1]}"
        return f"({self.case_tag}) a={self.parameters}"


def _increasing_tuples(limit: int, start: int = 1) -> Iterator[tuple[int, ...]]:
    """Nonempty strictly increasing tuples of integers >= start with sum <= limit."""
    for a in range(start, limit + 1):
        yield (a,)
        for rest in _increasing_tuples(limit - a, a + 1):
            yield (a,) + rest


def order_cases(d: int, N: int) -> list[OrderCase]:
    if d < 3 or N < 3:
        raise ValueError("need d >= 3 and N >= 3")
    cases = [
        OrderCase("i", (N,), klein_order(d, N) // d),
        OrderCase("ii", (N,), chain_order(d, N)),
    ]
    cases += [OrderCase("iii", (a,), klein_order(d, a)) for a in range(1, N)]
    for tup in _increasing_tuples(N):
        if len(tup) >= 2:
            cases.append(OrderCase("iv", tup, math.lcm(*(klein_order(d, a) for a in tup))))
    for b in range(2, N):
        for tup in _increasing_tuples(N - b):
            value = math.lcm(*(klein_order(d, a) for a in tup), chain_order(d, b))
            cases.append(OrderCase("v", tup + (b,), value))
    return cases


def order_set(d: int, N: int) -> list[int]:
    """Divisibility-maximal achievable orders; an order occurs iff it divides one of them."""
    return maximal_under_divisibility(c.bound_value for c in order_cases(d, N))


def expand_orders(maximal: list[int], trial_bound: int | None = None) -> list[int]:
    kwargs = {} if trial_bound is None else {"trial_bound": trial_bound}
    return sorted({x for m in maximal for x in divisors(m, **kwargs)})


def _partitions(n: int, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """Partitions of n into parts >= min_part, parts ascending."""
    if n == 0:
        yield ()
        return
    for p in range(min_part, n + 1):
        for rest in _partitions(n - p, p):
            yield (p,) + rest


def _search_key(t: SimpleType):
    return (t.n_parts, tuple(sorted(t.k_parts + t.t_parts)), t.t_parts, t.k_parts)


def enumerate_simple_types(
    d: int, N: int, exact: bool = True, at_most_one_t: bool = False
) -> list[SimpleType]:
    """All simple types on exactly (or at most) N variables, fewest parts first.

    ``d`` does not change the shapes; it is accepted so callers can pass the
    same arguments everywhere.
    """
    if N < 1:
        raise ValueError("need N >= 1")
    totals = [N] if exact else range(1, N + 1)
    found = []
    for total in totals:
        for t_sum in range(0, total + 1):
            for ts in _partitions(t_sum, 2):
                if at_most_one_t and len(ts) > 1:
                    continue
                for ks in _partitions(total - t_sum):
                    if ks or ts:
                        found.append(SimpleType(ks, ts))
    return sorted(found, key=_search_key)


def max_element_order(d: int, t: SimpleType) -> int:
    """Largest projective order of a diagonal automorphism of the simple polynomial of type ``t``."""
    p = predicted_group(d, t)
    if len(p.cyclic_orders) >= 2:
        return element_order_set(p, d)[0]
    return quotient_group(p).exponent


def admits_order(d: int, t: SimpleType, n: int) -> bool:
    return n >= 1 and max_element_order(d, t) % n == 0


def _max_order_element(d: int, t: SimpleType) -> DiagonalAutomorphism:
    """An automorphism of maximal order built from powers of the block generators.

    A lone Klein block uses its generator as is; a lone chain uses the d-th
    power of its character-0 generator, which has the same projective order
    but denominator (d-1)^(b-1). Otherwise,
    for each prime p | d one block with the least p-adic valuation of its
    order contributes its generator raised to p; the rest contribute their
    generators unchanged, and the product then has order lcm of the block
    orders. Ties go to chain blocks, then to larger block orders, then to the
    earlier block.
    """
    gens = block_generators(d, t)
    if len(gens) == 1:
        return gens[0] ** d if t.t_parts else gens[0]
    orders = predicted_group(d, t).cyclic_orders
    kinds = [kind for kind, _ in t.blocks()]
    powers = [1] * len(gens)
    for p in factorize(d):
        def valuation(m: int) -> int:
            v = 0
            while m % p == 0:
                m //= p
                v += 1
            return v

        j = min(range(len(gens)), key=lambda j: (valuation(orders[j]), kinds[j] != "T", -orders[j], j))
        powers[j] *= p
    return combine(gens, powers)


class Witness(NamedTuple):
    simple_type: SimpleType
    automorphism: DiagonalAutomorphism

    def support(self, d: int) -> Support:
        return simple_support(d, self.simple_type)


def build_witness(d: int, t: SimpleType, n: int) -> Witness:
    """An automorphism of projective order exactly ``n`` of the type-``t`` polynomial, verified."""
    top = _max_order_element(d, t)
    L = pgl_order(top)
    if L % n:
        raise ValueError(f"type {t} has no automorphism of order {n} (maximal order {L})")
    g = top ** (L // n)
    s = simple_support(d, t)
    acts_with_character(g, s)
    if pgl_order(g) != n:
        raise VerificationFailure(f"constructed {g} has order {pgl_order(g)}, wanted {n}")
    return Witness(t, g)


def fermat_type(N: int) -> SimpleType:
    return SimpleType((1,) * N)


def witness_for_order(d: int, N: int, n: int) -> Witness | None:
    """A simple polynomial in N variables with a diagonal automorphism of order ``n``.

    Types are tried fewest parts first with at most one chain of length >= 2;
    ``None`` means no such type exists. The identity is reported on the
    Fermat polynomial.
    """
    if d < 3 or N < 3 or n < 1:
        raise ValueError("need d >= 3, N >= 3, n >= 1")
    if n == 1:
        return Witness(fermat_type(N), DiagonalAutomorphism.identity(N))
    for t in enumerate_simple_types(d, N, exact=True, at_most_one_t=True):
        if admits_order(d, t, n):
            return build_witness(d, t, n)
    return None


def liftable_sufficient(cyclic_orders: list[int], d: int, N: int) -> bool:
    """True when some cyclic factor leaves a cofactor of order coprime to gcd(d, N).

    This is a sufficient condition for an abelian action to lift to GL(N);
    ``False`` does not mean the action fails to lift.
    """
    g = math.gcd(d, N)
    orders = list(cyclic_orders)
    if not orders:
        return True
    for i in range(len(orders)):
        rest = math.prod(orders[:i] + orders[i + 1:])
        if math.gcd(rest, g) == 1:
            return True
    return False


@dataclass
class OrderReport:
    d: int
    N: int
    maximal_orders: list[int]
    per_case: list[OrderCase]
    witnesses: dict[int, Witness] = field(default_factory=dict)

    def provenance(self) -> dict[int, list[OrderCase]]:
        return {m: [c for c in self.per_case if c.bound_value == m] for m in self.maximal_orders}


def order_report(d: int, N: int, with_witnesses: bool = True) -> OrderReport:
    cases = order_cases(d, N)
    maximal = maximal_under_divisibility(c.bound_value for c in cases)
    report = OrderReport(d, N, maximal, cases)
    if with_witnesses:
        for m in maximal:
            w = witness_for_order(d, N, m)
            if w is not None:
                report.witnesses[m] = w
    return report


# Published explicit realizations for cubic fourfolds: (order, type, automorphism).
REFERENCE_CUBIC_FOURFOLDS = (
    (21, "K6", "1/63(1,-2,4,-8,16,-32)"),
    (30, "T2+K4", "1/30(15,0,2,-4,8,-16)"),
    (32, "T6", "1/32(1,-2,4,-8,16,0)"),
    (33, "K1+K5", "1/33(11,3,-6,12,9,-18)"),
    (36, "T3+K3", "1/36(9,-18,0,4,-8,16)"),
    (48, "T5+K1", "1/48(3,-6,12,-24,0,16)"),
)


@dataclass
class Cubic4Report:
    report: OrderReport
    admitting_types: dict[int, list[SimpleType]]
    reference_match: dict[int, bool]

    def unique(self) -> bool:
        return all(len(v) == 1 for v in self.admitting_types.values())


def types_admitting(d: int, N: int, n: int) -> list[SimpleType]:
    return [t for t in enumerate_simple_types(d, N, exact=True) if admits_order(d, t, n)]


def cubic4_report() -> Cubic4Report:
    """Orders for smooth cubic fourfolds, their witnesses, and the type-uniqueness scan."""
    report = order_report(3, 6)
    admitting = {n: types_admitting(3, 6, n) for n in report.maximal_orders}
    match = {}
    for n, type_text, aut_text in REFERENCE_CUBIC_FOURFOLDS:
        w = report.witnesses.get(n)
        match[n] = (
            w is not None
            and w.simple_type == SimpleType.parse(type_text)
            and w.automorphism.projectively_equal(DiagonalAutomorphism.parse(aut_text))
        )
    return Cubic4Report(report, admitting, match)
