"""Slow, independent checks for the fast paths.

Nothing here calls Smith normal form: group structures are recovered from
element-order counts, quotients are enumerated coset by coset, and singular
points are checked by evaluating partial derivatives in exact cyclotomic
arithmetic (or in floating point, as a second opinion).
"""

from __future__ import annotations

import cmath
import itertools
import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .abelian import FiniteAbelianGroup, QuotientPresentation
from .errors import BudgetExceeded
from .polyforms import IndexVector, SingularWitness, Support, build_f_i

FLOAT_TOLERANCE = 1e-9


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _exact_log(x: int, p: int) -> int:
    e = 0
    while x > 1:
        x, r = divmod(x, p)
        if r:
            raise ArithmeticError("element counts are not prime powers")
        e += 1
    return e


def _valuation(x: int, p: int) -> int:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def group_from_elements(elements, modulus: int) -> FiniteAbelianGroup:
    """Invariant factors of a finite subgroup of (Z/modulus)^r given by all its elements.

    For each prime p the number of elements killed by p^k determines how many
    cyclic factors have p-part at least p^k; the invariant factors are
    reassembled from those counts.
    """
    elements = [tuple(e) for e in elements]
    order = len(elements)

    def killed_by(m: int) -> int:
        return sum(1 for e in elements if all(m * x % modulus == 0 for x in e))

    n_factors: list[int] = []
    for p in _prime_factors(order):
        p_part = p ** _valuation(order, p)
        counts, k = [1], 0
        while counts[-1] < p_part:
            k += 1
            counts.append(killed_by(p**k))
        # at_least[j]: number of cyclic factors whose p-part is >= p^(j+1)
        at_least = [_exact_log(counts[j + 1] // counts[j], p) for j in range(k)]
        exponents = []
        for j in range(k):
            nxt = at_least[j + 1] if j + 1 < k else 0
            exponents += [j + 1] * (at_least[j] - nxt)
        exponents.sort(reverse=True)
        for i, e in enumerate(exponents):
            if i == len(n_factors):
                n_factors.append(1)
            n_factors[i] *= p**e
    return FiniteAbelianGroup(tuple(sorted(n_factors)))


def brute_force_symmetry_group(s: Support, modulus: int, budget: int = 200**3) -> FiniteAbelianGroup:
    """The ``modulus``-torsion of G_F by exhaustive search.

    Tuples (0, a_2, ..., a_N) over Z/modulus are kept when every monomial
    picks up the same character. If ``modulus`` is not a multiple of the
    group exponent the answer is a proper subgroup, not an error.
    """
    n = s.n_vars
    if n > 4 or modulus > 200:
        raise BudgetExceeded("brute force is limited to 4 variables and modulus 200")
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if modulus ** (n - 1) > budget:
        raise BudgetExceeded(f"{modulus ** (n - 1)} tuples exceed the budget of {budget}")
    mons = list(s.monomials)
    found = []
    for tail in itertools.product(range(modulus), repeat=n - 1):
        e = (0,) + tail
        first = sum(a * x for a, x in zip(mons[0], e)) % modulus
        if all(sum(a * x for a, x in zip(m, e)) % modulus == first for m in mons[1:]):
            found.append(tail)
    return group_from_elements(found, modulus)


def coset_enumerate(p: QuotientPresentation, budget: int = 10**5) -> Counter:
    """Multiset of element orders of (Z/m_1 + ... + Z/m_k)/<c>, by listing cosets."""
    ms = p.cyclic_orders
    size = math.prod(ms)
    if size > budget:
        raise BudgetExceeded(f"{size} elements exceed the budget of {budget}")
    c = p.killed_element

    def add(x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, ms))

    zero = tuple(0 for _ in ms)
    subgroup = {zero}
    cur = c
    while cur not in subgroup:
        subgroup.add(cur)
        cur = add(cur, c)

    # Every coset order divides the index, so only those candidates are tried.
    index = size // len(subgroup)
    candidates = [k for k in range(1, index + 1) if index % k == 0]
    seen = set()
    orders = Counter()
    for x in itertools.product(*(range(m) for m in ms)):
        if x in seen:
            continue
        seen.update(add(x, h) for h in subgroup)
        k = next(k for k in candidates if tuple(k * a % m for a, m in zip(x, ms)) in subgroup)
        orders[k] += 1
    return orders


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant term first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_divide(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = num[i + len(den) - 1] // den[-1]
        q[i] = coef
        for j, dj in enumerate(den):
            num[i + j] -= coef * dj
    if any(num):
        raise ArithmeticError("cyclotomic division left a remainder")
    return q


class CyclotomicValue:
    """An element of Q(zeta_n) as rational coefficients on 1, zeta, ..., zeta^(n-1)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        self.coeffs = [Fraction(0)] * n if coeffs is None else [Fraction(c) for c in coeffs]

    @classmethod
    def root(cls, n: int, k: int) -> CyclotomicValue:
        v = cls(n)
        v.coeffs[k % n] = Fraction(1)
        return v

    @classmethod
    def constant(cls, n: int, c) -> CyclotomicValue:
        v = cls(n)
        v.coeffs[0] = Fraction(c)
        return v

    def __add__(self, other: CyclotomicValue) -> CyclotomicValue:
        return CyclotomicValue(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if not isinstance(other, CyclotomicValue):
            return CyclotomicValue(self.n, [a * other for a in self.coeffs])
        out = [Fraction(0)] * self.n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % self.n] += a * b
        return CyclotomicValue(self.n, out)

    def __pow__(self, k: int) -> CyclotomicValue:
        out = CyclotomicValue.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        """Exact test: reduce modulo the n-th cyclotomic polynomial."""
        phi = cyclotomic_polynomial(self.n)
        rem = self.coeffs[:]
        for i in range(len(rem) - 1, len(phi) - 2, -1):
            c = rem[i]
            if c:
                for j, pj in enumerate(phi):
                    rem[i - len(phi) + 1 + j] -= c * pj
        return not any(rem[: len(phi) - 1])

    def to_complex(self) -> complex:
        return sum(complex(c) * cmath.exp(2j * cmath.pi * k / self.n) for k, c in enumerate(self.coeffs) if c)


def _partials(s: Support) -> list[dict[tuple[int, ...], int]]:
    out = []
    for j in range(s.n_vars):
        terms: dict[tuple[int, ...], int] = {}
        for m in s.monomials:
            if m[j]:
                dm = list(m)
                dm[j] -= 1
                terms[tuple(dm)] = terms.get(tuple(dm), 0) + m[j]
        out.append(terms)
    return out


def verify_singular_point(iv: IndexVector, w: SingularWitness, mode: str = "exact") -> bool:
    """Whether every partial derivative of F_I vanishes at the witness point."""
    s = build_f_i(iv)
    if len(w.point) != s.n_vars:
        raise ValueError("witness length does not match the number of variables")
    partials = _partials(s)
    if mode == "exact":
        n = math.lcm(*(c.denominator for c in w.point if c is not None))
        coords = [None if c is None else CyclotomicValue.root(n, int(c * n)) for c in w.point]
        for terms in partials:
            total = CyclotomicValue(n)
            for mono, coef in terms.items():
                if any(e and coords[i] is None for i, e in enumerate(mono)):
                    continue
                term = CyclotomicValue.constant(n, coef)
                for i, e in enumerate(mono):
                    if e:
                        term = term * coords[i] ** e
                total = total + term
            if not total.is_zero():
                return False
        return True
    if mode == "float":
        coords = [0j if c is None else cmath.exp(2j * cmath.pi * float(c)) for c in w.point]
        worst = 0.0
        for terms in partials:
            val = sum(coef * math.prod(coords[i] ** e for i, e in enumerate(mono)) for mono, coef in terms.items())
            worst = max(worst, abs(val))
        return worst < FLOAT_TOLERANCE
    raise ValueError(f"unknown mode {mode!r}")
