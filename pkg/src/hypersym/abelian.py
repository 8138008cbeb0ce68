"""Exact finite abelian group arithmetic over Python integers.

Smith normal form with unimodular transforms, quotients of direct sums of
cyclic groups by one element, invariant factors, element orders, and divisor
enumeration. Nothing in here touches floating point.

>>> quotient_group(QuotientPresentation((3, 3, 3), (1, 1, 1)))
FiniteAbelianGroup(invariant_factors=(3, 3))
>>> divisors(48)
[1, 2, 3, 4, 6, 8, 12, 16, 24, 48]
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FactorizationLimit, HypothesisViolation

Matrix = list[list[int]]

DEFAULT_TRIAL_BOUND = 10**7
RHO_SEED = 0x5EED
RHO_RETRIES = 24


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SNFResult:
    """``u @ a @ v == diag(d)``, with ``v_inv`` the exact inverse of ``v``."""

    d: tuple[int, ...]
    u: Matrix
    v: Matrix
    v_inv: Matrix
    rank: int


def smith_normal_form(a: Sequence[Sequence[int]], ncols: int | None = None) -> SNFResult:
    """Smith normal form of an integer matrix with unimodular transforms.

    ``ncols`` is only needed when ``a`` has no rows. The pivot is always the
    nonzero entry of least absolute value in the trailing block, ties going to
    the lowest row and then the lowest column, so the output is a function of
    the input alone.
    """
    a = [list(map(int, row)) for row in a]
    m = len(a)
    n = len(a[0]) if m else (ncols or 0)
    u = identity(m)
    v = identity(n)
    v_inv = identity(n)

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]
            v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        # col_dst += q * col_src; the inverse picks up row_src -= q * row_dst
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]
        v_inv[src] = [x - q * y for x, y in zip(v_inv[src], v_inv[dst])]

    rank = 0
    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i][j]
                    if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    add_row(i, t, -q)
                if a[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    add_col(j, t, -q)
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] == 0:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        rank += 1

    d = tuple(a[i][i] for i in range(min(m, n)))
    return SNFResult(d=d, u=u, v=v, v_inv=v_inv, rank=rank)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group in invariant-factor form n_1 | n_2 | ... | n_k.

    Every factor is at least 2; the trivial group has no factors. Two
    instances are isomorphic exactly when they compare equal.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(x) for x in self.invariant_factors))
        fs = self.invariant_factors
        if any(x < 2 for x in fs):
            raise ValueError(f"invariant factors must be >= 2, got {fs}")
        if any(b % a for a, b in zip(fs, fs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {fs}")

    @classmethod
    def from_cyclic_orders(cls, orders: Iterable[int]) -> FiniteAbelianGroup:
        """Canonical form of a direct sum of cyclic groups Z/m_i (each m_i >= 1)."""
        orders = [int(x) for x in orders]
        if any(x < 1 for x in orders):
            raise ValueError("cyclic orders must be positive")
        k = len(orders)
        diag = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
        return cls(tuple(x for x in smith_normal_form(diag, ncols=k).d if x > 1))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def has_element_of_order(self, n: int) -> bool:
        return n >= 1 and self.exponent % n == 0

    def __str__(self):
        if not self.invariant_factors:
            return "1"
        return " x ".join(f"Z/{x}" for x in self.invariant_factors)


@dataclass(frozen=True)
class QuotientPresentation:
    """(Z/m_1 + ... + Z/m_k) / <(c_1, ..., c_k)>, with c_i reduced mod m_i."""

    cyclic_orders: tuple[int, ...]
    killed_element: tuple[int, ...]

    def __post_init__(self):
        ms = tuple(int(m) for m in self.cyclic_orders)
        if any(m < 1 for m in ms):
            raise ValueError(f"cyclic orders must be >= 1, got {ms}")
        if len(self.killed_element) != len(ms):
            raise ValueError("killed element has the wrong length")
        object.__setattr__(self, "cyclic_orders", ms)
        object.__setattr__(
            self, "killed_element", tuple(int(c) % m for c, m in zip(self.killed_element, ms))
        )

    def relation_matrix(self) -> Matrix:
        k = len(self.cyclic_orders)
        rows = [[self.cyclic_orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
        rows.append(list(self.killed_element))
        return rows

    def killed_order(self) -> int:
        return math.lcm(*(m // math.gcd(m, c) for m, c in zip(self.cyclic_orders, self.killed_element)))


def quotient_generators(p: QuotientPresentation) -> list[tuple[int, tuple[int, ...]]]:
    """Invariant factors of the quotient with a generator for each.

    Returns pairs ``(n_j, x_j)`` where ``x_j`` is a coefficient vector on the
    cyclic summands whose class has order exactly ``n_j``. Factors equal to 1
    are dropped.
    """
    k = len(p.cyclic_orders)
    res = smith_normal_form(p.relation_matrix(), ncols=k)
    return [
        (dj, tuple(x % m for x, m in zip(res.v_inv[j], p.cyclic_orders)))
        for j, dj in enumerate(res.d)
        if dj > 1
    ]


def quotient_group(p: QuotientPresentation) -> FiniteAbelianGroup:
    return FiniteAbelianGroup(tuple(n for n, _ in quotient_generators(p)))


def element_order_set(p: QuotientPresentation, d: int) -> list[int]:
    """Maximal element order of the quotient when every killed entry has order d.

    With at least two summands and each c_i of order exactly ``d`` in Z/m_i,
    the achievable orders are precisely the divisors of lcm(m_i). The
    divisor-closed set is returned by its single maximal element.
    """
    k = len(p.cyclic_orders)
    if k < 2:
        raise HypothesisViolation(f"need at least two cyclic summands, got {k}")
    for m, c in zip(p.cyclic_orders, p.killed_element):
        if m // math.gcd(m, c) != d:
            raise HypothesisViolation(f"killed entry {c} has order {m // math.gcd(m, c)} in Z/{m}, not {d}")
    return [math.lcm(*p.cyclic_orders)]


def max_element_order(g: FiniteAbelianGroup) -> int:
    return g.exponent


def maximal_under_divisibility(values: Iterable[int]) -> list[int]:
    """The divisibility-maximal elements of ``values``, ascending."""
    vals = sorted(set(int(v) for v in values))
    return [v for i, v in enumerate(vals) if not any(w % v == 0 for w in vals[i + 1:])]


def divides_some(n: int, maximal: Iterable[int]) -> bool:
    return any(m % n == 0 for m in maximal)


# ---------------------------------------------------------------- factoring

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 with the fixed bases used."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    r, s = n - 1, 0
    while r % 2 == 0:
        r //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, r, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int | None:
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        if r > 1 << 22:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def factorize(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND, seed: int = RHO_SEED) -> dict[int, int]:
    """Prime factorization as ``{prime: exponent}``.

    Small primes are stripped by trial division, composite cofactors are split
    with Brent's variant of Pollard rho under a fixed seed, and anything still
    unsplit gets the remaining trial division up to ``trial_bound``. If that
    fails too, :class:`FactorizationLimit` is raised.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    factors: dict[int, int] = {}

    def add(p: int, e: int = 1) -> None:
        factors[p] = factors.get(p, 0) + e

    def trial(r: int, lo: int, hi: int) -> tuple[int, int]:
        p = lo
        while p <= hi and p * p <= r:
            while r % p == 0:
                add(p)
                r //= p
            p += 1 if p == 2 else 2
        return r, p

    quick = min(trial_bound, 10**4)
    n, _ = trial(n, 2, quick)
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    stubborn = []
    while stack:
        r = stack.pop()
        if r == 1:
            continue
        if r < (quick + 1) ** 2 or is_probable_prime(r):
            add(r)
            continue
        for _ in range(RHO_RETRIES):
            f = _pollard_brent(r, rng)
            if f:
                stack.extend((f, r // f))
                break
        else:
            stubborn.append(r)
    for r in stubborn:
        r, p = trial(r, quick + 1 if quick % 2 == 0 else quick + 2, trial_bound)
        if r > 1 and not (p * p > r or is_probable_prime(r)):
            raise FactorizationLimit(f"could not factor {r} (trial bound {trial_bound})")
        if r > 1:
            add(r)
    return dict(sorted(factors.items()))


def divisors(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> list[int]:
    """All positive divisors of ``n`` in ascending order."""
    divs = [1]
    for p, e in factorize(n, trial_bound).items():
        divs = [x * p**k for x in divs for k in range(e + 1)]
    return sorted(divs)
