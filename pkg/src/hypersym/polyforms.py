"""Monomial supports, the F_I family, and simple (Klein/chain) polynomial types.

Exponent vectors are plain tuples of ints. Variables are numbered from 1 in
everything user-facing (index-vector targets, counterexample sets, printed
polynomials) and from 0 in tuple positions.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import ComplexityRefusal

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class Support:
    """The set of monomials of a degree-``d`` form in ``n_vars`` variables."""

    d: int
    n_vars: int
    monomials: frozenset[Exponents]

    def __post_init__(self):
        mons = frozenset(tuple(int(x) for x in m) for m in self.monomials)
        object.__setattr__(self, "monomials", mons)
        if self.n_vars < 1:
            raise ValueError("a support needs at least one variable")
        if not mons:
            raise ValueError("a support needs at least one monomial")
        for m in mons:
            if len(m) != self.n_vars or min(m) < 0 or sum(m) != self.d:
                raise ValueError(f"monomial {m} is not a degree-{self.d} exponent vector in {self.n_vars} variables")

    def sorted_monomials(self) -> list[Exponents]:
        return sorted(self.monomials, reverse=True)

    def to_json(self) -> dict:
        return {"d": self.d, "n_vars": self.n_vars, "monomials": [list(m) for m in self.sorted_monomials()]}

    @classmethod
    def from_json(cls, data, d: int | None = None) -> Support:
        """Load from ``{"d", "n_vars", "monomials"}`` or a bare list of exponent arrays."""
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, dict):
            mons = data["monomials"]
            d = data.get("d", d)
            n_vars = data.get("n_vars")
        else:
            mons, n_vars = data, None
        if not mons:
            raise ValueError("support has no monomials")
        if n_vars is None:
            n_vars = len(mons[0])
        if d is None:
            d = sum(mons[0])
        return cls(int(d), int(n_vars), frozenset(map(tuple, mons)))


def format_polynomial(s: Support) -> str:
    """``x1^2*x2 + x2^3``-style text with every coefficient equal to 1.

    Each term leads with its highest-power variable and terms are ordered by
    that variable, so x6^2*x1 closes a Klein block rather than opening it.
    """

    def lead(m):
        return max(range(len(m)), key=lambda i: (m[i], -i))

    terms = []
    for m in sorted(s.monomials, key=lambda m: (lead(m), [-e for e in m])):
        order = [lead(m)] + [i for i in range(len(m)) if m[i] and i != lead(m)]
        terms.append("*".join(f"x{i + 1}" + (f"^{m[i]}" if m[i] > 1 else "") for i in order))
    return " + ".join(terms)


_FACTOR = re.compile(r"x_?\{?(\d+)\}?(?:\^\{?(\d+)\}?)?")


def parse_polynomial(text: str, n_vars: int | None = None) -> Support:
    """Inverse of :func:`format_polynomial`; coefficients are ignored."""
    parsed = []
    for term in text.split("+"):
        found = _FACTOR.findall(term)
        if not found:
            raise ValueError(f"cannot parse term {term!r}")
        mono: dict[int, int] = {}
        for var, exp in found:
            mono[int(var)] = mono.get(int(var), 0) + int(exp or 1)
        parsed.append(mono)
    width = max(max(m) for m in parsed)
    n = width if n_vars is None else n_vars
    if n < width:
        raise ValueError(f"polynomial uses x{width} but n_vars={n}")
    mons = [tuple(m.get(i + 1, 0) for i in range(n)) for m in parsed]
    degrees = {sum(m) for m in mons}
    if len(degrees) != 1:
        raise ValueError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
    return Support(degrees.pop(), n, frozenset(mons))


@dataclass(frozen=True)
class IndexVector:
    """The data (d, i_1, ..., i_k) of F_I = x_1^(d-1) x_{i_1} + ... + x_k^(d-1) x_{i_k}.

    Targets are 1-based.
    """

    d: int
    targets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        k = len(self.targets)
        if self.d < 3:
            raise ValueError("degree must be at least 3")
        if k < 1:
            raise ValueError("index vector must be nonempty")
        if any(not 1 <= t <= k for t in self.targets):
            raise ValueError(f"targets must lie in 1..{k}, got {self.targets}")

    @property
    def k(self) -> int:
        return len(self.targets)


@dataclass(frozen=True)
class SimpleType:
    """Shape K_{a_1} + ... + K_{a_t} + T_{b_1} + ... + T_{b_s} of a simple polynomial.

    A chain of length 1 is x^d, the same thing as K_1, and is stored that way.
    """

    k_parts: tuple[int, ...] = ()
    t_parts: tuple[int, ...] = ()

    def __post_init__(self):
        ks = [int(a) for a in self.k_parts]
        ts = [int(b) for b in self.t_parts]
        if any(a < 1 for a in ks) or any(b < 1 for b in ts):
            raise ValueError("part sizes must be positive")
        ks += [1] * ts.count(1)
        ts = [b for b in ts if b != 1]
        if not ks and not ts:
            raise ValueError("a simple type needs at least one part")
        object.__setattr__(self, "k_parts", tuple(sorted(ks)))
        object.__setattr__(self, "t_parts", tuple(sorted(ts)))

    @classmethod
    def parse(cls, text: str) -> SimpleType:
        ks, ts = [], []
        for raw in text.replace("⊕", "+").split("+"):
            part = raw.strip().upper().replace("_", "")
            m = re.fullmatch(r"([KT])(\d+)(?:\^(\d+))?", part)
            if not m:
                raise ValueError(f"cannot parse simple-type part {raw!r}")
            kind, size, mult = m.group(1), int(m.group(2)), int(m.group(3) or 1)
            (ks if kind == "K" else ts).extend([size] * mult)
        return cls(tuple(ks), tuple(ts))

    def blocks(self) -> list[tuple[str, int]]:
        """Parts in variable-layout order: chains ascending, then Klein parts ascending."""
        return [("T", b) for b in self.t_parts] + [("K", a) for a in self.k_parts]

    @property
    def total(self) -> int:
        return sum(self.k_parts) + sum(self.t_parts)

    @property
    def n_parts(self) -> int:
        return len(self.k_parts) + len(self.t_parts)

    def is_k_pure(self) -> bool:
        return not self.t_parts

    def __str__(self):
        return "+".join(f"{kind}{size}" for kind, size in self.blocks())


@dataclass(frozen=True)
class SingularWitness:
    """A point of P^(k-1) given by exact coordinates.

    Each coordinate is ``None`` for 0, or a :class:`Fraction` ``f`` standing for
    exp(2*pi*i*f); ``Fraction(0)`` is the coordinate 1.
    """

    point: tuple[Fraction | None, ...]
    pair: tuple[int, int] = field(default=(0, 0), compare=False)

    def __post_init__(self):
        if all(c is None for c in self.point):
            raise ValueError("the zero vector is not a projective point")

    def __str__(self):
        return "[" + " : ".join(_format_coordinate(c) for c in self.point) + "]"


def _format_coordinate(c: Fraction | None) -> str:
    if c is None:
        return "0"
    turn = c % 1
    if turn == 0:
        return "1"
    # exp(2 pi i f) = e^{i pi (2f)}
    half = 2 * turn
    num = "" if half.numerator == 1 else str(half.numerator)
    den = "" if half.denominator == 1 else f"/{half.denominator}"
    return f"e^{{i{num}π{den}}}"


def build_f_i(iv: IndexVector) -> Support:
    k, d = iv.k, iv.d
    mons = {_monomial_pair(k, a, t - 1, d) for a, t in enumerate(iv.targets)}
    return Support(d, k, frozenset(mons))


def _monomial_pair(n: int, a: int, b: int, d: int) -> Exponents:
    # x_a^(d-1) x_b, which is x_a^d when a == b
    v = [0] * n
    v[a] += d - 1
    v[b] += 1
    return tuple(v)


def violating_pairs(iv: IndexVector) -> Iterable[tuple[int, int]]:
    """1-based pairs a < b with i_a = i_b outside {a, b}, in lexicographic order."""
    t = iv.targets
    for a in range(1, iv.k + 1):
        for b in range(a + 1, iv.k + 1):
            if t[a - 1] == t[b - 1] and t[a - 1] not in (a, b):
                yield a, b


def is_smooth_f_i(iv: IndexVector) -> bool:
    return next(iter(violating_pairs(iv)), None) is None


def graph_decompose(iv: IndexVector) -> SimpleType | None:
    """Decompose the functional graph a -> i_a into Klein cycles and loop-ended chains.

    Returns ``None`` when some component is neither a cycle nor a chain that
    ends in a self-loop, i.e. when F_I is not simple.
    """
    k = iv.k
    succ = [t - 1 for t in iv.targets]
    preds: list[list[int]] = [[] for _ in range(k)]
    for a, b in enumerate(succ):
        if a != b:
            preds[b].append(a)
    loops = {a for a in range(k) if succ[a] == a}
    if any(len(p) > 1 for p in preds):
        return None

    seen = set()
    ks, ts = [], []
    for a in sorted(loops):
        # walk back along the unique chain feeding into the loop vertex
        length, cur = 1, a
        seen.add(a)
        while preds[cur]:
            cur = preds[cur][0]
            if cur in seen:
                return None
            seen.add(cur)
            length += 1
        (ks if length == 1 else ts).append(length)
    for a in range(k):
        if a in seen:
            continue
        cycle, cur = [], a
        while cur not in seen:
            seen.add(cur)
            cycle.append(cur)
            cur = succ[cur]
        if cur != a:
            # a tail runs into a cycle or chain rather than closing up
            return None
        ks.append(len(cycle))
    return SimpleType(tuple(ks), tuple(ts))


def singular_witness(iv: IndexVector) -> SingularWitness | None:
    """A singular point of V(F_I) built from the first violating pair, if any.

    For a < b sharing a target outside {a, b}, the point with x_a = 1,
    x_b = exp(pi i / (d-1)) and every other coordinate 0 kills all partials.
    """
    pair = next(iter(violating_pairs(iv)), None)
    if pair is None:
        return None
    a, b = pair
    point: list[Fraction | None] = [None] * iv.k
    point[a - 1] = Fraction(0)
    point[b - 1] = Fraction(1, 2 * (iv.d - 1))
    return SingularWitness(tuple(point), pair=pair)


def simple_support(d: int, t: SimpleType) -> Support:
    """Support of the simple polynomial of type ``t`` in the canonical layout."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    n = t.total
    mons = set()
    start = 0
    for kind, size in t.blocks():
        block = range(start, start + size)
        for j in block:
            if j + 1 < start + size:
                mons.add(_monomial_pair(n, j, j + 1, d))
            elif kind == "K":
                mons.add(_monomial_pair(n, j, start, d))
            else:
                mons.add(_monomial_pair(n, j, j, d))
        start += size
    return Support(d, n, frozenset(mons))


def block_ranges(t: SimpleType) -> list[tuple[str, int, range]]:
    """``(kind, size, variable positions)`` for each block of the canonical layout."""
    out, start = [], 0
    for kind, size in t.blocks():
        out.append((kind, size, range(start, start + size)))
        start += size
    return out


def index_vector_of(s: Support) -> IndexVector | None:
    """Recover I when ``s`` is exactly the support of some F_I, else ``None``."""
    if s.d < 3:
        return None
    targets = [None] * s.n_vars
    for m in s.monomials:
        heavy = [i for i, e in enumerate(m) if e >= s.d - 1]
        if len(heavy) != 1:
            return None
        a = heavy[0]
        rest = [i for i, e in enumerate(m) if i != a and e]
        b = a if not rest else rest[0]
        if targets[a] is not None:
            return None
        targets[a] = b + 1
    if None in targets:
        return None
    return IndexVector(s.d, tuple(targets))


def necessary_smoothness_check(
    s: Support, max_b: int = 2, budget: int = 10**6
) -> tuple[frozenset[int], frozenset[int]] | None:
    """Look for disjoint variable sets (A, B), |A| > |B| <= max_b, that rule out smoothness.

    A smooth form needs, for every such pair, a monomial whose total degree in
    the A-variables is at least d-1 and which avoids every B-variable. The
    condition only gets easier as A grows, so it is enough to test |A| = |B|+1.
    Returns the first violating ``(A, B)`` as sets of 1-based variable numbers,
    or ``None`` when the support passes (which does not prove smoothness).
    """
    n = s.n_vars
    total = sum(
        math.comb(n, nb) * math.comb(n - nb, nb + 1) for nb in range(0, min(max_b, n) + 1)
    )
    if total > budget:
        raise ComplexityRefusal(f"{total} set pairs exceed the budget of {budget}")
    mons = list(s.monomials)
    for nb in range(0, min(max_b, n) + 1):
        for bset in itertools.combinations(range(n), nb):
            usable = [m for m in mons if not any(m[j] for j in bset)]
            rest = [i for i in range(n) if i not in bset]
            for aset in itertools.combinations(rest, nb + 1):
                if not any(sum(m[i] for i in aset) >= s.d - 1 for m in usable):
                    return frozenset(i + 1 for i in aset), frozenset(j + 1 for j in bset)
    return None
