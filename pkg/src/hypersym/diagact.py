"""Diagonal automorphisms and the group G_F of a monomial support.

An automorphism is stored as ``1/n(k_1, ..., k_N)``: coordinate j is scaled
by exp(2 pi i k_j / n). Everything is computed modulo n with Python ints.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .abelian import (
    FiniteAbelianGroup,
    QuotientPresentation,
    quotient_generators,
    smith_normal_form,
)
from .errors import NotInvariant, VerificationFailure
from .polyforms import SimpleType, Support, block_ranges, simple_support


@dataclass(frozen=True)
class DiagonalAutomorphism:
    n: int
    exps: tuple[int, ...]

    def __post_init__(self):
        n = int(self.n)
        if n < 1:
            raise ValueError("denominator must be positive")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "exps", tuple(int(e) % n for e in self.exps))

    @classmethod
    def identity(cls, n_vars: int) -> DiagonalAutomorphism:
        return cls(1, (0,) * n_vars)

    @classmethod
    def parse(cls, text: str) -> DiagonalAutomorphism:
        """Read ``1/63(1,-2,4,-8,16,-32)``; negative entries are reduced mod n."""
        m = re.fullmatch(r"\s*1\s*/\s*(\d+)\s*\(([^)]*)\)\s*", text)
        if not m:
            raise ValueError(f"cannot parse automorphism {text!r}")
        entries = [int(x) for x in m.group(2).replace(" ", "").split(",") if x]
        return cls(int(m.group(1)), tuple(entries))

    def __str__(self):
        return f"1/{self.n}({','.join(map(str, self.exps))})"

    def __len__(self):
        return len(self.exps)

    def normalized(self) -> DiagonalAutomorphism:
        """Projective canonical form: first entry 0, smallest denominator."""
        if not self.exps:
            return DiagonalAutomorphism(1, ())
        shifted = [e - self.exps[0] for e in self.exps]
        g = math.gcd(self.n, *shifted)
        return DiagonalAutomorphism(self.n // g, tuple(e // g for e in shifted))

    def reduced(self) -> DiagonalAutomorphism:
        """Same diagonal matrix over the smallest denominator."""
        g = math.gcd(self.n, *self.exps)
        return DiagonalAutomorphism(self.n // g, tuple(e // g for e in self.exps))

    def projectively_equal(self, other: DiagonalAutomorphism) -> bool:
        return self.normalized() == other.normalized()

    def rescaled(self, n: int) -> DiagonalAutomorphism:
        """The same automorphism over denominator ``n`` (a multiple of ``self.n``)."""
        if n % self.n:
            raise ValueError(f"{n} is not a multiple of {self.n}")
        f = n // self.n
        return DiagonalAutomorphism(n, tuple(e * f for e in self.exps))

    def __mul__(self, other: DiagonalAutomorphism) -> DiagonalAutomorphism:
        if len(self) != len(other):
            raise ValueError("automorphisms act on different numbers of variables")
        n = math.lcm(self.n, other.n)
        a, b = self.rescaled(n), other.rescaled(n)
        return DiagonalAutomorphism(n, tuple(x + y for x, y in zip(a.exps, b.exps))).reduced()

    def __pow__(self, k: int) -> DiagonalAutomorphism:
        return DiagonalAutomorphism(self.n, tuple(k * e for e in self.exps)).reduced()

    def padded(self, n_vars: int, offset: int) -> DiagonalAutomorphism:
        """Embed into ``n_vars`` coordinates starting at ``offset``, acting trivially elsewhere."""
        exps = [0] * n_vars
        exps[offset:offset + len(self.exps)] = self.exps
        return DiagonalAutomorphism(self.n, tuple(exps))


def pgl_order(g: DiagonalAutomorphism) -> int:
    """Order of the class of ``g`` modulo scalar matrices."""
    if not g.exps:
        return 1
    return g.n // math.gcd(g.n, *(e - g.exps[0] for e in g.exps))


def character(g: DiagonalAutomorphism, monomial) -> int:
    return sum(a * e for a, e in zip(monomial, g.exps)) % g.n


def acts_with_character(g: DiagonalAutomorphism, s: Support) -> int:
    """The residue c with F(g x) = exp(2 pi i c/n) F(x) for every F with support ``s``."""
    if len(g) != s.n_vars:
        raise ValueError(f"automorphism has {len(g)} entries, support has {s.n_vars} variables")
    residues = {character(g, m) for m in s.monomials}
    if len(residues) != 1:
        raise NotInvariant(f"{g} scales the monomials by different characters {sorted(residues)}")
    return residues.pop()


def preserves(g: DiagonalAutomorphism, s: Support) -> bool:
    try:
        acts_with_character(g, s)
    except NotInvariant:
        return False
    return True


@dataclass(frozen=True)
class SymmetryGroupResult:
    group: FiniteAbelianGroup
    generators: tuple[DiagonalAutomorphism, ...]
    scalar_character: tuple[int, ...]


@dataclass(frozen=True)
class InfiniteGroup:
    """G_F contains a torus; ``direction`` spans a one-parameter subgroup exp(2 pi i t w)."""

    direction: tuple[int, ...]

    def __str__(self):
        return f"infinite: torus direction ({','.join(map(str, self.direction))})"


def symmetry_group(s: Support) -> SymmetryGroupResult | InfiniteGroup:
    """G_F for every F with support ``s``, via Smith normal form of the difference lattice.

    Writing y_j = e_j - e_N kills the scalar direction, since every difference
    of exponent vectors has coordinate sum 0. The remaining condition B' y = 0
    on (Q/Z)^(N-1) is diagonalized by U B' V = D, and column i of V divided by
    d_i generates the Z/d_i summand.
    """
    n = s.n_vars
    if n == 1:
        return SymmetryGroupResult(FiniteAbelianGroup(()), (), ())
    mons = sorted(s.monomials)
    base = mons[0]
    rows = [[m[j] - base[j] for j in range(n - 1)] for m in mons[1:]]
    res = smith_normal_form(rows, ncols=n - 1)
    if res.rank < n - 1:
        col = res.rank
        return InfiniteGroup(tuple(res.v[j][col] for j in range(n - 1)) + (0,))

    gens, chars, factors = [], [], []
    for i, di in enumerate(res.d):
        if di == 1:
            continue
        g = DiagonalAutomorphism(di, tuple(res.v[j][i] for j in range(n - 1)) + (0,))
        gens.append(g)
        chars.append(character(g, base))
        factors.append(di)
    return SymmetryGroupResult(FiniteAbelianGroup(tuple(factors)), tuple(gens), tuple(chars))


def klein_generator(d: int, a: int) -> DiagonalAutomorphism:
    """diag(z, z^(1-d), z^((1-d)^2), ...) with z a primitive |1-(1-d)^a|-th root of unity."""
    if a < 1:
        raise ValueError("Klein length must be >= 1")
    n = abs(1 - (1 - d) ** a)
    return DiagonalAutomorphism(n, tuple((1 - d) ** j for j in range(a)))


def chain_generator(d: int, b: int) -> DiagonalAutomorphism:
    """Character-0 lift of the chain generator, over denominator d(d-1)^(b-1)."""
    if b < 1:
        raise ValueError("chain length must be >= 1")
    n = d * (d - 1) ** (b - 1)
    return DiagonalAutomorphism(n, tuple((1 - d) ** j for j in range(b)))


def predicted_group(d: int, t: SimpleType) -> QuotientPresentation:
    """Block generators modulo the scalar exp(2 pi i/d) they jointly produce."""
    if d < 3:
        raise ValueError("degree must be at least 3")
    orders, killed = [], []
    for kind, size in t.blocks():
        if kind == "K":
            m = abs(1 - (1 - d) ** size)
            orders.append(m)
            killed.append(m // d)
        else:
            orders.append(d * (d - 1) ** (size - 1))
            killed.append((d - 1) ** (size - 1))
    return QuotientPresentation(tuple(orders), tuple(killed))


def block_generators(d: int, t: SimpleType) -> list[DiagonalAutomorphism]:
    """One character-0 generator per block, padded to all variables of the type."""
    gens = []
    for kind, size, positions in block_ranges(t):
        g = klein_generator(d, size) if kind == "K" else chain_generator(d, size)
        gens.append(g.padded(t.total, positions.start))
    return gens


def combine(gens: list[DiagonalAutomorphism], coeffs) -> DiagonalAutomorphism:
    """The product of ``gens[i] ** coeffs[i]``."""
    out = DiagonalAutomorphism.identity(len(gens[0]))
    for g, c in zip(gens, coeffs):
        out = out * g**c
    return out


def simple_symmetry_group(d: int, t: SimpleType) -> SymmetryGroupResult:
    """G_F for a simple type, with generators built from the block generators.

    Each invariant-factor generator is the combination of block generators
    read off the quotient presentation, so for a single Klein block it is the
    familiar diag(z, z^(1-d), ...). Every generator is checked against the
    support before it is returned.
    """
    s = simple_support(d, t)
    gens = block_generators(d, t)
    out, chars, factors = [], [], []
    for order, coeffs in quotient_generators(predicted_group(d, t)):
        g = combine(gens, coeffs)
        c = acts_with_character(g, s)
        if pgl_order(g) != order:
            raise VerificationFailure(f"{g} has projective order {pgl_order(g)}, expected {order}")
        out.append(g)
        chars.append(c)
        factors.append(order)
    return SymmetryGroupResult(FiniteAbelianGroup(tuple(factors)), tuple(out), tuple(chars))
