import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersym.abelian import QuotientPresentation, quotient_group
from hypersym.classify import enumerate_simple_types
from hypersym.diagact import (
    DiagonalAutomorphism,
    InfiniteGroup,
    acts_with_character,
    chain_generator,
    klein_generator,
    pgl_order,
    predicted_group,
    preserves,
    simple_symmetry_group,
    symmetry_group,
)
from hypersym.errors import NotInvariant
from hypersym.polyforms import SimpleType, Support, simple_support

P = DiagonalAutomorphism.parse


def test_parse_negative_entries():
    g = P("1/63(1,-2,4,-8,16,-32)")
    assert g.exps == (1, 61, 4, 55, 16, 31)
    assert str(g) == "1/63(1,61,4,55,16,31)"
    with pytest.raises(ValueError):
        P("63(1,2)")


@pytest.mark.parametrize(
    "text, order", [("1/48(3,-6,12,-24,0,16)", 48), ("1/5(1,1,1,1)", 1), ("1/63(1,-2,4,-8,16,-32)", 21)]
)
def test_pgl_order(text, order):
    assert pgl_order(P(text)) == order


def test_character_k6():
    s = simple_support(3, SimpleType.parse("K6"))
    assert acts_with_character(P("1/63(1,-2,4,-8,16,-32)"), s) == 0
    assert acts_with_character(DiagonalAutomorphism.identity(6), s) == 0


def test_not_invariant():
    s = simple_support(3, SimpleType((1, 1, 1)))
    with pytest.raises(NotInvariant):
        acts_with_character(P("1/2(1,0,0)"), s)
    assert not preserves(P("1/2(1,0,0)"), s)


def test_projective_equality():
    assert P("1/63(1,-2,4,-8,16,-32)").projectively_equal(P("1/63(1,61,4,55,16,31)"))
    assert P("1/6(1,1)").projectively_equal(DiagonalAutomorphism.identity(2))
    assert not P("1/4(0,1)").projectively_equal(P("1/4(0,3)"))


def test_group_law():
    g = P("1/6(1,4)")
    assert (g * g) == g**2 == P("1/3(1,1)")
    assert g**6 == DiagonalAutomorphism(1, (0, 0))


class TestSymmetryGroup:
    def test_k6(self):
        res = symmetry_group(simple_support(3, SimpleType.parse("K6")))
        assert res.group.invariant_factors == (21,)
        ref = P("1/63(1,-2,4,-8,16,-32)")
        assert any(res.generators[0].projectively_equal(ref**k) for k in range(1, 21) if math.gcd(k, 21) == 1)

    def test_t6(self):
        res = symmetry_group(simple_support(3, SimpleType.parse("T6")))
        assert res.group.invariant_factors == (32,)

    def test_fermat(self):
        res = symmetry_group(simple_support(3, SimpleType((1, 1, 1))))
        assert res.group.invariant_factors == (3, 3)

    def test_infinite(self):
        s = Support(3, 3, frozenset({(2, 1, 0), (1, 2, 0)}))
        res = symmetry_group(s)
        assert isinstance(res, InfiniteGroup)
        # A torus direction scales every monomial by the same character and is not scalar.
        chars = {sum(a * w for a, w in zip(m, res.direction)) for m in s.monomials}
        assert len(chars) == 1 and len(set(res.direction)) > 1


class TestGenerators:
    def test_klein_examples(self):
        assert klein_generator(3, 6) == P("1/63(1,61,4,55,16,31)")
        assert klein_generator(3, 1) == P("1/3(1)")
        assert klein_generator(4, 3) == P("1/28(1,25,9)")
        assert pgl_order(klein_generator(4, 3)) == 7

    def test_chain_examples(self):
        g = chain_generator(3, 6)
        assert g.n == 96 and pgl_order(g) == 32
        assert chain_generator(3, 1) == P("1/3(1)")
        assert chain_generator(3, 2) == P("1/6(1,4)")
        assert acts_with_character(P("1/6(1,4)"), simple_support(3, SimpleType((), (2,)))) == 0

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    @pytest.mark.parametrize("size", [1, 2, 3, 4, 5])
    def test_soundness(self, d, size):
        k = klein_generator(d, size)
        assert acts_with_character(k, simple_support(d, SimpleType((size,)))) == 0
        assert pgl_order(k) == abs(1 - (1 - d) ** size) // d
        c = chain_generator(d, size)
        assert acts_with_character(c, simple_support(d, SimpleType((), (size,)))) == 0
        assert pgl_order(c) == (d - 1) ** (size - 1)


def test_predicted_group_examples():
    assert predicted_group(3, SimpleType.parse("K6")) == QuotientPresentation((63,), (21,))
    assert predicted_group(3, SimpleType((1, 1, 1))) == QuotientPresentation((3, 3, 3), (1, 1, 1))
    p = predicted_group(3, SimpleType.parse("T2+K4"))
    assert p == QuotientPresentation((6, 15), (2, 5))
    assert quotient_group(p).invariant_factors == (30,)


def generated_subgroup(gens, n_vars):
    """All elements of <gens> modulo scalars, by closure."""
    seen = {DiagonalAutomorphism.identity(n_vars).normalized()}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = (x * g).normalized()
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


@pytest.mark.parametrize("d", [3, 4])
def test_generators_sound_and_generate(d):
    for t in enumerate_simple_types(d, 4, exact=False):
        s = simple_support(d, t)
        for res in (symmetry_group(s), simple_symmetry_group(d, t)):
            for g, n in zip(res.generators, res.group.invariant_factors):
                acts_with_character(g, s)
                assert pgl_order(g) == n
            if res.group.order <= 10**4:
                assert len(generated_subgroup(res.generators, t.total)) == res.group.order


@pytest.mark.parametrize("d", [3, 4])
def test_structure_theorem(d):
    for t in enumerate_simple_types(d, 5, exact=False):
        expected = quotient_group(predicted_group(d, t))
        assert symmetry_group(simple_support(d, t)).group == expected
        assert simple_symmetry_group(d, t).group == expected


autos = st.integers(1, 60).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, n - 1), min_size=3, max_size=3))
)


@settings(max_examples=200, deadline=None)
@given(autos, st.integers(0, 59))
def test_scalar_invariance(nv, shift):
    n, exps = nv
    g = DiagonalAutomorphism(n, tuple(exps))
    h = DiagonalAutomorphism(n, tuple(e + shift for e in exps))
    assert pgl_order(g) == pgl_order(h)
    s = simple_support(3, SimpleType((3,)))
    assert preserves(g, s) == preserves(h, s)
    if preserves(g, s):
        assert (acts_with_character(h, s) - acts_with_character(g, s)) % n == 3 * shift % n
