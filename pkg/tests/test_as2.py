from collections import Counter
from itertools import permutations, product

import pytest

from malcev.pi.errors import DegenerateMultiset, DegreeTooSmall
from malcev.pi.freealg.poly import FreePoly
from malcev.pi.freealg.words import Multidegree, Word
from malcev.pi.normalforms.as2 import (
    As2NormalForm,
    Pair,
    basis_pairs,
    element_from_token,
    is_basis_pair,
    rewrite_pair,
    word_to_pair,
)
from malcev.pi.normalforms.base import ElementPoly, LowDeg, multidegrees_up_to
from malcev.pi.oracle.tideal import AS2
from malcev.pi.parsing.expr import parse_poly

from conftest import random_poly

D5 = Multidegree.multilinear(5)


def test_rewrite_last_letter_rule():
    assert rewrite_pair(D5, 5, 3) == ElementPoly({Pair(D5, 5, 1): 1, Pair(D5, 2, 1): -1, Pair(D5, 2, 3): 1})


def test_rewrite_first_letter_rule():
    assert rewrite_pair(D5, 2, 4) == ElementPoly({Pair(D5, 2, 3): 1, Pair(D5, 1, 3): -1, Pair(D5, 1, 4): 1})


def test_rewrite_general_rule():
    expected = {Pair(D5, 4, 1): 1, Pair(D5, 2, 1): -1, Pair(D5, 2, 3): 1, Pair(D5, 1, 3): -1, Pair(D5, 1, 5): 1}
    assert rewrite_pair(D5, 4, 5) == ElementPoly(expected)


def test_rewrite_repeated_smallest_letter():
    d = Multidegree({1: 2, 2: 1, 3: 1, 4: 1})
    assert rewrite_pair(d, 1, 1) == ElementPoly({Pair(d, 1, 3): 1, Pair(d, 2, 1): 1, Pair(d, 2, 3): -1})


def test_basis_pairs_are_fixed():
    for f, l in [(1, 2), (3, 1), (2, 3)]:  # noqa: E741
        assert is_basis_pair(D5, f, l)
        assert rewrite_pair(D5, f, l) == ElementPoly.single(Pair(D5, f, l))


def test_rewrites_agree_with_end_letter_model():
    # (f, l) -> alpha_f + beta_l is a faithful model of the pair relations
    def model(poly):
        out = Counter()
        for pair, c in poly.items():
            out[("a", pair.first)] += c
            out[("b", pair.last)] += c
        return {k: v for k, v in out.items() if v}

    for d in [D5, Multidegree.multilinear(6), Multidegree({1: 2, 2: 1, 3: 2, 4: 1})]:
        for f in d.generators:
            for l in d.generators:  # noqa: E741
                if d.contains((f, l)):
                    assert model(rewrite_pair(d, f, l)) == {("a", f): 1, ("b", l): 1}


def test_degenerate_multiset():
    with pytest.raises(DegenerateMultiset):
        rewrite_pair(Multidegree({1: 3, 2: 2}), 1, 2)


def test_pairs_need_degree_five():
    with pytest.raises(DegreeTooSmall):
        Pair(Multidegree.multilinear(4), 1, 2)
    with pytest.raises(DegreeTooSmall):
        word_to_pair(Word((1, 2, 3, 4)))
    assert word_to_pair(Word((3, 1, 2, 5, 4))) == (D5, 3, 4)


def test_interior_order_is_forgotten(as2):
    assert not as2.nf(parse_poly("a*b*c*d*e - a*b*d*c*e"))
    assert as2.nf(parse_poly("a*d*c*b*e")) == ElementPoly.single(Pair(D5, 1, 5))


@pytest.mark.parametrize("n", [5, 6, pytest.param(7, marks=pytest.mark.slow)])
def test_basis_size_matches_oracle(as2, oracle, n):
    d = Multidegree.multilinear(n)
    assert len(basis_pairs(d)) == 2 * (n - 1) + 1
    assert len(as2.basis_enum(d)) == oracle.dim_quotient(AS2, d)


@pytest.mark.parametrize("n, size", [(1, 1), (2, 2), (3, 5), (4, 9)])
def test_low_degree_basis(as2, n, size):
    basis = as2.basis_enum(Multidegree.multilinear(n))
    assert len(basis) == size
    assert all(isinstance(e, LowDeg) for e in basis)


def test_structural_and_oracle_paths_agree(as2, rng):
    for _ in range(40):
        p = random_poly(rng, max_degree=6, generators=4)
        assert as2.nf(p) == as2.nf(p, via="oracle")


def test_normal_form_is_equivalent(as2, oracle, rng):
    for _ in range(40):
        p = random_poly(rng, max_degree=6, generators=3)
        normal = as2.nf(p)
        assert (not normal) == (not oracle.reduce(p, AS2))
        assert oracle.is_identity(normal.expand() - p, AS2)


@pytest.mark.slow
def test_normal_form_is_equivalent_large(as2, oracle, rng):
    for _ in range(500):
        p = random_poly(rng, max_degree=7, generators=4, terms=6)
        normal = as2.nf(p)
        assert (not normal) == (not oracle.reduce(p, AS2))
        assert oracle.is_identity(normal.expand() - p, AS2)


def test_normal_form_is_idempotent(as2, rng):
    for _ in range(60):
        p = random_poly(rng, max_degree=6, generators=4)
        normal = as2.nf(p)
        assert as2.nf(normal.expand()) == normal
        assert as2.nf(normal.expand(), via="oracle") == normal


def test_every_word_of_degree_five(as2):
    for letters in permutations(range(1, 6)):
        w = FreePoly.from_letters({letters: 1})
        assert as2.nf(w) == as2.nf(w, via="oracle")


def test_structure_mul_matches_word_product(as2):
    for left in [Multidegree.multilinear(2), Multidegree({1: 1, 3: 1})]:
        for right in [Multidegree({3: 1, 4: 1, 5: 1}), Multidegree({2: 1, 4: 1})]:
            for a in as2.basis_enum(left):
                for b in as2.basis_enum(right):
                    assert as2.structure_mul(a, b) == as2.nf(a.expand() * b.expand())


def test_pair_products(as2):
    a = Pair(D5, 2, 3)
    b = LowDeg((6, 7))
    d = D5 + Multidegree({6: 1, 7: 1})
    assert as2.structure_mul(a, b) == ElementPoly.single(Pair(d, 1, 7)) - ElementPoly.single(
        Pair(d, 1, 3)) + ElementPoly.single(Pair(d, 2, 3))


def test_multiplication_is_associative(as2):
    x = [ElementPoly.single(LowDeg((i,))) for i in (1, 2, 3)]
    y = as2.nf(parse_poly("b*a - 2*c*a*b"))
    z = as2.nf(parse_poly("a*c + c*c"))
    for u in x + [y]:
        assert as2.multiply(as2.multiply(u, y), z) == as2.multiply(u, as2.multiply(y, z))


def test_tokens_round_trip(as2):
    for d in [Multidegree.multilinear(3), D5, Multidegree({1: 2, 2: 3})]:
        for element in as2.basis_enum(d):
            assert element_from_token(element.token) == element
            assert as2.element_from_token(element.token) == element


def test_render():
    m = "1:1,2:1,3:1,4:1,5:1"
    assert rewrite_pair(D5, 5, 3).render() == f"-(x2, x1 | {m}) + (x5, x1 | {m}) + (x2, x3 | {m})"
    assert Pair(D5, 2, 3).short() == "(x2,x3)"
    assert Pair(D5, 2, 3).token == f"p:2.3@{m}"


def test_run_actions(as2):
    assert as2.run({"text": "a*b*c*d*e"}) == ElementPoly.single(Pair(D5, 1, 5))
    assert len(as2.run({"multidegree": "1:1,2:1,3:1,4:1,5:1"}, action="basis")) == 9
    assert as2.run({}, action="nope").startswith("Unsupported action: nope.")


def test_fresh_engine_has_own_caches():
    engine = As2NormalForm()
    assert engine.export_constants() == {}
    engine.structure_mul(LowDeg((1,)), LowDeg((2,)))
    assert len(engine.export_constants()) == 1


def single(e):
    return ElementPoly.single(e)


def test_associativity_up_to_degree_six(as2):
    elements = [e for d in multidegrees_up_to(3, 3) for e in as2.basis_enum(d)]
    for a, b, c in product(elements, repeat=3):
        if a.degree + b.degree + c.degree <= 6:
            x, y, z = single(a), single(b), single(c)
            assert as2.multiply(as2.multiply(x, y), z) == as2.multiply(x, as2.multiply(y, z))


@pytest.mark.slow
def test_associativity_up_to_degree_eight(as2):
    elements = [e for d in multidegrees_up_to(4, 4) for e in as2.basis_enum(d)]
    for a, b, c in product(elements, repeat=3):
        if a.degree + b.degree + c.degree <= 8:
            x, y, z = single(a), single(b), single(c)
            assert as2.multiply(as2.multiply(x, y), z) == as2.multiply(x, as2.multiply(y, z))


def defining_identity_at(engine, a, b, c):
    """The defining identity evaluated on basis elements through ``multiply``."""
    values = {1: single(a), 2: single(b), 3: single(c)}
    return ElementPoly.total(
        engine.multiply(engine.multiply(values[w.letters[0]], values[w.letters[1]]), values[w.letters[2]]).scale(coeff)
        for w, coeff in AS2.identity.items()
    )


def test_defining_identity_vanishes_on_basis_elements(as2):
    elements = [e for d in multidegrees_up_to(3, 2) for e in as2.basis_enum(d)]
    for a, b, c in product(elements, repeat=3):
        assert not defining_identity_at(as2, a, b, c), (a, b, c)
    generators = [LowDeg((i,)) for i in (1, 6)]
    for pair in basis_pairs(D5):
        for b, c in product(generators, repeat=2):
            assert not defining_identity_at(as2, pair, b, c)
            assert not defining_identity_at(as2, b, pair, c)
