from fractions import Fraction
from itertools import product

import pytest

from malcev.pi.errors import DegreeTooSmall, LimitExceeded, MixedMultidegree, NotMultilinear
from malcev.pi.freealg.poly import FreePoly, homogeneous_components, poly_sum, substitute
from malcev.pi.freealg.words import Multidegree
from malcev.pi.oracle.consequences import generate_consequences, identity_pattern
from malcev.pi.oracle.echelon import echelonize, reduce
from malcev.pi.oracle.tideal import AS1, AS2, AS3, TIdealOracle, Variety, dim_quotient, is_identity
from malcev.pi.parsing.expr import parse_poly

from conftest import random_poly


def P(terms):
    return FreePoly.from_letters(terms)


# -- echelon ---------------------------------------------------------------

def test_echelonize_dependent_rows():
    basis = echelonize([P({(1, 2): 1, (2, 1): -1}), P({(2, 1): 1, (1, 2): -1})])
    assert basis.rank == 1
    assert basis.rows[0].coefficient((2, 1)) == 1


def test_echelonize_empty():
    basis = echelonize([])
    assert basis.rank == 0
    assert basis.rows == []


def test_echelonize_mixed_multidegree():
    with pytest.raises(MixedMultidegree):
        echelonize([P({(1, 2): 1}), P({(1, 1): 1})])


def test_fully_reduced_form(oracle):
    basis = oracle.basis(AS2, Multidegree.multilinear(4))
    leading = set(basis.leading)
    for row in basis.rows:
        lead = row.leading_word()
        assert row.coefficient(lead) == 1
        assert all(w == lead or w not in leading for w in row)


def test_reduce_is_linear_and_idempotent(oracle, rng):
    d = Multidegree.multilinear(5)
    basis = oracle.basis(AS2, d)
    p = P({(1, 2, 3, 4, 5): 3, (5, 4, 3, 2, 1): -2})
    q = P({(2, 1, 3, 4, 5): 1, (1, 3, 2, 5, 4): 7})
    r = reduce(p, basis)
    assert reduce(r, basis) == r
    assert reduce(p + q, basis) == r + reduce(q, basis)
    assert set(r) <= set(basis.non_leading_words())
    assert reduce(FreePoly.zero(), basis) == 0
    for row in basis.rows:
        assert reduce(row, basis) == 0


def test_reduce_rejects_other_multidegree(oracle):
    basis = oracle.basis(AS2, Multidegree.multilinear(3))
    with pytest.raises(MixedMultidegree):
        reduce(P({(1, 1, 2): 1}), basis)


# -- consequences ----------------------------------------------------------

def test_identity_pattern_requires_multilinear_degree_three():
    with pytest.raises(NotMultilinear):
        identity_pattern(P({(1, 1, 2): 1}))
    assert len(identity_pattern(AS3.identity)) == 4


def test_type_two_consequences_at_degree_three():
    rows = generate_consequences(AS2, Multidegree.multilinear(3))
    assert len(rows) == 1
    assert echelonize(rows).rank == 1


def test_type_three_consequences_at_degree_three():
    assert echelonize(generate_consequences(AS3, Multidegree.multilinear(3))).rank == 2


def test_consequences_need_degree_three():
    with pytest.raises(DegreeTooSmall):
        generate_consequences(AS2, Multidegree.multilinear(2))


@pytest.mark.parametrize("n, rank", [(4, 15), (5, 111)])
def test_type_two_ranks(n, rank):
    assert echelonize(generate_consequences(AS2, Multidegree.multilinear(n))).rank == rank


@pytest.mark.parametrize("variety", [AS2, AS3])
def test_closed_under_polynomial_substitution(oracle, variety):
    # binomial images of x1, x2, x3 up to total degree 4
    images = [P({(1,): 1, (2,): 1}), P({(3,): 1, (1, 2): -1}), P({(2, 1): 2, (3,): 1}), P({(4,): 1})]
    for m1, m2, m3 in product(images, repeat=3):
        p = substitute(variety.identity, {1: m1, 2: m2, 3: m3})
        for d, part in homogeneous_components(p).items():
            if d.total <= 5:
                assert oracle.basis(variety, d).reduce(part) == 0


# -- dimensions ------------------------------------------------------------

@pytest.mark.parametrize("variety, expected", [
    (AS2, [1, 2, 5, 9, 9, 11]),
    (AS3, [1, 2, 4, 1, 1, 1]),
])
def test_multilinear_dimensions(oracle, variety, expected):
    assert [oracle.dim_quotient(variety, Multidegree.multilinear(n)) for n in range(1, 7)] == expected


@pytest.mark.slow
@pytest.mark.parametrize("variety, expected", [(AS2, 13), (AS3, 1)])
def test_multilinear_dimension_seven(oracle, variety, expected):
    assert oracle.dim_quotient(variety, Multidegree.multilinear(7)) == expected


def test_first_type_is_nilpotent_of_index_six(oracle):
    assert oracle.dim_quotient(AS1, Multidegree.multilinear(6)) == 0
    assert oracle.dim_quotient(AS1, Multidegree.multilinear(5)) >= 1


def test_module_level_helpers():
    assert dim_quotient(AS2, Multidegree.multilinear(3)) == 5
    assert is_identity(parse_poly("a*b*c*d*e - a*b*d*c*e"), AS2)


def test_degree_limit():
    with pytest.raises(LimitExceeded):
        TIdealOracle(max_degree=4).basis(AS2, Multidegree.multilinear(5))


# -- membership ------------------------------------------------------------

def test_identity_with_certificate(oracle):
    p = parse_poly("d*c*a*b - d*c*b*a - c*d*a*b + c*d*b*a - a*d*c*b + a*c*d*b")
    verdict = oracle.is_identity(p, AS2, certificate=True)
    assert verdict
    (d, combination), = verdict.certificates.items()
    assert poly_sum(source * c for source, c in combination) == p


def test_non_identity(oracle):
    verdict = oracle.is_identity(parse_poly("a*b - b*a"), AS2, certificate=True)
    assert not verdict
    assert verdict.failing == [Multidegree.multilinear(2)]
    assert not oracle.is_identity(parse_poly("a*b - b*a"), AS2)


def test_inhomogeneous_input_is_split(oracle):
    p = parse_poly("a*b*c - a*c*b - b*a*c + b*c*a + c*a*b - c*b*a + a*b*c*d*e - a*c*b*d*e")
    assert oracle.is_identity(p, AS2)
    assert not oracle.is_identity(p + parse_poly("a*b"), AS2)


def test_custom_variety_shares_cache_by_identity(oracle):
    custom = Variety.custom_identity("a*b*c - a*c*b - b*a*c + b*c*a + c*a*b - c*b*a")
    assert custom.canonical == AS2.canonical
    d = Multidegree.multilinear(4)
    assert oracle.basis(custom, d) is oracle.basis(AS2, d)


def test_equivalence_oracle(oracle, rng):
    for _ in range(30):
        p = random_poly(rng, max_degree=5, generators=3)
        q = oracle.reduce(p, AS3)
        assert oracle.reduce(p - q, AS3) == 0
        assert oracle.is_identity(p - q, AS3)


def test_certificate_coefficients_are_exact(oracle):
    verdict = oracle.is_identity(parse_poly("2/3*(a*b*c + b*a*c - b*c*a - c*b*a)"), AS3, certificate=True)
    assert verdict
    coefficients = [c for combination in verdict.certificates.values() for _, c in combination]
    assert all(isinstance(c, Fraction) for c in coefficients)
