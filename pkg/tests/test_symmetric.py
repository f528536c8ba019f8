import pytest
from sympy.combinatorics import Permutation

from malcev.pi.errors import DegreeTooSmall, NotMultilinear
from malcev.pi.freealg.poly import FreePoly, render
from malcev.pi.parsing.expr import parse_poly
from malcev.pi.symmetric.family import (
    adjoined_edges,
    basis_digraph,
    build_p,
    family_polynomial,
    group_generators,
    in_fixed_space,
    is_fully_symmetric,
    is_strongly_connected,
    pair_pattern,
    symmetric_subspace_dim,
    to_dot,
    verify_symmetrization_identity,
)


def test_small_members():
    assert build_p(1).poly == parse_poly("x1")
    assert build_p(2).poly == parse_poly("x1*x2 + x2*x1")
    assert build_p(3).poly == parse_poly("x1*x3*x2 + x3*x1*x2 + x2*x1*x3")
    assert len(build_p(4).poly) == 8


def test_p5_has_nine_pair_terms():
    p = build_p(5).poly
    assert len(p) == 9
    assert p.coefficient((2, 1, 4, 5, 3)) == 3
    assert p.coefficient((1, 2, 4, 5, 3)) == -2
    assert p.coefficient((2, 3, 4, 5, 1)) == -2


def test_pair_pattern_needs_arity_five():
    with pytest.raises(DegreeTooSmall):
        pair_pattern(4)
    assert sum(pair_pattern(7).values()) == 7


def test_family_over_more_generators():
    assert family_polynomial(1, 3) == parse_poly("x1 + x2 + x3")
    assert family_polynomial(2, 3) == parse_poly("x1*x2 + x2*x1 + x1*x3 + x3*x1 + x2*x3 + x3*x2")
    with pytest.raises(ValueError):
        family_polynomial(4, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_members_are_symmetric(as2, n):
    assert is_fully_symmetric(build_p(n).poly, n, as2, sample=None if n <= 5 else 40)


@pytest.mark.slow
def test_p7_is_symmetric(as2):
    assert is_fully_symmetric(build_p(7).poly, 7, as2, sample=100)


def test_plain_product_is_not_symmetric(as2):
    assert not is_fully_symmetric(parse_poly("x1*x2"), 2, as2)
    assert not is_fully_symmetric(build_p(5).poly - parse_poly("x1*x2*x3*x4*x5"), 5, as2)


def test_symmetry_needs_multilinear_input(as2):
    with pytest.raises(NotMultilinear):
        is_fully_symmetric(parse_poly("x1*x1"), 2, as2)
    with pytest.raises(NotMultilinear):
        is_fully_symmetric(parse_poly("x1*x3"), 2, as2)


def test_group_generators():
    assert group_generators(1) == []
    assert group_generators(2) == [Permutation([1, 0])]
    assert group_generators(4)[1] == Permutation([1, 2, 3, 0])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_fixed_space_is_a_line_spanned_by_the_family(as2, n):
    assert symmetric_subspace_dim(n, as2) == 1
    assert in_fixed_space(build_p(n).poly, n, as2)


def test_generic_word_is_outside_fixed_space(as2):
    assert not in_fixed_space(FreePoly.monomial((1, 2, 3, 4, 5)), 5, as2)


@pytest.mark.parametrize("n", [5, 6])
def test_symmetrization_identity(as2, n):
    report = verify_symmetrization_identity(n, as2)
    assert report.passed
    assert set(report.checks) == {"collapse", "identity", "single-word"}


def test_symmetrization_report_lines(as2):
    lines = verify_symmetrization_identity(5, as2).lines()
    assert "6*Sum = 4*p5: PASS" in lines
    assert lines[0].startswith("Sum: the pairs (x_i, x_j)")
    assert "symmetrization of x1...x5 = 6*Sum: PASS" in lines
    assert "Sum = 4*p5 with each pair read as one word: PASS" in lines
    assert all(line.endswith("PASS") for line in lines[1:])


@pytest.mark.slow
def test_symmetrization_identity_seven(as2):
    assert verify_symmetrization_identity(7, as2).passed


def test_symmetrization_needs_arity_five(as2):
    with pytest.raises(DegreeTooSmall):
        verify_symmetrization_identity(4, as2)


@pytest.mark.parametrize("n, edges", [(5, 9), (6, 11), (7, 13)])
def test_basis_digraph(as2, n, edges):
    graph = basis_digraph(n, as2)
    assert graph.number_of_edges() == edges
    assert is_strongly_connected(graph)
    assert is_strongly_connected(graph, include_special=True)
    assert graph.edges[2, 3]["special"]


def test_adjoined_edges(as2):
    assert adjoined_edges(5, as2) == [(1, 6), (6, 1)]
    assert adjoined_edges(8, as2) == [(1, 9), (9, 1)]


def test_dot_rendering(as2):
    dot = to_dot(basis_digraph(5, as2))
    lines = dot.splitlines()
    assert lines[0] == "// strongly connected without the special edge: yes"
    assert lines[1] == "digraph as2_basis_5 {"
    assert '  x2 -> x3 [style=dashed, label="special"];' in lines
    assert "  x1 -> x5;" in lines
    assert dot.endswith("}\n")


def test_render_of_p3():
    assert render(build_p(3).poly) == "x3*x1*x2 + x2*x1*x3 + x1*x3*x2"
