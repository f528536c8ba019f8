"""
The symmetric family p1, p2, ... of the second-type operad and its checks.

Everything here lives in the multilinear component: p_n is a polynomial in
x1..xn, and "symmetric" means invariant under S_n modulo the second-type
T-ideal. From arity 5 on a pair (x_i, x_j) is materialized as the word
x_i * (remaining letters, sorted) * x_j.
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
from sympy import Matrix, Rational
from sympy.combinatorics import Permutation
from sympy.combinatorics.named_groups import SymmetricGroup
from sympy.utilities.iterables import multiset_permutations

from malcev.pi.errors import DegreeTooSmall, NotMultilinear
from malcev.pi.freealg.poly import FreePoly, act_permutation
from malcev.pi.freealg.words import Multidegree
from malcev.pi.normalforms.as2 import PAIR_DEGREE, As2NormalForm
from malcev.pi.normalforms.base import ElementPoly

Pattern = Dict[Tuple[int, ...], int]

# Positions t of x_{i_t}; p1..p4 are written out, p_n (n >= 5) is built from pairs.
SMALL_PATTERNS: Dict[int, Pattern] = {
    1: {(1,): 1},
    2: {(1, 2): 1, (2, 1): 1},
    3: {(1, 3, 2): 1, (3, 1, 2): 1, (2, 1, 3): 1},
    4: {
        (1, 2, 3, 4): 4, (1, 2, 4, 3): -10, (1, 4, 2, 3): 15, (1, 4, 3, 2): -5,
        (2, 3, 4, 1): 3, (3, 4, 1, 2): 11, (3, 4, 2, 1): -8, (4, 3, 2, 1): 5,
    },
}
SPECIAL_EDGE = (2, 3)

_engine: Optional[As2NormalForm] = None


def default_engine() -> As2NormalForm:
    global _engine
    if _engine is None:
        _engine = As2NormalForm()
    return _engine


@dataclass(frozen=True)
class SymFamilyElement:
    n: int
    poly: FreePoly


def pair_word(i: int, j: int, letters: Iterable[int]) -> Tuple[int, ...]:
    """x_i, then the other ``letters`` sorted, then x_j."""
    interior = sorted(letters)
    interior.remove(i)
    interior.remove(j)
    return (i,) + tuple(interior) + (j,)


def pair_pattern(n: int) -> Dict[Tuple[int, int], int]:
    """Coefficients of p_n (n >= 5) on the pairs (x_{i_s}, x_{i_t}), by position."""
    if n < PAIR_DEGREE:
        raise DegreeTooSmall(n, PAIR_DEGREE)
    pairs: Dict[Tuple[int, int], int] = {}
    for t in range(3, n + 1):
        pairs[(t, 1)] = 1
    for t in range(2, n + 1):
        if t != 3:
            pairs[(1, t)] = 1
    pairs[(1, 3)] = -(n - 3)
    pairs[(2, 1)] = -(n - 3)
    pairs[(2, 3)] = n - 2
    return pairs


def family_pattern(k: int) -> Pattern:
    if k < 1:
        raise ValueError(f"The family starts at arity 1, got {k}.")
    if k in SMALL_PATTERNS:
        return SMALL_PATTERNS[k]
    positions = range(1, k + 1)
    return {pair_word(s, t, positions): c for (s, t), c in pair_pattern(k).items()}


def family_polynomial(k: int, n: int) -> FreePoly:
    """p_k summed over all index sets i_1 < ... < i_k of {1..n}."""
    if n < k:
        raise ValueError(f"p{k} needs at least {k} generators, got {n}.")
    pattern = family_pattern(k)
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for subset in combinations(range(1, n + 1), k):
        for positions, coeff in pattern.items():
            letters = tuple(subset[t - 1] for t in positions)
            terms[letters] = terms.get(letters, 0) + Fraction(coeff)
    return FreePoly.from_letters(terms)


def build_p(n: int) -> SymFamilyElement:
    return SymFamilyElement(n, family_polynomial(n, n))


def _check_multilinear(p: FreePoly, n: int) -> None:
    if not p.is_multilinear or any(letter > n for word in p for letter in word.letters):
        raise NotMultilinear(f"Expected a multilinear polynomial in x1..x{n}.")


def group_generators(n: int) -> List[Permutation]:
    """The transposition (1 2) and the n-cycle, as permutations of {0..n-1}."""
    if n < 2:
        return []
    generators = [Permutation([1, 0] + list(range(2, n)))]
    if n > 2:
        generators.append(Permutation(list(range(1, n)) + [0]))
    return generators


def is_symmetric(p: FreePoly, n: int, engine: Optional[As2NormalForm] = None,
                 permutations: Optional[Iterable[Permutation]] = None) -> bool:
    """
    True iff act(sigma, p) - p vanishes modulo the second-type T-ideal for
    every sigma in ``permutations`` (default: generators of S_n).

    :raises NotMultilinear: unless every word of ``p`` is multilinear in x1..xn.
    """
    _check_multilinear(p, n)
    engine = engine or default_engine()
    permutations = group_generators(n) if permutations is None else permutations
    return all(not engine.nf(act_permutation(sigma, p) - p) for sigma in permutations)


def is_fully_symmetric(p: FreePoly, n: int, engine: Optional[As2NormalForm] = None,
                       sample: Optional[int] = None, seed: int = 0) -> bool:
    """Check every element of S_n, or ``sample`` random ones."""
    if sample is None:
        permutations = list(SymmetricGroup(n).generate()) if n > 1 else []
    else:
        rng = random.Random(seed)
        permutations = [Permutation(rng.sample(range(n), n)) for _ in range(sample)]
    return is_symmetric(p, n, engine, permutations)


@dataclass
class SymmetrizationReport:
    n: int
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> List[str]:
        n, k = self.n, factorial(self.n - 2)
        legend = f"Sum: the pairs (x_i, x_j), i != j, summed; p{n}: each pair read as its class sum"
        statements = {
            "collapse": f"symmetrization of x1...x{n} = {k}*Sum",
            "identity": f"{k}*Sum = {n - 1}*p{n}",
            "single-word": f"Sum = {n - 1}*p{n} with each pair read as one word",
        }
        return [legend] + [f"{statements[name]}: {'PASS' if ok else 'FAIL'}" for name, ok in self.checks.items()]


def pair_sum(n: int) -> FreePoly:
    """Sum over i != j of the pair (x_i, x_j), each as its sorted-interior word."""
    letters = range(1, n + 1)
    return FreePoly.from_letters({pair_word(i, j, letters): 1 for i in letters for j in letters if i != j})


def class_sum(p: FreePoly) -> FreePoly:
    """Replace every word by the sum of all words with its end letters and interior letters."""
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for word, coeff in p.items():
        first, *interior, last = word.letters
        for order in multiset_permutations(interior):
            key = (first,) + tuple(order) + (last,)
            terms[key] = terms.get(key, 0) + coeff
    return FreePoly.from_letters(terms)


def verify_symmetrization_identity(n: int, engine: Optional[As2NormalForm] = None) -> SymmetrizationReport:
    """
    Compare, in normal form: the full symmetrization of x1...xn with (n-2)! times
    the pair sum; (n-2)! times the pair sum with (n-1) p_n read with class-sum
    pairs; and the pair sum with (n-1) p_n read with single words.

    :raises DegreeTooSmall: for n < 5.
    """
    if n < PAIR_DEGREE:
        raise DegreeTooSmall(n, PAIR_DEGREE)
    engine = engine or default_engine()
    k = factorial(n - 2)
    total = pair_sum(n)
    p = build_p(n).poly
    full = FreePoly.from_letters({tuple(w): 1 for w in multiset_permutations(list(range(1, n + 1)))})

    report = SymmetrizationReport(n)
    report.checks["collapse"] = engine.nf(full) == engine.nf(k * total)
    report.checks["identity"] = engine.nf(k * total) == engine.nf((n - 1) * class_sum(p))
    report.checks["single-word"] = engine.nf(total) == engine.nf((n - 1) * p)
    return report


def _coordinates(poly: ElementPoly, index: Dict[object, int]) -> List[Fraction]:
    vector = [Fraction(0)] * len(index)
    for element, coeff in poly.items():
        vector[index[element]] = coeff
    return vector


def action_matrices(n: int, engine: Optional[As2NormalForm] = None) -> Tuple[list, List[Matrix]]:
    """The basis of the multilinear slice and the matrices of the S_n generators on it."""
    engine = engine or default_engine()
    basis = engine.basis_enum(Multidegree.multilinear(n))
    index = {element: i for i, element in enumerate(basis)}
    matrices = []
    for sigma in group_generators(n):
        columns = [_coordinates(engine.nf(act_permutation(sigma, b.expand())), index) for b in basis]
        matrices.append(Matrix(len(basis), len(basis),
                               lambda i, j: Rational(columns[j][i].numerator, columns[j][i].denominator)))
    return basis, matrices


def fixed_space(n: int, engine: Optional[As2NormalForm] = None) -> List[ElementPoly]:
    """A basis of the S_n-fixed vectors of the multilinear slice, by exact nullspace."""
    basis, matrices = action_matrices(n, engine)
    if not matrices:
        return [ElementPoly.single(b) for b in basis]
    size = len(basis)
    system = Matrix.vstack(*[m - Matrix.eye(size) for m in matrices])
    vectors = []
    for v in system.nullspace():
        vectors.append(ElementPoly({
            basis[i]: Fraction(int(v[i].p), int(v[i].q)) for i in range(size) if v[i] != 0
        }))
    return vectors


def symmetric_subspace_dim(n: int, engine: Optional[As2NormalForm] = None) -> int:
    return len(fixed_space(n, engine))


def in_fixed_space(p: FreePoly, n: int, engine: Optional[As2NormalForm] = None) -> bool:
    """Whether the coordinates of ``p`` solve the fixed-point system."""
    engine = engine or default_engine()
    basis, matrices = action_matrices(n, engine)
    index = {element: i for i, element in enumerate(basis)}
    column = _coordinates(engine.nf(p), index)
    v = Matrix(len(basis), 1, [Rational(c.numerator, c.denominator) for c in column])
    return all((m * v - v).is_zero_matrix for m in matrices)


# -- digraph of the multilinear basis pairs ------------------------------------

def basis_digraph(n: int, engine: Optional[As2NormalForm] = None) -> nx.DiGraph:
    """Nodes x1..xn, one edge i -> j per basis pair (x_i, x_j); the (x2, x3) edge is flagged ``special``."""
    if n < PAIR_DEGREE:
        raise DegreeTooSmall(n, PAIR_DEGREE)
    engine = engine or default_engine()
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, n + 1))
    for pair in engine.basis_enum(Multidegree.multilinear(n)):
        graph.add_edge(pair.first, pair.last, special=(pair.first, pair.last) == SPECIAL_EDGE)
    return graph


def is_strongly_connected(graph: nx.DiGraph, include_special: bool = False) -> bool:
    if include_special:
        return nx.is_strongly_connected(graph)
    view = nx.subgraph_view(graph, filter_edge=lambda u, v: not graph.edges[u, v]["special"])
    return nx.is_strongly_connected(view)


def adjoined_edges(n: int, engine: Optional[As2NormalForm] = None) -> List[Tuple[int, int]]:
    """Edges gained when the generator x_{n+1} is adjoined."""
    before = set(basis_digraph(n, engine).edges)
    return sorted(set(basis_digraph(n + 1, engine).edges) - before)


def to_dot(graph: nx.DiGraph) -> str:
    n = graph.number_of_nodes()
    connected = "yes" if is_strongly_connected(graph) else "no"
    lines = [
        f"// strongly connected without the special edge: {connected}",
        f"digraph as2_basis_{n} {{",
    ]
    lines += [f"  x{node};" for node in sorted(graph.nodes)]
    for u, v in sorted(graph.edges):
        attributes = ' [style=dashed, label="special"]' if graph.edges[u, v]["special"] else ""
        lines.append(f"  x{u} -> x{v}{attributes};")
    lines.append("}")
    return "\n".join(lines) + "\n"
