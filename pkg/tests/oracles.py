"""Independent reference computations used to freeze expected values.

Nothing here imports the package's algorithms; each oracle takes a different
route from the code under test (dense eigensolvers, brute-force scans, closed
formulas, explicit Pauli matrices).
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np


def eig_dimensions(fusion: np.ndarray) -> np.ndarray:
    """d_X = largest eigenvalue of the matrix (N^Z_{XY})_{Y,Z}, via numpy.linalg.eigvals."""
    return np.array([max(np.linalg.eigvals(fusion[x].astype(float)).real) for x in range(fusion.shape[0])])


def associativity_defects(fusion) -> list[tuple[int, int, int, int]]:
    """All (X, Y, Z, W) where (XY)Z and X(YZ) disagree, by plain loops."""
    r = len(fusion)
    out = []
    for x, y, z, w in itertools.product(range(r), repeat=4):
        lhs = sum(int(fusion[x][y][e]) * int(fusion[e][z][w]) for e in range(r))
        rhs = sum(int(fusion[x][f][w]) * int(fusion[y][z][f]) for f in range(r))
        if lhs != rhs:
            out.append((x, y, z, w))
    return out


def divisor_count(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)


def catalan(m: int) -> int:
    return math.factorial(2 * m) // (math.factorial(m) * math.factorial(m + 1))


def brute_lagrangians_cyclic(n: int) -> set[frozenset]:
    """Lagrangians of (Z/n x Z/n, q(a,g) = ag/n) by scanning spans of element pairs.

    Every subgroup of a rank-two abelian group is generated by two elements.
    """
    elements = list(itertools.product(range(n), repeat=2))

    def span(u, v):
        return frozenset(((i * u[0] + j * v[0]) % n, (i * u[1] + j * v[1]) % n) for i in range(n) for j in range(n))

    found = set()
    for u, v in itertools.combinations_with_replacement(elements, 2):
        S = span(u, v)
        if len(S) == n and all(Fraction(a * g, n).denominator == 1 for a, g in S):
            found.add(S)
    return found


def walk_counts(k: int, m: int) -> np.ndarray:
    """Length-m walks on the A_{k+1} path graph from an end vertex, via a matrix power."""
    A = np.zeros((k + 1, k + 1), dtype=np.int64)
    for v in range(k):
        A[v, v + 1] = A[v + 1, v] = 1
    return np.linalg.matrix_power(A, m)[0]


def quantum_integer(j: int, k: int) -> float:
    """[j] = sin(j pi/(k+2)) / sin(pi/(k+2))."""
    t = math.pi / (k + 2)
    return math.sin(j * t) / math.sin(t)


_X = np.array([[0, 1], [1, 0]])
_Z = np.array([[1, 0], [0, -1]])
_I = np.eye(2, dtype=int)


def pauli_matrix(n: int, xs=(), zs=()) -> np.ndarray:
    """Dense 2^n x 2^n matrix of prod X_i prod Z_j (as a Kronecker product)."""
    out = np.array([[1]])
    for site in range(n):
        op = _I
        if site in xs:
            op = op @ _X
        if site in zs:
            op = op @ _Z
        out = np.kron(out, op)
    return out


def commute(a: np.ndarray, b: np.ndarray) -> bool:
    return np.array_equal(a @ b, b @ a)


def stack_diagrams(top: tuple[int, ...], bottom: tuple[int, ...], m: int) -> tuple[tuple[int, ...], int]:
    """Stack two TL pairings as a graph on 3m vertices and read off components.

    Vertices: result bottom 0..m-1, middle m..2m-1, result top 2m..3m-1.  Each
    arc is an edge; components with two outer vertices are strands, the rest
    (middle-only cycles) are closed loops.
    """
    adj = {v: [] for v in range(3 * m)}

    # the lower diagram's points already match: bottom row 0..m-1, top row = middle m..2m-1
    def upper(p):  # top diagram: bottom row is the middle, top row is the result top
        return m + p if p < m else 2 * m + (p - m)

    for i, j in enumerate(bottom):
        adj[i].append(j)
    for i, j in enumerate(top):
        adj[upper(i)].append(upper(j))
    seen, result, loops = set(), [0] * (2 * m), 0
    for v in range(3 * m):
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        outer = [u if u < m else u - m for u in comp if u < m or u >= 2 * m]
        if not outer:
            loops += 1
        else:
            a, b = outer
            result[a], result[b] = b, a
    return tuple(result), loops
