"""Smith/Hermite forms, kernels, and cokernels against determinantal oracles."""

import random
from itertools import combinations
from math import gcd

import pytest

from lietorsion.zlinalg import (CokernelStructure, IntLattice, cokernel_structure,
                                hermite_normal_form, integer_kernel,
                                order_in_cokernel, saturation, smith_normal_form,
                                solve_left, transpose)


def det(m):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det(minor)
    return total


def gcd_of_k_minors(m, k):
    rows = range(len(m))
    cols = range(len(m[0]) if m else 0)
    g = 0
    for ri in combinations(rows, k):
        for ci in combinations(cols, k):
            sub = [[m[i][j] for j in ci] for i in ri]
            g = gcd(g, det(sub))
    return g


def random_matrix(rng, rows, cols, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def test_snf_examples():
    assert smith_normal_form([[2]]).divisors == (2,)
    assert smith_normal_form([[1, 0], [0, 3]]).divisors == (1, 3)
    r = smith_normal_form([[2, 4], [4, 8]])
    assert r.divisors == (2,) and r.rank == 1


def test_snf_empty():
    assert smith_normal_form([], ncols=3).rank == 0
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0


def test_snf_divisibility_chain_random():
    rng = random.Random(21)
    for _ in range(60):
        m = random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12))
        ds = smith_normal_form(m).divisors
        for a, b in zip(ds, ds[1:]):
            assert b % a == 0


def test_snf_determinantal_divisors_random():
    rng = random.Random(22)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        ds = smith_normal_form(m).divisors
        prod = 1
        for k, d in enumerate(ds, start=1):
            prod *= d
            assert prod == abs(gcd_of_k_minors(m, k))
        assert gcd_of_k_minors(m, len(ds) + 1) == 0 or len(ds) == min(len(m), len(m[0]))


def test_cokernel_examples():
    assert cokernel_structure([], 3) == CokernelStructure(3, ())
    assert cokernel_structure([[2, 0], [0, 1]], 2) == CokernelStructure(0, (2,))
    rows = [[1, 0, 0, 0], [0, 1, 0, -1], [0, 1, 0, 1], [0, 0, 1, 0]]
    assert cokernel_structure(rows, 4) == CokernelStructure(0, (2,))


def test_cokernel_column_mismatch():
    with pytest.raises(ValueError):
        cokernel_structure([[1, 2]], 3)


def test_cokernel_invariant_under_row_operations():
    rng = random.Random(23)
    for _ in range(25):
        rows = random_matrix(rng, 5, 4, bound=5)
        base = cokernel_structure(rows, 4)
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert cokernel_structure(shuffled, 4) == base
        modified = [r[:] for r in rows]
        i, j = rng.sample(range(5), 2)
        q = rng.randint(-3, 3)
        modified[i] = [a + q * b for a, b in zip(modified[i], modified[j])]
        assert cokernel_structure(modified, 4) == base


def test_integer_kernel_examples():
    assert integer_kernel([[1, 1]]) == [[1, -1]] or integer_kernel([[1, 1]]) == [[-1, 1]]
    assert integer_kernel([[2]]) == []
    k = integer_kernel([[1, 2], [2, 4]])
    assert len(k) == 1 and k[0] in ([2, -1], [-2, 1])


def test_integer_kernel_properties():
    rng = random.Random(24)
    for _ in range(30):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols, bound=4)
        kernel = integer_kernel(m)
        for v in kernel:
            assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
        rank = hermite_normal_form(m)[1]
        assert rank + len(kernel) == cols


def test_kernel_lattice_is_saturated():
    rng = random.Random(25)
    for _ in range(15):
        m = random_matrix(rng, 2, 4, bound=3)
        lattice = IntLattice(4, integer_kernel(m))
        # every small integer vector annihilated by m must be in the lattice
        from itertools import product
        for v in product(range(-2, 3), repeat=4):
            if all(sum(a * b for a, b in zip(row, v)) == 0 for row in m):
                assert list(v) in lattice


def test_hermite_transform_identity():
    rng = random.Random(26)
    for _ in range(25):
        m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), bound=6)
        h, u, rank = hermite_normal_form(m, transform=True)
        n = len(m[0])
        for k in range(len(m)):
            combo = [sum(u[k][i] * m[i][j] for i in range(len(m))) for j in range(n)]
            assert combo == (h[k] if k < rank else [0] * n)


def test_solve_left():
    rows = [[2, 0, 1], [0, 3, 1]]
    x = solve_left(rows, [2, 3, 2])
    assert x is not None
    assert [sum(a * b for a, b in zip(col, x)) for col in transpose(rows)] == [2, 3, 2]
    assert solve_left(rows, [1, 0, 0]) is None


def test_lattice_membership():
    lat = IntLattice(3, [[2, 0, 0], [0, 1, 1]])
    assert [2, 1, 1] in lat
    assert [1, 0, 0] not in lat
    assert [4, -3, -3] in lat
    lat.add([1, 0, 0])
    assert [1, 0, 0] in lat
    assert lat.rank == 2


def test_saturation():
    sat = IntLattice(2, saturation([[2, 4]], 2))
    assert [1, 2] in sat and [2, 4] in sat
    assert [1, 1] not in sat
    assert sat.rank == 1


def test_order_in_cokernel():
    # Z^2 / <(2,0),(0,1)> has torsion Z/2 generated by (1,0)
    relations = [[2, 0], [0, 1]]
    assert order_in_cokernel(relations, 2, [1, 0]) == 2
    assert order_in_cokernel(relations, 2, [0, 1]) == 1
    assert order_in_cokernel([[2, 0]], 2, [0, 1]) is None  # infinite order
    assert order_in_cokernel([[6, 0], [0, 1]], 2, [2, 0]) == 3
