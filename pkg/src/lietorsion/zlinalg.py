"""Exact integer linear algebra: Smith and Hermite forms, kernels, cokernels.

Matrices are plain lists of rows of Python ints, so there is no coefficient
growth ceiling.  The pivot rule (smallest nonzero absolute value, ties by
position) keeps intermediate entries small at the scales this package runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class SNFResult:
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.divisors)


@dataclass(frozen=True)
class CokernelStructure:
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def torsion_rank(self) -> int:
        return len(self.torsion)


def _copy_matrix(rows):
    out = []
    width = None
    for r in rows:
        r = list(r)
        if width is None:
            width = len(r)
        elif len(r) != width:
            raise ValueError("ragged matrix")
        out.append(r)
    return out


def smith_normal_form(rows, ncols=None) -> SNFResult:
    """Elementary divisor chain of an integer matrix."""
    a = _copy_matrix(rows)
    m = len(a)
    n = len(a[0]) if a else (ncols or 0)
    diag = []
    t = 0
    while t < min(m, n):
        pivot = _find_pivot(a, t, m, n)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        _clear_position(a, t, m, n)
        diag.append(abs(a[t][t]))
        t += 1
    divisors = _divisor_chain(diag)
    return SNFResult(tuple(divisors))


def _find_pivot(a, t, m, n):
    best = None
    for i in range(t, m):
        row = a[i]
        for j in range(t, n):
            v = row[j]
            if v and (best is None or abs(v) < best[0]):
                best = (abs(v), i, j)
                if best[0] == 1:
                    return (i, j)
    return None if best is None else (best[1], best[2])


def _clear_position(a, t, m, n):
    # alternate row and column reduction until the cross through (t,t) is clear
    while True:
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        pivot = a[t][t]
        swapped = False
        for i in range(t + 1, m):
            v = a[i][t]
            if not v:
                continue
            q = v // pivot
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            if a[i][t]:
                # remainder is smaller than the pivot; promote it
                a[t], a[i] = a[i], a[t]
                swapped = True
                break
        if swapped:
            continue
        for j in range(t + 1, n):
            v = a[t][j]
            if not v:
                continue
            q = v // pivot
            if q:
                for row in a:
                    row[j] -= q * row[t]
            if a[t][j]:
                for row in a:
                    row[t], row[j] = row[j], row[t]
                swapped = True
                break
        if swapped:
            continue
        return


def _divisor_chain(diag):
    ds = [d for d in diag if d]
    k = len(ds)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                if ds[j] % ds[i]:
                    g = gcd(ds[i], ds[j])
                    ds[i], ds[j] = g, ds[i] // g * ds[j]
                    changed = True
    ds.sort()
    return ds


def cokernel_structure(rows, ambient_rank) -> CokernelStructure:
    """Structure of Z^ambient modulo the row lattice of the relation matrix."""
    for r in rows:
        if len(r) != ambient_rank:
            raise ValueError(f"relation of length {len(r)} in ambient rank {ambient_rank}")
    snf = smith_normal_form(rows, ncols=ambient_rank)
    return CokernelStructure(ambient_rank - snf.rank,
                             tuple(d for d in snf.divisors if d > 1))


def hermite_normal_form(rows, ncols=None, transform=False):
    """Row Hermite form.

    Returns (H, U, rank) when transform is requested, with U unimodular,
    U @ rows == H padded by zero rows, and the rows of U beyond ``rank``
    spanning the left kernel.  Otherwise returns (H, rank).
    """
    a = _copy_matrix(rows)
    m = len(a)
    n = len(a[0]) if a else (ncols or 0)
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for j in range(n):
        # fold column j below row r into a single pivot via gcd steps
        while True:
            nz = [i for i in range(r, m) if a[i][j]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: (abs(a[i][j]), i))
            i0, i1 = nz[0], nz[1]
            q = a[i1][j] // a[i0][j]
            a[i1] = [x - q * y for x, y in zip(a[i1], a[i0])]
            if transform:
                u[i1] = [x - q * y for x, y in zip(u[i1], u[i0])]
        if not nz:
            continue
        i0 = nz[0]
        a[r], a[i0] = a[i0], a[r]
        if transform:
            u[r], u[i0] = u[i0], u[r]
        if a[r][j] < 0:
            a[r] = [-x for x in a[r]]
            if transform:
                u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][j] // a[r][j]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if transform:
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    h = a[:r]
    if transform:
        return h, u, r
    return h, r


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols)] if ncols else []
    return [list(col) for col in zip(*rows)]


def integer_kernel(rows, ncols=None) -> list[list[int]]:
    """Basis of the integer right kernel {x : rows @ x = 0}.

    The result generates the full kernel lattice, which is saturated by
    construction.
    """
    rows = _copy_matrix(rows)
    if rows:
        ncols = len(rows[0])
    elif not ncols:
        return []
    b = transpose(rows, ncols=ncols)
    if not b:
        b = [[] for _ in range(ncols)]
    _, u, rank = hermite_normal_form(b, ncols=len(rows), transform=True)
    return [list(u[i]) for i in range(rank, ncols)]


def solve_left(rows, target, ncols=None):
    """Integer x with x @ rows == target, or None."""
    rows = _copy_matrix(rows)
    if not rows:
        return [] if not any(target) else None
    h, u, rank = hermite_normal_form(rows, transform=True)
    v = list(target)
    if len(v) != len(rows[0]):
        raise ValueError("length mismatch")
    coeffs = [0] * rank
    for k in range(rank):
        j = next(jj for jj, x in enumerate(h[k]) if x)
        q, rem = divmod(v[j], h[k][j])
        if rem:
            return None
        if q:
            v = [x - q * y for x, y in zip(v, h[k])]
        coeffs[k] = q
    if any(v):
        return None
    m = len(rows)
    x = [0] * m
    for k, c in enumerate(coeffs):
        if c:
            x = [xi + c * ui for xi, ui in zip(x, u[k])]
    return x


class IntLattice:
    """An integer row lattice kept in echelon form; supports exact membership."""

    def __init__(self, ncols, rows=()):
        self.ncols = ncols
        self.rows = []          # echelon rows ordered by pivot column
        self.pivots = []        # pivot column of each row
        for r in rows:
            self.add(r)

    @property
    def rank(self):
        return len(self.rows)

    def basis(self):
        return [list(r) for r in self.rows]

    def _row_at(self, j):
        try:
            return self.pivots.index(j)
        except ValueError:
            return None

    def add(self, vec):
        """Insert a vector, refining the lattice; True if the lattice grew."""
        v = list(vec)
        if len(v) != self.ncols:
            raise ValueError("length mismatch")
        grew = False
        while True:
            j = next((k for k, x in enumerate(v) if x), None)
            if j is None:
                return grew
            pos = self._row_at(j)
            if pos is None:
                if v[j] < 0:
                    v = [-x for x in v]
                at = sum(1 for p in self.pivots if p < j)
                self.rows.insert(at, v)
                self.pivots.insert(at, j)
                return True
            row = self.rows[pos]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
            else:
                g, s, t = _xgcd(a, b)
                new_row = [s * x + t * y for x, y in zip(row, v)]
                v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
                self.rows[pos] = new_row
                grew = True

    def __contains__(self, vec):
        v = list(vec)
        if len(v) != self.ncols:
            return False
        for row, j in zip(self.rows, self.pivots):
            if any(v[k] for k in range(j)):
                return False
            if v[j]:
                q, rem = divmod(v[j], row[j])
                if rem:
                    return False
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(r in self for r in other.rows)

    def __eq__(self, other):
        return (isinstance(other, IntLattice) and self.ncols == other.ncols
                and self.rank == other.rank and self.contains_lattice(other)
                and other.contains_lattice(self))

    __hash__ = None


def _xgcd(a, b):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def saturation(rows, ncols) -> list[list[int]]:
    """Basis of the saturation (rational span intersected with Z^n)."""
    kernel = integer_kernel(rows, ncols=ncols)
    return integer_kernel(kernel, ncols=ncols)


def order_in_cokernel(relations, ambient_rank, vec):
    """Additive order of vec in Z^ambient / row lattice; None when infinite.

    Computed by augmenting the relation matrix with the vector and comparing
    the two Smith invariant lists.
    """
    base = cokernel_structure(relations, ambient_rank)
    aug = cokernel_structure(list(relations) + [list(vec)], ambient_rank)
    if aug.free_rank != base.free_rank:
        return None
    return _product(base.torsion) // _product(aug.torsion)


def _product(xs):
    out = 1
    for x in xs:
        out *= x
    return out
