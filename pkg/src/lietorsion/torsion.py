"""Degree-by-degree torsion of the central quotient of prime Lie powers of the
derived ideal of the rank-2 free Lie ring.

The degree-c part of the derived ideal modulo the next lower central term is
the free Lie power of the graded abelian group A with basis u(s,t) of ambient
degree s+t+2, on which the ambient generators act by u(s,t)x = u(s+1,t) and
u(s,t)y = u(s,t+1).  Killing that action degree by degree presents the
quotient as an integer cokernel, so torsion is read off Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .elements import (IntegralityError, LieElement, TensorElement, ZZ,
                       leftnormed_tensor, lie_from_tensor, lyndon_monomial)
from .maps import (ActionSpec, derive, eta, metabelian_of_word, mixed_basis,
                   metabelian_normal_coords, normal_words, theta)
from .words import Alphabet, Generator, LyndonWord, lyndon_words_of_length
from .zlinalg import (CokernelStructure, IntLattice, cokernel_structure,
                      integer_kernel, order_in_cokernel, solve_left, transpose)

VARIABLES = ("x", "y")


def a_generator(s: int, t: int) -> Generator:
    """Basis element u(s,t) = [y,x,x..x,y..y] of L'/L'', ambient degree s+t+2."""
    if s < 0 or t < 0:
        raise ValueError("indices must be non-negative")
    return Generator(f"u({s},{t})", (s + 1, t + 1))


def st_of(g: Generator) -> tuple[int, int]:
    a, b = g.multidegree
    return a - 1, b - 1


def a_generators(max_degree: int) -> list[Generator]:
    """All u(s,t) of ambient degree <= max_degree, ordered by (degree, s)."""
    if max_degree < 2:
        raise ValueError("the smallest generator has degree 2")
    out = []
    for degree in range(2, max_degree + 1):
        for s in range(degree - 1):
            out.append(a_generator(s, degree - 2 - s))
    return out


def a_alphabet(max_degree: int) -> Alphabet:
    return Alphabet(a_generators(max_degree))


def a_action(alphabet: Alphabet) -> ActionSpec:
    """The derivation action u(s,t)x = u(s+1,t), u(s,t)y = u(s,t+1).

    Pairs whose target exceeds the alphabet's degree cut stay undefined.
    """
    images = {}
    for i, g in enumerate(alphabet):
        s, t = st_of(g)
        for var, (s2, t2) in (("x", (s + 1, t)), ("y", (s, t + 1))):
            name = f"u({s2},{t2})"
            try:
                j = alphabet.index(name)
            except KeyError:
                continue
            images[(i, var)] = {j: 1}
    return ActionSpec(alphabet, VARIABLES, images)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class TorsionReport:
    prime: int
    degree: int
    lie_power_rank: int
    cokernel: CokernelStructure
    theorem_count: int
    all_order_p: bool
    independent: bool
    spanning: bool
    torsion_all_p: bool
    integrality_passed: bool
    theorem_checked: bool

    @property
    def passed(self) -> bool:
        if not self.theorem_checked:
            return True
        return (self.all_order_p and self.independent and self.spanning
                and self.torsion_all_p and self.integrality_passed)


@dataclass(frozen=True)
class MetabelianTorsionReport:
    prime: int
    degree: int
    lie_torsion: tuple[int, ...]
    metabelian_torsion: tuple[int, ...]
    ranks_agree: bool
    theta_matches: bool
    units: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return self.ranks_agree and self.theta_matches


@dataclass(frozen=True)
class FreenessReport:
    prime: int
    max_degree: int
    dimensions: tuple[tuple[int, int], ...]   # (degree, rank of the kernel part)
    torsion_found: tuple[tuple[int, ...], ...]
    all_torsion_free: bool
    nonvacuous: bool

    @property
    def passed(self) -> bool:
        return self.all_torsion_free


class TorsionEngine:
    """Caches bases and derivations for one modulus up to one ambient degree."""

    def __init__(self, p: int, max_degree: int):
        if p < 2:
            raise ValueError("the class length must be at least 2")
        if max_degree < 2 * p:
            max_degree = 2 * p
        self.p = p
        self.max_degree = max_degree
        self.alphabet = a_alphabet(max(2, max_degree - 2 * (p - 1)))
        self.action = a_action(self.alphabet)
        self._lie_basis = {}
        self._normal_basis = {}
        self._derived = {}

    # -- bases ------------------------------------------------------------

    def lie_basis(self, d: int) -> list[tuple]:
        """Lyndon words of length p and ambient degree d, as index tuples."""
        if d not in self._lie_basis:
            if d < 2 * self.p:
                self._lie_basis[d] = []
            else:
                words = lyndon_words_of_length(self.alphabet, self.p, weight=d)
                self._lie_basis[d] = [w.idx for w in words]
        return self._lie_basis[d]

    def lie_index(self, d: int) -> dict:
        return {w: i for i, w in enumerate(self.lie_basis(d))}

    def normal_basis(self, d: int) -> list[tuple]:
        if d not in self._normal_basis:
            if d < 2 * self.p:
                self._normal_basis[d] = []
            else:
                self._normal_basis[d] = normal_words(self.alphabet, self.p, weight=d)
        return self._normal_basis[d]

    # -- the Lie-side presentation -----------------------------------------

    def derived_coords(self, word: tuple, var: str) -> dict:
        key = (word, var)
        if key not in self._derived:
            e = lyndon_monomial(self.alphabet, word)
            self._derived[key] = derive(e, var, self.action).terms
        return self._derived[key]

    def action_matrix(self, d: int) -> list[list[int]]:
        """Relations of degree d: the x- and y-images of the degree d-1 basis."""
        index = self.lie_index(d)
        rows = []
        for word in self.lie_basis(d - 1):
            for var in VARIABLES:
                row = [0] * len(index)
                for w, c in self.derived_coords(word, var).items():
                    row[index[w]] = c
                rows.append(row)
        return rows

    def graded_cokernel(self, d: int) -> CokernelStructure:
        return cokernel_structure(self.action_matrix(d), len(self.lie_basis(d)))

    # -- theorem elements ---------------------------------------------------

    def theorem_element(self, s: int, t: int) -> LieElement:
        """The degree p(s+t+2)+2 torsion representative built from u = u(s,t).

        The double sum is divided by p; the division is asserted exact.
        """
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        p = self.p
        u = self.alphabet.index(f"u({s},{t})")
        vx = self.alphabet.index(f"u({s + 1},{t})")
        vy = self.alphabet.index(f"u({s},{t + 1})")
        acc = {}
        for i in range(p - 1):
            for word, sign in (((vy,) + (u,) * i + (vx,) + (u,) * (p - 2 - i), 1),
                               ((vx,) + (u,) * i + (vy,) + (u,) * (p - 2 - i), -1)):
                for w, k in leftnormed_tensor(word).items():
                    acc[w] = acc.get(w, 0) + sign * k
        acc = {w: c for w, c in acc.items() if c}
        presum = lie_from_tensor(TensorElement(self.alphabet, ZZ, acc, _clean=True))
        return presum.divided_by(p)

    def theorem_vector(self, s: int, t: int, d: int) -> list[int]:
        index = self.lie_index(d)
        vec = [0] * len(index)
        for w, c in self.theorem_element(s, t).terms.items():
            vec[index[w]] = c
        return vec

    def theorem_indices(self, d: int) -> list[tuple[int, int]]:
        p = self.p
        if d < 2 * p + 2 or (d - 2) % p:
            return []
        k = (d - 2) // p - 2
        return [(s, k - s) for s in range(k + 1)]

    def verify_theorem_degree(self, d: int) -> TorsionReport:
        relations = self.action_matrix(d)
        n = len(self.lie_basis(d))
        coker = self.graded_cokernel(d)
        theorem_checked = is_prime(self.p)
        torsion_all_p = all(q == self.p for q in coker.torsion)
        if not theorem_checked:
            return TorsionReport(self.p, d, n, coker, 0, True, True, True,
                                 torsion_all_p, True, False)
        pairs = self.theorem_indices(d)
        integrality = True
        vectors = []
        for s, t in pairs:
            try:
                vectors.append(self.theorem_vector(s, t, d))
            except IntegralityError:
                integrality = False
        all_order_p = all(
            order_in_cokernel(relations, n, v) == self.p for v in vectors)
        base_torsion = coker.torsion
        aug = cokernel_structure(relations + vectors, n)
        independent = (aug.free_rank == coker.free_rank
                       and _product(base_torsion) ==
                       _product(aug.torsion) * self.p ** len(vectors))
        spanning = independent and not aug.torsion
        return TorsionReport(self.p, d, n, coker, len(pairs), all_order_p,
                             independent, spanning, torsion_all_p,
                             integrality and len(vectors) == len(pairs), True)

    def torsion_report(self, max_degree=None) -> list[TorsionReport]:
        top = self.max_degree if max_degree is None else max_degree
        return [self.verify_theorem_degree(d) for d in range(2 * self.p, top + 1)]

    # -- the metabelian side ------------------------------------------------

    def metabelian_matrix(self, d: int) -> list[list[int]]:
        basis = self.normal_basis(d)
        index = {w: i for i, w in enumerate(basis)}
        rows = []
        for word in self.normal_basis(d - 1):
            m = metabelian_of_word(self.alphabet, word)
            for var in VARIABLES:
                dm = derive(m, var, self.action)
                row = [0] * len(basis)
                for w, c in metabelian_normal_coords(dm).items():
                    row[index[w]] = c
                rows.append(row)
        return rows

    def metabelian_torsion_check(self, d: int) -> MetabelianTorsionReport:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        p = self.p
        l_coker = self.graded_cokernel(d)
        m_coker = cokernel_structure(self.metabelian_matrix(d),
                                     len(self.normal_basis(d)))
        ranks_agree = (len(l_coker.torsion) == len(m_coker.torsion)
                       and all(q == p for q in l_coker.torsion + m_coker.torsion))
        relations = self.action_matrix(d)
        n = len(self.lie_basis(d))
        index = self.lie_index(d)
        lattice = IntLattice(n, relations)
        matches = True
        units = []
        for s, t in self.theorem_indices(d):
            u = self.alphabet.index(f"u({s},{t})")
            vx = self.alphabet.index(f"u({s + 1},{t})")
            vy = self.alphabet.index(f"u({s},{t + 1})")
            word = (vy, vx) + (u,) * (p - 2)
            m_elt = metabelian_of_word(self.alphabet, word)
            image = theta(m_elt)
            vec = [0] * n
            for w, c in image.terms.items():
                vec[index[w]] = c
            target = self.theorem_vector(s, t, d)
            unit = next((a for a in range(1, p)
                         if [x - a * y for x, y in zip(vec, target)] in lattice),
                        None)
            if unit is None:
                matches = False
            else:
                units.append(unit)
        return MetabelianTorsionReport(p, d, l_coker.torsion, m_coker.torsion,
                                       ranks_agree, matches, tuple(units))

    # -- the second-derived kernel -------------------------------------------

    def eta_matrix(self, d: int):
        basis = self.lie_basis(d)
        keys = mixed_basis(self.alphabet, self.p, max_weight=d)
        keys = [k for k in keys
                if self.alphabet.weight_of(k[0])
                + sum(self.alphabet.weight_of(i) for i in k[1]) == d]
        key_index = {k: i for i, k in enumerate(keys)}
        rows = []
        for word in basis:
            m = eta(lyndon_monomial(self.alphabet, word))
            row = [0] * len(keys)
            for key, c in m.mixed.terms.items():
                row[key_index[key]] = c
            rows.append(row)
        return rows, len(keys)

    def bp_kernel_basis(self, d: int) -> list[list[int]]:
        """Basis of the degree-d kernel of the metabelian projection."""
        basis = self.lie_basis(d)
        if not basis:
            return []
        rows, width = self.eta_matrix(d)
        return integer_kernel(transpose(rows, ncols=width), ncols=len(basis))

    def bp_freeness_check(self, max_degree=None) -> FreenessReport:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        top = self.max_degree if max_degree is None else max_degree
        dims = []
        torsion_found = []
        all_free = True
        kernels = {}
        for d in range(2 * self.p, top + 1):
            kernels[d] = self.bp_kernel_basis(d)
            dims.append((d, len(kernels[d])))
        for d in range(2 * self.p, top + 1):
            k_d = kernels[d]
            prev = kernels.get(d - 1, [])
            rows = []
            index = self.lie_index(d)
            for v in prev:
                e = _combination(self.alphabet, self.lie_basis(d - 1), v)
                for var in VARIABLES:
                    image = derive(e, var, self.action)
                    vec = [0] * len(index)
                    for w, c in image.terms.items():
                        vec[index[w]] = c
                    if not k_d:
                        if any(vec):
                            raise AssertionError("kernel is not action stable")
                        continue
                    coords = solve_left(k_d, vec)
                    if coords is None:
                        raise AssertionError("kernel is not action stable")
                    rows.append(coords)
            coker = cokernel_structure(rows, len(k_d))
            torsion_found.append(coker.torsion)
            if coker.torsion:
                all_free = False
        nonvacuous = any(r for _, r in dims)
        return FreenessReport(self.p, top, tuple(dims), tuple(torsion_found),
                              all_free, nonvacuous)


def _combination(alphabet, basis, coeffs) -> LieElement:
    terms = [(w, c) for w, c in zip(basis, coeffs) if c]
    return LieElement(alphabet, ZZ, terms)


def _product(xs):
    out = 1
    for x in xs:
        out *= x
    return out


# -- module-level wrappers matching the operation names ----------------------

def lie_power_basis(p: int, d: int) -> list[LyndonWord]:
    engine = TorsionEngine(p, max(d, 2 * p))
    return [LyndonWord(engine.alphabet, w) for w in engine.lie_basis(d)]


def action_matrix(p: int, d: int) -> list[list[int]]:
    return TorsionEngine(p, max(d, 2 * p)).action_matrix(d)


def graded_cokernel(p: int, d: int) -> CokernelStructure:
    return TorsionEngine(p, max(d, 2 * p)).graded_cokernel(d)


def theorem_element(p: int, s: int, t: int) -> LieElement:
    return TorsionEngine(p, p * (s + t + 2) + 2).theorem_element(s, t)


def verify_theorem_degree(p: int, d: int) -> TorsionReport:
    return TorsionEngine(p, max(d, 2 * p)).verify_theorem_degree(d)


def torsion_report(p: int, max_degree: int) -> list[TorsionReport]:
    return TorsionEngine(p, max_degree).torsion_report(max_degree)


def metabelian_torsion_check(p: int, d: int) -> MetabelianTorsionReport:
    return TorsionEngine(p, max(d, 2 * p)).metabelian_torsion_check(d)


def bp_kernel_basis(p: int, d: int) -> list[list[int]]:
    return TorsionEngine(p, max(d, 2 * p)).bp_kernel_basis(d)


def bp_freeness_check(p: int, max_degree: int) -> FreenessReport:
    return TorsionEngine(p, max_degree).bp_freeness_check(max_degree)
