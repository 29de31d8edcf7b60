"""The degree-p tensor power of a small space in characteristic p.

Builds the Poincare-Birkhoff-Witt basis of the tensor power from a Lie basis
ordered degree-first, filters it by type, and verifies that the kernel of the
symmetrization onto V (x) S^(p-1)(V) is the span of the block symmetrizer
images together with the degree-p part of the second derived ideal, which is
therefore a direct summand.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product

from .elements import GF, _expand_lyndon, lyndon_monomial
from .maps import eta, mixed_basis as _mixed_keys
from .words import lyndon_words_of_length, unit_alphabet


# -- small dense linear algebra over Z/p -------------------------------------

def rref_mod(rows, n, p):
    """Reduced row echelon form mod p; returns (rows, pivot columns)."""
    a = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for j in range(n):
        k = next((i for i in range(r, len(a)) if a[i][j]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = pow(a[r][j], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][j]:
                c = a[i][j]
                a[i] = [(x - c * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(j)
        r += 1
    return a[:r], pivots


def rank_mod(rows, n, p):
    return len(rref_mod(rows, n, p)[0])


def in_span_mod(echelon, pivots, vec, p):
    v = [x % p for x in vec]
    for row, j in zip(echelon, pivots):
        if v[j]:
            c = v[j]
            v = [(x - c * y) % p for x, y in zip(v, row)]
    return not any(v)


def right_kernel_mod(rows, n, p):
    echelon, pivots = rref_mod(rows, n, p)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        v = [0] * n
        v[j] = 1
        for row, pj in zip(echelon, pivots):
            v[pj] = (-row[j]) % p
        basis.append(v)
    return basis


# -- PBW scaffolding ----------------------------------------------------------

@dataclass(frozen=True)
class PBWElement:
    """A product of non-decreasing Lie basis factors of total degree p."""

    factors: tuple[tuple[int, ...], ...]

    @property
    def type(self) -> tuple[int, ...]:
        p = sum(len(f) for f in self.factors)
        counts = [0] * p
        for f in self.factors:
            counts[len(f) - 1] += 1
        return tuple(counts)


def type_list(p: int) -> list[tuple[int, ...]]:
    """All p-tuples (k1,...,kp) with sum i*ki = p, lexicographically descending."""
    out = []

    def rec(i, remaining, acc):
        if i > p:
            if remaining == 0:
                out.append(tuple(acc))
            return
        for k in range(remaining // i, -1, -1):
            acc.append(k)
            rec(i + 1, remaining - i * k, acc)
            acc.pop()

    rec(1, p, [])
    out.sort(reverse=True)
    return out


class PBWBasis:
    """The type-filtered PBW basis of the degree-p tensor power."""

    def __init__(self, p: int, dim: int):
        if p < 2:
            raise ValueError("degree must be at least 2")
        self.p = p
        self.dim = dim
        self.field = GF(p)
        self.alphabet = unit_alphabet(dim)
        # Lie basis grouped by degree, ordered degree-first then lexicographically
        self.lie_basis = {r: [w.idx for w in lyndon_words_of_length(self.alphabet, r)]
                          for r in range(1, p + 1)}
        self.types = type_list(p)
        self.m = len(self.types)
        assert self.types[0] == (p,) + (0,) * (p - 1)
        assert self.types[-1] == (0,) * (p - 1) + (1,)
        self.classes = [self._class_of(t) for t in self.types]
        words = list(product(range(dim), repeat=p))
        self.word_index = {w: i for i, w in enumerate(words)}
        self.n_tensor = len(words)

    def _class_of(self, typ):
        per_degree = []
        for r, k in enumerate(typ, start=1):
            if k == 0:
                continue
            basis = self.lie_basis[r]
            if not basis:
                return []
            per_degree.append(list(combinations_with_replacement(basis, k)))
        out = []
        for chunks in product(*per_degree):
            factors = tuple(f for chunk in chunks for f in chunk)
            out.append(PBWElement(factors))
        return out

    def elements(self):
        for cls in self.classes:
            yield from cls

    def factor_vector(self, factors) -> list[int]:
        """Tensor coordinates mod p of a product of Lie basis factors."""
        p = self.field.p
        terms = {(): 1}
        for f in factors:
            expansion = _expand_lyndon(self.alphabet, f)
            nxt = {}
            for w, c in terms.items():
                for v, k in expansion.items():
                    key = w + v
                    nxt[key] = (nxt.get(key, 0) + c * k) % p
            terms = {w: c for w, c in nxt.items() if c}
        vec = [0] * self.n_tensor
        for w, c in terms.items():
            vec[self.word_index[w]] = c
        return vec

    def pbw_vector(self, elem: PBWElement) -> list[int]:
        return self.factor_vector(elem.factors)

    def class_vectors(self, i) -> list[list[int]]:
        """Tensor vectors of the class with 1-based index i."""
        return [self.pbw_vector(e) for e in self.classes[i - 1]]

    def filtration_vectors(self, i) -> list[list[int]]:
        """Spanning vectors of X_i (classes i..m)."""
        out = []
        for k in range(i, self.m + 1):
            out.extend(self.class_vectors(k))
        return out


def pbw_basis(p: int, dim: int) -> PBWBasis:
    return PBWBasis(p, dim)


def sigma_vector(data: PBWBasis, i: int, elem: PBWElement) -> list[int]:
    """Image of the class-i basis element under the block symmetrizer sigma_i."""
    if not 2 <= i <= data.m - 1:
        raise ValueError(f"sigma index {i} out of range 2..{data.m - 1}")
    typ = data.types[i - 1]
    if elem.type != typ:
        raise ValueError("element does not belong to the requested class")
    p = data.field.p
    blocks = []
    pos = 0
    for r, k in enumerate(typ, start=1):
        if k:
            blocks.append(list(elem.factors[pos:pos + k]))
            pos += k
    scale = 1
    for block in blocks:
        f = 1
        for j in range(2, len(block) + 1):
            f *= j
        scale = (scale * f) % p
    inv = pow(scale, -1, p)
    acc = [0] * data.n_tensor
    for perms in product(*(permutations(b) for b in blocks)):
        factors = tuple(f for block in perms for f in block)
        vec = data.factor_vector(factors)
        acc = [(a + b) % p for a, b in zip(acc, vec)]
    return [(a * inv) % p for a in acc]


def mixed_index(data: PBWBasis) -> dict:
    keys = _mixed_keys(data.alphabet, data.p)
    return {key: i for i, key in enumerate(keys)}


def alpha_vector(data: PBWBasis, vec) -> list[int]:
    """a1 (x) ... (x) ap  ->  a1 (x) (a2 o ... o ap), applied to a tensor vector."""
    p = data.field.p
    index = mixed_index(data)
    out = [0] * len(index)
    for w, i in data.word_index.items():
        c = vec[i] % p
        if c:
            key = (w[0], tuple(sorted(w[1:])))
            out[index[key]] = (out[index[key]] + c) % p
    return out


def beta_vector(data: PBWBasis, key) -> list[int]:
    """Image of a mixed basis element under the averaged splitting beta."""
    p = data.field.p
    a, mult = key
    fact = 1
    for j in range(2, data.p):
        fact *= j
    inv = pow(fact % p, -1, p)
    acc = [0] * data.n_tensor
    for perm in permutations(mult):
        w = (a,) + perm
        acc[data.word_index[w]] = (acc[data.word_index[w]] + 1) % p
    return [(x * inv) % p for x in acc]


def bp_space(p: int, dim: int, data: PBWBasis | None = None):
    """Basis of the degree-p part of the second derived ideal over GF(p).

    Returns (lyndon coordinate vectors, tensor vectors, lyndon word list).
    """
    data = data or PBWBasis(p, dim)
    field = data.field
    words = data.lie_basis[p]
    key_index = mixed_index(data)
    rows = []
    for w in words:
        m = eta(lyndon_monomial(data.alphabet, w, field))
        row = [0] * len(key_index)
        for key, c in m.mixed.terms.items():
            row[key_index[key]] = c
        rows.append(row)
    # left kernel of the eta matrix
    kernel = right_kernel_mod([[r[i] for r in rows] for i in range(len(key_index))],
                              len(words), p) if words else []
    tensor_vectors = []
    for v in kernel:
        acc = [0] * data.n_tensor
        for coeff, w in zip(v, words):
            if coeff % p:
                vec = data.factor_vector((w,))
                acc = [(a + coeff * b) % p for a, b in zip(acc, vec)]
        tensor_vectors.append(acc)
    return kernel, tensor_vectors, words


@dataclass(frozen=True)
class SummandReport:
    p: int
    dim: int
    dim_tensor: int
    class_sizes: tuple[int, ...]
    dim_w: int
    dim_ker_alpha: int
    dim_im_beta: int
    dim_bp: int
    sigma_dims: tuple[int, ...]
    sigma_injective: bool
    sigma_in_filtration: bool
    w_in_kernel: bool
    kernel_is_w: bool
    splits_tensor: bool
    summands_independent: bool
    beta_alpha_identity: bool
    kp_zero_inside: bool

    @property
    def passed(self) -> bool:
        return (self.sigma_injective and self.sigma_in_filtration
                and self.w_in_kernel and self.kernel_is_w and self.splits_tensor
                and self.summands_independent and self.beta_alpha_identity
                and self.kp_zero_inside)


def check_summand(p: int, dim: int) -> SummandReport:
    """Verify Ker(alpha) = W and T^p = W (+) Im(beta) over GF(p)."""
    data = PBWBasis(p, dim)
    n = data.n_tensor
    class_sizes = tuple(len(c) for c in data.classes)
    assert sum(class_sizes) == n

    index = mixed_index(data)
    alpha_rows = [alpha_vector(data, _unit(n, i)) for i in range(n)]
    rank_alpha = rank_mod(alpha_rows, len(index), p)
    dim_ker_alpha = n - rank_alpha

    beta_vectors = []
    beta_alpha_identity = True
    for key, pos in sorted(index.items(), key=lambda kv: kv[1]):
        bv = beta_vector(data, key)
        beta_vectors.append(bv)
        image = alpha_vector(data, bv)
        expected = [0] * len(index)
        expected[pos] = 1
        if image != expected:
            beta_alpha_identity = False
    dim_im_beta = rank_mod(beta_vectors, n, p)

    sigma_vectors = []
    sigma_dims = []
    sigma_injective = True
    sigma_in_filtration = True
    kp_zero_inside = True
    for i in range(2, data.m):
        typ = data.types[i - 1]
        if typ[-1] != 0:
            kp_zero_inside = False
        vecs = [sigma_vector(data, i, e) for e in data.classes[i - 1]]
        sigma_vectors.extend(vecs)
        r = rank_mod(vecs, n, p) if vecs else 0
        sigma_dims.append(r)
        if r != len(vecs):
            sigma_injective = False
        filt, piv = rref_mod(data.filtration_vectors(i), n, p)
        if not all(in_span_mod(filt, piv, v, p) for v in vecs):
            sigma_in_filtration = False

    _, bp_vectors, _ = bp_space(p, dim, data)
    dim_bp = len(bp_vectors)

    w_vectors = sigma_vectors + bp_vectors
    dim_w = rank_mod(w_vectors, n, p) if w_vectors else 0
    summands_independent = dim_w == sum(sigma_dims) + dim_bp

    zero_mixed = [0] * len(index)
    w_in_kernel = all(alpha_vector(data, v) == zero_mixed for v in w_vectors)
    kernel_is_w = w_in_kernel and dim_w == dim_ker_alpha
    splits_tensor = (dim_w + dim_im_beta == n
                     and rank_mod(w_vectors + beta_vectors, n, p) == n)
    return SummandReport(p, dim, n, class_sizes, dim_w, dim_ker_alpha,
                         dim_im_beta, dim_bp, tuple(sigma_dims),
                         sigma_injective, sigma_in_filtration, w_in_kernel,
                         kernel_is_w, splits_tensor, summands_independent,
                         beta_alpha_identity, kp_zero_inside)


def _unit(n, i):
    v = [0] * n
    v[i] = 1
    return v
