"""Exact elements of free Lie rings and of their tensor, symmetric, and mixed powers.

Coefficients live in Z, Q, or a prime field; all arithmetic is exact.  Lie
elements are stored in the Lyndon-word basis.  Conversion from the tensor
ring back to Lyndon coordinates exploits the triangularity of the expansion
of a standard bracketing: it equals its word plus lexicographically larger
words of the same content.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .words import Generator, LyndonWord, is_lyndon


class DomainError(ValueError):
    pass


class NotLieElementError(ValueError):
    pass


class IntegralityError(ArithmeticError):
    """A division the theory promises to be exact was not."""


class Domain:
    """Coefficient domain tag: exact integers, exact rationals, or Z/p."""

    __slots__ = ("kind", "p")

    def __init__(self, kind, p=None):
        if kind not in ("Z", "Q", "Fp"):
            raise ValueError(f"unknown domain kind {kind!r}")
        if (kind == "Fp") != (p is not None):
            raise ValueError("a modulus is given exactly for Fp domains")
        if p is not None and not _is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.kind = kind
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Domain) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return {"Z": "ZZ", "Q": "QQ"}.get(self.kind, f"GF({self.p})")

    def coerce(self, c):
        if isinstance(c, Fraction):
            if self.kind == "Q":
                return c
            if c.denominator != 1:
                raise DomainError(f"{c} is not an element of {self!r}")
            c = c.numerator
        if isinstance(c, bool) or not isinstance(c, int):
            raise DomainError(f"bad coefficient {c!r} for {self!r}")
        if self.kind == "Fp":
            return c % self.p
        if self.kind == "Q":
            return Fraction(c)
        return c

    def add(self, a, b):
        s = a + b
        return s % self.p if self.kind == "Fp" else s

    def mul(self, a, b):
        s = a * b
        return s % self.p if self.kind == "Fp" else s

    def neg(self, a):
        return (-a) % self.p if self.kind == "Fp" else -a

    def is_zero(self, a):
        return a == 0

    def divide_exact(self, a, n):
        """Divide by the positive integer n; exactness is mandatory over Z."""
        if n <= 0:
            raise ValueError("divisor must be positive")
        if self.kind == "Q":
            return a / n
        if self.kind == "Fp":
            if n % self.p == 0:
                raise IntegralityError(f"integrality violated: cannot divide by {n} in {self!r}")
            return (a * pow(n, -1, self.p)) % self.p
        q, r = divmod(a, n)
        if r:
            raise IntegralityError(f"integrality violated: {a} is not divisible by {n}")
        return q


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


ZZ = Domain("Z")
QQ = Domain("Q")


def GF(p) -> Domain:
    return Domain("Fp", p)


class _Element:
    """Shared behavior of finitely supported coefficient maps on a basis."""

    __slots__ = ("alphabet", "domain", "terms")
    space = "?"

    def __init__(self, alphabet, domain, terms=(), _clean=False):
        self.alphabet = alphabet
        self.domain = domain
        if _clean:
            self.terms = terms
        else:
            clean = {}
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                c = domain.coerce(c)
                if domain.is_zero(c):
                    continue
                acc = domain.add(clean.get(key, 0), c)
                if domain.is_zero(acc):
                    clean.pop(key, None)
                else:
                    clean[key] = acc
            self.terms = clean

    def _new(self, terms):
        return type(self)(self.alphabet, self.domain, terms, _clean=True)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (type(self) is type(other) and self.alphabet == other.alphabet
                and self.domain == other.domain and self.terms == other.terms)

    def __hash__(self):
        return hash((type(self).__name__, self.alphabet, self.domain,
                     frozenset(self.terms.items())))

    def _check_compatible(self, other):
        if type(self) is not type(other):
            raise DomainError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.alphabet != other.alphabet:
            raise DomainError("mixed alphabets")
        if self.domain != other.domain:
            raise DomainError(f"mixed domains {self.domain!r} and {other.domain!r}")

    def __add__(self, other):
        self._check_compatible(other)
        dom = self.domain
        out = dict(self.terms)
        for key, c in other.terms.items():
            acc = dom.add(out.get(key, 0), c)
            if dom.is_zero(acc):
                out.pop(key, None)
            else:
                out[key] = acc
        return self._new(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        dom = self.domain
        return self._new({key: dom.neg(c) for key, c in self.terms.items()})

    def __mul__(self, scalar):
        dom = self.domain
        scalar = dom.coerce(scalar)
        if dom.is_zero(scalar):
            return self._new({})
        return self._new({key: dom.mul(c, scalar) for key, c in self.terms.items()})

    __rmul__ = __mul__

    def divided_by(self, n):
        dom = self.domain
        return self._new({key: dom.divide_exact(c, n) for key, c in self.terms.items()})

    def coeff(self, key):
        return self.terms.get(key, self.domain.coerce(0))

    def support(self):
        return sorted(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"{type(self).__name__}(0)"
        bits = [f"{c}*{self._key_name(k)}" for k, c in sorted(self.terms.items())]
        return " + ".join(bits)

    def _key_name(self, key):
        return repr(key)


class LieElement(_Element):
    """Element of the free Lie ring in Lyndon coordinates.

    Keys are Lyndon words as letter-index tuples.
    """

    space = "lie"

    def degree(self):
        """Common word length, or None for the zero element."""
        lengths = {len(w) for w in self.terms}
        if not lengths:
            return None
        if len(lengths) > 1:
            raise ValueError("inhomogeneous element has no degree")
        return lengths.pop()

    def is_homogeneous(self):
        return len({len(w) for w in self.terms}) <= 1

    def monomials(self):
        return [(LyndonWord(self.alphabet, w), c) for w, c in sorted(self.terms.items())]

    def bracket(self, other):
        return bracket(self, other)

    def _key_name(self, key):
        return self.alphabet.word_name(key)


class TensorElement(_Element):
    """Element of the tensor ring; keys are arbitrary words (index tuples)."""

    space = "tensor"

    def degree(self):
        lengths = {len(w) for w in self.terms}
        if not lengths:
            return None
        if len(lengths) > 1:
            raise ValueError("inhomogeneous element has no degree")
        return lengths.pop()

    def _key_name(self, key):
        return self.alphabet.word_name(key)


class SymElement(_Element):
    """Element of a symmetric power; keys are sorted index tuples (multisets)."""

    space = "sym"

    def _key_name(self, key):
        return "o".join(self.alphabet.generators[i].name for i in key)


class MixedElement(_Element):
    """Element of A (x) A^(c-1); keys are (index, sorted index tuple) pairs."""

    space = "mixed"

    def _key_name(self, key):
        a, rest = key
        inner = "o".join(self.alphabet.generators[i].name for i in rest)
        return f"{self.alphabet.generators[a].name}@({inner})"


def lie_zero(alphabet, domain=ZZ) -> LieElement:
    return LieElement(alphabet, domain, {}, _clean=True)


def generator_element(alphabet, g, domain=ZZ) -> LieElement:
    i = g if isinstance(g, int) else alphabet.index(g)
    return LieElement(alphabet, domain, {(i,): domain.coerce(1)}, _clean=True)


def lyndon_monomial(alphabet, w, domain=ZZ, coeff=1) -> LieElement:
    idx = w.idx if isinstance(w, LyndonWord) else tuple(w)
    if not is_lyndon(idx):
        raise ValueError(f"{alphabet.word_name(idx)!r} is not a Lyndon word")
    return LieElement(alphabet, domain, [(idx, coeff)])


# ---------------------------------------------------------------------------
# bracket trees
#
# A tree is a Generator, a letter index, or a pair (left, right).

def bracketing(w: LyndonWord):
    """The basis bracket tree of a Lyndon word via standard factorization."""
    if len(w) == 1:
        return w.letters[0]
    u, v = w.standard_factorization()
    return (bracketing(u), bracketing(v))


def _tree_to_idx(alphabet, tree):
    if isinstance(tree, Generator):
        return alphabet.index(tree)
    if isinstance(tree, int):
        if not 0 <= tree < len(alphabet):
            raise DomainError(f"letter index {tree} out of range")
        return tree
    if isinstance(tree, tuple) and len(tree) == 2:
        return (_tree_to_idx(alphabet, tree[0]), _tree_to_idx(alphabet, tree[1]))
    raise ValueError(f"malformed bracket tree node {tree!r}")


def tree_degree(tree) -> int:
    if isinstance(tree, tuple):
        return tree_degree(tree[0]) + tree_degree(tree[1])
    return 1


def tensor_of_tree(alphabet, tree) -> dict:
    """Multilinear commutator expansion of a bracket tree, over Z."""
    tree = _tree_to_idx(alphabet, tree)
    return _expand_tree(tree)


def _expand_tree(tree):
    if isinstance(tree, int):
        return {(tree,): 1}
    left = _expand_tree(tree[0])
    right = _expand_tree(tree[1])
    out = {}
    for wa, ca in left.items():
        for wb, cb in right.items():
            c = ca * cb
            out[wa + wb] = out.get(wa + wb, 0) + c
            out[wb + wa] = out.get(wb + wa, 0) - c
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def _expand_lyndon(alphabet, idx):
    """Tensor expansion of the standard bracketing of a Lyndon word, over Z."""
    if len(idx) == 1:
        return {idx: 1}
    split = LyndonWord(alphabet, idx).split
    left = _expand_lyndon(alphabet, idx[:split])
    right = _expand_lyndon(alphabet, idx[split:])
    out = {}
    for wa, ca in left.items():
        for wb, cb in right.items():
            c = ca * cb
            out[wa + wb] = out.get(wa + wb, 0) + c
            out[wb + wa] = out.get(wb + wa, 0) - c
    return {w: c for w, c in out.items() if c}


def leftnormed_tensor(letters) -> dict:
    """Tensor expansion of the left-normed product of a letter-index tuple."""
    out = {letters[:1]: 1}
    for b in letters[1:]:
        nxt = {}
        for w, c in out.items():
            wb = w + (b,)
            nxt[wb] = nxt.get(wb, 0) + c
            bw = (b,) + w
            nxt[bw] = nxt.get(bw, 0) - c
        out = {w: c for w, c in nxt.items() if c}
    return out


def to_tensor(e: LieElement) -> TensorElement:
    """The canonical embedding into the tensor ring."""
    dom = e.domain
    out = {}
    for w, c in e.terms.items():
        for v, k in _expand_lyndon(e.alphabet, w).items():
            acc = dom.add(out.get(v, 0), dom.mul(c, dom.coerce(k)))
            if dom.is_zero(acc):
                out.pop(v, None)
            else:
                out[v] = acc
    return TensorElement(e.alphabet, dom, out, _clean=True)


def lie_from_tensor(t: TensorElement) -> LieElement:
    """Lyndon coordinates of a tensor element that lies in the Lie subring.

    Peels the lexicographically smallest word of the remainder; if the input
    is a Lie element that word is Lyndon and carries the coordinate of its
    standard bracketing.
    """
    dom = t.domain
    alphabet = t.alphabet
    rem = dict(t.terms)
    coords = {}
    while rem:
        w = min(rem)
        c = rem.pop(w)
        if dom.is_zero(c):
            continue
        if not is_lyndon(w):
            raise NotLieElementError(
                f"not a Lie element: stray word {alphabet.word_name(w)!r}")
        coords[w] = c
        for v, k in _expand_lyndon(alphabet, w).items():
            if v == w:
                continue
            acc = dom.add(rem.get(v, 0), dom.neg(dom.mul(c, dom.coerce(k))))
            if dom.is_zero(acc):
                rem.pop(v, None)
            else:
                rem[v] = acc
    return LieElement(alphabet, dom, coords, _clean=True)


def normal_form(alphabet, expr, domain=ZZ) -> LieElement:
    """Lyndon coordinates of a bracket tree or a list of (coeff, tree) pairs."""
    pairs = expr if isinstance(expr, list) else [(1, expr)]
    dom = domain
    acc = {}
    for coeff, tree in pairs:
        coeff = dom.coerce(coeff)
        for w, k in tensor_of_tree(alphabet, tree).items():
            s = dom.add(acc.get(w, 0), dom.mul(coeff, dom.coerce(k)))
            if dom.is_zero(s):
                acc.pop(w, None)
            else:
                acc[w] = s
    return lie_from_tensor(TensorElement(alphabet, dom, acc, _clean=True))


def bracket(a: LieElement, b: LieElement) -> LieElement:
    """Lie bracket, computed in the tensor ring and converted back."""
    a._check_compatible(b)
    dom = a.domain
    ta = to_tensor(a).terms
    tb = to_tensor(b).terms
    out = {}
    for wa, ca in ta.items():
        for wb, cb in tb.items():
            c = dom.mul(ca, cb)
            for w, sgn in ((wa + wb, c), (wb + wa, dom.neg(c))):
                acc = dom.add(out.get(w, 0), sgn)
                if dom.is_zero(acc):
                    out.pop(w, None)
                else:
                    out[w] = acc
    return lie_from_tensor(TensorElement(a.alphabet, dom, out, _clean=True))


def left_normalize(x, alphabet=None, domain=None):
    """Rewrite as a combination of left-normed products [a_1,...,a_c].

    Accepts a LieElement, a bracket tree, or a list of (coeff, tree) pairs;
    returns a list of (coeff, letter-index tuple) pairs with collected terms.
    The value in the Lie ring is unchanged; the rule is
    [P,[Q1,Q2]] = [[P,Q1],Q2] - [[P,Q2],Q1].
    """
    if isinstance(x, LieElement):
        alphabet = x.alphabet
        domain = x.domain
        pairs = [(c, bracketing(LyndonWord(alphabet, w))) for w, c in sorted(x.terms.items())]
    elif isinstance(x, list):
        pairs = x
    else:
        pairs = [(1, x)]
    if alphabet is None:
        raise ValueError("an alphabet is required for tree input")
    dom = domain or ZZ
    degrees = {tree_degree(t) for _, t in pairs}
    if len(degrees) > 1:
        raise ValueError("inhomogeneous input")
    acc = {}
    for coeff, tree in pairs:
        coeff = dom.coerce(coeff)
        for sign, letters in _leftnorm_tree(_tree_to_idx(alphabet, tree)):
            c = dom.mul(coeff, dom.coerce(sign))
            s = dom.add(acc.get(letters, 0), c)
            if dom.is_zero(s):
                acc.pop(letters, None)
            else:
                acc[letters] = s
    return [(c, letters) for letters, c in sorted(acc.items())]


def _leftnorm_tree(tree):
    if isinstance(tree, int):
        return ((1, (tree,)),)
    left, right = tree
    if left == right:
        return ()
    if isinstance(right, int):
        return tuple((c, t + (right,)) for c, t in _leftnorm_tree(left))
    r1, r2 = right
    out = list(_leftnorm_tree(((left, r1), r2)))
    out.extend((-c, t) for c, t in _leftnorm_tree(((left, r2), r1)))
    return tuple(out)
