"""Ordered graded alphabets and Lyndon words.

Words are stored as tuples of letter indices into a fixed Alphabet, so plain
tuple comparison is the lexicographic word order everywhere in the package.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from itertools import permutations


@dataclass(frozen=True)
class Generator:
    """A free generator carrying a multidegree over the ambient variables."""

    name: str
    multidegree: tuple[int, ...] = (1,)

    def __post_init__(self):
        if not self.multidegree or all(d == 0 for d in self.multidegree):
            raise ValueError(f"generator {self.name!r} needs a nonzero multidegree")
        if any(d < 0 for d in self.multidegree):
            raise ValueError(f"generator {self.name!r} has a negative degree entry")

    @property
    def weight(self) -> int:
        return sum(self.multidegree)

    def __repr__(self):
        return self.name


class Alphabet:
    """An ordered finite sequence of generators.

    The construction order is the total order on letters and is fixed for the
    lifetime of every word built over the alphabet.  Alphabets compare by
    value (their generator sequences), so structurally identical alphabets
    are interchangeable.
    """

    __slots__ = ("generators", "_by_name", "_hash")

    def __init__(self, generators):
        gens = tuple(generators)
        arities = {len(g.multidegree) for g in gens}
        if len(arities) > 1:
            raise ValueError("all generators in an alphabet need the same multidegree arity")
        by_name = {}
        for i, g in enumerate(gens):
            if g.name in by_name:
                raise ValueError(f"duplicate generator id {g.name!r}")
            by_name[g.name] = i
        self.generators = gens
        self._by_name = by_name
        self._hash = hash(gens)

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i) -> Generator:
        return self.generators[i]

    def __contains__(self, g):
        i = self._by_name.get(getattr(g, "name", None))
        return i is not None and self.generators[i] == g

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.generators == other.generators

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Alphabet({','.join(g.name for g in self.generators)})"

    def index(self, g) -> int:
        """Position of a generator (or generator name) in the order."""
        name = g if isinstance(g, str) else g.name
        i = self._by_name.get(name)
        if i is None:
            raise KeyError(f"generator {name!r} is not in this alphabet")
        if not isinstance(g, str) and self.generators[i] != g:
            raise KeyError(f"generator {name!r} belongs to a different alphabet")
        return i

    def weight_of(self, idx: int) -> int:
        return self.generators[idx].weight

    def word_weight(self, word) -> int:
        return sum(self.generators[i].weight for i in word)

    def word_multidegree(self, word) -> tuple[int, ...]:
        gens = self.generators
        if not word:
            return ()
        acc = [0] * len(gens[0].multidegree)
        for i in word:
            for k, d in enumerate(gens[i].multidegree):
                acc[k] += d
        return tuple(acc)

    def word_name(self, word, sep=None) -> str:
        names = [self.generators[i].name for i in word]
        if sep is None:
            sep = "" if all(len(n) == 1 for n in names) else "."
        return sep.join(names)


def unit_alphabet(names) -> Alphabet:
    """Alphabet of unit-weight generators, one ambient variable per letter."""
    if isinstance(names, int):
        if names <= 3:
            names = ["x", "y", "z"][:names]
        else:
            names = list(string.ascii_lowercase[:names])
    names = list(names)
    n = len(names)
    gens = []
    for i, name in enumerate(names):
        deg = [0] * n
        deg[i] = 1
        gens.append(Generator(name, tuple(deg)))
    return Alphabet(gens)


def is_lyndon(word) -> bool:
    """Whether the index tuple is strictly smaller than all proper rotations."""
    n = len(word)
    if n == 0:
        return False
    if n == 1:
        return True
    doubled = word + word
    for k in range(1, n):
        if not word < doubled[k:k + n]:
            return False
    return True


class LyndonWord:
    """A Lyndon word over an alphabet, with its standard factorization point.

    ``idx`` is the tuple of letter indices; ``split`` is the start of the
    longest proper Lyndon suffix (None for single letters).
    """

    __slots__ = ("alphabet", "idx", "split", "_hash")

    def __init__(self, alphabet: Alphabet, idx):
        idx = tuple(idx)
        if not idx:
            raise ValueError("empty word")
        if any(not 0 <= i < len(alphabet) for i in idx):
            raise ValueError(f"letter index out of range in {idx}")
        if not is_lyndon(idx):
            raise ValueError(f"{alphabet.word_name(idx)!r} is not a Lyndon word")
        self.alphabet = alphabet
        self.idx = idx
        self.split = _split_point(idx)
        self._hash = hash((alphabet, idx))

    @property
    def letters(self) -> tuple[Generator, ...]:
        return tuple(self.alphabet.generators[i] for i in self.idx)

    @property
    def weight(self) -> int:
        return self.alphabet.word_weight(self.idx)

    def __len__(self):
        return len(self.idx)

    def __eq__(self, other):
        return (isinstance(other, LyndonWord) and self.idx == other.idx
                and self.alphabet == other.alphabet)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.idx < other.idx

    def __repr__(self):
        return self.alphabet.word_name(self.idx)

    def standard_factorization(self) -> tuple["LyndonWord", "LyndonWord"]:
        """The pair (u, v) with w = uv and v the longest proper Lyndon suffix."""
        if self.split is None:
            raise ValueError("single letters have no factorization")
        u = LyndonWord(self.alphabet, self.idx[:self.split])
        v = LyndonWord(self.alphabet, self.idx[self.split:])
        return u, v


def _split_point(idx):
    n = len(idx)
    if n == 1:
        return None
    # the first position whose suffix is Lyndon starts the longest such suffix
    for j in range(1, n):
        if is_lyndon(idx[j:]):
            return j
    raise AssertionError("every Lyndon word has a Lyndon proper suffix")


def standard_factorization(w: LyndonWord) -> tuple[LyndonWord, LyndonWord]:
    return w.standard_factorization()


def lyndon_words(alphabet: Alphabet, max_weight: int, weight_of=None) -> list[LyndonWord]:
    """All Lyndon words of total weight <= max_weight, sorted by (weight, lex).

    Generation walks the prenecklace tree, pruning on accumulated weight, so
    graded alphabets with heavy letters stay cheap.
    """
    if weight_of is None:
        wt = [g.weight for g in alphabet]
    else:
        wt = [weight_of(g) for g in alphabet]
    if any(w <= 0 for w in wt):
        raise ValueError("letter weights must be positive")
    k = len(alphabet)
    found = []

    def extend(word, period, weight):
        t = len(word)
        base = word[t - period]
        for a in range(base, k):
            w2 = weight + wt[a]
            if w2 > max_weight:
                continue
            word.append(a)
            if a == base:
                extend(word, period, w2)
            else:
                found.append((w2, tuple(word)))
                extend(word, t + 1, w2)
            word.pop()

    for a in range(k):
        if wt[a] <= max_weight:
            found.append((wt[a], (a,)))
            extend([a], 1, wt[a])
    found.sort()
    return [LyndonWord(alphabet, idx) for _, idx in found]


def lyndon_words_with_content(alphabet: Alphabet, content) -> list[LyndonWord]:
    """Lyndon words whose letter multiset is exactly ``content`` (letter indices)."""
    arrangements = set(permutations(sorted(content)))
    out = sorted(w for w in arrangements if is_lyndon(w))
    return [LyndonWord(alphabet, idx) for idx in out]


def lyndon_words_of_length(alphabet: Alphabet, length: int,
                           weight: int | None = None,
                           max_weight: int | None = None) -> list[LyndonWord]:
    """Lyndon words of a fixed length, optionally filtered by total weight."""
    wt = [g.weight for g in alphabet]
    k = len(alphabet)
    words = []

    def contents(start, remaining, acc, acc_weight):
        if remaining == 0:
            if weight is not None and acc_weight != weight:
                return
            words.extend(lyndon_words_with_content(alphabet, acc))
            return
        for a in range(start, k):
            w2 = acc_weight + wt[a]
            if weight is not None and w2 > weight:
                continue
            if max_weight is not None and w2 > max_weight:
                continue
            acc.append(a)
            contents(a, remaining - 1, acc, w2)
            acc.pop()

    if length >= 1:
        contents(0, length, [], 0)
    words.sort(key=lambda w: w.idx)
    return words
