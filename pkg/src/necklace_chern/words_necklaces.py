"""Words over ordered alphabets, cyclic shifts, boundaries and rational parity.

A word of length n+1 over the alphabet {0, ..., k} is a surjective map
[n] -> [k], written as the letter sequence (w(0), ..., w(n)).  The cyclic
group acts on positions; the orbit of a word under that action is a
necklace.  A proper subword is a choice of one position per letter; read in
position order it is a permutation of the alphabet, and the rational parity
of a word is the expectation of the sign of that permutation over all
proper subwords.

Everything here is exact: parities are `fractions.Fraction` values and the
subword enumeration is the independent combinatorial oracle against which
the matrix-based computations elsewhere in the package are checked.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import (
    EvenAlphabetError,
    InvalidInputError,
    MorphismMismatchError,
    ResourceBudgetError,
)

__all__ = [
    "Word",
    "Necklace",
    "FaceOperator",
    "WordMorphism",
    "SUBWORD_BUDGET",
    "word",
    "identity_face",
    "delete_index_face",
    "compose_faces",
    "cyclic_shift",
    "boundary_word",
    "canonical_necklace",
    "rational_parity",
    "necklace_parity",
    "subword_count",
    "all_surjective_words",
    "words_of_content",
]

# Cap on the number of proper subwords a single parity computation may
# enumerate.  The count is the product of the letter multiplicities, so it
# explodes for long repetitive words; above the cap a ResourceBudgetError is
# raised instead of silently grinding.
SUBWORD_BUDGET = 10**6


# =========================================================================
# Domain types
# =========================================================================


@dataclass(frozen=True)
class Word:
    """A surjective letter sequence [n] -> [k].

    Attributes
    ----------
    letters:
        The values (w(0), ..., w(n)); every letter 0..k occurs at least once.
    alphabet_size:
        k+1.  Surjectivity forces ``alphabet_size == max(letters) + 1``.
    """

    letters: Tuple[int, ...]
    alphabet_size: int

    def __post_init__(self) -> None:
        if not self.letters:
            raise InvalidInputError("a word must have at least one letter")
        if self.alphabet_size < 1:
            raise InvalidInputError("alphabet size must be positive")
        seen = set()
        for x in self.letters:
            if not isinstance(x, int) or isinstance(x, bool):
                raise InvalidInputError(f"letter {x!r} is not an integer")
            if not 0 <= x < self.alphabet_size:
                raise InvalidInputError(
                    f"letter {x} outside alphabet 0..{self.alphabet_size - 1}"
                )
            seen.add(x)
        if len(seen) != self.alphabet_size:
            missing = sorted(set(range(self.alphabet_size)) - seen)
            raise InvalidInputError(f"word is not surjective, letters {missing} missing")

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def top_index(self) -> int:
        """n, the largest position index."""
        return len(self.letters) - 1

    @property
    def top_letter(self) -> int:
        """k, the largest letter."""
        return self.alphabet_size - 1

    def multiplicities(self) -> Tuple[int, ...]:
        """Occurrence count m_j of each letter j."""
        counts = [0] * self.alphabet_size
        for x in self.letters:
            counts[x] += 1
        return tuple(counts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i: int) -> int:
        return self.letters[i]


def word(letters: Sequence[int]) -> Word:
    """Build a word, inferring the alphabet from the largest letter."""
    letters = tuple(letters)
    if not letters:
        raise InvalidInputError("a word must have at least one letter")
    return Word(letters, max(letters) + 1)


@dataclass(frozen=True)
class Necklace:
    """The cyclic orbit of a word, stored by its canonical representative.

    The canonical representative is the lexicographically least rotation.
    Use :func:`canonical_necklace` to construct one; the constructor
    validates minimality.
    """

    canonical_word: Word

    def __post_init__(self) -> None:
        w = self.canonical_word
        least = min(_rotations(w.letters))
        if w.letters != least:
            raise InvalidInputError(
                f"{w.letters} is not the least rotation {least} of its orbit"
            )

    @property
    def alphabet_size(self) -> int:
        return self.canonical_word.alphabet_size


@dataclass(frozen=True)
class FaceOperator:
    """A strictly increasing injection [m] -> [k], given by its image.

    Face operators act on alphabets (deleting letters) and on position sets
    (recording which positions survive a boundary).
    """

    image: Tuple[int, ...]
    codomain_size: int

    def __post_init__(self) -> None:
        if not self.image:
            raise InvalidInputError("face operator needs a nonempty image")
        prev = -1
        for v in self.image:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidInputError(f"face image value {v!r} is not an integer")
            if v <= prev:
                raise InvalidInputError(f"face image {self.image} is not strictly increasing")
            prev = v
        if prev >= self.codomain_size:
            raise InvalidInputError(
                f"face image {self.image} exceeds codomain 0..{self.codomain_size - 1}"
            )

    @property
    def domain_size(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def image_set(self) -> frozenset:
        return frozenset(self.image)

    def preimage(self, value: int) -> Optional[int]:
        """The x with image[x] == value, or None."""
        lo, hi = 0, len(self.image) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            if self.image[mid] == value:
                return mid
            if self.image[mid] < value:
                lo = mid + 1
            else:
                hi = mid - 1
        return None

    def is_identity(self) -> bool:
        return self.domain_size == self.codomain_size


def identity_face(size: int) -> FaceOperator:
    return FaceOperator(tuple(range(size)), size)


def delete_index_face(j: int, codomain_size: int) -> FaceOperator:
    """The elementary face [k-1] -> [k] omitting j."""
    if not 0 <= j < codomain_size:
        raise InvalidInputError(f"cannot omit {j} from 0..{codomain_size - 1}")
    return FaceOperator(tuple(x for x in range(codomain_size) if x != j), codomain_size)


def compose_faces(outer: FaceOperator, inner: FaceOperator) -> FaceOperator:
    """outer after inner, as strictly increasing injections."""
    if inner.codomain_size != outer.domain_size:
        raise MorphismMismatchError(
            f"cannot compose faces: inner codomain {inner.codomain_size} "
            f"!= outer domain {outer.domain_size}"
        )
    return FaceOperator(tuple(outer.image[v] for v in inner.image), outer.codomain_size)


@dataclass(frozen=True)
class WordMorphism:
    """A cyclic morphism of words: rotate the domain, then include monotonely.

    The underlying position map is ``f(x) = induced_domain_face((x - shift)
    mod (n0+1))`` where n0+1 is the domain word length.  Letters are carried
    by ``alphabet_face``; validity means ``codomain_word[f(x)] ==
    alphabet_face(domain_word[x])`` for every position x, and the image of
    the position injection is exactly the set of positions of the codomain
    word whose letters lie in the image of the alphabet face.
    """

    shift: int
    alphabet_face: FaceOperator
    induced_domain_face: FaceOperator
    domain_word: Word
    codomain_word: Word

    def __post_init__(self) -> None:
        a, b = self.domain_word, self.codomain_word
        if self.alphabet_face.domain_size != a.alphabet_size:
            raise InvalidInputError("alphabet face domain does not match the domain word")
        if self.alphabet_face.codomain_size != b.alphabet_size:
            raise InvalidInputError("alphabet face codomain does not match the codomain word")
        if self.induced_domain_face.domain_size != a.length:
            raise InvalidInputError("position face domain does not match the domain word")
        if self.induced_domain_face.codomain_size != b.length:
            raise InvalidInputError("position face codomain does not match the codomain word")
        if not 0 <= self.shift < a.length:
            raise InvalidInputError(f"shift {self.shift} not reduced mod {a.length}")
        letters_in_image = frozenset(
            p for p in range(b.length) if b.letters[p] in self.alphabet_face.image_set()
        )
        if self.induced_domain_face.image_set() != letters_in_image:
            raise InvalidInputError(
                "position face image must be the set of codomain positions "
                "carrying letters of the alphabet face image"
            )
        f = self.position_map()
        for x in range(a.length):
            if b.letters[f[x]] != self.alphabet_face(a.letters[x]):
                raise InvalidInputError(
                    f"morphism does not intertwine letters at position {x}"
                )

    def position_map(self) -> Tuple[int, ...]:
        """The underlying injection of positions, as a value table."""
        n = self.domain_word.length
        return tuple(
            self.induced_domain_face((x - self.shift) % n) for x in range(n)
        )

    def is_identity(self) -> bool:
        return (
            self.shift == 0
            and self.alphabet_face.is_identity()
            and self.induced_domain_face.is_identity()
        )


# =========================================================================
# Operations
# =========================================================================


def _rotations(letters: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    for i in range(len(letters)):
        yield letters[i:] + letters[:i]


def cyclic_shift(w: Word, i: int) -> Word:
    """Rotate a word: (shifted)(j) = w((j - i) mod (n+1)).

    Shifting by the length is the identity; i may be any integer and is
    reduced mod the length.
    """
    n1 = w.length
    i %= n1
    if i == 0:
        return w
    return Word(w.letters[-i:] + w.letters[:-i], w.alphabet_size)


def boundary_word(w: Word, delta: FaceOperator) -> Tuple[Word, FaceOperator]:
    """Delete the letters outside the image of ``delta`` and renumber.

    Returns the boundary word together with the monotone injection of the
    surviving positions into the positions of ``w``.
    """
    if delta.codomain_size != w.alphabet_size:
        raise InvalidInputError(
            f"face codomain {delta.codomain_size} does not match alphabet "
            f"{w.alphabet_size}"
        )
    keep = delta.image_set()
    positions = tuple(p for p in range(w.length) if w.letters[p] in keep)
    # A surjective word meets every letter, so a nonempty face keeps at
    # least one position.
    assert positions, "boundary of a surjective word cannot be empty"
    renumber = {v: x for x, v in enumerate(delta.image)}
    letters = tuple(renumber[w.letters[p]] for p in positions)
    return (
        Word(letters, delta.domain_size),
        FaceOperator(positions, w.length),
    )


def canonical_necklace(w: Word) -> Necklace:
    """The orbit of ``w`` under rotation, by its lexicographically least member."""
    least = min(_rotations(w.letters))
    return Necklace(Word(least, w.alphabet_size))


def subword_count(w: Word) -> int:
    """Number of proper subwords: the product of the letter multiplicities."""
    total = 1
    for m in w.multiplicities():
        total *= m
    return total


def _permutation_sign(perm: Sequence[int]) -> int:
    """Sign via inversion count; fine at alphabet scale."""
    inversions = 0
    for i in range(len(perm)):
        pi = perm[i]
        for j in range(i + 1, len(perm)):
            if pi > perm[j]:
                inversions += 1
    return -1 if inversions & 1 else 1


def rational_parity(w: Word, budget: int = SUBWORD_BUDGET) -> Fraction:
    """Expected sign over all proper subwords of ``w``.

    A proper subword picks one position for each letter; reading the chosen
    letters in position order gives a permutation of the alphabet whose sign
    is +-1.  The value is (#even - #odd) / #subwords, always in [-1, 1].

    Raises
    ------
    ResourceBudgetError
        If the subword count (product of multiplicities) exceeds ``budget``.
    """
    positions: Dict[int, List[int]] = {j: [] for j in range(w.alphabet_size)}
    for p, letter in enumerate(w.letters):
        positions[letter].append(p)
    count = 1
    for j in range(w.alphabet_size):
        count *= len(positions[j])
    if count > budget:
        raise ResourceBudgetError(
            f"{count} proper subwords exceed the enumeration budget {budget}"
        )
    occurrences: List[Tuple[int, ...]] = [
        tuple(positions[j]) for j in range(w.alphabet_size)
    ]
    balance = 0
    for choice in itertools.product(*occurrences):
        # choice[j] = position chosen for letter j; the permutation is the
        # letter sequence in position order, i.e. argsort of the choice.
        order = sorted(range(w.alphabet_size), key=choice.__getitem__)
        balance += _permutation_sign(order)
    return Fraction(balance, count)


@lru_cache(maxsize=65536)
def _necklace_parity_cached(letters: Tuple[int, ...], alphabet_size: int) -> Fraction:
    return rational_parity(Word(letters, alphabet_size))


def necklace_parity(n: Necklace) -> Fraction:
    """Rational parity of any representative of the necklace.

    Raises
    ------
    EvenAlphabetError
        If the alphabet size is even; parity is only a rotation invariant
        over odd alphabets.
    """
    if n.alphabet_size % 2 == 0:
        raise EvenAlphabetError(
            f"alphabet size {n.alphabet_size} is even; parity is not a "
            "necklace invariant"
        )
    w = n.canonical_word
    return _necklace_parity_cached(w.letters, w.alphabet_size)


# =========================================================================
# Enumeration helpers
# =========================================================================


def all_surjective_words(length: int, alphabet_size: int) -> Iterator[Word]:
    """All words of the given length and alphabet, in lexicographic order."""
    if length < alphabet_size:
        return
    for letters in itertools.product(range(alphabet_size), repeat=length):
        if len(set(letters)) == alphabet_size:
            yield Word(letters, alphabet_size)


def words_of_content(content: Sequence[int]) -> Iterator[Word]:
    """All words where letter j occurs exactly content[j] times, in
    lexicographic order."""
    content = list(content)
    if any(c < 1 for c in content):
        raise InvalidInputError("every letter needs at least one occurrence")
    alphabet_size = len(content)
    prefix: List[int] = []

    def rec() -> Iterator[Tuple[int, ...]]:
        if sum(content) == 0:
            yield tuple(prefix)
            return
        for letter in range(alphabet_size):
            if content[letter] == 0:
                continue
            content[letter] -= 1
            prefix.append(letter)
            yield from rec()
            prefix.pop()
            content[letter] += 1

    for letters in rec():
        yield Word(letters, alphabet_size)
