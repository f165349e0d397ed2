"""Cyclic word decorations: the semi-simplicial encoding of circle bundles.

A decoration colors every simplex of a locally ordered base complex with a
word over its local vertices and records, for every codimension-1 face, the
cyclic shift that aligns the word of the simplex with the word of the face.
Deeper face morphisms are derived by composition; validity means every
stored shift reproduces the face word through `boundary_word` and every
two-step face chain satisfies the simplicial composition identity.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .complexes import (
    LocallyOrderedComplex,
    Simplex,
    ValidationIssue,
    ValidationReport,
    simplex_face,
)
from .cyclic_category import compose_word_morphisms, decompose_cyclic_injection
from .errors import InvalidInputError, ResourceBudgetError
from .words_necklaces import (
    FaceOperator,
    Word,
    WordMorphism,
    boundary_word,
    cyclic_shift,
    delete_index_face,
    words_of_content,
)

__all__ = [
    "Decoration",
    "DEFAULT_CANDIDATE_BUDGET",
    "CANDIDATE_BUDGET_ENV",
    "candidate_budget",
    "face_morphism",
    "morphism_from_shift",
    "validate_decoration",
    "enumerate_decorations",
    "elementary_decoration",
]

DEFAULT_CANDIDATE_BUDGET = 10**8
CANDIDATE_BUDGET_ENV = "NECKLACE_MAX_CANDIDATES"


def candidate_budget(override: Optional[int] = None) -> int:
    """The enumeration budget: explicit override, else environment, else
    the default."""
    if override is not None:
        return override
    raw = os.environ.get(CANDIDATE_BUDGET_ENV)
    if raw is None:
        return DEFAULT_CANDIDATE_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError(
            f"{CANDIDATE_BUDGET_ENV} must be an integer, got {raw!r}"
        )
    if value < 0:
        raise InvalidInputError(f"{CANDIDATE_BUDGET_ENV} must be nonnegative")
    return value


@dataclass(frozen=True)
class Decoration:
    """Words and face shifts over a locally ordered base complex.

    ``words[i]`` is the word of the simplex with id i; ``shifts[i]`` has one
    entry per face of that simplex (empty for vertices).
    """

    base: LocallyOrderedComplex
    words: Tuple[Word, ...]
    shifts: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        count = len(self.base.simplices)
        if len(self.words) != count:
            raise InvalidInputError(
                f"expected {count} words, got {len(self.words)}"
            )
        if len(self.shifts) != count:
            raise InvalidInputError(
                f"expected {count} shift tuples, got {len(self.shifts)}"
            )
        for per_face in self.shifts:
            if any(not isinstance(t, int) or isinstance(t, bool) for t in per_face):
                raise InvalidInputError("shifts must be integers")

    @staticmethod
    def from_maps(
        base: LocallyOrderedComplex,
        words: Mapping[int, Word],
        shifts: Mapping[Tuple[int, int], int],
    ) -> "Decoration":
        count = len(base.simplices)
        word_list = []
        shift_list = []
        for i in range(count):
            if i not in words:
                raise InvalidInputError(f"missing word for simplex id {i}")
            word_list.append(words[i])
            size = len(base.simplices[i])
            if size == 1:
                shift_list.append(())
                continue
            per_face = []
            for j in range(size):
                if (i, j) not in shifts:
                    raise InvalidInputError(
                        f"missing shift for simplex id {i}, face {j}"
                    )
                per_face.append(shifts[(i, j)])
            shift_list.append(tuple(per_face))
        return Decoration(base, tuple(word_list), tuple(shift_list))

    def word_for(self, simplex: Sequence[int]) -> Word:
        return self.words[self.base.simplex_id(simplex)]

    def shift_for(self, simplex: Sequence[int], j: int) -> int:
        per_face = self.shifts[self.base.simplex_id(simplex)]
        if not 0 <= j < len(per_face):
            raise InvalidInputError(f"face index {j} out of range")
        return per_face[j]


def morphism_from_shift(parent: Word, child: Word, j: int, t: int) -> WordMorphism:
    """The word morphism of a j-th face inclusion realized by shift t:
    positions of surviving letters are read off the t-rotated parent word
    and decomposed into shift-then-face normal form."""
    delta = delete_index_face(j, parent.alphabet_size)
    derived, positions = boundary_word(cyclic_shift(parent, t), delta)
    if derived != child:
        raise InvalidInputError(
            f"shift {t} does not turn the boundary of {parent.letters} "
            f"at face {j} into {child.letters}"
        )
    values = tuple(
        (positions(x) - t) % parent.length for x in range(child.length)
    )
    face, shift = decompose_cyclic_injection(values, parent.length)
    return WordMorphism(
        shift=shift,
        alphabet_face=delta,
        induced_domain_face=face,
        domain_word=child,
        codomain_word=parent,
    )


def face_morphism(d: Decoration, simplex: Sequence[int], j: int) -> WordMorphism:
    """The word morphism of the j-th face inclusion, built from the stored
    shift."""
    simplex = tuple(simplex)
    parent = d.word_for(simplex)
    child = d.word_for(simplex_face(simplex, j))
    return morphism_from_shift(parent, child, j, d.shift_for(simplex, j))


def validate_decoration(d: Decoration) -> ValidationReport:
    """Check boundary compatibility and face-chain functoriality everywhere."""
    issues: List[ValidationIssue] = []
    base = d.base
    for i, simplex in enumerate(base.simplices):
        size = len(simplex)
        w = d.words[i]
        if w.alphabet_size != size:
            issues.append(
                ValidationIssue(
                    "wrong-alphabet",
                    f"word alphabet {w.alphabet_size}, simplex has {size} vertices",
                    simplex,
                )
            )
            continue
        per_face = d.shifts[i]
        if len(per_face) != (0 if size == 1 else size):
            issues.append(
                ValidationIssue(
                    "bad-shift-shape",
                    f"expected {0 if size == 1 else size} face shifts, "
                    f"got {len(per_face)}",
                    simplex,
                )
            )
            continue
        for j, t in enumerate(per_face):
            if not 0 <= t < w.length:
                issues.append(
                    ValidationIssue(
                        "shift-out-of-range",
                        f"face {j} shift {t} not in [0, {w.length})",
                        simplex,
                    )
                )
                continue
            child = d.word_for(simplex_face(simplex, j))
            derived, _ = boundary_word(
                cyclic_shift(w, t), delete_index_face(j, size)
            )
            if derived != child:
                issues.append(
                    ValidationIssue(
                        "boundary-mismatch",
                        f"face {j}: shifted boundary word {derived.letters} "
                        f"differs from stored {child.letters}",
                        simplex,
                    )
                )
    if issues:
        return ValidationReport(tuple(issues))
    # functoriality over all composable face pairs
    for simplex in base.simplices:
        size = len(simplex)
        if size < 3:
            continue
        for j2 in range(size):
            middle_b = simplex_face(simplex, j2)
            for j1 in range(j2):
                middle_a = simplex_face(simplex, j1)
                try:
                    through_b = compose_word_morphisms(
                        face_morphism(d, simplex, j2),
                        face_morphism(d, middle_b, j1),
                    )
                    through_a = compose_word_morphisms(
                        face_morphism(d, simplex, j1),
                        face_morphism(d, middle_a, j2 - 1),
                    )
                except InvalidInputError as exc:
                    issues.append(
                        ValidationIssue("morphism-invalid", str(exc), simplex)
                    )
                    continue
                if through_a != through_b:
                    issues.append(
                        ValidationIssue(
                            "functoriality-mismatch",
                            f"faces {j1} and {j2} compose differently",
                            simplex,
                        )
                    )
    return ValidationReport(tuple(issues))


# =========================================================================
# Construction helpers
# =========================================================================


def elementary_decoration(w: Word) -> Decoration:
    """The decoration of the full simplex on the word's alphabet.

    The top simplex carries the word itself, every face carries the
    corresponding boundary word, and all shifts are zero; validity follows
    from boundary composition.
    """
    n1 = w.alphabet_size
    base = LocallyOrderedComplex.from_maximal(n1, [tuple(range(n1))])
    words: Dict[int, Word] = {}
    shifts: Dict[Tuple[int, int], int] = {}
    for i, simplex in enumerate(base.simplices):
        if len(simplex) == n1:
            words[i] = w
        else:
            delta = FaceOperator(simplex, n1)
            words[i], _ = boundary_word(w, delta)
        for j in range(len(simplex) if len(simplex) > 1 else 0):
            shifts[(i, j)] = 0
    return Decoration.from_maps(base, words, shifts)


@lru_cache(maxsize=200000)
def _valid_shifts(parent: Word, j: int, child: Word) -> Tuple[int, ...]:
    """Shifts t for which the j-th boundary of the t-rotated parent word
    equals the child word."""
    delta = delete_index_face(j, parent.alphabet_size)
    found = []
    for t in range(parent.length):
        derived, _ = boundary_word(cyclic_shift(parent, t), delta)
        if derived == child:
            found.append(t)
    return tuple(found)


class _Budget:
    def __init__(self, limit: int) -> None:
        self.limit = limit
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise ResourceBudgetError(
                f"decoration search exceeded {self.limit} candidates"
            )


def _multiplicity_vectors(
    base: LocallyOrderedComplex, max_len: int
) -> Iterator[Tuple[int, ...]]:
    """Per-vertex fiber lengths, constrained so every maximal simplex's word
    fits in max_len; ascending lexicographic order."""
    maximal = [
        s
        for s in base.simplices
        if not any(
            set(s) < set(t) for t in base.simplices if len(t) > len(s)
        )
    ]
    counts = [1] * base.vertex_count

    def fits() -> bool:
        return all(sum(counts[v] for v in s) <= max_len for s in maximal)

    def rec(v: int) -> Iterator[Tuple[int, ...]]:
        if v == base.vertex_count:
            yield tuple(counts)
            return
        value = 1
        while True:
            counts[v] = value
            if not fits():
                counts[v] = 1
                return
            yield from rec(v + 1)
            value += 1

    if fits():
        yield from rec(0)


def _functoriality_ok(
    words: List[Word],
    shifts: Dict[Tuple[int, int], int],
    base: LocallyOrderedComplex,
    simplex_id: int,
    j2: int,
) -> bool:
    """Check the face-pair identities of the given simplex that become
    decidable once face j2's shift is assigned (those pairing it with
    earlier faces)."""
    simplex = base.simplices[simplex_id]

    def morphism(parent: Simplex, j: int) -> WordMorphism:
        pid = base.simplex_id(parent)
        child_word = words[base.simplex_id(simplex_face(parent, j))]
        return morphism_from_shift(words[pid], child_word, j, shifts[(pid, j)])

    for j1 in range(j2):
        through_b = compose_word_morphisms(
            morphism(simplex, j2), morphism(simplex_face(simplex, j2), j1)
        )
        through_a = compose_word_morphisms(
            morphism(simplex, j1), morphism(simplex_face(simplex, j1), j2 - 1)
        )
        if through_a != through_b:
            return False
    return True


def enumerate_decorations(
    base: LocallyOrderedComplex,
    max_len: int,
    budget: Optional[int] = None,
) -> Iterator[Decoration]:
    """Every valid decoration whose maximal-simplex words have length at
    most max_len, in a fixed deterministic order.

    The stream enumerates per-vertex fiber lengths, then words per simplex
    in canonical id order (pruning words whose boundaries cannot match any
    shift of an assigned face word), then shift assignments, checking
    functoriality as soon as it is decidable.

    Raises
    ------
    ResourceBudgetError
        When more candidates than the budget (default 10**8, overridable
        via NECKLACE_MAX_CANDIDATES or the argument) are examined.
    """
    if base.dimension > 2:
        raise InvalidInputError("enumeration is limited to bases of dimension <= 2")
    if max_len < base.dimension + 1:
        raise InvalidInputError("max_len is smaller than the top word length")
    tally = _Budget(candidate_budget(budget))
    count = len(base.simplices)
    words: List[Optional[Word]] = [None] * count

    slots: List[Tuple[int, int]] = []
    for i, s in enumerate(base.simplices):
        if len(s) > 1:
            slots.extend((i, j) for j in range(len(s)))
    shifts: Dict[Tuple[int, int], int] = {}

    def assign_shifts(pos: int) -> Iterator[Decoration]:
        if pos == len(slots):
            yield Decoration(
                base,
                tuple(words),  # type: ignore[arg-type]
                tuple(
                    tuple(shifts[(i, j)] for j in range(len(s)))
                    if len(s) > 1
                    else ()
                    for i, s in enumerate(base.simplices)
                ),
            )
            return
        i, j = slots[pos]
        simplex = base.simplices[i]
        child = simplex_face(simplex, j)
        options = _valid_shifts(words[i], j, words[base.simplex_id(child)])
        for t in options:
            tally.spend()
            shifts[(i, j)] = t
            if len(simplex) >= 3 and not _functoriality_ok(
                words, shifts, base, i, j
            ):
                continue
            yield from assign_shifts(pos + 1)
        shifts.pop((i, j), None)

    def assign_words(i: int, content_of) -> Iterator[Decoration]:
        if i == count:
            yield from assign_shifts(0)
            return
        simplex = base.simplices[i]
        for w in words_of_content(content_of(simplex)):
            tally.spend()
            if len(simplex) > 1:
                ok = True
                for j in range(len(simplex)):
                    child_word = words[base.simplex_id(simplex_face(simplex, j))]
                    if not _valid_shifts(w, j, child_word):
                        ok = False
                        break
                if not ok:
                    continue
            words[i] = w
            yield from assign_words(i + 1, content_of)
        words[i] = None

    for fiber_lengths in _multiplicity_vectors(base, max_len):
        yield from assign_words(
            0, lambda s: tuple(fiber_lengths[v] for v in s)
        )
