"""The rational local formula for powers of the first Chern class.

The value on a 2h-simplex is (-1)^h h!/(2h)! times the necklace parity of
the simplex's word. Summing the degree-2 cochain against a fundamental
cycle of a closed oriented surface gives the Chern number, always an exact
integer on valid data. The range search certifies which Chern numbers are
realizable over a given surface within a word-length bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from .complexes import LocallyOrderedComplex, Simplex, simplex_face
from .cyclic_category import compose_word_morphisms
from .decorations import (
    Decoration,
    _Budget,
    _valid_shifts,
    candidate_budget,
    morphism_from_shift,
    validate_decoration,
)
from .errors import (
    InvalidInputError,
    NonIntegralError,
    NonOrientableError,
    NotClosedError,
    WrongAlphabetError,
)
from .words_necklaces import (
    Necklace,
    Word,
    boundary_word,
    canonical_necklace,
    delete_index_face,
    necklace_parity,
    words_of_content,
)

__all__ = [
    "RationalCochain",
    "FundamentalCycle",
    "local_chern",
    "chern_cochain",
    "coboundary",
    "fundamental_cycle",
    "chern_number",
    "achievable_chern_numbers",
]


@dataclass(frozen=True)
class RationalCochain:
    """Exact rational values on every base simplex of one dimension."""

    base: LocallyOrderedComplex
    degree: int
    values: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        expected = len(self.base.simplices_of_dimension(self.degree))
        if len(self.values) != expected:
            raise InvalidInputError(
                f"expected {expected} values in degree {self.degree}, "
                f"got {len(self.values)}"
            )

    @property
    def simplices(self) -> Tuple[Simplex, ...]:
        return self.base.simplices_of_dimension(self.degree)

    def value_for(self, simplex: Sequence[int]) -> Fraction:
        simplex = tuple(simplex)
        try:
            pos = self.simplices.index(simplex)
        except ValueError:
            raise InvalidInputError(
                f"{simplex} is not a {self.degree}-simplex of the base"
            )
        return self.values[pos]

    def items(self) -> Iterator[Tuple[Simplex, Fraction]]:
        return zip(self.simplices, self.values)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


@dataclass(frozen=True)
class FundamentalCycle:
    """A coherent choice of signs, one per triangle of a closed surface."""

    base: LocallyOrderedComplex
    coefficients: Tuple[int, ...]

    def __post_init__(self) -> None:
        triangles = self.base.simplices_of_dimension(2)
        if len(self.coefficients) != len(triangles):
            raise InvalidInputError("one coefficient per triangle required")
        if any(c not in (-1, 1) for c in self.coefficients):
            raise InvalidInputError("coefficients must be +1 or -1")

    @property
    def triangles(self) -> Tuple[Simplex, ...]:
        return self.base.simplices_of_dimension(2)

    def coefficient_for(self, simplex: Sequence[int]) -> int:
        simplex = tuple(simplex)
        return self.coefficients[self.triangles.index(simplex)]


def local_chern(w: Word, h: int) -> Fraction:
    """(-1)^h h!/(2h)! times the necklace parity; needs a 2h+1 alphabet."""
    if h < 0:
        raise InvalidInputError("h must be nonnegative")
    if w.alphabet_size != 2 * h + 1:
        raise WrongAlphabetError(
            f"alphabet size {w.alphabet_size} does not match 2h+1 = {2 * h + 1}"
        )
    parity = necklace_parity(canonical_necklace(w))
    scale = Fraction((-1) ** h * math.factorial(h), math.factorial(2 * h))
    return scale * parity


def chern_cochain(d: Decoration, h: int, validate: bool = True) -> RationalCochain:
    """The degree-2h cochain of local values over the decoration's base."""
    if h < 0:
        raise InvalidInputError("h must be nonnegative")
    if validate:
        report = validate_decoration(d)
        if not report.ok:
            raise InvalidInputError(report.summary())
    values = []
    for simplex in d.base.simplices_of_dimension(2 * h):
        values.append(local_chern(d.word_for(simplex), h))
    return RationalCochain(d.base, 2 * h, tuple(values))


def coboundary(c: RationalCochain) -> RationalCochain:
    """(delta c)(V) = sum over faces of V of (-1)^j c(face_j V)."""
    out = []
    for V in c.base.simplices_of_dimension(c.degree + 1):
        total = Fraction(0)
        for j in range(len(V)):
            total += (-1) ** j * c.value_for(simplex_face(V, j))
        out.append(total)
    return RationalCochain(c.base, c.degree + 1, tuple(out))


def fundamental_cycle(base: LocallyOrderedComplex) -> FundamentalCycle:
    """Signs making the signed sum of triangles a cycle.

    Signs are propagated across shared edges so contributions cancel, then
    normalized so the lexicographically greatest triangle of each connected
    component gets +1.

    Raises
    ------
    NotClosedError
        If some edge does not lie in exactly two triangles.
    NonOrientableError
        If no coherent signing exists.
    """
    if base.dimension != 2:
        raise InvalidInputError("a fundamental cycle needs a 2-dimensional base")
    triangles = base.simplices_of_dimension(2)
    index = {t: i for i, t in enumerate(triangles)}
    by_edge: Dict[Simplex, List[Tuple[int, int]]] = {}
    for i, t in enumerate(triangles):
        for j in range(3):
            by_edge.setdefault(simplex_face(t, j), []).append((i, j))
    for edge in base.simplices_of_dimension(1):
        hits = by_edge.get(edge, [])
        if len(hits) != 2:
            raise NotClosedError(
                f"edge {edge} lies in {len(hits)} triangles, expected 2"
            )
    signs: Dict[int, int] = {}
    for seed in range(len(triangles)):
        if seed in signs:
            continue
        component = [seed]
        signs[seed] = 1
        queue = [seed]
        while queue:
            i = queue.pop()
            for j in range(3):
                edge = simplex_face(triangles[i], j)
                for i2, j2 in by_edge[edge]:
                    if i2 == i:
                        continue
                    # cancellation: s_i (-1)^j + s_i2 (-1)^j2 == 0
                    forced = -signs[i] * (-1) ** j * (-1) ** j2
                    if i2 in signs:
                        if signs[i2] != forced:
                            raise NonOrientableError(
                                f"no coherent orientation across edge {edge}"
                            )
                    else:
                        signs[i2] = forced
                        component.append(i2)
                        queue.append(i2)
        top = max(component, key=lambda i: triangles[i])
        if signs[top] == -1:
            for i in component:
                signs[i] = -signs[i]
    return FundamentalCycle(
        base, tuple(signs[i] for i in range(len(triangles)))
    )


def chern_number(
    d: Decoration,
    fc: Optional[FundamentalCycle] = None,
    validate: bool = True,
) -> int:
    """The degree-2 cochain integrated against the fundamental cycle."""
    if fc is None:
        fc = fundamental_cycle(d.base)
    cochain = chern_cochain(d, 1, validate=validate)
    total = Fraction(0)
    for coeff, value in zip(fc.coefficients, cochain.values):
        total += coeff * value
    if total.denominator != 1:
        raise NonIntegralError(
            f"Chern pairing {total} is not an integer; the input cannot "
            "come from a valid bundle"
        )
    return int(total)


# =========================================================================
# Realizable-range search
# =========================================================================


@lru_cache(maxsize=4096)
def _triangle_candidates(
    content: Tuple[int, int, int]
) -> Tuple[Tuple[Word, Fraction, Tuple[Necklace, Necklace, Necklace]], ...]:
    """One lexicographically least word per rotation class with the given
    letter content, together with its parity and the rotation classes of
    its three boundary words."""
    entries = []
    for w in words_of_content(content):
        if canonical_necklace(w).canonical_word != w:
            continue
        parity = necklace_parity(canonical_necklace(w))
        bnd = tuple(
            canonical_necklace(boundary_word(w, delete_index_face(j, 3))[0])
            for j in range(3)
        )
        entries.append((w, parity, bnd))
    return tuple(entries)


def _multiplicity_vectors_surface(
    base: LocallyOrderedComplex, max_len: int
) -> Iterator[Tuple[int, ...]]:
    """Per-vertex fiber lengths with every triangle's total at most
    max_len, in ascending total order then lexicographic."""
    n = base.vertex_count
    triangles = base.simplices_of_dimension(2)
    raw = []
    limit = max_len - 2

    def rec(prefix: List[int]) -> None:
        if len(prefix) == n:
            if all(sum(prefix[v] for v in t) <= max_len for t in triangles):
                raw.append(tuple(prefix))
            return
        for value in range(1, limit + 1):
            prefix.append(value)
            # partial pruning: any fully determined triangle must fit
            ok = True
            for t in triangles:
                if max(t) < len(prefix) and sum(prefix[v] for v in t) > max_len:
                    ok = False
                    break
            if ok:
                rec(prefix)
            prefix.pop()

    rec([])
    raw.sort(key=lambda m: (sum(m), m))
    return iter(raw)


def _solve_shifts(
    base: LocallyOrderedComplex,
    words: Dict[int, Word],
    tally: _Budget,
) -> Optional[Decoration]:
    """Find one shift assignment making the given words a valid decoration,
    or None.

    Slots are ordered triangle by triangle, each followed by the slots of
    its edges, so every functoriality identity of a triangle becomes
    checkable within a few assignments of entering it. Morphisms are cached
    per slot and shift since the word layout is fixed for the whole solve.
    """
    slots: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()

    def push(i: int, j: int) -> None:
        if (i, j) not in seen:
            seen.add((i, j))
            slots.append((i, j))

    for t_id, t in (
        (base.simplex_id(t), t) for t in base.simplices_of_dimension(2)
    ):
        for j in range(3):
            push(t_id, j)
        for j in range(3):
            e_id = base.simplex_id(simplex_face(t, j))
            for jj in range(2):
                push(e_id, jj)
    for i, s in enumerate(base.simplices):
        if len(s) > 1:
            for j in range(len(s)):
                push(i, j)
    slot_pos = {slot: pos for pos, slot in enumerate(slots)}

    domains: List[Tuple[int, ...]] = []
    for i, j in slots:
        child = words[base.simplex_id(simplex_face(base.simplices[i], j))]
        options = _valid_shifts(words[i], j, child)
        if not options:
            return None
        domains.append(options)

    # functoriality identities, each attached to its last-assigned slot
    constraints_at: Dict[int, List[Tuple[int, int, int]]] = {}
    for i, s in enumerate(base.simplices):
        if len(s) < 3:
            continue
        for j2 in range(len(s)):
            for j1 in range(j2):
                eb = base.simplex_id(simplex_face(s, j2))
                ea = base.simplex_id(simplex_face(s, j1))
                fires = max(
                    slot_pos[(i, j2)],
                    slot_pos[(i, j1)],
                    slot_pos[(eb, j1)],
                    slot_pos[(ea, j2 - 1)],
                )
                constraints_at.setdefault(fires, []).append((i, j1, j2))

    assignment: Dict[Tuple[int, int], int] = {}
    morphism_cache: Dict[Tuple[int, int, int], object] = {}
    holds_cache: Dict[Tuple[int, int, int, int, int, int, int], bool] = {}

    def morphism(i: int, j: int):
        t = assignment[(i, j)]
        key = (i, j, t)
        m = morphism_cache.get(key)
        if m is None:
            child = words[base.simplex_id(simplex_face(base.simplices[i], j))]
            m = morphism_from_shift(words[i], child, j, t)
            morphism_cache[key] = m
        return m

    def holds(i: int, j1: int, j2: int) -> bool:
        s = base.simplices[i]
        eb = base.simplex_id(simplex_face(s, j2))
        ea = base.simplex_id(simplex_face(s, j1))
        key = (
            i,
            j1,
            j2,
            assignment[(i, j1)],
            assignment[(i, j2)],
            assignment[(eb, j1)],
            assignment[(ea, j2 - 1)],
        )
        cached = holds_cache.get(key)
        if cached is None:
            through_b = compose_word_morphisms(
                morphism(i, j2), morphism(eb, j1)
            )
            through_a = compose_word_morphisms(
                morphism(i, j1), morphism(ea, j2 - 1)
            )
            cached = through_a == through_b
            holds_cache[key] = cached
        return cached

    def dfs(pos: int) -> bool:
        if pos == len(slots):
            return True
        i, j = slots[pos]
        for t in domains[pos]:
            tally.spend()
            assignment[(i, j)] = t
            if all(holds(*c) for c in constraints_at.get(pos, [])):
                if dfs(pos + 1):
                    return True
        assignment.pop((i, j), None)
        return False

    if not dfs(0):
        return None
    shifts = {slot: assignment[slot] for slot in slots}
    return Decoration.from_maps(base, words, shifts)


def achievable_chern_numbers(
    base: LocallyOrderedComplex,
    max_len: int,
    budget: Optional[int] = None,
) -> Set[int]:
    """Every Chern number realized by a valid decoration whose triangle
    words have length at most max_len.

    Words are searched up to rotation (rotating all words of a decoration
    independently preserves validity and the Chern number), candidate
    necklace tuples are pruned by boundary-necklace matching on shared
    edges, and a value is recorded only after an explicit decoration is
    constructed and checked. The result can only grow with max_len. Stops
    early once the whole integer interval [-F/2, F/2] is achieved.

    Raises
    ------
    ResourceBudgetError
        When the candidate budget (default 10**8, overridable via
        NECKLACE_MAX_CANDIDATES or the argument) is exhausted.
    """
    fc = fundamental_cycle(base)
    tally = _Budget(candidate_budget(budget))
    triangles = base.simplices_of_dimension(2)
    tri_count = len(triangles)
    full_range = set(range(-(tri_count // 2), tri_count // 2 + 1))
    achieved: Set[int] = set()

    edge_slots: Dict[Simplex, List[Tuple[int, int]]] = {}
    for ti, t in enumerate(triangles):
        for j in range(3):
            edge_slots.setdefault(simplex_face(t, j), []).append((ti, j))

    scale = Fraction(-1, 2)

    for mult in _multiplicity_vectors_surface(base, max_len):
        # candidate necklace representatives per triangle, with their
        # parities and boundary necklaces
        candidates = []
        for t in triangles:
            entries = _triangle_candidates(tuple(mult[v] for v in t))
            tally.spend(len(entries))
            candidates.append(entries)

        chosen: List[Optional[Tuple[Word, Fraction, Tuple[Necklace, ...]]]] = [
            None
        ] * tri_count

        def edge_consistent(ti: int) -> bool:
            for j in range(3):
                edge = simplex_face(triangles[ti], j)
                for ti2, j2 in edge_slots[edge]:
                    if ti2 == ti or chosen[ti2] is None:
                        continue
                    if chosen[ti][2][j] != chosen[ti2][2][j2]:
                        return False
            return True

        def try_tuple() -> None:
            predicted = scale * sum(
                fc.coefficients[ti] * chosen[ti][1] for ti in range(tri_count)
            )
            if predicted.denominator != 1 or int(predicted) in achieved:
                return
            words: Dict[int, Word] = {}
            for i, s in enumerate(base.simplices):
                if len(s) == 1:
                    words[i] = Word((0,) * mult[s[0]], 1)
            for ti, t in enumerate(triangles):
                words[base.simplex_id(t)] = chosen[ti][0]
            for edge, slots_here in edge_slots.items():
                ti, j = slots_here[0]
                rep = chosen[ti][2][j].canonical_word
                words[base.simplex_id(edge)] = rep
            d = _solve_shifts(base, words, tally)
            if d is None:
                return
            report = validate_decoration(d)
            if not report.ok:
                raise InvalidInputError(
                    "range search produced an invalid decoration: "
                    + report.summary()
                )
            realized = chern_number(d, fc, validate=False)
            if realized != int(predicted):
                raise InvalidInputError(
                    f"range search predicted {predicted} but the witness "
                    f"decoration pairs to {realized}"
                )
            achieved.add(realized)

        def assign(ti: int) -> bool:
            """Depth-first over triangles; returns True to stop everything
            (full range achieved)."""
            if ti == tri_count:
                try_tuple()
                return achieved == full_range
            for entry in candidates[ti]:
                tally.spend()
                chosen[ti] = entry
                if edge_consistent(ti) and assign(ti + 1):
                    return True
            chosen[ti] = None
            return False

        if assign(0):
            return achieved
    return achieved
