"""Explicit simplicial circle bundles: validation, sections, word extraction.

A bundle is a simplicial map from a total complex to a locally ordered base,
with a chosen directed cycle on the fiber over every base vertex. Over a
base k-simplex the total space decomposes into 0-sections (k-simplices
mapping bijectively) and 1-sections (k+1-simplices collapsing one fiber
arc); when these alternate around a single consistently directed cycle the
bundle is combinatorially trivial over that simplex and defines a cyclic
word. Extraction turns the whole bundle into a decoration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import (
    LocallyOrderedComplex,
    Simplex,
    ValidationIssue,
    ValidationReport,
)
from .decorations import Decoration
from .errors import (
    InconsistentOrientationError,
    InvalidInputError,
    SectionNotFoundError,
)
from .words_necklaces import Word

__all__ = [
    "BundleMap",
    "ElementaryBundleView",
    "SectionChoice",
    "LocallyOrderedComplex",
    "validate_bundle",
    "elementary_view",
    "extract_word",
    "section_shift",
    "extract_decoration",
    "default_section_choice",
    "cycle_bundle",
    "product_bundle",
]


@dataclass(frozen=True)
class BundleMap:
    """A simplicial map total -> base with directed fiber cycles.

    ``vertex_map[t]`` is the base vertex under total vertex t;
    ``fiber_orientation[v]`` lists the fiber vertices over base vertex v in
    cyclic order, each consecutive pair a directed arc.
    """

    total: LocallyOrderedComplex
    base: LocallyOrderedComplex
    vertex_map: Tuple[int, ...]
    fiber_orientation: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.vertex_map) != self.total.vertex_count:
            raise InvalidInputError(
                "vertex_map length must equal the total vertex count"
            )
        for v in self.vertex_map:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidInputError("vertex_map entries must be integers")
            if not 0 <= v < self.base.vertex_count:
                raise InvalidInputError(f"vertex_map value {v} out of range")
        if len(self.fiber_orientation) != self.base.vertex_count:
            raise InvalidInputError(
                "fiber_orientation needs one cycle per base vertex"
            )
        for cycle in self.fiber_orientation:
            for t in cycle:
                if not isinstance(t, int) or isinstance(t, bool):
                    raise InvalidInputError(
                        "fiber_orientation entries must be integers"
                    )
                if not 0 <= t < self.total.vertex_count:
                    raise InvalidInputError(
                        f"fiber vertex {t} out of range"
                    )

    def fiber_length(self, base_vertex: int) -> int:
        return len(self.fiber_orientation[base_vertex])


@dataclass(frozen=True)
class ElementaryBundleView:
    """The section cycle of a bundle over one base simplex.

    ``zero_sections[q]`` and ``one_sections[q]`` alternate around the
    directed cycle; the arc ``one_sections[q]`` leaves ``zero_sections[q]``
    and enters ``zero_sections[q+1]``. ``letters[q]`` is the local index
    (within the base simplex) of the base vertex carrying the q-th arc's
    collapsed edge. The cycle is anchored at the least zero-section.
    """

    base_simplex: Simplex
    zero_sections: Tuple[Simplex, ...]
    one_sections: Tuple[Simplex, ...]
    letters: Tuple[int, ...]

    @property
    def cycle_order(self) -> Tuple[Simplex, ...]:
        out: List[Simplex] = []
        for z, a in zip(self.zero_sections, self.one_sections):
            out.append(z)
            out.append(a)
        return tuple(out)


@dataclass(frozen=True)
class SectionChoice:
    """One designated zero-section per base simplex, indexed by simplex id."""

    sections: Tuple[Simplex, ...]

    def section_for(self, base: LocallyOrderedComplex, U: Sequence[int]) -> Simplex:
        return self.sections[base.simplex_id(U)]


def _fiber_issues(b: BundleMap) -> List[ValidationIssue]:
    issues: List[ValidationIssue] = []
    edge_set = {s for s in b.total.simplices if len(s) == 2}
    for v in range(b.base.vertex_count):
        fiber = sorted(
            t for t in range(b.total.vertex_count) if b.vertex_map[t] == v
        )
        cycle = b.fiber_orientation[v]
        here = (v,)
        if sorted(cycle) != fiber:
            issues.append(
                ValidationIssue(
                    "fiber-not-cycle",
                    f"orientation cycle {cycle} does not list the fiber "
                    f"vertices {tuple(fiber)} exactly once",
                    here,
                )
            )
            continue
        m = len(cycle)
        if m < 3:
            issues.append(
                ValidationIssue(
                    "fiber-not-cycle",
                    f"fiber over vertex {v} has {m} vertices; a simplicial "
                    "circle needs at least 3",
                    here,
                )
            )
            continue
        cycle_edges = {
            tuple(sorted((cycle[i], cycle[(i + 1) % m]))) for i in range(m)
        }
        missing = [e for e in cycle_edges if e not in edge_set]
        if missing:
            issues.append(
                ValidationIssue(
                    "fiber-not-cycle",
                    f"arc {missing[0]} of the fiber over vertex {v} is not "
                    "an edge of the total complex",
                    here,
                )
            )
        in_fiber = set(fiber)
        chords = [
            e
            for e in edge_set
            if e[0] in in_fiber and e[1] in in_fiber and e not in cycle_edges
        ]
        if chords:
            issues.append(
                ValidationIssue(
                    "fiber-not-cycle",
                    f"edge {chords[0]} is a chord of the fiber over vertex {v}",
                    here,
                )
            )
    return issues


def _arc_direction(
    b: BundleMap, base_vertex: int, pair: Tuple[int, int]
) -> Optional[Tuple[int, int]]:
    """Orient a collapsed fiber pair along the fiber cycle, or None if the
    pair is not an arc."""
    cycle = b.fiber_orientation[base_vertex]
    m = len(cycle)
    for i in range(m):
        tail, head = cycle[i], cycle[(i + 1) % m]
        if {tail, head} == set(pair):
            return (tail, head)
    return None


@lru_cache(maxsize=None)
def _view_over(
    b: BundleMap, U: Simplex
) -> Tuple[Optional[ElementaryBundleView], Tuple[ValidationIssue, ...]]:
    issues: List[ValidationIssue] = []
    k1 = len(U)
    base_set = set(U)
    local = {v: j for j, v in enumerate(U)}
    zero: List[Simplex] = []
    # arcs as (simplex, local letter, tail element, head element)
    arcs: List[Tuple[Simplex, int, int, int]] = []
    for A in b.total.simplices:
        image = {b.vertex_map[a] for a in A}
        if image != base_set:
            continue
        if len(A) == k1:
            zero.append(A)
        elif len(A) == k1 + 1:
            per_vertex: Dict[int, List[int]] = {v: [] for v in U}
            for a in A:
                per_vertex[b.vertex_map[a]].append(a)
            doubled = [v for v in U if len(per_vertex[v]) == 2]
            w = doubled[0]
            oriented = _arc_direction(b, w, tuple(per_vertex[w]))
            if oriented is None:
                issues.append(
                    ValidationIssue(
                        "bad-one-section",
                        f"collapsed pair {tuple(per_vertex[w])} is not an "
                        f"arc of the fiber over vertex {w}",
                        A,
                    )
                )
                continue
            arcs.append((A, local[w], oriented[0], oriented[1]))
        else:
            issues.append(
                ValidationIssue(
                    "bad-dimension",
                    f"simplex of dimension {len(A) - 1} maps onto a base "
                    f"simplex of dimension {k1 - 1}",
                    A,
                )
            )
    if issues:
        return None, tuple(issues)
    if len(zero) != len(arcs):
        issues.append(
            ValidationIssue(
                "count-mismatch",
                f"{len(zero)} zero-sections but {len(arcs)} one-sections",
                U,
            )
        )
        return None, tuple(issues)
    if not zero:
        issues.append(
            ValidationIssue("count-mismatch", "no sections at all", U)
        )
        return None, tuple(issues)

    zero_set = set(zero)
    arc_info: Dict[Simplex, Tuple[int, int, int]] = {}
    facets: Dict[Simplex, Tuple[Simplex, Simplex]] = {}
    for A, letter, tail_el, head_el in arcs:
        tail_facet = tuple(a for a in A if a != head_el)
        head_facet = tuple(a for a in A if a != tail_el)
        if tail_facet not in zero_set or head_facet not in zero_set:
            issues.append(
                ValidationIssue(
                    "missing-facet",
                    "a facet of this one-section is not a zero-section",
                    A,
                )
            )
            continue
        arc_info[A] = (letter, tail_el, head_el)
        facets[A] = (tail_facet, head_facet)
    if issues:
        return None, tuple(issues)
    degree = {z: 0 for z in zero}
    out_deg = {z: 0 for z in zero}
    for A, (tail_facet, head_facet) in facets.items():
        degree[tail_facet] += 1
        degree[head_facet] += 1
        out_deg[tail_facet] += 1
    if any(d != 2 for d in degree.values()):
        issues.append(
            ValidationIssue(
                "not-single-cycle",
                "some zero-section does not meet exactly two one-sections",
                U,
            )
        )
        return None, tuple(issues)
    if any(d != 1 for d in out_deg.values()):
        issues.append(
            ValidationIssue(
                "inconsistent-orientation",
                "arc directions clash: some zero-section is the tail of "
                "two arcs",
                U,
            )
        )
        return None, tuple(issues)
    succ = {facets[A][0]: (A, facets[A][1]) for A in facets}

    anchor = min(zero)
    order_zero: List[Simplex] = [anchor]
    order_one: List[Simplex] = []
    letters: List[int] = []
    current = anchor
    for _ in range(len(arcs)):
        A, nxt = succ[current]
        order_one.append(A)
        letters.append(arc_info[A][0])
        current = nxt
        if current == anchor:
            break
        order_zero.append(current)
    if len(order_one) != len(arcs) or current != anchor:
        issues.append(
            ValidationIssue(
                "not-single-cycle",
                "the sections split into more than one cycle",
                U,
            )
        )
        return None, tuple(issues)

    # weakly monotone coverage: walking once around the section cycle must
    # walk once around every fiber, advancing at exactly the collapsing arcs
    restriction = {}
    for j, v in enumerate(U):
        for a in anchor:
            if b.vertex_map[a] == v:
                restriction[j] = a
    for A in order_one:
        letter, tail_el, head_el = arc_info[A]
        if restriction[letter] != tail_el:
            issues.append(
                ValidationIssue(
                    "bad-coverage",
                    "the section cycle does not traverse the fiber "
                    f"over local vertex {letter} monotonically",
                    U,
                )
            )
            return None, tuple(issues)
        restriction[letter] = head_el
    for j, v in enumerate(U):
        if letters.count(j) != b.fiber_length(v):
            issues.append(
                ValidationIssue(
                    "bad-coverage",
                    f"fiber over local vertex {j} is traversed "
                    f"{letters.count(j)} times, expected once around "
                    f"{b.fiber_length(v)} arcs",
                    U,
                )
            )
            return None, tuple(issues)

    view = ElementaryBundleView(
        base_simplex=U,
        zero_sections=tuple(order_zero),
        one_sections=tuple(order_one),
        letters=tuple(letters),
    )
    return view, ()


def validate_bundle(b: BundleMap) -> ValidationReport:
    """Check every bundle invariant; an empty report means every elementary
    view is a single consistently directed section cycle."""
    issues: List[ValidationIssue] = []
    for A in b.total.simplices:
        image = tuple(sorted({b.vertex_map[a] for a in A}))
        if not b.base.has_simplex(image):
            issues.append(
                ValidationIssue(
                    "not-onto-simplex",
                    f"image {image} is not a simplex of the base",
                    A,
                )
            )
    issues.extend(_fiber_issues(b))
    if issues:
        return ValidationReport(tuple(issues))
    for U in b.base.simplices:
        _, view_issues = _view_over(b, U)
        issues.extend(view_issues)
    return ValidationReport(tuple(issues))


def elementary_view(b: BundleMap, U: Sequence[int]) -> ElementaryBundleView:
    """The section cycle over one base simplex.

    Raises
    ------
    InconsistentOrientationError
        When the sections form a cycle whose arc directions clash.
    InvalidInputError
        For any other violated invariant over this simplex.
    """
    U = tuple(U)
    if not b.base.has_simplex(U):
        raise InvalidInputError(f"{U} is not a simplex of the base")
    view, issues = _view_over(b, U)
    if view is not None:
        return view
    if any(i.code == "inconsistent-orientation" for i in issues):
        raise InconsistentOrientationError(
            "; ".join(str(i) for i in issues)
        )
    raise InvalidInputError("; ".join(str(i) for i in issues))


def extract_word(b: BundleMap, U: Sequence[int], s0: Sequence[int]) -> Word:
    """The cyclic word over U read from the designated zero-section: the
    q-th letter is the local base vertex whose fiber the q-th arc collapses,
    arcs numbered from s0 by their tails."""
    view = elementary_view(b, U)
    s0 = tuple(s0)
    try:
        p = view.zero_sections.index(s0)
    except ValueError:
        raise SectionNotFoundError(
            f"{s0} is not a zero-section over {tuple(U)}"
        )
    m = len(view.letters)
    letters = tuple(view.letters[(p + i) % m] for i in range(m))
    return Word(letters, len(tuple(U)))


def section_shift(
    b: BundleMap, U: Sequence[int], s0: Sequence[int], s0_new: Sequence[int]
) -> int:
    """The cyclic shift aligning the word read from s0 with the word read
    from s0_new: extract_word(b, U, s0_new) equals
    cyclic_shift(extract_word(b, U, s0), section_shift(b, U, s0, s0_new))."""
    view = elementary_view(b, U)
    try:
        p = view.zero_sections.index(tuple(s0))
        p_new = view.zero_sections.index(tuple(s0_new))
    except ValueError:
        raise SectionNotFoundError("both arguments must be zero-sections")
    return (p - p_new) % len(view.zero_sections)


def default_section_choice(b: BundleMap) -> SectionChoice:
    """Designate the cycle anchor (the least zero-section) everywhere."""
    sections = []
    for U in b.base.simplices:
        view = elementary_view(b, U)
        sections.append(view.zero_sections[0])
    return SectionChoice(tuple(sections))


def extract_decoration(
    b: BundleMap, choice: Optional[SectionChoice] = None
) -> Decoration:
    """Read off the full decoration: per-simplex words from the designated
    sections, per-face shifts aligning a simplex's word with its face's.

    The stored shift for face j of V is found by walking forward around the
    cycle over V from the designated section until the restriction (drop
    the vertex over the j-th base vertex) hits the face's designated
    section; a valid bundle always reaches it.
    """
    report = validate_bundle(b)
    if not report.ok:
        raise InvalidInputError(report.summary())
    if choice is None:
        choice = default_section_choice(b)
    if len(choice.sections) != len(b.base.simplices):
        raise InvalidInputError(
            "section choice must designate one section per base simplex"
        )
    words: Dict[int, Word] = {}
    shifts: Dict[Tuple[int, int], int] = {}
    for i, V in enumerate(b.base.simplices):
        words[i] = extract_word(b, V, choice.sections[i])
    for i, V in enumerate(b.base.simplices):
        if len(V) == 1:
            continue
        view = elementary_view(b, V)
        designated = choice.sections[i]
        try:
            p = view.zero_sections.index(designated)
        except ValueError:
            raise SectionNotFoundError(
                f"designated section {designated} is not a zero-section "
                f"over {V}"
            )
        m = len(view.zero_sections)
        for j in range(len(V)):
            dropped = V[j]
            target = choice.sections[b.base.simplex_id(V[:j] + V[j + 1:])]
            for walked in range(m):
                Z = view.zero_sections[(p + walked) % m]
                restricted = tuple(
                    z for z in Z if b.vertex_map[z] != dropped
                )
                if restricted == target:
                    shifts[(i, j)] = (-walked) % m
                    break
            else:
                raise SectionNotFoundError(
                    f"no restriction of the sections over {V} matches the "
                    f"designated section of face {j}"
                )
    return Decoration.from_maps(b.base, words, shifts)


# =========================================================================
# Builders
# =========================================================================


def cycle_bundle(m: int) -> BundleMap:
    """The circle of length m over a single point."""
    if m < 3:
        raise InvalidInputError("a simplicial circle needs at least 3 vertices")
    edges = [tuple(sorted((i, (i + 1) % m))) for i in range(m)]
    total = LocallyOrderedComplex.from_maximal(m, edges)
    base = LocallyOrderedComplex.from_maximal(1, [(0,)])
    return BundleMap(
        total=total,
        base=base,
        vertex_map=(0,) * m,
        fiber_orientation=(tuple(range(m)),),
    )


def product_bundle(base: LocallyOrderedComplex, m: int) -> BundleMap:
    """The trivial bundle: base times a circle of length m, triangulated by
    staircase prisms.

    Total vertex (v, t) is encoded as v*m + t. Over a maximal base simplex
    (v_0 < ... < v_k) the prisms are, for each fiber level t and each pivot
    r: the top copies of v_0..v_r at level t+1 together with the bottom
    copies of v_r..v_k at level t.
    """
    if m < 3:
        raise InvalidInputError("a simplicial circle needs at least 3 vertices")
    maximal_base = [
        s
        for s in base.simplices
        if not any(
            set(s) < set(t) for t in base.simplices if len(t) > len(s)
        )
    ]
    maximal_total = set()
    for U in maximal_base:
        k = len(U) - 1
        for t in range(m):
            up = (t + 1) % m
            for r in range(k + 1):
                cell = tuple(
                    sorted(
                        [U[a] * m + up for a in range(r + 1)]
                        + [U[a] * m + t for a in range(r, k + 1)]
                    )
                )
                maximal_total.add(cell)
    total = LocallyOrderedComplex.from_maximal(
        base.vertex_count * m, sorted(maximal_total)
    )
    fiber_orientation = tuple(
        tuple(v * m + t for t in range(m)) for v in range(base.vertex_count)
    )
    vertex_map = tuple(v for v in range(base.vertex_count) for _ in range(m))
    return BundleMap(
        total=total,
        base=base,
        vertex_map=vertex_map,
        fiber_orientation=fiber_orientation,
    )
