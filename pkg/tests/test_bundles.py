"""Tests for bundle validation, elementary views, and word extraction."""

import itertools

import pytest

from necklace_chern.bundles import (
    BundleMap,
    SectionChoice,
    cycle_bundle,
    default_section_choice,
    elementary_view,
    extract_decoration,
    extract_word,
    product_bundle,
    section_shift,
    validate_bundle,
)
from necklace_chern.complexes import LocallyOrderedComplex
from necklace_chern.decorations import validate_decoration
from necklace_chern.errors import (
    InconsistentOrientationError,
    InvalidInputError,
    SectionNotFoundError,
)
from necklace_chern.words_necklaces import (
    boundary_word,
    canonical_necklace,
    cyclic_shift,
    delete_index_face,
    necklace_parity,
)


def edge_base():
    return LocallyOrderedComplex.from_maximal(2, [(0, 1)])


def triangle_base():
    return LocallyOrderedComplex.from_maximal(3, [(0, 1, 2)])


def tetra_boundary():
    return LocallyOrderedComplex.from_maximal(
        4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    )


class TestBundleConstruction:
    def test_vertex_map_length_checked(self):
        b = cycle_bundle(3)
        with pytest.raises(InvalidInputError):
            BundleMap(b.total, b.base, (0, 0), b.fiber_orientation)

    def test_vertex_map_range_checked(self):
        b = cycle_bundle(3)
        with pytest.raises(InvalidInputError):
            BundleMap(b.total, b.base, (0, 0, 7), b.fiber_orientation)

    def test_orientation_count_checked(self):
        b = cycle_bundle(3)
        with pytest.raises(InvalidInputError):
            BundleMap(b.total, b.base, b.vertex_map, ())

    def test_short_cycle_rejected(self):
        with pytest.raises(InvalidInputError):
            cycle_bundle(2)


class TestCycleBundle:
    def test_triangle_over_point(self):
        b = cycle_bundle(3)
        assert validate_bundle(b).ok
        view = elementary_view(b, (0,))
        assert len(view.zero_sections) == 3
        assert len(view.one_sections) == 3
        assert extract_word(b, (0,), (0,)).letters == (0, 0, 0)

    def test_longer_cycles(self):
        for m in (4, 5, 7):
            b = cycle_bundle(m)
            assert validate_bundle(b).ok
            w = extract_word(b, (0,), (0,))
            assert w.letters == (0,) * m

    def test_view_alternates(self):
        b = cycle_bundle(4)
        view = elementary_view(b, (0,))
        order = view.cycle_order
        assert len(order) == 8
        for pos, s in enumerate(order):
            assert len(s) == 1 + pos % 2


class TestPrismOverEdge:
    def test_valid_with_six_sections(self):
        b = product_bundle(edge_base(), 3)
        assert validate_bundle(b).ok
        view = elementary_view(b, (0, 1))
        assert len(view.zero_sections) == 6
        assert len(view.one_sections) == 6

    def test_word_from_bottom_section(self):
        b = product_bundle(edge_base(), 3)
        # vertex (v, t) is v*3 + t, so the section over level 0 is (0, 3)
        assert extract_word(b, (0, 1), (0, 3)).letters == (0, 1, 0, 1, 0, 1)

    def test_word_from_next_section(self):
        b = product_bundle(edge_base(), 3)
        view = elementary_view(b, (0, 1))
        assert view.zero_sections[0] == (0, 3)
        succ = view.zero_sections[1]
        assert extract_word(b, (0, 1), succ).letters == (1, 0, 1, 0, 1, 0)

    def test_section_shift_identity(self):
        b = product_bundle(edge_base(), 3)
        view = elementary_view(b, (0, 1))
        for s in view.zero_sections:
            assert section_shift(b, (0, 1), s, s) == 0

    def test_section_shift_postcondition(self):
        b = product_bundle(edge_base(), 3)
        view = elementary_view(b, (0, 1))
        for s, s_new in itertools.product(view.zero_sections, repeat=2):
            shift = section_shift(b, (0, 1), s, s_new)
            assert extract_word(b, (0, 1), s_new) == cyclic_shift(
                extract_word(b, (0, 1), s), shift
            )

    def test_section_shift_additive(self):
        b = product_bundle(edge_base(), 3)
        view = elementary_view(b, (0, 1))
        m = len(view.zero_sections)
        for s1, s2, s3 in itertools.product(view.zero_sections, repeat=3):
            direct = section_shift(b, (0, 1), s1, s3)
            via = (
                section_shift(b, (0, 1), s1, s2)
                + section_shift(b, (0, 1), s2, s3)
            ) % m
            assert direct == via

    def test_section_not_found(self):
        b = product_bundle(edge_base(), 3)
        with pytest.raises(SectionNotFoundError):
            extract_word(b, (0, 1), (0, 4, 5))
        with pytest.raises(SectionNotFoundError):
            section_shift(b, (0, 1), (0, 3), (0, 99))


class TestProductBundles:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_prism_extraction_round_trip(self, m):
        b = product_bundle(edge_base(), m)
        assert validate_bundle(b).ok
        d = extract_decoration(b)
        assert validate_decoration(d).ok
        edge_word = d.word_for((0, 1))
        assert edge_word.letters == (0, 1) * m

    def test_triangle_base_word(self):
        b = product_bundle(triangle_base(), 3)
        assert validate_bundle(b).ok
        view = elementary_view(b, (0, 1, 2))
        assert len(view.zero_sections) == 9
        w = extract_word(b, (0, 1, 2), view.zero_sections[0])
        assert w.letters == (0, 1, 2) * 3

    def test_tetra_boundary_round_trip(self):
        b = product_bundle(tetra_boundary(), 3)
        assert validate_bundle(b).ok
        d = extract_decoration(b)
        assert validate_decoration(d).ok
        for s in b.base.simplices:
            if len(s) == 3:
                assert d.word_for(s).letters == (0, 1, 2) * 3


class TestInvalidBundles:
    def test_missing_face_closure_rejected_at_complex_level(self):
        # an undivided square cell cannot even be encoded: the complex
        # constructor demands face closure
        with pytest.raises(InvalidInputError):
            LocallyOrderedComplex(4, ((0, 1, 2, 3),))

    def test_corrupt_vertex_map(self):
        b = product_bundle(edge_base(), 3)
        bad_map = list(b.vertex_map)
        bad_map[0] = 1
        bad = BundleMap(b.total, b.base, tuple(bad_map), b.fiber_orientation)
        report = validate_bundle(bad)
        assert not report.ok

    def test_reversed_fiber_gives_inconsistent_orientation(self):
        b = product_bundle(edge_base(), 3)
        flipped = (b.fiber_orientation[0], tuple(reversed(b.fiber_orientation[1])))
        bad = BundleMap(b.total, b.base, b.vertex_map, flipped)
        report = validate_bundle(bad)
        assert any(i.code == "inconsistent-orientation" for i in report.issues)
        with pytest.raises(InconsistentOrientationError):
            elementary_view(bad, (0, 1))

    def test_fiber_chord_detected(self):
        total = LocallyOrderedComplex.from_maximal(
            4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]
        )
        base = LocallyOrderedComplex.from_maximal(1, [(0,)])
        bad = BundleMap(total, base, (0, 0, 0, 0), ((0, 1, 2, 3),))
        report = validate_bundle(bad)
        assert any(i.code == "fiber-not-cycle" for i in report.issues)

    def test_fiber_too_short(self):
        total = LocallyOrderedComplex.from_maximal(2, [(0, 1)])
        base = LocallyOrderedComplex.from_maximal(1, [(0,)])
        bad = BundleMap(total, base, (0, 0), ((0, 1),))
        report = validate_bundle(bad)
        assert any(i.code == "fiber-not-cycle" for i in report.issues)

    def test_orientation_not_a_permutation(self):
        b = cycle_bundle(3)
        bad = BundleMap(b.total, b.base, b.vertex_map, ((0, 1, 1),))
        report = validate_bundle(bad)
        assert any(i.code == "fiber-not-cycle" for i in report.issues)


class TestExtractionInvariants:
    def test_boundary_commutation(self):
        # restricting a section then extracting equals extracting then
        # taking the boundary word, with no extra shift
        for build in (
            lambda: product_bundle(edge_base(), 3),
            lambda: product_bundle(triangle_base(), 3),
            lambda: product_bundle(tetra_boundary(), 3),
        ):
            b = build()
            for V in b.base.simplices:
                if len(V) == 1:
                    continue
                view = elementary_view(b, V)
                for j in range(len(V)):
                    U = V[:j] + V[j + 1:]
                    delta = delete_index_face(j, len(V))
                    for S in view.zero_sections:
                        restricted = tuple(
                            z for z in S if b.vertex_map[z] != V[j]
                        )
                        left, _ = boundary_word(extract_word(b, V, S), delta)
                        right = extract_word(b, U, restricted)
                        assert left == right

    def test_parity_section_independent_on_triangles(self):
        b = product_bundle(tetra_boundary(), 4)
        for V in b.base.simplices:
            if len(V) != 3:
                continue
            view = elementary_view(b, V)
            values = {
                necklace_parity(canonical_necklace(extract_word(b, V, s)))
                for s in view.zero_sections
            }
            assert len(values) == 1

    def test_default_choice_is_anchor(self):
        b = product_bundle(edge_base(), 3)
        choice = default_section_choice(b)
        for i, U in enumerate(b.base.simplices):
            view = elementary_view(b, U)
            assert choice.sections[i] == view.zero_sections[0]
            assert choice.sections[i] == min(view.zero_sections)

    def test_any_section_choice_round_trips(self):
        b = product_bundle(edge_base(), 3)
        views = [elementary_view(b, U) for U in b.base.simplices]
        pools = [v.zero_sections for v in views]
        for combo in itertools.islice(itertools.product(*pools), 0, None, 7):
            d = extract_decoration(b, SectionChoice(tuple(combo)))
            assert validate_decoration(d).ok

    def test_cycle_bundle_matches_product_over_point(self):
        point = LocallyOrderedComplex.from_maximal(1, [(0,)])
        a = cycle_bundle(4)
        c = product_bundle(point, 4)
        assert a.total.simplices == c.total.simplices
        assert extract_word(a, (0,), (0,)) == extract_word(c, (0,), (0,))
