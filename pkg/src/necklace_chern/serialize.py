"""JSON input and output for complexes, bundle maps, and decorations.

All three schemas carry a version field "v": 1. Simplex ids used in
decoration files are indices into the canonical simplex list of the base
complex, which is exactly the order stored in the file.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, Union

from .bundles import BundleMap
from .complexes import LocallyOrderedComplex
from .decorations import Decoration
from .errors import InvalidInputError
from .words_necklaces import Word

__all__ = [
    "SCHEMA_VERSION",
    "complex_to_data",
    "complex_from_data",
    "bundle_to_data",
    "bundle_from_data",
    "decoration_to_data",
    "decoration_from_data",
    "save_json",
    "load_complex",
    "load_bundle",
    "load_decoration",
    "save_complex",
    "save_bundle",
    "save_decoration",
    "packaged_data",
    "packaged_bundle_names",
    "hopf_bundle",
    "trivial_bundle",
    "boundary_tetrahedron",
]

SCHEMA_VERSION = 1


def _require_version(data: dict, what: str) -> None:
    if not isinstance(data, dict):
        raise InvalidInputError(f"{what} file must contain a JSON object")
    if data.get("v") != SCHEMA_VERSION:
        raise InvalidInputError(
            f"{what} file must declare schema version \"v\": {SCHEMA_VERSION}"
        )


def _int_list(raw, what: str) -> list:
    if not isinstance(raw, list) or any(
        not isinstance(x, int) or isinstance(x, bool) for x in raw
    ):
        raise InvalidInputError(f"{what} must be a list of integers")
    return list(raw)


def complex_to_data(c: LocallyOrderedComplex, versioned: bool = True) -> dict:
    data = {
        "vertices": c.vertex_count,
        "simplices": [list(s) for s in c.simplices],
    }
    if versioned:
        data["v"] = SCHEMA_VERSION
    return data


def complex_from_data(data: dict, versioned: bool = True) -> LocallyOrderedComplex:
    if versioned:
        _require_version(data, "complex")
    elif not isinstance(data, dict):
        raise InvalidInputError("complex data must be a JSON object")
    vertices = data.get("vertices")
    if not isinstance(vertices, int) or isinstance(vertices, bool):
        raise InvalidInputError("\"vertices\" must be an integer")
    raw = data.get("simplices")
    if not isinstance(raw, list):
        raise InvalidInputError("\"simplices\" must be a list")
    simplices = tuple(
        tuple(_int_list(s, "each simplex")) for s in raw
    )
    return LocallyOrderedComplex(vertices, simplices)


def bundle_to_data(b: BundleMap) -> dict:
    return {
        "v": SCHEMA_VERSION,
        "total": complex_to_data(b.total, versioned=False),
        "base": complex_to_data(b.base, versioned=False),
        "vertex_map": list(b.vertex_map),
        "fiber_orientation": {
            str(v): list(cycle) for v, cycle in enumerate(b.fiber_orientation)
        },
    }


def bundle_from_data(data: dict) -> BundleMap:
    _require_version(data, "bundle")
    total = complex_from_data(data.get("total"), versioned=False)
    base = complex_from_data(data.get("base"), versioned=False)
    vertex_map = tuple(_int_list(data.get("vertex_map"), "\"vertex_map\""))
    raw_orient = data.get("fiber_orientation")
    if not isinstance(raw_orient, dict):
        raise InvalidInputError(
            "\"fiber_orientation\" must map base vertices to vertex lists"
        )
    cycles = {}
    for key, cycle in raw_orient.items():
        try:
            v = int(key)
        except (TypeError, ValueError):
            raise InvalidInputError(
                f"fiber_orientation key {key!r} is not a base vertex"
            )
        cycles[v] = tuple(_int_list(cycle, f"fiber over vertex {v}"))
    if sorted(cycles) != list(range(base.vertex_count)):
        raise InvalidInputError(
            "fiber_orientation must list every base vertex exactly once"
        )
    orientation = tuple(cycles[v] for v in range(base.vertex_count))
    return BundleMap(total, base, vertex_map, orientation)


def decoration_to_data(d: Decoration) -> dict:
    words = {
        str(i): list(d.words[i].letters) for i in range(len(d.base.simplices))
    }
    shifts = {}
    for i, s in enumerate(d.base.simplices):
        if len(s) < 2:
            continue
        for j in range(len(s)):
            shifts[f"{i}/{j}"] = d.shifts[i][j]
    return {
        "v": SCHEMA_VERSION,
        "base": complex_to_data(d.base, versioned=False),
        "words": words,
        "shifts": shifts,
    }


def decoration_from_data(data: dict) -> Decoration:
    _require_version(data, "decoration")
    base = complex_from_data(data.get("base"), versioned=False)
    raw_words = data.get("words")
    raw_shifts = data.get("shifts")
    if not isinstance(raw_words, dict) or not isinstance(raw_shifts, dict):
        raise InvalidInputError(
            "decoration file needs \"words\" and \"shifts\" objects"
        )
    words: Dict[int, Word] = {}
    for key, letters in raw_words.items():
        try:
            i = int(key)
        except (TypeError, ValueError):
            raise InvalidInputError(f"word key {key!r} is not a simplex id")
        if not 0 <= i < len(base.simplices):
            raise InvalidInputError(f"word key {key} is not a simplex id")
        words[i] = Word(
            tuple(_int_list(letters, f"word for simplex {i}")),
            len(base.simplices[i]),
        )
    shifts: Dict[tuple, int] = {}
    for key, t in raw_shifts.items():
        parts = str(key).split("/")
        try:
            i, j = int(parts[0]), int(parts[1])
        except (IndexError, ValueError):
            raise InvalidInputError(
                f"shift key {key!r} is not of the form \"<id>/<face>\""
            )
        if isinstance(t, bool) or not isinstance(t, int):
            raise InvalidInputError(f"shift {key!r} must be an integer")
        shifts[(i, j)] = t
    try:
        return Decoration.from_maps(base, words, shifts)
    except KeyError as missing:
        raise InvalidInputError(f"decoration file is missing entry {missing}")


def save_json(data: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(
        json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _load(path: Union[str, Path], what: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InvalidInputError(f"cannot read {what} file {path}: {err}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidInputError(f"{what} file {path} is not valid JSON: {err}")


def load_complex(path: Union[str, Path]) -> LocallyOrderedComplex:
    return complex_from_data(_load(path, "complex"))


def load_bundle(path: Union[str, Path]) -> BundleMap:
    return bundle_from_data(_load(path, "bundle"))


def load_decoration(path: Union[str, Path]) -> Decoration:
    return decoration_from_data(_load(path, "decoration"))


def packaged_data(name: str) -> dict:
    """Parse one of the JSON files shipped with the package."""
    from importlib import resources

    ref = resources.files("necklace_chern").joinpath("data", name)
    try:
        text = ref.read_text(encoding="utf-8")
    except (FileNotFoundError, OSError):
        raise InvalidInputError(f"no packaged data file named {name!r}")
    return json.loads(text)


def packaged_bundle_names() -> tuple:
    """The bundle files of the shipped example corpus."""
    return ("hopf_bundle.json", "trivial_bundle.json")


def hopf_bundle() -> BundleMap:
    """The 12-vertex triangulated Hopf bundle over the tetrahedron
    boundary; its Chern number has absolute value one."""
    return bundle_from_data(packaged_data("hopf_bundle.json"))


def trivial_bundle() -> BundleMap:
    """The product circle bundle over the tetrahedron boundary with
    three-vertex fibers; its Chern number is zero."""
    return bundle_from_data(packaged_data("trivial_bundle.json"))


def boundary_tetrahedron() -> LocallyOrderedComplex:
    """The four-triangle sphere used throughout the examples."""
    return complex_from_data(packaged_data("boundary_tetrahedron.json"))


def save_complex(c: LocallyOrderedComplex, path: Union[str, Path]) -> None:
    save_json(complex_to_data(c), path)


def save_bundle(b: BundleMap, path: Union[str, Path]) -> None:
    save_json(bundle_to_data(b), path)


def save_decoration(d: Decoration, path: Union[str, Path]) -> None:
    save_json(decoration_to_data(d), path)
