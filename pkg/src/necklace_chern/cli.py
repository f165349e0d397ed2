"""Command-line surface for parities, verification suites, bundle
extraction, Chern cochains, and the realizable-range search.

Exit codes: 0 success, 1 check failure, 2 input error, 3 resource bound.
All rational output is exact, rendered in lowest terms as "p/q". Reports
for identical inputs and flags are byte-identical apart from the final
timing line, which --no-timing suppresses. The --threads flag is accepted
on every subcommand; the implementation is sequential and deterministic,
so output never depends on it.
"""

from __future__ import annotations

import argparse
import itertools
import math
import random
import sys
import time
from fractions import Fraction
from typing import List, Optional

from .chern import (
    FundamentalCycle,
    achievable_chern_numbers,
    chern_cochain,
    chern_number,
    fundamental_cycle,
)
from .bundles import extract_decoration, validate_bundle
from .cyclic_category import (
    dual_degeneracy,
    factorize_shift,
)
from .cyclic_forms import (
    AffineSimplexMap,
    ExteriorForm,
    connection_form,
    curvature,
    exterior_derivative,
    pullback_affine,
    pullback_cyclic_gauge,
    wedge_power,
)
from .decorations import validate_decoration
from .errors import (
    InvalidInputError,
    NonIntegralError,
    NonOrientableError,
    NotClosedError,
    ResourceBudgetError,
)
from .exact_linalg import (
    ExactMatrix,
    matrix_parity,
    normalized_word_matrix,
    okada_matrix,
    pfaffian,
    sum_maximal_minors,
)
from .serialize import (
    load_bundle,
    load_complex,
    load_decoration,
    save_decoration,
)
from .words_necklaces import FaceOperator, rational_parity, word

__all__ = ["main"]

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_INPUT_ERROR = 2
EXIT_RESOURCE_BOUND = 3

_VERIFY_SEED = 20210

class CheckFailure(Exception):
    """A verification ran to completion and found a violation."""


def _positive(kind: str, value: int) -> int:
    if value < 1:
        raise InvalidInputError(f"{kind} must be at least 1, got {value}")
    return value


# =========================================================================
# parity
# =========================================================================


def cmd_parity(args: argparse.Namespace) -> int:
    w = word(args.letters)
    brute = rational_parity(w)
    minors = matrix_parity(normalized_word_matrix(w))
    print(f"brute force P = {brute}")
    print(f"minor sum P = {minors}")
    if brute != minors:
        print("FAIL parity computations disagree")
        raise CheckFailure
    if w.alphabet_size % 2 == 0:
        print(f"P = {brute} (not rotation-invariant: even alphabet)")
    else:
        print(f"P = {brute}")
    return EXIT_OK


# =========================================================================
# verify suites
# =========================================================================


def _verify_okada(args: argparse.Namespace) -> None:
    rows_bound = _positive("--rows", args.rows)
    cols_bound = _positive("--cols", args.cols)
    samples = _positive("--samples", args.samples)
    rng = random.Random(_VERIFY_SEED)
    odd = even = 0
    for index in range(samples):
        cols = rng.randint(1, min(cols_bound, rows_bound))
        rows = rng.randint(cols, rows_bound)
        x = ExactMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        )
        if pfaffian(okada_matrix(x)) != sum_maximal_minors(x):
            print(f"FAIL okada identity at sample {index}: {x.entries}")
            raise CheckFailure
        if cols % 2 == 1:
            odd += 1
        else:
            even += 1
    print(
        f"PASS okada Pfaffian identity: {samples} samples "
        f"({odd} odd-column, {even} even-column), sizes up to "
        f"{rows_bound}x{cols_bound}"
    )


def _verify_identities(args: argparse.Namespace) -> None:
    bound = _positive("--max-k", args.max_k)

    def all_faces(size: int, codomain: int):
        for image in itertools.combinations(range(codomain), size):
            yield FaceOperator(image, codomain)

    pairs = 0
    for m in range(1, bound + 1):
        for mid in range(1, m + 1):
            for d1 in all_faces(mid, m):
                for inner in range(1, mid + 1):
                    for d2 in all_faces(inner, mid):
                        composite = FaceOperator(
                            tuple(d1.image[v] for v in d2.image), m
                        )
                        lhs = dual_degeneracy(composite).values
                        d1_op = dual_degeneracy(d1)
                        d2_op = dual_degeneracy(d2)
                        rhs = tuple(d2_op(d1_op(i)) for i in range(m))
                        if lhs != rhs:
                            print(
                                "FAIL duality of composition at "
                                f"{d1.image}->{m}, {d2.image}->{mid}"
                            )
                            raise CheckFailure
                        pairs += 1
    print(
        f"PASS duality reverses composition: {pairs} composable pairs "
        f"(codomain size <= {bound})"
    )

    checks = 0
    for m in range(1, bound + 1):
        for size in range(1, m + 1):
            for d in all_faces(size, m):
                for i in range(m):
                    face, shift = factorize_shift(d, i)
                    target = tuple((d.image[x] - i) % m for x in range(size))
                    found = []
                    for image in itertools.combinations(range(m), size):
                        candidate = FaceOperator(image, m)
                        for s in range(size):
                            if all(
                                candidate((x - s) % size) == target[x]
                                for x in range(size)
                            ):
                                found.append((image, s))
                    if size == 1:
                        ok = {p[0] for p in found} == {face.image}
                    else:
                        ok = found == [(face.image, shift)]
                    if not ok:
                        print(
                            f"FAIL factorization not unique for {d.image}->"
                            f"{m} rotated by {i}: found {found}"
                        )
                        raise CheckFailure
                    checks += 1
    print(
        f"PASS cyclic factorization exists and is unique: {checks} "
        f"(face, rotation) pairs (codomain size <= {bound})"
    )


def _verify_forms(args: argparse.Namespace) -> None:
    n_bound = args.n
    h_bound = args.h
    if n_bound < 0 or h_bound < 0:
        raise InvalidInputError("--n and --h must be nonnegative")
    gauge_checks = 0
    for n in range(n_bound + 1):
        alpha = connection_form(n)
        for i in range(n + 1):
            if pullback_cyclic_gauge(alpha, n, i) != alpha:
                print(f"FAIL gauge invariance at n={n}, shift {i}")
                raise CheckFailure
            gauge_checks += 1
    print(
        f"PASS connection invariant under all cyclic gauges: "
        f"{gauge_checks} checks (n <= {n_bound})"
    )

    for n in range(n_bound + 1):
        if exterior_derivative(connection_form(n)) != curvature(n):
            print(f"FAIL derivative of connection at n={n}")
            raise CheckFailure
    print(
        f"PASS exterior derivative of connection equals curvature "
        f"(n <= {n_bound})"
    )

    rng = random.Random(_VERIFY_SEED)
    pull_checks = 0
    for h in range(1, h_bound + 1):
        cols = 2 * h + 1
        if cols > 7:
            break
        for _ in range(10):
            rows = rng.randint(cols, 7)
            columns = []
            for _ in range(cols):
                weights = [rng.randint(0, 4) for _ in range(rows)]
                if sum(weights) == 0:
                    weights[rng.randrange(rows)] = 1
                total = sum(weights)
                columns.append([Fraction(v, total) for v in weights])
            a = AffineSimplexMap(
                ExactMatrix.from_rows(
                    [[columns[j][i] for j in range(cols)] for i in range(rows)]
                )
            )
            got = pullback_affine(wedge_power(curvature(rows - 1), h), a)
            scale = (
                Fraction((-1) ** h)
                * math.factorial(h)
                * sum_maximal_minors(a.matrix)
            )
            expected = ExteriorForm.term(cols - 1, tuple(range(cols - 1)), scale)
            if got != expected:
                print(
                    f"FAIL curvature power pullback at h={h}, "
                    f"matrix {a.matrix.entries}"
                )
                raise CheckFailure
            pull_checks += 1
    print(
        f"PASS curvature power pullback equals scaled minor sum: "
        f"{pull_checks} stochastic matrices (h <= {h_bound})"
    )


def cmd_verify(args: argparse.Namespace) -> int:
    suite = args.suite
    if suite == "okada":
        _verify_okada(args)
    elif suite == "identities":
        _verify_identities(args)
    elif suite == "forms":
        _verify_forms(args)
    else:
        raise InvalidInputError(f"unknown suite {suite!r}")
    return EXIT_OK


# =========================================================================
# extract / chern / range
# =========================================================================


def _report_issues(label: str, report) -> None:
    if report.ok:
        print(f"{label}: PASS")
        return
    print(f"{label}: FAIL")
    for issue in report.issues:
        print(f"  {issue}")
    raise CheckFailure


def cmd_extract(args: argparse.Namespace) -> int:
    b = load_bundle(args.bundle)
    _report_issues("bundle validation", validate_bundle(b))
    d = extract_decoration(b)
    top = b.base.dimension
    for s in b.base.simplices_of_dimension(top):
        print(f"word {tuple(s)} = {d.word_for(s).letters}")
    save_decoration(d, args.out)
    print(f"decoration written: {args.out}")
    _report_issues("round-trip validation", validate_decoration(d))
    return EXIT_OK


def cmd_chern(args: argparse.Namespace) -> int:
    h = args.h
    if h < 0:
        raise InvalidInputError("--h must be nonnegative")
    d = load_decoration(args.decoration)
    _report_issues("decoration validation", validate_decoration(d))
    cochain = chern_cochain(d, h, validate=False)
    for s, value in cochain.items():
        print(f"c{tuple(s)} = {value}")
    if h != 1 or d.base.dimension != 2:
        return EXIT_OK
    if args.cycle == "auto":
        try:
            fc = fundamental_cycle(d.base)
        except (NotClosedError, NonOrientableError) as err:
            print(f"no chern number: {err}")
            return EXIT_OK
    else:
        fc = _load_cycle(args.cycle, d)
    try:
        value = chern_number(d, fc, validate=False)
    except NonIntegralError as err:
        print(f"FAIL {err}")
        raise CheckFailure
    print(f"c1 = {value}")
    return EXIT_OK


def _load_cycle(path: str, d) -> FundamentalCycle:
    import json
    from pathlib import Path

    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise InvalidInputError(f"cannot read cycle file {path}: {err}")
    except json.JSONDecodeError as err:
        raise InvalidInputError(f"cycle file {path} is not valid JSON: {err}")
    if not isinstance(data, dict) or data.get("v") != 1:
        raise InvalidInputError("cycle file must declare \"v\": 1")
    coeffs = data.get("coefficients")
    if not isinstance(coeffs, list):
        raise InvalidInputError("cycle file needs a \"coefficients\" list")
    return FundamentalCycle(d.base, tuple(coeffs))


def cmd_range(args: argparse.Namespace) -> int:
    base = load_complex(args.base)
    if args.max_len < 1:
        raise InvalidInputError("--max-len must be at least 1")
    achieved = achievable_chern_numbers(base, args.max_len)
    print("{" + ",".join(str(c) for c in sorted(achieved)) + "}")
    return EXIT_OK


# =========================================================================
# argument parsing and dispatch
# =========================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--threads",
        type=int,
        default=None,
        metavar="N",
        help="parallelism bound; results are identical for every N",
    )
    common.add_argument(
        "--no-timing",
        action="store_true",
        help="suppress the trailing timing line",
    )

    parser = argparse.ArgumentParser(
        prog="necklace-chern",
        description=(
            "Exact local Chern class computations for triangulated "
            "circle bundles."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "parity",
        parents=[common],
        help="rational parity of a cyclic word, three ways",
    )
    p.add_argument("letters", nargs="+", type=int)
    p.set_defaults(func=cmd_parity)

    v = sub.add_parser(
        "verify",
        parents=[common],
        help="run an exact verification suite",
    )
    v.add_argument("suite", choices=("identities", "forms", "okada"))
    v.add_argument("--rows", type=int, default=7)
    v.add_argument("--cols", type=int, default=5)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--max-k", type=int, default=5)
    v.add_argument("--n", type=int, default=4)
    v.add_argument("--h", type=int, default=2)
    v.set_defaults(func=cmd_verify)

    fv = sub.add_parser(
        "forms-verify",
        parents=[common],
        help="run the connection-form suite (same as: verify forms)",
    )
    fv.add_argument("--n", type=int, default=4)
    fv.add_argument("--h", type=int, default=2)
    fv.set_defaults(func=cmd_verify, suite="forms")

    e = sub.add_parser(
        "extract",
        parents=[common],
        help="validate a bundle file and write its decoration",
    )
    e.add_argument("--bundle", required=True)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_extract)

    c = sub.add_parser(
        "chern",
        parents=[common],
        help="evaluate the local Chern cochain of a decoration",
    )
    c.add_argument("--decoration", required=True)
    c.add_argument("--h", type=int, default=1)
    c.add_argument(
        "--cycle",
        default="auto",
        help="fundamental cycle: \"auto\" or a JSON coefficient file",
    )
    c.set_defaults(func=cmd_chern)

    r = sub.add_parser(
        "range",
        parents=[common],
        help="achievable Chern numbers over a closed surface",
    )
    r.add_argument("--base", required=True)
    r.add_argument("--max-len", type=int, required=True)
    r.set_defaults(func=cmd_range)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None and args.threads < 1:
        print("input error: --threads must be at least 1")
        return EXIT_INPUT_ERROR
    started = time.monotonic()
    try:
        code = args.func(args)
    except CheckFailure:
        code = EXIT_CHECK_FAILURE
    except (InvalidInputError, NotClosedError, NonOrientableError) as err:
        print(f"input error: {err}")
        code = EXIT_INPUT_ERROR
    except ResourceBudgetError as err:
        print(f"resource bound exceeded: {err}")
        code = EXIT_RESOURCE_BOUND
    if not args.no_timing:
        elapsed = (time.monotonic() - started) * 1000.0
        print(f"time: {elapsed:.1f} ms")
    return code


if __name__ == "__main__":
    sys.exit(main())
