"""Command-line front-end: Lyndon bases, group products, the Bernoulli
series operator, and the randomized verification suites.

Exit codes: 0 success, 1 verification found violations, 2 bad arguments or
a rejected algebra declaration.  Output is fully buffered, so argument
errors never leave partial output behind, and a fixed seed reproduces a
report byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebras import (
    Abelian,
    AlgebraValidationError,
    Deg0LieAlgebra,
    FreeNilpotent,
    load_structure_constants,
    random_element,
)
from .bch import bch_product, bernoulli_operator, universal_bch
from .expr import ExpressionError
from .freelie import Alphabet, lyndon_words, witt_dimension
from .realization import (
    hom_maps,
    random_bar_simplex,
    random_hom_simplex,
    to_bar_dropping_inverse,
    verify_isomorphism,
)
from .simplicial import bar_maps, check_simplicial_identities
from .bch import exp_group

import random as _random


class CliError(Exception):
    """Usage or validation problem; maps to exit code 2."""


def _letters(spec: str) -> list[str]:
    if not spec:
        raise CliError("empty alphabet")
    return spec.split(",") if "," in spec else list(spec)


def build_algebra(spec: str, cap_override: int | None = None) -> Deg0LieAlgebra:
    """Parse 'free:<letters>:<cap>' | 'abelian:<dim>' | 'sc:<path>:<cap>'."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "free":
            letters_part, sep, cap_part = rest.rpartition(":")
            if not sep:
                raise CliError(f"expected free:<letters>:<cap>, got {spec!r}")
            cap = cap_override if cap_override is not None else int(cap_part)
            return FreeNilpotent(Alphabet(_letters(letters_part)), cap)
        if kind == "abelian":
            if cap_override is not None:
                raise CliError("--cap does not apply to abelian:<dim>")
            return Abelian(int(rest))
        if kind == "sc":
            path_part, sep, cap_part = rest.rpartition(":")
            if not sep:
                raise CliError(f"expected sc:<path>:<cap>, got {spec!r}")
            cap = cap_override if cap_override is not None else int(cap_part)
            text = Path(path_part).read_text()
            return load_structure_constants(text, cap)
    except CliError:
        raise
    except (ValueError, OSError) as exc:
        raise CliError(f"invalid algebra spec {spec!r}: {exc}") from None
    raise CliError(f"unknown algebra kind {kind!r} "
                   "(expected free:<letters>:<cap>, abelian:<dim> or sc:<path>:<cap>)")


def _parse_element(algebra: Deg0LieAlgebra, text: str):
    try:
        return algebra.parse(text)
    except ExpressionError as exc:
        raise CliError(f"cannot parse {text!r}: {exc}") from None


def _emit(payload: dict, text: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    return text


def cmd_basis(args) -> tuple[int, str]:
    alphabet = Alphabet(_letters(args.alphabet))
    if args.max_weight < 1:
        raise CliError("max weight must be >= 1")
    words = lyndon_words(alphabet, args.max_weight)
    by_weight: dict[int, list[str]] = {}
    for word in words:
        by_weight.setdefault(word.weight, []).append(str(word))
    lines = []
    payload_weights = []
    for weight in range(1, args.max_weight + 1):
        names = by_weight.get(weight, [])
        dimension = witt_dimension(len(alphabet), weight)
        lines.append(f"weight {weight}: dim {dimension}: {' '.join(names)}".rstrip())
        payload_weights.append(
            {"weight": weight, "dimension": dimension, "words": names})
    lines.append(f"total: {len(words)}")
    payload = {"alphabet": list(alphabet.letters), "max_weight": args.max_weight,
               "weights": payload_weights, "total": len(words)}
    return 0, _emit(payload, "\n".join(lines), args.format)


def cmd_bch(args) -> tuple[int, str]:
    if args.table is not None:
        if args.table < 1:
            raise CliError("--table needs a cap >= 1")
        element = universal_bch(args.table).element
        payload = {"algebra": "universal", "cap": args.table, "element": str(element)}
        return 0, _emit(payload, str(element), args.format)
    if args.algebra is None or args.left is None or args.right is None:
        raise CliError("need an algebra and two expressions (or --table N)")
    algebra = build_algebra(args.algebra, args.cap)
    a = _parse_element(algebra, args.left)
    b = _parse_element(algebra, args.right)
    result = algebra.format_element(bch_product(algebra, a, b))
    payload = {"algebra": algebra.label(), "cap": algebra.cap,
               "left": args.left, "right": args.right, "element": result}
    return 0, _emit(payload, result, args.format)


def cmd_bernoulli(args) -> tuple[int, str]:
    algebra = build_algebra(args.algebra, args.cap)
    x = _parse_element(algebra, args.x)
    y = _parse_element(algebra, args.y)
    result = algebra.format_element(bernoulli_operator(algebra, x, y))
    payload = {"algebra": algebra.label(), "cap": algebra.cap,
               "x": args.x, "y": args.y, "element": result}
    return 0, _emit(payload, result, args.format)


def cmd_iso_check(args) -> tuple[int, str]:
    algebra = build_algebra(args.algebra, args.cap)
    if args.dims < 1:
        raise CliError("--dims must be >= 1")
    if args.samples < 1:
        raise CliError("--samples must be >= 1")
    encode = to_bar_dropping_inverse if args.corrupt == "psi" else None
    report = verify_isomorphism(algebra, n_max=args.dims, samples=args.samples,
                                seed=args.seed, encode=encode)
    code = 0 if report.ok else 1
    return code, _emit(report.to_dict(), report.to_text(), args.format)


def cmd_simplicial_check(args) -> tuple[int, str]:
    algebra = build_algebra(args.algebra, args.cap)
    if args.dims < 0:
        raise CliError("--dims must be >= 0")
    if args.samples < 1:
        raise CliError("--samples must be >= 1")
    rng = _random.Random(args.seed)
    hom_samples = {n: [random_hom_simplex(algebra, n, rng) for _ in range(args.samples)]
                   for n in range(args.dims + 1)}
    bar_samples = {n: [random_bar_simplex(algebra, n, rng) for _ in range(args.samples)]
                   for n in range(args.dims + 1)}
    group = exp_group(algebra)
    bar_report = check_simplicial_identities(bar_maps(group), bar_samples, args.dims)
    hom_report = check_simplicial_identities(hom_maps(algebra), hom_samples, args.dims)
    ok = bar_report.ok and hom_report.ok
    lines = [f"simplicial identity check: algebra={algebra.label()} "
             f"n_max={args.dims} samples={args.samples} seed={args.seed}",
             "bar side: " + bar_report.to_text(),
             "tuple side: " + hom_report.to_text(),
             f"result: {'PASS' if ok else 'FAIL'}"]
    payload = {"algebra": algebra.label(), "n_max": args.dims,
               "samples": args.samples, "seed": args.seed,
               "bar": bar_report.to_dict(), "tuple": hom_report.to_dict(),
               "ok": ok}
    return (0 if ok else 1), _emit(payload, "\n".join(lines), args.format)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bchbar",
        description="Exact free Lie algebras, the BCH group, and simplicial verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("basis", help="list Lyndon words and per-weight dimensions")
    p.add_argument("alphabet", help="letters, e.g. 'xy' or 'u1,u2'")
    p.add_argument("max_weight", type=int)
    add_format(p)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("bch", help="group product of two expressions")
    p.add_argument("algebra", nargs="?", help="free:<letters>:<cap> | abelian:<dim> | sc:<path>:<cap>")
    p.add_argument("left", nargs="?")
    p.add_argument("right", nargs="?")
    p.add_argument("--table", type=int, default=None,
                   help="print the universal two-letter product at this cap")
    p.add_argument("--cap", type=int, default=None, help="override the declared cap")
    add_format(p)
    p.set_defaults(func=cmd_bch)

    p = sub.add_parser("bernoulli", help="apply the series ad_x/(e^{ad_x}-1) to y")
    p.add_argument("algebra")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--cap", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("iso-check",
                       help="verify the encoding onto the bar construction")
    p.add_argument("algebra")
    p.add_argument("--dims", type=int, default=4)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--corrupt", choices=("psi",), default=None,
                   help="test hook: corrupt the encoding to prove the check bites")
    add_format(p)
    p.set_defaults(func=cmd_iso_check)

    p = sub.add_parser("simplicial-check",
                       help="run the five-identity suite on both simplicial sets")
    p.add_argument("algebra")
    p.add_argument("--dims", type=int, default=4)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_simplicial_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        code, output = args.func(args)
    except (CliError, AlgebraValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if output:
        print(output)
    return code


def run() -> None:
    sys.exit(main())
