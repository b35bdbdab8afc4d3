"""Command line: verify, convert, example, bracket.

Exit status: 0 when the structure passes (or the command succeeds), 1 when a
verification fails, 2 on malformed input or invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import tensors as T
from .bracket import big_bracket
from .crossed import (
    bcm_to_lie2bialgebra,
    lie2bialgebra_to_bcm,
    matched_pair_defects,
    matched_pair_from_bcm,
    verify_bialgebra_cm,
    verify_crossed_module,
)
from .examples import ax_plus_b_bialgebra, matrix_example, so3, string_lie2_data, trivial_bcm
from .fileformat import (
    FileFormatError,
    StructureFile,
    bcm_file,
    element_as_bialgebra,
    maps_file,
    parse_bialgebra_file,
    parse_element_document,
    parse_structure_file,
    serialize_element,
    serialize_structure_file,
)
from .report import Report
from .structures import (
    SIGNATURE_NAMES,
    assemble_bialgebra,
    project_algebra,
    project_coalgebra,
    verify_bialgebra,
    verify_weak_lie2_algebra,
    verify_weak_lie2_coalgebra,
)
from .symalg import ParseError, component, parse_element

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

MODES = ("algebra", "coalgebra", "bialgebra", "crossed-module", "bialgebra-cm", "matched-pair")
DIRECTIONS = ("cm-to-epsilon", "epsilon-to-cm", "maps-to-element", "element-to-maps")
EXAMPLES = ("string", "trivial", "matrix")


class InputError(Exception):
    """Invalid command input; reported with exit status 2."""


def _strict_check(sf: StructureFile, report: Report, keys=("homotopy_h", "eta")) -> None:
    report.add_check("strict")
    for name in keys:
        t = sf.get(name)
        for idx in np.ndindex(t.shape):
            if t[idx] != 0:
                report.fail("strict", (name, *map(str, idx)), t[idx])
                break


def verify_structure(sf: StructureFile, mode: str) -> Report:
    if mode == "algebra":
        return verify_weak_lie2_algebra(sf.algebra())
    if mode == "coalgebra":
        return verify_weak_lie2_coalgebra(sf.coalgebra())
    if mode == "bialgebra":
        return verify_bialgebra(assemble_bialgebra(sf.algebra(), sf.coalgebra()))
    report = Report()
    if mode == "crossed-module":
        _strict_check(sf, report, ("homotopy_h",))
        return report.merge(verify_crossed_module(sf.crossed_module()))
    _strict_check(sf, report)
    if mode == "bialgebra-cm":
        return report.merge(verify_bialgebra_cm(sf.bialgebra_cm()))
    if mode == "matched-pair":
        return report.merge(matched_pair_defects(matched_pair_from_bcm(sf.bialgebra_cm())))
    raise InputError(f"unknown mode {mode!r}")


def format_report(report: Report, mode: str, fmt: str, elapsed: Optional[float] = None) -> str:
    if fmt == "machine":
        doc = {"mode": mode, **report.to_dict()}
        if elapsed is not None:
            doc["elapsed_seconds"] = round(elapsed, 6)
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    lines = [f"mode: {mode}", *report.summary_lines()]
    verdict = "PASS" if report.passed else "FAIL"
    lines.append(f"RESULT: {verdict} ({len(report.checks)} checks, {len(report.failed_checks())} failing)")
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _rational(text: str) -> Fraction:
    try:
        return T.to_fraction(text)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"not an exact rational: {text!r}") from None


# -- commands ------------------------------------------------------------------

def cmd_verify(args) -> int:
    sf = parse_structure_file(_read(args.file))
    start = time.perf_counter()
    report = verify_structure(sf, args.mode)
    elapsed = time.perf_counter() - start
    _emit(format_report(report, args.mode, args.format, elapsed if args.format == "machine" else None), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _verification_failure(report: Report, what: str) -> int:
    sys.stderr.write(f"input is not {what}:\n" + "\n".join(report.summary_lines()) + "\n")
    return EXIT_FAIL


def cmd_convert(args) -> int:
    text = _read(args.file)
    d = args.direction
    if d == "maps-to-element":
        sf = parse_structure_file(text)
        _emit(serialize_element(assemble_bialgebra(sf.algebra(), sf.coalgebra()).eps), args.out)
        return EXIT_PASS
    if d == "element-to-maps":
        e = element_as_bialgebra(parse_element_document(text))
        _emit(serialize_structure_file(maps_file(project_algebra(e), project_coalgebra(e))), args.out)
        return EXIT_PASS
    if d == "cm-to-epsilon":
        sf = parse_structure_file(text)
        if not sf.is_strict():
            raise InputError("a Lie bialgebra crossed module has zero homotopy_h and eta")
        bcm = sf.bialgebra_cm()
        report = verify_bialgebra_cm(bcm)
        if not report.passed:
            return _verification_failure(report, "a Lie bialgebra crossed module")
        _emit(serialize_element(bcm_to_lie2bialgebra(bcm, check=False).eps), args.out)
        return EXIT_PASS
    if d == "epsilon-to-cm":
        e = element_as_bialgebra(parse_element_document(text))
        if not e.is_strict:
            raise InputError("epsilon is not strict: its homotopy and eta components must vanish")
        report = verify_bialgebra(e)
        if not report.passed:
            return _verification_failure(report, "a Lie 2-bialgebra")
        _emit(serialize_structure_file(bcm_file(lie2bialgebra_to_bcm(e), e.space)), args.out)
        return EXIT_PASS
    raise InputError(f"unknown direction {d!r}")


def build_example(name: str, hbar: str = "1", x: Optional[str] = None, n: int = 2,
                  seed: Optional[str] = None) -> StructureFile:
    if name == "string":
        g = so3()
        coords = [_rational(s) for s in x.split(",")] if x else [1] + [0] * (g.dim - 1)
        if len(coords) != g.dim:
            raise InputError(f"--x needs {g.dim} comma-separated coordinates")
        return maps_file(*string_lie2_data(g, coords, _rational(hbar)))
    if name == "trivial":
        seed_bialg = parse_bialgebra_file(_read(seed)) if seed else ax_plus_b_bialgebra()
        try:
            return bcm_file(trivial_bcm(seed_bialg))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    if name == "matrix":
        if n not in (2, 3):
            raise InputError("--n must be 2 or 3")
        return bcm_file(matrix_example(n))
    raise InputError(f"unknown example {name!r}")


def cmd_example(args) -> int:
    sf = build_example(args.name, args.hbar, args.x, args.n, args.seed)
    _emit(serialize_structure_file(sf), args.out)
    return EXIT_PASS


def bracket_names(sf: StructureFile) -> dict:
    eps = assemble_bialgebra(sf.algebra(), sf.coalgebra()).eps
    names = {"eps": eps}
    for sig, label in SIGNATURE_NAMES.items():
        names[label] = component(eps, *sig)
    return names


def cmd_bracket(args) -> int:
    sf = parse_structure_file(_read(args.file))
    names = bracket_names(sf)
    e1 = parse_element(args.expr1, sf.space, names)
    e2 = parse_element(args.expr2, sf.space, names)
    _emit(big_bracket(e1, e2).render() + "\n", args.out)
    return EXIT_PASS


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lie2bialg", description="Exact verification of Lie 2-bialgebra structures.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a structure file")
    v.add_argument("file")
    v.add_argument("--mode", choices=MODES, required=True)
    v.add_argument("--format", choices=("text", "machine"), default="text")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("convert", help="translate between crossed modules, maps and elements")
    c.add_argument("file")
    c.add_argument("--direction", choices=DIRECTIONS, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_convert)

    e = sub.add_parser("example", help="emit a worked example as a structure file")
    e.add_argument("name", choices=EXAMPLES)
    e.add_argument("--hbar", default="1", help="string example: rational scale of the homotopy")
    e.add_argument("--x", help="string example: comma-separated coordinates of x in so(3)")
    e.add_argument("--n", type=int, default=2, help="matrix example: matrix size (2 or 3)")
    e.add_argument("--seed", help="trivial example: Lie bialgebra seed file")
    e.add_argument("--out")
    e.set_defaults(func=cmd_example)

    b = sub.add_parser("bracket", help="big bracket of two expressions over a structure file")
    b.add_argument("file")
    b.add_argument("expr1")
    b.add_argument("expr2")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bracket)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    try:
        return args.func(args)
    except (InputError, FileFormatError, ParseError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
