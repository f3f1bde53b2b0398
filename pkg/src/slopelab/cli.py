"""Command-line front end.

Slope data is written in a compact grammar: a spec is a comma-separated
list of terms, each term ``slope^mult`` where the slope is an integer or a
fraction ``c/d`` and mult counts the total rank contributed by that slope.
So "2/5^5" is the single rank-5 simple of slope 2/5, and "1/2^4" is two
copies of the rank-2 simple of slope 1/2; the multiplicity must be
divisible by the reduced denominator.

Reports render as a plain table (default) or as canonical JSON: keys
sorted, summands sorted by (slope, c, d), fractions as "c/d" strings, a
"schema" version field, byte-identical across runs for identical input.
The SLOPELAB_FORMAT environment variable sets the default format and
--format overrides it.

Exit codes: 0 success (for classify: the loci are equal), 3 classify
found the loci different, 1 sweep found a violation (expected never), 2
usage, parse, or domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Optional

from slopelab.admissibility import FilteredType, MinusculeHodge, SubSelection
from slopelab.classifier import classify, duality_violations, xor_violations
from slopelab.exactnum import ConvexPolygon, DomainError, ExtCount
from slopelab.slopecalc import SlopeType, normalize

__all__ = ["SlopeSyntaxError", "parse_slopes", "format_slopes", "main"]

SCHEMA_VERSION = 1

_TERM = re.compile(r"^(-?\d+)(?:/(-?\d+))?\^(-?\d+)$")


class SlopeSyntaxError(ValueError):
    """Raised when a slope specification does not match the grammar."""


def parse_slopes(text: str) -> SlopeType:
    """Parse a slope specification such as "0^3,1/2^4" into a SlopeType.

    Each term contributes mult / denominator copies of the reduced simple.
    Syntax errors report the character position of the offending term.
    """
    raw = []
    position = 0
    for chunk in text.split(","):
        term = chunk.strip()
        offset = position + len(chunk) - len(chunk.lstrip())
        position += len(chunk) + 1
        if not _TERM.match(term):
            raise SlopeSyntaxError(
                f"syntax error at position {offset}: "
                f"expected slope^multiplicity, got {term!r}"
            )
        numer, denom, mult = _TERM.match(term).groups()
        c, d, m = int(numer), int(denom) if denom else 1, int(mult)
        if d <= 0:
            raise SlopeSyntaxError(f"slope denominator must be positive in {term!r}")
        if m <= 0:
            raise SlopeSyntaxError(f"multiplicity must be positive in {term!r}")
        slope = Fraction(c, d)
        if m % slope.denominator:
            raise SlopeSyntaxError(
                f"slope {slope.numerator}/{slope.denominator} needs multiplicity "
                f"divisible by {slope.denominator}"
            )
        raw.append((slope.numerator, slope.denominator, m // slope.denominator))
    return normalize(raw)


def format_slopes(iso: SlopeType) -> str:
    """Canonical spec string: terms in summand order, integer slopes bare,
    multiplicity as total rank.  parse_slopes inverts it exactly."""
    terms = []
    for simple, copies in iso.summands:
        slope = str(simple.c) if simple.d == 1 else f"{simple.c}/{simple.d}"
        terms.append(f"{slope}^{copies * simple.d}")
    return ",".join(terms)


def _fraction_str(value) -> str:
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def _slope_type_json(iso: SlopeType) -> dict:
    return {
        "degree": iso.degree,
        "rank": iso.rank,
        "spec": format_slopes(iso),
        "summands": [
            {"c": s.c, "copies": m, "d": s.d, "slope": _fraction_str(s.slope)}
            for s, m in iso.summands
        ],
    }


def _ext_count_json(count: ExtCount):
    return count.count if count.is_finite else "inf"


@dataclass
class Report:
    command: str
    inputs: dict
    result: dict
    table: list[str] = field(default_factory=list)
    exit_code: int = 0

    def render(self, fmt: str) -> str:
        if fmt == "json":
            payload = {
                "command": self.command,
                "input": self.inputs,
                "result": self.result,
                "schema": SCHEMA_VERSION,
            }
            return json.dumps(payload, sort_keys=True, separators=(",", ":"))
        lines = [f"command: {self.command}"]
        lines += [f"{key}: {value}" for key, value in self.inputs.items()]
        lines += self.table
        return "\n".join(lines)


def _parse_hodge(text: str) -> tuple[int, int]:
    match = re.match(r"^(-?\d+),(-?\d+)$", text.strip())
    if not match:
        raise SlopeSyntaxError(f"expected Hodge datum as h,f got {text!r}")
    return int(match.group(1)), int(match.group(2))


def _filtered(args) -> FilteredType:
    iso = parse_slopes(args.iso)
    h, f = _parse_hodge(args.hodge)
    return FilteredType(iso, MinusculeHodge(h, f, iso.rank))


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_classify(args) -> Report:
    iso = parse_slopes(args.iso)
    verdict = classify(iso)
    if verdict.pattern is not None:
        p = verdict.pattern
        pattern_json = {"h": p.h, "h0": p.h0, "h1": p.h1, "kind": p.kind}
        detail = f"pattern: {p.kind}(h1={p.h1}, h={p.h}, h0={p.h0})"
    else:
        w = verdict.witness
        pattern_json = None
        detail = f"witness: {w.kind}({', '.join(map(str, w.params))})"
    witness_json = (
        None
        if verdict.witness is None
        else {"kind": verdict.witness.kind, "params": list(verdict.witness.params)}
    )
    return Report(
        command="classify",
        inputs={"iso": format_slopes(iso)},
        result={"equal": verdict.equal, "pattern": pattern_json, "witness": witness_json},
        table=[f"equal: {_yesno(verdict.equal)}", detail],
        exit_code=0 if verdict.equal else 3,
    )


def _cmd_wadm(args) -> Report:
    filtered = _filtered(args)
    checks = filtered.subobject_checks()
    admissible = filtered.is_weakly_admissible()
    rows = []
    table = [
        f"t_newton: {filtered.t_newton}",
        f"t_hodge: {filtered.t_hodge}",
        f"module degree: {filtered.module_degree}",
        f"weakly admissible: {_yesno(admissible)}",
        "checks (selection | rank | t_N | bound | ok):",
    ]
    for check in checks:
        selection = SubSelection.of(filtered.iso, check.selection)
        spec = format_slopes(selection.as_slope_type()) or "(empty)"
        rows.append(
            {
                "bound": check.bound,
                "ok": check.ok,
                "rank": selection.rank,
                "selection": spec,
                "t_newton": check.t_newton,
            }
        )
        table.append(
            f"  {spec} | {selection.rank} | {check.t_newton}"
            f" | {check.bound} | {_yesno(check.ok)}"
        )
    return Report(
        command="wadm",
        inputs={"hodge": args.hodge, "iso": format_slopes(filtered.iso), "profile": args.profile},
        result={
            "checks": rows,
            "module_degree": filtered.module_degree,
            "t_hodge": filtered.t_hodge,
            "t_newton": filtered.t_newton,
            "weakly_admissible": admissible,
        },
        table=table,
    )


def _cmd_enumerate(args) -> Report:
    filtered = _filtered(args)
    low, high = filtered.slope_window()
    candidates = filtered.candidate_module_types()
    table = [
        f"module degree: {filtered.module_degree}",
        f"slope window: [{low}, {high}]",
        f"candidates: {len(candidates)}",
    ]
    table += [f"  - {format_slopes(candidate)}" for candidate in candidates]
    return Report(
        command="enumerate",
        inputs={"hodge": args.hodge, "iso": format_slopes(filtered.iso)},
        result={
            "candidates": [format_slopes(candidate) for candidate in candidates],
            "count": len(candidates),
            "module_degree": filtered.module_degree,
            "window": [_fraction_str(low), _fraction_str(high)],
        },
        table=table,
    )


def _unary_report(command: str, iso: SlopeType, out: SlopeType, extra_inputs=None) -> Report:
    inputs = {"iso": format_slopes(iso)}
    inputs.update(extra_inputs or {})
    return Report(
        command=command,
        inputs=inputs,
        result=_slope_type_json(out),
        table=[
            f"result: {format_slopes(out) or '(empty)'}",
            f"rank: {out.rank}",
            f"degree: {out.degree}",
        ],
    )


def _cmd_tensor(args) -> Report:
    a, b = parse_slopes(args.a), parse_slopes(args.b)
    out = a.tensor(b)
    return Report(
        command="tensor",
        inputs={"a": format_slopes(a), "b": format_slopes(b)},
        result=_slope_type_json(out),
        table=[
            f"result: {format_slopes(out)}",
            f"rank: {out.rank}",
            f"degree: {out.degree}",
        ],
    )


def _cmd_dual(args) -> Report:
    iso = parse_slopes(args.iso)
    return _unary_report("dual", iso, iso.dual())


def _cmd_det(args) -> Report:
    iso = parse_slopes(args.iso)
    return _unary_report("det", iso, iso.determinant())


def _cmd_ext(args) -> Report:
    iso = parse_slopes(args.iso)
    return _unary_report("ext", iso, iso.exterior_power(args.k), {"k": args.k})


def _cmd_restrict(args) -> Report:
    iso = parse_slopes(args.iso)
    return _unary_report(
        "restrict", iso, iso.frobenius_restriction(args.b_power), {"b": args.b_power}
    )


def _cmd_twist(args) -> Report:
    iso = parse_slopes(args.iso)
    return _unary_report("twist", iso, iso.tate_twist(args.r), {"r": args.r})


def _cmd_homdim(args) -> Report:
    a, b = parse_slopes(args.a), parse_slopes(args.b)
    value = a.hom_dim(b)
    return Report(
        command="homdim",
        inputs={"a": format_slopes(a), "b": format_slopes(b)},
        result={"value": _ext_count_json(value)},
        table=[f"result: {value}"],
    )


def _cmd_h0(args) -> Report:
    iso = parse_slopes(args.iso)
    value = iso.h0_dim()
    return Report(
        command="h0",
        inputs={"iso": format_slopes(iso)},
        result={"value": _ext_count_json(value)},
        table=[f"result: {value}"],
    )


def _cmd_decency(args) -> Report:
    iso = parse_slopes(args.iso)
    value = iso.decency_integer()
    return Report(
        command="decency",
        inputs={"iso": format_slopes(iso)},
        result={"value": value},
        table=[f"result: {value}"],
    )


def _sketch(polygon: ConvexPolygon) -> list[str]:
    width = polygon.width
    heights = [polygon.height_at(x) for x in range(width + 1)]
    scale = lcm(*(h.denominator for h in heights))
    top, bottom = max(heights), min(heights)
    rows = int((top - bottom) * scale) + 1
    if rows > 64:
        return [f"sketch omitted: vertical range {top - bottom} too large"]
    grid = [[" "] * (width + 1) for _ in range(rows)]
    for x, height in enumerate(heights):
        grid[int((top - height) * scale)][x] = "*"
    labels = [f"y={top}", f"y={bottom}"]
    out = []
    for index, row in enumerate(grid):
        label = labels[0] if index == 0 else labels[1] if index == rows - 1 else ""
        out.append(f"{label:>8} |{''.join(row)}")
    out.append(f"{'':>8} +{'-' * (width + 1)}  (x = 0..{width}, unit 1/{scale})")
    return out


def _cmd_polygon(args) -> Report:
    iso = parse_slopes(args.iso)
    polygon = iso.newton_polygon()
    breakpoints = [[x, _fraction_str(y)] for x, y in polygon.breakpoints]
    table = ["breakpoints:"]
    table += [f"  ({x}, {y})" for x, y in polygon.breakpoints]
    result = {"breakpoints": breakpoints}
    if args.sketch:
        sketch = _sketch(polygon)
        result["sketch"] = sketch
        table += ["sketch:"] + sketch
    return Report(
        command="polygon",
        inputs={"iso": format_slopes(iso)},
        result=result,
        table=table,
    )


def _cmd_sweep(args) -> Report:
    if args.max_rank < 1:
        raise DomainError("sweep needs --max-rank at least 1")
    xor_bad = xor_violations(args.max_rank)
    dual_bad = duality_violations(args.max_rank)
    clean = not xor_bad and not dual_bad
    table = [
        f"xor violations: {len(xor_bad)}",
        f"duality violations: {len(dual_bad)}",
    ]
    table += [f"  xor counterexample: {format_slopes(iso)}" for iso in xor_bad]
    table += [f"  duality counterexample: {format_slopes(iso)}" for iso in dual_bad]
    table.append(f"status: {'clean' if clean else 'VIOLATIONS FOUND'}")
    return Report(
        command="sweep",
        inputs={"max_rank": args.max_rank},
        result={
            "duality_violations": [format_slopes(iso) for iso in dual_bad],
            "xor_violations": [format_slopes(iso) for iso in xor_bad],
        },
        table=table,
        exit_code=0 if clean else 1,
    )


_HANDLERS: dict[str, Callable] = {
    "classify": _cmd_classify,
    "wadm": _cmd_wadm,
    "enumerate": _cmd_enumerate,
    "tensor": _cmd_tensor,
    "dual": _cmd_dual,
    "det": _cmd_det,
    "ext": _cmd_ext,
    "restrict": _cmd_restrict,
    "homdim": _cmd_homdim,
    "h0": _cmd_h0,
    "twist": _cmd_twist,
    "decency": _cmd_decency,
    "polygon": _cmd_polygon,
    "sweep": _cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopelab",
        description="Exact slope arithmetic for isocrystals.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("table", "json"),
        default=None,
        help="output format (default: SLOPELAB_FORMAT env var, else table)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=help_text)

    p = command("classify", "decide whether the two loci coincide")
    p.add_argument("--iso", required=True, help="slope spec, e.g. \"2/5^5\"")

    p = command("wadm", "weak admissibility check with per-subobject ledger")
    p.add_argument("--iso", required=True)
    p.add_argument("--hodge", required=True, help="minuscule Hodge datum as h,f")
    p.add_argument("--profile", choices=("generic",), default="generic")

    p = command("enumerate", "candidate module types for a filtered isocrystal")
    p.add_argument("--iso", required=True)
    p.add_argument("--hodge", required=True, help="minuscule Hodge datum as h,f")

    p = command("tensor", "tensor product of two slope types")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    for name, help_text in (
        ("dual", "dual slope type"),
        ("det", "determinant (top exterior power)"),
        ("h0", "dimension of the Frobenius invariants"),
        ("decency", "least integer clearing all slope denominators"),
        ("polygon", "Newton polygon breakpoints"),
    ):
        p = command(name, help_text)
        p.add_argument("--iso", required=True)
        if name == "polygon":
            p.add_argument("--sketch", action="store_true", help="monospace sketch")

    p = command("ext", "exterior power")
    p.add_argument("k", type=int, help="exterior power degree")
    p.add_argument("--iso", required=True)

    p = command("restrict", "restriction along a degree-b base extension")
    p.add_argument("b_power", metavar="B", type=int, help="extension degree")
    p.add_argument("--iso", required=True)

    p = command("twist", "Tate twist by an integer r")
    p.add_argument("r", type=int, help="twist amount")
    p.add_argument("--iso", required=True)

    p = command("homdim", "dimension of the space of homomorphisms")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = command("sweep", "exhaustive dichotomy and duality verification")
    p.add_argument("--max-rank", type=int, required=True)

    return parser


_VALUE_FLAGS = ("--iso", "--a", "--b", "--hodge", "--format")


def _merge_value_flags(argv: list[str]) -> list[str]:
    # "--iso -3/5^5" would parse as two options; fold into "--iso=-3/5^5"
    merged = []
    index = 0
    while index < len(argv):
        token = argv[index]
        if token in _VALUE_FLAGS and index + 1 < len(argv):
            merged.append(f"{token}={argv[index + 1]}")
            index += 2
        else:
            merged.append(token)
            index += 1
    return merged


def _resolve_format(args) -> str:
    fmt = args.format or os.environ.get("SLOPELAB_FORMAT", "table")
    if fmt not in ("table", "json"):
        raise SlopeSyntaxError(f"invalid format {fmt!r}: expected table or json")
    return fmt


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_value_flags(list(argv)))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        fmt = _resolve_format(args)
        report = _HANDLERS[args.command](args)
    except (SlopeSyntaxError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.render(fmt))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
