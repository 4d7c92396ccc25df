"""Command-line front end.

    python -m divfrob --p 17 --n 3 --f " -120,274,-225,85,-15,1"

Exit status: 0 success, 1 unparsable input, 2 curve rejected, 3 failed self-check.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Sequence, TextIO

from .blocks import QUADRANTS, Order, assemble, hw_block, support_pattern_ok
from .curve import Block, CurveParams, DerivedParams, enumerate_basis, validate
from .errors import CurveError, DivFrobError, InternalCheckError
from .froblift import check_lift, frobenius_lift
from .modring import det_mod_p
from .oracle import structural_phi

BLOCKS = ("full", "hw", "cartier", "upper-right", "lower-left")
ORDERS = ("filtration", "isotypic")
FORMATS = ("text", "json", "csv")
SWITCH = ("on", "off")


class ParseError(DivFrobError):
    pass


@dataclass(frozen=True)
class JobSpec:
    p: int
    n: int
    f: tuple[int, ...]
    block: str = "full"
    order: str = "filtration"
    format: str = "text"
    checks: str = "on"
    oracle: str = "off"

    def __post_init__(self):
        if not self.f:
            raise ParseError("f must have at least one coefficient")
        for name, allowed in (
            ("block", BLOCKS),
            ("order", ORDERS),
            ("format", FORMATS),
            ("checks", SWITCH),
            ("oracle", SWITCH),
        ):
            if getattr(self, name) not in allowed:
                raise ParseError(f"{name} must be one of {', '.join(allowed)}")


def parse_coeffs(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok)
    except ValueError as exc:
        raise ParseError(f"cannot read coefficient list {text!r}") from exc


# --- computation --------------------------------------------------------------


@dataclass
class JobResult:
    curve: DerivedParams
    rows: list[str]
    cols: list[str]
    matrix: list[list[int]]
    checks: dict[str, bool]
    det_hw: int
    det_full_nonzero: bool


def compute(spec: JobSpec) -> JobResult:
    curve = validate(CurveParams.from_ints(spec.p, spec.n, spec.f))
    lift = frobenius_lift(curve)
    full = assemble(curve, lift, check=False)
    checks: dict[str, bool] = {}
    if spec.checks == "on":
        checks.update(check_lift(curve, lift).results)
        checks["support_pattern"] = support_pattern_ok(full)
        checks["determinant_nonzero"] = full.det() != 0
    if spec.oracle == "on":
        checks["oracle_equal"] = structural_phi(curve, lift) == full
    if spec.block == "full":
        shown = full.reordered(Order(spec.order))
        rows = cols = [e.label for e in shown.labels]
        matrix = shown.tolist()
    else:
        row_block, col_block = QUADRANTS[spec.block]
        basis = enumerate_basis(curve)
        rows = [e.label for e in basis if e.block is row_block]
        cols = [e.label for e in basis if e.block is col_block]
        matrix = full.quadrant(spec.block)
    return JobResult(
        curve,
        rows,
        cols,
        matrix,
        checks,
        det_mod_p(full.quadrant("hw"), curve.p),
        full.det() != 0,
    )


# --- rendering ------------------------------------------------------------------


def to_json(spec: JobSpec, res: JobResult) -> str:
    c = res.curve
    doc = {
        "p": c.p,
        "n": c.n,
        "f": list(c.f.coeffs),
        "l": c.l,
        "r": c.r,
        "g": c.g,
        "order": spec.order,
        "block": spec.block,
        "basis": res.cols,
        "row_basis": res.rows,
        "matrix": res.matrix,
        "checks": res.checks,
        "det_hw": res.det_hw,
        "det_full_nonzero": res.det_full_nonzero,
    }
    return json.dumps(doc, sort_keys=True)


def to_text(spec: JobSpec, res: JobResult) -> str:
    c = res.curve
    width = max(len(s) for s in res.rows)
    out = [
        f"curve: y^{c.n} = f(t) over F_{c.p}, f = {list(c.f.coeffs)} mod {c.p * c.p}",
        f"l = {c.l}, r = {c.r}, g = {c.g}",
        f"block: {spec.block}, order: {spec.order}",
        "columns: " + ", ".join(res.cols),
        "matrix:",
    ]
    cell = len(str(c.p - 1))
    for label, row in zip(res.rows, res.matrix):
        out.append(f"  {label:>{width}} | " + " ".join(f"{x:>{cell}}" for x in row))
    out.append(f"det(hasse-witt) = {res.det_hw}")
    out.append(f"det(full) nonzero: {res.det_full_nonzero}")
    for name, ok in res.checks.items():
        out.append(f"check {name}: {'pass' if ok else 'FAIL'}")
    return "\n".join(out)


def to_csv(res: JobResult) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(res.matrix)
    return buf.getvalue().rstrip("\n")


def render(spec: JobSpec, res: JobResult) -> str:
    if spec.format == "json":
        return to_json(spec, res)
    if spec.format == "csv":
        return to_csv(res)
    return to_text(spec, res)


def run(spec: JobSpec, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        res = compute(spec)
    except CurveError as exc:
        _report(spec, exc, out, err)
        return 2
    except InternalCheckError as exc:
        _report(spec, exc, out, err)
        return 3
    print(render(spec, res), file=out)
    failed = [k for k, ok in res.checks.items() if not ok]
    if failed:
        print(f"self-check failed: {', '.join(failed)}", file=err)
        return 3
    return 0


def _report(spec: JobSpec, exc: DivFrobError, out: TextIO, err: TextIO) -> None:
    hint = getattr(exc, "hint", None)
    if spec.format == "json":
        doc = {"error": type(exc).__name__, "message": str(exc), "hint": hint}
        print(json.dumps(doc, sort_keys=True), file=out)
    print(f"error: {type(exc).__name__}: {exc}", file=err)
    if hint:
        print(f"hint: {hint}", file=err)


# --- benchmark ------------------------------------------------------------------


def bench(n: int, f: Sequence[int], primes: Sequence[int], repeats: int = 5) -> list[tuple[int, float]]:
    """Best-of-``repeats`` wall time of the Hasse-Witt block at each prime."""
    timings = []
    for p in primes:
        curve = validate(CurveParams.from_ints(p, n, f))
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            hw_block(curve)
            best = min(best, time.perf_counter() - t0)
        timings.append((p, best))
    return timings


# --- argument handling --------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="divfrob", description="Divided Frobenius matrix of y^n = f(t) mod p.")
    ap.add_argument("--p", type=int, help="prime")
    ap.add_argument("--n", type=int, help="exponent n >= 2")
    ap.add_argument("--f", help='ascending integer coefficients, e.g. " -120,274,-225,85,-15,1"')
    ap.add_argument("--block", choices=BLOCKS)
    ap.add_argument("--order", choices=ORDERS)
    ap.add_argument("--format", choices=FORMATS)
    ap.add_argument("--checks", choices=SWITCH)
    ap.add_argument("--oracle", choices=SWITCH)
    ap.add_argument("--spec", help="JSON file holding a job; explicit flags override it")
    ap.add_argument("--bench", action="store_true", help="time the Hasse-Witt block over a p-sweep")
    ap.add_argument("--primes", default="101,211,401", help="p-sweep for --bench")
    return ap


def spec_from_args(ns: argparse.Namespace) -> JobSpec:
    fields = {}
    if ns.spec:
        try:
            with open(ns.spec) as fh:
                fields = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read job file {ns.spec}: {exc}") from exc
        if not isinstance(fields, dict):
            raise ParseError("job file must hold a JSON object")
        known = {f.name for f in dataclasses.fields(JobSpec)}
        unknown = set(fields) - known
        if unknown:
            raise ParseError(f"unknown job keys: {sorted(unknown)}")
    for name in ("p", "n", "block", "order", "format", "checks", "oracle"):
        if getattr(ns, name) is not None:
            fields[name] = getattr(ns, name)
    if ns.f is not None:
        fields["f"] = parse_coeffs(ns.f)
    for name in ("p", "n", "f"):
        if name not in fields:
            raise ParseError(f"missing --{name}")
    try:
        fields["p"], fields["n"] = int(fields["p"]), int(fields["n"])
        fields["f"] = tuple(int(c) for c in fields["f"])
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad job field: {exc}") from exc
    return JobSpec(**fields)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        if ns.bench:
            if ns.n is None or ns.f is None:
                raise ParseError("--bench needs --n and --f")
            primes = parse_coeffs(ns.primes)
            f = parse_coeffs(ns.f)
        else:
            spec = spec_from_args(ns)
    except ParseError as exc:
        print(f"error: ParseError: {exc}", file=sys.stderr)
        return 1
    if ns.bench:
        try:
            timings = bench(ns.n, f, primes)
        except CurveError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            return 2
        prev = None
        for p, sec in timings:
            ratio = f"  x{sec / prev:.2f}" if prev else ""
            print(f"p = {p:>6}  hasse-witt block {sec * 1e3:9.3f} ms{ratio}")
            prev = sec
        return 0
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
