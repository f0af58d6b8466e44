"""Command-line frontend: parse arrangement documents, dispatch, report.

Documents are JSON: a field descriptor ("Q" or {"p": prime}), a
dimension, a centrality flag and a list of hyperplanes with exact
coefficient strings (plus optional multiplicities for planar central
input).  Human tables go to stdout; ``--json`` switches to canonical
JSON (sorted keys, scalars as decimal strings, no floats), which is
byte-identical across runs of the same document.

Exit codes: 0 success, 1 hypothesis or usage error, 2 theorem violation,
3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass

from . import __version__, acceptance, arr3, corpus, lattice, multiarr2, shift
from .exactalg import GF, QQ

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_IO = 3

POINT_BUDGET = 200_000


class DocumentError(Exception):
    """Malformed arrangement document."""


@dataclass
class ArrangementDocument:
    name: str | None
    field_desc: object  # "Q" or {"p": int}
    dim: int
    central: bool
    hyperplanes: list  # (coeff string tuple, multiplicity)

    @property
    def field(self):
        if self.field_desc == "Q":
            return QQ
        return GF(self.field_desc["p"])


def parse_document(text: str) -> ArrangementDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    name = raw.get("name")
    if name is not None and not isinstance(name, str):
        raise DocumentError("name: expected a string")
    field_desc = raw.get("field")
    if field_desc != "Q":
        if not (isinstance(field_desc, dict) and set(field_desc) == {"p"} and isinstance(field_desc["p"], int)):
            raise DocumentError('field: expected "Q" or {"p": prime}')
        try:
            GF(field_desc["p"])
        except ValueError as exc:
            raise DocumentError(f"field: {exc}") from exc
    dim = raw.get("dim")
    if dim not in (2, 3):
        raise DocumentError("dim: expected 2 or 3")
    central = raw.get("central", True)
    if not isinstance(central, bool):
        raise DocumentError("central: expected a boolean")
    if dim == 3 and not central:
        raise DocumentError("dim 3 supports only central arrangements")
    width = dim if central else dim + 1
    hyps = raw.get("hyperplanes")
    if not isinstance(hyps, list) or not hyps:
        raise DocumentError("hyperplanes: expected a nonempty list")
    out = []
    mult_allowed = dim == 2 and central
    for i, entry in enumerate(hyps):
        where = f"hyperplanes[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"{where}: expected an object")
        unknown = set(entry) - {"coeffs", "mult"}
        if unknown:
            raise DocumentError(f"{where}: unknown keys {sorted(unknown)}")
        coeffs = entry.get("coeffs")
        if not isinstance(coeffs, list) or len(coeffs) != width:
            raise DocumentError(f"{where}.coeffs: expected {width} entries")
        if not all(isinstance(c, str) for c in coeffs):
            raise DocumentError(f"{where}.coeffs: coefficients are exact-number strings")
        mult = entry.get("mult", 1)
        if "mult" in entry and not mult_allowed:
            raise DocumentError(f"{where}.mult: multiplicities only apply to planar central input")
        if not isinstance(mult, int) or mult < 0:
            raise DocumentError(f"{where}.mult: expected a nonnegative integer")
        out.append((tuple(coeffs), mult))
    doc = ArrangementDocument(name, field_desc, dim, central, out)
    try:
        build_arrangement(doc)
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc)) from exc
    return doc


def serialize_document(doc: ArrangementDocument) -> str:
    obj = {
        "field": doc.field_desc,
        "dim": doc.dim,
        "central": doc.central,
        "hyperplanes": [
            {"coeffs": list(coeffs)} | ({"mult": mult} if doc.dim == 2 and doc.central else {})
            for coeffs, mult in doc.hyperplanes
        ],
    }
    if doc.name is not None:
        obj["name"] = doc.name
    return canonical_json(obj)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_document(path: str) -> tuple[ArrangementDocument, str]:
    """Read a document from a path (or '-' for stdin); returns (doc, digest)."""
    try:
        text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    doc = parse_document(text)
    digest = hashlib.sha256(serialize_document(doc).encode()).hexdigest()
    return doc, digest


def build_arrangement(doc: ArrangementDocument):
    """Instantiate the arrangement described by a document.

    Returns ("arr2", Arrangement2, multiplicity), ("arr3", Arrangement3)
    or ("aff2", AffineArrangement2).
    """
    field = doc.field
    if doc.dim == 2 and doc.central:
        arr = multiarr2.Arrangement2(field, [c for c, _ in doc.hyperplanes])
        return "arr2", arr, tuple(m for _, m in doc.hyperplanes)
    if doc.dim == 3:
        return "arr3", arr3.Arrangement3(field, [c for c, _ in doc.hyperplanes])
    return "aff2", arr3.AffineArrangement2(field, [c for c, _ in doc.hyperplanes])


def _field_json(doc: ArrangementDocument):
    return doc.field_desc


def _envelope(command: str, doc, digest: str, results: dict) -> dict:
    body = {
        "command": command,
        "version": __version__,
        "results": results,
    }
    if doc is not None:
        body["input"] = {
            "digest": digest,
            "name": doc.name,
            "field": _field_json(doc),
            "dim": doc.dim,
            "central": doc.central,
            "hyperplanes": len(doc.hyperplanes),
        }
    return body


def _emit(args, report: dict, human_lines: list, started: float) -> None:
    if args.json:
        sys.stdout.write(canonical_json(report))
    else:
        for line in human_lines:
            print(line)
        print(f"elapsed: {time.perf_counter() - started:.3f}s")


def _derivation_json(theta, field):
    return {
        "degree": theta.degree,
        "f": [field.format(c) for c in theta.f.coeffs],
        "g": [field.format(c) for c in theta.g.coeffs],
        "rendered": theta.render(),
    }


def _parse_ints(text: str, expect: int, what: str):
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise DocumentError(f"{what}: expected comma-separated integers") from exc
    if len(vals) != expect:
        raise DocumentError(f"{what}: expected {expect} entries, got {len(vals)}")
    return vals


# ---------------------------------------------------------------------------
# commands


def cmd_exp(args) -> int:
    started = time.perf_counter()
    doc, digest = load_document(args.file)
    kind, arr, mult = _require_arr2(doc)
    e = multiarr2.exponents(arr, mult)
    balanced = multiarr2.is_balanced(arr, mult)
    field = arr.field
    results = {
        "exponents": list(e.pair),
        "delta": e.delta,
        "balanced": balanced,
        "total_multiplicity": sum(mult),
        "multiplicity": list(mult),
        "char_warning": _char_warning(field),
    }
    lines = [
        f"arrangement: {doc.name or args.file} (h={arr.h}, field {field.name})",
        f"exp=({e.d1},{e.d2}) Δ={e.delta} balanced={'true' if balanced else 'false'}",
    ]
    if sum(mult) > 0:
        theta = multiarr2.lower_degree_basis(arr, mult)
        results["lower_basis"] = _derivation_json(theta, field)
        lines.append(f"lower basis: {theta.render()}  (degree {theta.degree})")
    else:
        results["lower_basis"] = None
        lines.append("lower basis: undefined for |m| = 0")
    if results["char_warning"]:
        lines.append(f"warning: {results['char_warning']}")
    _emit(args, _envelope("exp", doc, digest, results), lines, started)
    return EXIT_OK


def _char_warning(field):
    if field.char:
        return f"field has characteristic {field.char}; characteristic-zero results do not apply"
    return None


def _require_arr2(doc):
    built = build_arrangement(doc)
    if built[0] != "arr2":
        raise DocumentError("this command needs a planar central document (dim 2, central)")
    return built


def cmd_lattice(args) -> int:
    started = time.perf_counter()
    doc, digest = load_document(args.file)
    _, arr, _ = _require_arr2(doc)
    caps = _parse_ints(args.caps, arr.h, "--caps")
    region = lattice.LatticeRegion(arr, caps, args.total)
    if region.size_bound() > POINT_BUDGET:
        print(
            f"region too large: about {region.size_bound()} points exceeds the "
            f"budget of {POINT_BUDGET}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    verifier = {
        "one": lattice.verify_lemma_one,
        "limit": lattice.verify_theorem_limit,
        "str": lattice.verify_theorem_str,
    }[args.verify]
    report = verifier(region, jobs=args.jobs)
    results = _lattice_results(args.verify, report)
    lines = _lattice_lines(args.verify, report)
    _emit(args, _envelope(f"lattice/{args.verify}", doc, digest, results), lines, started)
    if not report.passed and report.hypothesis_met:
        return EXIT_VIOLATION
    return EXIT_OK


def _lattice_results(which: str, report) -> dict:
    base = {
        "caps": list(report.region.caps),
        "total_cap": report.region.total,
        "passed": report.passed,
        "hypothesis_met": report.hypothesis_met,
        "char_warning": report.char_warning,
    }
    if which == "one":
        base |= {
            "pairs_checked": report.pairs_checked,
            "failures": [
                {"m1": list(a), "m2": list(b), "delta1": d1, "delta2": d2}
                for a, b, d1, d2 in report.failures
            ],
        }
    elif which == "limit":
        base |= {
            "points": report.points_total,
            "balanced": report.balanced_count,
            "violations": [{"m": list(m), "delta": d} for m, d in report.violations],
            "maximizers": [list(m) for m in report.maximizers],
            "parity_failures": [{"m": list(m), "delta": d} for m, d in report.parity_failures],
            "expected_violation": report.expected_violation,
        }
    else:
        base |= {
            "components": [
                {
                    "peak": list(c.peak),
                    "delta": c.peak_delta,
                    "size": c.size,
                    "ok": c.ok,
                }
                for c in report.components
            ],
            "clipped": [
                {"peak": list(p), "delta": d, "members_in_region": n}
                for p, d, n in report.clipped
            ],
            "failures": report.failures,
            "notes": report.notes,
        }
    return base


def _lattice_lines(which: str, report) -> list:
    lines = []
    if which == "one":
        lines.append(f"adjacent-gap law: {report.pairs_checked} unit steps checked")
        for a, b, d1, d2 in report.failures[:10]:
            lines.append(f"  FAIL {a} -> {b}: gaps {d1}, {d2}")
    elif which == "limit":
        lines.append(
            f"gap bound: {report.points_total} points, {report.balanced_count} balanced, "
            f"{len(report.violations)} violations, {len(report.maximizers)} maximizers"
        )
        for m, d in report.violations[:10]:
            lines.append(f"  violation: gap {d} at {m}")
        lines.append("parity law: " + ("ok" if not report.parity_failures else "FAILED"))
    else:
        lines.append(
            f"components: {len(report.components)} verified, {len(report.clipped)} clipped"
        )
        for c in report.components:
            lines.append(f"  peak {c.peak} gap {c.peak_delta} size {c.size} ok={c.ok}")
        for f in report.failures[:10]:
            lines.append(f"  FAIL {f}")
    if report.char_warning:
        lines.append(f"warning: {report.char_warning}")
    status = "PASS" if report.passed else (
        "EXPECTED-VIOLATION" if not report.hypothesis_met else "VIOLATION"
    )
    lines.append(f"verdict: {status}")
    return lines


def cmd_shift(args) -> int:
    started = time.perf_counter()
    doc, digest = load_document(args.file)
    _, arr, mult = _require_arr2(doc)
    m0 = _parse_ints(args.m0, arr.h, "--m0") if args.m0 else mult
    try:
        cert = shift.shift_isomorphism_check(arr, m0)
    except ValueError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_USAGE
    field = arr.field
    results = {
        "m0": list(cert.m0),
        "hypothesis": cert.hypothesis,
        "mode": cert.mode,
        "degree_identity_ok": cert.degree_identity_ok,
        "theta0": _derivation_json(cert.theta0, field),
        "passed": cert.passed,
        "checks": [
            {
                "m": list(c.m),
                "target": list(c.target),
                "membership_ok": c.membership_ok,
                "saito_scalar": field.format(c.saito_scalar) if c.saito_scalar is not None else None,
                "passed": c.passed,
            }
            for c in cert.checked_shifts
        ],
        "reproducers": [c.reproducer for c in cert.failures()],
    }
    lines = [
        f"m0={tuple(cert.m0)} hypothesis: {cert.hypothesis} mode: {cert.mode}",
        f"theta0 = {cert.theta0.render()}  (degree {cert.theta0.degree})",
    ]
    for c in cert.checked_shifts:
        mark = "pass" if c.passed else "FAIL"
        scal = field.format(c.saito_scalar) if c.saito_scalar is not None else "-"
        lines.append(f"  m={c.m} -> {c.target}: {mark} scalar={scal}")
    lines.append(
        f"certificate: {'PASS' if cert.passed else 'THEOREM VIOLATION'} "
        f"({sum(c.passed for c in cert.checked_shifts)}/{len(cert.checked_shifts)})"
    )
    _emit(args, _envelope("shift", doc, digest, results), lines, started)
    return EXIT_OK if cert.passed else EXIT_VIOLATION


def cmd_free(args) -> int:
    started = time.perf_counter()
    doc, digest = load_document(args.file)
    built = build_arrangement(doc)
    if built[0] == "arr2":
        raise DocumentError("freeness needs a central dim-3 or affine dim-2 document")
    coned = None
    if built[0] == "aff2":
        arrangement, infinite = arr3.cone(built[1])
        coned = infinite
    else:
        arrangement = built[1]
    h0 = args.H0 if args.H0 is not None else (coned if coned is not None else 0)
    if not 0 <= h0 < arrangement.h:
        print(f"--H0 index {h0} out of range (0..{arrangement.h - 1})", file=sys.stderr)
        return EXIT_USAGE
    verdict = arr3.is_free(arrangement, h0)
    field = arrangement.field
    zieg = None
    if verdict.ziegler is not None:
        restricted, mult = verdict.ziegler
        e = multiarr2.exponents(restricted, mult)
        zieg = {
            "h": restricted.h,
            "forms": [f.render() for f in restricted.forms],
            "multiplicity": list(mult),
            "exponents": list(e.pair),
        }
    results = {
        "free": verdict.free,
        "exponents": list(verdict.exponents) if verdict.exponents else None,
        "coker_dim": verdict.coker_dim,
        "h0": verdict.h0_index,
        "coned": coned is not None,
        "combinatorial": verdict.combinatorial,
        "rule": verdict.rule,
        "char_poly": list(verdict.char_poly.coeffs),
        "ziegler": zieg,
        "char_warning": verdict.char_warning,
    }
    status = "FREE" if verdict.free else "NOT FREE"
    expstr = f" exp=({','.join(map(str, verdict.exponents))})" if verdict.exponents else ""
    comb = f"combinatorial=true({verdict.rule})" if verdict.combinatorial else "combinatorial=false"
    lines = [
        f"{status}{expstr} coker={verdict.coker_dim} {comb} H0={verdict.h0_index}",
        f"char poly: {verdict.char_poly}",
    ]
    if zieg:
        lines.append(
            f"restriction: h={zieg['h']} m={tuple(zieg['multiplicity'])} "
            f"exp=({zieg['exponents'][0]},{zieg['exponents'][1]})"
        )
    if verdict.char_warning:
        lines.append(f"warning: {verdict.char_warning}")
    _emit(args, _envelope("free", doc, digest, results), lines, started)
    return EXIT_OK


def cmd_verify_all(args) -> int:
    started = time.perf_counter()
    if args.suite != "desk":
        print(f"unknown suite {args.suite!r}; available: desk", file=sys.stderr)
        return EXIT_USAGE
    # the bundled corpus must parse and round-trip before the suite runs
    for name in corpus.document_names():
        path = corpus.document_path(name)
        doc = parse_document(path.read_text(encoding="utf-8"))
        again = parse_document(serialize_document(doc))
        if serialize_document(again) != serialize_document(doc):
            raise DocumentError(f"corpus document {name} does not round-trip")
    results = acceptance.run_suite(jobs=args.jobs)
    ok = all(r.passed for r in results)
    report = {
        "command": "verify-all",
        "version": __version__,
        "suite": args.suite,
        "results": [
            {
                "index": r.index,
                "name": r.name,
                "passed": r.passed,
                "expected_violation": r.expected_violation,
                "detail": r.detail,
            }
            for r in results
        ],
        "passed": ok,
    }
    lines = [r.describe() for r in results]
    lines.append(f"suite: {'PASS' if ok else 'FAIL'}")
    _emit(args, report, lines, started)
    return EXIT_OK if ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiarr",
        description="Exact exponents, multiplicity lattices and freeness of arrangements.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_jobs=False):
        p.add_argument("--json", action="store_true", help="emit canonical JSON instead of text")
        if with_jobs:
            p.add_argument(
                "--jobs",
                type=int,
                default=os.cpu_count() or 1,
                help="scan worker processes (output is independent of this)",
            )

    p = sub.add_parser("exp", help="exponents and lower basis of a 2-multiarrangement")
    p.add_argument("file", help="arrangement document (path or '-')")
    common(p)
    p.set_defaults(fn=cmd_exp)

    p = sub.add_parser("lattice", help="scan a finite multiplicity region and verify a law")
    p.add_argument("file")
    p.add_argument("--caps", required=True, help="per-hyperplane caps, comma separated")
    p.add_argument("--total", type=int, default=None, help="optional cap on |m|")
    p.add_argument("--verify", required=True, choices=("one", "limit", "str"))
    common(p, with_jobs=True)
    p.set_defaults(fn=cmd_lattice)

    p = sub.add_parser("shift", help="certify the shift map at m0")
    p.add_argument("file")
    p.add_argument("--m0", default=None, help="multiplicity, comma separated (default: document)")
    common(p)
    p.set_defaults(fn=cmd_shift)

    p = sub.add_parser("free", help="freeness verdict of a central 3-arrangement")
    p.add_argument("file")
    p.add_argument("--H0", type=int, default=None, help="restriction hyperplane index")
    common(p)
    p.set_defaults(fn=cmd_free)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    p.add_argument("--suite", default="desk")
    common(p, with_jobs=True)
    p.set_defaults(fn=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DocumentError as exc:
        print(f"document error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
