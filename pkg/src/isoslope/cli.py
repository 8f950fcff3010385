"""Command-line interface.

Four subcommands read a JSON problem document and emit a JSON report on
stdout (polygons as ASCII art on stderr; SVG to a file on request):

    isoslope slopes <file> [--svg PATH]
    isoslope weakadm <file> [--mode exact|mc] [--samples K]
    isoslope hn <file>
    isoslope bc <file> [--mode exact|mc] [--samples K]

Exit codes: 0 success (weakadm/bc: weakly admissible), 1 not weakly
admissible, 2 parse error, 3 precision error, 4 exact enumeration
unavailable and Monte-Carlo not requested, 5 non-effective input.
Output is byte-identical for identical documents and flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bc import admissibility_ledger, bc_of_isocrystal, invariants_of_E, invariants_of_M, slope_filtration
from .documents import (
    ProblemDocument,
    atom_to_json,
    fraction_str,
    load_document,
    polygon_to_json,
    subspace_to_json,
)
from .errors import (
    DocumentError,
    EnumerationUnavailableError,
    NonEffectiveError,
    PrecisionError,
)
from .filtered import hn_filtration, hodge_number, induced, is_weakly_admissible, newton_number_of
from .isocrystal import dm_type, is_effective, newton_number, slopes
from .polys import NewtonPolygon
from .render import ascii_polygon, svg_polygon

EXIT_OK = 0
EXIT_NOT_ADMISSIBLE = 1
EXIT_PARSE = 2
EXIT_PRECISION = 3
EXIT_NO_EXACT = 4
EXIT_NOT_EFFECTIVE = 5


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _grouped_slopes(slope_list):
    groups = []
    for s in slope_list:
        if groups and groups[-1][0] == s:
            groups[-1][1] += 1
        else:
            groups.append([s, 1])
    return groups


def _resolve_mode(doc: ProblemDocument, args) -> tuple[str, int, int]:
    mode = args.mode or doc.options.get("mode", "exact")
    samples = args.samples or doc.options.get("samples", 100)
    seed = doc.options.get("seed", 0)
    return mode, samples, seed


def cmd_slopes(doc: ProblemDocument, args) -> int:
    D = doc.crystal
    slope_list = slopes(D)
    polygon = NewtonPolygon.from_slope_multiset(_grouped_slopes(slope_list))
    report = {
        "command": "slopes",
        "field": {"p": doc.field.p, "f": doc.field.f, "precision": doc.field.N},
        "rank": D.rank,
        "newton_number": newton_number(D),
        "slopes": [
            {"slope": fraction_str(s), "multiplicity": m} for s, m in _grouped_slopes(slope_list)
        ],
        "dm_type": [
            {"d": d, "h": h, "multiplicity": m} for d, h, m in dm_type(D).entries
        ],
        "effective": is_effective(D),
        "newton_polygon": polygon_to_json(polygon),
    }
    _emit(report)
    sys.stderr.write(ascii_polygon(polygon, "Newton polygon") + "\n")
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(svg_polygon(polygon, "Newton polygon"))
    return EXIT_OK


def _require_filtration(doc: ProblemDocument):
    if doc.filtered is None:
        raise DocumentError("this command needs a document with a filtration")
    return doc.filtered


def cmd_weakadm(doc: ProblemDocument, args) -> int:
    X = _require_filtration(doc)
    mode, samples, seed = _resolve_mode(doc, args)
    try:
        verdict = is_weakly_admissible(X, mode=mode, samples=samples, seed=seed)
    except EnumerationUnavailableError as exc:
        if mode == "exact":
            raise EnumerationUnavailableError(
                f"{exc} (re-run with --mode mc to sample instead)"
            ) from exc
        raise
    witness = None
    if verdict.witness is not None:
        sub = induced(X, verdict.witness)
        witness = {
            "basis": subspace_to_json(verdict.witness),
            "hodge_number": hodge_number(sub),
            "newton_number": newton_number_of(sub),
        }
    report = {
        "command": "weakadm",
        "weakly_admissible": verdict.weakly_admissible,
        "mode": verdict.mode,
        "checked_count": verdict.checked_count,
        "hodge_number": hodge_number(X),
        "newton_number": newton_number_of(X),
        "witness": witness,
    }
    _emit(report)
    return EXIT_OK if verdict.weakly_admissible else EXIT_NOT_ADMISSIBLE


def cmd_hn(doc: ProblemDocument, args) -> int:
    X = _require_filtration(doc)
    filt = hn_filtration(X)
    steps = []
    for i, step in enumerate(filt.steps, start=1):
        sub = step.subobject
        sub_degree = hodge_number(sub.X) - newton_number_of(sub.X)
        steps.append(
            {
                "index": i,
                "rank": sub.X.rank,
                "degree": sub_degree,
                "slope": fraction_str(Fraction(sub_degree, sub.X.rank)),
                "basis": subspace_to_json(sub.carrier),
                "graded": {
                    "rank": step.graded_rank,
                    "degree": step.graded_degree,
                    "slope": fraction_str(step.graded_slope),
                },
            }
        )
    report = {
        "command": "hn",
        "rank": X.rank,
        "degree": hodge_number(X) - newton_number_of(X),
        "steps": steps,
    }
    _emit(report)
    return EXIT_OK


def cmd_bc(doc: ProblemDocument, args) -> int:
    X = _require_filtration(doc)
    mode, samples, seed = _resolve_mode(doc, args)
    ledger = admissibility_ledger(X, mode=mode, samples=samples, seed=seed)
    decomposition = bc_of_isocrystal(X.D)
    layers = slope_filtration(decomposition)
    witness = None
    if ledger.verdict.witness is not None:
        sub = induced(X, ledger.verdict.witness)
        witness = {
            "basis": subspace_to_json(ledger.verdict.witness),
            "hodge_number": hodge_number(sub),
            "newton_number": newton_number_of(sub),
        }
    report = {
        "command": "bc",
        "e_invariants": {"dim": invariants_of_E(X.D).dim, "ht": invariants_of_E(X.D).ht},
        "m_invariants": {"dim": invariants_of_M(X).dim, "ht": invariants_of_M(X).ht},
        "decomposition": [atom_to_json(a, m) for a, m in decomposition.atoms],
        "ledger": {
            "weakly_admissible": ledger.verdict.weakly_admissible,
            "mode": ledger.verdict.mode,
            "solution_dimension": ledger.solution_dimension,
            "steps": [
                {
                    "label": s.label,
                    "terms": [{"name": n, "dim": inv.dim, "ht": inv.ht} for n, inv in s.terms],
                    "note": s.note,
                    "balanced": s.balanced,
                }
                for s in ledger.steps
            ],
            "witness": witness,
        },
        "slope_filtration": [
            {
                "slope": fraction_str(layer.alpha),
                "n": layer.n,
                "atoms": [atom_to_json(a, m) for a, m in layer.atoms],
            }
            for layer in layers
        ],
    }
    _emit(report)
    return EXIT_OK if ledger.verdict.weakly_admissible else EXIT_NOT_ADMISSIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="isoslope",
        description="Exact slope, admissibility and filtration invariants "
        "of isocrystals over unramified p-adic fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("slopes", help="Newton number, slopes, simple-factor type, polygon")
    sp.add_argument("file")
    sp.add_argument("--svg", metavar="PATH", help="write the polygon as SVG to PATH")
    sp.set_defaults(handler=cmd_slopes, mode=None, samples=None)

    wp = sub.add_parser("weakadm", help="decide weak admissibility of a filtered document")
    wp.add_argument("file")
    wp.add_argument("--mode", choices=["exact", "mc"])
    wp.add_argument("--samples", type=int)
    wp.set_defaults(handler=cmd_weakadm)

    hp = sub.add_parser("hn", help="Harder-Narasimhan filtration of a filtered document")
    hp.add_argument("file")
    hp.set_defaults(handler=cmd_hn, mode=None, samples=None)

    bp = sub.add_parser("bc", help="invariant decomposition, admissibility ledger, slope filtration")
    bp.add_argument("file")
    bp.add_argument("--mode", choices=["exact", "mc"])
    bp.add_argument("--samples", type=int)
    bp.set_defaults(handler=cmd_bc)
    return parser


def _error_report(kind: str, exc: Exception) -> dict:
    return {"error": {"kind": kind, "message": str(exc)}}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    override = None
    env = os.environ.get("ISOSLOPE_PRECISION")
    try:
        if env is not None:
            try:
                override = int(env)
            except ValueError as exc:
                raise DocumentError(f"ISOSLOPE_PRECISION is not an integer: {env!r}") from exc
        doc = load_document(args.file, precision_override=override)
        return args.handler(doc, args)
    except DocumentError as exc:
        _emit(_error_report("parse", exc))
        return EXIT_PARSE
    except PrecisionError as exc:
        _emit(_error_report("precision", exc))
        return EXIT_PRECISION
    except EnumerationUnavailableError as exc:
        _emit(_error_report("exact-enumeration-unavailable", exc))
        return EXIT_NO_EXACT
    except NonEffectiveError as exc:
        _emit(_error_report("non-effective", exc))
        return EXIT_NOT_EFFECTIVE


if __name__ == "__main__":
    sys.exit(main())
