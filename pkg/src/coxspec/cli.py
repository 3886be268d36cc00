"""Command-line front end: ``coxspec <command> [flags]``.

Exit codes: 0 success, 1 a semantic "no" (unequal spectra, failed
identity or acceptance check), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import ctilde
from .coxeter import parse_system, parse_word
from .groups import DEFAULT_CAP, EnumerationCapError, conjugacy_classes, enumerate_group, regular_representation
from .polyalg import MultiPoly
from .reps import Representation, irrep_table, one_dim_reps, sign_rep, trivial_rep
from .rewrite import to_echelon
from .spectra import (
    bivariate_slice,
    compare_spectra,
    curve_identity_check,
    decompose_involution_pair,
    dihedral_report,
    joint_spectrum,
    joint_spectrum_float,
    proper_spectrum,
)


class UsageError(Exception):
    pass


def _emit(args, payload, rows=None, header=None) -> None:
    if args.out == "csv":
        if rows is None:
            raise UsageError(f"{args.command} has no CSV form")
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if header:
            writer.writerow(header)
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _entry(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def _matrix(data) -> np.ndarray:
    rows = [[_entry(v) for v in row] for row in data]
    if any(isinstance(v, float) for row in rows for v in row):
        return np.array([[float(v) for v in row] for row in rows])
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = int(v) if v.denominator == 1 else v
    return out


def _load_pair(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Accepts {"A1": .., "A2": ..}, {"matrices": [m1, m2, ...]} or a bare list of matrices."""
    data = _load_json(path)
    if isinstance(data, dict) and "A1" in data:
        mats = [data["A1"], data["A2"]]
    elif isinstance(data, dict) and "matrices" in data:
        mats = data["matrices"][:2]
    elif isinstance(data, list):
        mats = data[:2]
    else:
        raise UsageError(f"{path}: expected A1/A2 or a list of matrices")
    if len(mats) < 2:
        raise UsageError(f"{path}: need two matrices")
    return _matrix(mats[0]), _matrix(mats[1])


def _representation(args, spec: str | None) -> Representation:
    if spec is None:
        raise UsageError("--rep is required")
    if Path(spec).suffix == ".json" or Path(spec).is_file():
        return Representation.from_json(_load_json(spec))
    if args.system is None:
        raise UsageError("--system is required for built-in representations")
    cox = parse_system(args.system)
    if spec == "regular":
        return regular_representation(enumerate_group(cox, args.cap))
    if spec == "trivial":
        return trivial_rep(cox)
    if spec == "sign":
        return sign_rep(cox)
    if spec.startswith("irrep:"):
        table = irrep_table(cox) if (cox.family == "I" or cox.n == 2) else one_dim_reps(cox)
        k = int(spec.split(":", 1)[1])
        if not 0 <= k < len(table):
            raise UsageError(f"{cox.name} has {len(table)} tabulated irreps (0-based index)")
        return table[k]
    raise UsageError(f"unknown representation {spec!r}")


def _poly_rows(p: MultiPoly):
    header = [f"e{k}" for k in range(p.nvars)] + ["coef"]
    return header, [list(e) + [str(c)] for e, c in p.sorted_terms()]


# commands


def cmd_normalize(args) -> int:
    cox = parse_system(args.system)
    word = cox.validate_word(parse_word(args.word or ""))
    form, trace = to_echelon(word, cox)
    payload = {"system": cox.to_json(), "input": list(word), "echelon": list(form.word), "deltas": form.symbols}
    if args.trace:
        payload["steps"] = [s.to_json() for s in trace.steps]
    rows = [[" ".join(map(str, word)), " ".join(map(str, form.word)), " ".join(form.symbols)]]
    _emit(args, payload, rows, ["input", "echelon", "deltas"])
    return 0


def cmd_group(args) -> int:
    cox = parse_system(args.system)
    table = enumerate_group(cox, args.cap)
    payload = {"system": cox.to_json(), "order": len(table)}
    rows = []
    if args.classes:
        classes = [{"size": len(c), "representative_word": list(table.words[c[0]])} for c in conjugacy_classes(table)]
        payload["classes"] = classes
        rows = [[c["size"], " ".join(map(str, c["representative_word"]))] for c in classes]
    _emit(args, payload, rows, ["size", "representative_word"])
    return 0


def _curve_points(p: MultiPoly, span: float, samples: int) -> list[list[float]]:
    """Real points of a bivariate curve: for each x on a grid, real roots in y."""
    pts = []
    deg = max((e[1] for e in p.terms), default=0)
    for x in np.linspace(-span, span, samples):
        coefs = [0.0] * (deg + 1)
        for (ex, ey), c in p.terms.items():
            coefs[deg - ey] += float(c) * x**ex
        while coefs and abs(coefs[0]) < 1e-14:
            coefs.pop(0)
        if len(coefs) < 2:
            continue
        for r in np.roots(coefs):
            if abs(r.imag) < 1e-9 and abs(r.real) <= span:
                pts.append([float(x), float(r.real)])
    return pts


def cmd_spectrum(args) -> int:
    rep = _representation(args, args.rep)
    sp = joint_spectrum(rep) if rep.exact else joint_spectrum_float(rep, args.seed)
    poly = sp.poly
    payload = {"system": rep.system.to_json(), "label": rep.label, "dim": rep.dim, "exact": sp.exact}
    if args.slice:
        i, j = (int(t) for t in args.slice.split(","))
        poly = bivariate_slice(sp, i, j)
        payload["slice"] = [i, j]
        if args.points:
            header, rows = ["x", "y"], _curve_points(poly, args.span, args.points)
            payload["points"] = rows
            _emit(args, payload, rows, header)
            return 0
    elif args.proper:
        poly = proper_spectrum(sp)
    payload["poly"] = poly.to_json()
    payload["text"] = poly.to_text()
    header, rows = _poly_rows(poly)
    _emit(args, payload, rows, header)
    return 0


def cmd_compare(args) -> int:
    r1, r2 = _representation(args, args.rep1), _representation(args, args.rep2)
    if r1.system != r2.system:
        raise UsageError("representations belong to different systems")
    if not (r1.exact and r2.exact):
        raise UsageError("compare needs exact representations")
    equal = compare_spectra(r1, r2)
    _emit(args, {"equal": equal, "dims": [r1.dim, r2.dim]}, [[int(equal)]], ["equal"])
    return 0 if equal else 1


def cmd_dihedral_report(args) -> int:
    a1, a2 = _load_pair(args.matrices)
    rep = dihedral_report(a1, a2) if args.tol is None else dihedral_report(a1, a2, args.tol)
    rows = [["line", name, "", k] for name, k in rep.lines.items() if k]
    rows += [["ellipse", "", str(a), n] for a, n in rep.ellipses]
    _emit(args, rep.to_json(), rows, ["kind", "line", "alpha", "multiplicity"])
    return 0


def cmd_curve_check(args) -> int:
    a1, a2 = _load_pair(args.matrices)
    tol = 1e-8 if args.tol is None else args.tol
    rep = curve_identity_check(np.asarray(a1, dtype=float), np.asarray(a2, dtype=float), args.lam, tol=tol)
    payload = rep.to_json()
    _emit(args, payload, [[payload[k] for k in payload]], list(payload))
    return 0 if rep.ok else 1


def cmd_decompose(args) -> int:
    a1, a2 = _load_pair(args.matrices)
    a1, a2 = np.asarray(a1, dtype=float), np.asarray(a2, dtype=float)
    dec = decompose_involution_pair(a1, a2) if args.tol is None else decompose_involution_pair(a1, a2, args.tol)
    payload = dec.to_json()
    payload["thetas"] = dec.thetas
    payload["reassembly_error"] = dec.reassembly_error(a1, a2)
    rows = [["common", f"{s[0]},{s[1]}"] for s, _ in dec.common] + [["block", b.theta] for b in dec.blocks]
    _emit(args, payload, rows, ["kind", "value"])
    return 0


def cmd_ctilde2(args) -> int:
    x = ctilde.parse_element(args.word or "")
    payload = x.to_json()
    if args.label:
        lab = ctilde.class_label(x)
        payload["class"] = lab.to_json()
        payload["conjugator"] = {**lab.conjugator.to_json(), "word": lab.conjugator.word(), "moves": list(lab.moves)}
    row = [payload["coset"], x.m1, x.m2]
    if args.label:
        row += [lab.j, lab.m1, lab.m2]
    _emit(args, payload, [row], ["coset", "m1", "m2", "j", "class_m1", "class_m2"][: len(row)])
    return 0


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    only = [int(t) for t in args.only.split(",")] if args.only else None
    results = run_all(seed=args.seed, only=only)
    if args.out == "csv":
        _emit(args, None, [[r.number, r.name, "PASS" if r.passed else "FAIL", f"{r.seconds:.3f}"] for r in results],
              ["criterion", "name", "status", "seconds"])
    else:
        for r in results:
            print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", help="Coxeter system such as A3, B2, D4, I5")
    common.add_argument("--out", choices=("json", "csv"), default="json")
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--seed", type=int, default=0, help="single seed for all randomness (default 0)")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group enumeration cap")

    parser = argparse.ArgumentParser(prog="coxspec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="rewrite a word into echelon form")
    p.add_argument("--word", required=True, help="comma-separated generator indices")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_normalize, need_system=True)

    p = sub.add_parser("group", parents=[common], help="enumerate a finite Coxeter group")
    p.add_argument("--classes", action="store_true")
    p.set_defaults(func=cmd_group, need_system=True)

    p = sub.add_parser("spectrum", parents=[common], help="joint spectrum polynomial of a representation")
    p.add_argument("--rep", help="regular, trivial, sign, irrep:K or a representation JSON file")
    p.add_argument("--proper", action="store_true", help="set x0 := -1")
    p.add_argument("--slice", help="I,J: bivariate slice in x_I, x_J")
    p.add_argument("--points", type=int, default=0, help="with --slice: export N grid columns of real curve points")
    p.add_argument("--span", type=float, default=2.0)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("compare", parents=[common], help="compare joint spectra; exit 1 if they differ")
    p.add_argument("--rep1", required=True)
    p.add_argument("--rep2", required=True)
    p.set_defaults(func=cmd_compare)

    for name, func, help_ in (
        ("dihedral-report", cmd_dihedral_report, "line/ellipse analysis of an involution pair"),
        ("decompose", cmd_decompose, "2x2 block decomposition of a float involution pair"),
        ("curve-check", cmd_curve_check, "projection identities at an eigenvalue of A1"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--matrices", required=True, help="JSON file with A1 and A2")
        if name == "curve-check":
            p.add_argument("--lam", type=float, required=True, help="simple nonzero eigenvalue of A1")
        p.set_defaults(func=func)

    p = sub.add_parser("ctilde2", parents=[common], help="arithmetic and class labels in C~2")
    p.add_argument("--word", required=True, help="tokens b1,b2,b3,r1,r2 with optional ^k")
    p.add_argument("--label", action="store_true")
    p.set_defaults(func=cmd_ctilde2)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "need_system", False) and not args.system:
        parser.print_usage(sys.stderr)
        print(f"coxspec {args.command}: --system is required", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, EnumerationCapError, ValueError, KeyError) as exc:
        print(f"coxspec {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
