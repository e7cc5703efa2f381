"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 unsupported regime.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from . import acceptance, geometries
from .chow import ChowElement, build_ring
from .errors import InvalidInput, ToricQMError, UnsupportedRegime
from .givental import j0_coefficient, pt_psi_invariant, s_function
from .lefschetz import (comb_vanishing_report, lefschetz_series, p0_series, relative_ladder,
                        relative_point_invariant, telescoping_check, wallcross_sides)
from .recursion import Marking, RecursionEngine, Token, Unevaluable
from .series import ZElement, extract_invariants
from .toric import CurveClass, DivisorClass, Fan, Geometry, enumerate_effective, validate_fan


class VerificationFailed(Exception):
    pass


# --- input -----------------------------------------------------------------

def load_config(path: str) -> tuple[Geometry, int | None]:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read configuration: {exc}") from None
    try:
        fan = Fan(len(data["rays"][0]), data["rays"], data["max_cones"])
        flags = data.get("flags", {})
        geom = Geometry(fan, DivisorClass(fan, data["Y"]), DivisorClass(fan, data["ample"]),
                        very_ample_Y=bool(flags.get("very_ample_Y", True)),
                        contains_all_curve_classes=bool(flags.get("contains_all_curve_classes", True)),
                        name=data.get("name", path))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed configuration: {exc!r}") from None
    return geom, data.get("cap")


def resolve(args) -> tuple[Geometry, int]:
    cap_cfg = None
    if args.config:
        geom, cap_cfg = load_config(args.config)
    else:
        geom = geometries.builtin(args.geometry)
    cap = args.cap if args.cap is not None else (cap_cfg if cap_cfg is not None else 2)
    if cap < 0:
        raise InvalidInput("cap must be non-negative")
    return geom, cap


def parse_beta(geom: Geometry, text: str) -> CurveClass:
    parts = [p for p in re.split(r"[,\s]+", text.strip()) if p]
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise InvalidInput(f"cannot parse curve class {text!r}") from None
    if len(values) == 1:
        return geom.class_from_degree(values[0])
    beta = CurveClass(values)
    if len(values) != geom.n_rays or not beta.in_kernel(geom.fan):
        raise InvalidInput(f"{text!r} is not a curve class: pairings must satisfy the ray relations")
    return beta


_TERM = re.compile(r"^(?:(?P<coeff>-?\d+(?:/\d+)?)\*)?(?P<body>.+)$")


def parse_insertion(geom: Geometry, text: str):
    """``1``, ``pt``, ``Y``, ``H`` (the first ray divisor), monomials like ``2*x0^2*x1``,
    or tokens ``rho_h`` / ``rho^h``."""
    ring = build_ring(geom)
    text = text.strip()
    tok = re.fullmatch(r"rho([_^])(\d+)", text)
    if tok:
        return Token(int(tok.group(2)), tok.group(1) == "^")
    total = ring.zero()
    for term in text.replace("-", "+-").split("+"):
        term = term.strip()
        if not term:
            continue
        m = _TERM.match(term)
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        body = m.group("body")
        if body.startswith("-"):
            coeff, body = -coeff, body[1:]
        value = ring.one()
        for factor in body.split("*"):
            factor = factor.strip()
            base, _, power = factor.partition("^")
            p = int(power) if power else 1
            if base == "1":
                f = ring.one()
            elif base == "pt":
                f = ring.point()
            elif base == "Y":
                f = ring.divisor(geom.Y)
            elif base == "H":
                f = ring.var(0)
            elif re.fullmatch(r"x\d+", base) and int(base[1:]) < geom.n_rays:
                f = ring.var(int(base[1:]))
            elif re.fullmatch(r"-?\d+(/\d+)?", base):
                f = ring.scalar(Fraction(base))
            else:
                raise InvalidInput(f"cannot parse insertion {text!r}")
            value = value * f ** p
        total = total + value * coeff
    return total


def _int_list(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise InvalidInput(f"expected a comma-separated list of integers, got {text!r}") from None


# --- output ----------------------------------------------------------------

def beta_key(beta: CurveClass) -> str:
    return ",".join(map(str, beta.pairings))


def class_json(c: ChowElement) -> dict:
    return {c.ring.format_monomial(m): str(v) for m, v in c.coeffs.items()}


def zelement_json(z: ZElement) -> dict:
    return {str(k): class_json(c) for k, c in sorted(z.terms.items())}


def emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True, indent=2, ensure_ascii=False)
    sys.stdout.write("\n")


# --- commands --------------------------------------------------------------

def cmd_validate(args) -> int:
    geom, _ = resolve(args)
    report = validate_fan(geom.fan).as_dict()
    report.update({
        "geometry": geom.name,
        "walls": [list(w.pairings) for w in geom.walls],
        "fano": geom.is_fano(),
        "semipositive": geom.is_semipositive(),
        "semipositivity_problems": geom.semipositivity_problems(),
        "status": "PASS",
    })
    emit(report)
    return 0


def cmd_cohomology(args) -> int:
    geom, _ = resolve(args)
    ring = build_ring(geom)
    basis = ring.basis_elements()
    lower, upper = ring.eta_basis(ring.divisor(geom.Y))
    emit({
        "geometry": geom.name,
        "basis": [ring.format_monomial(m) for m in ring.basis],
        "betti": [len(b) for b in ring.basis_by_degree],
        "pairing_matrix": [[str(v) for v in row] for row in ring.pairing_matrix(basis)],
        "groebner_basis": [class_json_poly(ring, g) for g in ring.gb],
        "eta_upper": [str(c) for c in upper],
        "eta_lower": [str(c) for c in lower],
        "point_class": str(ring.point()),
    })
    return 0


def class_json_poly(ring, poly) -> dict:
    return {ring.format_monomial(m): str(v) for m, v in poly.items()}


def cmd_invariants(args) -> int:
    geom, cap = resolve(args)
    ring = build_ring(geom)
    lower, upper = ring.eta_basis(ring.divisor(geom.Y))
    out = {"geometry": geom.name, "target": args.target, "cap": cap,
           "eta_lower": [str(c) for c in lower], "classes": {}}
    series = lefschetz_series(geom, cap) if args.target == "Y" else None
    for beta in enumerate_effective(geom, cap):
        S = s_function(geom, ring, beta) if args.target == "X" else series.get(beta, ZElement(ring))
        table = extract_invariants(S, lower)
        out["classes"][beta_key(beta)] = {f"{i},{k}": str(v) for (i, k), v in sorted(table.items())}
    emit(out)
    return 0


def cmd_lefschetz(args) -> int:
    geom, cap = resolve(args)
    p0 = p0_series(geom, cap)
    series = lefschetz_series(geom, cap)
    emit({
        "geometry": geom.name, "cap": cap,
        "P0": {beta_key(b): str(p0[b]) for b in p0.keys_sorted()},
        "S_Y": {beta_key(b): zelement_json(series[b]) for b in series.keys_sorted()},
    })
    return 0


def cmd_relative(args) -> int:
    geom, _ = resolve(args)
    beta = parse_beta(geom, args.beta)
    e = geom.y_dot(beta)
    if e < 1:
        raise InvalidInput("relative invariants need Y.beta >= 1")
    rungs = relative_ladder(geom, beta)
    emit({
        "geometry": geom.name, "beta": list(beta.pairings), "Y.beta": e,
        "ladder": {str(m): zelement_json(r) for m, r in enumerate(rungs)},
        "telescoping": telescoping_check(geom, beta),
        "relative_point_invariant": str(relative_point_invariant(geom, beta)),
        "pt_psi_invariant": str(pt_psi_invariant(geom, beta)),
        "j0_coefficient": str(j0_coefficient(geom, beta)),
        "comb_reports": [comb_vanishing_report(geom, beta, m).as_dict() for m in range(e + 1)],
    })
    return 0


def cmd_wallcross(args) -> int:
    geom, cap = resolve(args)
    results = []
    ok = True
    for beta in enumerate_effective(geom, cap):
        if geom.y_dot(beta) < 1:
            continue
        r = wallcross_sides(geom, beta)
        ok &= r.passed
        results.append({"beta": list(beta.pairings), "lhs": zelement_json(r.lhs), "rhs": zelement_json(r.rhs),
                        "status": "PASS" if r.passed else "FAIL"})
    emit({"geometry": geom.name, "cap": cap, "results": results, "status": "PASS" if ok else "FAIL"})
    return 0 if ok else 1


def cmd_expand(args) -> int:
    geom, _ = resolve(args)
    beta = parse_beta(geom, args.beta)
    alpha = _int_list(args.alpha)
    insertions = [parse_insertion(geom, s) for s in args.insertions.split(",")]
    psi = _int_list(args.psi) if args.psi else [0] * len(alpha)
    if not len(alpha) == len(insertions) == len(psi):
        raise InvalidInput("--alpha, --insertions and --psi must have the same length")
    engine = RecursionEngine(geom, args.l, args.tie_break)
    leaf = engine.rel(beta, [Marking(i, p, a) for i, p, a in zip(insertions, psi, alpha)])
    expr = engine.reduce(leaf)
    filtered = engine.restricted_filter(expr)
    value = engine.evaluate(filtered)
    emit({
        "geometry": geom.name,
        "leaf": str(leaf),
        "restricted_rank_k": engine.tokens.k,
        "token_arity_l": engine.tokens.l,
        "trace": [s.as_json() for s in engine.trace],
        "expression": str(expr).splitlines(),
        "filtered": str(filtered).splitlines(),
        "expression_json": filtered.as_json(),
        "value": str(value) if not isinstance(value, Unevaluable) else None,
        "unevaluable": str(value) if isinstance(value, Unevaluable) else None,
    })
    return 0


def cmd_verify(args) -> int:
    if args.geometry is None and args.config is None:
        results = acceptance.run_all()
        for r in results:
            print(r.line())
        ok = all(r.passed for r in results)
        print("PASS" if ok else "FAIL")
        return 0 if ok else 1
    geom, cap = resolve(args)
    lines, ok = verify_geometry(geom, cap)
    for line in lines:
        print(line)
    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


def verify_geometry(geom: Geometry, cap: int) -> tuple[list[str], bool]:
    """Per-geometry checks: cross-oracle, and in the semipositive regime P0,
    telescoping, comb vanishing and wall-crossing."""
    lines = []
    ok = True
    betas = [b for b in enumerate_effective(geom, cap) if geom.y_dot(b) >= 1]
    bad = [b for b in betas if pt_psi_invariant(geom, b, check=False) * _fact(geom.y_dot(b))
           != j0_coefficient(geom, b)]
    ok &= not bad
    lines.append(f"cross-oracle on {len(betas)} classes: {'ok' if not bad else 'mismatch ' + str(bad)}")
    if geom.is_semipositive():
        p0 = p0_series(geom, cap)
        lines.append("P0 coefficients: " + ", ".join(f"{beta_key(b)}: {p0[b]}" for b in p0.keys_sorted()
                                                     if not b.is_zero()))
        tele = [b for b in betas if not telescoping_check(geom, b)]
        combs = [(b, m) for b in betas for m in range(geom.y_dot(b))
                 if comb_vanishing_report(geom, b, m).anything_survives]
        walls = [b for b in betas if not wallcross_sides(geom, b).passed]
        ok &= not tele and not combs and not walls
        lines.append(f"telescoping: {'ok' if not tele else tele}")
        lines.append(f"comb vanishing below the top rung: {'ok' if not combs else combs}")
        lines.append(f"wall-crossing: {'ok' if not walls else walls}")
    else:
        lines.append("not semipositive: " + "; ".join(geom.semipositivity_problems()))
    fails = acceptance.ring_property_failures(geom)
    ok &= not fails
    lines.append(f"ring properties on 200 random elements: {'ok' if not fails else fails[:3]}")
    return lines, ok


def _fact(n: int) -> int:
    from math import factorial
    return factorial(n)


# --- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricqm", description="Quasimap invariants of toric pairs (X, Y).")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, default_geometry=True):
        p = sub.add_parser(name, help=help_text)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--geometry", default="p2-line" if default_geometry else None,
                         help=f"built-in geometry: {', '.join(geometries.names())}")
        src.add_argument("--config", help="JSON file with rays, max_cones, Y, ample, flags, cap")
        p.add_argument("--cap", type=int, default=None, help="degree cap for truncation")
        p.set_defaults(func=fn)
        return p

    add("validate", cmd_validate, "check the fan and report invariants")
    add("cohomology", cmd_cohomology, "Chow ring basis and pairing")
    p = add("invariants", cmd_invariants, "two-pointed invariants <eta_i psi^k, 1>")
    p.add_argument("--target", choices=("X", "Y"), default="X")
    add("lefschetz", cmd_lefschetz, "correction series P0 and the restricted S-function of Y")
    p = add("relative", cmd_relative, "relative ladder and point invariant")
    p.add_argument("--beta", required=True, help="degree (Picard rank one) or pairing vector")
    add("wallcross", cmd_wallcross, "compare the relative and FTY I-functions")
    p = add("expand", cmd_expand, "reduce a relative invariant to absolute ones")
    p.add_argument("--beta", required=True)
    p.add_argument("--alpha", required=True, help="tangency vector, e.g. 3,0")
    p.add_argument("--insertions", required=True, help="e.g. 'pt,1' or 'rho_1,1'")
    p.add_argument("--psi", help="psi powers, e.g. 0,0")
    p.add_argument("--l", type=int, default=None, help="number of basis tokens for H*(Y)")
    p.add_argument("--tie-break", choices=("smallest", "largest"), default="smallest")
    add("verify", cmd_verify, "run the acceptance suite (or per-geometry checks)", default_geometry=False)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedRegime as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return 3
    except ToricQMError as exc:
        print(f"failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
