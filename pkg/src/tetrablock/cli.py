"""Command-line front end.

Every command reads one JSON payload (positional argument, or stdin when
omitted or ``-``) and writes one JSON document to stdout. Complex numbers
travel as ``[re, im]`` pairs.

Exit codes: 0 success, 1 negative mathematical verdict, 2 input error.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import sys
from typing import Any, Sequence

import jsonschema

from . import autgroup, foliation, membership, oracle, schwarz
from .errors import NotInDomainError, TetrablockError
from .numerics import DiscAutomorphism, Matrix2, TetraPoint

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2

_COMPLEX = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}
_TRIPLE = {"type": "array", "items": _COMPLEX, "minItems": 3, "maxItems": 3}
_MATRIX = {"type": "array", "items": _COMPLEX, "minItems": 4, "maxItems": 4}
_DISC = {
    "type": "object",
    "properties": {"omega": _COMPLEX, "alpha": _COMPLEX},
    "required": ["omega", "alpha"],
}
_AUT = {
    "type": "object",
    "properties": {"upsilon": _DISC, "chi": _DISC, "flip": {"type": "boolean"}},
    "required": ["upsilon", "chi", "flip"],
}

SCHEMAS = {
    "check": {"type": "object", "properties": {"x": _TRIPLE}, "required": ["x"]},
    "canonical": {"type": "object", "properties": {"x": _TRIPLE}, "required": ["x"]},
    "schwarz": {
        "type": "object",
        "properties": {"y": _TRIPLE, "lambda": {"type": "array", "items": _COMPLEX}},
        "required": ["y"],
    },
    "aut-apply": {
        "type": "object",
        "properties": {"g": _AUT, "x": _TRIPLE},
        "required": ["g", "x"],
    },
    "aut-compose": {
        "type": "object",
        "properties": {"g": _AUT, "h": _AUT},
        "required": ["g", "h"],
    },
    "aut-inverse": {"type": "object", "properties": {"g": _AUT}, "required": ["g"]},
    "mu": {
        "type": "object",
        "properties": {"a": _MATRIX, "b": _MATRIX},
        "required": ["a", "b"],
    },
}


class InputError(Exception):
    pass


# -- wire conversion ----------------------------------------------------------


def complex_from_wire(v: Sequence[float]) -> complex:
    re, im = v
    if not (math.isfinite(re) and math.isfinite(im)):
        raise InputError("complex components must be finite")
    return complex(re, im)


def complex_to_wire(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def point_from_wire(v) -> TetraPoint:
    return TetraPoint(*(complex_from_wire(c) for c in v))


def point_to_wire(x: TetraPoint) -> list[list[float]]:
    return [complex_to_wire(c) for c in x]


def matrix_from_wire(v) -> Matrix2:
    return Matrix2(*(complex_from_wire(c) for c in v))


def matrix_to_wire(m: Matrix2) -> list[list[float]]:
    return [complex_to_wire(c) for c in m.entries()]


def disc_from_wire(d) -> DiscAutomorphism:
    return DiscAutomorphism(complex_from_wire(d["omega"]), complex_from_wire(d["alpha"]))


def disc_to_wire(u: DiscAutomorphism) -> dict[str, Any]:
    return {"omega": complex_to_wire(u.omega), "alpha": complex_to_wire(u.alpha)}


def aut_from_wire(d) -> autgroup.TetraAutomorphism:
    return autgroup.TetraAutomorphism(
        disc_from_wire(d["upsilon"]), disc_from_wire(d["chi"]), bool(d["flip"])
    )


def aut_to_wire(g: autgroup.TetraAutomorphism) -> dict[str, Any]:
    return {"upsilon": disc_to_wire(g.upsilon), "chi": disc_to_wire(g.chi), "flip": g.flip}


# -- output -------------------------------------------------------------------


def _encode(obj: Any, indent: int | None, level: int) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return json.dumps(str(obj))
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = [
            f"{json.dumps(str(k))}:{' ' if indent else ''}{_encode(v, indent, level + 1)}"
            for k, v in obj.items()
        ]
        return _wrap("{", "}", items, indent, level)
    if isinstance(obj, (list, tuple)):
        return _wrap("[", "]", [_encode(v, indent, level + 1) for v in obj], indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _wrap(open_: str, close: str, items: list[str], indent: int | None, level: int) -> str:
    if not items:
        return open_ + close
    if not indent:
        return open_ + ",".join(items) + close
    pad = " " * (indent * (level + 1))
    return open_ + "\n" + ",\n".join(pad + i for i in items) + "\n" + " " * (indent * level) + close


def dumps(obj: Any, pretty: bool = False) -> str:
    """JSON with every float printed to 17 significant digits."""
    return _encode(obj, 2 if pretty else None, 0)


# -- commands -----------------------------------------------------------------


def cmd_check(payload, args) -> tuple[dict, int]:
    x = point_from_wire(payload["x"])
    report = membership.classify(x, grid_size=args.grid, band=args.boundary_band, tol=args.tol)
    out = {
        "x": point_to_wire(x),
        "verdicts": report.verdicts,
        "margins": report.margins,
        "consensus": report.consensus,
        "borderline": report.borderline,
        "triangular": report.triangular,
        "member": report.member,
    }
    member = report.consensus and report.member
    return out, EXIT_OK if member else EXIT_NEGATIVE


def _default_lambdas(n: int) -> list[complex]:
    return [0.5 * cmath.exp(2j * math.pi * k / n) for k in range(n)]


def cmd_schwarz(payload, args) -> tuple[dict, int]:
    y = schwarz.TangentTarget(*(complex_from_wire(c) for c in payload["y"]))
    out: dict[str, Any] = {
        "y": [complex_to_wire(c) for c in y],
        "indicatrix_norm": schwarz.indicatrix_norm(y),
        "feasible": schwarz.feasible(y),
    }
    if not out["feasible"]:
        return out, EXIT_NEGATIVE
    if "lambda" in payload:
        lambdas = [complex_from_wire(v) for v in payload["lambda"]]
    else:
        lambdas = _default_lambdas(args.lambda_samples)
    sol = schwarz.build_matricial(y)
    out.update(
        {
            "C": complex_to_wire(sol.c),
            "dominant": None if sol.degenerate else sol.dominant,
            "degenerate": sol.degenerate,
            "zeta": sol.zeta,
            "xi": None if sol.xi is None else complex_to_wire(sol.xi),
            "extremal": schwarz.is_extremal(y),
            "doubly_extremal": schwarz.is_doubly_extremal(y),
            "phi_samples": [
                {"lambda": complex_to_wire(lam), "phi": point_to_wire(schwarz.phi_eval(y, lam))}
                for lam in lambdas
            ],
        }
    )
    if args.emit_f and not sol.degenerate:
        out["Z"] = matrix_to_wire(sol.z_mat)
        out["Y"] = matrix_to_wire(sol.y_mat)
        out["F_samples"] = [
            {"lambda": complex_to_wire(lam), "F": matrix_to_wire(schwarz.f_eval(sol, lam))}
            for lam in lambdas
        ]
    return out, EXIT_OK


def cmd_canonical(payload, args) -> tuple[dict, int]:
    x = point_from_wire(payload["x"])
    if not membership.in_e_inequality(x)[0]:
        return {"x": point_to_wire(x), "error": "point is not in the tetrablock"}, EXIT_NEGATIVE
    try:
        r = foliation.canonical_radius(x)
        h = foliation.normalizing_automorphism(x)
    except NotInDomainError as exc:
        return {"x": point_to_wire(x), "error": str(exc)}, EXIT_NEGATIVE
    return {
        "x": point_to_wire(x),
        "r": r,
        "automorphism": aut_to_wire(h),
        "image": point_to_wire(autgroup.apply(h, x)),
    }, EXIT_OK


def cmd_aut(payload, args) -> tuple[dict, int]:
    if args.action == "apply":
        g = aut_from_wire(payload["g"])
        x = point_from_wire(payload["x"])
        return {"image": point_to_wire(autgroup.apply(g, x))}, EXIT_OK
    if args.action == "compose":
        g, h = aut_from_wire(payload["g"]), aut_from_wire(payload["h"])
        return {"composite": aut_to_wire(autgroup.compose(g, h))}, EXIT_OK
    g = aut_from_wire(payload["g"])
    return {"inverse": aut_to_wire(autgroup.inverse(g))}, EXIT_OK


def cmd_mu(payload, args) -> tuple[dict, int]:
    a, b = matrix_from_wire(payload["a"]), matrix_from_wire(payload["b"])
    ok = schwarz.mu_feasible(a, b)
    target = schwarz.mu_target(a, b)
    out = {
        "feasible": ok,
        "wedge": complex_to_wire(target.y3),
        "target": [complex_to_wire(c) for c in target],
        "indicatrix_norm": schwarz.indicatrix_norm(target),
    }
    return out, EXIT_OK if ok else EXIT_NEGATIVE


def cmd_verify(args) -> tuple[dict, int]:
    names = ["cross", "invariance"] if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        if name == "cross":
            rep = oracle.cross_validate(
                count=args.samples,
                seed=args.seed,
                band=args.boundary_band,
                grid=args.grid,
                tol=args.tol,
                workers=args.workers,
            )
        else:
            rep = oracle.invariance_suite(count=args.samples, seed=args.seed, workers=args.workers)
        reports.append(rep)
    clean = all(r.clean for r in reports)
    out = {"clean": clean, "reports": [r.to_dict() for r in reports]}
    return out, EXIT_OK if clean else EXIT_NEGATIVE


# -- plumbing -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=membership.DEFINITION_TOL,
                        help="threshold of the grid (definitional) check")
    common.add_argument("--boundary-band", type=float, default=membership.BOUNDARY_BAND)
    common.add_argument("--grid", type=int, default=membership.DEFAULT_GRID)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", help="compact output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented output")
    common.set_defaults(pretty=False)

    parser = argparse.ArgumentParser(prog="tetrablock", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_payload(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("payload", nargs="?", default="-", help="JSON payload, '-' for stdin")
        return p

    with_payload("check", "membership report for a point {\"x\": [...]}")
    p = with_payload("schwarz", "Schwarz interpolant for a target {\"y\": [...]}")
    p.add_argument("--lambda-samples", type=int, default=8)
    p.add_argument("--emit-F", dest="emit_f", action="store_true")
    with_payload("canonical", "canonical radius and normalising automorphism")
    p = sub.add_parser("aut", parents=[common], help="apply, compose or invert automorphisms")
    p.add_argument("action", choices=["apply", "compose", "inverse"])
    p.add_argument("payload", nargs="?", default="-", help="JSON payload, '-' for stdin")
    with_payload("mu", "mu-synthesis feasibility for {\"a\": [...], \"b\": [...]}")

    p = sub.add_parser("verify", parents=[common], help="run the verification suites")
    p.add_argument("--suite", default="all", help="cross, invariance or all")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    return parser


_COMMANDS = {
    "check": cmd_check,
    "schwarz": cmd_schwarz,
    "canonical": cmd_canonical,
    "aut": cmd_aut,
    "mu": cmd_mu,
}


def _read_payload(raw: str | None, stdin) -> Any:
    text = stdin.read() if raw in (None, "-") else raw
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    try:
        if args.command == "verify":
            if args.suite not in ("cross", "invariance", "all"):
                raise InputError(f"unknown suite {args.suite!r}")
            if args.samples < 1 or args.grid < 8:
                raise InputError("--samples must be positive and --grid at least 8")
            out, code = cmd_verify(args)
        else:
            payload = _read_payload(args.payload, stdin)
            key = f"aut-{args.action}" if args.command == "aut" else args.command
            try:
                jsonschema.validate(payload, SCHEMAS[key])
            except jsonschema.ValidationError as exc:
                raise InputError(f"invalid payload: {exc.message}") from exc
            out, code = _COMMANDS[args.command](payload, args)
    except (InputError, TetrablockError) as exc:
        stdout.write(dumps({"error": str(exc)}, args.pretty) + "\n")
        return EXIT_INPUT
    stdout.write(dumps(out, args.pretty) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
