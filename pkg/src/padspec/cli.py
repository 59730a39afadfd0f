"""Batch command-line frontend with stable JSON formats.

Exit codes: 0 mathematical success, 1 usage or format error, 2 certified
negative answer (the certificate is the payload), 3 precision exhaustion.
Every payload carries "schema": "padspec/1".
"""

import argparse
import json
import sys

from . import __version__
from .born import MeasurableSet, StateVector, born_probability
from .errors import (BadLiteral, DigitOutOfRange, ImpreciseEntry, NotNaive,
                     NotNormal, NotUnitarilyDiagonalisable, PadspecError,
                     PrecisionExhausted, ReductionNotDiagonalisable)
from .funcalc import LocallyConstantFn, PDisc, apply_locally_constant
from .literals import parse_scalar_literal, render_scalar
from .pmatrix import PMatrix, is_unitary, matrix_reduction, slack, sup_norm_v2
from .scalar import from_rational
from .spectral import sigma_classes
from .structured import (TateSeries, build_window, fractal_continuous_calculus,
                         gauss_isometry_check, series_calculus)
from .tower import FieldTower
from .unidiag import unitary_diagonalise

SCHEMA = "padspec/1"


def _tower_from(args, data=None):
    data = data or {}
    p = args.p if args.p is not None else data.get("p")
    f = args.f if args.f is not None else data.get("f", 1)
    ramified = args.ramified if args.ramified else data.get("ramified", False)
    n_prec = args.N if args.N is not None else data.get("N")
    if p is None or n_prec is None:
        raise BadLiteral("tower parameters missing: give --p/--N or put "
                         "p/N in the input file")
    return FieldTower(int(p), int(f), bool(ramified), int(n_prec))


def load_matrix(path, args):
    with open(path) as fh:
        data = json.load(fh)
    tower = _tower_from(args, data)
    rows = [[parse_scalar_literal(lit, tower) for lit in row]
            for row in data["rows"]]
    return PMatrix(tower, rows), tower


def matrix_json(mat: PMatrix):
    t = mat.tower
    return {"p": t.p, "f": t.f, "ramified": t.ramified, "N": t.N,
            "rows": [[render_scalar(e) for e in r] for r in mat.rows]}


def residue_json(red):
    return [[list(e.coeffs) for e in r] for r in red.rows]


def certificate_json(cert):
    return {
        "depth": cert.depth,
        "reason": cert.reason,
        "witness": [list(c.coeffs) for c in cert.witness.coeffs],
        "residue_matrix": residue_json(cert.residue_matrix),
        "trail": [{"shift": render_scalar(step["shift"]),
                   "normalizer_v2": step["normalizer_v2"],
                   "eigenvalue": (list(step["eigenvalue"].coeffs)
                                  if step.get("eigenvalue") is not None
                                  else None),
                   "basis": (matrix_json(step["basis"])
                             if step.get("basis") is not None else None)}
                  for step in cert.trail],
    }


def tree_json(tree):
    if tree is None:
        return None
    out = dict(tree)
    if "classes" in out:
        out["classes"] = [{"eigenvalue": c["eigenvalue"], "dim": c["dim"],
                           "child": tree_json(c["child"])}
                          for c in out["classes"]]
    return out


def _check_budget(mat: PMatrix):
    s = slack(mat.n, mat.tower)
    if mat.tower.N < mat.n * s + 4:
        raise BadLiteral(
            f"N = {mat.tower.N} is below the slack budget n*s + 4 = "
            f"{mat.n * s + 4} for this job")


def _load_function(path, tower):
    with open(path) as fh:
        data = json.load(fh)
    pieces = []
    for piece in data["pieces"]:
        center = parse_scalar_literal(piece["center"], tower)
        disc = PDisc(center, 2 * int(piece["radius_exp"]))
        pieces.append((disc, parse_scalar_literal(piece["value"], tower)))
    return LocallyConstantFn(pieces)


# -- subcommands --------------------------------------------------------------

def cmd_reduce(args):
    mat, tower = load_matrix(args.matrix, args)
    red = matrix_reduction(mat)
    return 0, {"residue_rows": residue_json(red),
               "modulus": list(tower.modulus)}


def cmd_unitary(args):
    mat, _ = load_matrix(args.matrix, args)
    ok, evidence = is_unitary(mat)
    return 0, {"unitary": ok, "evidence": evidence}


def cmd_partition(args):
    mat, _ = load_matrix(args.matrix, args)
    _check_budget(mat)
    classes = sigma_classes(mat)
    payload = {"normalizer_v2": classes[0].normalizer_v2 if classes else None,
               "classes": [{"eigenvalue": list(c.eigenvalue.coeffs),
                            "rank": c.rank,
                            "projection_norm_v2": sup_norm_v2(c.projection),
                            "projection": matrix_json(c.projection)}
                           for c in classes]}
    return 0, payload


def cmd_unidiag(args):
    mat, _ = load_matrix(args.matrix, args)
    _check_budget(mat)
    out = unitary_diagonalise(mat)
    if not out.success:
        return 2, {"status": "not_unitarily_diagonalisable",
                   "certificate": certificate_json(out.certificate)}
    return 0, {"status": "success",
               "U": matrix_json(out.U),
               "D": [render_scalar(d) for d in out.D],
               "class_tree": tree_json(out.class_tree),
               "certified_precision": out.certified_precision}


def cmd_funcalc(args):
    mat, tower = load_matrix(args.matrix, args)
    _check_budget(mat)
    fn = _load_function(args.function, tower)
    res = apply_locally_constant(fn, mat)
    return 0, {"result": matrix_json(res.matrix),
               "levels": [{"center": render_scalar(lam), "level": lv,
                           "radius_v2": (None if rad == float("inf")
                                         else rad)}
                          for lam, lv, rad in res.levels],
               "certified_v2": res.certified_v2}


def _window_from(args, tower):
    return build_window(tower, args.rule, args.lo, args.hi)


def cmd_window(args):
    tower = _tower_from(args)
    win = _window_from(args, tower)
    return 0, {"rule": win.rule, "lo": win.lo, "hi": win.hi,
               "matrix": matrix_json(win.matrix)}


def cmd_series_calc(args):
    tower = _tower_from(args)
    win = _window_from(args, tower)
    with open(args.series) as fh:
        data = json.load(fh)
    coeffs = {int(n): parse_scalar_literal(lit, tower)
              for n, lit in data["coeffs"].items()}
    series = TateSeries(tower, coeffs)
    res = series_calculus(series, win)
    payload = {"matrix": matrix_json(res.matrix),
               "interior": {"lo": res.interior.lo, "hi": res.interior.hi}}
    if args.check_isometry:
        rep = gauss_isometry_check(series, win)
        payload["gauss_isometry"] = {
            "interior_norm_v2": _v2_json(rep.interior_norm_v2),
            "gauss_norm_v2": _v2_json(rep.gauss_norm_v2),
            "isometric": rep.isometric}
    return 0, payload


def _v2_json(v):
    return None if v == float("inf") else v


def cmd_fractal_calc(args):
    tower = _tower_from(args)
    win = _window_from(args, tower)
    with open(args.function) as fh:
        data = json.load(fh)
    if data.get("kind") == "poly":
        coeffs = [parse_scalar_literal(c, tower) for c in data["coeffs"]]

        def fvals(n):
            acc = from_rational(0, 1, tower)
            x = from_rational(n, 1, tower)
            for c in reversed(coeffs):
                acc = acc * x + c
            return acc
    else:
        fn = LocallyConstantFn(
            [(PDisc(parse_scalar_literal(p["center"], tower),
                    2 * int(p["radius_exp"])),
              parse_scalar_literal(p["value"], tower))
             for p in data["pieces"]])

        def fvals(n):
            return fn.value_at(from_rational(n, 1, tower))

    res = fractal_continuous_calculus(fvals, win.rule, win, band=args.band)
    return 0, {"matrix": matrix_json(res.matrix),
               "interior": {"lo": res.interior.lo, "hi": res.interior.hi},
               "flagged": sorted(list(res.flagged))}


def cmd_born(args):
    mat, tower = load_matrix(args.matrix, args)
    _check_budget(mat)
    with open(args.state) as fh:
        coords = [parse_scalar_literal(lit, tower)
                  for lit in json.load(fh)["coords"]]
    with open(args.set) as fh:
        discs = [PDisc(parse_scalar_literal(d["center"], tower),
                       2 * int(d["radius_exp"]))
                 for d in json.load(fh)["discs"]]
    prob = born_probability(mat, StateVector(tuple(coords)),
                            MeasurableSet(discs))
    return 0, {"probability": {"exponent2": _v2_json(prob.e2),
                               "decimal": prob.as_float()}}


def cmd_selftest(args):
    import random
    from .pmatrix import inverse, norm_le, random_unitary
    from .scalar import hensel_sqrt, scalar_congruent
    tower = FieldTower(5, 1, False, 12)
    rng = random.Random(0)
    checks = {}
    i = hensel_sqrt(from_rational(-1, 1, tower))
    checks["hensel_i_mod25"] = i.unit[0] % 25 == 7
    u = random_unitary(tower, 3, rng)
    checks["inverse_roundtrip"] = norm_le(
        u @ inverse(u) - PMatrix.identity(tower, 3), 2 * (tower.N - 3))
    sx = PMatrix.from_rationals(tower, [[0, 1], [1, 0]])
    out = unitary_diagonalise(sx)
    checks["pauli_x"] = out.success and sorted(
        d.unit[0] % 5 for d in out.D) == [1, 4]
    x = from_rational(rng.randrange(1, 10 ** 6), rng.randrange(1, 10 ** 4),
                      tower)
    checks["mult_inverse"] = scalar_congruent(
        x * x.inverse(), from_rational(1, 1, tower), 2 * tower.N)
    ok = all(checks.values())
    return (0 if ok else 1), {"checks": checks, "all_ok": ok}


def _global_flags(suppress=False):
    # subparser copies use SUPPRESS so a flag given before the subcommand
    # is not clobbered by the subparser's default
    default = argparse.SUPPRESS if suppress else None
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--p", type=int, default=default)
    shared.add_argument("--f", type=int, default=default)
    shared.add_argument("--ramified", action="store_true", default=default)
    shared.add_argument("--N", type=int, default=default)
    shared.add_argument("--output", default=default,
                        help="write the JSON payload to a file")
    return shared


def build_parser():
    parser = argparse.ArgumentParser(
        prog="padspec",
        description="exact p-adic spectral linear algebra, batch frontend",
        parents=[_global_flags(False)])
    parser.add_argument("--version", action="version", version=__version__)
    # the tower flags are accepted both before and after the subcommand
    tail = _global_flags(True)
    sub = parser.add_subparsers(
        dest="command", required=True,
        parser_class=lambda **kw: argparse.ArgumentParser(
            parents=[tail], **kw))

    for name, fn, wants_matrix in (
            ("reduce", cmd_reduce, True), ("unitary", cmd_unitary, True),
            ("partition", cmd_partition, True),
            ("unidiag", cmd_unidiag, True)):
        sp = sub.add_parser(name)
        sp.add_argument("matrix")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("funcalc")
    sp.add_argument("matrix")
    sp.add_argument("--function", required=True)
    sp.set_defaults(func=cmd_funcalc)

    for name, fn in (("window", cmd_window),):
        sp = sub.add_parser(name)
        sp.add_argument("--rule", required=True)
        sp.add_argument("--lo", type=int, required=True)
        sp.add_argument("--hi", type=int, required=True)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("series-calc")
    sp.add_argument("--rule", default="shift")
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)
    sp.add_argument("--series", required=True)
    sp.add_argument("--check-isometry", action="store_true")
    sp.set_defaults(func=cmd_series_calc)

    sp = sub.add_parser("fractal-calc")
    sp.add_argument("--rule", default="fractal1",
                    choices=["fractal1", "fractal2"])
    sp.add_argument("--lo", type=int, required=True)
    sp.add_argument("--hi", type=int, required=True)
    sp.add_argument("--band", type=int, required=True)
    sp.add_argument("--function", required=True)
    sp.set_defaults(func=cmd_fractal_calc)

    sp = sub.add_parser("born")
    sp.add_argument("matrix")
    sp.add_argument("--state", required=True)
    sp.add_argument("--set", required=True)
    sp.set_defaults(func=cmd_born)

    sp = sub.add_parser("selftest")
    sp.set_defaults(func=cmd_selftest)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 1
    payload = {"schema": SCHEMA, "command": args.command}
    try:
        code, body = args.func(args)
        payload.update(body)
    except (NotUnitarilyDiagonalisable, NotNormal, NotNaive,
            ReductionNotDiagonalisable) as exc:
        code = 2
        payload["status"] = "certified_negative"
        payload["certificate"] = certificate_json(exc.certificate) \
            if hasattr(exc.certificate, "trail") else {
                "reason": exc.certificate.reason,
                "witness": [list(c.coeffs)
                            for c in exc.certificate.witness.coeffs]}
    except (PrecisionExhausted, ImpreciseEntry) as exc:
        code = 3
        payload["status"] = "precision_exhausted"
        payload["detail"] = str(exc)
    except (BadLiteral, DigitOutOfRange, KeyError, OSError,
            json.JSONDecodeError) as exc:
        code = 1
        payload["status"] = "input_error"
        payload["detail"] = f"{type(exc).__name__}: {exc}"
    except PadspecError as exc:
        code = 1
        payload["status"] = "input_error"
        payload["detail"] = f"{type(exc).__name__}: {exc}"
    text = json.dumps(payload, indent=2, sort_keys=False)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
