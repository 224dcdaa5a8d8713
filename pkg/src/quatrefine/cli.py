"""Command-line interface.  Exit status 1 flags bad input, 2 a failed
internal identity."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .lattice import BudgetExceeded
from .orders import (
    CASES, OrderError, explicit_maximal_order, minimal_G_order, minimal_normalizer,
    normalizer_membership, reduced_units, to_json,
)
from .quadclass import class_number, zeta_minus_one
from .quadfield import FieldError, check_d, fundamental_unit, squarefree
from .quatalg import AlgebraError, parse_algebra, ramification
from .recipe import ConsistencyError, RefinedCounts, full_counts


class ValidationError(Exception):
    pass


def _frac(q: Fraction | None) -> str:
    if q is None:
        return ""
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _print_counts(rc: RefinedCounts, out) -> None:
    for g, (t, h) in rc.per_group.items():
        ts = "?" if t is None else str(t)
        print(f"{g} t={ts} h={h}", file=out)
    print(f"mass={_frac(rc.mass)} h_total={rc.h_total} t_total="
          f"{'?' if rc.t_total is None else rc.t_total}", file=out)
    print("checks: " + ", ".join(f"{k}={_frac(v) if v is not None else 'n/a'}"
                                 for k, v in rc.checks.items()), file=out)


def _require_residuals(rc: RefinedCounts) -> None:
    if not rc.residuals_ok():
        raise ConsistencyError(f"nonzero residual at d={rc.d}: {rc.checks}")


def cmd_refined(args, out) -> int:
    d = check_d(args.d)
    if args.alg:
        alg = parse_algebra(args.alg, d)
    else:
        alg = args.tag or "Hinf"
    rc = full_counts(d, alg)
    if args.json:
        print(rc.to_json(), file=out)
    else:
        _print_counts(rc, out)
    _require_residuals(rc)
    return 0


def cmd_prime(args, out) -> int:
    from .primecase import counts_prime, crosscheck_prime
    rc = counts_prime(args.p)
    if args.json:
        print(rc.to_json(), file=out)
    else:
        for g, (t, h) in rc.per_group.items():
            if t or h:
                print(f"{g} t={t} h={h}", file=out)
        print(f"t(H)={rc.t_total} h(H)={rc.h_total}", file=out)
    _require_residuals(rc)
    if args.crosscheck:
        diff = crosscheck_prime(args.p)
        if diff:
            for g, (a, b) in sorted(diff.items()):
                print(f"mismatch {g}: closed form {a}, recipe {b}", file=sys.stderr)
            return 2
        print("crosscheck: closed forms agree with the general recipe", file=out)
    return 0


def cmd_ssab(args, out) -> int:
    from .ssab import census, exists_real_quadratic_endalgebra
    c = census(args.p)
    exists = exists_real_quadratic_endalgebra(args.p)
    if args.format == "json":
        data = c.to_dict()
        data["real_quadratic_endalgebra"] = exists
        print(json.dumps(data, ensure_ascii=False), file=out)
    else:
        w = csv.writer(out)
        w.writerow(["p", "group", "count"])
        for g, n in c.per_group.items():
            w.writerow([args.p, g, n])
        w.writerow([args.p, "total", c.h_pi])
    return 0


def cmd_classnum(args, out) -> int:
    print(class_number(args.m), file=out)
    return 0


def cmd_zeta(args, out) -> int:
    print(_frac(zeta_minus_one(check_d(args.d))), file=out)
    return 0


def cmd_cmorders(args, out) -> int:
    from .cmorders import cm_table_json
    print(cm_table_json(check_d(args.d)), file=out)
    return 0


def cmd_order_verify(args, out) -> int:
    d = check_d(args.d)
    fu = fundamental_unit(d)
    O = explicit_maximal_order(args.case, fu)
    spec = CASES[args.case]
    ug = reduced_units(O, fu)
    small = minimal_G_order(spec.contains, fu)
    gens, _ = minimal_normalizer(small.group_tag, small.alg)
    report = {
        "case": args.case,
        "d": d,
        "algebra": O.alg.label(),
        "disc": str(O.disc),
        "disc_H": str(ramification(O.alg).disc_H),
        "maximal": O.is_maximal(),
        "contains_minimal": spec.contains,
        "unit_group": ug.tag.label,
        "unit_group_order": len(ug.reps),
        "normalizes": {str(g): normalizer_membership(g, O) for g in gens},
        "order": json.loads(to_json(O)),
    }
    print(json.dumps(report, ensure_ascii=False, indent=2), file=out)
    return 0


SWEEP_HEADER = ["d", "algebra_tag", "group", "t", "h", "mass_residual", "eichler_residual"]


def sweep_rows(d: int) -> tuple[list[list[str]], list[str]]:
    rows, errors = [], []
    fu = fundamental_unit(d)
    tags = ["A", "C"] + (["B", "D"] if fu.norm_sign == 1 else [])
    for tag in tags:
        try:
            rc = full_counts(d, tag)
        except (ConsistencyError, AssertionError) as exc:
            errors.append(f"d={d} {tag}: {exc}")
            rows.append([str(d), tag, "ERROR", "", "", "", ""])
            continue
        if not rc.residuals_ok():
            errors.append(f"d={d} {tag}: residuals {rc.checks}")
        mr = _frac(rc.checks["mass_residual"])
        er = _frac(rc.checks["eichler_residual"])
        for g, (t, h) in rc.per_group.items():
            rows.append([str(d), tag, g, "" if t is None else str(t), str(h), mr, er])
    return rows, errors


def cmd_sweep(args, out) -> int:
    ds = [d for d in range(max(6, args.dmin), args.dmax + 1) if squarefree(d)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(sweep_rows, ds))
    else:
        results = [sweep_rows(d) for d in ds]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SWEEP_HEADER)
    errors = []
    for rows, errs in results:
        w.writerows(rows)
        errors.extend(errs)
    if args.report == "-":
        out.write(buf.getvalue())
    else:
        with open(args.report, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    for e in errors:
        print(e, file=sys.stderr)
    print(f"{len(ds)} fields, {len(errors)} failures", file=sys.stderr)
    return 2 if errors else 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="quatrefine",
                 description="Refined class and type numbers of definite quaternion orders")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("refined", help="t(G) and h(G) for all G, d >= 6")
    p.add_argument("--d", type=int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--alg", help="structure constants 'a,b'; x:y means x + y sqrt(d); "
                   "write --alg=-1,-7 for negative values")
    g.add_argument("--tag", choices=["A", "B", "C", "D", "Hinf"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_refined)

    p = sub.add_parser("prime", help="closed forms for F = Q(sqrt p)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--crosscheck", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_prime)

    p = sub.add_parser("ssab", help="superspecial abelian surface census")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=cmd_ssab)

    p = sub.add_parser("classnum", help="class number of Q(sqrt m)")
    p.add_argument("-m", type=int, required=True)
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser("zeta", help="zeta_F(-1) for F = Q(sqrt d)")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("cmorders", help="CM orders with nontrivial unit index")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_cmorders)

    p = sub.add_parser("order-verify", help="rebuild and check a catalogued maximal order")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--case", required=True, choices=sorted(CASES))
    p.set_defaults(func=cmd_order_verify)

    p = sub.add_parser("sweep", help="run the identity checks over square-free d")
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--dmin", type=int, default=6)
    p.add_argument("--report", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, sys.stdout)
    except (ConsistencyError, AssertionError) as exc:
        print(f"error: consistency check failed: {exc}", file=sys.stderr)
        return 2
    except (FieldError, AlgebraError, OrderError, BudgetExceeded, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
