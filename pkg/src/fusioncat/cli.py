"""Command-line interface.

    fusioncat globaldim A1 --level 10
    fusioncat smatrix "SU(3)" -k 2 --format json
    fusioncat subgroup e8-k30-adjoint
    fusioncat check

Numbers are printed as decimal strings with ``--precision`` significant digits.
Exit status: 0 on success, 1 on a mathematical rejection or failed check,
2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from fractions import Fraction

import mpmath

from . import acceptance
from .fusion import (
    FusionError,
    NotIntegrable,
    chern_simons_s3,
    global_dimension_closed,
    global_dimension_sum,
    integrable_weights,
    kac_wakimoto_s3,
    level_rank_check,
    modular_data,
    verlinde_fusion,
)
from .lie_core import (
    DEFAULT_WEYL_CAP,
    LieType,
    LieTypeError,
    WeylCapExceeded,
    build_lie_data,
    inner_product,
    level_of,
    ribbon_table,
)
from .module_cat import (
    CatalogError,
    RouteUnavailable,
    conformal_subgroup_dim,
    embedding_catalog,
    find_embedding,
    level1_global_dim,
)
from .qnum import DEFAULT_PRECISION, QContext, QDomainError, classical_superfactorial, q_superfactorial

PRECISION_ENV = "FUSIONCAT_PRECISION"
CATALOG_ENV = "FUSIONCAT_CATALOG"
WEYL_CAP_ENV = "FUSIONCAT_WEYL_CAP"

# globaldim also sums squared quantum dimensions when there are at most this many objects
SUM_ROUTE_CAP = 5000


def _group(s: str) -> LieType:
    try:
        return LieType.parse(s)
    except LieTypeError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _weight(s: str) -> tuple[int, ...]:
    body = s.strip().strip("()[]")
    if not re.fullmatch(r"\s*-?\d+(\s*,\s*-?\d+)*\s*", body):
        raise argparse.ArgumentTypeError(f"cannot parse weight {s!r}; use e.g. 1,0,2")
    return tuple(int(x) for x in body.split(","))


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {s}")
    return v


class Formatter:
    def __init__(self, digits: int):
        self.digits = digits

    def real(self, x) -> str:
        if isinstance(x, (int, Fraction)):
            return str(x)
        with mpmath.workdps(self.digits + 12):
            s = mpmath.nstr(mpmath.mpf(x), self.digits, min_fixed=-6, max_fixed=16)
        return s[:-2] if s.endswith(".0") else s

    def cplx(self, z):
        with mpmath.workdps(self.digits + 12):
            z = mpmath.mpc(z)
            # parts below the printed precision are rounding noise
            noise = mpmath.mpf(10) ** -self.digits * max(1, abs(z))
            re = z.real if abs(z.real) > noise else 0
            im = z.imag if abs(z.imag) > noise else 0
            return {"re": self.real(re), "im": self.real(im)}


def _cplx_str(c: dict) -> str:
    im = c["im"]
    if im.startswith("-"):
        return f"{c['re']}-{im[1:]}j"
    return f"{c['re']}+{im}j"


def _base(args, t: LieType | None, k: int | None) -> dict:
    return {
        "command": args.command,
        "group": None if t is None else str(t),
        "level": k,
        "altitude": None if t is None or k is None else t.dual_coxeter + k,
        "precision": args.precision,
    }


# ----------------------------------------------------------------------------
# commands


def cmd_weights(args, fmt: Formatter) -> dict:
    cat = integrable_weights(args.group, args.level, args.precision)
    rows = [
        {
            "index": i,
            "weight": ",".join(map(str, w)),
            "level": str(level_of(cat.lie, w)),
            "qdim": fmt.real(q),
        }
        for i, (w, q) in enumerate(zip(cat.weights, cat.quantum_dimensions))
    ]
    return {**_base(args, args.group, args.level), "count": cat.size, "values": rows}


def _weight_labels(cat) -> list[str]:
    return ["(" + ",".join(map(str, w)) + ")" for w in cat.weights]


def cmd_smatrix(args, fmt: Formatter) -> dict:
    cat = integrable_weights(args.group, args.level, args.precision)
    md = modular_data(cat, args.weyl_cap)
    return {
        **_base(args, args.group, args.level),
        "labels": _weight_labels(cat),
        "values": [[fmt.cplx(z) for z in row] for row in md.S],
    }


def cmd_tmatrix(args, fmt: Formatter) -> dict:
    cat = integrable_weights(args.group, args.level, args.precision)
    md = modular_data(cat, args.weyl_cap)
    lie, kappa = cat.lie, cat.altitude
    rho = lie.weyl_vector
    rows = []
    for w, tz, tt in zip(cat.weights, md.T, md.t):
        h = inner_product(lie, w, tuple(a + 2 * b for a, b in zip(w, rho))) / (2 * kappa)
        rows.append({"weight": ",".join(map(str, w)), "h": str(h), "T": fmt.cplx(tz), "t": fmt.cplx(tt)})
    c = Fraction(lie.dimension * cat.level, kappa)
    return {**_base(args, args.group, args.level), "central_charge": str(c), "values": rows}


def cmd_fusion(args, fmt: Formatter) -> dict:
    cat = integrable_weights(args.group, args.level, args.precision)
    m = cat.check_member(args.weight)
    md = modular_data(cat, args.weyl_cap)
    n = verlinde_fusion(md, cat.index[m])
    return {
        **_base(args, args.group, args.level),
        "weight": ",".join(map(str, m)),
        "labels": _weight_labels(cat),
        "values": n.tolist(),
    }


def cmd_globaldim(args, fmt: Formatter) -> dict:
    t, k, p = args.group, args.level, args.precision
    closed = global_dimension_closed(t, k, p)
    out = {**_base(args, t, k), "value": fmt.real(closed), "closed_form": fmt.real(closed)}
    cat = integrable_weights(t, k, p)
    out["objects"] = cat.size
    if cat.size <= SUM_ROUTE_CAP:
        s = global_dimension_sum(cat)
        out["sum"] = fmt.real(s)
        with cat.ctx.workdps():
            out["relative_difference"] = mpmath.nstr(abs(s - closed) / closed, 3)
    else:
        out["sum"] = None
    return out


def cmd_superfactorial(args, fmt: Formatter) -> dict:
    t, k, p = args.group, args.level, args.precision
    ctx = QContext(t.dual_coxeter + k, p)
    return {
        **_base(args, t, k),
        "value": fmt.real(q_superfactorial(ctx, t)),
        "classical": str(classical_superfactorial(t)),
    }


def _catalog(args):
    return embedding_catalog(path=args.catalog)


def cmd_subgroup(args, fmt: Formatter) -> dict:
    rec = find_embedding(args.id, _catalog(args))
    p = args.precision
    a = global_dimension_closed(rec.inner_type, rec.level, p)
    j = level1_global_dim(rec.outer, p)
    e = conformal_subgroup_dim(rec, p)
    c_in, _ = rec.central_charges()
    return {
        **_base(args, rec.inner_type, rec.level),
        "id": rec.id,
        "embedding": f"{rec.inner_type} level {rec.level} in {rec.outer}",
        "central_charge": str(c_in),
        "global_dim_A": fmt.real(a),
        "global_dim_J": fmt.real(j.value),
        "value": fmt.real(e),
    }


def cmd_catalog(args, fmt: Formatter) -> dict:
    rows = []
    for rec in _catalog(args):
        c_in, _ = rec.central_charges()
        rows.append({
            "id": rec.id,
            "group": str(rec.inner_type) if rec.is_simple else "x".join(str(t) for t, _ in rec.inner),
            "level": rec.level if rec.is_simple else ",".join(str(k) for _, k in rec.inner),
            "overgroup": str(rec.outer),
            "tag": rec.tag,
            "central_charge": str(c_in),
        })
    return {**_base(args, None, None), "count": len(rows), "values": rows}


def cmd_ribbon(args, fmt: Formatter) -> dict:
    lie = build_lie_data(args.group)
    lam = tuple(args.weight)
    rows = [
        {"root": ",".join(map(str, a)), "height": h, "value": str(v)}
        for (a, v), h in zip(ribbon_table(lie, lam), lie.root_heights)
    ]
    return {
        **_base(args, args.group, None),
        "weight": ",".join(map(str, lam)),
        "weyl_vector": ",".join(map(str, lie.weyl_vector)),
        "values": rows,
    }


def cmd_cs3(args, fmt: Formatter) -> dict:
    t, k, p = args.group, args.level, args.precision
    out = {**_base(args, t, k), "value": fmt.real(chern_simons_s3(t, k, p))}
    if t.family == "A":
        out["kac_wakimoto"] = fmt.real(kac_wakimoto_s3(t.rank + 1, k, p))
    return out


def cmd_levelrank(args, fmt: Formatter) -> dict:
    a, b = level_rank_check(args.g, args.k, args.precision)
    out = {
        **_base(args, LieType("A", args.g - 1) if args.g > 1 else None, args.k),
        "lhs": fmt.real(a),
        "rhs": fmt.real(b),
    }
    with mpmath.workdps(args.precision + 12):
        out["relative_difference"] = mpmath.nstr(abs(a - b) / abs(a), 3)
    return out


def cmd_check(args, fmt: Formatter) -> dict:
    results = []
    for res in acceptance.run_all(args.precision, include_e7=args.e7, only=args.criteria):
        if args.format == "table":
            print(res.line(), flush=True)
        results.append({
            "criterion": res.number,
            "title": res.title,
            "passed": res.passed,
            "checks": res.checks,
            "failures": res.failures,
            "seconds": round(res.seconds, 2),
        })
    ok = all(r["passed"] for r in results)
    return {
        **_base(args, None, None),
        "passed": ok,
        "values": results,
        "_exit": 0 if ok else 1,
        "_printed": args.format == "table",
    }


# ----------------------------------------------------------------------------
# output


def _scalar_items(payload: dict):
    return [(k, v) for k, v in payload.items() if k not in ("values", "labels") and not k.startswith("_")]


def _cell(v) -> str:
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return _cplx_str(v)
    if isinstance(v, list):
        return "; ".join(map(str, v)) if v else ""
    return "" if v is None else str(v)


def _tabular(payload: dict):
    """(header, rows) for list-valued payloads, else None."""
    values = payload.get("values")
    if not isinstance(values, list) or not values:
        return None
    if "labels" in payload:
        return [""] + payload["labels"], [[lab] + [_cell(v) for v in row] for lab, row in zip(payload["labels"], values)]
    keys = list(values[0].keys())
    return keys, [[_cell(r[k]) for k in keys] for r in values]


def emit(payload: dict, form: str, out=None) -> None:
    out = out or sys.stdout
    if form == "json":
        json.dump({k: v for k, v in payload.items() if not k.startswith("_")}, out, indent=2)
        out.write("\n")
        return
    table = _tabular(payload)
    if form == "csv":
        w = csv.writer(out, lineterminator="\n")
        if table:
            w.writerow(table[0])
            w.writerows(table[1])
        else:
            for k, v in _scalar_items(payload):
                w.writerow([k, _cell(v)])
        return
    if payload.get("_printed"):
        return
    for k, v in _scalar_items(payload):
        if v is not None:
            out.write(f"{k}: {_cell(v)}\n")
    if table:
        header, rows = table
        widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(wd) for h, wd in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(x.ljust(wd) for x, wd in zip(r, widths)).rstrip() + "\n")


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-p", "--precision", type=int,
        default=int(os.environ.get(PRECISION_ENV, DEFAULT_PRECISION)),
        help=f"significant digits (default {DEFAULT_PRECISION}, env {PRECISION_ENV})",
    )
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument(
        "--weyl-cap", type=int, default=int(os.environ.get(WEYL_CAP_ENV, DEFAULT_WEYL_CAP)),
        help="refuse Weyl-group sums over larger orbits (default 10^7)",
    )
    common.add_argument("--catalog", default=os.environ.get(CATALOG_ENV), help="conformal-embedding catalog JSON")

    parser = argparse.ArgumentParser(prog="fusioncat", description="Global dimensions of A_k(G) and its quantum subgroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, level=True, group=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if group:
            sp.add_argument("group", type=_group, help='e.g. A3, E8, "SU(4)", "Spin(10)", "Sp(6)"')
        if level:
            sp.add_argument("-k", "--level", type=_nonneg, required=True)
        sp.set_defaults(func=func)
        return sp

    add("weights", cmd_weights, "integrable weights with levels and quantum dimensions")
    add("smatrix", cmd_smatrix, "modular S matrix")
    add("tmatrix", cmd_tmatrix, "modular T matrix, conformal weights and t = T exp(2 pi i c / 24)")
    add("fusion", cmd_fusion, "Verlinde fusion matrix of one object").add_argument("weight", type=_weight)
    add("globaldim", cmd_globaldim, "global dimension by closed form and by summation")
    add("superfactorial", cmd_superfactorial, "quantum Lie superfactorial at q = exp(i pi / (g + k))")
    add("subgroup", cmd_subgroup, "global dimension of a conformally exceptional quantum subgroup",
        level=False, group=False).add_argument("id", help="catalog id, e.g. e8-k30-adjoint")
    add("catalog", cmd_catalog, "list the conformal-embedding catalog", level=False, group=False)
    add("ribbon", cmd_ribbon, "scalar products of a weight with the positive roots", level=False).add_argument(
        "weight", type=_weight)
    add("cs3", cmd_cs3, "Chern-Simons partition function on S^3")
    lr = add("levelrank", cmd_levelrank, "k |A_k(SU(g))| against g |A_g(SU(k))|", level=False, group=False)
    lr.add_argument("g", type=_nonneg)
    lr.add_argument("k", type=_nonneg)
    chk = add("check", cmd_check, "run the acceptance suite", level=False, group=False)
    chk.add_argument("--e7", action="store_true", help="include E7 modular data (slow)")
    chk.add_argument("--criteria", type=int, nargs="+", choices=sorted(acceptance.CRITERIA), metavar="N")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.precision < 30:
        parser.error("--precision must be >= 30")
    fmt = Formatter(args.precision)
    try:
        payload = args.func(args, fmt)
    except (WeylCapExceeded, QDomainError, NotIntegrable, FusionError, RouteUnavailable, CatalogError,
            KeyError, ValueError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"fusioncat: error: {msg}", file=sys.stderr)
        return 1
    emit(payload, args.format)
    return payload.get("_exit", 0)


if __name__ == "__main__":
    sys.exit(main())
