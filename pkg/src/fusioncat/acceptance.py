"""Acceptance suite: eleven numbered criteria, each returning a pass/fail result.

Reference values are evaluated independently of the library code paths they
check (trigonometric expressions, surds, polynomial roots, exact rationals).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath
import numpy as np
from mpmath import mp

from .fusion import (
    VERLINDE_TOLERANCE,
    chern_simons_s3,
    classical_asymptote,
    classical_limit_constant,
    fusion_matrices,
    global_dimension_closed,
    global_dimension_sum,
    integrable_weights,
    kac_wakimoto_s3,
    level_rank_check,
    modular_data,
    s00_weyl_sum,
    verlinde_fusion,
)
from .lie_core import LieType
from .module_cat import (
    ROUTES,
    ade_graph,
    ade_trig_identity,
    annular_matrices,
    block_dimensions,
    conformal_subgroup_dim,
    e8_capstone_expression,
    embedding_catalog,
    find_embedding,
    frobenius_dimension,
    induction_table,
    level1_computed,
    level1_global_dim,
    module_global_dim,
    series_ratio_check,
    su2_module,
)
from .qnum import (
    DEFAULT_PRECISION,
    TOLERANCE,
    QContext,
    classical_superfactorial,
    classical_superfactorial_reference,
    q_barnes_integer,
    q_factorial,
    q_factorial_bb,
    q_number,
    q_superfactorial,
    q_superfactorial_bb,
)

ROSTER = (
    [("A1", k) for k in range(29)]
    + [("A2", k) for k in range(11)]
    + [("A3", k) for k in range(7)]
    + [("A4", k) for k in range(4)]
    + [(g, k) for g in ("B2", "C2", "G2") for k in range(7)]
    + [(g, k) for g in ("B3", "C3") for k in range(5)]
    + [(g, k) for g in ("D4", "D5", "F4") for k in range(4)]
    + [("E6", k) for k in range(3)]
)

# induction rules for E8: rows are vertices, columns n = 1..29
E8_INDUCTION = """
1 . . . . . . . . . 1 . . . . . . . 1 . . . . . . . . . 1
. 1 . . . . . . . 1 . 1 . . . . . 1 . 1 . . . . . . . 1 .
. . 1 . . . . . 1 . 1 . 1 . . . 1 . 1 . 1 . . . . . 1 . .
. . . 1 . . . 1 . 1 . 1 . 1 . 1 . 1 . 1 . 1 . . . 1 . . .
. . . . 1 . 1 . 1 . 1 . 1 . 2 . 1 . 1 . 1 . 1 . 1 . . . .
. . . . . 1 . 1 . . . 1 . 1 . 1 . 1 . . . 1 . 1 . . . . .
. . . . . . 1 . . . . . 1 . . . 1 . . . . . 1 . . . . . .
. . . . . 1 . . . 1 . . . 1 . 1 . . . 1 . . . 1 . . . . .
"""


def e8_induction_reference() -> np.ndarray:
    rows = [[0 if c == "." else int(c) for c in line.split()] for line in E8_INDUCTION.strip().splitlines()]
    return np.array(rows, dtype=np.int64).T


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] criterion {self.number}: {self.title} ({self.checks} checks, {self.seconds:.1f}s)"
        for f in self.failures[:5]:
            out += f"\n    - {f}"
        if len(self.failures) > 5:
            out += f"\n    - ... {len(self.failures) - 5} more"
        return out


class _Checker:
    def __init__(self, res: CriterionResult):
        self.res = res

    def close(self, label, got, want, rel=TOLERANCE) -> None:
        self.res.checks += 1
        with mp.workdps(80):
            got, want = mpmath.mpmathify(got), mpmath.mpmathify(want)
            err = abs(got - want) / max(abs(want), mpmath.mpf(1) if want == 0 else abs(want))
        if err > rel:
            self.res.failures.append(
                f"{label}: got {mpmath.nstr(got, 20)}, want {mpmath.nstr(want, 20)} (rel err {mpmath.nstr(err, 3)})"
            )

    def small(self, label, value, tol=TOLERANCE) -> None:
        self.res.checks += 1
        if abs(value) > tol:
            self.res.failures.append(f"{label}: residue {mpmath.nstr(mpmath.mpf(value), 3)} > {mpmath.nstr(tol, 3)}")

    def equal(self, label, got, want) -> None:
        self.res.checks += 1
        if isinstance(got, np.ndarray) or isinstance(want, np.ndarray):
            same = np.array_equal(np.asarray(got), np.asarray(want))
        else:
            same = got == want
        if not same:
            self.res.failures.append(f"{label}: got {got}, want {want}")

    def true(self, label, cond) -> None:
        self.res.checks += 1
        if not cond:
            self.res.failures.append(label)


def _r(x):
    return mpmath.mpf(x)


# ----------------------------------------------------------------------------


def criterion_1(c: _Checker, p: int, **_):
    for g, k in ROSTER:
        cat = integrable_weights(g, k, p)
        c.close(f"{g} k={k}", global_dimension_sum(cat), global_dimension_closed(g, k, p))


def criterion_2(c: _Checker, p: int, **_):
    with mp.workdps(p + 20):
        pi, sin, cos, csc, sec, sqrt = mp.pi, mp.sin, mp.cos, mp.csc, mp.sec, mp.sqrt
        s2, s3, s5 = sqrt(2), sqrt(3), sqrt(5)
        for k in range(1, 29):
            c.close(f"A1 k={k}", global_dimension_closed("A1", k, p), _r(k + 2) / 2 * csc(pi / (k + 2)) ** 2)
        for k in range(1, 6):
            x = pi / (k + 3)
            want = _r(3) / 256 * (k + 3) ** 2 * csc(x) ** 6 * sec(x) ** 2
            c.close(f"A2 k={k}", global_dimension_closed("A2", k, p), want)
            x = pi / (k + 4)
            want = _r(k + 4) ** 3 * csc(x) ** 12 * sec(x) ** 4 / (16384 * (2 * cos(2 * x) + 1) ** 2)
            c.close(f"A3 k={k}", global_dimension_closed("A3", k, p), want)
        pins = {
            ("E6", 1): _r(3),
            ("E6", 2): 21 / (2 * (1 - sin(3 * pi / 14))),
            ("E6", 3): 45 * (5 + 2 * s5),
            ("E6", 4): 96 * (22 + 15 * s2 + 4 * sqrt(58 + 41 * s2)),
            ("E7", 1): _r(2),
            ("E7", 2): 2 * (5 + s5),
            ("E7", 3): 21 * (5 + sqrt(21)),
            ("E8", 1): _r(1),
            ("E8", 2): _r(4),
            ("B2", 1): _r(4), ("B2", 2): _r(20), ("B2", 3): 24 * (2 + s3),
            ("C2", 1): _r(4), ("C2", 2): _r(20), ("C2", 3): 24 * (2 + s3),
            ("B3", 1): _r(4), ("B3", 2): _r(28), ("B3", 3): 16 * (4 + 2 * s2 + sqrt(20 + 14 * s2)),
            ("C3", 1): 5 + s5, ("C3", 2): 24 * (2 + s3),
            ("D4", 1): _r(4), ("D4", 2): _r(32),
            ("D5", 1): _r(4), ("D5", 2): _r(40),
            ("F4", 1): (5 + s5) / 2, ("F4", 3): 48 * (5 + 2 * sqrt(6)),
            ("G2", 1): (5 + s5) / 2,
            ("G2", 2): 3 * sqrt(3 * (5 + 4 * s3 * cos(pi / 18) + 2 * cos(pi / 9))),
            ("G2", 3): _r(21) / 2 * (5 + sqrt(21)),
        }
        for (g, k), want in pins.items():
            c.close(f"{g} k={k}", global_dimension_closed(g, k, p), want)
        roots = mp.polyroots([1, -55, 847, -5324, 14641, -14641], maxsteps=200, extraprec=2 * p)
        eps = max(z.real for z in roots if abs(z.imag) < mpmath.mpf(10) ** -20)
        c.close("E8 k=3 (largest quintic root)", global_dimension_closed("E8", 3, p), eps, rel=1e-2)
        c.close("quintic root ~ 34.64", eps, _r("34.64"), rel=1e-3)


def criterion_3(c: _Checker, p: int, **_):
    with mp.workdps(p + 20):
        sqrt = mp.sqrt
        phi = (1 + sqrt(5)) / 2
        table = {}
        for r in range(1, 9):
            table[f"A{r}"] = (_r(r + 1), [1] * (r + 1))
        for r in range(2, 6):
            table[f"B{r}"] = (_r(4), [1, sqrt(2), 1])
        table["C2"] = (_r(4), [1, sqrt(2), 1])
        table["C3"] = (5 + sqrt(5), [1, 1, phi, phi])
        table["C4"] = (_r(12), [1, 1, sqrt(3), 2, sqrt(3)])
        table["D4"] = table["D5"] = (_r(4), [1] * 4)
        table["E6"], table["E7"], table["E8"] = (_r(3), [1] * 3), (_r(2), [1] * 2), (_r(1), [1])
        table["F4"] = table["G2"] = ((5 + sqrt(5)) / 2, [1, phi])
        for name, (value, q) in table.items():
            t = LieType.parse(name)
            lookup = level1_global_dim(t, p)
            computed = level1_computed(t, p)
            for src, d in (("lookup", lookup), ("computed", computed)):
                c.close(f"{name} |A_1| ({src})", d.value, value)
                c.equal(f"{name} #objects ({src})", len(d.qdims), len(q))
                for i, (a, b) in enumerate(zip(sorted(d.qdims), sorted(mpmath.mpf(x) for x in q))):
                    c.close(f"{name} Q[{i}] ({src})", a, b)
            c.close(f"{name} |Q|^2", mp.fsum(x**2 for x in computed.qdims), value)


def _check_fusion(c: _Checker, label: str, md, full_precision: bool) -> None:
    fm = fusion_matrices(md)
    n = md.size
    c.small(f"{label} Verlinde residue", fm.max_residue, VERLINDE_TOLERANCE)
    c.equal(f"{label} N_0 = I", fm[0], np.eye(n, dtype=np.int64))
    c.true(f"{label} N nonnegative", bool((fm.N >= 0).all()))
    # all N_a N_b = N_b N_a; the float products are exact for these small integers
    nf = fm.N.astype(np.float64)
    ok = True
    for a in range(n):
        if not np.array_equal(np.matmul(nf[a], nf), np.matmul(nf, nf[a])):
            ok = False
            break
    c.true(f"{label} fusion matrices commute", ok)
    if full_precision and n > 1:
        c.equal(f"{label} N_1 full precision", verlinde_fusion(md, 1), fm[1])
    if md.cat.lie.type == LieType("A", 1):
        k = md.cat.level
        cheb = annular_matrices(ade_graph(LieType("A", k + 1)), k)
        c.true(f"{label} SU(2) fusion = Chebyshev", all(np.array_equal(fm[j], cheb[j]) for j in range(k + 1)))


def criterion_4(c: _Checker, p: int, include_e7: bool = False, **_):
    roster = list(ROSTER)
    if include_e7:
        roster += [("E7", 1)]
    for g, k in roster:
        cat = integrable_weights(g, k, p)
        md = modular_data(cat)
        for name, res in md.identity_residuals().items():
            c.small(f"{g} k={k} {name}", res)
        _check_fusion(c, f"{g} k={k}", md, full_precision=(k == 1 or g == "A1"))


def criterion_5(c: _Checker, p: int, **_):
    for n in range(2, 7):
        for k in range(0, 11):
            c.equal(f"#A_{k}(SU({n}))", integrable_weights(f"A{n - 1}", k, p).size, comb(n + k - 1, n - 1))
    c.equal("#A_30(E8)", integrable_weights("E8", 30, p).size, 20956)


def criterion_6(c: _Checker, p: int, **_):
    m = su2_module("E8")
    with mp.workdps(p + 20):
        sqrt = mp.sqrt
        s5 = sqrt(5)
        e8 = (15 * (3 + s5) + sqrt(30 * (65 + 29 * s5))) / 2
        f = (3 * (5 + s5) + sqrt(150 + 66 * s5)) / 2
        j = (5 + s5) / 2
        a28 = 30 * (12 + 5 * s5 + sqrt(3 * (85 + 38 * s5)))
        for route in ROUTES:
            c.close(f"|E8| via {route}", module_global_dim(m, route, p), e8)
        c.close("|A_28|", global_dimension_sum(integrable_weights("A1", 28, p)), a28)
        ctx = QContext(30, p)
        brackets = mp.fsum(q_number(ctx, n) for n in (1, 11, 19, 29))
        c.close("|F| from the induction table", frobenius_dimension(m, p), f)
        c.close("|F| = [1]+[11]+[19]+[29]", brackets, f)
        dims = block_dimensions(m, p)
        c.close("|J| from modular blocks", mp.fsum((d / dims[0]) ** 2 for d in dims), j)
        c.close("|J| = |A_1(G2)|", level1_global_dim("G2", p).value, j)
        c.close("sum over J of qdim(Gamma)^2 = |A_28|", mp.fsum(d**2 for d in dims), a28)
        c.equal("E8 induction table", induction_table(m.graph), e8_induction_reference())
        lhs, rhs = ade_trig_identity(m.Z, 30, p)
        c.close("kappa = 30 sine identity", lhs, 15)
        c.close("kappa = 30 sine identity (kappa / 2)", lhs, rhs)


def criterion_7(c: _Checker, p: int, **_):
    cat = embedding_catalog()
    with mp.workdps(p + 20):
        sqrt = mp.sqrt
        s2, s3, s5 = sqrt(2), sqrt(3), sqrt(5)
        c.close("|D4|", module_global_dim(su2_module("D4", cat), "embedding", p), 6)
        c.close("|E6|", module_global_dim(su2_module("E6", cat), "embedding", p), 4 * (3 + s3))
        for name in ("D4", "E6"):
            for route in ("pf_sum", "induction", "modular_blocks"):
                c.close(
                    f"|{name}| via {route}",
                    module_global_dim(su2_module(name, cat), route, p),
                    module_global_dim(su2_module(name, cat), "embedding", p),
                )
        series = {
            "antisymmetric": (lambda g: g - 2, range(4, 8), [12, 20 * (2 + s2), 60 * (5 + 2 * s5), 504 * (7 + 4 * s3)]),
            "adjoint": (lambda g: g, range(3, 7), [12, 16 * (2 + s2), 40 * (5 + 2 * s5), 288 * (7 + 4 * s3)]),
            "symmetric": (lambda g: g + 2, range(2, 6), [6, 12 * (2 + s2), 40 * (5 + 2 * s5), 360 * (7 + 4 * s3)]),
        }
        for tag, (level, gs, values) in series.items():
            for g, want in zip(gs, values):
                rec = find_embedding(f"a{g - 1}-k{level(g)}-{tag}", cat)
                c.close(f"{rec.id}", conformal_subgroup_dim(rec, p), want)
        for g in range(4, 9):
            ratio, want = series_ratio_check(g, p)
            c.close(f"ratio g={g}", ratio, _r(want.numerator) / want.denominator)
        e30 = conformal_subgroup_dim(find_embedding("e8-k30-adjoint", cat), p)
        c.close("|E_30(E8)| ~ 5.57902e22", e30, _r("5.57902e22"), rel=5e-6)
        c.close("|E_30(E8)| closed expression", e30, e8_capstone_expression(p))


def criterion_8(c: _Checker, p: int, **_):
    with mp.workdps(p + 20):
        for g in range(2, 7):
            for k in range(2, 7):
                a, b = level_rank_check(g, k, p)
                c.close(f"level-rank g={g} k={k}", a, b)
        for r in range(1, 9):
            want = _r(r + 1) * (r + 3) / 4 * mp.csc(mp.pi / (r + 3)) ** 2
            c.close(f"|A_2(A_{r})|", global_dimension_closed(f"A{r}", 2, p), want)
        c.close("|A_2(A_9)|", global_dimension_closed("A9", 2, p), 5 * 24 * (2 + mp.sqrt(3)))


def criterion_9(c: _Checker, p: int, **_):
    for name in ("E6", "E7", "E8", "F4"):
        sf = classical_superfactorial(LieType.parse(name))
        c.true(f"sf({name}) integral", sf.denominator == 1)
        c.equal(f"sf({name})", sf, classical_superfactorial_reference(LieType.parse(name)))
    c.equal("sf(G2)", classical_superfactorial(LieType("G", 2)), Fraction(40, 9))
    for fam in "BC":
        for r in range(2, 6):
            t = LieType(fam, r)
            c.equal(f"sf({t})", classical_superfactorial(t), classical_superfactorial_reference(t))
    for kappa in (7, 10, 30):
        ctx = QContext(kappa, p)
        with ctx.workdps():
            for s in range(kappa):
                lhs = q_factorial(ctx, s) * ctx.qpow(Fraction(s * (s - 1), 2))
                c.close(f"kappa={kappa} [{s}]! bridge", lhs, q_factorial_bb(ctx, s, 2))
            for r in range(1, kappa):
                t = LieType("A", r)
                lhs = q_superfactorial_bb(ctx, t, 2)
                rhs = ctx.qpow(Fraction((r + 1) * r * (r - 1), 6)) * q_superfactorial(ctx, t)
                c.close(f"kappa={kappa} Sf_q2({r}) bridge", lhs, rhs)
            for n in range(1, 7):
                for power in (1, 2):
                    c.close(
                        f"kappa={kappa} G(n+2) = Sf(n), n={n}, p=q^{power}",
                        q_barnes_integer(ctx, n + 2, power),
                        q_superfactorial_bb(ctx, LieType("A", n), power),
                    )


def criterion_10(c: _Checker, p: int, **_):
    for n in range(2, 6):
        for k in range(1, 7):
            cs = chern_simons_s3(f"A{n - 1}", k, p)
            c.close(f"CS(SU({n}), k={k}) = Kac-Wakimoto", cs, kac_wakimoto_s3(n, k, p))
            c.close(f"CS(SU({n}), k={k}) = S_00", cs, s00_weyl_sum(integrable_weights(f"A{n - 1}", k, p)))
    for g, k in ROSTER:
        c.close(f"CS({g}, k={k}) = S_00", chern_simons_s3(g, k, p), s00_weyl_sum(integrable_weights(g, k, p)))


def criterion_11(c: _Checker, p: int, **_):
    k = 10**4
    for g in ("A1", "G2"):
        got = classical_asymptote(g, [k], p)[0]
        want = classical_limit_constant(g, p)
        c.close(f"{g}: |A_k| / k^dim at k = {k}", got, want, rel=1e-3)
        c.res.notes.append(f"{g}: ratio - 1 = {mpmath.nstr(got / want - 1, 5)} at k = {k}")


CRITERIA = {
    1: ("closed form = summation on the roster", criterion_1),
    2: ("global dimension pins", criterion_2),
    3: ("level-one table", criterion_3),
    4: ("modular identities and Verlinde fusion", criterion_4),
    5: ("object counts", criterion_5),
    6: ("E8 / SU(2) worked example", criterion_6),
    7: ("conformal subgroup dimensions", criterion_7),
    8: ("level-rank duality", criterion_8),
    9: ("superfactorial identities", criterion_9),
    10: ("Chern-Simons S^3", criterion_10),
    11: ("large-level asymptotics", criterion_11),
}


def run_criterion(number: int, precision: int = DEFAULT_PRECISION, include_e7: bool = False) -> CriterionResult:
    title, fn = CRITERIA[number]
    res = CriterionResult(number, title)
    t0 = time.perf_counter()
    try:
        fn(_Checker(res), precision, include_e7=include_e7)
    except Exception as exc:  # report, do not abort the suite
        res.failures.append(f"raised {type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t0
    return res


def run_all(precision: int = DEFAULT_PRECISION, include_e7: bool = False, only=None):
    for n in sorted(only or CRITERIA):
        yield run_criterion(n, precision, include_e7)
