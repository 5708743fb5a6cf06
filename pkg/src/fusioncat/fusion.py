"""The fusion category A_k(G): integrable weights, modular data, Verlinde fusion.

Weights are integer tuples on the fundamental-weight basis; the trivial
object is always ``cat.weights[0]``.  Numerical values are mpmath numbers at
the working precision of the category's :class:`~fusioncat.qnum.QContext`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import mpmath
import numpy as np
from mpmath import mp

from ._hp import FixedMatrix
from .lie_core import (
    DEFAULT_WEYL_CAP,
    LieData,
    LieType,
    _rational_inverse,
    build_lie_data,
    dominant_conjugate,
    inner_product,
    level_of,
    weyl_orbit,
)
from .qnum import DEFAULT_PRECISION, TOLERANCE, QContext, q_number, q_superfactorial

VERLINDE_TOLERANCE = 1e-9
WEIGHT_SYSTEM_CAP = 10**5


class FusionError(RuntimeError):
    """Internal consistency failure (non-integral fusion, vanishing denominators, ...)."""


class NotIntegrable(ValueError):
    """Raised for a weight that is not an object of A_k(G)."""


def _as_lie(lie) -> LieData:
    if isinstance(lie, LieData):
        return lie
    if isinstance(lie, str):
        lie = LieType.parse(lie)
    return build_lie_data(lie)


def weight_sort_key(lie: LieData, lam) -> tuple:
    # ascending level, then descending on the coordinates read from the last one
    return (level_of(lie, lam), tuple(-x for x in reversed(lam)))


@dataclass(frozen=True, eq=False)
class LevelKCategory:
    lie: LieData
    level: int
    weights: tuple[tuple[int, ...], ...]
    ctx: QContext

    @property
    def altitude(self) -> int:
        return self.ctx.altitude

    @property
    def size(self) -> int:
        return len(self.weights)

    @cached_property
    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.weights)}

    @cached_property
    def _pairing(self) -> tuple[int, np.ndarray]:
        """(D, M) with M[i, a] = D <omega_i, alpha_a> as integers."""
        d, qint = self.lie.integer_form()
        roots = np.array([[int(x) for x in a] for a in self.lie.positive_roots], dtype=np.int64).reshape(
            -1, self.lie.rank
        )
        return d, qint @ roots.T

    def ribbon_values(self, lam) -> list[Fraction]:
        """<lam + rho, alpha> for every positive root, exact."""
        d, m = self._pairing
        v = (np.asarray(lam, dtype=np.int64) + 1) @ m
        return [Fraction(int(x), d) for x in v]

    @cached_property
    def weyl_denominator(self):
        with self.ctx.workdps():
            return mp.fprod(q_number(self.ctx, x) for x in self.ribbon_values((0,) * self.lie.rank))

    @cached_property
    def quantum_dimensions(self) -> list:
        return [quantum_dimension(self, w) for w in self.weights]

    def check_member(self, lam) -> tuple[int, ...]:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.lie.rank:
            raise ValueError(f"weight {lam} has {len(lam)} coordinates, {self.lie.type} has rank {self.lie.rank}")
        if min(lam) < 0 or level_of(self.lie, lam) > self.level:
            raise NotIntegrable(
                f"weight {lam} is not integrable at level {self.level} for {self.lie.type}"
            )
        return lam


def integrable_weights(lie, k: int, precision: int = DEFAULT_PRECISION) -> LevelKCategory:
    """All dominant integral weights of level at most k, in the pinned order."""
    lie = _as_lie(lie)
    if k < 0:
        raise ValueError(f"level must be >= 0, got {k}")
    comarks = [int(c) for c in lie.comarks]
    r = lie.rank
    out: list[tuple[int, ...]] = []
    cur = [0] * r

    def rec(i: int, budget: int):
        if i == r:
            out.append(tuple(cur))
            return
        for v in range(budget // comarks[i] + 1):
            cur[i] = v
            rec(i + 1, budget - v * comarks[i])
        cur[i] = 0

    rec(0, k)
    out.sort(key=lambda w: weight_sort_key(lie, w))
    return LevelKCategory(lie, k, tuple(out), QContext(lie.dual_coxeter + k, precision))


def quantum_dimension(cat: LevelKCategory, n) -> mpmath.mpf:
    """q-deformed Weyl dimension formula at q = exp(i pi / (g + k))."""
    n = cat.check_member(n)
    ctx = cat.ctx
    with ctx.workdps():
        num = mp.fprod(q_number(ctx, x) for x in cat.ribbon_values(n))
        return num / cat.weyl_denominator


def quantum_dimension_at(lie, k: int, lam, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Quantum dimension of one weight at level k, without enumerating the category."""
    lie = _as_lie(lie)
    cat = LevelKCategory(lie, k, (), QContext(lie.dual_coxeter + k, precision))
    return quantum_dimension(cat, lam)


def global_dimension_sum(cat: LevelKCategory) -> mpmath.mpf:
    """Sum of squared quantum dimensions."""
    with cat.ctx.workdps():
        return mp.fsum(x**2 for x in cat.quantum_dimensions)


# ----------------------------------------------------------------------------
# closed forms


def s00_closed_form(lie, k: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """S_00 from the quantum superfactorial (no Weyl sum)."""
    lie = _as_lie(lie)
    ctx = QContext(lie.dual_coxeter + k, precision)
    r, gamma, kappa = lie.rank, lie.coxeter, ctx.altitude
    npos = r * gamma // 2
    with ctx.workdps():
        delta = mpmath.mpf(lie.delta.numerator) / lie.delta.denominator
        sf = q_superfactorial(ctx, lie.type)
        return (
            mpmath.mpf(2) ** npos * mp.sqrt(delta) * mp.sinpi(mpmath.mpf(1) / kappa) ** npos * sf
            / mpmath.mpf(kappa) ** (mpmath.mpf(r) / 2)
        )


def global_dimension_closed(lie, k: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Global dimension of A_k(G) from the superfactorial formula."""
    lie = _as_lie(lie)
    ctx = QContext(lie.dual_coxeter + k, precision)
    r, gamma, kappa = lie.rank, lie.coxeter, ctx.altitude
    with ctx.workdps():
        delta = mpmath.mpf(lie.delta.numerator) / lie.delta.denominator
        sf = q_superfactorial(ctx, lie.type)
        return mpmath.mpf(kappa) ** r / (
            mpmath.mpf(2) ** (r * gamma) * delta * mp.sinpi(mpmath.mpf(1) / kappa) ** (r * gamma) * sf**2
        )


def chern_simons_s3(lie, k: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Z_CS[S^3, G, k], which equals S_00."""
    return s00_closed_form(lie, k, precision)


def kac_wakimoto_s3(n: int, k: int, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """Product formula for Z_CS[S^3, SU(N), k]."""
    kappa = n + k
    with mp.workdps(precision + 12):
        out = mpmath.mpf(kappa) ** (-mpmath.mpf(n) / 2) * mp.sqrt(mpmath.mpf(kappa) / n)
        for j in range(1, n):
            out *= (2 * mp.sinpi(mpmath.mpf(j) / kappa)) ** (n - j)
        return out


def _global_dim_unitary(rank: int, k: int, precision: int):
    # |A_k(A_0)| = 1: the trivial group has a single object
    if rank == 0:
        return mpmath.mpf(1)
    return global_dimension_closed(LieType("A", rank), k, precision)


def level_rank_check(g: int, k: int, precision: int = DEFAULT_PRECISION):
    """(k |A_k(SU(g))|, g |A_g(SU(k))|)."""
    if g < 1 or k < 1:
        raise ValueError("g and k must be >= 1")
    with mp.workdps(precision + 12):
        return k * _global_dim_unitary(g - 1, k, precision), g * _global_dim_unitary(k - 1, g, precision)


def classical_limit_constant(lie, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """1 / (2^{r gamma} Delta pi^{r gamma} sf_G^2) with the classical superfactorial."""
    from .qnum import classical_superfactorial

    lie = _as_lie(lie)
    n = lie.rank * lie.coxeter
    sf = classical_superfactorial(lie.type)
    with mp.workdps(precision + 12):
        delta = mpmath.mpf(lie.delta.numerator) / lie.delta.denominator
        sfm = mpmath.mpf(sf.numerator) / sf.denominator
        return 1 / (mpmath.mpf(2) ** n * delta * mp.pi**n * sfm**2)


def classical_asymptote(lie, k_list, precision: int = DEFAULT_PRECISION) -> list:
    """|A_k(G)| / k^{dim G} for each k."""
    lie = _as_lie(lie)
    ks = list(k_list)
    if any(b <= a for a, b in zip(ks, ks[1:])):
        raise ValueError("k values must be increasing")
    with mp.workdps(precision + 12):
        return [global_dimension_closed(lie, k, precision) / mpmath.mpf(k) ** lie.dimension for k in ks]


# ----------------------------------------------------------------------------
# modular data


@dataclass(frozen=True, eq=False)
class ModularData:
    cat: LevelKCategory
    S: tuple  # rows of mpc
    T: tuple  # diagonal of mpc
    t: tuple  # T exp(2 pi i c / 24)
    C: np.ndarray  # charge conjugation permutation matrix
    conjugate: tuple[int, ...]  # index of the dual object

    @property
    def size(self) -> int:
        return len(self.S)

    @cached_property
    def fixed_S(self) -> FixedMatrix:
        return FixedMatrix.from_rows(self.S, self.cat.ctx.working_dps)

    def identity_residuals(self) -> dict:
        """Max-entry residuals of the modular identities, computed in fixed point."""
        s = self.fixed_S
        n = self.size
        dps = self.cat.ctx.working_dps
        ident = FixedMatrix.identity(n, s.bits)
        c = FixedMatrix.from_int_matrix(self.C, s.bits)
        st = s.scale_columns(s.fixed_vector(self.T, dps))
        st2 = st @ st
        st3 = st2 @ st
        s2 = s @ s
        return {
            "symmetric": (s - s.transpose()).max_abs(),
            "unitary": (s @ s.conj_transpose() - ident).max_abs(),
            "ST^3 = S^2": (st3 - s2).max_abs(),
            "S^2 = C": (s2 - c).max_abs(),
            "C^2 = 1": (c @ c - ident).max_abs(),
        }

    def quantum_dimensions(self) -> list:
        with self.cat.ctx.workdps():
            s00 = self.S[0][0]
            return [mpmath.re(self.S[n][0] / s00) for n in range(self.size)]


def _phase_table(modulus: int, dps: int, sign: int = -1) -> list:
    with mp.workdps(dps):
        return [mp.expj(sign * 2 * mp.pi * mpmath.mpf(j) / modulus) for j in range(modulus)]


def _alternating_sums(lie: LieData, left, right, kappa: int, dps: int, cap: int, sign: int):
    """Matrix of sum_w eps_w exp(sign 2 pi i <w(l), r> / kappa) for l in left, r in right.

    ``left`` must be strictly dominant (regular) integral weights.
    """
    d, qint = lie.integer_form()
    modulus = d * kappa
    table = _phase_table(modulus, dps, sign)
    right = np.asarray(right, dtype=np.int64)
    rq = qint @ right.T  # (r, nr)
    nr = len(right)
    out = []
    for lam in left:
        pts, lens = weyl_orbit(lie, lam, cap)
        signs = np.where(lens % 2 == 0, 1, -1)
        e = (pts @ rq) % modulus  # (|W|, nr)
        flat = (e + np.arange(nr) * modulus).ravel()
        counts = np.bincount(flat, weights=np.repeat(signs, nr), minlength=nr * modulus)
        counts = np.rint(counts).astype(np.int64).reshape(nr, modulus)
        row = []
        with mp.workdps(dps):
            for c in counts:
                nz = np.nonzero(c)[0]
                row.append(mp.fsum(int(c[j]) * table[j] for j in nz))
        out.append(row)
    return out


def s00_weyl_sum(cat: LevelKCategory, weyl_cap: int = DEFAULT_WEYL_CAP) -> mpmath.mpf:
    """S_00 from the Kac-Peterson alternating sum alone (one orbit, no full S)."""
    lie, ctx = cat.lie, cat.ctx
    rho = tuple(1 for _ in range(lie.rank))
    (x,), = _alternating_sums(lie, [rho], [rho], ctx.altitude, ctx.working_dps, weyl_cap, sign=-1)
    npos = lie.num_positive_roots
    with ctx.workdps():
        ipow = [1, 1j, -1, -1j][npos % 4]
        delta = mpmath.mpf(lie.delta.numerator) / lie.delta.denominator
        val = mpmath.mpc(ipow) * x * mp.sqrt(delta) / mpmath.mpf(ctx.altitude) ** (mpmath.mpf(lie.rank) / 2)
        if abs(val.imag) > TOLERANCE or val.real <= 0:
            raise FusionError(f"S_00 is not real positive: {val}")
        return val.real


def modular_data(cat: LevelKCategory, weyl_cap: int = DEFAULT_WEYL_CAP) -> ModularData:
    """Kac-Peterson S and T matrices and the charge conjugation."""
    lie, ctx = cat.lie, cat.ctx
    kappa, r = ctx.altitude, lie.rank
    dps = ctx.working_dps
    shifted = [tuple(x + 1 for x in w) for w in cat.weights]
    sums = _alternating_sums(lie, shifted, shifted, kappa, dps, weyl_cap, sign=-1)
    npos = lie.num_positive_roots
    with mp.workdps(dps):
        ipow = [mpmath.mpc(1), mpmath.mpc(0, 1), mpmath.mpc(-1), mpmath.mpc(0, -1)][npos % 4]
        delta = mpmath.mpf(lie.delta.numerator) / lie.delta.denominator
        pref = ipow * mp.sqrt(delta) / mpmath.mpf(kappa) ** (mpmath.mpf(r) / 2)
        S = tuple(tuple(pref * x for x in row) for row in sums)
        for x in S[0]:
            if abs(x.imag) > TOLERANCE or x.real <= 0:
                raise FusionError(f"row 0 of S is not real positive: {x}")
        S = tuple(
            tuple(mpmath.mpc(x.real, 0) if i == 0 or j == 0 else x for j, x in enumerate(row))
            for i, row in enumerate(S)
        )
        rho = lie.weyl_vector
        rr = inner_product(lie, rho, rho)
        g = lie.dual_coxeter
        c = Fraction(lie.dimension * cat.level, kappa)
        T, tt = [], []
        for w in shifted:
            e = inner_product(lie, w, w) / (2 * kappa) - rr / (2 * g)
            e -= e.numerator // e.denominator
            T.append(mp.expj(2 * mp.pi * mpmath.mpf(e.numerator) / e.denominator))
            e2 = e + c / 24
            e2 -= e2.numerator // e2.denominator
            tt.append(mp.expj(2 * mp.pi * mpmath.mpf(e2.numerator) / e2.denominator))
    conj = tuple(cat.index[dominant_conjugate(lie, tuple(-x for x in w))] for w in cat.weights)
    C = np.zeros((cat.size, cat.size), dtype=np.int64)
    for i, j in enumerate(conj):
        C[i, j] = 1
    return ModularData(cat, S, tuple(T), tuple(tt), C, conj)


# ----------------------------------------------------------------------------
# Verlinde


@dataclass(frozen=True, eq=False)
class FusionMatrices:
    N: np.ndarray  # N[m] is the fusion matrix of object m, indexed [n, p]
    max_residue: float

    def __getitem__(self, m):
        return self.N[m]

    def __len__(self):
        return len(self.N)


def verlinde_fusion(md: ModularData, m: int) -> np.ndarray:
    """(N_m)_{np} = sum_q S_mq S_nq conj(S_pq) / S_0q at full working precision."""
    s = md.fixed_S
    dps = md.cat.ctx.working_dps
    with mp.workdps(dps):
        ratios = [md.S[m][q] / md.S[0][q] for q in range(md.size)]
    n = s.scale_columns(s.fixed_vector(ratios, dps)) @ s.conj_transpose()
    out = np.zeros((md.size, md.size), dtype=np.int64)
    worst = mpmath.mpf(0)
    with mp.workdps(dps):
        for i in range(md.size):
            for j in range(md.size):
                z = n.entry(i, j)
                v = int(mpmath.nint(z.real))
                worst = max(worst, abs(z - v))
                out[i, j] = v
    if worst >= VERLINDE_TOLERANCE:
        raise FusionError(f"Verlinde sum for object {m} is not integral (residue {mpmath.nstr(worst, 5)})")
    return out


def fusion_matrices(md: ModularData) -> FusionMatrices:
    """All fusion matrices at once, from a double-precision copy of S."""
    s = np.array([[complex(x) for x in row] for row in md.S])
    ratio = s / s[0][None, :]
    # N[m, n, p] = sum_q ratio[m, q] S[n, q] conj(S[p, q])
    raw = np.einsum("mq,nq,pq->mnp", ratio, s, s.conj(), optimize=True)
    N = np.rint(raw.real).astype(np.int64)
    residue = float(np.max(np.abs(raw - N))) if raw.size else 0.0
    if residue >= VERLINDE_TOLERANCE:
        raise FusionError(f"Verlinde sums not integral (max residue {residue:.3e})")
    if (N < 0).any():
        raise FusionError("negative fusion coefficient")
    return FusionMatrices(N, residue)


# ----------------------------------------------------------------------------
# characters


def character_value(cat: LevelKCategory, m, n, weyl_cap: int = DEFAULT_WEYL_CAP) -> mpmath.mpc:
    """chi(m)[n + rho], the Weyl character of m evaluated at the point n + rho.

    A monomial t^p evaluates to exp(-2 pi i <p, x> / (g + k)) at the weight x,
    the sign convention of the S matrix, so that S_mn / S_00 = qdim(n) chi(m)[n + rho].
    With the opposite sign the right-hand side is the complex conjugate.
    """
    m, n = cat.check_member(m), cat.check_member(n)
    lie, ctx = cat.lie, cat.ctx
    x = [tuple(v + 1 for v in n)]
    num = _alternating_sums(lie, [tuple(v + 1 for v in m)], x, ctx.altitude, ctx.working_dps, weyl_cap, -1)
    den = _alternating_sums(lie, [(1,) * lie.rank], x, ctx.altitude, ctx.working_dps, weyl_cap, -1)
    with ctx.workdps():
        if abs(den[0][0]) < TOLERANCE:
            raise FusionError(f"Weyl denominator vanishes at {n} + rho")
        return num[0][0] / den[0][0]


_INV_CACHE: dict = {}


def _simple_root_coords(lie: LieData, v) -> list[Fraction]:
    # v = c . A  (rows of A are the simple roots)
    if lie.type not in _INV_CACHE:
        _INV_CACHE[lie.type] = _rational_inverse([[Fraction(x) for x in row] for row in lie.cartan])
    inv = _INV_CACHE[lie.type]
    r = lie.rank
    return [sum(Fraction(v[i]) * inv[i][j] for i in range(r)) for j in range(r)]


def weight_multiplicities(lie, lam, cap: int = WEIGHT_SYSTEM_CAP) -> dict:
    """Multiplicities of the dominant weights of the irrep lam (Freudenthal's formula)."""
    lie = _as_lie(lie)
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not dominant")
    roots = [tuple(int(x) for x in a) for a in lie.positive_roots]
    # dominant weights below lam: covers in dominance order differ by a positive root
    dom = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in roots:
                nu = tuple(x - y for x, y in zip(mu, a))
                if min(nu) >= 0 and nu not in dom:
                    dom.add(nu)
                    nxt.append(nu)
        frontier = nxt
        if len(dom) > cap:
            raise FusionError(f"weight system of {lam} exceeds cap {cap}")
    depth = {mu: sum(_simple_root_coords(lie, [x - y for x, y in zip(lam, mu)])) for mu in dom}
    lr = tuple(x + 1 for x in lam)
    norm_top = inner_product(lie, lr, lr)
    mult = {lam: 1}
    for mu in sorted(dom, key=lambda w: depth[w]):
        if mu == lam:
            continue
        acc = Fraction(0)
        for a in roots:
            # the alpha-string through mu is unbroken; every dominant conjugate
            # met here lies strictly above mu and is already processed
            j = 1
            while True:
                nu = tuple(x + j * y for x, y in zip(mu, a))
                mlt = mult.get(dominant_conjugate(lie, nu))
                if mlt is None:
                    break
                acc += inner_product(lie, nu, a) * mlt
                j += 1
        mr = tuple(x + 1 for x in mu)
        val = 2 * acc / (norm_top - inner_product(lie, mr, mr))
        if val.denominator != 1:
            raise FusionError(f"non-integral multiplicity {val} for {mu} in {lam}")
        if val:
            mult[mu] = int(val)
    return mult


def qdim_via_character(cat: LevelKCategory, m, cap: int = WEIGHT_SYSTEM_CAP) -> mpmath.mpf:
    """Quantum dimension as the character of m evaluated at t_j = q^(2 rho^j)."""
    m = cat.check_member(m)
    lie, ctx = cat.lie, cat.ctx
    mult = weight_multiplicities(lie, m, cap)
    d, qint = lie.integer_form()
    modulus = d * ctx.altitude
    rho_pair = qint @ np.ones(lie.rank, dtype=np.int64)  # D <omega_i, rho>
    counts = np.zeros(modulus, dtype=np.int64)
    total = 0
    for mu, k in mult.items():
        pts, _ = weyl_orbit(lie, mu)
        total += len(pts) * k
        if total > cap:
            raise FusionError(f"weight system of {m} exceeds cap {cap}")
        # t^p -> exp(2 pi i <p, rho> / kappa)
        e = (pts @ rho_pair) % modulus
        np.add.at(counts, e, k)
    table = _phase_table(modulus, ctx.working_dps, +1)
    with ctx.workdps():
        val = mp.fsum(int(counts[j]) * table[j] for j in np.nonzero(counts)[0])
        if abs(val.imag) > TOLERANCE:
            raise FusionError(f"character value at q^(2 rho) is not real: {val}")
        return val.real
