"""Structural data for the simple Lie algebras.

Weights and roots are stored as tuples of :class:`fractions.Fraction` (or
``int``) giving their components on the fundamental-weight basis.  Simple roots
are the rows of the Cartan matrix in that basis, numbered following Bourbaki.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

import numpy as np

Weight = tuple  # tuple of Fraction/int, one component per fundamental weight

DEFAULT_WEYL_CAP = 10**7

_EXCEPTIONAL_EXPONENTS = {
    ("E", 6): (1, 4, 5, 7, 8, 11),
    ("E", 7): (1, 5, 7, 9, 11, 13, 17),
    ("E", 8): (1, 7, 11, 13, 17, 19, 23, 29),
    ("F", 4): (1, 5, 7, 11),
    ("G", 2): (1, 5),
}


class LieTypeError(ValueError):
    """Raised for an invalid family/rank combination or an unparsable group name."""


class WeylCapExceeded(RuntimeError):
    """Raised when a Weyl group is larger than the enumeration cap."""

    def __init__(self, order: int, cap: int, name: str = ""):
        self.order = order
        self.cap = cap
        what = f"Weyl group of {name}" if name else "Weyl group"
        super().__init__(
            f"{what} exceeds cap: |W| = {order} > {cap}; "
            "use the closed-form routes (S00, global dimension) or raise the cap"
        )


@dataclass(frozen=True, order=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        f, r = self.family, self.rank
        ok = {
            "A": r >= 1,
            "B": r >= 2,
            "C": r >= 2,
            "D": r >= 3,
            "E": r in (6, 7, 8),
            "F": r == 4,
            "G": r == 2,
        }
        if f not in ok:
            raise LieTypeError(f"unknown family {f!r}; expected one of A,B,C,D,E,F,G")
        if not isinstance(r, int) or not ok[f]:
            raise LieTypeError(f"invalid rank {r} for family {f}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, spec: str) -> LieType:
        """Parse ``"E8"``, ``"A3"``, ``"SU(4)"``, ``"Spin(10)"`` or ``"Sp(6)"``."""
        s = spec.strip().replace(" ", "")
        m = re.fullmatch(r"([A-Ga-g])_?(\d+)", s)
        if m:
            return cls(m.group(1).upper(), int(m.group(2)))
        m = re.fullmatch(r"(SU|Spin|Sp|SO)\((\d+)\)", s, flags=re.IGNORECASE)
        if not m:
            raise LieTypeError(f"cannot parse group spec {spec!r}")
        kind, n = m.group(1).lower(), int(m.group(2))
        if kind == "su":
            return cls("A", n - 1)
        if kind in ("spin", "so"):
            return spin_type(n)
        if n % 2:
            raise LieTypeError(f"Sp(n) needs even n, got {n}")
        return cls("C", n // 2)

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    @property
    def coxeter(self) -> int:
        f, r = self.family, self.rank
        return {"A": r + 1, "B": 2 * r, "C": 2 * r, "D": 2 * r - 2, "E": {6: 12, 7: 18, 8: 30}.get(r),
                "F": 12, "G": 6}[f]

    @property
    def dual_coxeter(self) -> int:
        f, r = self.family, self.rank
        return {"A": r + 1, "B": 2 * r - 1, "C": r + 1, "D": 2 * r - 2, "E": {6: 12, 7: 18, 8: 30}.get(r),
                "F": 9, "G": 4}[f]

    @property
    def long_index(self) -> int:
        """Index of the long-root sublattice in the weight lattice (1/Delta)."""
        f, r = self.family, self.rank
        return {"A": r + 1, "B": 4, "C": 2**r, "D": 4, "E": {6: 3, 7: 2, 8: 1}.get(r),
                "F": 4, "G": 3}[f]

    @property
    def exponents(self) -> tuple[int, ...]:
        f, r = self.family, self.rank
        if f == "A":
            return tuple(range(1, r + 1))
        if f in "BC":
            return tuple(range(1, 2 * r, 2))
        if f == "D":
            return tuple(sorted(list(range(1, 2 * r - 2, 2)) + [r - 1]))
        return _EXCEPTIONAL_EXPONENTS[(f, r)]

    @property
    def dimension(self) -> int:
        # dim G = r + r*gamma
        return self.rank * (1 + self.coxeter)

    @property
    def weyl_order(self) -> int:
        return prod(e + 1 for e in self.exponents)


def spin_type(n: int) -> LieType:
    """Spin(n) as B_{(n-1)/2} for odd n and D_{n/2} for even n."""
    if n % 2:
        return LieType("B", (n - 1) // 2)
    return LieType("D", n // 2)


def cartan_matrix(t: LieType) -> np.ndarray:
    """Cartan matrix with row i equal to the simple root alpha_i in the fundamental basis.

    Entry (i, j) is 2 (alpha_i, alpha_j) / (alpha_j, alpha_j).
    """
    r = t.rank
    a = 2 * np.eye(r, dtype=np.int64)

    def link(i, j):
        a[i, j] = a[j, i] = -1

    if t.family in "ABCDF" or t.family == "G":
        for i in range(r - 1):
            link(i, i + 1)
    if t.family == "B":
        a[r - 2, r - 1] = -2
    elif t.family == "C":
        a[r - 1, r - 2] = -2
    elif t.family == "D":
        a[r - 2, r - 1] = a[r - 1, r - 2] = 0
        link(r - 3, r - 1)
    elif t.family == "E":
        # Bourbaki: 1-3-4-5-...-r chain, node 2 attached to node 4
        a[:] = 2 * np.eye(r, dtype=np.int64)
        link(0, 2)
        link(1, 3)
        for i in range(2, r - 1):
            link(i, i + 1)
    elif t.family == "F":
        a[1, 2] = -2
    elif t.family == "G":
        a[1, 0] = -3
    return a


def _root_lengths(cartan: np.ndarray) -> list[Fraction]:
    """Squared lengths of the simple roots, longest normalized to 2."""
    r = len(cartan)
    lengths: list[Fraction | None] = [None] * r
    lengths[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(r):
            if j != i and cartan[i, j] != 0 and lengths[j] is None:
                # cartan[i,j] |a_j|^2 = cartan[j,i] |a_i|^2
                lengths[j] = lengths[i] * int(cartan[j, i]) / int(cartan[i, j])
                stack.append(j)
    top = max(lengths)
    return [2 * x / top for x in lengths]


def _rational_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _rational_det(m: list[list[Fraction]]) -> Fraction:
    a = [list(row) for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def _positive_roots_simple_coords(cartan: np.ndarray) -> list[tuple[int, ...]]:
    """Positive roots in the simple-root basis, built height by height from root strings."""
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            fund = [sum(beta[k] * int(cartan[k, i]) for k in range(r)) for i in range(r)]
            for i in range(r):
                # p = how far beta - p*alpha_i stays a root
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - fund[i] > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        nxt -= roots
        roots |= nxt
        layer = sorted(nxt)
    return list(roots)


@dataclass(frozen=True)
class LieData:
    type: LieType
    cartan: tuple[tuple[int, ...], ...]
    quad_form: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Weight, ...]
    root_heights: tuple[int, ...]
    highest_root: Weight
    weyl_vector: Weight
    coxeter: int
    dual_coxeter: int
    exponents: tuple[int, ...]
    delta: Fraction
    comarks: tuple[Fraction, ...]

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def dimension(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @property
    def num_positive_roots(self) -> int:
        return len(self.positive_roots)

    def denominator(self) -> int:
        """Least common denominator of the quadratic form entries."""
        d = 1
        for row in self.quad_form:
            for x in row:
                d = d * x.denominator // np.gcd(d, x.denominator)
        return int(d)

    def integer_form(self) -> tuple[int, np.ndarray]:
        """(D, D * quad_form) with the second an int64 array."""
        d = self.denominator()
        return d, np.array([[int(x * d) for x in row] for row in self.quad_form], dtype=np.int64)


@lru_cache(maxsize=None)
def build_lie_data(t: LieType) -> LieData:
    """Assemble Cartan data, quadratic form and positive roots for ``t``."""
    if not isinstance(t, LieType):
        t = LieType(*t)
    a = cartan_matrix(t)
    r = t.rank
    lengths = _root_lengths(a)
    a_inv = _rational_inverse([[Fraction(int(x)) for x in row] for row in a])
    # quad_form = diag(|alpha|^2 / 2) . (A^-1)^T
    quad = tuple(
        tuple(lengths[i] / 2 * a_inv[j][i] for j in range(r)) for i in range(r)
    )
    simple_coords = _positive_roots_simple_coords(a)
    fund = [
        tuple(Fraction(sum(c[k] * int(a[k, i]) for k in range(r))) for i in range(r))
        for c in simple_coords
    ]
    order = sorted(range(len(fund)), key=lambda j: (sum(simple_coords[j]), fund[j]))
    roots = tuple(fund[j] for j in order)
    heights = tuple(sum(simple_coords[j]) for j in order)
    theta = roots[-1]
    rho = tuple(Fraction(1) for _ in range(r))
    comarks = tuple(sum(quad[i][j] * theta[j] for j in range(r)) for i in range(r))
    level_rho = sum(comarks)
    data = LieData(
        type=t,
        cartan=tuple(tuple(int(x) for x in row) for row in a),
        quad_form=quad,
        positive_roots=roots,
        root_heights=heights,
        highest_root=theta,
        weyl_vector=rho,
        coxeter=max(heights) + 1,
        dual_coxeter=int(level_rho) + 1,
        exponents=t.exponents,
        delta=_rational_det([list(row) for row in quad]),
        comarks=comarks,
    )
    return data


def _check_dim(data: LieData, *weights) -> None:
    for w in weights:
        if len(w) != data.rank:
            raise ValueError(f"weight {tuple(w)} has {len(w)} components, {data.type} has rank {data.rank}")


def inner_product(data: LieData, lam: Weight, mu: Weight) -> Fraction:
    """Exact value of the fundamental quadratic form on two weights."""
    _check_dim(data, lam, mu)
    q = data.quad_form
    r = data.rank
    return sum(
        (Fraction(lam[i]) * q[i][j] * mu[j] for i in range(r) for j in range(r) if lam[i] and mu[j]),
        Fraction(0),
    )


def level_of(data: LieData, lam: Weight) -> Fraction:
    """Level <lam, theta> of a weight."""
    _check_dim(data, lam)
    return sum((data.comarks[i] * lam[i] for i in range(data.rank)), Fraction(0))


def ribbon_table(data: LieData, lam: Weight) -> list[tuple[Weight, Fraction]]:
    """Scalar products of ``lam`` with every positive root (positive half of the ribbon)."""
    _check_dim(data, lam)
    return [(alpha, inner_product(data, lam, alpha)) for alpha in data.positive_roots]


def weyl_denominator_arguments(data: LieData) -> list[Fraction]:
    """The values <rho, alpha> over positive roots; their q-product is the Weyl denominator."""
    return [v for _, v in ribbon_table(data, data.weyl_vector)]


def _reflection_matrices(data: LieData) -> np.ndarray:
    r = data.rank
    a = np.array(data.cartan, dtype=np.int64)
    mats = np.empty((r, r, r), dtype=np.int64)
    for i in range(r):
        m = np.eye(r, dtype=np.int64)
        # s_i(lam) = lam - lam_i alpha_i
        m[:, i] -= a[i]
        mats[i] = m
    return mats


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element acting on fundamental-basis column vectors."""

    action: tuple[tuple[int, ...], ...]
    signature: int

    def apply(self, lam: Weight) -> Weight:
        return tuple(sum(a * x for a, x in zip(row, lam)) for row in self.action)


class WeylGroup(Sequence):
    """Enumerated Weyl group, stored as a stacked integer array of matrices.

    Elements are ordered by length, then lexicographically by their image of rho.
    """

    def __init__(self, matrices: np.ndarray, lengths: np.ndarray):
        self.matrices = matrices
        self.lengths = lengths

    @property
    def signatures(self) -> np.ndarray:
        return np.where(self.lengths % 2 == 0, 1, -1)

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        m = self.matrices[i]
        return WeylElement(tuple(tuple(int(x) for x in row) for row in m), 1 if self.lengths[i] % 2 == 0 else -1)


def weyl_group(data: LieData, cap: int = DEFAULT_WEYL_CAP) -> WeylGroup:
    """Enumerate the Weyl group by closure under simple reflections."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    order = data.type.weyl_order
    if order > cap:
        raise WeylCapExceeded(order, cap, str(data.type))
    r = data.rank
    refl = _reflection_matrices(data)
    layer = np.eye(r, dtype=np.int64)[None]
    images = np.ones((1, r), dtype=np.int64)
    all_m, all_len = [layer], [np.zeros(1, dtype=np.int64)]
    length = 0
    while True:
        cand_m, cand_img = [], []
        for i in range(r):
            # s_i w is longer than w exactly when (w rho)_i > 0
            sel = images[:, i] > 0
            if not sel.any():
                continue
            cand_m.append(np.einsum("jk,nkl->njl", refl[i], layer[sel]))
            cand_img.append(images[sel] @ refl[i].T)
        if not cand_m:
            break
        cm, ci = np.concatenate(cand_m), np.concatenate(cand_img)
        ci, idx = np.unique(ci, axis=0, return_index=True)
        layer, images = cm[idx], ci
        length += 1
        all_m.append(layer)
        all_len.append(np.full(len(layer), length, dtype=np.int64))
    group = WeylGroup(np.concatenate(all_m), np.concatenate(all_len))
    assert len(group) == order, (len(group), order)
    return group


def weyl_orbit(data: LieData, lam, cap: int = DEFAULT_WEYL_CAP) -> tuple[np.ndarray, np.ndarray]:
    """Orbit of an integral dominant weight, with the length of each point.

    Returns ``(points, lengths)``; for a regular weight the sign of the unique
    Weyl element reaching a point is ``(-1)**length``.
    """
    order = data.type.weyl_order
    if order > cap:
        raise WeylCapExceeded(order, cap, str(data.type))
    a = np.array(data.cartan, dtype=np.int64)
    layer = np.array([lam], dtype=np.int64)
    if (layer < 0).any():
        raise ValueError(f"weight {tuple(lam)} is not dominant")
    pts, lens = [layer], [np.zeros(1, dtype=np.int64)]
    length = 0
    while True:
        cand = []
        for i in range(data.rank):
            sel = layer[:, i] > 0
            if sel.any():
                sub = layer[sel]
                cand.append(sub - np.outer(sub[:, i], a[i]))
        if not cand:
            break
        layer = np.unique(np.concatenate(cand), axis=0)
        length += 1
        pts.append(layer)
        lens.append(np.full(len(layer), length, dtype=np.int64))
    return np.concatenate(pts), np.concatenate(lens)


def dominant_conjugate(data: LieData, lam) -> tuple[int, ...]:
    """Dominant representative of the Weyl orbit of an integral weight."""
    a = data.cartan
    v = [int(x) for x in lam]
    while True:
        i = next((j for j, x in enumerate(v) if x < 0), None)
        if i is None:
            return tuple(v)
        c = v[i]
        v = [v[j] - c * a[i][j] for j in range(len(v))]
