"""Module-categories over A_k(G).

Two parts live here:

* SU(2) module-categories classified by ADE graphs: annular matrices from the
  Chebyshev recurrence, essential matrices (induction rules), Perron-Frobenius
  quantum dimensions and modular invariants.
* Conformally exceptional quantum subgroups from the conformal-embedding
  catalog, with |E| = sqrt(|A_k(G)| |A_1(J)|).

Labels of SU(2) objects are 0-based internally (object n has qdim [n+1]_q).
Partition functions quoted with 1-based labels are shifted on load.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from importlib import resources
from pathlib import Path

import mpmath
import numpy as np
from mpmath import mp

from .fusion import global_dimension_closed, global_dimension_sum, integrable_weights
from .lie_core import LieType, build_lie_data, spin_type
from .qnum import DEFAULT_PRECISION, TOLERANCE, QContext, q_factorial, q_number

CATALOG_ENV = "FUSIONCAT_CATALOG"
DEFAULT_G_MAX = 12


class RouteUnavailable(ValueError):
    """The requested |E| route lacks the data it needs."""


class CatalogError(ValueError):
    """A catalog entry failed validation."""


# ----------------------------------------------------------------------------
# ADE graphs


# graph vertex order -> Bourbaki node (0-based) for the E series
_E_TO_BOURBAKI = {
    6: (0, 2, 3, 4, 5, 1),
    7: (6, 5, 4, 3, 2, 0, 1),
    8: (7, 6, 5, 4, 3, 2, 0, 1),
}


@dataclass(frozen=True, eq=False)
class ADEGraph:
    type: LieType
    adjacency: np.ndarray
    distinguished_vertex: int = 0

    @property
    def size(self) -> int:
        return len(self.adjacency)

    @property
    def coxeter(self) -> int:
        return self.type.coxeter

    @property
    def level(self) -> int:
        """SU(2) level nu = gamma - 2 at which the graph is a module."""
        return self.coxeter - 2

    @property
    def bourbaki_order(self) -> tuple[int, ...]:
        if self.type.family == "E":
            return _E_TO_BOURBAKI[self.type.rank]
        return tuple(range(self.size))


def ade_graph(t) -> ADEGraph:
    """Dynkin graph of type A, D or E as an SU(2) fusion graph.

    Vertex order: the longest chain first, starting from the unit vertex at the
    end of the longest branch; for E the short-branch vertex is last.
    """
    if isinstance(t, str):
        t = LieType.parse(t)
    if not t.simply_laced:
        raise ValueError(f"{t} is not simply laced")
    n = t.rank
    adj = np.zeros((n, n), dtype=np.int64)

    def link(i, j):
        adj[i, j] = adj[j, i] = 1

    if t.family == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif t.family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    else:
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 4, n - 1)
    return ADEGraph(t, adj, 0)


def annular_matrices(graph: ADEGraph, n_max: int) -> list[np.ndarray]:
    """F_0 .. F_{n_max} with F_0 = 1, F_1 = G, F_n = F_{n-1} G - F_{n-2}."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    g = graph.adjacency
    out = [np.eye(graph.size, dtype=np.int64)]
    if n_max >= 1:
        out.append(g.copy())
    for _ in range(2, n_max + 1):
        out.append(out[-1] @ g - out[-2])
    return out


def essential_matrix(graph: ADEGraph, a: int, rows: int | None = None) -> np.ndarray:
    """(E_a)_{n b} = (F_n)_{a b} for n = 0 .. rows - 1 (one period 2 gamma by default)."""
    if not 0 <= a < graph.size:
        raise ValueError(f"vertex {a} out of range for {graph.type} (0..{graph.size - 1})")
    rows = 2 * graph.coxeter if rows is None else rows
    fs = annular_matrices(graph, rows - 1)
    return np.array([f[a] for f in fs], dtype=np.int64)


def induction_table(graph: ADEGraph) -> np.ndarray:
    """Induction rules: E_{0} restricted to the SU(2) objects n = 0 .. nu."""
    return essential_matrix(graph, graph.distinguished_vertex, graph.level + 1)


def perron_frobenius(graph: ADEGraph, precision: int = DEFAULT_PRECISION):
    """(eigenvalue, eigenvector normalized to 1 at the unit vertex)."""
    with mp.workdps(precision + 12):
        a = mpmath.matrix(graph.adjacency.tolist())
        evals, evecs = mp.eigsy(a)
        i = max(range(len(evals)), key=lambda j: evals[j])
        lam = evals[i]
        v = [evecs[j, i] for j in range(graph.size)]
        v = [x / v[graph.distinguished_vertex] for x in v]
        resid = max(
            abs(mp.fsum(graph.adjacency[r, c] * v[c] for c in range(graph.size)) - lam * v[r])
            for r in range(graph.size)
        )
        if resid > TOLERANCE:
            raise ArithmeticError(f"Perron-Frobenius residue {mpmath.nstr(resid, 5)} too large")
        return lam, v


def module_quantum_dims(graph: ADEGraph, precision: int = DEFAULT_PRECISION) -> list:
    """Quantum dimensions of the simple objects of the module, from the PF eigenvector."""
    return perron_frobenius(graph, precision)[1]


# ----------------------------------------------------------------------------
# partition functions


@dataclass(frozen=True, eq=False)
class PartitionFunction:
    Z: np.ndarray
    blocks: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.Z[0, 0] != 1:
            raise ValueError("partition function must have Z_00 = 1")

    @classmethod
    def from_blocks(cls, blocks, size: int) -> PartitionFunction:
        z = np.zeros((size, size), dtype=np.int64)
        for b in blocks:
            v = np.zeros(size, dtype=np.int64)
            for n in b:
                v[n] += 1
            z += np.outer(v, v)
        return cls(z, tuple(tuple(b) for b in blocks))

    @classmethod
    def from_one_based(cls, blocks, size: int) -> PartitionFunction:
        """Blocks given with 1-based SU(2) labels."""
        return cls.from_blocks([[n - 1 for n in b] for b in blocks], size)

    @property
    def size(self) -> int:
        return len(self.Z)

    @property
    def exponents(self) -> list[int]:
        """Generalized exponents: diagonal support, with multiplicity."""
        return [n for n in range(self.size) for _ in range(int(self.Z[n, n]))]


def identity_invariant(k: int) -> PartitionFunction:
    return PartitionFunction.from_blocks([[n] for n in range(k + 1)], k + 1)


def d_even_invariant(k: int) -> PartitionFunction:
    """Type-I D invariant of SU(2) at level k = 0 mod 4 (Z_2 folding of the diagonal)."""
    if k % 4 or k < 4:
        raise ValueError("the block-diagonal D invariant needs k = 0 mod 4, k >= 4")
    blocks = [[lam, k - lam] for lam in range(0, k // 2, 2)] + [[k // 2], [k // 2]]
    return PartitionFunction.from_blocks(blocks, k + 1)


# modular blocks with 1-based labels
_SU2_BLOCKS = {
    "E6": (10, [[1, 7], [4, 8], [5, 11]]),
    "E8": (28, [[1, 11, 19, 29], [7, 13, 17, 23]]),
}


# modules coming from conformal embeddings of SU(2)
_SU2_EMBEDDINGS = {"D4": "a1-k4-symmetric", "E6": "a1-k10-sporadic", "E8": "a1-k28-sporadic"}


def su2_partition_function(name: str) -> PartitionFunction:
    if name in _SU2_BLOCKS:
        k, blocks = _SU2_BLOCKS[name]
        return PartitionFunction.from_one_based(blocks, k + 1)
    t = LieType.parse(name)
    if t.family == "A":
        return identity_invariant(t.rank - 1)
    if t.family == "D" and t.rank % 2 == 0:
        return d_even_invariant(2 * t.rank - 4)
    raise KeyError(f"no type-I partition function recorded for {name}")


@dataclass(frozen=True, eq=False)
class SU2Module:
    name: str
    graph: ADEGraph
    Z: PartitionFunction | None = None
    embedding: EmbeddingRecord | None = None

    @property
    def level(self) -> int:
        return self.graph.level

    @cached_property
    def category(self):
        return integrable_weights(LieType("A", 1), self.level)


def su2_module(name: str, catalog: list | None = None) -> SU2Module:
    """The SU(2) module with fusion graph ``name`` and whatever data is recorded for it."""
    graph = ade_graph(name)
    try:
        z = su2_partition_function(name)
    except KeyError:
        z = None
    emb = None
    if name in _SU2_EMBEDDINGS:
        emb = find_embedding(_SU2_EMBEDDINGS[name], catalog)
    return SU2Module(name, graph, z, emb)


def sandwich_identity(cat, Z: PartitionFunction):
    """(sum_mn qdim(m) Z_mn qdim(n), |A_k|)."""
    if Z.size != cat.size:
        raise ValueError(f"partition function has size {Z.size}, category has {cat.size} objects")
    q = cat.quantum_dimensions
    with cat.ctx.workdps():
        lhs = mp.fsum(q[m] * int(Z.Z[m, n]) * q[n] for m in range(Z.size) for n in range(Z.size) if Z.Z[m, n])
        return lhs, global_dimension_sum(cat)


def ade_trig_identity(Z: PartitionFunction, kappa: int, precision: int = DEFAULT_PRECISION):
    """(sum_{m,n >= 1} Z_mn sin(m pi / kappa) sin(n pi / kappa), kappa / 2) with 1-based m, n."""
    if Z.size != kappa - 1:
        raise ValueError(f"Z has size {Z.size}, expected kappa - 1 = {kappa - 1}")
    with mp.workdps(precision + 12):
        s = [mp.sinpi(mpmath.mpf(m + 1) / kappa) for m in range(Z.size)]
        lhs = mp.fsum(int(Z.Z[m, n]) * s[m] * s[n] for m in range(Z.size) for n in range(Z.size) if Z.Z[m, n])
        return lhs, mpmath.mpf(kappa) / 2


# ----------------------------------------------------------------------------
# global dimension of a module-category

ROUTES = ("pf_sum", "induction", "modular_blocks", "embedding")


def frobenius_dimension(module: SU2Module, precision: int = DEFAULT_PRECISION):
    """|F| = sum over n in Gamma_0 of qdim(n), read from the induction table."""
    ctx = QContext(module.level + 2, precision)
    col = induction_table(module.graph)[:, module.graph.distinguished_vertex]
    with ctx.workdps():
        return mp.fsum(int(c) * q_number(ctx, n + 1) for n, c in enumerate(col) if c)


def section_dimensions(module: SU2Module, precision: int = DEFAULT_PRECISION) -> list:
    """qdim(Gamma_a) = sum over n in Gamma_a of qdim(n), for every vertex a."""
    ctx = QContext(module.level + 2, precision)
    table = induction_table(module.graph)
    with ctx.workdps():
        return [
            mp.fsum(int(c) * q_number(ctx, n + 1) for n, c in enumerate(table[:, a]) if c)
            for a in range(module.graph.size)
        ]


def block_dimensions(module: SU2Module, precision: int = DEFAULT_PRECISION) -> list:
    """qdim(Gamma_a) for the modular vertices, read from the blocks of Z."""
    if module.Z is None or not module.Z.blocks:
        raise RouteUnavailable(f"module {module.name}: route 'modular_blocks' needs a type-I partition function")
    ctx = QContext(module.level + 2, precision)
    with ctx.workdps():
        return [mp.fsum(q_number(ctx, n + 1) for n in b) for b in module.Z.blocks]


def module_global_dim(module, route: str, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """|E| by one of the routes 'pf_sum', 'induction', 'modular_blocks', 'embedding'."""
    if isinstance(module, ADEGraph):
        module = SU2Module(str(module.type), module)
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    with mp.workdps(precision + 12):
        if route == "pf_sum":
            return mp.fsum(x**2 for x in module_quantum_dims(module.graph, precision))
        a = global_dimension_sum(integrable_weights(LieType("A", 1), module.level, precision))
        if route == "induction":
            return a / frobenius_dimension(module, precision)
        if route == "modular_blocks":
            dims = block_dimensions(module, precision)
            j = mp.fsum((d / dims[0]) ** 2 for d in dims)
            return mp.sqrt(a * j)
        if module.embedding is None:
            raise RouteUnavailable(f"module {module.name}: route 'embedding' needs a conformal embedding record")
        return mp.sqrt(a * level1_global_dim(module.embedding.outer, precision).value)


# ----------------------------------------------------------------------------
# level one


@dataclass(frozen=True)
class Level1Data:
    group: LieType
    value: mpmath.mpf
    qdims: tuple
    source: str  # "table" or "computed"


def level1_computed(t: LieType, precision: int = DEFAULT_PRECISION) -> Level1Data:
    cat = integrable_weights(build_lie_data(t), 1, precision)
    q = tuple(cat.quantum_dimensions)
    with cat.ctx.workdps():
        return Level1Data(t, mp.fsum(x**2 for x in q), q, "computed")


def level1_global_dim(t, precision: int = DEFAULT_PRECISION) -> Level1Data:
    """|A_1(J)| and the quantum dimensions of the level-one objects."""
    if isinstance(t, str):
        t = LieType.parse(t)
    f, r = t.family, t.rank
    with mp.workdps(precision + 12):
        one = mpmath.mpf(1)
        phi = (1 + mp.sqrt(5)) / 2
        if f == "A":
            q = (one,) * (r + 1)
        elif f == "D":
            q = (one,) * 4
        elif f == "B" or (f == "C" and r == 2):
            q = (one, mp.sqrt(2), one)
        elif f == "E":
            q = (one,) * {6: 3, 7: 2, 8: 1}[r]
        elif f in "FG":
            q = (one, phi)
        elif f == "C" and r == 3:
            q = (one, one, phi, phi)
        elif f == "C" and r == 4:
            q = (one, one, mp.sqrt(3), 2 * one, mp.sqrt(3))
        else:
            return level1_computed(t, precision)
        return Level1Data(t, mp.fsum(x**2 for x in q), q, "table")


# ----------------------------------------------------------------------------
# conformal embeddings


@dataclass(frozen=True)
class EmbeddingRecord:
    id: str
    inner: tuple[tuple[LieType, int], ...]
    outer: LieType
    tag: str
    source: str = ""

    @property
    def is_simple(self) -> bool:
        return len(self.inner) == 1

    @property
    def inner_type(self) -> LieType:
        return self.inner[0][0]

    @property
    def level(self) -> int:
        return self.inner[0][1]

    def central_charges(self) -> tuple[Fraction, Fraction]:
        c_in = sum((Fraction(t.dimension * k, k + t.dual_coxeter) for t, k in self.inner), Fraction(0))
        c_out = Fraction(self.outer.dimension, 1 + self.outer.dual_coxeter)
        return c_in, c_out

    def check(self) -> None:
        a, b = self.central_charges()
        if a != b:
            raise CatalogError(f"central charges differ for {self.to_json()}: {a} != {b}")

    def to_json(self) -> dict:
        if self.is_simple:
            inner_family, inner_rank, level = self.inner_type.family, self.inner_type.rank, self.level
        else:
            inner_family = [t.family for t, _ in self.inner]
            inner_rank = [t.rank for t, _ in self.inner]
            level = [k for _, k in self.inner]
        return {
            "id": self.id,
            "inner_family": inner_family,
            "inner_rank": inner_rank,
            "level": level,
            "outer_family": self.outer.family,
            "outer_rank": self.outer.rank,
            "tag": self.tag,
            "source": self.source,
        }

    @classmethod
    def from_json(cls, d: dict) -> EmbeddingRecord:
        try:
            fam, rank, lev = d["inner_family"], d["inner_rank"], d["level"]
            if isinstance(fam, list):
                inner = tuple((LieType(f, r), k) for f, r, k in zip(fam, rank, lev))
            else:
                inner = ((LieType(fam, rank), lev),)
            rec = cls(d["id"], inner, LieType(d["outer_family"], d["outer_rank"]), d["tag"], d.get("source", ""))
        except (KeyError, TypeError, ValueError) as exc:
            raise CatalogError(f"malformed catalog entry {d}: {exc}") from exc
        rec.check()
        return rec


def _record(t: LieType, k: int, outer: LieType, tag: str, source: str) -> EmbeddingRecord:
    return EmbeddingRecord(f"{str(t).lower()}-k{k}-{tag}", ((t, k),), outer, tag, source)


def regular_series(g_max: int = DEFAULT_G_MAX) -> list[EmbeddingRecord]:
    """SU(g) antisymmetric (k = g-2), adjoint (k = g) and symmetric (k = g+2) embeddings."""
    out = []
    for g in range(2, g_max + 1):
        su = LieType("A", g - 1)
        if g >= 4:
            out.append(_record(su, g - 2, LieType("A", g * (g - 1) // 2 - 1), "antisymmetric", "regular series"))
        if g >= 3:
            out.append(_record(su, g, spin_type(g * g - 1), "adjoint", "regular series"))
        out.append(_record(su, g + 2, LieType("A", g * (g + 1) // 2 - 1), "symmetric", "regular series"))
    return out


def adjoint_series(max_rank: int = 8) -> list[EmbeddingRecord]:
    """G at level g (dual Coxeter number) inside Spin(dim G), for every simple G of rank <= max_rank."""
    types = []
    for r in range(2, max_rank + 1):
        types += [LieType("A", r), LieType("B", r), LieType("C", r)]
        if r >= 4:
            types.append(LieType("D", r))
    types += [LieType("E", r) for r in (6, 7, 8) if r <= max_rank]
    types += [t for t in (LieType("F", 4), LieType("G", 2)) if t.rank <= max_rank]
    return [_record(t, t.dual_coxeter, spin_type(t.dimension), "adjoint", "adjoint series") for t in types]


# SU(g) sporadic cases; Sp(20) = C10 (the c-equality fixes the rank)
SPORADIC = (
    (LieType("A", 1), 10, LieType("B", 2)),
    (LieType("A", 1), 28, LieType("G", 2)),
    (LieType("A", 2), 9, LieType("E", 6)),
    (LieType("A", 2), 21, LieType("E", 7)),
    (LieType("A", 3), 8, LieType("D", 10)),
    (LieType("A", 5), 6, LieType("C", 10)),
    (LieType("A", 7), 1, LieType("E", 7)),
    (LieType("A", 7), 10, LieType("D", 35)),
    (LieType("A", 8), 1, LieType("E", 8)),
)


def generate_catalog(g_max: int = DEFAULT_G_MAX) -> list[EmbeddingRecord]:
    recs = regular_series(g_max)
    recs += [_record(t, k, j, "sporadic", "sporadic table") for t, k, j in SPORADIC]
    recs += adjoint_series(8)
    seen, out = set(), []
    for r in recs:
        if r.id not in seen:
            seen.add(r.id)
            out.append(r)
    return out


def default_catalog_path() -> Path:
    return Path(str(resources.files("fusioncat") / "data" / "embeddings.json"))


def write_catalog(path, g_max: int = DEFAULT_G_MAX) -> None:
    data = {"g_max": g_max, "embeddings": [r.to_json() for r in generate_catalog(g_max)]}
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def load_catalog(path) -> list[EmbeddingRecord]:
    """Read and validate a catalog file; a bad entry aborts with the record echoed."""
    data = json.loads(Path(path).read_text())
    return [EmbeddingRecord.from_json(d) for d in data["embeddings"]]


def embedding_catalog(g_max: int = DEFAULT_G_MAX, path=None) -> list[EmbeddingRecord]:
    """The validated catalog; SU(g) series entries are kept for g <= g_max."""
    path = path or os.environ.get(CATALOG_ENV) or default_catalog_path()
    recs = [
        r for r in load_catalog(path)
        if r.source != "regular series" or r.inner_type.rank + 1 <= g_max
    ]
    ids = {r.id for r in recs}
    return recs + [r for r in regular_series(g_max) if r.id not in ids]


def find_embedding(rec_id: str, catalog=None) -> EmbeddingRecord:
    for r in catalog if catalog is not None else embedding_catalog():
        if r.id == rec_id:
            return r
    raise KeyError(f"no catalog entry {rec_id!r}")


def conformal_subgroup_dim(rec: EmbeddingRecord, precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """|E| = sqrt(|A_k(G)| |A_1(J)|) for a conformal embedding of a simple G."""
    if not rec.is_simple:
        raise ValueError(f"{rec.id}: semi-simple inner groups are not supported")
    rec.check()
    with mp.workdps(precision + 12):
        a = global_dimension_closed(rec.inner_type, rec.level, precision)
        return mp.sqrt(a * level1_global_dim(rec.outer, precision).value)


def series_ratio_check(g: int, precision: int = DEFAULT_PRECISION):
    """(|E_{g-2}(SU(g))| / |E_g(SU(g-2))|, g / (g-2))."""
    if g < 4:
        raise ValueError("g must be >= 4")
    anti = _record(LieType("A", g - 1), g - 2, LieType("A", g * (g - 1) // 2 - 1), "antisymmetric", "")
    sym = _record(LieType("A", g - 3), g, LieType("A", (g - 2) * (g - 1) // 2 - 1), "symmetric", "")
    with mp.workdps(precision + 12):
        return conformal_subgroup_dim(anti, precision) / conformal_subgroup_dim(sym, precision), Fraction(g, g - 2)


def e8_capstone_expression(precision: int = DEFAULT_PRECISION) -> mpmath.mpf:
    """2 * 60^4 / (2^120 prod [s]!_q sin(pi/60)^120) over the E8 exponents, q = exp(i pi / 60)."""
    ctx = QContext(60, precision)
    with ctx.workdps():
        sf = mp.fprod(q_factorial(ctx, s) for s in (1, 7, 11, 13, 17, 19, 23, 29))
        return 2 * mpmath.mpf(60) ** 4 / (mpmath.mpf(2) ** 120 * sf * mp.sinpi(mpmath.mpf(1) / 60) ** 120)
