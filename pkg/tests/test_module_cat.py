import json

import mpmath
import numpy as np
import pytest
from mpmath import mp

from fusioncat.fusion import global_dimension_closed, integrable_weights, modular_data
from fusioncat.lie_core import LieType, cartan_matrix
from fusioncat.module_cat import (
    ROUTES,
    CatalogError,
    EmbeddingRecord,
    PartitionFunction,
    RouteUnavailable,
    ade_graph,
    ade_trig_identity,
    annular_matrices,
    conformal_subgroup_dim,
    d_even_invariant,
    default_catalog_path,
    embedding_catalog,
    essential_matrix,
    find_embedding,
    frobenius_dimension,
    generate_catalog,
    identity_invariant,
    induction_table,
    level1_computed,
    level1_global_dim,
    load_catalog,
    module_global_dim,
    module_quantum_dims,
    perron_frobenius,
    sandwich_identity,
    section_dimensions,
    series_ratio_check,
    su2_module,
    su2_partition_function,
    write_catalog,
)
from fusioncat.qnum import TOLERANCE

GRAPHS = ["A2", "A5", "A11", "D4", "D5", "D6", "D10", "E6", "E7", "E8"]
TYPE_I = ["A3", "A9", "D4", "D6", "D16", "E6", "E8"]


def close(a, b, tol=TOLERANCE):
    with mp.workdps(80):
        return abs(a - b) <= tol * max(1, abs(b))


@pytest.mark.parametrize("name", GRAPHS)
def test_graph_is_dynkin_diagram(name):
    g = ade_graph(name)
    c = cartan_matrix(g.type)
    perm = np.eye(g.size, dtype=np.int64)[list(g.bourbaki_order)]
    assert np.array_equal(perm @ (2 * np.eye(g.size, dtype=np.int64) - c) @ perm.T, g.adjacency)


def test_non_simply_laced_rejected():
    with pytest.raises(ValueError):
        ade_graph("B3")


@pytest.mark.parametrize("name", GRAPHS)
def test_perron_frobenius(name):
    g = ade_graph(name)
    lam, v = perron_frobenius(g)
    with mp.workdps(62):
        assert close(lam, 2 * mp.cos(mp.pi / g.coxeter))
    assert v[0] == 1 and all(x > 0 for x in v)


@pytest.mark.parametrize("name", GRAPHS)
def test_annular_recurrence(name):
    g = ade_graph(name)
    gamma = g.coxeter
    fs = annular_matrices(g, 4 * gamma)
    assert not fs[gamma - 1].any()
    for n in range(gamma - 1):
        assert (fs[n] >= 0).all()
    for j in range(gamma - 1):
        assert np.array_equal(fs[gamma + j], -fs[gamma - 2 - j])
    for n in range(2 * gamma + 1):
        assert np.array_equal(fs[n + 2 * gamma], fs[n])
    assert essential_matrix(g, 0).shape == (2 * gamma, g.size)
    with pytest.raises(ValueError):
        essential_matrix(g, g.size)


@pytest.mark.parametrize("name", GRAPHS)
def test_peter_weyl(name):
    # sum_n (E_0)_{na} qdim(n) = qdim(a) |F|
    m = su2_module(name)
    q = module_quantum_dims(m.graph)
    f = frobenius_dimension(m)
    with mp.workdps(62):
        for a, d in enumerate(section_dimensions(m)):
            assert close(d, q[a] * f)


def test_partition_function_exponents():
    # the diagonal of a type-I invariant lists the Coxeter exponents of its graph
    for name in TYPE_I:
        z = su2_partition_function(name)
        assert sorted(n + 1 for n in z.exponents) == sorted(LieType.parse(name).exponents)


@pytest.mark.parametrize("name", TYPE_I)
def test_partition_function_is_modular_invariant(name):
    z = su2_partition_function(name)
    md = modular_data(integrable_weights("A1", z.size - 1))
    s = np.array([[complex(x) for x in row] for row in md.S])
    t = np.diag([complex(x) for x in md.T])
    zz = z.Z.astype(complex)
    assert np.abs(s @ zz - zz @ s).max() < 1e-12
    assert np.abs(t @ zz - zz @ t).max() < 1e-12
    assert z.Z[0, 0] == 1 and (z.Z >= 0).all()


def test_partition_function_validation():
    with pytest.raises(ValueError):
        PartitionFunction(np.zeros((3, 3), dtype=np.int64))
    with pytest.raises(ValueError):
        d_even_invariant(6)
    d4 = d_even_invariant(4)
    assert d4.Z.tolist() == [[1, 0, 0, 0, 1], [0, 0, 0, 0, 0], [0, 0, 2, 0, 0], [0, 0, 0, 0, 0], [1, 0, 0, 0, 1]]
    assert np.array_equal(identity_invariant(3).Z, np.eye(4, dtype=np.int64))


@pytest.mark.parametrize("name", TYPE_I)
def test_sandwich_and_trig_identities(name):
    z = su2_partition_function(name)
    k = z.size - 1
    lhs, rhs = sandwich_identity(integrable_weights("A1", k), z)
    assert close(lhs, rhs)
    lhs, rhs = ade_trig_identity(z, k + 2)
    assert close(lhs, rhs)


@pytest.mark.parametrize("name", ["A5", "D4", "D6", "D10", "E6", "E8"])
def test_routes_agree(name):
    m = su2_module(name)
    values = {}
    for route in ROUTES:
        try:
            values[route] = module_global_dim(m, route)
        except RouteUnavailable:
            pass
    assert {"pf_sum", "induction", "modular_blocks"} <= set(values)
    ref = values["pf_sum"]
    for v in values.values():
        assert close(v, ref)


def test_trivial_module_is_the_category():
    m = su2_module("A11")
    assert close(module_global_dim(m, "pf_sum"), global_dimension_closed("A1", 10))


def test_route_errors():
    e7 = su2_module("E7")
    for route in ("modular_blocks", "embedding"):
        with pytest.raises(RouteUnavailable):
            module_global_dim(e7, route)
    with pytest.raises(ValueError):
        module_global_dim(e7, "nonsense")
    # the two E7 routes that need no external data still agree
    assert close(module_global_dim(e7, "pf_sum"), module_global_dim(e7, "induction"))
    assert close(module_global_dim(ade_graph("D5"), "pf_sum"), module_global_dim(ade_graph("D5"), "induction"))


def test_su2_embeddings():
    assert su2_module("D4").embedding.outer == LieType("A", 2)
    assert su2_module("E6").embedding.outer == LieType("B", 2)
    assert su2_module("E8").embedding.outer == LieType("G", 2)
    assert su2_module("D6").embedding is None


def test_e8_induction_columns():
    t = induction_table(ade_graph("E8"))
    assert t.shape == (29, 8)
    assert [n + 1 for n in np.nonzero(t[:, 0])[0]] == [1, 11, 19, 29]


def test_level1_lookup_against_computation():
    for name in ["A3", "B4", "C2", "C3", "C4", "D6", "E6", "E7", "E8", "F4", "G2"]:
        a, b = level1_global_dim(name), level1_computed(LieType.parse(name))
        assert a.source == "table" and b.source == "computed"
        assert close(a.value, b.value)
        assert all(close(x, y) for x, y in zip(sorted(a.qdims), sorted(b.qdims)))
    c5 = level1_global_dim("C5")
    assert c5.source == "computed" and len(c5.qdims) == 6


# ----------------------------------------------------------------------------
# catalog


def test_shipped_catalog_is_current(tmp_path):
    p = tmp_path / "cat.json"
    write_catalog(p)
    assert json.loads(p.read_text()) == json.loads(default_catalog_path().read_text())


def test_catalog_contents():
    cat = embedding_catalog()
    ids = {r.id for r in cat}
    for r in cat:
        c_in, c_out = r.central_charges()
        assert c_in == c_out
    assert find_embedding("a5-k6-sporadic", cat).outer == LieType("C", 10)
    assert find_embedding("e8-k30-adjoint", cat).outer == LieType("D", 124)
    assert find_embedding("a1-k28-sporadic", cat).outer == LieType("G", 2)
    assert "a1-k2-adjoint" not in ids
    for name in ["B2", "C8", "D8", "E7", "F4", "G2", "A8"]:
        t = LieType.parse(name)
        assert f"{name.lower()}-k{t.dual_coxeter}-adjoint" in ids
    with pytest.raises(KeyError):
        find_embedding("nope", cat)


def test_catalog_g_max():
    small = {r.id for r in embedding_catalog(g_max=5)}
    assert "a4-k3-antisymmetric" in small and "a5-k4-antisymmetric" not in small
    big = {r.id for r in embedding_catalog(g_max=14)}
    assert "a13-k12-antisymmetric" in big
    # sporadic and adjoint-series entries survive any g_max
    assert "a8-k1-sporadic" in small and "e8-k30-adjoint" in small


def test_catalog_rejects_bad_record(tmp_path):
    data = {"embeddings": [{"id": "bad", "inner_family": "A", "inner_rank": 1, "level": 5,
                            "outer_family": "A", "outer_rank": 2, "tag": "x"}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(CatalogError, match="bad"):
        load_catalog(p)


def test_catalog_env_override(tmp_path, monkeypatch):
    rec = generate_catalog()[0]
    p = tmp_path / "one.json"
    p.write_text(json.dumps({"embeddings": [rec.to_json()]}))
    monkeypatch.setenv("FUSIONCAT_CATALOG", str(p))
    ids = [r.id for r in embedding_catalog(g_max=2)]
    assert ids == [rec.id]


def test_semisimple_records():
    d = {"id": "b2xb2-d5", "inner_family": ["B", "B"], "inner_rank": [2, 2], "level": [1, 1],
         "outer_family": "D", "outer_rank": 5, "tag": "sum", "source": "test"}
    rec = EmbeddingRecord.from_json(d)
    assert not rec.is_simple
    assert rec.to_json() == d
    with pytest.raises(ValueError):
        conformal_subgroup_dim(rec)


def test_series_ratio():
    for g in range(4, 10):
        ratio, want = series_ratio_check(g)
        with mp.workdps(62):
            assert close(ratio, mpmath.mpf(want.numerator) / want.denominator)
    with pytest.raises(ValueError):
        series_ratio_check(3)


def test_subgroup_values():
    with mp.workdps(62):
        assert close(conformal_subgroup_dim(find_embedding("a1-k4-symmetric")), 6)
        assert close(conformal_subgroup_dim(find_embedding("a1-k10-sporadic")), 4 * (3 + mp.sqrt(3)))
        assert close(conformal_subgroup_dim(find_embedding("a8-k1-sporadic")), 3)
