from fractions import Fraction
from math import prod

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusioncat.lie_core import (
    LieType,
    LieTypeError,
    WeylCapExceeded,
    build_lie_data,
    cartan_matrix,
    dominant_conjugate,
    inner_product,
    level_of,
    ribbon_table,
    spin_type,
    weyl_group,
    weyl_orbit,
)

ALL_SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5", "D6",
             "E6", "E7", "E8", "F4", "G2"]


def appendix(t: LieType):
    # (gamma, g, 1/Delta) per family
    r = t.rank
    return {
        "A": (r + 1, r + 1, r + 1),
        "B": (2 * r, 2 * r - 1, 4),
        "C": (2 * r, r + 1, 2**r),
        "D": (2 * r - 2, 2 * r - 2, 4),
        "E": {6: (12, 12, 3), 7: (18, 18, 2), 8: (30, 30, 1)}.get(r),
        "F": (12, 9, 4),
        "G": (6, 4, 3),
    }[t.family]


@pytest.mark.parametrize("name", ALL_SMALL)
def test_appendix_constants(name):
    t = LieType.parse(name)
    d = build_lie_data(t)
    gamma, g, inv_delta = appendix(t)
    assert d.coxeter == gamma == t.coxeter
    assert d.dual_coxeter == g == t.dual_coxeter
    assert d.delta == Fraction(1, inv_delta)
    # number of positive roots is r gamma / 2 and the highest root has height gamma - 1
    assert d.num_positive_roots * 2 == t.rank * gamma
    assert max(d.root_heights) == gamma - 1
    assert inner_product(d, d.highest_root, d.highest_root) == 2
    assert level_of(d, d.highest_root) == 2 or t.family in "BCFG" or t.rank == 1


@pytest.mark.parametrize("name", ALL_SMALL)
def test_dimension_and_dual_coxeter(name):
    d = build_lie_data(LieType.parse(name))
    assert d.dimension == d.rank + 2 * d.num_positive_roots
    # g = <rho, theta> + 1
    assert inner_product(d, d.weyl_vector, d.highest_root) + 1 == d.dual_coxeter


def test_known_dimensions():
    dims = {"A1": 3, "A2": 8, "B2": 10, "G2": 14, "D4": 28, "F4": 52, "E6": 78, "E7": 133, "E8": 248}
    for name, dim in dims.items():
        assert LieType.parse(name).dimension == dim
        assert build_lie_data(LieType.parse(name)).dimension == dim


def test_cartan_conventions():
    # a_ij = 2 (alpha_i, alpha_j) / (alpha_j, alpha_j), Bourbaki numbering:
    # B_r has its short root last, C_r its long root last
    b3, c3, g2 = cartan_matrix(LieType("B", 3)), cartan_matrix(LieType("C", 3)), cartan_matrix(LieType("G", 2))
    assert b3[1, 2] == -2 and b3[2, 1] == -1
    assert c3[1, 2] == -1 and c3[2, 1] == -2
    assert abs(g2[0, 1] * g2[1, 0]) == 3
    for name in ALL_SMALL:
        c = cartan_matrix(LieType.parse(name))
        assert (np.diag(c) == 2).all()
        # determinant of the Cartan matrix is the index of the root lattice
        expect = {"A": None, "B": 2, "C": 2, "D": 4, "E": None, "F": 1, "G": 1}[name[0]]
        t = LieType.parse(name)
        if t.family == "A":
            expect = t.rank + 1
        if t.family == "E":
            expect = {6: 3, 7: 2, 8: 1}[t.rank]
        assert round(np.linalg.det(c)) == expect


@pytest.mark.parametrize("spec,expect", [
    ("SU(2)", LieType("A", 1)), ("SU(9)", LieType("A", 8)),
    ("Spin(7)", LieType("B", 3)), ("Spin(8)", LieType("D", 4)), ("Spin(248)", LieType("D", 124)),
    ("Sp(6)", LieType("C", 3)), ("e8", LieType("E", 8)), ("G_2", LieType("G", 2)),
])
def test_parse(spec, expect):
    assert LieType.parse(spec) == expect


@pytest.mark.parametrize("bad", ["B1", "C1", "D2", "E5", "F3", "G3", "X4", "Sp(5)", "SU()", ""])
def test_parse_rejects(bad):
    with pytest.raises(LieTypeError):
        LieType.parse(bad)


def test_spin_parity():
    assert spin_type(9) == LieType("B", 4)
    assert spin_type(10) == LieType("D", 5)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "B2", "C3", "G2", "D4", "F4"])
def test_weyl_group_order(name):
    t = LieType.parse(name)
    d = build_lie_data(t)
    w = weyl_group(d)
    assert len(w) == prod(e + 1 for e in t.exponents) == t.weyl_order
    # signatures sum to zero (as many even as odd elements)
    assert int(w.signatures.sum()) == 0
    # every element preserves the quadratic form
    rho = d.weyl_vector
    for el in list(w)[:50]:
        assert inner_product(d, el.apply(rho), el.apply(rho)) == inner_product(d, rho, rho)


def test_weyl_cap_refusal_names_the_bound():
    d = build_lie_data(LieType("E", 8))
    with pytest.raises(WeylCapExceeded) as exc:
        weyl_group(d, cap=1000)
    assert "696729600" in str(exc.value)
    assert "1000" in str(exc.value)


def test_regular_orbit_size():
    d = build_lie_data(LieType("E", 6))
    pts, lens = weyl_orbit(d, d.weyl_vector)
    assert len(pts) == 51840
    assert len({tuple(p) for p in pts}) == 51840


def test_ribbon_of_rho_is_heights():
    # <rho, alpha^vee> = height for simply laced types
    for name in ["A4", "D5", "E6"]:
        d = build_lie_data(LieType.parse(name))
        vals = [v for _, v in ribbon_table(d, d.weyl_vector)]
        assert vals == [Fraction(h) for h in d.root_heights]


@st.composite
def type_and_weight(draw):
    name = draw(st.sampled_from(["A2", "A3", "B2", "B3", "C3", "G2", "D4", "F4"]))
    d = build_lie_data(LieType.parse(name))
    lam = tuple(draw(st.lists(st.integers(-4, 4), min_size=d.rank, max_size=d.rank)))
    return d, lam


@settings(max_examples=60, deadline=None)
@given(type_and_weight())
def test_dominant_conjugate_properties(data):
    d, lam = data
    mu = dominant_conjugate(d, lam)
    assert all(x >= 0 for x in mu)
    assert dominant_conjugate(d, mu) == mu
    assert inner_product(d, mu, mu) == inner_product(d, lam, lam)


@settings(max_examples=40, deadline=None)
@given(type_and_weight())
def test_orbit_contains_its_points(data):
    d, lam = data
    mu = dominant_conjugate(d, lam)
    pts, _ = weyl_orbit(d, mu)
    assert tuple(lam) in {tuple(p) for p in pts}
    assert len(pts) <= d.type.weyl_order


def test_level_of_rho_is_sum_of_comarks():
    d = build_lie_data(LieType("E", 8))
    assert level_of(d, d.weyl_vector) == sum(d.comarks) == 29 == d.dual_coxeter - 1
