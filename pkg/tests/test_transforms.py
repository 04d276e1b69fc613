import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from framecover.cff import CoverFreeFamily, exact_min_n, verify_cff
from framecover.codes import BinaryCode, is_sfpc
from framecover.combinatorics import (
    elements,
    enumerate_ksubsets,
    intersection_bigraph,
    kneser_graph,
    to_mask,
)
from framecover.constructors import exact_bc
from framecover.covers import Biclique, BicliqueCover, verify_cover
from framecover.errors import Budget, FramecoverError, ParameterError
from framecover.hadamard import k8d_cover, kmm_minus_cover, normalize, sylvester
from framecover.transforms import (
    HomomorphismMap,
    check_homomorphism,
    code_to_cover,
    cover_to_cff,
    cover_to_code,
    cff_to_cover,
    cff_to_intersection_cover,
    induced_structure,
    intersection_cover_to_cff,
    kneser_phi,
    preimage_subgraph,
    project_cover,
    project_intersection_cover,
    push_cover,
)

BIG = Budget(max_edges=80)


def optimal(t, r, d=1):
    return exact_bc(kneser_graph(t, r), d, BIG)


@pytest.mark.parametrize("t,r,bc", [(4, 1, 2), (5, 2, 6), (6, 2, 7), (7, 3, 20)])
def test_cover_code_round_trip(t, r, bc):
    res = optimal(t, r)
    assert res.size == bc
    code = cover_to_code(res.witness)
    assert code.t == t and code.v == bc
    assert is_sfpc(code, r)
    back = code_to_cover(code, r)
    assert verify_cover(kneser_graph(t, r), back).passed
    assert cover_to_code(back) == code


@settings(max_examples=150)
@given(st.integers(4, 7).flatmap(lambda t: st.tuples(
    st.just(t), st.integers(1, t // 2),
    st.lists(st.lists(st.integers(0, 1), min_size=t, max_size=t), min_size=1, max_size=8))))
def test_sfpc_iff_cover(args):
    t, r, cols = args
    code = BinaryCode(np.array(cols, dtype=np.uint8).T)
    rep = verify_cover(kneser_graph(t, r), code_to_cover(code, r))
    assert rep.passed == bool(is_sfpc(code, r))


def test_cover_to_code_refuses_bad_cover():
    c = optimal(5, 2).witness
    short = BicliqueCover(c.target, 1, c.bicliques[:-1])
    with pytest.raises(FramecoverError):
        cover_to_code(short)
    assert cover_to_code(short, unchecked=True).v == 5


def test_petersen_cover_gives_cff_on_twelve_points():
    f = cover_to_cff(optimal(5, 2).witness)
    assert (f.n, f.t) == (12, 5)
    assert verify_cff(f, 2, 2, 1)


def test_cff_to_cover_doubles_multiplicity():
    mn = exact_min_n(2, 2, 1, 5, cross_check=False)
    cover = cff_to_cover(mn.witness, 2, 1)
    assert cover.d == 2 and cover.size == mn.n
    assert verify_cover(kneser_graph(5, 2), cover).passes(2)


def test_cff_to_cover_rejects_non_cff():
    f = CoverFreeFamily(2, (frozenset({1}), frozenset({1}), frozenset({2}), frozenset({2})))
    with pytest.raises(FramecoverError):
        cff_to_cover(f, 1)


def test_hadamard_cover_gives_double_cff():
    # K_8 = KG(8, 1); relabel vertex i as the singleton {i}
    c = k8d_cover(sylvester(2))
    relabel = lambda side: frozenset(1 << (v - 1) for v in side)  # noqa: E731
    kc = BicliqueCover(("kneser", 8, 1), 2, tuple(Biclique(relabel(b.side_x), relabel(b.side_y)) for b in c.bicliques))
    f = cover_to_cff(kc)
    assert (f.n, f.t) == (8, 8)
    assert verify_cff(f, 1, 1, 2)
    assert exact_min_n(1, 1, 2, 8, cross_check=False).n == 8


def test_kmm_cover_gives_cff():
    f = intersection_cover_to_cff(kmm_minus_cover(normalize(sylvester(2))))
    assert (f.n, f.t) == (4, 6)
    assert verify_cff(f, 1, 1, 1)


@pytest.mark.parametrize("t,r,w,d", [(4, 1, 1, 1), (5, 2, 1, 1), (5, 2, 2, 1), (4, 1, 1, 2)])
def test_intersection_cover_round_trip(t, r, w, d):
    mn = exact_min_n(r, w, d, t, cross_check=False)
    cover = cff_to_intersection_cover(mn.witness, r, w, d)
    assert verify_cover(intersection_bigraph(t, r, w), cover).passes(d)
    f = intersection_cover_to_cff(cover)
    assert f.n == mn.n and verify_cff(f, r, w, d)


def test_project_kneser_cover():
    res = project_cover(optimal(7, 3).witness, 2)
    assert res.m == 3 and res.m_exact
    assert res.observed_min >= 3
    assert res.cover.target == ("kneser", 7, 2)
    with pytest.raises(ParameterError):
        project_cover(optimal(5, 2).witness, 2)  # needs s < r


def test_project_intersection_cover():
    ic = exact_bc(intersection_bigraph(5, 2, 2), 1, BIG)
    res = project_intersection_cover(ic.witness, 1, 1)
    assert res.m == 3  # N((1,1;1), 3)
    assert res.observed_min >= 3
    assert res.cover.target == ("inter", 5, 1, 1)


@pytest.mark.parametrize("a,img", [((2, 5), (2,)), ((4, 5), (3,)), ((1, 2), (1,)), ((3, 4), (3,))])
def test_phi_examples(a, img):
    assert elements(kneser_phi(5, 2, to_mask(a))) == list(img)


def test_phi_parameters():
    with pytest.raises(ParameterError):
        kneser_phi(4, 2, to_mask((1, 2)))
    with pytest.raises(ParameterError):
        HomomorphismMap(5, 1)
    with pytest.raises(ParameterError):
        kneser_phi(5, 2, to_mask((1, 2, 3)))


@pytest.mark.parametrize("t,r", [(t, r) for t in range(5, 10) for r in range(2, 5) if t > 2 * r])
def test_phi_is_onto_edge_homomorphism(t, r):
    is_hom, onto, bad = check_homomorphism(t, r)
    assert is_hom and onto and not bad
    for a in enumerate_ksubsets(t, r):
        b = kneser_phi(t, r, a)
        assert bin(b).count("1") == r - 1 and b >> (t - 2) == 0


@pytest.mark.parametrize("t,r", [(5, 2), (7, 3)])
def test_push_cover(t, r):
    res = push_cover(optimal(t, r).witness)
    assert res.cover.d == 3
    assert res.observed_min >= 3
    assert res.dropped == 0


def test_preimages_contain_c6_or_matching():
    dst = kneser_graph(5, 2)
    for edge in dst.label_edges():
        pg = preimage_subgraph(7, 3, edge)
        kind, verts = induced_structure(pg)
        assert kind in ("C6", "3K2")
        assert len(verts) == 6
        assert exact_bc(pg, 1).size >= 3
