"""End-to-end reproduction driver: small exact instances of every construction.

Each step returns a :class:`Step`; :func:`pipeline_demo` stops at the first failure.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import comb, isclose

from .cff import exact_min_n, verify_cff
from .codes import is_sfpc
from .combinatorics import (
    complete_bipartite_minus_matching,
    complete_graph,
    covering_number,
    elements,
    intersection_bigraph,
    is_c4_free,
    kneser_graph,
)
from .constructors import RandomTrialConfig, exact_bc, random_cover, sfpc_bound
from .covers import bc_lower_bound, verify_cover
from .errors import Budget, BudgetExceeded, default_budget
from .hadamard import k8d_cover, kmm_minus_cover, normalize, sylvester
from .transforms import (
    check_homomorphism,
    cover_to_cff,
    cover_to_code,
    cff_to_cover,
    induced_structure,
    preimage_subgraph,
    push_cover,
)


@dataclass
class Step:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0


def _petersen_code(budget):
    res = exact_bc(kneser_graph(5, 2), 1, budget)
    return res, cover_to_code(res.witness)


def step_a1(budget, fixture=None):
    res, code = _petersen_code(budget)
    if fixture is not None:
        code = fixture
    verdict = is_sfpc(code, 2)
    ok = res.size == 6 and code.t == 5 and code.v == 6 and verdict.passed
    return Step("A1 code <-> cover on KG(5,2)", ok,
                {"bc": res.size, "code_shape": [code.t, code.v], "sfpc": verdict.passed,
                 "witness": verdict.witness})


def step_a2(budget):
    rows = {}
    ok = True
    big = Budget(budget.max_vertices, max(budget.max_edges, 70), budget.max_nodes)
    for r in (1, 2, 3):
        t = 2 * r + 1
        g = kneser_graph(t, r)
        formula = (t - r) * comb(t - 1, r - 1) // r
        beta, _ = covering_number(g, budget)
        c4free, _ = is_c4_free(g)
        try:
            bc = exact_bc(g, 1, big).size
        except BudgetExceeded:
            bc = None
        rows[r] = {"beta": beta, "formula": formula, "bc": bc, "c4_free": c4free}
        ok &= beta == formula and c4free and bc == beta
    return Step("A2 bc(KG(2r+1,r)) = covering number", ok, rows)


def step_a3(budget):
    cover = k8d_cover(sylvester(2))
    report = verify_cover(complete_graph(8), cover)
    lb = bc_lower_bound(complete_graph(8), 2, budget)
    ok = report.passes(2) and cover.size == 4 and lb == 4
    return Step("A3 bc_2(K_8) = 4", ok, {"size": cover.size, "min_mult": report.min_multiplicity, "lower": lb})


def step_a4(budget):
    cover = kmm_minus_cover(normalize(sylvester(2)))
    report = verify_cover(complete_bipartite_minus_matching(6), cover)
    n = exact_min_n(1, 1, 1, 6, budget).n
    ok = report.passes(1) and cover.size == 4 and n == 4
    return Step("A4 N((1,1;1),6) = bc(K^-_{6,6}) = 4", ok, {"size": cover.size, "N": n})


def step_a5(budget):
    rows = {}
    ok = True
    for t in range(2, 7):
        n = exact_min_n(1, 1, 1, t, budget, cross_check=False).n
        bc = exact_bc(intersection_bigraph(t, 1, 1), 1, budget).size
        rows[t] = [n, bc]
        ok &= n == bc
    ok &= rows[3] == [3, 3]
    return Step("A5 N((1,1;1),t) = bc(I_t(1,1))", ok, rows)


def step_a6(budget):
    g = kneser_graph(5, 2)
    bc1 = exact_bc(g, 1, budget)
    bc2 = exact_bc(g, 2, budget).size
    mn = exact_min_n(2, 2, 1, 5, budget, cross_check=False)
    to_cover = cff_to_cover(mn.witness, 2, 1)
    ok_cover = verify_cover(g, to_cover).passes(2)
    to_cff = cover_to_cff(bc1.witness)
    ok_cff = verify_cff(to_cff, 2, 2, 1).passed
    ok = ok_cover and ok_cff and bc2 <= mn.n <= 2 * bc1.size == to_cff.n and to_cover.size == mn.n
    return Step("A6 bc_2(KG(5,2)) <= N((2,2;1),5) <= 2 bc(KG(5,2))", ok,
                {"bc2": bc2, "N": mn.n, "2bc1": 2 * bc1.size})


def step_a7(budget, seed=1, trials=50):
    bound = sfpc_bound(10, 2)
    res = random_cover(10, 2, RandomTrialConfig(seed=seed, trials=trials))
    report = verify_cover(kneser_graph(10, 2), res.best)
    expected = 252 / 40 * (1 + 4.605170185988092)
    ok = isclose(bound.value, expected, rel_tol=1e-9) and report.passes(1) and res.best.size <= 35
    return Step("A7 random halving cover of KG(10,2)", ok,
                {"bound": bound.value, "p": res.p, "best": res.best.size, "sizes": res.sizes})


def step_a8(budget):
    is_hom, onto, _ = check_homomorphism(7, 3)
    big = Budget(budget.max_vertices, max(budget.max_edges, 70), budget.max_nodes)
    src = exact_bc(kneser_graph(7, 3), 1, big).witness
    pushed = push_cover(src)
    dst = kneser_graph(5, 2)
    preimages = []
    ok = is_hom and onto and pushed.observed_min >= 3
    for edge in dst.label_edges()[:3]:
        pg = preimage_subgraph(7, 3, edge)
        kind, _ = induced_structure(pg)
        bc = exact_bc(pg, 1, budget).size
        preimages.append({"edge": [elements(v) for v in edge], "bc": bc, "structure": kind})
        ok &= bc >= 3 and kind is not None
    return Step("A8 Kneser homomorphism push-forward", ok,
                {"homomorphism": is_hom, "onto_edge": onto, "pushed_min": pushed.observed_min,
                 "preimages": preimages})


STEPS = [step_a1, step_a2, step_a3, step_a4, step_a5, step_a6, step_a7, step_a8]


def pipeline_demo(quick=False, budget=None, fixture=None, log=None):
    """Run A1..A8 (A1..A4 with ``quick``); returns the list of steps, stopping at the first failure."""
    budget = budget or default_budget()
    steps = []
    for fn in STEPS[:4] if quick else STEPS:
        start = time.perf_counter()
        step = fn(budget, fixture) if fn is step_a1 else fn(budget)
        step.seconds = time.perf_counter() - start
        steps.append(step)
        if log:
            log(step)
        if not step.passed:
            break
    return steps
