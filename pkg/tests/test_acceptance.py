"""Acceptance criteria, one test per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see one summary line
per criterion with its runtime.
"""

import random
import time
from math import lcm

from complexity_one.catalog import load, octahedron_sponge, simplex_lambda, simplex_polytope
from complexity_one.chardata import (
    assemble_euler_cycle,
    cocycle_check,
    compatibility_check,
    validate_mu,
)
from complexity_one.classify import compare, verify_witness
from complexity_one.lattice import IntMatrix, determinant, smith_normal_form, vec
from complexity_one.quasitoric import (
    SimplePolytope,
    CharacteristicFunction,
    coloring_pullback,
    find_strict_subtorus,
    reduce,
)
from complexity_one.sponge import homology, validate_sponge, weighted_cycle_check
from complexity_one.weights import (
    WeightSystem,
    cramer_coefficients,
    is_strictly_appropriate,
    stabilizer_structure,
)
from conftest import random_general_position_system, random_unimodular, transformed
from oracles import (
    cofactor_det,
    coset_order,
    graph_betti,
    invariant_factors_from_minors,
)


def _report(num, ok, detail, t0):
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance {num}] {status}: {detail} ({time.monotonic() - t0:.3f}s)")
    assert ok, detail


def test_criterion_1_grassmannian_pipeline():
    t0 = time.monotonic()
    ws = WeightSystem(4, (vec(1, 0, -1), vec(0, 1, -1), vec(-1, 0, -1), vec(0, -1, -1)))
    cc = cramer_coefficients(ws)
    ok = cc.c in ((1, -1, 1, -1), (-1, 1, -1, 1))
    ok = ok and is_strictly_appropriate(ws)
    sponge_ok = validate_sponge(octahedron_sponge(squares=True)).ok
    ok = ok and sponge_ok
    entry = load("g42")
    cycle = assemble_euler_cycle(entry.data)
    ok = ok and cycle.is_cycle
    dt = time.monotonic() - t0
    ok = ok and dt < 1.0
    _report(
        1,
        ok,
        f"c={list(cc.c)}, strict, octahedron+squares valid={sponge_ok}, cycle={cycle.is_cycle}",
        t0,
    )


def test_criterion_2_flag_pipeline():
    t0 = time.monotonic()
    ws = WeightSystem(3, (vec(1, 0), vec(1, 1), vec(0, 1)))
    cc = cramer_coefficients(ws)
    ok = cc.c in ((1, -1, 1), (-1, 1, -1))
    ok = ok and is_strictly_appropriate(ws)
    entry = load("f3")
    s = entry.data.sponge
    ok = ok and validate_sponge(s).ok
    ok = ok and all(len(s.facets_containing(v.id)) == 3 for v in s.cells_of_dim(0))
    betti = homology(s).betti
    vertices = [c.id for c in s.cells_of_dim(0)]
    edges = [tuple(x for x, _ in s.boundary(e.id)) for e in s.cells_of_dim(1)]
    oracle = graph_betti(vertices, edges)
    ok = ok and betti == (1, 4) == oracle
    dt = time.monotonic() - t0
    ok = ok and dt < 1.0
    _report(2, ok, f"c={list(cc.c)}, K33 valid, betti={list(betti)} = oracle {list(oracle)}", t0)


def test_criterion_3_reduction_closure():
    t0 = time.monotonic()
    simplex = simplex_polytope()
    cube = SimplePolytope(
        3,
        ("xm", "xp", "ym", "yp", "zm", "zp"),
        tuple(
            frozenset({"x" + sx, "y" + sy, "z" + sz})
            for sx in "mp"
            for sy in "mp"
            for sz in "mp"
        ),
    )
    prism = SimplePolytope(
        3,
        ("t", "b", "s1", "s2", "s3"),
        tuple(
            frozenset(v)
            for v in [
                ("t", "s1", "s2"),
                ("t", "s2", "s3"),
                ("t", "s1", "s3"),
                ("b", "s1", "s2"),
                ("b", "s2", "s3"),
                ("b", "s1", "s3"),
            ]
        ),
    )
    cases = [
        (simplex, simplex_lambda()),
        (cube, coloring_pullback(cube, {"xm": 1, "xp": 1, "ym": 2, "yp": 2, "zm": 3, "zp": 3})),
        (
            prism,
            CharacteristicFunction(
                {
                    "t": vec(0, 0, 1),
                    "b": vec(0, 0, 1),
                    "s1": vec(1, 0, 0),
                    "s2": vec(0, 1, 0),
                    "s3": vec(1, 1, 1),
                }
            ),
        ),
    ]
    runs = 0
    for p, lam in cases:
        subtori = find_strict_subtorus(p, lam, 1)
        assert subtori, "no strict subtorus found"
        for st in subtori:
            assert all(abs(st.pairing(lam[f])) == 1 for f in p.facets)
            cd = reduce(p, lam, st)
            assert validate_mu(cd).ok
            assert compatibility_check(cd)
            assert cocycle_check(cd).ok
            assert assemble_euler_cycle(cd).is_cycle
            runs += 1
    dt = time.monotonic() - t0
    ok = runs >= 3 and dt < 5.0
    _report(3, ok, f"{runs}/{runs} pipeline runs pass all validators on simplex, cube, prism", t0)


def test_criterion_4_stabilizer_suite():
    t0 = time.monotonic()
    rng = random.Random(101)
    mismatches = 0
    total = 0
    for _ in range(500):
        n = rng.randint(3, 6)
        ws = random_general_position_system(rng, n, bound=4)
        total += 1
        c = cramer_coefficients(ws).c
        strict = is_strictly_appropriate(ws)
        singleton_trivial = True
        for i in range(n):
            st = stabilizer_structure(ws, [i])
            want = (abs(c[i]),) if abs(c[i]) > 1 else ()
            if st.finite_orders != want or st.torus_rank != 0:
                mismatches += 1
            if st.finite_orders:
                singleton_trivial = False
        if strict != singleton_trivial:
            mismatches += 1
    ok = total >= 500 and mismatches == 0
    _report(4, ok, f"{total} systems, {mismatches} mismatches", t0)


def test_criterion_5_cramer_fuzz():
    t0 = time.monotonic()
    rng = random.Random(102)
    failures = 0
    systems = []
    for _ in range(400):
        n = rng.randint(3, 6)
        ws = random_general_position_system(rng, n, bound=4)
        systems.append(ws)
        cc = cramer_coefficients(ws)  # Cramer identity asserted internally
        total = ws.weights[0].scale(0)
        for ci, a in zip(cc.c_tilde, ws.weights):
            total = total + a.scale(ci)
        if not total.is_zero():
            failures += 1
    # sign covariance on 200 transformed instances
    for ws in systems[:200]:
        n = ws.n
        base = cramer_coefficients(ws).c_tilde
        i = rng.randrange(n)
        flipped = WeightSystem(
            n, tuple(w.scale(-1) if t == i else w for t, w in enumerate(ws.weights))
        )
        new = cramer_coefficients(flipped).c_tilde
        if new[i] != base[i] or any(new[j] != -base[j] for j in range(n) if j != i):
            failures += 1
    # GL invariance on 200 transformed instances
    for ws in systems[200:400]:
        a = random_unimodular(rng, ws.n - 1)
        moved = WeightSystem(ws.n, tuple(a @ w for w in ws.weights))
        c1 = cramer_coefficients(ws).c
        c2 = cramer_coefficients(moved).c
        if c1 != c2 and tuple(-x for x in c1) != c2:
            failures += 1
        if is_strictly_appropriate(moved) != is_strictly_appropriate(ws):
            failures += 1
    ok = failures == 0
    _report(5, ok, f"400 identity checks, 200 sign-covariance, 200 GL-invariance, {failures} failures", t0)


def test_criterion_6_smith_oracle():
    t0 = time.monotonic()
    rng = random.Random(103)
    for _ in range(1000):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        a = IntMatrix(m, n, tuple(rng.randint(-5, 5) for _ in range(m * n)))
        dec = smith_normal_form(a)
        prod = dec.u @ a @ dec.v
        assert prod.entries == dec.d.entries
        assert determinant(dec.u) in (1, -1) and determinant(dec.v) in (1, -1)
        diag = dec.diagonal()
        for i in range(len(diag) - 1):
            if diag[i + 1]:
                assert diag[i] != 0 and diag[i + 1] % diag[i] == 0

    # torsion readout against the brute-force oracles on small matrices
    checked_orders = 0
    for _ in range(200):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
        a = IntMatrix.from_rows(rows)
        dec = smith_normal_form(a)
        oracle_factors = invariant_factors_from_minors(rows)
        assert list(dec.diagonal()[: len(oracle_factors)]) == oracle_factors
        assert tuple(x for x in oracle_factors if x > 1) == dec.torsion()
        if m == n and cofactor_det(rows) != 0:
            det = abs(cofactor_det(rows))
            prodd = 1
            for x in dec.diagonal():
                prodd *= x
            assert prodd == det
            # orders of the images of the basis vectors in the quotient group
            exponent = dec.diagonal()[-1]
            orders = []
            for i in range(m):
                e = [1 if t == i else 0 for t in range(m)]
                order = coset_order(rows, e, bound=det + 1)
                assert order is not None and exponent % order == 0
                orders.append(order)
            assert lcm(*orders) == exponent
            checked_orders += 1
    ok = checked_orders > 20
    _report(
        6,
        ok,
        f"1000 decompositions checked, 200 minor-gcd torsion oracles, {checked_orders} coset-order enumerations",
        t0,
    )


def test_criterion_7_classifier():
    t0 = time.monotonic()
    rng = random.Random(104)
    entries = ["f3", "cp3-reduction", "local-model-4", "g42"]
    counts = {"f3": 15, "cp3-reduction": 15, "local-model-4": 10, "g42": 10}
    pairs = 0
    for name in entries:
        cd = load(name).data
        for _ in range(counts[name]):
            ids = [c.id for c in cd.sponge.cells]
            target = [f"c{idx:03d}" for idx in range(len(ids))]
            rng.shuffle(target)
            relabel = dict(zip(ids, target))
            a = random_unimodular(rng, cd.n - 1)
            moved = transformed(cd, matrix=a, relabel=relabel)
            res = compare(cd, moved)
            assert res.equivalent, f"{name}: self-pair not recognized"
            assert verify_witness(cd, moved, res.witness), f"{name}: witness fails substitution"
            pairs += 1
    g42 = load("g42").data
    flipped = transformed(g42, flip={sorted(g42.sponge.facet_ids)[0]})
    res = compare(g42, flipped)
    assert res.verdict == "inequivalent"
    dt = time.monotonic() - t0
    ok = pairs == 50 and dt < 10.0
    _report(7, ok, f"{pairs} verified self-pairs, flipped Hopf sign inequivalent", t0)


def test_criterion_8_cocycle_relations():
    t0 = time.monotonic()
    data = [load(name).data for name in ("g42", "f3", "cp3-reduction", "local-model-4", "local-model-5")]
    # pipeline-produced data
    simplex = simplex_polytope()
    for st in find_strict_subtorus(simplex, simplex_lambda(), 1):
        data.append(reduce(simplex, simplex_lambda(), st))
    violations = 0
    faces = 0
    for cd in data:
        report = cocycle_check(cd)
        violations += len(report.failures())
        if cd.n >= 3:
            faces += len(cd.sponge.cells_of_dim(cd.n - 3))
        chain = {f: cd.euler_coefficient(f) for f in cd.sponge.facet_ids}
        if not weighted_cycle_check(cd.sponge, chain):
            violations += 1
    ok = violations == 0 and faces > 0
    _report(8, ok, f"{faces} codimension-one faces over {len(data)} data sets, {violations} violations", t0)
