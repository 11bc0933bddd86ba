"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line,
printed in the terminal summary (and by running this file directly)."""
import time
from fractions import Fraction

from profmackey import cb_space as cb
from profmackey import godement as gd
from profmackey import linalg as la
from profmackey import mackey as mk
from profmackey import tower as tw
from profmackey.burnside import decompose_unit
from profmackey.finite_group import builtin

RESULTS = {}
GROUPS = ["C2", "C3", "C4", "C6", "S3", "Z/8"]


def record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    assert ok, RESULTS[n]


def test_criterion_1_idempotent_tables():
    problems, slowest = [], 0.0
    for name in GROUPS:
        t0 = time.perf_counter()
        G = builtin(name)
        es = decompose_unit(G)
        ring = es[0].ring
        r = ring.rank
        if len(es) != len(G.lattice().classes):
            problems.append(f"{name}: {len(es)} idempotents")
        for i, e in enumerate(es):
            if list(e.marks) != [Fraction(int(i == j)) for j in range(r)]:
                problems.append(f"{name}: marks of e_{i}")
            for j, f in enumerate(es):
                if j != i and (e * f) != ring.zero():
                    problems.append(f"{name}: e_{i} e_{j} != 0")
            if e * e != e:
                problems.append(f"{name}: e_{i} not idempotent")
        total = ring.zero()
        for e in es:
            total = total + e
        if total != ring.one():
            problems.append(f"{name}: sum is not 1")
        dt = time.perf_counter() - t0
        slowest = max(slowest, dt)
        if dt >= 1.0:
            problems.append(f"{name}: {dt:.2f}s")
    record(1, not problems, f"{len(GROUPS)} groups, slowest {slowest:.3f}s" + (f"; {problems}" if problems else ""))


def test_criterion_2_mackey_axioms_and_mutations():
    t0 = time.perf_counter()
    problems, mutations = [], 0
    for name in GROUPS:
        M = mk.burnside_functor(builtin(name))
        if not mk.axiom_check(M).ok:
            problems.append(f"{name}: Burnside functor fails")
        for desc, mutant in mk.mutation_catalogue(M):
            mutations += 1
            rep = mk.axiom_check(mutant)
            localized = rep.violations and all(v.witness and not la.is_zero(v.residual) for v in rep.violations)
            if rep.ok or not localized:
                problems.append(f"{name}: mutation {desc} not localized")
    dt = time.perf_counter() - t0
    ok = not problems and mutations >= 20 and dt < 10
    record(2, ok, f"{mutations} mutations detected, {dt:.2f}s" + (f"; {problems}" if problems else ""))


def test_criterion_3_finite_round_trip():
    G = builtin("S3")
    problems = []
    for seed in range(50):
        fam = mk.random_family(G, seed, max_dim=3)
        if max(fam.dims().values()) > 3:
            problems.append(f"seed {seed}: dimension above 3")
        rf = mk.roundtrip_family(fam)
        M = mk.rebuild(fam)
        rt = mk.roundtrip_functor(M)
        if not rf.ok:
            problems.append(f"seed {seed}: split(rebuild(f)) {rf.problems}")
        if not (rt.ok and rt.functor_iso.is_isomorphism()):
            problems.append(f"seed {seed}: rebuild(split(M)) {rt.problems}")
    record(3, not problems, "50 random families on S3" + (f"; {problems[:3]}" if problems else ""))


def test_criterion_4_zp_example():
    t0 = time.perf_counter()
    problems = []
    for p in (2, 3):
        T = tw.zp_tower(p, 5)
        TM = tw.tower_functor(T, "zp")
        for i, M in enumerate(TM.levels):
            if not mk.axiom_check(M).ok:
                problems.append(f"p={p}: axioms fail at level {i}")
        for th in tw.threads(T):
            s = tw.weyl_stalk(TM, th)
            if not (s.stabilized and s.dim == 1):
                problems.append(f"p={p}: thread {th.indices} dims {s.dims}")
        if not tw.roundtrip_certificate(TM)["ok"]:
            problems.append(f"p={p}: round trip certificate fails")
    dt = time.perf_counter() - t0
    if dt >= 5:
        problems.append(f"{dt:.2f}s")
    record(4, not problems, f"p=2,3 depth 5, {dt:.2f}s" + (f"; {problems}" if problems else ""))


def test_criterion_5_cb_ranks():
    got = {"P": cb.rank(cb.P)}
    ok = got["P"] == 2 == cb.rank_by_derivatives(cb.P)
    for n in range(1, 5):
        X = cb.power(cb.P, n)
        got[f"P^{n}"] = cb.rank(X)
        ok = ok and cb.rank(X) == n + 1 == cb.rank_by_derivatives(X)
    record(5, ok, str(got))


def test_criterion_6_injective_dimension_reports():
    t0 = time.perf_counter()
    problems = []
    ids = {}
    for text, want in [("disc(1)", 0), ("disc(4)", 0), ("P", 1), ("(P*P)", 2)]:
        ids[text] = cb.injective_dimension(cb.parse_space(text))["injective_dimension"]
        if ids[text] != want:
            problems.append(f"ID({text}) = {ids[text]}")
    for text, top in [("P", 1), ("(P*P)", 2)]:
        X = cb.parse_space(text)
        rep = gd.ext_report(X)
        if rep["degrees"].get(str(top)) != "nonzero":
            problems.append(f"{text}: Ext^{top} is {rep['degrees'].get(str(top))}")
        else:
            w = gd.ext_witness(X, top)
            cert = gd.verify_p_degree1(w.cls.data) if text == "P" else gd.verify_p2_degree2(w.cls.data)
            if not cert["verdict"]:
                problems.append(f"{text}: witness not re-verified")
        if rep["degrees"].get(str(top + 1)) != "zero":
            problems.append(f"{text}: Ext^{top + 1} nonzero")
    dt = time.perf_counter() - t0
    if dt >= 5:
        problems.append(f"{dt:.2f}s")
    record(6, not problems, f"ID {ids}, {dt:.2f}s" + (f"; {problems}" if problems else ""))


def test_criterion_7_property_suites():
    import test_properties as props
    props.CASES.clear()
    failures = []
    for name in sorted(n for n in dir(props) if n.startswith("test_")):
        try:
            getattr(props, name)()
        except Exception as exc:  # a falsified property
            failures.append(f"{name}: {type(exc).__name__}")
    total = sum(props.CASES.values())
    record(7, total >= 1000 and not failures, f"{total} generated cases, {len(failures)} failing suites"
           + (f"; {failures}" if failures else ""))


if __name__ == "__main__":
    import sys
    sys.path.insert(0, __file__.rsplit("/", 1)[0])
    for name, fn in sorted((n, f) for n, f in globals().items() if n.startswith("test_criterion")):
        try:
            fn()
        except AssertionError:
            pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
