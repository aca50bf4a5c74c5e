"""The eight acceptance criteria, each timed against its runtime limit.

Every test prints one ``ACCEPTANCE <n> <name>: PASS|FAIL`` line (shown even
when pytest captures output) and then asserts the verdict and the time limit.
"""

import time
from itertools import product

import numpy as np
import pytest

from enrichcat import chain as ch
from enrichcat import finvect as fv
from enrichcat.enriched import dual_numbers, free_vcategory, full_subcategory, inclusion_functor, opposite, unit_vcategory
from enrichcat.finvect import FinVect
from enrichcat.harness import (
    NotFilteredError,
    TensorFunctor,
    chain_self_category,
    change_of_base,
    change_of_base_checks,
    filtered_exactness_probe,
    gabriel_popescu_verify,
    homomorphism_theorem_check,
    idempotent_probe,
    tensor_hom_agreement,
    terminal_cospan_probe,
)
from enrichcat.laws import check_cosmos_laws
from enrichcat.limits import VTarget, coend_of, cotensor_preservation, end_of, hom_bifunctor, tensor_bifunctor
from enrichcat.oracle import coend_agrees, end_agrees
from enrichcat.ordinary import discrete, from_quiver
from enrichcat.presheaf import (
    LanFunctor,
    basis_action,
    nerve_realization,
    presheaf_category,
    random_morphism,
    random_presheaf,
    vfunctor,
    yoneda,
    yoneda_iso,
)


def report(capsys, n, name, ok, elapsed, limit=None, detail=""):
    within = limit is None or elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    bound = f" < {limit}s" if limit is not None else ""
    with capsys.disabled():
        print(f"\nACCEPTANCE {n} {name}: {verdict} ({elapsed:.2f}s{bound}) {detail}".rstrip())
    assert ok, detail
    assert within, f"took {elapsed:.2f}s, limit {limit}s"


def categories(p):
    return {
        "unit": unit_vcategory(FinVect(p)),
        "dual-numbers": dual_numbers(p),
        "quiver": free_vcategory(from_quiver(["a", "b"], {"f": ("a", "b")}), p),
    }


def indecomposables(p):
    """Zero plus the sphere and disk on F_p at every shift that stays within three terms."""
    i = fv.unit(p)
    return ([ch.zero_complex(p)] + [ch.shift(ch.sphere(i), n) for n in (-1, 0, 1)]
            + [ch.shift(ch.disk(i), n) for n in (-1, 0, 1)])


def random_complex(p, rng, max_terms=3, max_dim=2):
    n = int(rng.integers(1, max_terms + 1))
    dims = [int(d) for d in rng.integers(0, max_dim + 1, size=n)]
    diffs, prev = [], None
    for k in range(n - 1):
        d = fv.FpMatrix.random(p, dims[k + 1], dims[k], rng)
        if prev is not None:
            from enrichcat.linalg import cokernel_projection

            q = cokernel_projection(prev)
            d = fv.FpMatrix.random(p, dims[k + 1], q.rows, rng) @ q
        diffs.append(d)
        prev = d
    return ch.ChainComplex(p, int(rng.integers(-1, 2)), dims, diffs)


def test_1_cosmos_laws(capsys):
    t = time.perf_counter()
    failures, counts = [], 0
    for p in (2, 3):
        rng = np.random.default_rng(p)
        V = FinVect(p)
        rep = check_cosmos_laws(V, [V.obj(d) for d in range(4)], rng)
        failures += rep.failures
        counts += sum(rep.counts.values())
        C = ch.ChainCosmos(p)
        # n-ary laws on every nonzero indecomposable (each small complex is a sum of these;
        # any instance with a zero factor is a map between zero objects, covered by the pair sweep)
        rep = check_cosmos_laws(C, indecomposables(p)[1:], rng, maps_per_shape=1)
        failures += rep.failures
        counts += sum(rep.counts.values())
        # binary laws on every complex with <= 3 terms of dim <= 1
        rep = check_cosmos_laws(C, list(ch.iter_small_complexes(p, 3, 1)), rng, triples=[], quadruples=[])
        failures += rep.failures
        counts += sum(rep.counts.values())
        # random complexes with <= 3 terms of dim <= 2
        sample = [random_complex(p, rng) for _ in range(4)]
        idx = range(len(sample))
        rep = check_cosmos_laws(C, sample, rng, maps_per_shape=1,
                                triples=[(i, (i + 1) % 4, (i + 2) % 4) for i in idx],
                                quadruples=[(i, (i + 1) % 4, (i + 2) % 4, (i + 3) % 4) for i in idx])
        failures += rep.failures
        counts += sum(rep.counts.values())
    report(capsys, 1, "cosmos laws", not failures, time.perf_counter() - t, 10,
           f"{counts} law instances, {len(failures)} failures")


def test_2_yoneda(capsys):
    t = time.perf_counter()
    checked, bad = 0, []
    for name, C in categories(2).items():
        y = yoneda(C)
        rng = np.random.default_rng(len(name))
        probes = [y.obj(c) for c in C.objects] + [random_presheaf(y, rng, name=f"R{i}") for i in range(20)]
        for P, c in product(probes, C.objects):
            it = yoneda_iso(P, c, y)
            checked += 1
            if not (it.round_trip_hom and it.round_trip_value):
                bad.append((name, P.name, c))
    report(capsys, 2, "yoneda", not bad, time.perf_counter() - t, 30,
           f"{checked} two-sided isomorphisms, {len(bad)} failures")


def test_3_nerve_realization(capsys):
    t = time.perf_counter()
    bad, probes = [], 0
    for name, C in categories(2).items():
        y = yoneda(C)
        PC = y.target
        rng = np.random.default_rng(len(name))
        Ps = [y.obj(c) for c in C.objects] + [random_presheaf(y, rng, nonzero=True) for _ in range(2)]
        maps = [random_morphism(PC, Ps[i], Ps[(i + 1) % len(Ps)], rng) for i in range(len(Ps))]
        w = nerve_realization(y, PC, Ps, Ps, maps, maps, PC=PC, y=y, strict=False)
        probes += len(w.unit_iso) + len(w.counit_iso)
        if not (w.ok and w.is_equivalence):
            bad.append(f"F = y on {name}")
    for p in (2, 3):
        for x in (0, 1, 2):
            v = tensor_hom_agreement(p, x, [0, 1, 2], [0, 1, 2])
            if not v.passed:
                bad.append(f"- (x) F_{p}^{x}: {v.detail}")
    report(capsys, 3, "nerve-realization", not bad, time.perf_counter() - t, None,
           f"{probes} unit/counit probes, tensor-hom matrix equality for X of dim 0..2; {len(bad)} failures")


def _gp_cases(p=2):
    cases = []
    for name in ("dual-numbers", "quiver"):
        C = categories(p)[name]
        PC = presheaf_category(C)
        y = yoneda(C, PC)
        cases.append((f"{name}/representables", y, PC, y, [y.obj(c) for c in C.objects]))
    C = categories(p)["quiver"]
    PC = presheaf_category(C)
    y = yoneda(C, PC)
    G = PC.biproduct([y.obj(c) for c in C.objects]).obj
    G.name = "G"
    sub = full_subcategory(PC, {"G": G})
    PG = presheaf_category(sub)
    cases.append(("quiver/sum", inclusion_functor(sub, PC, {"G": G}), PC, yoneda(sub, PG), [G]))
    return cases


def test_4_gabriel_popescu(capsys):
    t = time.perf_counter()
    bad, kinds = [], set()
    for label, F, A, yF, extra in _gp_cases():
        rng = np.random.default_rng(4)
        yA = A.base if hasattr(A, "base") else None
        ys = yoneda(yA, A)
        objs = extra + [random_presheaf(ys, rng, nonzero=True) for _ in range(2)]
        Ps = [yF.obj(c) for c in yF.source.objects] + [random_presheaf(yF, rng, nonzero=True) for _ in range(2)]
        rep = gabriel_popescu_verify(F, A, Ps, objs, rng=rng, n_hom=5, PC=yF.target, y=yF, name=label)
        for key in ("adjunction", "T_fully_faithful", "S_left_exact"):
            if not rep.gabriel_popescu[key].passed:
                bad.append(f"{label}: {key}")
        kinds |= {c.note.split(":")[0] for c in rep.gabriel_popescu["S_left_exact"].certificates}
    if kinds != {"kernel", "product", "cotensor"}:
        bad.append(f"limit kinds probed: {sorted(kinds)}")
    report(capsys, 4, "gabriel-popescu", not bad, time.perf_counter() - t, 60,
           f"{len(_gp_cases())} embeddings, S tested on {', '.join(sorted(kinds))}; {len(bad)} failures")


def test_5_main_theorem_conditions(capsys):
    t = time.perf_counter()
    bad, counts = [], []
    p = 2
    V = FinVect(p)
    VT = VTarget(V)
    rng = np.random.default_rng(5)
    vobjs = [V.obj(d) for d in range(4)]
    scenarios = [("V", VT, vobjs)]
    for name in ("dual-numbers", "quiver"):
        C = categories(p)[name]
        y = yoneda(C)
        pool = [y.obj(c) for c in C.objects] + [random_presheaf(y, rng, nonzero=True) for _ in range(4)]
        scenarios.append((name, y.target, pool))
    for name, A, pool in scenarios:
        maps = [random_morphism(A, pool[int(rng.integers(len(pool)))], pool[int(rng.integers(len(pool)))], rng)
                for _ in range(50)]
        v = homomorphism_theorem_check(A, maps)
        counts.append(len(maps))
        if not v.passed:
            bad.append(f"{name}: {v.detail}")
        if name == "V":
            continue
        P, Q = pool[0], pool[-1]
        f, g = random_morphism(A, Q, P, rng), random_morphism(A, Q, P, rng)
        for L, dp in (terminal_cospan_probe(A, Q, Q, P, f, g), idempotent_probe(A, P, Q, f, rng)):
            if not filtered_exactness_probe(A, L, [dp]).passed:
                bad.append(f"{name}: filtered {L.name}")
        controls = [from_quiver(["a", "b"], {"u": ("a", "b"), "v": ("a", "b")}, name="parallel"),
                    discrete(["a", "b"], name="two points"), discrete([], name="empty")]
        for L in controls:
            try:
                filtered_exactness_probe(A, L, [])
                bad.append(f"{name}: {L.name} accepted as filtered")
            except NotFilteredError:
                pass
    report(capsys, 5, "main-theorem conditions", not bad, time.perf_counter() - t, None,
           f"homomorphism theorem on {counts} random morphisms, 2 filtered probes and 3 non-filtered controls "
           f"per presheaf category; {len(bad)} failures")


def test_6_dualizability(capsys):
    t = time.perf_counter()
    bad, n = [], 0
    for p in (2, 3):
        V = FinVect(p)
        for d in range(5):
            n += 1
            if not fv.zigzag_holds(V, fv.dual_pair(V.obj(d))):
                bad.append(f"FinVect dim {d} over F_{p}")
        C = ch.ChainCosmos(p)
        for d in (1, 2):
            for base in (ch.sphere(V.obj(d)), ch.disk(V.obj(d))):
                for s in (-1, 0, 1):
                    n += 1
                    if not fv.zigzag_holds(C, ch.chain_dual_pair(ch.shift(base, s))):
                        bad.append(f"{base!r}[{s}] over F_{p}")
        # absolute limits: cotensors by finite-dimensional X are preserved by every sampled functor
        VT = VTarget(V)
        samples = [(TensorFunctor(V, V.obj(2)), VT, VT, [V.obj(k) for k in range(3)])]
        A = dual_numbers(p)
        PC = presheaf_category(A)
        y = yoneda(A, PC)
        Aop = opposite(A)
        yop = yoneda(Aop, presheaf_category(Aop))
        rng = np.random.default_rng(6)
        G0 = random_presheaf(yop, rng, nonzero=True)
        G = vfunctor(A, {"*": G0.obj("*")}, lambda a, b, k: basis_action(G0, a, b, k))
        samples.append((LanFunctor(y, G, PC, VT), PC, VT, [y.obj("*"), random_presheaf(y, rng, nonzero=True)]))
        for S, src, dst, ms in samples:
            for x, m in product((V.obj(1), V.obj(2)), ms):
                n += 1
                if not dst.is_iso(cotensor_preservation(S, src, dst, x, m)):
                    bad.append(f"{S.name} cotensor X={x.dim} over F_{p}")
    report(capsys, 6, "dualizability", not bad, time.perf_counter() - t, None,
           f"{n} triangle-identity and absolute-cotensor cases, {len(bad)} failures")


def test_7_change_of_base(capsys):
    t = time.perf_counter()
    bad, n = [], 0
    for p in (2, 3):
        i = fv.unit(p)
        objs = {"S": ch.sphere(i), "D": ch.disk(i), "S[1]": ch.shift(ch.sphere(i), 1), "S2": ch.sphere(fv.obj(2, p))}
        B = chain_self_category(p, objs)
        G = change_of_base(B)
        out = change_of_base_checks(B, G, [FinVect(p).obj(1), FinVect(p).obj(2)])
        for k, v in out.items():
            n += 1
            if not (v.passed and v.recheck()):
                bad.append(f"F_{p} {k}: {v.detail}")
    report(capsys, 7, "change of base", not bad, time.perf_counter() - t, None,
           f"{n} verdicts (axioms, exhaustive underlying bijection, cotensor transport, adjunction); "
           f"{len(bad)} failures")


def test_8_oracle(capsys):
    t = time.perf_counter()
    p = 2
    V = FinVect(p)
    total, agree = 0, 0
    for name, C in categories(p).items():
        assert all(C.hom(a, b).dim <= 2 for a, b in product(C.objects, repeat=2))
        y = yoneda(C)
        Cop = opposite(C)
        yop = yoneda(Cop, presheaf_category(Cop))
        rng = np.random.default_rng(8)
        Hc = hom_bifunctor(y, y)
        cases = [("end", Hc, C), ("coend", Hc, C)]
        for _ in range(4):
            P = random_presheaf(y, rng, max_gens=1, max_rels=1)
            Q = random_presheaf(y, rng, max_gens=1, max_rels=1)
            cases.append(("end", hom_bifunctor(P, Q), P.source))
            Gf = random_presheaf(yop, rng, max_gens=1, max_rels=1)
            H, _ = tensor_bifunctor(P, Gf, VTarget(V))
            cases.append(("coend", H, Gf.source))
        for kind, H, J in cases:
            total += 1
            if kind == "end":
                agree += end_agrees(end_of(H, J), H, J)
            else:
                agree += coend_agrees(coend_of(H, J), H, J)
    report(capsys, 8, "oracle", agree == total, time.perf_counter() - t, None,
           f"{agree}/{total} ends and coends agree with brute force")
