"""End-to-end acceptance checks; each prints one PASS/FAIL line."""
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from qualprod.bipartite import build_graph, find_tstar, is_caterpillar_forest, is_forest
from qualprod.blockcirc import p0_criterion
from qualprod.classify import (
    ANGLE_TOLERANCE,
    STATEMENTS,
    ZERO_MAGNITUDE,
    KelloggRegion,
    Level,
    Verdict,
    classify,
    kellogg_margin,
    nonzero_eigenvalues,
)
from qualprod.exact import ExactMatrix, ExactPolynomial, char_poly, exact_rank, is_p0, is_ps, sturm_real_roots
from qualprod.sampling import GeneratorConfig, random_caterpillar, random_closed_walk, random_forest, random_pattern
from qualprod.scaling import CycleObstruction, DiagonalPair, factor
from qualprod.signpat import SignPattern, sample, sample_product
from qualprod.walks import caterpillar_ivt_check, closed_subwalk_lengths, is_2k_repeating_graph, make_walk
from qualprod.witness import TSTAR_FACTORS, TSTAR_PATTERN, strictify, witness_for

from . import oracles

SHAPES = [(n, m) for n in (1, 2, 3) for m in (1, 2, 3)]


def all_patterns(values=(-1, 0, 1)):
    for n, m in SHAPES:
        for entries in product(values, repeat=n * m):
            yield SignPattern(n, m, entries)


@pytest.fixture
def report(capsys):
    def _report(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[criterion {number:>2}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return _report


def test_01_tstar_product_spectrum(report):
    start = time.perf_counter()
    rows = [[Fraction(x) for x in r] for r in TSTAR_FACTORS[0]]
    for i, f in enumerate(TSTAR_FACTORS[1:], start=1):
        f = [[Fraction(x) for x in r] for r in f]
        rows = oracles.matmul(rows, oracles.transpose(f) if i % 2 else f)
    expected = ExactPolynomial.from_descending([1, -4, 3, -1, 0])
    lib = char_poly(ExactMatrix.from_rows(rows))
    brute = ExactPolynomial(tuple(oracles.char_poly_interpolated(rows)))
    real = sturm_real_roots(ExactPolynomial.from_descending([1, -4, 3, -1]))
    elapsed = time.perf_counter() - start
    ok = lib == expected == brute and real == 1 and elapsed < 1
    report(1, ok, f"char poly {lib}, cubic has {real} real root, {elapsed:.3f}s")


def test_02_decision_table(report):
    start = time.perf_counter()
    H, F = Verdict.HOLDS, Verdict.FAILS
    cases = [
        (SignPattern.identity(3), Level.CATERPILLAR, {s: H for s in STATEMENTS}),
        (SignPattern.from_rows([[1, -1], [1, 1]]), Level.TWO_ODD, {"P0_2": H, "P0_4": F, "PS_2": F}),
        (SignPattern.ones(2, 2), Level.NONE, {s: F for s in STATEMENTS}),
        (SignPattern.from_rows(TSTAR_PATTERN), Level.FOREST, {"P0_4": H, "PS_2": H, "P0_6": F, "PS_4": F}),
    ]
    bad = []
    for p, level, expect in cases:
        r = classify(p)
        if r.level != level or any(r.conclusions[s] != v for s, v in expect.items()):
            bad.append(p.to_rows())
    elapsed = time.perf_counter() - start
    report(2, not bad and elapsed < 1, f"{len(cases) - len(bad)}/{len(cases)} rows match in {elapsed:.3f}s")


def test_03_exhaustive_cross_validation(report):
    start = time.perf_counter()
    count = disagreements = 0
    for p in all_patterns():
        r = classify(p)
        count += 1
        for k in (1, 2, 3):
            if p0_criterion(p, k).holds != (r.conclusions[f"P0_{2 * k}"] == Verdict.HOLDS):
                disagreements += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 600
    report(3, ok, f"{count} patterns, {disagreements} disagreements, {elapsed:.1f}s")


@pytest.mark.slow
def test_04_witness_soundness(report):
    start = time.perf_counter()
    issued = failures = 0
    for p in all_patterns():
        r = classify(p)
        for s in STATEMENTS:
            if r.conclusions[s] != Verdict.FAILS:
                continue
            issued += 1
            cert = witness_for(p, s)
            strict = strictify(cert)
            if not (cert.recheck() and strict.recheck() and strict.is_strict):
                failures += 1
    elapsed = time.perf_counter() - start
    report(4, failures == 0, f"{issued} certificates, {failures} failed recheck or strictify, {elapsed:.1f}s")


def test_05_caterpillar_products(report):
    start = time.perf_counter()
    config = GeneratorConfig(seed=5, max_size=6)
    rng = config.rng()
    failures = total = 0
    for _ in range(50):
        _, p = random_caterpillar(config, rng)
        for k in (1, 2, 3):
            for _ in range(100):
                m = sample_product(p, 2 * k, rng).product
                total += 1
                if not (is_p0(m) and is_ps(m)):
                    failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 600
    report(5, ok, f"{total} products, {failures} not P0 and PS, {elapsed:.1f}s")


def test_06_caterpillar_walks(report):
    config = GeneratorConfig(seed=6, max_size=6)
    rng = config.rng()
    checked = failures = 0
    while checked < 1000:
        g, _ = random_caterpillar(config, rng)
        if not g.edges:
            continue
        w = random_closed_walk(g, rng.choice(range(2, 21, 2)), rng)
        checked += 1
        failures += not caterpillar_ivt_check(g, w)
    g = build_graph(SignPattern.from_rows(TSTAR_PATTERN))
    walk = make_walk(g, find_tstar(g).walk())
    control = walk.length == 12 and 6 not in closed_subwalk_lengths(walk)
    report(6, failures == 0 and control, f"{checked} walks, {failures} failures; T* 12-walk lacks a 6-subwalk: {control}")


def test_07_repeating_equivalences(report):
    graphs = disagreements = 0
    for p in all_patterns((0, 1)):
        g = build_graph(p)
        graphs += 1
        forest, cat = is_forest(g), bool(is_caterpillar_forest(g))
        for k, expected in ((1, forest), (2, forest), (3, cat)):
            disagreements += is_2k_repeating_graph(g, k).holds != expected
    report(7, disagreements == 0, f"{graphs} graphs, {disagreements} disagreements")


def test_08_scaling_round_trip(report):
    config = GeneratorConfig(seed=8, max_size=6, zero_density=0.2)
    rng = config.rng()
    exact = 0
    for _ in range(500):
        _, p = random_forest(config, rng)
        a = sample(p, rng).matrix
        d0 = tuple(Fraction(rng.randint(1, 99), rng.randint(1, 99)) for _ in range(p.rows))
        e0 = tuple(Fraction(rng.randint(1, 99), rng.randint(1, 99)) for _ in range(p.cols))
        b = DiagonalPair(d0, e0).apply(a)
        f = factor(a, b)
        exact += isinstance(f, DiagonalPair) and f.apply(a) == b
    ob = factor(ExactMatrix.from_rows([[1, 1], [1, 1]]), ExactMatrix.from_rows([[1, 1], [1, 2]]))
    obstructed = isinstance(ob, CycleObstruction) and ob.lhs != ob.rhs
    report(8, exact == 500 and obstructed, f"{exact}/500 exact round trips; all-ones obstruction: {obstructed}")


def test_09_rank_lemma(report):
    config = GeneratorConfig(seed=9, min_size=2, max_size=4, zero_density=0.35)
    rng = config.rng()
    patterns = exceptions = 0
    while patterns < 50:
        p = random_pattern(config, rng)
        if not classify(p).two_odd:
            continue
        patterns += 1
        for k in (1, 2):
            for _ in range(20):
                prod = sample_product(p, 2 * k, rng)
                exceptions += exact_rank(prod.product) != exact_rank(prod.factors[0].matrix)
    report(9, exceptions == 0, f"{patterns} 2-odd patterns, {exceptions} rank mismatches")


def test_10_kellogg_exclusion(report):
    config = GeneratorConfig(seed=10, min_size=2, max_size=4, zero_density=0.3)
    rng = config.rng()
    spectra = interior = boundary = 0
    while spectra < 1000:
        p = random_pattern(config, rng)
        m = sample_product(p, 2 * rng.randint(1, 3), rng).product
        if not is_p0(m):
            continue
        spectra += 1
        region = KelloggRegion(m.rows)
        for lam in nonzero_eigenvalues(m):
            if abs(lam) < ZERO_MAGNITUDE:
                continue
            margin = kellogg_margin(complex(lam), region)
            if margin > ANGLE_TOLERANCE:
                interior += 1
            elif margin > -ANGLE_TOLERANCE:
                boundary += 1
    report(10, interior == 0, f"{spectra} spectra, {interior} interior hits, {boundary} boundary hits")
