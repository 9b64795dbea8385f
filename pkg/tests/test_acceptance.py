"""Acceptance suite: one test per shipping criterion, each printing a
PASS/FAIL line (run with `pytest -v -s tests/test_acceptance.py`).

The n = 20 full-cube reproduction is marked `heavy` (it is the --force tier
of the CLI); everything else runs in the default suite.
"""

import itertools
import json
import time

import numpy as np
import pytest

from snec.cli import main as cli_main
from snec.elliptic import ap, ap_matrix, ap_quadratic_character, read_curves
from snec.kronecker import (
    character_table,
    iter_all_triples,
    kronecker_by_index,
    pair_g_table,
    pair_index,
    permutation_character_oracle,
    sample_balanced,
    triple_features,
)
from snec.loadings import (
    b_star_from_stream,
    difference_matrix,
    loadings,
    scan_triples_exhaustive,
    similitude_matrix,
    triple_loading,
)
from snec.mlkit import (
    evaluate,
    knn_classify,
    logreg_gradient_check,
    logreg_train,
    pca_fit,
    softmax,
    train_test_split,
)
from snec.murmurations import murmuration
from snec.partitions import enumerate_partitions
from snec.primes import first_primes

from conftest import FIXTURE_CURVES, require_external_curves
from test_loadings import GOLDEN_A6, GOLDEN_B6, GOLDEN_Y6, GOLDEN_Z6

# Pinned by this project's own exhaustive n = 12 run (regression reference).
N12_B_STAR = 47.3571392915574
N12_BELOW = 101_102
N12_TOTAL = 456_533
N12_ZERO_TRIPLES = 176_524


def report(cid: str, ok: bool, detail: str) -> None:
    print(f"[acceptance {cid}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{cid}: {detail}"


def test_c01_exact_matrices_n6():
    t0 = time.time()
    table = enumerate_partitions(6)
    ok = np.array_equal(similitude_matrix(table), GOLDEN_Y6) and np.array_equal(
        difference_matrix(table), GOLDEN_Z6
    )
    elapsed = time.time() - t0
    report("C1", ok and elapsed < 1.0, f"Y6/Z6 entrywise exact in {elapsed:.3f}s")


def test_c02_loadings_golden_n6():
    t0 = time.time()
    table = enumerate_partitions(6)
    a_err = np.abs(loadings(table, "a").values - GOLDEN_A6).max()
    b_err = np.abs(loadings(table, "b").values - GOLDEN_B6).max()
    elapsed = time.time() - t0
    report(
        "C2",
        a_err <= 0.01 and b_err <= 0.01 and elapsed < 1.0,
        f"max errors a={a_err:.4f} b={b_err:.4f} in {elapsed:.3f}s",
    )


def test_c03_kronecker_correctness():
    t0 = time.time()
    # (i) Murnaghan-Nakayama equals the permutation-character oracle, n <= 8
    for n in range(1, 9):
        assert permutation_character_oracle(n).chi == character_table(n).chi
    # (ii) dimension sum rule, exhaustive for n <= 8, using the batch kernel
    for n in range(2, 9):
        ctab = character_table(n)
        G = pair_g_table(ctab)
        dims = np.array(ctab.dimensions, dtype=np.int64)
        p = len(ctab.table)
        for i in range(p):
            for j in range(i, p):
                assert int(G[pair_index(i, j, p)] @ dims) == dims[i] * dims[j]
    # (iii) symmetry of g on 10^4 random triples at n = 12, exact arithmetic
    ctab12 = character_table(12)
    p12 = len(ctab12.table)
    rng = np.random.default_rng(0)
    violations = 0
    for _ in range(10_000):
        i, j, k = (int(v) for v in rng.integers(0, p12, 3))
        vals = {
            kronecker_by_index(a, b, c, ctab12)
            for a, b, c in itertools.permutations((i, j, k))
        }
        if len(vals) != 1:
            violations += 1
    elapsed = time.time() - t0
    report(
        "C3",
        violations == 0 and elapsed < 300.0,
        f"oracle match n<=8, dim rule n<=8, 0 symmetry violations/10^4 in {elapsed:.0f}s",
    )


def test_c04_dataset_cardinality_n14(tmp_path):
    t0 = time.time()
    rc = cli_main(
        ["--out", str(tmp_path), "--cache-dir", str(tmp_path / "cache"),
         "kron", "batch", "--n", "14", "--all"]
    )
    assert rc == 0
    path = tmp_path / "triples_n14_all.csv"
    with open(path) as fh:
        assert fh.readline() == "# n=14 mode=all seed=-\n"
        assert fh.readline() == "lambda;mu;nu;g\n"
        count = sum(1 for _ in fh)
    elapsed = time.time() - t0
    report(
        "C4",
        count == 2_460_375 and elapsed < 1800.0,
        f"{count} records in {elapsed:.0f}s (target 2,460,375 under 30 min)",
    )


def vals_to_loading(vals, n):
    from snec.loadings import LoadingVector

    return LoadingVector(n=n, kind="b", values=vals, eigenvalue=0.0)


def test_c05_b_star_n18(tmp_path):
    rc = cli_main(
        ["--out", str(tmp_path), "--cache-dir", str(tmp_path / "cache"), "bstar", "--n", "18"]
    )
    assert rc == 0
    rep = json.loads((tmp_path / "bstar_n18.json").read_text())
    b_star = float(rep["b_star"])
    t18 = enumerate_partitions(18)
    trip_b = triple_loading(
        ((12, 4, 2), (8, 4, 2, 2, 1, 1), (5, 4, 3, 3, 1, 1, 1)), loadings(t18, "b"), t18
    )
    # certificate soundness, exhaustive with zero counterexamples for n <= 10
    sound = True
    for n in range(3, 11):
        ctab = character_table(n)
        vals = loadings(ctab.table, "b").values
        res = b_star_from_stream(n, iter_all_triples(ctab), vals_to_loading(vals, n))
        for rec in iter_all_triples(ctab):
            if (vals[rec.lam] + vals[rec.mu]) + vals[rec.nu] < res.b_star and rec.g == 0:
                sound = False
    report(
        "C5",
        abs(b_star - 44.18) <= 0.05 and abs(trip_b - 41.07) <= 0.05 and sound,
        f"b*(18)={b_star:.4f} (44.18+-0.05), certificate triple {trip_b:.4f} "
        f"(41.07+-0.05), soundness n<=10 clean",
    )


def test_c06_fraction_n12_regression_pin():
    ctab = character_table(12)
    scan = scan_triples_exhaustive(ctab, loadings(ctab.table, "a"), loadings(ctab.table, "b"))
    ok = (
        scan.total == N12_TOTAL
        and scan.below == N12_BELOW
        and abs(scan.b_star - N12_B_STAR) < 1e-9
        and int(scan.hist_b[0].sum()) == N12_ZERO_TRIPLES
    )
    report(
        "C6",
        ok,
        f"n=12 pin: b*={scan.b_star:.6f} below={scan.below}/{scan.total} "
        f"zero-triples={int(scan.hist_b[0].sum())}",
    )


@pytest.mark.heavy
def test_c06h_fraction_n20_full(tmp_path):
    t0 = time.time()
    rc = cli_main(
        ["--out", str(tmp_path), "--cache-dir", str(tmp_path / "cache"),
         "--force", "fraction", "--n", "20"]
    )
    assert rc == 0
    rep = json.loads((tmp_path / "fraction_n20.json").read_text())
    below, ties = rep["below"], rep["boundary_ties"]
    # the golden count 78,382,890 includes the tie family sitting exactly at
    # b* in exact arithmetic (float rounding splits it); strict < excludes it
    ok = (
        rep["total"] == 246_491_883
        and abs(rep["fraction"] - 0.318) <= 0.001
        and below <= 78_382_890 <= below + ties
    )
    report(
        "C6-heavy",
        ok,
        f"n=20: total={rep['total']} below={below} ties={ties} "
        f"fraction={rep['fraction']:.4f} in {time.time() - t0:.0f}s",
    )


def test_c07_knn_accuracy_n12():
    t0 = time.time()
    ctab = character_table(12)
    gtab = pair_g_table(ctab)
    zero_idx, nonzero_idx = sample_balanced(ctab, 126_900, seed=0, gtab=gtab)
    X = np.vstack(
        [triple_features(ctab.table, zero_idx), triple_features(ctab.table, nonzero_idx)]
    ).astype(np.float64)
    y = np.array([0] * len(zero_idx) + [1] * len(nonzero_idx))
    tr, te = train_test_split(len(X), 0.8, seed=0)
    pred = knn_classify(X[tr], y[tr], X[te], k_neighbors=3)
    acc = evaluate(pred, y[te])["accuracy"]
    elapsed = time.time() - t0
    report(
        "C7",
        abs(acc - 0.9155) <= 0.02 and elapsed < 1200.0,
        f"kNN accuracy {acc:.4f} on 126,900x2 sample (0.9155+-0.02) in {elapsed:.0f}s",
    )


def test_c08_elliptic_invariants_and_oracle():
    curves, primes = ap_matrix(read_curves(FIXTURE_CURVES), 300)
    for c in curves:
        good = c.conductor % primes != 0
        assert (c.ap[good] ** 2 <= 4 * primes[good]).all(), c.label
        assert (np.abs(c.ap[~good]) <= 1).all(), c.label
    rng = np.random.default_rng(0)
    pool = first_primes(120)
    checked = 0
    while checked < 100:
        c = curves[int(rng.integers(0, len(curves)))]
        p = int(pool[int(rng.integers(0, len(pool)))])
        if p < 5 or c.conductor % p == 0:
            continue
        assert ap(c, p) == ap_quadratic_character(c, p)
        checked += 1
    report("C8", True, "Hasse + bad-prime invariants on 12 curves x 300 primes; "
                       "100 random dual-path point counts agree")


def test_c08_logreg_on_external_dataset():
    path = require_external_curves()
    from snec.elliptic import ingest_curves

    curves = ingest_curves(
        path, conductor_range=(1, 10_000), ranks={0, 1}, balanced=True,
        max_count=32_000, seed=0,
    )
    curves, _ = ap_matrix(curves, 300)
    X = np.array([c.ap for c in curves], dtype=np.float64)
    y = np.array([c.rank for c in curves])
    tr, te = train_test_split(len(X), 0.8, seed=0)
    model = logreg_train(X[tr], y[tr], 2, lr=0.5, epochs=400, seed=0)
    acc = evaluate(model.predict(X[te]), y[te])["accuracy"]
    report("C8-ext", acc >= 0.96, f"rank 0/1 logistic accuracy {acc:.4f} (>= 0.96)")


def test_c09_mlkit_properties():
    t0 = time.time()
    grad_err = logreg_gradient_check()
    rng = np.random.default_rng(0)
    X = rng.normal(size=(500, 10)) * np.arange(1, 11)
    model = pca_fit(X, 10)
    trace_err = abs(model.eigenvalues.sum() - np.trace(model.second_moment))
    ortho_err = np.abs(model.components.T @ model.components - np.eye(10)).max()
    resid = np.linalg.norm(
        model.second_moment @ model.components - model.components * model.eigenvalues[None, :],
        axis=0,
    ).max() / np.linalg.norm(model.second_moment)
    sm_err = np.abs(softmax(rng.normal(scale=20, size=(200, 5))).sum(axis=1) - 1).max()
    elapsed = time.time() - t0
    ok = grad_err < 1e-5 and resid < 1e-9 and ortho_err < 1e-10 and trace_err < 1e-9 and sm_err < 1e-12
    report(
        "C9",
        ok and elapsed < 60.0,
        f"grad {grad_err:.2e}, resid {resid:.2e}, ortho {ortho_err:.2e}, "
        f"trace {trace_err:.2e}, softmax {sm_err:.2e} in {elapsed:.1f}s",
    )


def test_c10_murmuration_identities():
    curves, _ = ap_matrix(read_curves(FIXTURE_CURVES), 120)
    ranks = sorted({c.rank for c in curves})
    series = murmuration(curves, set(ranks), (1, 10**6), 120)
    pops = np.array(series.populations, dtype=float)
    weighted = (pops[:, None] * series.values).sum(axis=0) / pops.sum()
    whole = np.array([c.ap[:120] for c in curves], dtype=float).mean(axis=0)
    decomp_err = np.abs(weighted - whole).max()
    rerun = murmuration(curves, set(ranks), (1, 10**6), 120)
    deterministic = np.array_equal(series.values, rerun.values)
    report(
        "C10",
        decomp_err < 1e-12 and deterministic,
        f"mean-decomposition error {decomp_err:.2e}, reruns bit-identical",
    )


def test_c10_oscillation_on_external_dataset():
    path = require_external_curves()
    from snec.elliptic import ingest_curves

    curves = ingest_curves(path, conductor_range=(7500, 10_000), ranks={0, 1})
    curves, _ = ap_matrix(curves, 1000)
    series = murmuration(curves, {0, 1}, (7500, 10_000), 1000)
    diff = series.values[0] - series.values[1]
    crossings = int((np.sign(diff[:-1]) * np.sign(diff[1:]) < 0).sum())
    report("C10-ext", crossings >= 3, f"f_0 - f_1 sign crossings: {crossings} (>= 3)")
