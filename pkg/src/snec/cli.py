"""Batch CLI: dataset generation, loading/certificate scans, a_p pipelines,
murmuration series, the ML commands, and SVG plot emission.

Every artifact starts with a parseable metadata header (version, seed, config
echo); identical configs over identical inputs rewrite identical bytes, except
for the elapsed-time field in scan reports.

Exit codes: 0 ok, 2 usage, 3 data/domain error, 4 resource guard, 5 internal
consistency panic.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__, _kernels
from . import elliptic as ec
from . import kronecker as kr
from . import loadings as ld
from . import mlkit as ml
from . import murmurations as mu
from . import svg
from .errors import (
    ConsistencyError,
    DataFormatError,
    DomainError,
    NumericalError,
    ResourceGuardError,
)
from .partitions import enumerate_partitions, to_text

KERNEL_BUDGET = 1_000_000_000


# ---------------------------------------------------------------------------
# Metadata headers
# ---------------------------------------------------------------------------

def meta_line(args, **extra) -> str:
    kv = {"version": __version__, "seed": args.seed, "config": _config_echo(args)}
    kv.update(extra)
    return "# " + " ".join(f"{k}={v}" for k, v in kv.items())


def _config_echo(args) -> str:
    skip = {"func", "out", "cache_dir"}
    toks = [args.command]
    for key, val in sorted(vars(args).items()):
        if key in skip or key == "command" or val in (None, False):
            continue
        toks.append(f"{key}:{val}")
    return ",".join(toks)


def parse_meta_header(line: str) -> dict:
    if not line.startswith("# "):
        raise DataFormatError("missing metadata header", line=1)
    out = {}
    for tok in line[2:].split():
        if "=" not in tok:
            raise DataFormatError(f"bad metadata token {tok!r}", line=1)
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def read_meta(path) -> dict:
    with open(path) as fh:
        return parse_meta_header(fh.readline().rstrip("\n"))


def _json_meta(args, **extra) -> dict:
    kv = {"version": __version__, "seed": args.seed, "config": _config_echo(args)}
    kv.update(extra)
    return kv


def _outpath(args, name: str) -> str:
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _guard(args, estimate: int, label: str) -> None:
    if estimate <= KERNEL_BUDGET or args.force:
        return
    eta = estimate / 2e9  # crude multiply-add throughput guess per core pool
    eta_text = f"{eta:.0f} s" if eta < 120 else f"{eta / 60:.0f} min"
    raise ResourceGuardError(
        f"{label}: estimated {estimate:,} kernel evaluations exceeds the "
        f"{KERNEL_BUDGET:,} budget (very rough ETA {eta_text}); rerun with --force"
    )


def _chartab(args, n: int) -> kr.CharacterTable:
    cache = None if args.no_cache else args.cache_dir
    return kr.cached_character_table(n, cache_dir=cache)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_partitions_gen(args) -> int:
    table = enumerate_partitions(args.n)
    path = _outpath(args, f"partitions_n{args.n}.csv")
    with open(path, "w", newline="") as fh:
        fh.write(meta_line(args, n=args.n, count=len(table)) + "\n")
        writer = csv.writer(fh)
        writer.writerow(["index", "partition"])
        for i in range(len(table)):
            writer.writerow([i, to_text(table.rows[i])])
    print(f"wrote {path} ({len(table)} partitions)")
    return 0


def cmd_kron_table(args) -> int:
    cache = args.cache_dir
    os.makedirs(cache, exist_ok=True)
    ctab = kr.cached_character_table(args.n, cache_dir=cache)
    path = os.path.join(cache, f"chartab_{args.n}.txt")
    print(f"character table n={args.n}: p(n)={len(ctab.table)} cached at {path}")
    return 0


def cmd_kron_batch(args) -> int:
    n = args.n
    if args.all == (args.sample is not None):
        raise DomainError("choose exactly one of --all or --sample COUNT")
    p = len(enumerate_partitions(n))
    _guard(args, p**3, f"kron batch --n {n}")
    ctab = _chartab(args, n)
    gtab = kr.pair_g_table(ctab)
    if args.all:
        path = _outpath(args, f"triples_n{n}_all.csv")
        count = kr.write_triples_csv(
            path, ctab.table, kr.iter_all_triples(ctab, gtab), n, "all"
        )
    else:
        zero_idx, nonzero_idx = kr.sample_balanced(ctab, args.sample, args.seed, gtab)
        path = _outpath(args, f"triples_n{n}_sampled{args.sample}_seed{args.seed}.csv")

        def records():
            for flat in zero_idx:
                i, rem = divmod(int(flat), p * p)
                j, k = divmod(rem, p)
                yield kr.TripleRecord(i, j, k, 0)
            for flat in nonzero_idx:
                i, rem = divmod(int(flat), p * p)
                j, k = divmod(rem, p)
                a, b = (i, j) if i <= j else (j, i)
                yield kr.TripleRecord(i, j, k, int(gtab[kr.pair_index(a, b, p), k]))

        count = kr.write_triples_csv(path, ctab.table, records(), n, "sampled", args.seed)
    print(f"wrote {path} ({count} records)")
    return 0


def cmd_loadings(args) -> int:
    table = enumerate_partitions(args.n)
    kinds = ["a", "b"] if args.kind is None else [args.kind]
    vecs = {k: ld.loadings(table, k) for k in kinds}
    path = _outpath(args, f"loadings_n{args.n}.csv")
    with open(path, "w", newline="") as fh:
        fh.write(meta_line(args, n=args.n, kinds="".join(kinds)) + "\n")
        writer = csv.writer(fh)
        writer.writerow(["partition"] + [f"{k}_loading" for k in kinds])
        for i in range(len(table)):
            row = [to_text(table.rows[i])] + [f"{vecs[k].values[i]:.2f}" for k in kinds]
            writer.writerow(row)
    print(f"wrote {path}")
    return 0


def _scan_report(args, n: int, label: str) -> int:
    table = enumerate_partitions(n)
    p = len(table)
    if label == "fraction":
        _guard(args, p**4 // 6, f"fraction --n {n}")
    else:
        _guard(args, (p + 2) * (p + 1) * p // 6, f"bstar --n {n}")
    t0 = time.time()
    ctab = _chartab(args, n)
    La = ld.loadings(table, "a")
    Lb = ld.loadings(table, "b")
    scan = ld.scan_triples_exhaustive(ctab, La, Lb, nbins=args.hist_bins)
    elapsed = time.time() - t0
    argmin_parts = (
        [to_text(table.rows[i]) for i in scan.argmin] if scan.argmin is not None else None
    )
    report = {
        "meta": _json_meta(args, n=n),
        "n": n,
        "b_star": scan.b_star if math.isfinite(scan.b_star) else "inf",
        "vacuous": scan.vacuous,
        "argmin_triple": argmin_parts,
        "total": scan.total,
        "below": scan.below,
        "boundary_ties": int(
            _kernels.count_below(Lb.values, np.nextafter(scan.b_star, math.inf) + 1e-9)
            - scan.below
        )
        if not scan.vacuous
        else 0,
        "fraction": scan.fraction,
        "elapsed_seconds": round(elapsed, 3),
    }
    jpath = _outpath(args, f"{label}_n{n}.json")
    with open(jpath, "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")
    for kind, hist in (("a", scan.hist_a), ("b", scan.hist_b)):
        hpath = _outpath(args, f"hist_{kind}_n{n}.csv")
        with open(hpath, "w") as fh:
            fh.write(meta_line(args, n=n, kind=kind, bins=args.hist_bins) + "\n")
            fh.write("bin_left,bin_right,count_nonzero_g,count_zero_g\n")
            for i in range(args.hist_bins):
                fh.write(
                    f"{scan.hist_edges[i]:.4f},{scan.hist_edges[i + 1]:.4f},"
                    f"{hist[1, i]},{hist[0, i]}\n"
                )
        svg.histogram_plot(
            hpath.replace(".csv", ".svg"),
            scan.hist_edges,
            [hist[1], hist[0]],
            ["g nonzero", "g zero"],
            f"{kind}-loading of triples, n={n}",
            f"{kind}(t)",
        )
    print(
        f"n={n}: b*={report['b_star']} below={scan.below}/{scan.total} "
        f"fraction={scan.fraction:.4f} -> {jpath}"
    )
    return 0


def cmd_bstar(args) -> int:
    return _scan_report(args, args.n, "bstar")


def cmd_fraction(args) -> int:
    return _scan_report(args, args.n, "fraction")


def _load_curves(args, need_ap: int | None = None):
    kwargs = {}
    if getattr(args, "range", None):
        kwargs["conductor_range"] = _parse_range(args.range)
    if getattr(args, "ranks", None):
        kwargs["ranks"] = {int(tok) for tok in args.ranks.split(",")}
    curves = ec.ingest_curves(args.curves, seed=args.seed, **kwargs)
    if not curves:
        raise DomainError(f"no curves selected from {args.curves}")
    if need_ap is not None:
        curves, _ = ec.ap_matrix(curves, need_ap)
    return curves


def _parse_range(text: str) -> tuple[int, int]:
    try:
        n1, n2 = (int(tok) for tok in text.split(":"))
    except ValueError:
        raise DomainError(f"bad range {text!r}; expected N1:N2") from None
    return n1, n2


def cmd_ec_ap(args) -> int:
    from .primes import first_primes

    curves = _load_curves(args, need_ap=args.k)
    path = _outpath(args, f"apmatrix_k{args.k}.csv")
    primes = first_primes(args.k)
    with open(path, "w", newline="") as fh:
        fh.write(meta_line(args, k=args.k, curves=len(curves)) + "\n")
        writer = csv.writer(fh)
        writer.writerow(["label", "conductor", "rank"] + [f"ap_{p}" for p in primes])
        for c in curves:
            writer.writerow([c.label, c.conductor, c.rank] + [int(v) for v in c.ap])
    # refresh the per-curve caches as a side effect
    if not args.no_cache:
        cache = os.path.join(args.cache_dir, "ap")
        for c in curves:
            ec._write_ap_cache(cache, c.label, args.k, primes, c.ap)
    print(f"wrote {path} ({len(curves)} curves x {args.k} primes)")
    return 0


def _class_color(name: str) -> str:
    """Rank classes keep the usual figure colors regardless of column order."""
    fixed = {"rank0": svg.PALETTE[0], "rank1": svg.PALETTE[1], "rank2": svg.PALETTE[2],
             "even": svg.PALETTE[0], "odd": svg.PALETTE[1]}
    if name in fixed:
        return fixed[name]
    if name.startswith("rank") and name[4:].isdigit():
        return svg.PALETTE[int(name[4:]) % len(svg.PALETTE)]
    return svg.PALETTE[-1]


def cmd_murmur(args) -> int:
    curves = _load_curves(args, need_ap=args.k)
    if args.dyadic is not None:
        series = mu.dyadic_murmuration(
            curves,
            parity=args.parity or "even",
            exponent=args.dyadic,
            k=args.k,
            x_axis="prime_over_N" if args.normalize else "prime",
        )
        stem = f"murmur_dyadic{args.dyadic}_{series.class_names[0]}"
    else:
        ranks = {int(tok) for tok in (args.ranks or "0,1").split(",")}
        n1, n2 = _parse_range(args.range) if args.range else (1, 10**9)
        series = mu.murmuration(curves, ranks, (n1, n2), args.k)
        stem = f"murmur_r{'-'.join(sorted(args.ranks.split(','))) if args.ranks else '0-1'}"
    mu.assert_hasse_envelope(series)
    path = _outpath(args, stem + ".csv")
    mu.write_series_csv(path, series, {"version": __version__, "seed": args.seed,
                                       "config": _config_echo(args), "k": args.k})
    values = mu.moving_average(series.values, args.smooth) if args.smooth > 1 else series.values
    svg.series_plot(
        _outpath(args, stem + ".svg"),
        series.x.tolist(),
        [v.tolist() for v in values],
        series.class_names,
        f"murmuration, conductor {series.conductor_range[0]}..{series.conductor_range[1]}",
        "p / 2^e" if (args.dyadic is not None and args.normalize) else "p_n",
        "mean a_p",
        colors=[_class_color(name) for name in series.class_names],
    )
    print(f"wrote {path} (+.svg), populations {series.populations}")
    return 0


# ---------------------------------------------------------------------------
# ML data loading: a_p matrices or triple datasets, sniffed by header
# ---------------------------------------------------------------------------

def load_feature_file(path):
    """Returns (X, y, label_names). Accepts apmatrix CSV or triple dataset CSV."""
    with open(path) as fh:
        first = fh.readline().rstrip("\n")
        second = fh.readline().rstrip("\n")
    if not first.startswith("#"):
        raise DataFormatError("missing metadata header line", line=1)
    meta = parse_meta_header(first)
    if second.startswith("lambda;"):
        n = int(meta["n"])
        X, y = _load_triple_dataset(path, n)
        return X, y, ["g=0", "g!=0"]
    if second.startswith("label,conductor,rank"):
        return _load_apmatrix(path)
    raise DataFormatError(f"unrecognized data header {second!r}", line=2)


def _load_triple_dataset(path, n):
    from .partitions import from_text

    feats, labels = [], []
    with open(path) as fh:
        fh.readline()
        fh.readline()
        for line in fh:
            line = line.strip()
            if not line:
                continue
            lam, muu, nuu, g = line.split(";")
            feats.append(from_text(lam, n) + from_text(muu, n) + from_text(nuu, n))
            labels.append(0 if int(g) == 0 else 1)
    return np.array(feats, dtype=np.float64), np.array(labels, dtype=np.int64)


def _load_apmatrix(path):
    rows, ranks = [], []
    with open(path) as fh:
        fh.readline()
        fh.readline()
        for line in fh:
            toks = line.rstrip("\n").split(",")
            if len(toks) < 4:
                continue
            ranks.append(int(toks[2]))
            rows.append([int(v) for v in toks[3:]])
    classes = sorted(set(ranks))
    remap = {r: i for i, r in enumerate(classes)}
    y = np.array([remap[r] for r in ranks], dtype=np.int64)
    return np.array(rows, dtype=np.float64), y, [f"rank{r}" for r in classes]


def cmd_ml_pca(args) -> int:
    X, y, names = load_feature_file(args.data)
    model = ml.pca_fit(X, args.components, centered=args.centered)
    proj = ml.pca_project(model, X)
    path = _outpath(args, "pca_projections.csv")
    with open(path, "w", newline="") as fh:
        fh.write(
            meta_line(
                args,
                components=args.components,
                centered=args.centered,
                eigenvalues="|".join(f"{v:.6g}" for v in model.eigenvalues),
                degenerate=model.degenerate,
            )
            + "\n"
        )
        writer = csv.writer(fh)
        writer.writerow(["row", "label"] + [f"pc{m + 1}" for m in range(args.components)])
        for i in range(len(proj)):
            writer.writerow([i, int(y[i])] + [f"{proj[i, m]:.6f}" for m in range(args.components)])
    if args.components >= 2:
        groups, gnames = [], []
        for lab in np.unique(y):
            mask = y == lab
            groups.append((proj[mask, 0].tolist(), proj[mask, 1].tolist()))
            gnames.append(names[lab] if names else str(lab))
        svg.scatter_xy(
            _outpath(args, "pca_pc1_pc2.svg"), groups, gnames,
            "PC1 vs PC2", "PC1", "PC2",
        )
    print(f"wrote {path}; top eigenvalues {model.eigenvalues[:3]}")
    return 0


def cmd_ml_logreg(args) -> int:
    X, y, names = load_feature_file(args.data)
    n_classes = int(y.max()) + 1
    tr, te = ml.train_test_split(len(X), args.split, args.seed)
    model = ml.logreg_train(
        X[tr], y[tr], n_classes, lr=args.lr, epochs=args.epochs, l2=args.l2, seed=args.seed
    )
    pred = model.predict(X[te])
    metrics = ml.evaluate(pred, y[te])
    report = {
        "meta": _json_meta(args),
        "accuracy": metrics["accuracy"],
        "per_class_precision": metrics["per_class_precision"],
        "confusion": metrics["confusion_matrix"],
        "n_train": int(len(tr)),
        "n_test": int(len(te)),
        "seed": args.seed,
        "classes": names,
        "converged": model.converged,
    }
    jpath = _outpath(args, "logreg_metrics.json")
    with open(jpath, "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")
    model.save(_outpath(args, "logreg_model.json"))
    print(f"test accuracy {metrics['accuracy']:.4f} -> {jpath}")
    return 0


def cmd_ml_knn(args) -> int:
    X, y, names = load_feature_file(args.data)
    tr, te = ml.train_test_split(len(X), args.split, args.seed)
    pred = ml.knn_classify(X[tr], y[tr], X[te], args.k_neighbors)
    metrics = ml.evaluate(pred, y[te])
    report = {
        "meta": _json_meta(args),
        "accuracy": metrics["accuracy"],
        "per_class_precision": metrics["per_class_precision"],
        "confusion": metrics["confusion_matrix"],
        "n_train": int(len(tr)),
        "n_test": int(len(te)),
        "seed": args.seed,
        "classes": names,
        "k_neighbors": args.k_neighbors,
    }
    jpath = _outpath(args, "knn_metrics.json")
    with open(jpath, "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")
    print(f"test accuracy {metrics['accuracy']:.4f} -> {jpath}")
    return 0


def cmd_plot(args) -> int:
    with open(args.series) as fh:
        first = fh.readline().rstrip("\n")
        header = fh.readline().rstrip("\n")
        rows = [ln.rstrip("\n").split(",") for ln in fh if ln.strip()]
    parse_meta_header(first)
    cols = header.split(",")
    if cols[:2] == ["n", "p"]:
        xs = [float(r[1]) for r in rows]
        names = [c[len("value_"):] for c in cols[2:]]
        series = [[float(r[2 + i]) for r in rows] for i in range(len(names))]
        svg.series_plot(args.outfile, xs, series, names, os.path.basename(args.series),
                        "p_n", "mean a_p")
    elif cols[:2] == ["bin_left", "bin_right"]:
        edges = [float(r[0]) for r in rows] + [float(rows[-1][1])]
        counts = [[int(r[2]) for r in rows], [int(r[3]) for r in rows]]
        svg.histogram_plot(args.outfile, edges, counts, ["g nonzero", "g zero"],
                           os.path.basename(args.series), "loading")
    else:
        raise DataFormatError(f"unrecognized series header {header!r}", line=2)
    print(f"wrote {args.outfile}")
    return 0


# ---------------------------------------------------------------------------
# Parser wiring
# ---------------------------------------------------------------------------

def _common(parser) -> None:
    # the same flags parse before or after the subcommand; SUPPRESS keeps a
    # trailing occurrence from clobbering an already-parsed leading one
    parser.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed override (echoed in metadata)")
    parser.add_argument("--force", action="store_true", default=argparse.SUPPRESS,
                        help="override the resource guard")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="snec", description=__doc__)
    ap.add_argument("--cache-dir", default="cache", help="cache directory (tables, a_p)")
    ap.add_argument("--no-cache", action="store_true", help="recompute instead of reading caches")
    ap.add_argument("--out", default=".", help="output directory for artifacts")
    ap.add_argument("--seed", type=int, default=0, help="global seed, echoed in metadata")
    ap.add_argument("--threads", type=int, default=0, help="thread budget for kernels (0 = all)")
    ap.add_argument("--force", action="store_true", help="override the resource guard")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partitions", help="partition tables")
    psub = p.add_subparsers(dest="sub", required=True)
    g = psub.add_parser("gen", help="write the partition list for n")
    g.add_argument("--n", type=int, required=True)
    _common(g)
    g.set_defaults(func=cmd_partitions_gen)

    k = sub.add_parser("kron", help="character tables and Kronecker datasets")
    ksub = k.add_subparsers(dest="sub", required=True)
    kt = ksub.add_parser("table", help="build and cache the character table")
    kt.add_argument("--n", type=int, required=True)
    _common(kt)
    kt.set_defaults(func=cmd_kron_table)
    kb = ksub.add_parser("batch", help="emit the triple dataset")
    kb.add_argument("--n", type=int, required=True)
    kb.add_argument("--all", action="store_true", help="all p(n)^3 ordered triples")
    kb.add_argument("--sample", type=int, help="balanced sample size per class")
    _common(kb)
    kb.set_defaults(func=cmd_kron_batch)

    lo = sub.add_parser("loadings", help="a/b loadings CSV")
    lo.add_argument("--n", type=int, required=True)
    lo.add_argument("--kind", choices=["a", "b"])
    _common(lo)
    lo.set_defaults(func=cmd_loadings)

    bs = sub.add_parser("bstar", help="b* certificate scan")
    bs.add_argument("--n", type=int, required=True)
    bs.add_argument("--hist-bins", type=int, default=60)
    _common(bs)
    bs.set_defaults(func=cmd_bstar)

    fr = sub.add_parser("fraction", help="certified fraction over all triples")
    fr.add_argument("--n", type=int, required=True)
    fr.add_argument("--hist-bins", type=int, default=60)
    _common(fr)
    fr.set_defaults(func=cmd_fraction)

    e = sub.add_parser("ec", help="elliptic curve a_p pipelines")
    esub = e.add_subparsers(dest="sub", required=True)
    ea = esub.add_parser("ap", help="compute the a_p matrix for a curve file")
    ea.add_argument("--curves", required=True)
    ea.add_argument("--k", type=int, default=300)
    ea.add_argument("--range", help="conductor filter N1:N2")
    ea.add_argument("--ranks", help="rank filter, comma separated")
    _common(ea)
    ea.set_defaults(func=cmd_ec_ap)

    mur = sub.add_parser("murmur", help="murmuration series and plots")
    mur.add_argument("--curves", required=True)
    mur.add_argument("--ranks", help="rank classes, e.g. 0,1")
    mur.add_argument("--range", help="conductor window N1:N2")
    mur.add_argument("--k", type=int, default=1000)
    mur.add_argument("--dyadic", type=int, help="use conductor window [2^E, 2^{E+1})")
    mur.add_argument("--parity", choices=["even", "odd"])
    mur.add_argument("--normalize", action="store_true", help="x axis p / 2^E in dyadic mode")
    mur.add_argument("--smooth", type=int, default=0, help="moving-average window for the plot only")
    _common(mur)
    mur.set_defaults(func=cmd_murmur)

    m = sub.add_parser("ml", help="PCA / logistic regression / kNN")
    msub = m.add_subparsers(dest="sub", required=True)
    mp = msub.add_parser("pca")
    mp.add_argument("--data", required=True)
    mp.add_argument("--components", type=int, default=2)
    mp.add_argument("--centered", action="store_true")
    _common(mp)
    mp.set_defaults(func=cmd_ml_pca)
    mr = msub.add_parser("logreg")
    mr.add_argument("--data", required=True)
    mr.add_argument("--split", type=float, default=0.8)
    mr.add_argument("--lr", type=float, default=0.5)
    mr.add_argument("--epochs", type=int, default=300)
    mr.add_argument("--l2", type=float, default=0.0)
    _common(mr)
    mr.set_defaults(func=cmd_ml_logreg)
    mk = msub.add_parser("knn")
    mk.add_argument("--data", required=True)
    mk.add_argument("--split", type=float, default=0.8)
    mk.add_argument("--k-neighbors", type=int, default=1)
    _common(mk)
    mk.set_defaults(func=cmd_ml_knn)

    pl = sub.add_parser("plot", help="render a series or histogram CSV to SVG")
    pl.add_argument("--series", required=True)
    pl.add_argument("--out", dest="outfile", required=True)
    _common(pl)
    pl.set_defaults(func=cmd_plot)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads:
        _kernels.set_thread_budget(args.threads)
    try:
        return args.func(args)
    except (DataFormatError, DomainError, NumericalError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ResourceGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 4
    except ConsistencyError as exc:
        print(f"internal consistency panic: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
