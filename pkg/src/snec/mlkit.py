"""Small ML kit: PCA on the raw second-moment matrix, multinomial logistic
regression, k-nearest-neighbor classification, and evaluation counts.

PCA is uncentered by default: it eigendecomposes (1/N) sum_i x_i (x_i)^T with
no mean subtraction, which is the convention the murmuration PC plots use;
pass centered=True for the textbook variant.  The eigensolver is subspace
iteration with a Jacobi Rayleigh-Ritz polish, all plain numpy.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericalError


# ---------------------------------------------------------------------------
# PCA
# ---------------------------------------------------------------------------

def _jacobi_eigh(S: np.ndarray, sweeps: int = 50):
    """Eigen-decomposition of a small symmetric matrix by cyclic Jacobi."""
    m = S.shape[0]
    A = S.copy()
    V = np.eye(m)
    for _ in range(sweeps):
        off = np.sqrt((A**2).sum() - (np.diag(A) ** 2).sum())
        if off < 1e-15 * max(1.0, np.abs(np.diag(A)).max()):
            break
        for p in range(m - 1):
            for q in range(p + 1, m):
                if A[p, q] == 0.0:
                    continue
                theta = 0.5 * np.arctan2(2.0 * A[p, q], A[q, q] - A[p, p])
                c, s = np.cos(theta), np.sin(theta)
                rot = np.eye(m)
                rot[p, p] = c
                rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                A = rot.T @ A @ rot
                V = V @ rot
    vals = np.diag(A).copy()
    order = np.argsort(vals)[::-1]
    return vals[order], V[:, order]


def _orthonormalize(W: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt (two passes) with deterministic re-seeding of
    columns that collapse into the span of their predecessors."""
    W = W.copy()
    d, m = W.shape

    def sweep(j):
        for _ in range(2):
            for i in range(j):
                W[:, j] -= (W[:, i] @ W[:, j]) * W[:, i]
        return np.linalg.norm(W[:, j])

    for j in range(m):
        ref = np.linalg.norm(W[:, j])
        norm = sweep(j)
        if norm <= 1e-12 * max(ref, 1.0):
            for shift in range(d):
                W[:, j] = 0.0
                W[(j + shift) % d, j] = 1.0
                norm = sweep(j)
                if norm > 1e-12:
                    break
        W[:, j] /= norm
    return W


@dataclass
class PcaModel:
    second_moment: np.ndarray  # (d, d)
    eigenvalues: np.ndarray  # descending
    components: np.ndarray  # (d, m), orthonormal columns, sign-canonicalized
    centered: bool
    mean: np.ndarray
    degenerate: bool = False


def pca_fit(X: np.ndarray, n_components: int, centered: bool = False) -> PcaModel:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DomainError("X must be 2-D (rows = items)")
    n, d = X.shape
    if not np.isfinite(X).all():
        raise DomainError("X contains non-finite entries")
    if not 1 <= n_components <= d:
        raise DomainError(f"n_components must be in [1, {d}]")
    mean = X.mean(axis=0) if centered else np.zeros(d)
    Xc = X - mean
    M = (Xc.T @ Xc) / n
    m = n_components
    # iterate a buffered block: Ritz vectors for the leading m columns then
    # converge at the gap beyond the buffer, which tolerates clustered spectra
    mb = min(d, m + max(2, m))
    fro = np.linalg.norm(M)
    B = _orthonormalize(np.eye(d)[:, :mb])
    vals = np.zeros(m)
    V = B[:, :m]
    for it in range(1, 20_001):
        B = _orthonormalize(M @ B)
        if it % 10 == 0 or it == 1:
            S = B.T @ M @ B
            rvals, rot = _jacobi_eigh(0.5 * (S + S.T))
            ritz = B @ rot
            V, vals = ritz[:, :m], rvals[:m]
            resid = np.linalg.norm(M @ V - V * vals[None, :], axis=0)
            if fro == 0.0 or (resid <= 1e-10 * fro).all():
                break
    # canonical sign: largest-magnitude entry of each component is positive
    for j in range(m):
        idx = int(np.argmax(np.abs(V[:, j])))
        if V[idx, j] < 0:
            V[:, j] = -V[:, j]
    resid = np.linalg.norm(M @ V - V * vals[None, :], axis=0)
    if fro > 0 and (resid > 1e-9 * fro).any():
        raise NumericalError(f"PCA eigen-residuals did not converge: {resid / fro}")
    gaps = np.abs(np.diff(vals))
    degenerate = bool(len(vals) > 1 and (gaps <= 1e-8 * max(abs(vals[0]), 1e-300)).any())
    return PcaModel(
        second_moment=M,
        eigenvalues=vals,
        components=V,
        centered=centered,
        mean=mean,
        degenerate=degenerate,
    )


def pca_project(model: PcaModel, X: np.ndarray, m: int | None = None) -> np.ndarray:
    """Principal-component coordinates; column m alone when m is given."""
    X = np.asarray(X, dtype=np.float64) - model.mean
    if m is None:
        return X @ model.components
    if not 0 <= m < model.components.shape[1]:
        raise DomainError(f"component {m} not in the fitted model")
    return X @ model.components[:, m]


# ---------------------------------------------------------------------------
# Multinomial logistic regression
# ---------------------------------------------------------------------------

def softmax(Z: np.ndarray) -> np.ndarray:
    Z = Z - Z.max(axis=1, keepdims=True)
    E = np.exp(Z)
    return E / E.sum(axis=1, keepdims=True)


@dataclass
class LogRegModel:
    weights: np.ndarray  # (C, d)
    bias: np.ndarray  # (C,)
    feat_mean: np.ndarray
    feat_std: np.ndarray
    n_classes: int
    config: dict = field(default_factory=dict)
    loss_history: list = field(default_factory=list)
    converged: bool = True

    def predict_proba(self, X: np.ndarray) -> np.ndarray:
        Xs = (np.asarray(X, dtype=np.float64) - self.feat_mean) / self.feat_std
        return softmax(Xs @ self.weights.T + self.bias)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.predict_proba(X).argmax(axis=1)

    def save(self, path) -> None:
        blob = {
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
            "feat_mean": self.feat_mean.tolist(),
            "feat_std": self.feat_std.tolist(),
            "n_classes": self.n_classes,
            "config": self.config,
            "converged": self.converged,
        }
        with open(path, "w") as fh:
            json.dump(blob, fh, indent=1)

    @classmethod
    def load(cls, path) -> "LogRegModel":
        with open(path) as fh:
            blob = json.load(fh)
        return cls(
            weights=np.array(blob["weights"]),
            bias=np.array(blob["bias"]),
            feat_mean=np.array(blob["feat_mean"]),
            feat_std=np.array(blob["feat_std"]),
            n_classes=blob["n_classes"],
            config=blob["config"],
            converged=blob["converged"],
        )


def _loss_and_grad(Xs, Y, W, b, l2):
    n = Xs.shape[0]
    P = softmax(Xs @ W.T + b)
    eps = 1e-300
    loss = -np.log(np.clip((P * Y).sum(axis=1), eps, None)).mean() + 0.5 * l2 * (W**2).sum()
    D = (P - Y) / n
    grad_w = D.T @ Xs + l2 * W
    grad_b = D.sum(axis=0)
    return loss, grad_w, grad_b


def logreg_train(
    X: np.ndarray,
    y: np.ndarray,
    n_classes: int,
    lr: float = 0.5,
    epochs: int = 300,
    l2: float = 0.0,
    seed: int = 0,
    patience: int = 25,
) -> LogRegModel:
    """Full-batch gradient descent on one-hot targets, deterministic under seed.

    Features are z-scored on the training statistics; constant features keep a
    unit scale.  On a non-decreasing loss plateau the best-so-far weights are
    returned with a warning instead of failing.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    if X.shape[0] != y.shape[0]:
        raise DomainError("X and y lengths differ")
    if y.min() < 0 or y.max() >= n_classes:
        raise DomainError("labels outside [0, n_classes)")
    mean = X.mean(axis=0)
    std = X.std(axis=0)
    std[std == 0.0] = 1.0
    Xs = (X - mean) / std
    Y = np.zeros((len(y), n_classes))
    Y[np.arange(len(y)), y] = 1.0
    W = np.zeros((n_classes, X.shape[1]))
    b = np.zeros(n_classes)
    best = (np.inf, W.copy(), b.copy())
    history = []
    stale = 0
    converged = True
    for _ in range(epochs):
        loss, gw, gb = _loss_and_grad(Xs, Y, W, b, l2)
        history.append(float(loss))
        if loss < best[0] - 1e-12:
            best = (loss, W.copy(), b.copy())
            stale = 0
        else:
            stale += 1
            if stale >= patience:
                warnings.warn("loss plateaued; returning best-so-far weights")
                converged = False
                break
        W = W - lr * gw
        b = b - lr * gb
    loss, _, _ = _loss_and_grad(Xs, Y, W, b, l2)
    if loss < best[0]:
        best = (loss, W, b)
    return LogRegModel(
        weights=best[1],
        bias=best[2],
        feat_mean=mean,
        feat_std=std,
        n_classes=n_classes,
        config={"lr": lr, "epochs": epochs, "l2": l2, "seed": seed},
        loss_history=history,
        converged=converged,
    )


def logreg_gradient_check(seed: int = 0, n: int = 40, d: int = 5, c: int = 3, l2: float = 0.1):
    """Max relative error between analytic and central-difference gradients."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, d))
    y = rng.integers(0, c, size=n)
    Y = np.zeros((n, c))
    Y[np.arange(n), y] = 1.0
    W = rng.normal(scale=0.3, size=(c, d))
    b = rng.normal(scale=0.3, size=c)
    _, gw, gb = _loss_and_grad(X, Y, W, b, l2)
    h = 1e-6
    worst = 0.0
    for arr, grad in ((W, gw), (b, gb)):
        it = np.nditer(arr, flags=["multi_index"])
        while not it.finished:
            idx = it.multi_index
            keep = arr[idx]
            arr[idx] = keep + h
            lp, _, _ = _loss_and_grad(X, Y, W, b, l2)
            arr[idx] = keep - h
            lm, _, _ = _loss_and_grad(X, Y, W, b, l2)
            arr[idx] = keep
            num = (lp - lm) / (2 * h)
            denom = max(abs(num), abs(grad[idx]), 1e-8)
            worst = max(worst, abs(num - grad[idx]) / denom)
            it.iternext()
    return worst


# ---------------------------------------------------------------------------
# k nearest neighbors
# ---------------------------------------------------------------------------

def knn_classify(
    train_X: np.ndarray,
    train_y: np.ndarray,
    test_X: np.ndarray,
    k_neighbors: int = 1,
    block: int = 512,
) -> np.ndarray:
    """Majority vote among the k nearest by L2 distance on raw vectors.

    Vote ties break toward the class with the smaller summed distance, then
    the lower label.  Distances come out exact for integer-valued features.
    """
    train_X = np.asarray(train_X, dtype=np.float64)
    test_X = np.asarray(test_X, dtype=np.float64)
    train_y = np.asarray(train_y, dtype=np.int64)
    if len(train_X) == 0:
        raise DomainError("empty training set")
    k = min(k_neighbors, len(train_X))
    train_sq = (train_X**2).sum(axis=1)
    n_classes = int(train_y.max()) + 1
    out = np.empty(len(test_X), dtype=np.int64)
    for start in range(0, len(test_X), block):
        tb = test_X[start:start + block]
        d2 = (tb**2).sum(axis=1)[:, None] + train_sq[None, :] - 2.0 * (tb @ train_X.T)
        if k == 1:
            out[start:start + block] = train_y[np.argmin(d2, axis=1)]
            continue
        part = np.argpartition(d2, k - 1, axis=1)[:, :k]
        rows = np.arange(len(tb))[:, None]
        dists = d2[rows, part]
        labels = train_y[part]
        for i in range(len(tb)):
            votes = np.bincount(labels[i], minlength=n_classes)
            top = votes.max()
            tied = np.flatnonzero(votes == top)
            if len(tied) == 1:
                out[start + i] = tied[0]
                continue
            sums = np.array([dists[i][labels[i] == lab].sum() for lab in tied])
            out[start + i] = int(tied[np.argmin(sums)])  # argmin takes the lowest label on ties
    return out


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def train_test_split(n: int, train_frac: float, seed: int):
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    cut = int(round(n * train_frac))
    return perm[:cut], perm[cut:]


def evaluate(pred, truth):
    pred = np.asarray(pred, dtype=np.int64)
    truth = np.asarray(truth, dtype=np.int64)
    if pred.shape != truth.shape:
        raise DomainError("prediction and truth lengths differ")
    c = int(max(pred.max(initial=0), truth.max(initial=0))) + 1
    confusion = np.zeros((c, c), dtype=np.int64)
    np.add.at(confusion, (truth, pred), 1)
    accuracy = float((pred == truth).mean()) if len(pred) else 0.0
    col = confusion.sum(axis=0)
    precision = [
        float(confusion[i, i] / col[i]) if col[i] else 0.0 for i in range(c)
    ]
    return {
        "accuracy": accuracy,
        "per_class_precision": precision,
        "confusion_matrix": confusion.tolist(),
    }
