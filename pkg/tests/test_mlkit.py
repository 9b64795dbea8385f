import numpy as np
import pytest

from snec.errors import DomainError
from snec.mlkit import (
    evaluate,
    knn_classify,
    logreg_gradient_check,
    logreg_train,
    pca_fit,
    pca_project,
    softmax,
    train_test_split,
)


def test_pca_degenerate_pair_flagged():
    model = pca_fit(np.array([[1.0, 0.0], [0.0, 1.0]]), 2)
    assert model.eigenvalues == pytest.approx([0.5, 0.5], abs=1e-12)
    assert model.degenerate


def test_pca_rank_one_cloud():
    model = pca_fit(np.array([[1.0, 1.0], [-1.0, -1.0]]), 1)
    assert model.eigenvalues[0] == pytest.approx(2.0, abs=1e-12)
    assert model.components[:, 0] == pytest.approx([1 / np.sqrt(2)] * 2, abs=1e-12)


def test_pca_contracts_random_cloud():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(500, 10)) * np.arange(1, 11)
    model = pca_fit(X, 10)
    assert abs(model.eigenvalues.sum() - np.trace(model.second_moment)) < 1e-9
    eye_err = np.abs(model.components.T @ model.components - np.eye(10)).max()
    assert eye_err < 1e-10
    resid = np.linalg.norm(
        model.second_moment @ model.components - model.components * model.eigenvalues[None, :],
        axis=0,
    )
    assert (resid < 1e-9 * np.linalg.norm(model.second_moment)).all()
    assert (np.diff(model.eigenvalues) <= 1e-12).all()  # descending


def test_pca_projection_identities():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(200, 6))
    model = pca_fit(X, 3)
    v0 = model.components[:, 0]
    coords = pca_project(model, v0[None, :])[0]
    assert coords[0] == pytest.approx(1.0, abs=1e-9)
    assert np.abs(coords[1:]).max() < 1e-9
    # a row proportional to an eigenvector projects to its eigenvalue scale
    coords = pca_project(model, (model.second_moment @ v0)[None, :])[0]
    assert coords[0] == pytest.approx(model.eigenvalues[0], rel=1e-9)
    with pytest.raises(DomainError):
        pca_project(model, X, m=3)


def test_pca_sign_canonicalization_and_permutation_invariance():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(300, 5)) * np.array([5, 3, 2, 1, 0.5])
    m1 = pca_fit(X, 3)
    m2 = pca_fit(-X, 3)  # flipping the cloud cannot flip canonical components
    assert np.allclose(m1.components, m2.components, atol=1e-8)
    perm = rng.permutation(len(X))
    m3 = pca_fit(X[perm], 3)
    assert np.allclose(m1.components, m3.components, atol=1e-8)
    assert np.allclose(m1.eigenvalues, m3.eigenvalues, atol=1e-10)
    for j in range(3):
        col = m1.components[:, j]
        assert col[int(np.argmax(np.abs(col)))] > 0


def test_pca_centered_variant():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(400, 4)) + 50.0
    unc = pca_fit(X, 2)
    cen = pca_fit(X, 2, centered=True)
    # the huge mean dominates the uncentered second moment, not the centered one
    assert unc.eigenvalues[0] > 100 * cen.eigenvalues[0]
    assert cen.eigenvalues[0] < 5.0


def test_pca_input_validation():
    with pytest.raises(DomainError):
        pca_fit(np.array([[np.nan, 1.0]]), 1)
    with pytest.raises(DomainError):
        pca_fit(np.ones((3, 2)), 3)


def test_gradient_check():
    assert logreg_gradient_check() < 1e-5


def test_logreg_separable_toy():
    rng = np.random.default_rng(4)
    X = np.vstack([rng.normal(size=(80, 2)) + 4.0, rng.normal(size=(80, 2)) - 4.0])
    y = np.array([0] * 80 + [1] * 80)
    model = logreg_train(X, y, 2, lr=0.5, epochs=400, seed=0)
    assert evaluate(model.predict(X), y)["accuracy"] == 1.0
    probs = model.predict_proba(X)
    assert np.abs(probs.sum(axis=1) - 1.0).max() < 1e-12


def test_logreg_three_classes():
    rng = np.random.default_rng(5)
    centers = np.array([[6, 0], [-6, 0], [0, 6]])
    X = np.vstack([rng.normal(size=(60, 2)) + c for c in centers])
    y = np.repeat([0, 1, 2], 60)
    model = logreg_train(X, y, 3, epochs=500)
    assert evaluate(model.predict(X), y)["accuracy"] > 0.98


def test_logreg_plateau_warns():
    X = np.array([[0.0, 1.0], [1.0, 0.0]] * 10)
    y = np.array([0, 1] * 10)
    with pytest.warns(UserWarning, match="plateau"):
        model = logreg_train(X, y, 2, lr=0.0, epochs=100, patience=5)
    assert not model.converged


def test_logreg_model_roundtrip(tmp_path):
    rng = np.random.default_rng(6)
    X = rng.normal(size=(50, 3))
    y = rng.integers(0, 2, size=50)
    model = logreg_train(X, y, 2, epochs=50)
    model.save(tmp_path / "model.json")
    from snec.mlkit import LogRegModel

    loaded = LogRegModel.load(tmp_path / "model.json")
    assert np.allclose(loaded.weights, model.weights)
    assert np.array_equal(loaded.predict(X), model.predict(X))


def test_logreg_validation():
    with pytest.raises(DomainError):
        logreg_train(np.ones((4, 2)), np.array([0, 1]), 2)
    with pytest.raises(DomainError):
        logreg_train(np.ones((2, 2)), np.array([0, 5]), 2)


def test_softmax_rows_sum_to_one():
    rng = np.random.default_rng(7)
    P = softmax(rng.normal(scale=30, size=(100, 6)))
    assert np.abs(P.sum(axis=1) - 1.0).max() < 1e-12
    assert (P >= 0).all()


def test_knn_exact_match_and_train_accuracy():
    rng = np.random.default_rng(8)
    X = rng.normal(size=(60, 4))
    y = rng.integers(0, 3, size=60)
    assert np.array_equal(knn_classify(X, y, X[:7], 1), y[:7])
    assert (knn_classify(X, y, X, 1) == y).all()


def test_knn_vote_and_tiebreaks():
    train = np.array([[0.0], [1.0], [10.0], [11.0], [12.0]])
    labels = np.array([0, 0, 1, 1, 1])
    assert knn_classify(train, labels, np.array([[0.4]]), 3)[0] == 0
    assert knn_classify(train, labels, np.array([[10.5]]), 3)[0] == 1
    # 2-2 vote tie at k=4 around x=5.5: class 1 neighbors sit closer in sum
    train2 = np.array([[0.0], [1.0], [9.0], [10.0]])
    labels2 = np.array([0, 0, 1, 1])
    assert knn_classify(train2, labels2, np.array([[5.4]]), 4)[0] == 1
    # exact distance-sum tie resolves to the lower label
    train3 = np.array([[-1.0], [-2.0], [1.0], [2.0]])
    labels3 = np.array([1, 1, 0, 0])
    assert knn_classify(train3, labels3, np.array([[0.0]]), 4)[0] == 0
    with pytest.raises(DomainError):
        knn_classify(np.empty((0, 1)), np.empty(0, dtype=int), np.array([[1.0]]), 1)


def test_evaluate_goldens():
    assert evaluate(np.array([1, 1, 0]), np.array([1, 1, 0]))["accuracy"] == 1.0
    assert evaluate(np.array([1, 1]), np.array([0, 0]))["accuracy"] == 0.0
    res = evaluate(np.array([0, 0, 0, 1, 1, 0, 1, 1]), np.array([0, 0, 0, 0, 1, 1, 1, 1]))
    assert res["accuracy"] == 0.75
    assert res["confusion_matrix"] == [[3, 1], [1, 3]]
    assert res["per_class_precision"] == [0.75, 0.75]
    with pytest.raises(DomainError):
        evaluate(np.array([1]), np.array([1, 2]))


def test_split_is_seeded_partition():
    tr, te = train_test_split(100, 0.8, seed=3)
    tr2, te2 = train_test_split(100, 0.8, seed=3)
    assert np.array_equal(tr, tr2) and np.array_equal(te, te2)
    assert len(tr) == 80 and len(te) == 20
    assert sorted(np.concatenate([tr, te]).tolist()) == list(range(100))
    tr3, _ = train_test_split(100, 0.8, seed=4)
    assert not np.array_equal(tr, tr3)
