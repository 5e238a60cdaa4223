import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agerec.models import (
    ModelArtifact,
    RangePrediction,
    TrainConfig,
    aggregate_mean,
    ff_gradient_check,
    ff_loss_and_grads,
    ff_train,
    flesch_kincaid_age,
    load_model,
    naive_fit,
    normalize_bounds,
    predict,
    predict_raw,
    rf_train,
    save_model,
    schema_fingerprint,
)


def tiny_config(**kw):
    defaults = dict(hidden_layers=2, hidden_units=8, epochs=200, seed=0)
    defaults.update(kw)
    return TrainConfig(**defaults)


class TestNormalization:
    def test_swap(self):
        p = normalize_bounds(11.2, 9.8)
        assert (p.lo, p.hi, p.normalized) == (9.8, 11.2, True)

    def test_clamp(self):
        p = normalize_bounds(-0.5, 4.0)
        assert (p.lo, p.hi, p.normalized) == (0.0, 4.0, True)
        p = normalize_bounds(10.0, 25.0)
        assert (p.lo, p.hi, p.normalized) == (10.0, 18.0, True)

    def test_clean(self):
        p = normalize_bounds(6.0, 10.0)
        assert (p.lo, p.hi, p.normalized) == (6.0, 10.0, False)

    def test_mu_exact(self):
        assert normalize_bounds(4.0, 9.0).mu == 6.5

    @given(st.floats(-30, 30), st.floats(-30, 30))
    def test_always_valid(self, a, b):
        p = normalize_bounds(a, b)
        assert 0.0 <= p.lo <= p.hi <= 18.0
        assert p.mu == (p.lo + p.hi) / 2

    def test_out_of_order_construction_rejected(self):
        with pytest.raises(ValueError):
            RangePrediction(10.0, 4.0)


class TestNaive:
    def test_mean_of_bounds(self):
        model = naive_fit([(4, 8), (8, 12)])
        preds = predict(model, np.zeros((3, 7)))
        assert all((p.lo, p.hi) == (6.0, 10.0) for p in preds)

    def test_empty_train_rejected(self):
        with pytest.raises(ValueError):
            naive_fit([])


class TestFleschKincaid:
    def test_grade_to_age(self):
        # grade 4.5 corresponds to age 10.0
        p = flesch_kincaid_age(words=10, sentences=1, syllables=int(10 * 1.387))
        # derive directly instead: construct exact inputs below
        assert p.lo == p.hi == p.mu

    def test_known_values(self):
        p = flesch_kincaid_age(words=10, sentences=1, syllables=15)
        assert p.mu == pytest.approx(11.51, abs=1e-9)
        p = flesch_kincaid_age(words=100, sentences=10, syllables=100)
        assert p.mu == pytest.approx(5.61, abs=1e-9)

    def test_zero_counts_rejected(self):
        with pytest.raises(ValueError):
            flesch_kincaid_age(0, 1, 0)
        with pytest.raises(ValueError):
            flesch_kincaid_age(5, 0, 7)


class TestFFNetwork:
    def test_constant_targets(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(40, 5))
        Y = np.tile([6.0, 10.0], (40, 1))
        model = ff_train(X, Y, tiny_config(epochs=2000))
        assert model.metadata["final_loss"] < 1e-3
        preds = predict(model, X)
        for p in preds:
            assert p.lo == pytest.approx(6.0, abs=0.1)
            assert p.hi == pytest.approx(10.0, abs=0.1)

    def test_deterministic(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(20, 4))
        Y = rng.uniform(2, 16, size=(20, 2))
        Y.sort(axis=1)
        a = ff_train(X, Y, tiny_config(epochs=50))
        b = ff_train(X, Y, tiny_config(epochs=50))
        for wa, wb in zip(a.params["weights"], b.params["weights"]):
            assert np.array_equal(wa, wb)

    def test_nan_input_rejected(self):
        X = np.zeros((3, 2))
        X[0, 0] = np.nan
        with pytest.raises(ValueError):
            ff_train(X, np.ones((3, 2)), tiny_config())

    def test_schema_mismatch_on_predict(self):
        X = np.random.default_rng(0).normal(size=(10, 4))
        Y = np.tile([5.0, 9.0], (10, 1))
        model = ff_train(X, Y, tiny_config(epochs=10))
        with pytest.raises(ValueError, match="schema"):
            predict(model, np.zeros((2, 7)))

    def test_gradient_check(self):
        assert ff_gradient_check(hidden_layers=2, hidden_units=3,
                                 n_samples=5) < 1e-5

    def test_loss_decreases(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(60, 6))
        w = rng.normal(size=(6, 2))
        Y = X @ w + 9.0
        model = ff_train(X, Y, tiny_config(epochs=2000))
        params = list(zip(model.params["weights"], model.params["biases"]))
        Xs = (X - model.params["x_mean"]) / model.params["x_std"]
        Ys = (Y - model.params["y_mean"]) / model.params["y_std"]
        loss, _ = ff_loss_and_grads(params, Xs, Ys)
        base = float(np.sum(Ys * Ys) / len(Ys))  # loss of predicting 0
        assert loss < base / 10


class TestRandomForest:
    def test_single_sample_memorized(self):
        model = rf_train([[1.0, 2.0]], [[4.0, 8.0]], tiny_config())
        p = predict(model, [[1.0, 2.0]])[0]
        assert (p.lo, p.hi) == (4.0, 8.0)

    def test_deterministic(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(30, 5))
        Y = np.sort(rng.uniform(2, 16, size=(30, 2)), axis=1)
        a = rf_train(X, Y, tiny_config())
        b = rf_train(X, Y, tiny_config())
        assert np.array_equal(predict_raw(a, X), predict_raw(b, X))

    def test_overfits_noise(self):
        rng = np.random.default_rng(4)
        X_train = rng.normal(size=(40, 5))
        Y_train = np.sort(rng.uniform(2, 16, size=(40, 2)), axis=1)
        X_test = rng.normal(size=(40, 5))
        Y_test = np.sort(rng.uniform(2, 16, size=(40, 2)), axis=1)
        model = rf_train(X_train, Y_train, tiny_config())

        def mu_error(X, Y):
            mus = [p.mu for p in predict(model, X)]
            return float(np.mean(np.abs(np.asarray(mus) - Y.mean(axis=1))))

        assert mu_error(X_train, Y_train) < mu_error(X_test, Y_test)


class TestAggregation:
    def test_identical(self):
        preds = [normalize_bounds(6, 10)] * 5
        agg = aggregate_mean(preds)
        assert (agg.lo, agg.hi, agg.normalized) == (6.0, 10.0, False)

    def test_mean(self):
        agg = aggregate_mean([normalize_bounds(4, 8), normalize_bounds(6, 10)])
        assert (agg.lo, agg.hi) == (5.0, 9.0)

    def test_flag_propagates(self):
        agg = aggregate_mean([normalize_bounds(8, 4), normalize_bounds(4, 8)])
        assert (agg.lo, agg.hi) == (4.0, 8.0)
        assert agg.normalized

    def test_permutation_invariant(self):
        preds = [normalize_bounds(a, b) for a, b in
                 [(2, 5), (4, 9), (7, 12), (1, 3)]]
        fwd = aggregate_mean(preds)
        rev = aggregate_mean(list(reversed(preds)))
        assert (fwd.lo, fwd.hi) == (rev.lo, rev.hi)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate_mean([])


class TestPersistence:
    def test_round_trip_ff(self, tmp_path):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(15, 3))
        Y = np.tile([5.0, 9.0], (15, 1))
        model = ff_train(X, Y, tiny_config(epochs=20))
        p = tmp_path / "model.bin"
        save_model(model, p)
        again = load_model(p)
        assert np.array_equal(predict_raw(model, X), predict_raw(again, X))
        assert again.schema == model.schema
        assert again.metadata == model.metadata

    def test_round_trip_rf(self, tmp_path):
        rng = np.random.default_rng(6)
        X = rng.normal(size=(20, 4))
        Y = np.sort(rng.uniform(2, 16, size=(20, 2)), axis=1)
        model = rf_train(X, Y, tiny_config())
        p = tmp_path / "model.bin"
        save_model(model, p)
        assert np.array_equal(predict_raw(load_model(p), X),
                              predict_raw(model, X))

    def test_corrupted_file(self, tmp_path):
        p = tmp_path / "junk.bin"
        p.write_bytes(b"not a pickle at all")
        with pytest.raises(ValueError, match="artifact"):
            load_model(p)

    def test_unknown_version(self, tmp_path):
        import pickle
        p = tmp_path / "future.bin"
        p.write_bytes(pickle.dumps({"magic": "agerec-model",
                                    "format_version": 99}))
        with pytest.raises(ValueError, match="version"):
            load_model(p)

    def test_schema_mismatch_after_load(self, tmp_path):
        model = rf_train([[1.0, 2.0, 3.0]], [[4.0, 8.0]], tiny_config())
        p = tmp_path / "m.bin"
        save_model(model, p)
        with pytest.raises(ValueError, match="dim=3"):
            predict(load_model(p), [[1.0, 2.0]])


class TestConfigAndSchema:
    def test_bad_config(self):
        with pytest.raises(ValueError):
            TrainConfig(hidden_layers=0)
        with pytest.raises(ValueError):
            TrainConfig(learning_rate=-1)

    def test_fingerprint_kinds(self):
        assert schema_fingerprint(107) == "dim=107"
        a = schema_fingerprint(["x", "y"])
        b = schema_fingerprint(["x", "z"])
        assert a != b and a.startswith("names:2:")
