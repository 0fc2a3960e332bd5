"""
Tests for optional MLflow tracking.
"""

import os
import sys

import pytest

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from model_registry.tracking import log_training_run


def test_tracking_disabled_without_uri(monkeypatch):
    monkeypatch.delenv("MLFLOW_TRACKING_URI", raising=False)
    assert log_training_run({"lr": 0.001}, [0.7, 0.6], {"auc": 0.8}) is None


def test_training_run_is_logged(tmp_path):
    mlflow = pytest.importorskip("mlflow")
    model = tmp_path / "model.txt"
    model.write_text("linkbench-mlp v1\n", encoding="utf-8")
    uri = (tmp_path / "mlruns").as_uri()
    run_id = log_training_run(
        {"optimizer": "adam", "epochs": 2}, [0.7, 0.6], {"auc": 0.8, "accuracy": None},
        model_path=str(model), uri=uri,
    )
    assert run_id is not None
    run = mlflow.tracking.MlflowClient(tracking_uri=uri).get_run(run_id)
    assert run.data.params["optimizer"] == "adam"
    assert run.data.metrics["auc"] == 0.8
    assert run.data.metrics["train_loss"] == 0.6


def test_tracking_failures_do_not_raise(tmp_path):
    pytest.importorskip("mlflow")
    assert log_training_run({"a": 1}, [0.5], {}, model_path=str(tmp_path / "missing.txt"),
                            uri=(tmp_path / "runs").as_uri()) is None
