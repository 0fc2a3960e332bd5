"""
Optional MLflow tracking for training runs.

Tracking is enabled by an explicit URI or MLFLOW_TRACKING_URI. Tracking
failures are logged and never fail the training command.
"""

import logging
import os

# Set up logging
logger = logging.getLogger(__name__)

DEFAULT_EXPERIMENT = "semantic-link-forecast"


def tracking_uri(explicit=None):
    return explicit or os.getenv("MLFLOW_TRACKING_URI")


def setup_mlflow_tracking(uri, experiment=DEFAULT_EXPERIMENT):
    import mlflow

    mlflow.set_tracking_uri(uri)
    mlflow.set_experiment(experiment)
    logger.info(f"MLflow tracking at {mlflow.get_tracking_uri()}, experiment '{experiment}'")
    return mlflow


def log_training_run(params, loss_history, metrics, model_path=None, uri=None, experiment=DEFAULT_EXPERIMENT):
    """Log params, per-epoch loss, final metrics and the model file. Returns the run id or None."""
    uri = tracking_uri(uri)
    if not uri:
        logger.debug("MLflow tracking disabled")
        return None
    try:
        mlflow = setup_mlflow_tracking(uri, experiment)
        with mlflow.start_run() as run:
            for key, value in params.items():
                mlflow.log_param(key, value)
            for epoch, loss in enumerate(loss_history, start=1):
                mlflow.log_metric("train_loss", loss, step=epoch)
            for key, value in metrics.items():
                if value is not None:
                    mlflow.log_metric(key, value)
            if model_path is not None:
                mlflow.log_artifact(model_path)
            logger.info(f"Training run logged to MLflow as {run.info.run_id}")
            return run.info.run_id
    except Exception as e:
        logger.error(f"Error logging to MLflow: {e}")
        return None
