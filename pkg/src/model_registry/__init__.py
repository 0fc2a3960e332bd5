"""
Model Registry Module for the Semantic Link Forecast system: model files and MLflow tracking.
"""
