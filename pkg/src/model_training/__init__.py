"""
Model Training Module for the Semantic Link Forecast system.
"""
