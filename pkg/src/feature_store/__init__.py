"""
Feature Store Module for the Semantic Link Forecast system.
"""
