"""
Scoring Module for the Semantic Link Forecast system: statistical and MLP scorers.
"""
