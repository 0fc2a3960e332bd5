"""
Temporal Graph Module for the Semantic Link Forecast system.
"""
