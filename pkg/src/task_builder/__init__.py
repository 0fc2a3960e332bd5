"""
Task Builder Module for the Semantic Link Forecast system.
"""
