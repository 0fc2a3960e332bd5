"""
Shared errors, configuration helpers and parallel utilities for the Semantic Link Forecast system.
"""
