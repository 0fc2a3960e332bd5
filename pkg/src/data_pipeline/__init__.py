"""
Data Pipeline Module for the Semantic Link Forecast system: edge-list files and synthetic graphs.
"""
