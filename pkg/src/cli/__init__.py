"""
Command Line Module for the Semantic Link Forecast system.
"""
