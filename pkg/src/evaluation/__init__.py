"""
Evaluation Module for the Semantic Link Forecast system: ROC/AUC and network analysis.
"""
