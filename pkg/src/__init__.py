"""
Union-closed families toolkit: set families, deletion sequences and a claim auditor.
"""

__version__ = "0.3.0"
