"""Desk-scale workbench for modular Calabi-Yau families.

Hecke data of eta-quotient newforms is compared against Frobenius traces
extracted from point counts of explicit elliptic families over finite fields.
"""

__version__ = "0.1.0"
