"""Exact computation with the birational R-matrix action on vector tuples.

Subpackages: sparse polynomial and rational-function arithmetic
(:mod:`~birmatrix.polyalg`), the R-matrix and its symmetric group action
(:mod:`~birmatrix.rmatrix`), the tau/sigma/omega function family and their
identities (:mod:`~birmatrix.specialfn`), closed-form actions for 1-shifts
and transpositions (:mod:`~birmatrix.formulas`), highway-path enumeration
on cylindric networks (:mod:`~birmatrix.cylnet`), and the command line
interface with its verification harness (:mod:`~birmatrix.cli`,
:mod:`~birmatrix.verify`).
"""

__version__ = "0.1.0"
