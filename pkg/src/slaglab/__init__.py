"""Numerics and decision procedures for special Lagrangian cones and their smoothings.

Submodules: ``cxmat`` (complex matrices), ``intalg`` (integer linear
algebra), ``charclass`` (characteristic classes), ``symplectic`` (forms,
loops and moment maps), ``cones`` (the cone catalog), ``obstruction``
(prescribed boundary problem) and ``cli``.
"""

__version__ = "0.1.0"
