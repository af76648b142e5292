"""Exact certificates for algebraic stability problems.

Subpackages and modules:

- ``algebra``: rationals, Laurent polynomials, multivariate rings, Groebner
  bases, elimination, saturation, and the polynomial parser.
- ``groups``: group presentations, representations, arcs, weights, norms.
- ``pairs``: semistability and stability verdicts for pairs with exact
  polyhedral certificates, plus a randomized falsifier.
- ``locus``: degeneration loci by elimination, per-point oracles, and
  parametric-family unstable loci.
- ``kstab``: Donaldson-Futaki numerics with a toric front-end.
- ``cli``: JSON batch front-end (`stabkit run`, `stabkit corpus`).

Everything computes over exact rationals; budgets bound the expensive ideal
and simplex computations.
"""

__version__ = "0.1.0"
