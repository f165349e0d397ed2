"""Exact combinatorial Chern classes of triangulated circle bundles.

The package turns explicit simplicial circle bundles into cyclic words,
evaluates the rational parity of those words three independent ways
(subword enumeration, maximal-minor sums, Pfaffians), verifies the
connection-form identities behind the construction in exact polynomial
exterior algebra, and assembles the resulting local formula into Chern
cochains and Chern numbers.
"""

from __future__ import annotations

__version__ = "0.1.0"
