"""lenscalc: exact-arithmetic calculus for Markov triples, Farey paths,
lens-space surgeries, genus-1 handle diagrams, and almost toric base
diagrams."""

__version__ = "0.1.0"
