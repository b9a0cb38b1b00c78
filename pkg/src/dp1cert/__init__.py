"""Exact-arithmetic density certification for rational points on
degree-1 del Pezzo surfaces y^2 = x^3 + f(z,w)x + g(z,w) in P(2,3,1,1)."""

__version__ = "0.1.0"
