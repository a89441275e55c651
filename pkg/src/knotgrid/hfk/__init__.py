"""Bigraded knot Floer homology (hat flavor) over GF(2) from grid diagrams."""
