"""Möbius n-pairs M(n, phi): two n-simplices inscribed in each other, with the
inscription pattern given by a permutation phi of {1..n}."""
from .config import ElementId, MobiusPair, build
from .perm import Permutation, parse_permutation

__all__ = ["ElementId", "MobiusPair", "Permutation", "build", "parse_permutation"]
