"""Yoneda algebras and their minimal A-infinity structures."""
