"""Automorphism groups of finite abelian p-groups and first-order checks over them."""

__version__ = "0.1.0"
