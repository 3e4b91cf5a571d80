"""Smooth shifts n + a in a number field and the relations among them.

Polynomials are coefficient lists, constant term first, e.g. ``[1, 1, 1]``
for x^2 + x + 1. Big integers come back as Python ints.
"""

from . import _core

__all__ = ["rho", "field_info", "sieve", "psi", "find_relations", "verify_relation", "dim_bracket"]


def _poly(coeffs):
    if isinstance(coeffs, str):
        return coeffs
    return ",".join(str(int(c)) for c in coeffs)


def rho(u, tol=1e-9):
    """Dickman's rho at u."""
    return _core.rho(float(u), float(tol))


def field_info(poly):
    d = _core.field_info(_poly(poly))
    d["disc"] = int(d["disc"])
    d["exceptional_primes"] = [int(p) for p in d["exceptional_primes"]]
    d["poly"] = [int(c) for c in d["poly"].split(",")]
    d["norm_poly"] = [int(c) for c in d["norm_poly"].split(",")]
    return d


def sieve(poly, x, y, linear=False, threads=1):
    """One record per 0 <= n < x."""
    recs = _core.sieve(_poly(poly) if poly is not None else "", int(x), int(y), linear, threads)
    for r in recs:
        r["value"] = int(r["value"])
        r["cofactor"] = int(r["cofactor"])
        if r["largest_prime"] is not None:
            r["largest_prime"] = int(r["largest_prime"])
    return recs


def psi(poly, x, y, linear=False):
    """Number of 1 <= n < x with P(n) y-smooth."""
    return _core.psi(_poly(poly) if poly is not None else "", int(x), int(y), linear)


def find_relations(poly, x, y, include_exceptional=False, max_relations=64, threads=1):
    return _core.find_relations(_poly(poly), int(x), int(y), include_exceptional, max_relations, threads)


def verify_relation(poly, terms):
    """Exact check that prod (n + a)^k == 1."""
    return _core.verify_relation(_poly(poly), [(int(n), int(k)) for n, k in terms])


def dim_bracket(poly, x, y=0, threads=1):
    return _core.dim_bracket(_poly(poly), int(x), int(y), threads)
