"""Semantic exceptions shared across the package.

Plain ``ValueError`` is used for contract violations on inputs (shapes,
domains, unknown parameters).  ``FeasibilityError`` is reserved for scenes
that are well formed but mathematically outside the validity region of a
bound (e.g. a divergence that is infinite for the requested order, or an
optimizer constraint such as ``a > 2*b*sqrt(p)`` failing).  The CLI maps
the two onto distinct exit codes.
"""


class FeasibilityError(Exception):
    """Scene parameters violate the validity condition of a bound."""
