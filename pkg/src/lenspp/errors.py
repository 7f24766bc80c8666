"""Exception types shared across the package.

Everything derives from ValueError so callers can catch domain problems
generically; the CLI maps these onto its exit-code contract.
"""


class InvalidPrime(ValueError):
    """Modulus is not an odd prime."""


class InvalidDimension(ValueError):
    """Sphere-dimension parameter n is out of range (need n >= 2)."""


class InvalidSpan(ValueError):
    """Rotation vectors R, Q do not span a 2-dimensional subspace of (Z/p)^(2n)."""


class InvalidRotation(ValueError):
    """A rotation number is out of its allowed range (e.g. zero where a unit is required)."""


class HypothesisViolation(ValueError):
    """A hypothesis the method needs (p > n, or p > 3 and p > n+1) fails; refusing to compute."""


class CapacityError(ValueError):
    """Exhaustive enumeration refused above the supported size guards."""


class DegenerateIdeal(ValueError):
    """Quotient-ring construction was handed a zero ideal generator."""
