"""Mod-p total Pontrjagin classes of the quotients, and the lens-space analogue.

For rotation data (R, Q) the total class of the quotient is
prod_i (1 + (R[i]*a + Q[i]*b)^2) over all 2n columns, expanded and truncated
at polynomial degree 2n - 1 (cohomological degree 4n - 2); the graded pieces
live in degrees 4k and are compared modulo the ideal generated by the
k-invariant.  For a single lens space L(p; r_1..r_m) the same product with
one variable, prod_i (1 + r_i^2 a^2), is truncated by a^m = 0.
"""

from __future__ import annotations

from typing import Sequence

from .actions import RotationData
from .errors import InvalidRotation
from .forms import HomogeneousForm, k_invariant
from .gfp import require_odd_prime, span_key
from .quotient_ring import CohomRingModel, TotalClass


def _graded_product_of_one_plus_squares(
    p: int, squares: Sequence[tuple[int, ...]], truncation: int
) -> dict[int, tuple[int, ...]]:
    """Expand prod (1 + s) for degree-2 coefficient vectors s, keeping
    polynomial degrees <= truncation; returns {poly degree: coeffs}."""
    comps: dict[int, list[int]] = {0: [1]}
    for sq in squares:
        out: dict[int, list[int]] = {}
        for d, coeffs in comps.items():
            cur = out.setdefault(d, [0] * (d + 1))
            for k, c in enumerate(coeffs):
                cur[k] = (cur[k] + c) % p
            if d + 2 <= truncation:
                cur2 = out.setdefault(d + 2, [0] * (d + 3))
                for k, c in enumerate(coeffs):
                    if c:
                        for t, s in enumerate(sq):
                            cur2[k + t] = (cur2[k + t] + c * s) % p
        comps = out
    return {d: tuple(coeffs) for d, coeffs in comps.items()}


def total_pontrjagin_raw(data: RotationData) -> dict[int, HomogeneousForm]:
    """Unreduced graded components {cohomological degree 4k: form}, truncated."""
    p = data.p
    truncation = 2 * data.n - 1
    squares = []
    for r, q in data.rotation_pairs():
        # (r*a + q*b)^2
        squares.append((r * r % p, 2 * r * q % p, q * q % p))
    comps = _graded_product_of_one_plus_squares(p, squares, truncation)
    return {
        2 * d: HomogeneousForm(p, coeffs)
        for d, coeffs in comps.items()
        if d > 0
    }


def total_pontrjagin(data: RotationData, model: CohomRingModel) -> TotalClass:
    """Total Pontrjagin class reduced in the quotient's cohomology model.

    The model must belong to the same space: same (p, n) and the same ideal
    as the one generated by data's k-invariant.
    """
    if (model.p, model.n) != (data.p, data.n):
        raise ValueError("model (p, n) differs from the data's")
    k = k_invariant(data)
    if span_key([k.first.coeffs, k.second.coeffs], data.p) != span_key(
        [model.f.coeffs, model.g.coeffs], data.p
    ):
        raise ValueError("model ideal differs from the ideal of data's k-invariant")
    comps = tuple(
        (deg, model.reduce(form)) for deg, form in sorted(total_pontrjagin_raw(data).items())
    )
    return TotalClass(data.p, 2 * data.n - 1, comps)


def lens_total_pontrjagin(p: int, rotations: Sequence[int]) -> TotalClass:
    """Total class of the lens space with the given rotation numbers,
    computed in GF(p)[a]/(a^m), m = len(rotations); single-variable forms
    are returned as binary forms with all b-coefficients zero."""
    require_odd_prime(p)
    rotations = tuple(int(x) % p for x in rotations)
    if any(x == 0 for x in rotations):
        raise InvalidRotation("lens-space rotation numbers must be nonzero mod p")
    truncation = max(len(rotations) - 1, 0)
    squares = [(r * r % p, 0, 0) for r in rotations]
    comps = _graded_product_of_one_plus_squares(p, squares, truncation)
    return TotalClass(
        p,
        truncation,
        tuple(
            (2 * d, HomogeneousForm(p, coeffs)) for d, coeffs in sorted(comps.items()) if d > 0
        ),
    )
