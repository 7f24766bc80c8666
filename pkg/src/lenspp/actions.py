"""Rotation data for linear (Z/p)^2 actions on S^(2n-1) x S^(2n-1), and the freeness test.

A diagonal linear action of (Z/p)^2 on the product of two (2n-1)-spheres is
recorded by two vectors R, Q in (Z/p)^(2n): column i holds the pair of
rotation numbers by which the two generators act on the i-th complex
coordinate; the first n columns rotate the first sphere, the last n the
second.  The action is free exactly when no nontrivial group element
simultaneously fixes a coordinate circle on each sphere, i.e. when no
nontrivial (g1, g2) has g1*R[i] + g2*Q[i] = 0 for some i < n and
g1*R[j] + g2*Q[j] = 0 for some j >= n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidDimension, InvalidRotation, InvalidSpan
from .gfp import rank, require_odd_prime


@dataclass(frozen=True)
class RotationData:
    """One quotient space, as (p, n) plus the two rotation vectors of length 2n."""

    p: int
    n: int
    R: tuple[int, ...]
    Q: tuple[int, ...]

    def rotation_pairs(self) -> tuple[tuple[int, int], ...]:
        """Columns (R[i], Q[i]) for i = 0..2n-1."""
        return tuple(zip(self.R, self.Q))

    def first_block(self) -> tuple[tuple[int, int], ...]:
        return self.rotation_pairs()[: self.n]

    def second_block(self) -> tuple[tuple[int, int], ...]:
        return self.rotation_pairs()[self.n :]


@dataclass(frozen=True)
class FreenessReport:
    free: bool
    violating_element: tuple[int, int] | None
    violating_pair: tuple[int, int] | None

    def to_json(self) -> dict:
        return {
            "free": self.free,
            "violating_element": list(self.violating_element) if self.violating_element else None,
            "violating_pair": list(self.violating_pair) if self.violating_pair else None,
        }


def validate(data: RotationData) -> RotationData:
    """Normalize raw integer data and check it describes a genuine 2-plane of rotations.

    Entries are reduced mod p; p must be an odd prime, n >= 2, and the
    2 x 2n matrix [R; Q] must have rank 2.
    """
    require_odd_prime(data.p)
    if not isinstance(data.n, int) or data.n < 2:
        raise InvalidDimension(f"need n >= 2, got {data.n!r}")
    R = tuple(int(x) % data.p for x in data.R)
    Q = tuple(int(x) % data.p for x in data.Q)
    if len(R) != 2 * data.n or len(Q) != 2 * data.n:
        raise InvalidDimension(
            f"rotation vectors must have length 2n = {2 * data.n}, got {len(R)} and {len(Q)}"
        )
    if rank([R, Q], data.p) != 2:
        raise InvalidSpan("R and Q must span a 2-dimensional subspace of (Z/p)^(2n)")
    return RotationData(data.p, data.n, R, Q)


def from_json(obj: dict) -> RotationData:
    """Parse the {"p":..,"n":..,"R":[..],"Q":[..]} space format; entries may be unreduced."""
    try:
        raw = RotationData(obj["p"], obj["n"], tuple(obj["R"]), tuple(obj["Q"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"space object needs integer p, n and integer lists R, Q: {exc}")
    return validate(raw)


def to_json(data: RotationData) -> dict:
    return {"p": data.p, "n": data.n, "R": list(data.R), "Q": list(data.Q)}


def is_free(data: RotationData) -> FreenessReport:
    """Scan all nontrivial group elements for a simultaneous zero on both blocks.

    The witness is the first violation found scanning g1 fastest
    ((1,0),(2,0),...,(0,1),(1,1),...), with (i, j) the first violating
    column pair, 1-based within each block.
    """
    p, n, R, Q = data.p, data.n, data.R, data.Q
    for g2 in range(p):
        for g1 in range(p):
            if g1 == 0 and g2 == 0:
                continue
            i = next(
                (k for k in range(n) if (g1 * R[k] + g2 * Q[k]) % p == 0),
                None,
            )
            if i is None:
                continue
            j = next(
                (k for k in range(n, 2 * n) if (g1 * R[k] + g2 * Q[k]) % p == 0),
                None,
            )
            if j is None:
                continue
            return FreenessReport(False, (g1, g2), (i + 1, j - n + 1))
    return FreenessReport(True, None, None)


def is_free_plane_form(data: RotationData) -> bool:
    """Equivalent plane formulation: the span of {R, Q} meets each coordinate
    2-plane B_ij (column i from the first block, j from the second) only at 0.

    The span intersects B_ij nontrivially iff the 2x2 matrix
    [[R[i], Q[i]], [R[j], Q[j]]] is singular, so freeness is n^2 determinant
    checks.  Independent of the element scan in is_free.
    """
    p, n, R, Q = data.p, data.n, data.R, data.Q
    for i in range(n):
        for j in range(n, 2 * n):
            if (R[i] * Q[j] - Q[i] * R[j]) % p == 0:
                return False
    return True


def product_of_lens_spaces(
    p: int, r: Sequence[int], rprime: Sequence[int]
) -> RotationData:
    """Rotation data of L(p; r) x L(p; r'): R = (r, 0..0), Q = (0..0, r').

    All rotation numbers must be units mod p; such product actions are
    always free (each generator acts freely on its own factor).
    """
    require_odd_prime(p)
    n = len(r)
    if n < 2 or len(rprime) != n:
        raise InvalidDimension("need len(r) = len(rprime) = n >= 2")
    r = tuple(int(x) % p for x in r)
    rp = tuple(int(x) % p for x in rprime)
    if any(x == 0 for x in r) or any(x == 0 for x in rp):
        raise InvalidRotation("lens-space rotation numbers must be nonzero mod p")
    return validate(RotationData(p, n, r + (0,) * n, (0,) * n + rp))
