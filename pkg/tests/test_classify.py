import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import free_space_strategy
from lenspp.actions import RotationData, product_of_lens_spaces, validate
from lenspp.classify import (
    canonical_form,
    homeomorphic,
    homotopy_equivalent,
    lens_homotopy_equivalent,
    lens_simple_homotopy_equivalent,
    matching_substitutions,
    simple_homotopy_equivalent,
)
from lenspp.errors import (
    CapacityError,
    HypothesisViolation,
    InvalidRotation,
)
from lenspp.forms import k_invariant, substitute
from lenspp.gfp import Mat2, inv, is_quadratic_residue


def lens(p, r1, r2):
    return product_of_lens_spaces(p, (1, r1), (1, r2))


def test_reflexive_with_identity_witness():
    d = lens(5, 1, 1)
    v = homotopy_equivalent(d, d)
    assert v.equivalent
    assert v.witness.A == Mat2.identity(5)
    assert v.witness.B == Mat2.identity(5)


def test_qr_equivalent_pair():
    # +-(1*1)/(1*4) = +-4; 4 = 2^2 is a QR mod 5
    v = homotopy_equivalent(lens(5, 1, 1), lens(5, 1, 4))
    assert v.equivalent


def test_qr_inequivalent_pair():
    # +-1/2 = {3, 2} mod 5; QRs mod 5 are {1, 4}
    v = homotopy_equivalent(lens(5, 1, 1), lens(5, 1, 2))
    assert not v.equivalent
    assert v.witness is None
    assert v.checked_pairs > 0


def test_witness_transforms_source_k_to_target_k():
    X, Y = lens(5, 1, 1), lens(5, 1, 4)
    v = homotopy_equivalent(X, Y)
    kx, ky = k_invariant(X), k_invariant(Y)
    assert v.witness.verify(kx, ky)
    A, B = v.witness.A, v.witness.B
    sx = (substitute(kx.first, A), substitute(kx.second, A))
    b11, b12, b21, b22 = B.entries
    mixed_first = sx[0].scale(b11) + sx[1].scale(b12)
    mixed_second = sx[0].scale(b21) + sx[1].scale(b22)
    assert (mixed_first, mixed_second) == (ky.first, ky.second)


def test_symmetry_of_verdicts():
    pairs = [
        (lens(5, 1, 1), lens(5, 1, 4)),
        (lens(5, 1, 1), lens(5, 1, 2)),
        (lens(7, 1, 1), lens(7, 2, 2)),
    ]
    for X, Y in pairs:
        assert homotopy_equivalent(X, Y).equivalent == homotopy_equivalent(Y, X).equivalent


def test_simple_equals_homotopy_levels():
    X, Y = lens(7, 1, 1), lens(7, 2, 2)
    vh = homotopy_equivalent(X, Y)
    vs = simple_homotopy_equivalent(X, Y)
    assert vh.equivalent and vs.equivalent
    assert vs.level == "simple_homotopy"
    assert vh.level == "homotopy"


def test_homeomorphic_is_at_least_as_strong():
    X, Y = lens(5, 1, 1), lens(5, 1, 4)
    assert homeomorphic(X, Y).equivalent
    assert homeomorphic(X, Y).level == "homeomorphism"
    X2, Y2 = lens(5, 1, 1), lens(5, 1, 2)
    assert not homeomorphic(X2, Y2).equivalent


def test_different_p_or_n_not_equivalent():
    X = lens(5, 1, 1)
    Y = lens(7, 1, 1)
    v = homotopy_equivalent(X, Y)
    assert not v.equivalent
    assert v.checked_pairs == 0


def test_hypothesis_guard():
    X = product_of_lens_spaces(3, (1, 1), (1, 1))
    with pytest.raises(HypothesisViolation):
        homotopy_equivalent(X, X)


def test_freeness_guard():
    X = validate(RotationData(5, 2, (1, 0, 1, 0), (0, 1, 0, 1)))
    with pytest.raises(InvalidRotation):
        homotopy_equivalent(X, X)
    with pytest.raises(InvalidRotation):
        homeomorphic(X, X)


def test_marked_mode_restricts_substitution():
    X = lens(5, 1, 1)
    # unmarked: k = (a^2, b^2) vs (4a^2, b^2) has witness with A = diag(2,1)
    Y = validate(RotationData(5, 2, (2, 2, 0, 0), (0, 0, 1, 1)))
    assert homotopy_equivalent(X, Y).equivalent
    v = homotopy_equivalent(X, Y, marked=True)
    # k_Y = (4a^2, b^2); B = diag(4, 1) rescales without substitution
    assert v.equivalent
    assert v.witness.A == Mat2.identity(5)
    Z = lens(5, 1, 2)
    assert not homotopy_equivalent(X, Z, marked=True).equivalent


def test_marked_witnesses_fix_identity():
    X = lens(7, 1, 1)
    Y = lens(7, 2, 2)
    v = homotopy_equivalent(X, Y, marked=True)
    if v.equivalent:
        assert v.witness.A == Mat2.identity(7)


def test_canonical_form_examples():
    assert canonical_form(lens(5, 1, 1)) == canonical_form(lens(5, 4, 1))
    assert canonical_form(lens(5, 1, 1)) == canonical_form(lens(5, 1, 4))
    assert canonical_form(lens(5, 1, 1)) != canonical_form(lens(5, 1, 2))


def test_canonical_form_equals_homotopy_partition():
    spaces = [lens(5, r1, r2) for r1 in range(1, 5) for r2 in range(1, 5)]
    for X in spaces:
        for Y in spaces:
            same_key = canonical_form(X) == canonical_form(Y)
            assert same_key == homotopy_equivalent(X, Y).equivalent


def test_block_swap_is_an_equivalence():
    d = validate(RotationData(5, 2, (1, 2, 0, 0), (0, 0, 1, 3)))
    swapped = validate(
        RotationData(5, 2, d.R[2:] + d.R[:2], d.Q[2:] + d.Q[:2])
    )
    assert homotopy_equivalent(d, swapped).equivalent


def test_matching_substitutions_contains_inverse_orbits():
    X, Y = lens(5, 1, 1), lens(5, 1, 4)
    subs_xy = matching_substitutions(X, Y)
    subs_yx = matching_substitutions(Y, X)
    assert subs_xy
    inverses = {Mat2(5, a).inverse().entries for a in subs_xy}
    assert inverses == set(subs_yx)


def test_verdict_json_shape():
    v = homotopy_equivalent(lens(5, 1, 1), lens(5, 1, 4))
    doc = v.to_json()
    assert doc["equivalent"] is True
    assert doc["level"] == "homotopy"
    assert set(doc["witness"]) == {"A", "B"}
    assert isinstance(doc["checked_pairs"], int)


@settings(max_examples=60, deadline=None)
@given(free_space_strategy(5), st.data())
def test_homotopy_invariant_under_group_relabeling(d, data):
    """Replacing (R, Q) by another basis of their plane gives an equivalent
    space: the change of pi_1 identification is absorbed by the search."""
    p = d.p
    m = data.draw(
        st.sampled_from([(1, 1, 0, 1), (2, 0, 0, 1), (0, 1, 1, 0), (1, 2, 3, 2)])
    )
    det = (m[0] * m[3] - m[1] * m[2]) % p
    if det == 0:
        return
    R2 = tuple((m[0] * r + m[1] * q) % p for r, q in zip(d.R, d.Q))
    Q2 = tuple((m[2] * r + m[3] * q) % p for r, q in zip(d.R, d.Q))
    d2 = validate(RotationData(p, d.n, R2, Q2))
    assert homotopy_equivalent(d, d2).equivalent
    assert canonical_form(d) == canonical_form(d2)


@settings(max_examples=40, deadline=None)
@given(free_space_strategy(5), free_space_strategy(5))
def test_symmetric_witness_is_the_inverse_pair(d1, d2):
    v = homotopy_equivalent(d1, d2)
    w = homotopy_equivalent(d2, d1)
    assert v.equivalent == w.equivalent
    if v.equivalent:
        A_inv = v.witness.A.inverse()
        B_inv = v.witness.B.inverse()
        k1, k2 = k_invariant(d1), k_invariant(d2)
        sx = (substitute(k2.first, A_inv), substitute(k2.second, A_inv))
        b11, b12, b21, b22 = B_inv.entries
        assert (
            sx[0].scale(b11) + sx[1].scale(b12),
            sx[0].scale(b21) + sx[1].scale(b22),
        ) == (k1.first, k1.second)


def test_lens_homotopy_examples():
    assert lens_homotopy_equivalent(7, 2, (1, 1), (1, 2))
    assert lens_homotopy_equivalent(7, 2, (1, 3), (1, 3))
    assert not lens_homotopy_equivalent(5, 2, (1, 1), (1, 2))


def test_lens_simple_examples():
    assert not lens_simple_homotopy_equivalent(7, 2, (1, 1), (1, 2))
    assert lens_simple_homotopy_equivalent(7, 2, (1, 3), (1, 3))
    assert lens_simple_homotopy_equivalent(7, 2, (2, 2), (1, 1))


def test_lens_guards():
    with pytest.raises(InvalidRotation):
        lens_homotopy_equivalent(5, 2, (1, 0), (1, 1))
    with pytest.raises(CapacityError):
        lens_simple_homotopy_equivalent(5, 9, (1,) * 9, (1,) * 9)


def test_lens_square_criterion_cross_oracle():
    """t^2 r = +-r' has a solution iff r'/r or -r'/r is a QR."""
    for p in (5, 7, 11):
        for r in range(1, p):
            for rp in range(1, p):
                ratio = rp * inv(r, p) % p
                classical = is_quadratic_residue(ratio, p) or is_quadratic_residue(
                    (p - ratio) % p, p
                )
                assert lens_homotopy_equivalent(p, 2, (1, r), (1, rp)) == classical


def test_lens_simple_implies_homotopy():
    p = 7
    for r in itertools.product(range(1, p), repeat=2):
        for rp in itertools.product(range(1, p), repeat=2):
            if lens_simple_homotopy_equivalent(p, 2, r, rp):
                assert lens_homotopy_equivalent(p, 2, r, rp)
