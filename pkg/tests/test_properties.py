"""Cross-cutting invariants: scaling, symmetry, bounds."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hammocknet import (
    GridNode,
    HammockSpec,
    reconstruct_currents,
    kirchhoff_residual,
    resistance_general,
    resistance_rt,
    resistance_spectral,
)

from _util import interior_pairs, rel_dev, specs_upto

small_specs = st.builds(
    HammockSpec,
    rows=st.integers(1, 6),
    cols=st.integers(1, 6),
    r=st.floats(0.1, 10.0, allow_nan=False),
    s=st.floats(0.1, 10.0, allow_nan=False),
)


@st.composite
def spec_and_pair(draw):
    spec = draw(small_specs)
    node = st.builds(GridNode, x=st.integers(1, spec.cols),
                     y=st.integers(1, spec.rows))
    return spec, draw(node), draw(node)


@settings(max_examples=60, deadline=None)
@given(spec_and_pair(), st.floats(0.01, 100.0, allow_nan=False))
def test_homogeneity(case, scale):
    # scaling both resistances scales the resistance, ratio unchanged
    spec, a, b = case
    scaled = HammockSpec(spec.rows, spec.cols, r=scale * spec.r, s=scale * spec.s)
    base = resistance_general(spec, a, b).ohms
    assert resistance_general(scaled, a, b).ohms == pytest.approx(
        scale * base, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(spec_and_pair())
def test_methods_agree(case):
    spec, a, b = case
    values = [resistance_general(spec, a, b).ohms,
              resistance_spectral(spec, a, b).ohms,
              resistance_rt(spec, a, b).ohms]
    assert rel_dev(values) < 1e-10


@settings(max_examples=40, deadline=None)
@given(spec_and_pair())
def test_vertical_mirror(case):
    # flipping both heights (hub swap) is a graph automorphism
    spec, a, b = case
    flipped_a = GridNode(a.x, spec.rows + 1 - a.y)
    flipped_b = GridNode(b.x, spec.rows + 1 - b.y)
    original = resistance_general(spec, a, b).ohms
    mirrored = resistance_general(spec, flipped_a, flipped_b).ohms
    assert mirrored == pytest.approx(original, rel=1e-12, abs=1e-300)


@settings(max_examples=40, deadline=None)
@given(spec_and_pair())
def test_horizontal_mirror(case):
    spec, a, b = case
    flipped_a = GridNode(spec.cols + 1 - a.x, a.y)
    flipped_b = GridNode(spec.cols + 1 - b.x, b.y)
    original = resistance_general(spec, a, b).ohms
    mirrored = resistance_general(spec, flipped_a, flipped_b).ohms
    assert mirrored == pytest.approx(original, rel=1e-12, abs=1e-300)


def test_exchange_bitwise_exhaustive():
    for spec in specs_upto(3, 3, rs=[(1.0, 1.0), (2.0, 0.5)]):
        for a, b in interior_pairs(spec):
            assert resistance_general(spec, a, b).ohms == \
                resistance_general(spec, b, a).ohms
            assert resistance_rt(spec, a, b).ohms == resistance_rt(spec, b, a).ohms


def test_positivity_and_series_bound():
    # a monotone staircase of links bounds the resistance from above;
    # the bound is attained only on single-column chains
    for spec in specs_upto(4, 4, rs=[(1.0, 1.0), (2.0, 1.0), (1.0, 3.0)]):
        for a, b in interior_pairs(spec):
            value = resistance_general(spec, a, b).ohms
            bound = float(spec.r) * abs(b.x - a.x) + float(spec.s) * abs(b.y - a.y)
            assert value > 0.0
            if spec.cols == 1:
                assert value == pytest.approx(bound, rel=1e-12)
            else:
                assert value < bound


@settings(max_examples=25, deadline=None)
@given(spec_and_pair(), st.floats(-5.0, 5.0, allow_nan=False))
def test_field_conservation(case, injected):
    spec, a, b = case
    field = reconstruct_currents(spec, a, b, injected)
    assert kirchhoff_residual(field) <= 1e-10 * max(abs(injected), 1e-30)


def test_million_scale_finite_and_consistent():
    # log-domain evaluation holds up to ~1e6 rows or columns
    wide = HammockSpec(10, 1_000_000)
    tall = HammockSpec(1_000_000, 10)
    for spec, a, b in [(wide, (3, 2), (999_998, 9)),
                       (tall, (2, 17), (9, 999_000))]:
        closed = resistance_general(spec, a, b).ohms
        recurr = resistance_rt(spec, a, b).ohms
        assert np.isfinite(closed) and closed > 0.0
        assert rel_dev([closed, recurr]) < 1e-10


def test_mirror_exhaustive_small():
    for spec in specs_upto(3, 3):
        for a, b in interior_pairs(spec, distinct=False):
            original = resistance_general(spec, a, b).ohms
            vert = resistance_general(
                spec, GridNode(a.x, spec.rows + 1 - a.y),
                GridNode(b.x, spec.rows + 1 - b.y)).ohms
            horiz = resistance_general(
                spec, GridNode(spec.cols + 1 - a.x, a.y),
                GridNode(spec.cols + 1 - b.x, b.y)).ohms
            scale = max(original, 1e-300)
            assert abs(vert - original) / scale < 1e-12
            assert abs(horiz - original) / scale < 1e-12
