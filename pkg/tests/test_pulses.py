"""Pulse train bookkeeping: normalization, segment momenta, phases, drift."""

import numpy as np
import pytest

from pairtrain.kinematics import PhotonProbe, SpectrumPoint
from pairtrain.pulses import (
    Jump,
    PulseTrain,
    accumulated_phases,
    classical_drift,
    normalize_train,
    segment_momenta,
)

HEAD_ON = PhotonProbe()


def _random_train(rng, max_jumps=4):
    n = int(rng.integers(1, max_jumps + 1))
    xs = np.sort(rng.uniform(-2.0, 2.0, size=n)) + 0.1 * np.arange(n)
    jumps = []
    for k in range(n):
        da = rng.uniform(-3.0, 3.0, size=2)
        if abs(da[0]) + abs(da[1]) < 1e-3:
            da = np.array([1.0, 0.0])
        jumps.append((float(xs[k]), (float(da[0]), float(da[1]))))
    return normalize_train(jumps)


def test_normalize_sorts():
    train = normalize_train([(1.0, (1.0, 0.0)), (-1.0, (0.0, 1.0))])
    assert np.array_equal(train.positions, [-1.0, 1.0])
    assert np.array_equal(train.deltas, [[0.0, 1.0], [1.0, 0.0]])


def test_normalize_merges_coincident():
    train = normalize_train([(1.0, (1.0, 0.0)), (1.0, (2.0, 0.5)), (0.0, (1.0, 1.0))])
    assert len(train) == 2
    assert train.jumps[1].x == 1.0
    assert train.jumps[1].da == (3.0, 0.5)


def test_normalize_drops_vanishing():
    train = normalize_train([(0.0, (1.0, 0.0)), (0.5, (0.0, 0.0)), (2.0, (1.0, 1.0))])
    assert np.array_equal(train.positions, [0.0, 2.0])
    empty = normalize_train([(1.0, (1.0, 0.0)), (1.0, (-1.0, 0.0))])
    assert len(empty) == 0
    assert empty.max_offset() == 0.0


def test_normalize_is_order_independent():
    rng = np.random.default_rng(21)
    jumps = [(float(x), (float(d1), float(d2)))
             for x, d1, d2 in rng.uniform(-2.0, 2.0, size=(6, 3))]
    base = normalize_train(jumps)
    for _ in range(10):
        rng.shuffle(jumps)
        again = normalize_train(jumps)
        assert np.array_equal(again.positions, base.positions)
        assert np.array_equal(again.deltas, base.deltas)


def test_direct_construction_accepts_pairs():
    train = PulseTrain(((0.0, (1.0, 0.0)), Jump(1.0, (0.0, 2.0))))
    assert len(train) == 2
    assert train.jumps[0] == Jump(0.0, (1.0, 0.0))


def test_construction_errors():
    with pytest.raises(ValueError, match="strictly increasing"):
        PulseTrain(((1.0, (1.0, 0.0)), (0.0, (1.0, 0.0))))
    with pytest.raises(ValueError, match="strictly increasing"):
        PulseTrain(((1.0, (1.0, 0.0)), (1.0, (2.0, 0.0))))
    with pytest.raises(ValueError, match="carry no pulse"):
        PulseTrain(((1.0, (0.0, 0.0)),))
    with pytest.raises(ValueError, match="position must be finite"):
        Jump(float("nan"), (1.0, 0.0))
    with pytest.raises(ValueError, match="da must be a 2-vector"):
        Jump(0.0, (1.0, 0.0, 0.0))


def test_cumulative_values_and_offsets():
    train = normalize_train([(-1.0, (1.0, 0.0)), (0.0, (0.0, 2.0)), (3.0, (-1.0, 0.0))])
    assert np.array_equal(train.a_values, [[0, 0], [1, 0], [1, 2], [0, 2]])
    assert np.array_equal(train.offsets, [[0, 2], [-1, 2], [-1, 0], [0, 0]])
    assert train.max_offset() == float(np.sqrt(5.0))


def test_segment_momenta_explicit():
    train = normalize_train([(-1.0, (1.0, 0.0)), (0.0, (0.0, 2.0)), (3.0, (-1.0, 0.0))])
    table = segment_momenta(train, HEAD_ON, SpectrumPoint(0.5, (1.0, 1.0)))
    assert np.array_equal(table.piperp, [[1, -1], [2, -1], [2, 1], [1, 1]])
    assert np.array_equal(table.lam, [3.0, 6.0, 6.0, 3.0])
    assert np.array_equal(table.piperp[-1], [1.0, 1.0])


def test_segment_momenta_empty_train():
    table = segment_momenta(normalize_train([]), HEAD_ON, SpectrumPoint(0.5, (2.0, 0.0)))
    assert table.piperp.shape == (1, 2)
    assert float(table.lam[0]) == 5.0


def test_phases_frozen_pair():
    train = normalize_train([(-1.0, (-5.0, 0.0)), (1.0, (5.0, 0.0))])
    phi = accumulated_phases(train, HEAD_ON, SpectrumPoint(0.5))
    assert phi.tolist() == [0.0, 104.0]


def test_phases_single_and_empty():
    single = normalize_train([(0.3, (2.0, 0.0))])
    assert accumulated_phases(single, HEAD_ON, SpectrumPoint(0.4)).tolist() == [0.0]
    empty = normalize_train([])
    assert accumulated_phases(empty, HEAD_ON, SpectrumPoint(0.4)).shape == (0,)


def test_phases_strictly_increase():
    rng = np.random.default_rng(22)
    for _ in range(100):
        train = _random_train(rng)
        point = SpectrumPoint(rng.uniform(0.1, 0.9), tuple(rng.uniform(-5, 5, 2)))
        phi = accumulated_phases(train, HEAD_ON, point)
        assert phi[0] == 0.0
        assert np.all(np.diff(phi) > 0.0)


def test_phases_dyadic_shift_bitwise():
    # dyadic positions and a dyadic shift keep every difference exact
    train = normalize_train([(-1.0, (1.0, 0.5)), (0.5, (0.5, 0.0)), (2.0, (-1.0, 1.0))])
    shifted = normalize_train([(x + 0.25, tuple(da)) for x, da in
                               zip(train.positions, train.deltas)])
    point = SpectrumPoint(0.3, (0.7, -0.2))
    probe = PhotonProbe(lperp=(0.4, 0.1))
    a = accumulated_phases(train, probe, point)
    b = accumulated_phases(shifted, probe, point)
    assert np.array_equal(a, b)


def test_phases_generic_shift():
    rng = np.random.default_rng(23)
    for _ in range(100):
        train = _random_train(rng)
        shift = rng.uniform(-10.0, 10.0)
        shifted = normalize_train([(float(x) + shift, (float(d[0]), float(d[1])))
                                   for x, d in zip(train.positions, train.deltas)])
        point = SpectrumPoint(rng.uniform(0.1, 0.9), tuple(rng.uniform(-5, 5, 2)))
        a = accumulated_phases(train, HEAD_ON, point)
        b = accumulated_phases(shifted, HEAD_ON, point)
        assert np.all(np.abs(a - b) <= 1e-9 * np.maximum(1.0, np.abs(a)))


def test_drift_frozen_value():
    train = normalize_train([(-1.0, (-5.0, 0.0)), (1.0, (5.0, 0.0))])
    assert classical_drift(train, HEAD_ON, SpectrumPoint(0.5), 0, 1) == 52.0


def test_drift_matches_phases():
    rng = np.random.default_rng(24)
    for _ in range(100):
        train = _random_train(rng)
        probe = PhotonProbe(lperp=tuple(rng.uniform(-1.0, 1.0, 2)))
        point = SpectrumPoint(rng.uniform(0.1, 0.9), tuple(rng.uniform(-5, 5, 2)))
        phi = accumulated_phases(train, probe, point)
        scale = float(rng.uniform(0.1, 10.0))
        for i in range(len(train)):
            for j in range(i, len(train)):
                want = 0.5 * (phi[j] - phi[i])
                got = classical_drift(train, probe, point, i, j, scale=scale)
                assert abs(got - want) <= 1e-12 * max(abs(want), 1.0)


def test_drift_empty_range_is_zero():
    train = normalize_train([(-1.0, (1.0, 0.0)), (2.0, (0.0, 1.0))])
    point = SpectrumPoint(0.25, (0.3, 0.1))
    assert classical_drift(train, HEAD_ON, point, 0, 0) == 0.0
    assert classical_drift(train, HEAD_ON, point, 1, 1) == 0.0


def test_drift_argument_errors():
    train = normalize_train([(-1.0, (1.0, 0.0)), (2.0, (0.0, 1.0))])
    point = SpectrumPoint(0.25)
    with pytest.raises(ValueError, match="need 0 <= i <= j"):
        classical_drift(train, HEAD_ON, point, 1, 0)
    with pytest.raises(ValueError, match="need 0 <= i <= j"):
        classical_drift(train, HEAD_ON, point, 0, 2)
    with pytest.raises(ValueError, match="need 0 <= i <= j"):
        classical_drift(train, HEAD_ON, point, -1, 1)
    with pytest.raises(ValueError, match="scale must be positive"):
        classical_drift(train, HEAD_ON, point, 0, 1, scale=0.0)
