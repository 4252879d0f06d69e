import json
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qembed import models as M
from qembed.linalg import QuatMatrix, complexify
from qembed.models import (Classical, DirectSum, EffectVector, ModelError, ModelParseError, Polyhedral,
                           Quantum, Spin, StateVector)

CATALOG = [Classical(1), Classical(3), Quantum("complex", 2), Quantum("complex", 3),
           Quantum("real", 2), Quantum("real", 3), Quantum("quaternion", 1), Quantum("quaternion", 2),
           Spin(2), Spin(3), Spin(5), DirectSum((Classical(2), Spin(3))),
           DirectSum((Quantum("complex", 2), Quantum("real", 2)))]
ALL = CATALOG + [M.gbit()]


def _id(m):
    return json.dumps(M.model_to_dict(m), separators=(",", ":"))[:60]


# -- dimensions and units ------------------------------------------------------

@pytest.mark.parametrize("m, dim", [
    (Quantum("complex", 2), 4), (Spin(3), 4), (DirectSum((Classical(2), Spin(2))), 5),
    (Classical(5), 5), (Quantum("real", 3), 6), (Quantum("quaternion", 2), 6),
    (Quantum("quaternion", 3), 15), (M.gbit(), 3),
])
def test_ambient_dim(m, dim):
    assert M.ambient_dim(m) == dim


def test_unit_effects():
    assert np.array_equal(M.unit_effect(Classical(3)), [1, 1, 1])
    assert np.array_equal(M.unit_effect(Spin(4)), [1, 0, 0, 0, 0])
    q = Quantum("complex", 3)
    assert np.allclose(M.to_matrix(q, M.unit_effect(q)), np.eye(3))
    h = Quantum("quaternion", 2)
    assert np.allclose(complexify(M.to_matrix(h, M.unit_effect(h))), np.eye(4))


@pytest.mark.parametrize("m", ALL, ids=_id)
def test_unit_pairs_to_one_with_states(m, rng):
    u = M.unit_effect(m)
    for _ in range(30):
        assert M.pairing(m, M.sample_state(m, rng), u) == pytest.approx(1.0, abs=1e-12)


# -- membership examples ----------------------------------------------------------

def test_membership_examples():
    assert M.contains_effect(Classical(2), [0.2, 0.0])
    assert not M.contains_effect(Classical(2), [0.2, -0.1])
    assert M.contains_effect(Spin(3), [1, 0, 0, 1])
    assert not M.contains_effect(Spin(3), [1, 0, 0, 1.01])
    assert not M.contains_effect(M.gbit(), [0.5, 0.5, 0.5])
    assert M.contains_effect(M.gbit(), [1, 0, 0])


def test_dimension_mismatch():
    with pytest.raises(ModelError):
        M.contains_effect(Classical(2), [1, 2, 3])
    with pytest.raises(ModelError):
        EffectVector(Spin(2), np.zeros(2))


def test_pairing_examples():
    assert M.pairing(Classical(2), [0.3, 0.7], [1, 0]) == pytest.approx(0.3)
    assert M.pairing(Spin(3), [1, 0, 0, 1], [1, 0, 0, 1]) == pytest.approx(2.0)
    omega = StateVector(Classical(2), [0.3, 0.7])
    assert omega.is_normalized()
    assert not StateVector(Classical(2), [0.3, 0.6]).is_normalized()


def _gbit_exact(v):
    # cone(e1..e4) = {(s, x, y): s >= |x| + |y|}, checked in exact arithmetic
    s, x, y = (Fraction(t) for t in v)
    return s >= abs(x) + abs(y)


def test_gbit_membership_matches_exact_oracle():
    grid = [Fraction(k, 4) for k in range(-4, 5)]
    g = M.gbit()
    for s, x, y in product([Fraction(1, 2), Fraction(1), Fraction(3, 2)], grid, grid):
        v = (float(s), float(x), float(y))
        assert M.contains_effect(g, v) == _gbit_exact(v), v


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.fractions(-2, 2, max_denominator=16)] * 3))
def test_gbit_membership_property(v):
    g = M.gbit()
    # stay clear of the boundary where float tolerance decides
    s, x, y = v
    if abs(s - abs(x) - abs(y)) < Fraction(1, 10**6):
        return
    assert M.contains_effect(g, tuple(float(t) for t in v)) == _gbit_exact(v)


def test_gbit_states_are_square_corners():
    states = M.extreme_states(M.gbit())
    corners = {tuple(np.round(s, 12)) for s in states}
    assert corners == {(1.0, x, y) for x in (-1.0, 1.0) for y in (-1.0, 1.0)}


# -- samplers --------------------------------------------------------------------------

@pytest.mark.parametrize("m", ALL, ids=_id)
def test_samplers_land_in_cones(m, rng):
    for _ in range(40):
        e = M.sample_effect(m, rng)
        w = M.sample_state(m, rng)
        assert M.cone_violation(m, e) <= 1e-12
        assert M.state_violation(m, w) <= 1e-12
        assert M.pairing(m, w, e) >= -1e-10


@pytest.mark.parametrize("m", ALL, ids=_id)
def test_samples_span_ambient_space(m, rng):
    dim = M.ambient_dim(m)
    eff = np.array([M.sample_effect(m, rng) for _ in range(3 * dim + 3)])
    st_ = np.array([M.sample_state(m, rng) for _ in range(3 * dim + 3)])
    assert np.linalg.matrix_rank(eff) == dim
    assert np.linalg.matrix_rank(st_) == dim


def test_spin_square_am_gm():
    rng = np.random.default_rng(3)
    m = Spin(4)
    from qembed.jordan import square
    for _ in range(50):
        t, x = rng.standard_normal(), rng.standard_normal(4)
        sq = square(m, np.concatenate([[t], x]))
        assert np.allclose(sq, np.concatenate([[t * t + x @ x], 2 * t * x]))
        assert np.linalg.norm(sq[1:]) <= sq[0] + 1e-12


@pytest.mark.parametrize("m", CATALOG, ids=_id)
def test_unit_is_interior(m, rng):
    u = M.unit_effect(m)
    for _ in range(50):
        e = M.sample_effect(m, rng)
        assert M.contains_effect(m, u - 1e-3 * e / np.linalg.norm(e), tol=0.0)


def test_direct_sum_membership_is_conjunction(rng):
    parts = (Quantum("complex", 2), Spin(3), Classical(2))
    m = DirectSum(parts)
    for _ in range(100):
        v = rng.standard_normal(M.ambient_dim(m)) + 0.8 * M.unit_effect(m)
        expected = all(M.contains_effect(s, p) for s, p in zip(parts, M.split(m, v)))
        assert M.contains_effect(m, v) == expected


# -- coordinates ---------------------------------------------------------------------

@pytest.mark.parametrize("field, n", [("real", 3), ("complex", 3), ("quaternion", 2)])
def test_coordinates_are_isometric(field, n, rng):
    m = Quantum(field, n)
    for _ in range(20):
        a, b = rng.standard_normal((2, M.ambient_dim(m)))
        x, y = M.complex_matrix(m, a), M.complex_matrix(m, b)
        scale = 2.0 if field == "quaternion" else 1.0
        assert np.trace(x @ y).real == pytest.approx(scale * (a @ b))
        assert np.allclose(M.from_matrix(m, M.to_matrix(m, a)), a)


def test_quaternion_coordinates_roundtrip(rng):
    d = rng.standard_normal((3, 3, 4))
    q = QuatMatrix(d)
    h = (q + q.H) * 0.5
    assert np.allclose(M.coords_to_quat(M.quat_to_coords(h), 3).data, h.data)


# -- spin(1), polyhedral validation -------------------------------------------------

def test_spin_one_normalizes_to_classical_bit():
    assert M.spin_factor(1) == Classical(2)
    assert M.spin_factor(3) == Spin(3)
    assert M.parse_model_text('{"type": "spin", "d": 1}') == Classical(2)
    with pytest.raises(ModelError):
        Spin(1)


@pytest.mark.parametrize("rays, msg", [
    ([[1, 0], [0, 0]], "nonzero"),
    ([[1, 1, 0], [1, 0, 1]], "span"),
    ([[1, 0], [-1, 0], [0, 1]], "pointed"),
])
def test_validate_polyhedral_errors(rays, msg):
    dim = len(rays[0])
    unit = [1.0] + [0.0] * (dim - 1)
    with pytest.raises(ModelError, match=msg):
        M.validate_polyhedral(Polyhedral(dim, unit, rays))


def test_unit_outside_cone():
    with pytest.raises(ModelError, match="unit"):
        M.validate_polyhedral(Polyhedral(2, (-1.0, 0.0), ((1, 0), (0, 1))))


def test_invalid_counts():
    for bad in (lambda: Classical(0), lambda: Quantum("complex", 0), lambda: Quantum("octonion", 2),
                lambda: DirectSum(())):
        with pytest.raises(ModelError):
            bad()


# -- JSON ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", ALL, ids=_id)
def test_json_roundtrip(m):
    text = json.dumps(M.model_to_dict(m))
    assert M.parse_model_text(text) == m


def test_parse_schema_examples():
    m = M.parse_model_text('{"type":"direct_sum","summands":[{"type":"quantum","field":"complex","n":3},'
                           '{"type":"spin","d":4}]}')
    assert m == DirectSum((Quantum("complex", 3), Spin(4)))
    g = M.parse_model_text('{"type":"polyhedral","dim":3,"unit":[1,0,0],"extreme_effects":'
                           '[[0.5,0.5,0],[0.5,-0.5,0],[0.5,0,0.5],[0.5,0,-0.5]]}')
    assert g == M.gbit()


@pytest.mark.parametrize("text, line, fragment", [
    ('{\n  "type": "quantum",\n  "field": "complex"\n}', 2, "missing field 'n'"),
    ('{"type": "Quantum", "field": "complex", "n": 2}', 1, "unknown model type"),
    ('{\n"type": "classical",\n"n": "3"\n}', 3, "expected an integer"),
    ('{\n"type": "classical",\n"n": 3,\n}', 4, ""),
    ('[1, 2]', 1, "expected an object"),
])
def test_parse_errors_have_line_numbers(text, line, fragment):
    with pytest.raises(ModelParseError) as info:
        M.parse_model_text(text, "m.json")
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"m.json:{line}:")
