"""State/configuration conversions, rotations, clustering, JSON forms."""
import json
import math

import numpy as np
import pytest

from majorana import (
    MajoranaConfig,
    Rotation,
    SchemaError,
    SymmetricState,
    cluster_directions,
    coherent_amplitudes,
    config_close,
    make_state,
    overlap_product,
    pairwise_angles,
    parse_json_text,
    random_symmetric_state,
    rotate,
    rotate_state,
    state_fidelity,
    to_dicke,
    to_json_dict,
    to_json_text,
    to_majorana,
)
from majorana.symstate import binomial_weights

from helpers import perturb_config, random_rotation


def test_binomial_weights_match_comb():
    for n in (1, 4, 9, 30):
        expected = [math.comb(n, k) for k in range(n + 1)]
        np.testing.assert_allclose(binomial_weights(n) ** 2, expected, rtol=1e-13)


def test_state_validation():
    with pytest.raises(ValueError):
        SymmetricState(3, np.zeros(4))
    with pytest.raises(ValueError):
        SymmetricState(3, np.ones(3))
    with pytest.raises(ValueError):
        SymmetricState(0, np.ones(1))
    s = make_state([3.0, 4.0])
    assert abs(np.linalg.norm(s.amps) - 1.0) < 1e-14


def test_state_amplitudes_frozen():
    s = make_state([1.0, 0.0, 1.0])
    with pytest.raises(ValueError):
        s.amps[0] = 5.0


def test_ghz3_points_form_equatorial_triangle():
    ghz = make_state([1.0, 0.0, 0.0, 1.0])
    cfg = to_majorana(ghz)
    thetas = cfg.points[:, 0]
    np.testing.assert_allclose(thetas, np.pi / 2, atol=1e-12)
    phis = np.sort(cfg.points[:, 1])
    np.testing.assert_allclose(np.diff(phis), 2 * np.pi / 3, atol=1e-12)


def test_dicke_points_split_between_poles():
    # k zero roots at the south pole, n-k infinite roots at the north pole
    amps = np.zeros(6)
    amps[2] = 1.0
    cfg = to_majorana(SymmetricState(5, amps))
    north = np.sum(cfg.points[:, 0] == 0.0)
    south = np.sum(cfg.points[:, 0] == np.pi)
    assert north == 3 and south == 2


def test_round_trip_preserves_phase():
    rng = np.random.default_rng(3)
    for n in (1, 2, 5, 11, 17):
        for _ in range(5):
            state = random_symmetric_state(n, rng)
            back = to_dicke(to_majorana(state))
            np.testing.assert_allclose(back.amps, state.amps, atol=1e-9)


def test_config_round_trip():
    rng = np.random.default_rng(11)
    for n in (2, 4, 7):
        points = np.column_stack([np.arccos(rng.uniform(-1, 1, n)),
                                  rng.uniform(0, 2 * np.pi, n)])
        cfg = MajoranaConfig(n, points)
        again = to_majorana(to_dicke(cfg))
        assert config_close(cfg, again, tol=1e-8)


def test_degree_cap():
    # construction alone is fine; only the conversions are capped
    state = random_symmetric_state(65, np.random.default_rng(0))
    with pytest.raises(ValueError):
        to_majorana(state)


def test_rotate_matches_direct_construction():
    rng = np.random.default_rng(8)
    state = random_symmetric_state(6, rng)
    cfg = to_majorana(state)
    rot = random_rotation(rng)
    rotated = rotate(cfg, rot)
    expected = cfg.unit_vectors() @ rot.matrix().T
    got = rotated.unit_vectors()
    # compare as multisets of directions
    cost = got @ expected.T
    assert np.all(np.max(cost, axis=0) > 1.0 - 1e-12)


def test_rotate_state_preserves_fidelity_structure():
    rng = np.random.default_rng(21)
    state = random_symmetric_state(5, rng)
    rot = random_rotation(rng)
    rotated = rotate_state(state, rot)
    # rotation is unitary on the symmetric subspace
    assert abs(np.linalg.norm(rotated.amps) - 1.0) < 1e-12
    back = rotate_state(rotated, rot.inverse())
    assert state_fidelity(back, state) > 1.0 - 1e-12


def test_rotation_compose_inverse():
    rng = np.random.default_rng(5)
    a, b = random_rotation(rng), random_rotation(rng)
    ab = a.compose(b)
    v = rng.normal(size=3)
    np.testing.assert_allclose(ab.apply(v), a.apply(b.apply(v)), atol=1e-12)
    ident = a.compose(a.inverse())
    np.testing.assert_allclose(ident.matrix(), np.eye(3), atol=1e-12)
    again = Rotation.from_matrix(a.matrix())
    np.testing.assert_allclose(again.matrix(), a.matrix(), atol=1e-12)


def test_coherent_amplitudes_dicke_overlap():
    # equatorial coherent state against the balanced four-qubit Dicke state
    amps = np.zeros(5)
    amps[2] = 1.0
    overlap = overlap_product(SymmetricState(4, amps), np.pi / 2, 0.0)
    assert abs(abs(overlap) - 0.6123724356957945) < 1e-12


def test_coherent_amplitudes_normalized():
    rng = np.random.default_rng(2)
    for _ in range(5):
        theta = rng.uniform(0, np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        coh = coherent_amplitudes(7, theta, phi)
        assert abs(np.linalg.norm(coh) - 1.0) < 1e-12


def test_pole_coherent_overlap_reads_off_amplitude():
    state = make_state([1.0, 0.0, 0.0, 1.0])
    assert abs(overlap_product(state, 0.0, 0.0) - state.amps[0]) < 1e-14
    assert abs(abs(overlap_product(state, np.pi, 0.0)) - abs(state.amps[3])) < 1e-14


def test_pairwise_angles_and_clusters():
    points = np.array([[0.0, 0.0], [1e-9, 1.0], [np.pi / 2, 0.0], [np.pi, 0.0]])
    cfg = MajoranaConfig(4, points)
    vecs = cfg.unit_vectors()
    angles = pairwise_angles(vecs)
    assert angles.shape == (4, 4)
    assert abs(angles[0, 3] - np.pi) < 1e-12
    clusters = cluster_directions(vecs, tol=1e-6)
    sizes = sorted(len(c) for c in clusters)
    assert sizes == [1, 1, 2]


def test_cluster_chain_linkage():
    # points spaced just under tol chain into one cluster
    thetas = np.array([0.0, 8e-7, 1.6e-6])
    points = np.column_stack([thetas, np.zeros(3)])
    clusters = cluster_directions(MajoranaConfig(3, points).unit_vectors(), tol=1e-6)
    assert len(clusters) == 1


def test_config_close_permutation_and_perturbation():
    rng = np.random.default_rng(13)
    points = np.column_stack([np.arccos(rng.uniform(-1, 1, 5)),
                              rng.uniform(0, 2 * np.pi, 5)])
    cfg = MajoranaConfig(5, points)
    shuffled = MajoranaConfig(5, points[rng.permutation(5)])
    assert config_close(cfg, shuffled, tol=1e-10)
    nudged = perturb_config(cfg, 2, 1e-3)
    assert not config_close(cfg, nudged, tol=1e-5)
    assert config_close(cfg, nudged, tol=1e-2)


def test_config_equality_ignores_phase():
    points = np.array([[0.5, 0.5], [1.0, 1.0]])
    assert MajoranaConfig(2, points, 0.3) == MajoranaConfig(2, points, 2.9)


def test_json_round_trip_both_forms():
    rng = np.random.default_rng(17)
    state = random_symmetric_state(4, rng)
    again = parse_json_text(to_json_text(state))
    assert isinstance(again, SymmetricState)
    np.testing.assert_allclose(again.amps, state.amps, atol=1e-15)

    cfg = to_majorana(state)
    again = parse_json_text(to_json_text(cfg))
    assert isinstance(again, MajoranaConfig)
    assert config_close(cfg, again, tol=1e-12)
    assert abs(again.global_phase - cfg.global_phase) < 1e-12


def test_json_schema_errors_carry_paths():
    with pytest.raises(SchemaError) as err:
        parse_json_text("{not json")
    assert err.value.path == "$"

    with pytest.raises(SchemaError) as err:
        parse_json_text(json.dumps({"n": 2}))
    assert err.value.path == "$"

    with pytest.raises(SchemaError) as err:
        parse_json_text(json.dumps({"n": -1, "dicke": []}))
    assert err.value.path == "$.n"

    payload = {"n": 2, "dicke": [{"re": 1, "im": 0}, {"re": 0, "im": 0},
                                 {"re": 0, "im": "x"}]}
    with pytest.raises(SchemaError) as err:
        parse_json_text(json.dumps(payload))
    assert err.value.path == "$.dicke[2].im"

    payload = {"n": 1, "majorana": [{"theta": 0.1}], "phase": 0.0}
    with pytest.raises(SchemaError) as err:
        parse_json_text(json.dumps(payload))
    assert err.value.path == "$.majorana[0].phi"

    both = {"n": 1, "dicke": [{"re": 1, "im": 0}, {"re": 0, "im": 0}],
            "majorana": [{"theta": 0.0, "phi": 0.0}], "phase": 0.0}
    with pytest.raises(SchemaError):
        parse_json_text(json.dumps(both))


def test_json_dict_shapes():
    state = make_state([1.0, 2.0])
    d = to_json_dict(state)
    assert set(d) == {"n", "dicke"}
    cfg = to_majorana(state)
    d = to_json_dict(cfg)
    assert set(d) == {"n", "majorana", "phase"}
