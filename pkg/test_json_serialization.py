#!/usr/bin/env python
"""Test JSON serialization of fixed-point records, audit reports and trajectories"""

import json
import math

from bracketflow.flow import FlowParameters, integrate
from bracketflow.normalized import m_fixed_points
from bracketflow.soliton import enumerate_analytic, newton_sweep, paper_table_check


def _round_trip(payload):
    # allow_nan=False: NaN/inf must never reach the wire
    return json.loads(json.dumps(payload, allow_nan=False))


def test_records_serialize():
    for alpha in (1.0, -1.0, 0.0):
        for record in enumerate_analytic(alpha):
            data = _round_trip(record.to_dict())
            assert data['constants'] == list(record.sc)
            assert isinstance(data['parabolic'], bool)
            assert data['family'] in ('Isolated', 'OneParameterFamily')
            assert data['provenance'] == 'Analytic'


def test_sweep_records_serialize():
    for record in newton_sweep(-1.0, grid=(-2.0, 2.0, 1.0)):
        data = _round_trip(record.to_dict())
        assert data['provenance'] == 'Newton'
        assert data['residual'] < 1e-10


def test_audit_serializes():
    report = _round_trip(paper_table_check())
    assert [entry['row'] for entry in report] == list(range(1, 8))
    for entry in report:
        assert len(entry['per_axis']) == 3
        assert [axis['axis'] for axis in entry['per_axis']] == [1, 2, 3]
        assert isinstance(entry['sectional_matches'], bool)
        assert entry['rescaled_alpha'] is None or isinstance(entry['rescaled_alpha'], float)
    assert report[6]['alpha_ratio'] is None


def test_trajectory_serializes():
    trajectory = integrate((1, 2, -0.5), FlowParameters(alpha=0.2, t_end=0.05))
    data = _round_trip(trajectory.to_dict())
    assert data['termination'] == 'ReachedEnd'
    assert len(data['samples']) == len(trajectory)
    assert data['samples'][0] == {'t': 0.0, 'state': [1.0, 2.0, -0.5]}
    t0, sc0 = trajectory.samples[0]
    assert t0 == 0.0 and tuple(sc0) == (1.0, 2.0, -0.5)
    assert [t for t, _ in trajectory.samples] == [s['t'] for s in data['samples']]


def test_absent_catalog_entries_have_null_coordinates():
    points = [p.to_dict() for p in m_fixed_points(-0.25, include_absent=True)]
    data = _round_trip(points)
    absent = [p for p in data if not p['exists']]
    assert len(absent) == 8
    assert all(p['m2'] is None and p['group'] is None for p in absent)
    present = [p for p in data if p['exists']]
    assert all(math.isfinite(p['m2']) and p['group'] for p in present)


if __name__ == "__main__":
    print("=" * 60)
    print("JSON SERIALIZATION TEST")
    print("=" * 60)
    tests = [obj for name, obj in list(globals().items()) if name.startswith('test_') and callable(obj)]
    for n, test in enumerate(tests, 1):
        print(f"\n[TEST {n}] {test.__name__}")
        test()
        print("  ✓ PASS")
    print("\n" + "=" * 60)
    print(f"ALL {len(tests)} TESTS PASSED")
    print("=" * 60)
