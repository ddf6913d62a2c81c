#!/usr/bin/env python
"""Test the HTTP API response format"""

from app import app


def _get(url):
    client = app.test_client()
    return client.get(url)


def test_classify_envelope():
    response = _get('/api/classify?constants=1,1,1')
    assert response.status_code == 200
    data = response.get_json()
    assert data['success'] is True
    assert data['group'] == 'SU2'
    assert data['canonical_constants'] == [1.0, 1.0, 1.0]


def test_invalid_input_is_400():
    for url in ('/api/classify?constants=1,2', '/api/classify', '/api/curvature?constants=nan,0,0',
                '/api/evolve?constants=1,1,1&t_end=1&method=euler',
                '/api/normalized-fixed-points?beta=0', '/api/solitons?alpha=1&grid=1:0:1',
                '/api/classify?constants=1' + '0' * 400 + '/3,1,1',
                '/api/solitons?alpha=1&grid=-2:2:1e-320', '/api/solitons?alpha=1' + '0' * 400 + '/7'):
        response = _get(url)
        assert response.status_code == 400, url
        data = response.get_json()
        assert data['success'] is False
        assert data['error']


def test_curvature_and_parabolic():
    data = _get('/api/curvature?constants=-3/2,0,1/2&alpha=1').get_json()
    assert data['success'] is True
    assert sorted(data['sectional']) == [-2.0, 0.0, 1.0]
    assert data['scalar'] == -2.0
    assert data['parabolic'] is False


def test_evolve_trajectory():
    data = _get('/api/evolve?constants=2,0,0&alpha=0&t_end=0.1&method=rk4&dt=0.01').get_json()
    assert data['success'] is True
    trajectory = data['trajectory']
    assert trajectory['termination'] == 'ReachedEnd'
    assert trajectory['final_time'] == 0.1
    assert len(trajectory['samples']) == 11


def test_solitons_and_sweep():
    data = _get('/api/solitons?alpha=1').get_json()
    assert data['success'] is True
    assert len(data['analytic']) == 5
    assert 'sweep' not in data
    data = _get('/api/solitons?alpha=1&grid=-2:2:1').get_json()
    assert data['seeds'] == 125
    assert all(r['provenance'] == 'Newton' for r in data['sweep'])
    response = _get('/api/solitons?alpha=1&grid=-10:10:0.1')
    assert response.status_code == 400


def test_paper_check_failed_rows():
    data = _get('/api/paper-check').get_json()
    assert data['success'] is True
    assert data['failed'] == [2, 3, 4, 7]
    assert len(data['rows']) == 7


def test_normalized_fixed_points():
    data = _get('/api/normalized-fixed-points?beta=4').get_json()
    assert data['success'] is True
    assert any(p['m2'] == 0.375 and p['m3'] == 0.375 for p in data['fixed_points'])


def test_portrait_svg():
    response = _get('/api/portrait.svg?beta=1&n=5')
    assert response.status_code == 200
    assert response.mimetype == 'image/svg+xml'
    assert response.data.startswith(b'<svg')
    assert _get('/api/portrait.svg?beta=1&n=1000').status_code == 400


if __name__ == "__main__":
    print("=" * 60)
    print("API RESPONSE FORMAT TEST")
    print("=" * 60)
    tests = [obj for name, obj in list(globals().items()) if name.startswith('test_') and callable(obj)]
    for n, test in enumerate(tests, 1):
        print(f"\n[TEST {n}] {test.__name__}")
        test()
        print("  ✓ PASS")
    print("\n" + "=" * 60)
    print(f"ALL {len(tests)} TESTS PASSED")
    print("=" * 60)
