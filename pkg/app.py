"""
bracketflow HTTP API - Flask server
Serves classification, curvature, trajectories, solitons, the soliton-table
audit and the ratio-system portrait as JSON (the portrait as SVG).
"""

import logging
import os

from flask import Flask, Response, request, jsonify

from bracketflow.algebra import canonicalize, classify
from bracketflow.curvature import curvature_profile, parabolic
from bracketflow.exceptions import BracketFlowError, InvalidParameterError
from bracketflow.flow import FlowParameters, RG2, RKF45, DEFAULT_DT, DEFAULT_TOL, integrate
from bracketflow.normalized import m_fixed_points
from bracketflow.parsing import parse_bounds, parse_constants, parse_grid, parse_number
from bracketflow.portrait import render_portrait
from bracketflow.soliton import enumerate_analytic, grid_size, newton_sweep, paper_table_check

logger = logging.getLogger(__name__)

# ============================================================================
# INITIALIZATION
# ============================================================================

app = Flask(__name__)

# Configuration
HOST = os.environ.get('BRACKETFLOW_HOST', '127.0.0.1')
PORT = int(os.environ.get('BRACKETFLOW_PORT', '5000'))
MAX_SWEEP_SEEDS = 20000  # keeps a single request from tying up the server
PORTRAIT_MAX_N = 101


def _arg(name, parser=parse_number, default=None):
    """Read one query parameter; missing required ones are a client error."""
    raw = request.args.get(name)
    if raw is None:
        if default is None:
            raise InvalidParameterError(f"missing query parameter '{name}'")
        return default
    return parser(raw)


def _error(message, status=400):
    return jsonify({'success': False, 'error': message}), status


@app.errorhandler(BracketFlowError)
def handle_bracketflow_error(e):
    logger.info("rejected %s: %s", request.path, e)
    return _error(str(e))


# ============================================================================
# API ROUTES
# ============================================================================

@app.route('/api/classify', methods=['GET'])
def api_classify():
    """Group of ?constants=a1,a2,a3."""
    sc = _arg('constants', parse_constants)
    group = classify(sc)
    return jsonify({
        'success': True,
        'constants': list(sc),
        'canonical_constants': list(canonicalize(sc)),
        'group': group.name,
    })


@app.route('/api/curvature', methods=['GET'])
def api_curvature():
    sc = _arg('constants', parse_constants)
    result = {'success': True, 'constants': list(sc), **curvature_profile(sc).to_dict()}
    if 'alpha' in request.args:
        result['parabolic'] = parabolic(sc, _arg('alpha'))
    return jsonify(result)


@app.route('/api/evolve', methods=['GET'])
def api_evolve():
    """Trajectory of ?constants&alpha&t_end[&method&dt&tol&kind]."""
    sc = _arg('constants', parse_constants)
    params = FlowParameters(
        alpha=_arg('alpha', default=0.0),
        kind=request.args.get('kind', RG2),
        method=request.args.get('method', RKF45),
        dt=_arg('dt', default=DEFAULT_DT),
        tol=_arg('tol', default=DEFAULT_TOL),
        t_end=_arg('t_end'),
    )
    trajectory = integrate(sc, params)
    return jsonify({'success': True, 'trajectory': trajectory.to_dict()})


@app.route('/api/solitons', methods=['GET'])
def api_solitons():
    """Analytic fixed points of ?alpha, plus a Newton sweep when ?grid=LO:HI:STEP is given."""
    alpha = _arg('alpha')
    result = {'success': True, 'alpha': alpha,
              'analytic': [r.to_dict() for r in enumerate_analytic(alpha)]}
    if 'grid' in request.args:
        lo, hi, step = _arg('grid', parse_grid)
        if grid_size(lo, hi, step) ** 3 > MAX_SWEEP_SEEDS:
            return _error(f"grid has more than {MAX_SWEEP_SEEDS} seeds")
        sweep = newton_sweep(alpha, grid=(lo, hi, step))
        result['sweep'] = [r.to_dict() for r in sweep]
        result['seeds'] = sweep.seeds
        result['dropped'] = sweep.dropped
    return jsonify(result)


@app.route('/api/paper-check', methods=['GET'])
def api_paper_check():
    report = paper_table_check(alpha_pos=_arg('alpha_pos', default=1.0),
                               alpha_neg=_arg('alpha_neg', default=-1.0),
                               flat_scale=_arg('flat_scale', default=1.0))
    return jsonify({'success': True, 'rows': report,
                    'failed': [entry['row'] for entry in report if entry['verdict'] == 'FAIL']})


@app.route('/api/normalized-fixed-points', methods=['GET'])
def api_normalized_fixed_points():
    beta = _arg('beta')
    points = m_fixed_points(beta)
    return jsonify({'success': True, 'beta': beta, 'fixed_points': [p.to_dict() for p in points]})


@app.route('/api/portrait.svg', methods=['GET'])
def api_portrait():
    beta = _arg('beta')
    bounds = _arg('bounds', parse_bounds, default=(-2.0, 2.0, -2.0, 2.0))
    n = int(_arg('n', default=21))
    if not 2 <= n <= PORTRAIT_MAX_N:
        return _error(f"n must be between 2 and {PORTRAIT_MAX_N}")
    return Response(render_portrait(beta, bounds, n), mimetype='image/svg+xml')


if __name__ == '__main__':
    logging.basicConfig(level=logging.INFO, format='[%(levelname)s] %(name)s: %(message)s')
    logger.info("bracketflow API on http://%s:%d", HOST, PORT)
    app.run(host=HOST, port=PORT, debug=False)
