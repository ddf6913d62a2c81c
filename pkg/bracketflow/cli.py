"""
Command-line interface for bracketflow.

Usage:
    bracketflow classify --constants 1,1,1
    bracketflow curvature --constants=-3/2,0,1/2 --alpha 1
    bracketflow evolve --constants 1,1,1 --alpha 0 --t-end 0.5 --format csv
    bracketflow solitons --alpha 1 --grid=-3:3:0.5
    bracketflow paper-check --alpha-pos 1 --alpha-neg=-1
    bracketflow portrait --beta 1 --bounds=-2,2,-2,2 --n 21 --out portrait.svg
    bracketflow normalized-fixed-points --beta 1 --format json
"""
import csv
import functools
import io
import json
import logging
import sys

import click
import numpy as np

from .algebra import canonicalize, classify, equivalent
from .curvature import curvature_profile, parabolic
from .exceptions import BracketFlowError, InvalidParameterError
from .flow import (BRACKET, METRIC, METHODS, FLOW_KINDS, RG2, RK4, RKF45, SYSTEMS,
                   DEFAULT_DT, DEFAULT_TOL, BLOWUP_CAP, DEFAULT_MAX_STEPS,
                   FlowParameters, Trajectory, integrate, orthonormalize, trajectory_to_csv)
from .normalized import m_fixed_points, portrait_csv, vector_field_grid
from .parsing import parse_bounds, parse_constants, parse_grid, parse_number
from .portrait import render_portrait
from .soliton import VERIFY_TOL, enumerate_analytic, newton_sweep, paper_table_check

__all__ = [
    "cli",
    "main",
]

logger = logging.getLogger(__name__)

# ============================================================================
# CONFIGURATION
# ============================================================================
FORMATS = ('json', 'csv', 'svg', 'human')
TABULAR_FORMATS = ('json', 'csv', 'human')
PORTRAIT_FORMATS = ('svg', 'csv')
DEFAULT_FORMAT = 'human'
FORMAT_ENV = 'BRACKETFLOW_FORMAT'
LOG_FORMAT = '[%(levelname)s] %(name)s: %(message)s'


def _parsed(parser):
    """Click callback adapter: parse the raw string, report failures against the flag."""
    def callback(ctx, param, value):
        if value is None:
            return None
        try:
            return parser(value)
        except BracketFlowError as e:
            raise click.BadParameter(str(e), ctx=ctx, param=param)
    return callback


def _signed(sign):
    """parse_number restricted to one sign: +1 positive, -1 negative, 0 nonzero."""
    def parser(text):
        value = parse_number(text)
        if (sign > 0 and value <= 0) or (sign < 0 and value >= 0):
            raise InvalidParameterError(f"must be {'positive' if sign > 0 else 'negative'}, got {text}")
        if sign == 0 and value == 0:
            raise InvalidParameterError("must be nonzero")
        return value
    return parser


def format_option(command):
    return click.option('--format', 'fmt', type=click.Choice(FORMATS), default=None,
                        help=f'Output format (default from the group option or ${FORMAT_ENV}).')(command)


def numeric_errors(command):
    """Computation failures exit 1 with the message on stderr."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except BracketFlowError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(1)
    return wrapper


def _resolve_format(ctx, fmt, allowed):
    fmt = fmt or ctx.obj.get('format', DEFAULT_FORMAT)
    if fmt not in allowed:
        raise click.UsageError(
            f"--format {fmt} is not supported by '{ctx.info_name}' (choose from {', '.join(allowed)})",
            ctx=ctx)
    return fmt


def _json(payload):
    return json.dumps(payload, indent=2) + '\n'


def _csv(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _num(value):
    return f"{float(value):.17g}"


def _fmt_triple(values):
    return '(' + ', '.join(f"{float(v):.10g}" for v in values) + ')'


@click.group()
@click.version_option(version="1.0.0", prog_name="bracketflow")
@click.option('--format', 'fmt', type=click.Choice(FORMATS), envvar=FORMAT_ENV,
              default=DEFAULT_FORMAT, show_default=True, show_envvar=True,
              help='Default output format for every subcommand.')
@click.option('-v', '--verbose', is_flag=True, default=False, help='Debug logging on stderr.')
@click.pass_context
def cli(ctx, fmt, verbose):
    """
    RG-2 bracket flow on 3D unimodular Lie groups: curvature, trajectories,
    steady solitons, the soliton-table audit and the ratio-system portrait.
    """
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format=LOG_FORMAT, stream=sys.stderr, force=True)
    ctx.ensure_object(dict)
    ctx.obj['format'] = fmt


@cli.command('classify')
@click.option('--constants', required=True, callback=_parsed(parse_constants),
              help='a1,a2,a3 (decimals or p/q).')
@click.option('--tol', type=click.FloatRange(min=0, min_open=True), default=1e-12,
              show_default=True, help='Relative zero tolerance for sign counting.')
@format_option
@click.pass_context
def classify_cmd(ctx, constants, tol, fmt):
    """Name the unimodular Lie group of the structure constants."""
    fmt = _resolve_format(ctx, fmt, TABULAR_FORMATS)
    group = classify(constants, tol=tol)
    canonical = canonicalize(constants)
    if fmt == 'json':
        click.echo(_json({'constants': list(constants), 'canonical_constants': list(canonical),
                          'group': group.name, 'signature': list(group.signature)}), nl=False)
    elif fmt == 'csv':
        click.echo(_csv(('a1', 'a2', 'a3', 'group'),
                        [[_num(x) for x in constants] + [group.name]]), nl=False)
    else:
        click.echo(group.name)


@cli.command()
@click.option('--constants', required=True, callback=_parsed(parse_constants),
              help='a1,a2,a3 (decimals or p/q).')
@click.option('--alpha', callback=_parsed(parse_number), default=None,
              help='Also report parabolicity 1 + alpha K > 0.')
@format_option
@click.pass_context
def curvature(ctx, constants, alpha, fmt):
    """Connection coefficients and curvature of the Milnor-frame metric."""
    fmt = _resolve_format(ctx, fmt, TABULAR_FORMATS)
    profile = curvature_profile(constants)
    payload = {'constants': list(constants), **profile.to_dict()}
    if alpha is not None:
        payload['alpha'] = alpha
        payload['parabolic'] = parabolic(constants, alpha)
    if fmt == 'json':
        click.echo(_json(payload), nl=False)
    elif fmt == 'csv':
        rows = [[name] + [_num(v) for v in payload[name]]
                for name in ('mu', 'sectional', 'ricci', 'einstein', 'rm2diag')]
        rows.append(['scalar', _num(profile.scalar), '', ''])
        click.echo(_csv(('quantity', 'axis1', 'axis2', 'axis3'), rows), nl=False)
    else:
        for name in ('mu', 'sectional', 'ricci', 'einstein', 'rm2diag'):
            click.echo(f"{name:<10} {_fmt_triple(payload[name])}")
        click.echo(f"{'scalar':<10} {profile.scalar:.10g}")
        if alpha is not None:
            click.echo(f"{'parabolic':<10} {payload['parabolic']}")


@cli.command()
@click.option('--constants', required=True, callback=_parsed(parse_constants),
              help='Initial a1,a2,a3 (the fixed-frame brackets for --system metric).')
@click.option('--alpha', callback=_parsed(parse_number), default='0', show_default=True,
              help='Coupling (decimal or p/q).')
@click.option('--t-end', 't_end', type=float, required=True, help='Negative runs backward in time.')
@click.option('--method', type=click.Choice(METHODS), default=RKF45, show_default=True)
@click.option('--dt', type=click.FloatRange(min=0, min_open=True), default=None,
              help=f'RK4 step (default {DEFAULT_DT}).')
@click.option('--tol', type=click.FloatRange(min=0, min_open=True), default=None,
              help=f'RKF45 abs/rel tolerance (default {DEFAULT_TOL}).')
@click.option('--kind', type=click.Choice(FLOW_KINDS), default=RG2, show_default=True)
@click.option('--system', type=click.Choice(SYSTEMS), default=BRACKET, show_default=True)
@click.option('--blowup-cap', type=click.FloatRange(min=0, min_open=True), default=BLOWUP_CAP,
              show_default=True)
@click.option('--max-steps', type=click.IntRange(min=1), default=DEFAULT_MAX_STEPS, show_default=True)
@click.option('--out', type=click.Path(dir_okay=False, writable=True), default=None,
              help='Write the trajectory here instead of stdout.')
@format_option
@click.pass_context
@numeric_errors
def evolve(ctx, constants, alpha, t_end, method, dt, tol, kind, system, blowup_cap, max_steps, out, fmt):
    """Integrate the bracket flow; blowup before t-end is reported, not fatal."""
    fmt = _resolve_format(ctx, fmt, TABULAR_FORMATS)
    if dt is not None and method != RK4:
        raise click.UsageError("--dt only applies to --method rk4", ctx=ctx)
    if tol is not None and method != RKF45:
        raise click.UsageError("--tol only applies to --method rkf45", ctx=ctx)
    params = FlowParameters(alpha=alpha, kind=kind, method=method,
                            dt=dt if dt is not None else DEFAULT_DT,
                            tol=tol if tol is not None else DEFAULT_TOL,
                            t_end=t_end, blowup_cap=blowup_cap, max_steps=max_steps)
    if system == METRIC:
        metric = integrate(np.ones(3), params, system=METRIC, background=constants)
        states = np.array([orthonormalize(g, constants) for g in metric.states])
        trajectory = Trajectory(metric.times, states, metric.termination, system=METRIC)
    else:
        trajectory = integrate(constants, params)

    if fmt == 'csv' or (fmt == 'human' and out):
        text = trajectory_to_csv(trajectory)
    elif fmt == 'json':
        payload = trajectory.to_dict()
        payload['group'] = classify(constants).name
        payload['parameters'] = {'alpha': alpha, 'kind': kind, 'method': method, 't_end': t_end}
        text = _json(payload)
    else:
        final = trajectory.final_state
        text = (f"termination  {trajectory.termination}\n"
                f"samples      {len(trajectory)}\n"
                f"t_final      {trajectory.final_time:.10g}\n"
                f"final        {_fmt_triple(final)}\n"
                f"group        {classify(final).name}\n")
    if out:
        with open(out, 'w', newline='') as handle:
            handle.write(text)
        click.echo(f"{trajectory.termination}: {len(trajectory)} samples written to {out}")
    else:
        click.echo(text, nl=False)


@cli.command()
@click.option('--alpha', callback=_parsed(parse_number), required=True, help='Coupling (decimal or p/q).')
@click.option('--grid', callback=_parsed(parse_grid), default=None,
              help='LO:HI:STEP seed grid for the Newton sweep (analytic only when omitted).')
@click.option('--tol', type=click.FloatRange(min=0, min_open=True), default=VERIFY_TOL,
              show_default=True, help='Residual needed to keep a Newton point.')
@click.option('--workers', type=click.IntRange(min=1), default=1, show_default=True)
@format_option
@click.pass_context
@numeric_errors
def solitons(ctx, alpha, grid, tol, workers, fmt):
    """Steady solitons (bracket-flow fixed points) for one alpha."""
    fmt = _resolve_format(ctx, fmt, TABULAR_FORMATS)
    records = enumerate_analytic(alpha)
    if grid is not None:
        sweep = newton_sweep(alpha, grid=grid, tol=tol, workers=workers)
        extra = [r for r in sweep.records
                 if not any(equivalent(r.sc, known.sc, tol=1e-6) for known in records)]
        if extra:
            logger.warning("Newton sweep found %d points outside the analytic set", len(extra))
        records = records + extra
        logger.info("sweep: %d seeds, %d dropped", sweep.seeds, sweep.dropped)
    payload = [r.to_dict() for r in records]
    if fmt == 'json':
        click.echo(_json(payload), nl=False)
    elif fmt == 'csv':
        header = ('a1', 'a2', 'a3', 'residual', 'group', 'family', 'provenance', 'parabolic', 'label')
        rows = [[_num(x) for x in r.sc] + [_num(r.residual), r.group.name, r.family,
                                          r.provenance, r.parabolic, r.label] for r in records]
        click.echo(_csv(header, rows), nl=False)
    else:
        for r in records:
            click.echo(f"{r.group.name:<11}{r.family:<20}{r.provenance:<10}"
                       f"residual={r.residual:.2e}  {_fmt_triple(r.sc)}  {r.label}")


@cli.command('paper-check')
@click.option('--alpha-pos', callback=_parsed(_signed(1)), default='1', show_default=True)
@click.option('--alpha-neg', callback=_parsed(_signed(-1)), default='-1', show_default=True)
@click.option('--flat-scale', callback=_parsed(parse_number), default='1', show_default=True,
              help='a in the flat row (a,a,0).')
@format_option
@click.pass_context
@numeric_errors
def paper_check(ctx, alpha_pos, alpha_neg, flat_scale, fmt):
    """Substitute each printed soliton-table row into the bracket system."""
    fmt = _resolve_format(ctx, fmt, TABULAR_FORMATS)
    report = paper_table_check(alpha_pos=alpha_pos, alpha_neg=alpha_neg, flat_scale=flat_scale)
    if fmt == 'json':
        click.echo(_json(report), nl=False)
    elif fmt == 'csv':
        header = ('row', 'verdict', 'alpha_used', 'residual', 'braces1', 'braces2', 'braces3',
                  'sectional_matches', 'ricci_matches', 'rescaled_alpha')
        rows = [[e['row'], e['verdict'], _num(e['alpha_used']), _num(e['residual'])]
                + [_num(axis['braces']) for axis in e['per_axis']]
                + [e['sectional_matches'], e['ricci_matches'],
                   '' if e['rescaled_alpha'] is None else _num(e['rescaled_alpha'])]
                for e in report]
        click.echo(_csv(header, rows), nl=False)
    else:
        for e in report:
            conditions = ','.join(axis['condition'] for axis in e['per_axis'])
            click.echo(f"row {e['row']}  {e['verdict']}  alpha={e['alpha_used']:g}  "
                       f"residual={e['residual']:.3e}  "
                       f"braces={_fmt_triple(axis['braces'] for axis in e['per_axis'])}  {conditions}")


@cli.command()
@click.option('--beta', callback=_parsed(parse_number), required=True, help='Ratio-system coupling.')
@click.option('--bounds', required=True, callback=_parsed(parse_bounds), help='x0,x1,y0,y1')
@click.option('--n', type=click.IntRange(min=2), default=21, show_default=True)
@click.option('--out', type=click.Path(dir_okay=False, writable=True), required=True,
              help='FILE.svg or FILE.csv')
@format_option
@click.pass_context
@numeric_errors
def portrait(ctx, beta, bounds, n, out, fmt):
    """Vector field of the ratio system, as SVG or CSV."""
    if out.lower().endswith('.svg'):
        fmt = fmt or 'svg'
    elif out.lower().endswith('.csv'):
        fmt = fmt or 'csv'
    fmt = _resolve_format(ctx, fmt, PORTRAIT_FORMATS)
    if fmt == 'svg':
        text = render_portrait(beta, bounds, n)
    else:
        text = portrait_csv(vector_field_grid(beta, bounds, n))
    with open(out, 'w', newline='') as handle:
        handle.write(text)
    click.echo(f"{fmt}: {n * n} samples written to {out}")


@cli.command('normalized-fixed-points')
@click.option('--beta', callback=_parsed(_signed(0)), required=True, help='Nonzero coupling.')
@click.option('--all', 'include_absent', is_flag=True, default=False,
              help='Also list catalog entries that do not exist for this beta.')
@format_option
@click.pass_context
@numeric_errors
def normalized_fixed_points(ctx, beta, include_absent, fmt):
    """Closed-form fixed points of the ratio system."""
    fmt = _resolve_format(ctx, fmt, TABULAR_FORMATS)
    points = [p.to_dict() for p in m_fixed_points(beta, include_absent=include_absent)]
    if fmt == 'json':
        click.echo(_json({'beta': beta, 'fixed_points': points}), nl=False)
    elif fmt == 'csv':
        rows = [['' if p['m2'] is None else _num(p['m2']), '' if p['m3'] is None else _num(p['m3']),
                 p['group'] or '', p['exists'], ';'.join(p['labels'])] for p in points]
        click.echo(_csv(('m2', 'm3', 'group', 'exists', 'labels'), rows), nl=False)
    else:
        for p in points:
            where = 'absent' if not p['exists'] else f"({p['m2']:.10g}, {p['m3']:.10g})  {p['group']}"
            click.echo(f"{where}  {', '.join(p['labels'])}")


def main(argv=None):
    """Entry point; returns the exit code instead of exiting."""
    try:
        cli.main(args=argv, prog_name='bracketflow', standalone_mode=True)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else (0 if e.code is None else 1)
    return 0
