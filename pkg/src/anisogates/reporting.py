"""
Report emission: ``report.json`` (metadata plus one record per check) and
``report.csv`` (one row per check, numbers to 17 significant digits).

Records appear in suite order, so identical configurations give identical
files apart from the ``timestamp`` metadata field.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import re
from typing import Any, Optional

from . import __version__
from .suites import Report, SuiteResult
from .verify import ScalingReport

CSV_COLUMNS = ('case', 'circuit', 'beta_x', 'beta_y', 'gamma', 'angle', 'fidelity', 'distance', 'leakage',
               'steps', 'interpretation', 'passed', 'beta_z', 'kind', 'value', 'exponent', 'fit_residual',
               'diagnostic', 'seed')
LABEL = re.compile(r'^[a-z0-9_.-]+$')


def num(x: Optional[float]) -> str:
    """17 significant digits, lowercase exponent; empty for missing or NaN."""
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ''
    return f'{x:.17g}'


def _finite(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, (list, tuple)):
        return [_finite(v) for v in x]
    return x


def status(r: Report) -> str:
    if r.skipped:
        return 'skipped'
    return 'true' if r.passed else 'false'


def _check_label(text: str, what: str) -> str:
    if not LABEL.match(text):
        raise ValueError(f'{what} {text!r} is not restricted to [a-z0-9_.-]')
    return text


def record(r: Report) -> dict[str, Any]:
    """JSON-ready dictionary for one report."""
    out = {
        'kind': r.kind,
        'case': r.case,
        'circuit': r.label,
        'beta': list(r.beta),
        'gamma': r.gamma,
        'angle': r.angle,
        'interpretation': r.interpretation_id,
        'passed': None if r.skipped else bool(r.passed),
        'diagnostic': r.diagnostic,
        'skipped': r.skipped,
    }
    if isinstance(r, ScalingReport):
        out.update({
            'exponent': r.fitted_exponent,
            'fit_residual': r.fit_residual,
            'degenerate': r.degenerate,
            'threshold': r.threshold,
            'comparison': r.comparison,
            'max_residual': r.max_residual,
            'points': [list(p) for p in r.points],
            'excluded': [list(p) for p in r.excluded],
        })
    else:
        out.update({
            'fidelity': r.fidelity,
            'distance': r.phase_aligned_distance,
            'tolerance': r.tolerance,
            'leakage': r.leakage,
            'leakage_tolerance': r.leakage_tolerance if r.leakage is not None else None,
            'steps': r.step_count,
            'value': r.value,
            'deviation': [list(d) for d in r.deviation],
        })
        if r.scaling is not None:
            out['scaling'] = record(r.scaling)
    out['notes'] = list(r.notes)
    return {k: _finite(v) for k, v in out.items()}


def csv_row(r: Report, seed: int) -> list[str]:
    bx, by, bz = r.beta
    scaling = r if isinstance(r, ScalingReport) else r.scaling
    if isinstance(r, ScalingReport):
        fid = dist = leak = value = None
        steps = ''
    else:
        fid, dist, leak, value = r.fidelity, r.phase_aligned_distance, r.leakage, r.value
        steps = '' if r.skipped else str(r.step_count)
    return [_check_label(r.case, 'case'), _check_label(r.label, 'circuit'), num(bx), num(by), num(r.gamma),
            num(r.angle), num(fid), num(dist), num(leak), steps,
            _check_label(r.interpretation_id, 'interpretation'), status(r), num(bz), r.kind, num(value),
            num(scaling.fitted_exponent if scaling else None),
            num(scaling.fit_residual if scaling else None),
            'true' if r.diagnostic else 'false', str(seed)]


def render_csv(result: SuiteResult, seed: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(CSV_COLUMNS)
    for r in result.reports:
        writer.writerow(csv_row(r, seed))
    return buf.getvalue()


def render_json(result: SuiteResult, config: dict, seed: int, timestamp: dict) -> str:
    doc = {
        'metadata': {
            'tool': 'aniso-gates',
            'version': __version__,
            'command': result.command,
            'seed': seed,
            'config': {k: _finite(v) for k, v in config.items()},
            'interpretations': result.interpretations,
            'exit_code': result.exit_code,
            'timestamp': timestamp,
        },
        'records': [record(r) for r in result.reports],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False) + '\n'


def prepare_outdir(path: str) -> None:
    """Create ``path`` if needed and confirm it is writable (``OSError`` otherwise)."""
    os.makedirs(path, exist_ok=True)
    if not os.access(path, os.W_OK | os.X_OK):
        raise PermissionError(f'output directory {path!r} is not writable')


def write_reports(result: SuiteResult, outdir: str, formats, config: dict, seed: int,
                  timestamp: dict) -> list[str]:
    written = []
    if 'json' in formats:
        path = os.path.join(outdir, 'report.json')
        with open(path, 'w', encoding='utf-8') as fh:
            fh.write(render_json(result, config, seed, timestamp))
        written.append(path)
    if 'csv' in formats:
        path = os.path.join(outdir, 'report.csv')
        with open(path, 'w', encoding='utf-8', newline='') as fh:
            fh.write(render_csv(result, seed))
        written.append(path)
    return written
