"""
``aniso-gates <command> [--config FILE] [--key value ...]``

Commands: ``verify-all``, ``sweep``, ``trotter``, ``kick``. Every config key
(see :mod:`anisogates.config`) is also a flag of the same name. Exit status
is 0 when every non-diagnostic check passes, 1 on any verification failure
and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import sys
import time
import warnings
from typing import Optional, Sequence

from . import __version__
from .config import KEYS, OUTDIR_ENV, ConfigError, check_n_reps, load_config
from .reporting import prepare_outdir, status, write_reports
from .suites import COMMANDS

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='aniso-gates',
        description='Verify anisotropic-exchange gate constructions and write CSV/JSON reports.',
        epilog=f'Any config key may be given as a flag, e.g. --beta 0.03 or --grids.phi=0.1,pi/2. '
               f'{OUTDIR_ENV} sets the default output directory.')
    parser.add_argument('command', choices=sorted(COMMANDS))
    parser.add_argument('--config', metavar='FILE', help='flat "key = value" configuration file')
    parser.add_argument('--quiet', action='store_true', help='print only the summary line')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    keys = parser.add_argument_group('configuration keys')
    for key in KEYS:
        keys.add_argument(f'--{key}', dest=f'key:{key}', metavar='VALUE', default=None)
    return parser


def _error(message: str) -> int:
    print(f'aniso-gates: error: {message}', file=sys.stderr)
    return EXIT_INPUT


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k[4:]: v for k, v in vars(args).items() if k.startswith('key:') and v is not None}
    try:
        cfg = load_config(args.config, overrides)
        if args.command == 'trotter':
            check_n_reps(cfg)
    except ConfigError as exc:
        return _error(str(exc))
    try:
        prepare_outdir(cfg.output_dir)
    except OSError as exc:
        return _error(f'cannot use output directory {cfg.output_dir!r}: {exc}')

    started = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0)
    t0 = time.perf_counter()
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        try:
            result = COMMANDS[args.command](cfg)
        except ValueError as exc:
            return _error(str(exc))
    timestamp = {'started_utc': started.isoformat(), 'wall_time_s': round(time.perf_counter() - t0, 3)}

    try:
        written = write_reports(result, cfg.output_dir, cfg.output_formats, cfg.echo(), cfg.seed, timestamp)
    except OSError as exc:
        return _error(f'cannot write reports: {exc}')

    if not args.quiet:
        for r in result.reports:
            flag = 'diag' if r.diagnostic else status(r).replace('true', 'pass').replace('false', 'FAIL')
            print(f'{flag:7s} {r.case:22s} {r.label:34s} angle={r.angle:<10.6g} {_summary(r)}')
    failed = sum(1 for r in result.reports if not (r.passed or r.diagnostic or r.skipped))
    print(f'{args.command}: {len(result.reports)} checks, {failed} failed, '
          f'{timestamp["wall_time_s"]:.2f} s; wrote {", ".join(written)}')
    return result.exit_code


def _summary(r) -> str:
    if r.skipped:
        return r.notes[0]
    if r.kind == 'scaling':
        return f'exponent={r.fitted_exponent:.4f} residual={r.fit_residual:.3g}'
    if r.value is not None and r.fidelity != r.fidelity:
        return f'value={r.value:.3e}'
    return f'fidelity={r.fidelity:.15f}'


if __name__ == '__main__':
    sys.exit(main())
