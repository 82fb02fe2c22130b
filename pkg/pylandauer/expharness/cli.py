"""
pylandauer.expharness.cli
=========================

Command line interface.

Verbs:
- `fit-gap`: fits the reservoir gap to the CNOT temperature table.
- `sweep-cnot`, `sweep-swap`: run a sweep and write or print its report.
- `trace`: samples Theta(t) for one temperature (columns t, re, im).
- `distribution`: heat distribution for one temperature (columns q, p).

Options given on the command line override those of `--config`. The exit
code is 1 if any check fails.
"""

# Libs
import argparse
import logging
import math
import sys
from typing import Any, Sequence

from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

# pylandauer
from pylandauer import __version__
from pylandauer.gates import cnot, partial_swap
from pylandauer.heatstats import (InterferometerMode, char_fn_interferometric,
                                  invert_to_distribution, tpm_distribution)
from pylandauer.io import ReportFile
from pylandauer.msc.Errors import FitError, LandauerError
from pylandauer.nmrsim import CompileRequest, decay_correction
from pylandauer.qstate import maximally_mixed
from pylandauer.thermo import ThermalReservoirSpec
from pylandauer.expharness.Config import ExperimentConfig, Process
from pylandauer.expharness.Fit import CNOT_TABLE, fit_reservoir_gap
from pylandauer.expharness.Report import emit_report
from pylandauer.expharness.Sweep import (REPORT_COLUMNS, ReportRow,
                                         run_cnot_sweep,
                                         run_partial_swap_sweep)


__all__ = ['main', 'build_parser']


console = Console()


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--config', help='experiment configuration (JSON or '
                                         'YAML)')
    parent.add_argument('--mode', choices=[m.value for m in
                                           InterferometerMode])
    parent.add_argument('--noise', action='store_true', default=None,
                        help='phase damping during acquisition')
    parent.add_argument('--molecule', help='molecule description file')
    parent.add_argument('--gap', type=float, dest='gap_rad_s',
                        help='reservoir gap in rad/s')
    parent.add_argument('--samples', type=int,
                        help='samples per gap period')
    parent.add_argument('--workers', type=int, help='sweep threads')
    parent.add_argument('--out', help='output file')
    parent.add_argument('--format', choices=['csv', 'json'])
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='pylandauer',
        description='Simulated NMR verification of the Landauer principle.')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='store_true',
                        help='debug logging')
    verbs = parser.add_subparsers(dest='verb', required=True)
    common = _common_options()

    fit = verbs.add_parser('fit-gap', parents=[common],
                           help='fit the reservoir gap to the CNOT table')
    fit.add_argument('--column', choices=['gamma', 'beta_q'],
                     default='gamma',
                     help='theory column or measured beta <Q>')

    cnot_sweep = verbs.add_parser('sweep-cnot', parents=[common],
                                  help='CNOT temperature sweep')
    cnot_sweep.add_argument('--temperatures', type=float, nargs='+',
                            dest='temperatures_hz', metavar='HZ')
    cnot_sweep.add_argument('--alphas', type=float, nargs='+',
                            dest='alphas_rad', metavar='RAD')

    swap_sweep = verbs.add_parser('sweep-swap', parents=[common],
                                  help='partial-swap angle sweep')
    swap_sweep.add_argument('--temperatures', type=float, nargs='+',
                            dest='temperatures_hz', metavar='HZ')
    swap_sweep.add_argument('--phis', type=float, nargs='+',
                            dest='phis_rad', metavar='RAD')

    for verb, text in (('trace', 'sample the characteristic function'),
                       ('distribution', 'heat distribution')):
        single = verbs.add_parser(verb, parents=[common], help=text)
        single.add_argument('--process', choices=[p.value for p in Process])
        single.add_argument('--temperature', type=float, default=123.0,
                            metavar='HZ')
        single.add_argument('--phi', type=float, default=math.pi,
                            metavar='RAD')
    return parser


def _config(args: argparse.Namespace, **extra: Any) -> ExperimentConfig:
    overrides = {key: getattr(args, key, None)
                 for key in ('mode', 'noise', 'molecule', 'gap_rad_s',
                             'samples', 'workers', 'out', 'format',
                             'temperatures_hz', 'alphas_rad', 'phis_rad',
                             'process')}
    overrides.update(extra)
    if args.config:
        return ExperimentConfig.from_file(args.config, **overrides)
    return ExperimentConfig.from_mapping({}, **overrides)


def _print_table(title: str, columns: Sequence[str],
                 records: list[dict[str, Any]]) -> None:
    table = Table(title=title)
    for column in columns:
        table.add_column(column, justify='right')
    for record in records:
        table.add_row(*(_cell(record.get(c)) for c in columns))
    console.print(table)


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return f'{value:.6g}'
    return str(value)


def _output(config: ExperimentConfig, title: str, columns: list[str],
            records: list[dict[str, Any]]) -> None:
    if config.out is not None:
        path = ReportFile.write(config.out, columns, records, config.format)
        logging.info(f'Wrote {len(records)} rows to {path}')
    else:
        _print_table(title, columns, records)


def _fit_gap(args: argparse.Namespace) -> None:
    config = _config(args)
    rows = [(row.beta_inv_hz,
             row.gamma if args.column == 'gamma' else row.beta_q_exp)
            for row in CNOT_TABLE]
    fit = fit_reservoir_gap(rows)
    records = [{'beta_inv_hz': f, 'gamma': gamma, 'row_gap': g,
                'residual': r}
               for (f, gamma), g, r in zip(fit.rows, fit.row_gaps,
                                           fit.residuals)]
    _output(config, f'Gap {fit.gap:.6g} rad/s ({fit.gap_hz:.6g} Hz)',
            ['beta_inv_hz', 'gamma', 'row_gap', 'residual'], records)
    if not fit.is_consistent():
        raise FitError(f'Table rows disagree: max residual '
                       f'{fit.max_residual:.2%}', list(fit.residuals))


def _sweep(args: argparse.Namespace, process: Process) -> None:
    config = _config(args, process=process)
    rows: list[ReportRow] = run_cnot_sweep(config) \
        if process is Process.CNOT else run_partial_swap_sweep(config)
    if config.out is not None:
        emit_report(rows, config.format, config.out)
    else:
        _print_table(f'{process.value} sweep', REPORT_COLUMNS,
                     [row.as_record() for row in rows])


def _single(args: argparse.Namespace) -> None:
    config = _config(args)
    reservoir = ThermalReservoirSpec.from_beta_inv_hz(args.temperature,
                                                      config.gap_rad_s)
    rho_s = maximally_mixed(['S'])

    molecule = config.load_molecule() \
        if config.mode is InterferometerMode.PULSE or config.noise else None
    noise = config.noise_spec(molecule) if molecule is not None else None
    if config.process is Process.CNOT:
        unitary, request = cnot('S', 'R'), CompileRequest.cnot()
    else:
        unitary = partial_swap(args.phi, ('R', 'S'))
        request = CompileRequest.partial_swap(
            args.phi, molecule.coupling('R', 'S')) \
            if molecule is not None else None

    if args.verb == 'distribution' and noise is None \
            and config.mode is InterferometerMode.IDEAL:
        dist = tpm_distribution(rho_s, reservoir, unitary)
        _output(config, 'Heat distribution', ['q', 'p'],
                [{'q': q, 'p': p} for q, p in dist.atoms])
        return

    trace = char_fn_interferometric(rho_s, reservoir, unitary, config.grid(),
                                    config.mode, noise, molecule, request)
    if args.verb == 'trace':
        _output(config, 'Characteristic function', ['t', 're', 'im'],
                trace.records())
        return

    if noise is not None:
        trace = decay_correction(trace, noise)
    dist = invert_to_distribution(trace, reservoir)
    _output(config, 'Heat distribution', ['q', 'p'],
            [{'q': q, 'p': p} for q, p in dist.atoms])


def main(argv: Sequence[str] | None = None) -> int:
    """
    Runs the command line interface and returns the exit code.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(message)s', datefmt='[%X]',
                        handlers=[RichHandler(console=console)], force=True)

    try:
        if args.verb == 'fit-gap':
            _fit_gap(args)
        elif args.verb == 'sweep-cnot':
            _sweep(args, Process.CNOT)
        elif args.verb == 'sweep-swap':
            _sweep(args, Process.PARTIAL_SWAP)
        else:
            _single(args)
    except LandauerError as e:
        logging.error(str(e))
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
