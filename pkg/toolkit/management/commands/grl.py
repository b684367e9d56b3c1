"""
Management command for the GRL-code toolkit
Run with: python manage.py grl <subcommand> [options]

Subcommands: build, check, analyze, solve-self-dual, search, verify-paper,
field-info, history. Exit status: 0 success or criterion holds, 1 criterion
fails, 2 usage/validation error, 3 enumeration budget exceeded.
"""

import argparse
import dataclasses
import json
import logging
import time
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from audit.models import RunLog
from services import codes, matrix, workers
from services.criteria import (
    AMDS_DUAL_THM,
    MDS_THM,
    SELF_DUAL_THM,
    check_amds_dual_thm,
    check_mds_thm,
    check_self_dual_thm,
    solve_self_dual_special,
)
from services.errors import BudgetExceeded, GrlError, OracleMismatch
from services.excel_export import write_frames
from services.gf import field_new, format_element, parse_element
from services.grl import MConvention, grl_generator, grl_parity_check
from services.search import SearchProgress, estimate_cost, iter_search
from toolkit import rendering
from toolkit.reports import EXIT_BUDGET, EXIT_CONDITION_FAILS, EXIT_OK, EXIT_USAGE, RunReport
from toolkit.reproduction import run_suite, suite_passed
from toolkit.specfiles import dump_spec, load_job, load_matrix, load_spec

logger = logging.getLogger(__name__)

THEOREMS = (MDS_THM, AMDS_DUAL_THM, SELF_DUAL_THM)
CONVENTIONS = [c.value for c in MConvention]


def _common_options():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='Emit the machine-readable run report')
    common.add_argument('--budget', type=int, default=None, help='Max projective codewords to enumerate')
    common.add_argument('--threads', type=int, default=None, help='Worker pool size (default from settings)')
    common.add_argument('--record', action='store_true', help='Store this run in the audit log')
    return common


def _xlsx_option(parser):
    parser.add_argument('--xlsx', default=None, metavar='PATH', help='Also write the tables to an Excel workbook')


class Command(BaseCommand):
    help = 'Build, check, analyze and search generalized Roth-Lempel codes'

    def add_arguments(self, parser):
        common = _common_options()
        sub = parser.add_subparsers(dest='subcommand', required=True)

        p = sub.add_parser('build', parents=[common], help='Print the generator (and parity check) of a spec')
        p.add_argument('specfile')
        p.add_argument('--parity', action='store_true', help='Also print the parity-check matrix')

        p = sub.add_parser('check', parents=[common], help='Evaluate an MDS / dual-AMDS / self-dual criterion')
        p.add_argument('specfile')
        p.add_argument('which', choices=THEOREMS)
        p.add_argument('--convention', choices=CONVENTIONS, default=MConvention.EXACT.value,
                       help='Tail matrix used by the self-dual criterion')
        _xlsx_option(p)

        p = sub.add_parser('analyze', parents=[common], help='Brute-force analysis of a spec or matrix file')
        p.add_argument('specfile', nargs='?')
        p.add_argument('--matrix', default=None, help='Analyze a plain-text generator matrix instead')
        p.add_argument('--grs-match', action='store_true', help='Also search for a GRS representation')
        _xlsx_option(p)

        p = sub.add_parser('solve-self-dual', parents=[common], help='Solve for self-dual special parameters')
        p.add_argument('p', type=int)
        p.add_argument('alpha', nargs='+')
        p.add_argument('--m', type=int, default=1)
        p.add_argument('--modulus', type=int, nargs='+', default=None)
        p.add_argument('--convention', choices=CONVENTIONS, default=MConvention.EXACT.value)
        p.add_argument('--out', default=None, help='Write the resulting spec file here')

        p = sub.add_parser('search', parents=[common], help='Run a search job; hits go to stdout as JSON lines')
        p.add_argument('jobfile')
        p.add_argument('--estimate', action='store_true', help='Only print the cost estimate')
        _xlsx_option(p)

        p = sub.add_parser('verify-paper', parents=[common], help='Run the embedded reproduction suite')
        _xlsx_option(p)

        p = sub.add_parser('field-info', parents=[common], help='Describe a finite field presentation')
        p.add_argument('p', type=int)
        p.add_argument('--m', type=int, default=1)
        p.add_argument('--modulus', type=int, nargs='+', default=None)
        _xlsx_option(p)

        p = sub.add_parser('history', parents=[common], help='List recorded runs')
        p.add_argument('--limit', type=int, default=20)

    def run_from_argv(self, argv):
        self.argv = list(argv[2:])
        super().run_from_argv(argv)

    def handle(self, *args, **options):
        self.options = options
        self.frames = {}
        self.json_mode = options['json']
        if options.get('threads'):
            workers.set_max_workers(options['threads'])

        subcommand = options['subcommand']
        report = RunReport(command=subcommand, argv=getattr(self, 'argv', None) or self._echo(options))
        handler = getattr(self, '_' + subcommand.replace('-', '_'))
        started = time.monotonic()
        message = ''
        try:
            report.exit_status = handler(report, options)
        except BudgetExceeded as e:
            report.exit_status, message = EXIT_BUDGET, str(e)
        except ValidationError as e:
            report.exit_status, message = EXIT_USAGE, '; '.join(e.messages)
        except OracleMismatch as e:
            report.exit_status, message = EXIT_CONDITION_FAILS, str(e)
        except GrlError as e:
            report.exit_status, message = EXIT_USAGE, str(e)
        report.elapsed_ms = int((time.monotonic() - started) * 1000)
        if message:
            report.results['error'] = message
            logger.warning('grl %s failed with exit %d: %s', subcommand, report.exit_status, message)

        if self.frames and options.get('xlsx') and report.exit_status in (EXIT_OK, EXIT_CONDITION_FAILS):
            write_frames(options['xlsx'], self.frames)
        if subcommand != 'history' and (options['record'] or getattr(settings, 'GRL_RECORD_RUNS', False)):
            self._record(report)
        if self.json_mode and subcommand != 'search':
            self.stdout.write(report.to_json(indent=2))

        if report.exit_status != EXIT_OK:
            raise CommandError(message or f'{subcommand}: condition fails', returncode=report.exit_status)

    def _echo(self, options):
        skip = {'verbosity', 'settings', 'pythonpath', 'traceback', 'no_color', 'force_color', 'skip_checks', 'subcommand', 'stdout', 'stderr'}
        echo = [options['subcommand']]
        for key in sorted(options):
            value = options[key]
            if key in skip or value in (None, False, []):
                continue
            echo.append(f'{key}={value}')
        return echo

    def _record(self, report):
        RunLog.objects.create(
            command=report.command,
            argv=report.argv,
            exit_status=report.exit_status,
            elapsed_ms=report.elapsed_ms,
            report=report.to_dict(),
        )

    def _human(self, text=''):
        if not self.json_mode:
            self.stdout.write(text)

    def _verdict(self, ok, text):
        self._human(self.style.SUCCESS(text) if ok else self.style.ERROR(text))

    # Subcommands

    def _build(self, report, options):
        spec = load_spec(options['specfile'])
        ctx = spec.ctx
        G = grl_generator(spec)
        report.results['spec'] = dump_spec(spec)
        report.results['generator'] = matrix.rows_as_codes(G)
        self._human(f'Generator ({G.shape[0]} x {G.shape[1]}) over {ctx}:')
        self._human(rendering.render_grid(ctx, G))
        if options['parity']:
            H = grl_parity_check(spec)
            report.results['parity_check'] = matrix.rows_as_codes(H)
            self._human('')
            self._human(f'Parity check ({H.shape[0]} x {H.shape[1]}):')
            self._human(rendering.render_grid(ctx, H))
        return EXIT_OK

    def _check(self, report, options):
        spec = load_spec(options['specfile'])
        ctx = spec.ctx
        which = options['which']
        lam = None
        if which == MDS_THM:
            result = check_mds_thm(spec)
        elif which == AMDS_DUAL_THM:
            result = check_amds_dual_thm(spec)
        else:
            check = check_self_dual_thm(spec, options['convention'])
            result, lam = check.report, check.lambda_
            report.results['lambda'] = lam

        report.results['report'] = result.to_dict()
        self._verdict(result.holds, f'{which} criterion over {ctx}: {"holds" if result.holds else "fails"}')
        if lam is not None:
            self._human(f'lambda = {format_element(ctx, lam)}')
        self._human(rendering.conditions_frame(result).to_string(index=False))
        details = rendering.report_frame(ctx, result)
        if not details.empty:
            self._human('')
            self._human(details.to_string(index=False))
        for note in result.notes:
            self._human(self.style.WARNING(note))

        self.frames = {'conditions': rendering.conditions_frame(result), 'details': details}
        return EXIT_OK if result.holds else EXIT_CONDITION_FAILS

    def _analyze(self, report, options):
        if options['matrix']:
            ctx, G = load_matrix(options['matrix'])
        elif options['specfile']:
            spec = load_spec(options['specfile'])
            ctx, G = spec.ctx, grl_generator(spec)
        else:
            raise ValidationError('analyze needs a spec file or --matrix')

        C = codes.code_from_generator(G)
        analysis = codes.analyze(C, options['budget'])
        report.results['analysis'] = analysis.as_dict()
        c = analysis.classification
        self._verdict(True, f'{c.params} {c.kind.value} over {ctx}')
        frame = rendering.analysis_frame(analysis)
        self._human(frame.to_string(index=False))
        self.frames = {'analysis': frame, 'weight enumerator': rendering.enumerator_frame(analysis.enumerator)}

        if options['grs_match']:
            match = codes.exhaustive_grs_match(C)
            report.results['grs_match'] = {
                'found': match.found,
                'alpha': None if match.alpha is None else list(match.alpha),
                'v': None if match.v is None else list(match.v),
                'orderings_tried': match.orderings_tried,
            }
            if match.found:
                self._human(f'GRS representation: alpha={list(match.alpha)} v={list(match.v)}')
            else:
                self._human(f'no GRS representation ({match.orderings_tried} orderings tried)')
        return EXIT_OK

    def _field_from(self, options):
        try:
            return field_new(options['p'], options['m'], options['modulus'])
        except GrlError as e:
            raise ValidationError(str(e))

    def _solve_self_dual(self, report, options):
        ctx = self._field_from(options)
        try:
            alpha = tuple(parse_element(ctx, a) for a in options['alpha'])
        except GrlError as e:
            raise ValidationError(f'alpha: {e}')
        attempt = solve_self_dual_special(alpha, ctx, options['convention'])
        report.results['attempt'] = attempt.to_dict()

        if not attempt.ok:
            self._verdict(False, f'no solution: {attempt.reason}')
            self._human(f'stage={attempt.stage} lhs={attempt.lhs} rhs={attempt.rhs}')
            return EXIT_CONDITION_FAILS

        sol = attempt.solution
        fmt = lambda x: format_element(ctx, x)  # noqa: E731
        self._verdict(True, f'lambda={fmt(sol.lambda_)} mu={fmt(sol.mu)} delta={fmt(sol.delta)} tau={fmt(sol.tau)}')
        self._human('v = (' + ', '.join(fmt(x) for x in sol.v) + ')')
        if options['out']:
            spec = sol.spec(ctx, alpha)
            Path(options['out']).write_text(json.dumps(dump_spec(spec), indent=2) + '\n', encoding='utf-8')
            report.results['out'] = options['out']
            self._human(f'wrote {options["out"]}')
        return EXIT_OK

    def _search(self, report, options):
        job = load_job(options['jobfile'])
        if options['budget'] is not None:
            job = dataclasses.replace(job, budget=options['budget'])
        cost = estimate_cost(job)
        report.results['cost'] = cost.to_dict()
        if options['estimate']:
            self.stdout.write(json.dumps(cost.to_dict(), sort_keys=True))
            return EXIT_OK

        progress = SearchProgress()
        hits = []
        for hit in iter_search(job, progress):
            hits.append(hit)
            self.stdout.write(json.dumps(hit.to_dict(), sort_keys=True))

        footer = {'examined': progress.examined, 'hits': progress.hits, 'elapsed_s': round(progress.elapsed, 3)}
        report.results['summary'] = footer
        if self.json_mode:
            self.stderr.write(json.dumps(footer, sort_keys=True))
        else:
            self.stderr.write(f'{progress.hits} hit(s) in {progress.examined} candidate(s), {progress.elapsed:.2f}s')
        self.frames = {'hits': rendering.hits_frame(job.ctx, hits)}
        return EXIT_OK

    def _verify_paper(self, report, options):
        rows = run_suite(options['budget'])
        passed = suite_passed(rows)
        report.results['rows'] = [r.to_dict() for r in rows]
        report.results['passed'] = passed

        frame = rendering.verification_frame(rows)
        self._human(frame.to_string(index=False))
        counts = frame['status'].value_counts().to_dict()
        summary = ', '.join(f'{k}: {v}' for k, v in sorted(counts.items()))
        self._verdict(passed, f'{len(rows)} claims checked ({summary})')
        self.frames = {'verification': frame}
        return EXIT_OK if passed else EXIT_CONDITION_FAILS

    def _field_info(self, report, options):
        ctx = self._field_from(options)
        report.results.update({
            'p': ctx.p,
            'm': ctx.m,
            'q': ctx.q,
            'modulus': list(ctx.modulus),
            'generator': ctx.gen,
        })
        self._human(f'{ctx}: p={ctx.p} m={ctx.m} q={ctx.q}')
        self._human(f'modulus (constant term first): {" ".join(map(str, ctx.modulus))}')
        self._human(f'generator: {format_element(ctx, ctx.gen)} (code {ctx.gen})')
        frame = rendering.field_frame(ctx)
        self._human(frame.to_string(index=False))
        self.frames = {'field': frame}
        return EXIT_OK

    def _history(self, report, options):
        runs = RunLog.objects.all()[: max(0, options['limit'])]
        rows = [
            {
                'id': run.id,
                'timestamp': run.timestamp.isoformat(),
                'command': run.command,
                'exit_status': run.exit_status,
                'elapsed_ms': run.elapsed_ms,
            }
            for run in runs
        ]
        report.results['runs'] = rows
        if not rows:
            self._human(self.style.WARNING('No recorded runs.'))
        for row in rows:
            self._human(f"{row['id']:>5}  {row['timestamp']}  {row['command']:<16} exit={row['exit_status']}  {row['elapsed_ms']}ms")
        return EXIT_OK
