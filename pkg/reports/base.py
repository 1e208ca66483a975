"""
Shared machinery for the report-emitting management commands.

Subclasses declare a form (a RunOptionsForm subclass), their own arguments
and a ``run`` method returning an Outcome; this class resolves the run
configuration, maps failures onto exit codes and records runs on request.
"""

import logging
from dataclasses import dataclass, field

from django.core.management.base import BaseCommand, CommandError

from .config import RunConfig, resolve_options
from .exceptions import RunConfigError
from .forms import RunOptionsForm
from .models import CheckRun

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
CHECK_FAILED = 1


@dataclass
class Outcome:
    passed: bool
    summary: str
    files: list = field(default_factory=list)
    report: dict = field(default_factory=dict)


class ReportCommand(BaseCommand):
    form_class = RunOptionsForm
    # domain exceptions that mean the invocation itself was invalid
    usage_errors = (ValueError,)

    def add_arguments(self, parser):
        parser.add_argument('--config', help='key = value file with HF_* settings')
        parser.add_argument('--out', help='output directory')
        parser.add_argument('--format', help='csv or json for tabular output')
        parser.add_argument('--seed', type=int, help='sampling seed')
        parser.add_argument('--G', dest='G', help='gravitational constant')
        parser.add_argument('--M', dest='M', help='mass')
        parser.add_argument('--c', dest='c', help='speed of light')
        parser.add_argument('--units', help='geometric or si')
        parser.add_argument('--window', help='retained exponent window of truncated series')
        parser.add_argument('--max-terms', dest='max_terms', type=int, help='term cap of truncated series')
        parser.add_argument('--float', dest='float_mode', action='store_true', default=None,
                            help='float coefficients instead of exact rationals')
        parser.add_argument('--record', action='store_true', help='store the run in the run ledger')

    def command_data(self, options):
        """Raw form data for the command's own fields."""
        return {}

    def run(self, run_config, cleaned_data):
        raise NotImplementedError

    def handle(self, *args, **options):
        try:
            data = resolve_options(options, options.get('config'))
        except RunConfigError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR)
        data.update(self.command_data(options))
        form = self.form_class(data)
        if not form.is_valid():
            messages = '; '.join(
                f"{name}: {' '.join(errors)}" if name != '__all__' else ' '.join(errors)
                for name, errors in form.errors.items()
            )
            raise CommandError(f"invalid arguments: {messages}", returncode=USAGE_ERROR)
        run_config = RunConfig.from_cleaned(form.cleaned_data, record=options.get('record', False))

        try:
            outcome = self.run(run_config, form.cleaned_data)
        except self.usage_errors as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR)

        if run_config.record:
            run = CheckRun.record(self.command_name, run_config.as_parameters(), outcome.passed, outcome.report)
            logger.info("recorded %s", run)
        for path in outcome.files:
            self.stdout.write(f"wrote {path}")
        if not outcome.passed:
            raise CommandError(outcome.summary, returncode=CHECK_FAILED)
        self.stdout.write(self.style.SUCCESS(outcome.summary))

    @property
    def command_name(self):
        return self.__module__.rsplit('.', 1)[-1]
