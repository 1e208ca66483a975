import json
import os
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command


def environment(**values):
    """Patch os.environ with every HF_* variable removed, then the given ones set."""
    base = {key: value for key, value in os.environ.items() if not key.startswith('HF_')}
    return mock.patch.dict(os.environ, {**base, **values}, clear=True)


class CommandTestMixin:
    """Runs management commands into a temporary output directory."""

    def setUp(self):
        super().setUp()
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.out = Path(tmp.name)

    def call(self, name, **options):
        stdout = StringIO()
        options.setdefault('out', str(self.out))
        with environment():
            call_command(name, stdout=stdout, **options)
        return stdout.getvalue()

    def report(self, name):
        return json.loads((self.out / f"{name}_report.json").read_text())
