from fractions import Fraction

from django.core.exceptions import ValidationError
from django.test import TestCase

from infinitesimal.series import lc_epsilon
from reports.models import CheckRun


class CheckRunTests(TestCase):

    def test_record_serializes_exact_values(self):
        run = CheckRun.record('transform', {'M': '1'}, True, {'b_term': Fraction(0), 'f_M': -lc_epsilon(-1)})
        run.refresh_from_db()
        self.assertEqual(run.report, {'b_term': '0', 'f_M': '-1*e^(-1)'})
        self.assertTrue(run.passed)
        self.assertEqual(str(run), f"transform run {run.pk} (pass)")

    def test_unknown_command_rejected(self):
        with self.assertRaises(ValidationError):
            CheckRun.record('plot', {}, True, {})
        self.assertFalse(CheckRun.objects.exists())

    def test_newest_first(self):
        first = CheckRun.record('transition', {}, True, {})
        second = CheckRun.record('geodesic', {}, False, {})
        self.assertEqual(list(CheckRun.objects.all()), [second, first])
