from django.core.exceptions import ValidationError
from django.db import models

from .writers import ReportEncoder


class CheckRun(models.Model):
    """One recorded command run and its check verdict."""

    COMMAND_CHOICES = [
        ('transition', 'Transition family'),
        ('transform', 'Line-element transformation'),
        ('geodesic', 'Radial null geodesic'),
    ]

    command = models.CharField(max_length=20, choices=COMMAND_CHOICES)
    parameters = models.JSONField(default=dict, encoder=ReportEncoder)
    passed = models.BooleanField(default=False)
    report = models.JSONField(default=dict, encoder=ReportEncoder)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        verdict = 'pass' if self.passed else 'fail'
        return f"{self.command} run {self.pk} ({verdict})"

    def clean(self):
        if not isinstance(self.parameters, dict):
            raise ValidationError("Parameters must be a mapping.")
        if not isinstance(self.report, dict):
            raise ValidationError("The report must be a mapping.")

    @classmethod
    def record(cls, command, parameters, passed, report):
        run = cls(command=command, parameters=parameters, passed=passed, report=report)
        run.full_clean()
        run.save()
        return run
