import math

from django import forms

from lineelement.elements import Chart
from reports.forms import RunOptionsForm

from .exceptions import InvalidRayError
from .rays import Direction, IntegratorConfig, RayState


class GeodesicForm(RunOptionsForm):
    """Start point, direction and step control for one radial null ray."""

    CHART_CHOICES = [('t', 't-chart'), ('u', 'U-chart')]
    DIRECTION_CHOICES = [('in', 'Ingoing'), ('out', 'Outgoing')]

    chart = forms.ChoiceField(choices=CHART_CHOICES, label='Chart')
    direction = forms.ChoiceField(choices=DIRECTION_CHOICES, label='Direction')
    start = forms.FloatField(label='Start radius')
    stop = forms.FloatField(required=False, label='Stop radius')
    T0 = forms.FloatField(label='Initial time coordinate')
    rtol = forms.FloatField(label='Relative tolerance')
    min_step = forms.FloatField(label='Minimum step')
    initial_step = forms.FloatField(label='Initial step')

    def clean_start(self):
        start = self.cleaned_data['start']
        if not (math.isfinite(start) and start > 0):
            raise forms.ValidationError('The start radius must satisfy R > 0.')
        return start

    def clean_stop(self):
        stop = self.cleaned_data.get('stop')
        if stop is not None and not (math.isfinite(stop) and stop > 0):
            raise forms.ValidationError('The stop radius must satisfy R > 0.')
        return stop

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        chart = Chart.U if cleaned_data['chart'] == 'u' else Chart.T
        try:
            cleaned_data['ray'] = RayState(cleaned_data['start'], cleaned_data['T0'], chart,
                                           Direction(cleaned_data['direction']))
            cleaned_data['integrator'] = IntegratorConfig(
                initial_step=cleaned_data['initial_step'],
                min_step=cleaned_data['min_step'],
                rel_tol=cleaned_data['rtol'],
            )
        except InvalidRayError as exc:
            raise forms.ValidationError(str(exc))
        return cleaned_data
