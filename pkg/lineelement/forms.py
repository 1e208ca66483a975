import math
from fractions import Fraction

from django import forms

from reports.forms import RunOptionsForm, parse_real

from .elements import Regime


class TransformForm(RunOptionsForm):
    """Evaluation point and transition choice for the dU substitution."""

    REGIME_CHOICES = [('', 'From R')] + [(regime.value, regime.value.title()) for regime in Regime]

    R = forms.CharField(required=False, label='Radius R')
    regime = forms.ChoiceField(choices=REGIME_CHOICES, required=False, label='Regime')
    a = forms.CharField(required=False, label='Real transition parameter a')
    theta = forms.FloatField(label='Polar angle theta')
    dr_order = forms.IntegerField(min_value=1, max_value=12, label='dR = e^k')

    def clean_theta(self):
        theta = self.cleaned_data['theta']
        if not math.isfinite(theta):
            raise forms.ValidationError('theta must be finite.')
        return theta

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        float_mode = cleaned_data['float_mode']
        R, regime = cleaned_data.get('R'), cleaned_data.get('regime')
        if bool(R) == bool(regime):
            raise forms.ValidationError('Give exactly one of --R and --regime.')
        radius = cleaned_data['constants'].schwarzschild_radius
        cleaned_data['lam'] = None
        if regime:
            # lambda = 1 - R_s/R, bound exactly
            R, lam = {
                Regime.INTERIOR.value: (radius / 2, Fraction(-1)),
                Regime.HORIZON.value: (radius, Fraction(0)),
                Regime.EXTERIOR.value: (5 * radius, Fraction(4, 5)),
            }[regime]
            cleaned_data['lam'] = float(lam) if float_mode else lam
        else:
            try:
                R = parse_real(R, float_mode)
            except (ValueError, ZeroDivisionError):
                self.add_error('R', 'R must be a number.')
                return cleaned_data
        if not R > 0:
            self.add_error('R', 'R must be strictly positive.')
            return cleaned_data
        cleaned_data['R'] = R

        a = cleaned_data.get('a')
        if a:
            try:
                a = parse_real(a, float_mode)
            except (ValueError, ZeroDivisionError):
                self.add_error('a', 'a must be a number.')
                return cleaned_data
            if not a > 0:
                self.add_error('a', 'a must be strictly positive.')
                return cleaned_data
        cleaned_data['a'] = a or None
        return cleaned_data
