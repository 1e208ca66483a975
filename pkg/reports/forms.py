from fractions import Fraction

from django import forms

from infinitesimal.series import TruncationPolicy
from lineelement.constants import SI_C, SI_G, PhysicalConstants
from lineelement.exceptions import InvalidConstantsError


def parse_real(text, float_mode=False):
    """Exact rational unless float mode is on; decimals like 1.5 stay exact."""
    text = str(text).strip()
    if float_mode:
        return float(text)
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def parse_range(text):
    """``lo:hi`` with lo < hi, as exact rationals."""
    try:
        lo, hi = (Fraction(part.strip()) for part in str(text).split(':'))
    except (ValueError, ZeroDivisionError):
        raise forms.ValidationError("Use the form lo:hi, e.g. -5:5.")
    if not lo < hi:
        raise forms.ValidationError("The lower end must lie below the upper end.")
    return lo, hi


class RunOptionsForm(forms.Form):
    """Options every command shares; data arrives already merged with env, file and settings."""

    FORMAT_CHOICES = [('csv', 'CSV'), ('json', 'JSON')]
    UNIT_CHOICES = [('geometric', 'Geometric (G = c = 1)'), ('si', 'SI')]

    seed = forms.IntegerField()
    G = forms.CharField(required=False)
    M = forms.CharField(required=False)
    c = forms.CharField(required=False)
    units = forms.ChoiceField(choices=UNIT_CHOICES)
    window = forms.CharField()
    max_terms = forms.IntegerField(min_value=2)
    out = forms.CharField()
    format = forms.ChoiceField(choices=FORMAT_CHOICES)
    float_mode = forms.BooleanField(required=False)

    def clean_window(self):
        try:
            window = Fraction(self.cleaned_data['window'])
        except (ValueError, ZeroDivisionError):
            raise forms.ValidationError("The window must be a rational number.")
        if window <= 0:
            raise forms.ValidationError("The window must be positive.")
        return window

    def clean(self):
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data
        si = cleaned_data['units'] == 'si'
        float_mode = cleaned_data['float_mode'] or si
        cleaned_data['float_mode'] = float_mode
        defaults = {'G': SI_G if si else Fraction(1), 'M': Fraction(1), 'c': SI_C if si else Fraction(1)}
        values = {}
        for name, default in defaults.items():
            text = cleaned_data.get(name)
            if not text:
                values[name] = float(default) if float_mode else default
                continue
            try:
                values[name] = parse_real(text, float_mode)
            except (ValueError, ZeroDivisionError):
                self.add_error(name, f"{name} must be a number.")
        if self.errors:
            return cleaned_data
        try:
            cleaned_data['constants'] = PhysicalConstants(units=cleaned_data['units'], **values)
        except InvalidConstantsError as exc:
            raise forms.ValidationError(str(exc))
        cleaned_data['policy'] = TruncationPolicy(cleaned_data['window'], cleaned_data['max_terms'])
        return cleaned_data
