from django import forms

from reports.forms import RunOptionsForm, parse_range, parse_real


class TransitionForm(RunOptionsForm):
    """Sampling and check options for the transition family."""

    a = forms.CharField(required=False, label='Parameter a')
    epsilon = forms.BooleanField(required=False, label='Ideal model (a = e)')
    range = forms.CharField(label='Sample range lo:hi')
    samples = forms.IntegerField(min_value=1, max_value=10 ** 6, label='Samples')
    check_bound = forms.BooleanField(required=False, label='Check the 2/a bound')

    def clean_range(self):
        return parse_range(self.cleaned_data['range'])

    def clean(self):
        cleaned_data = super().clean()
        a = cleaned_data.get('a')
        if cleaned_data.get('epsilon'):
            if a:
                raise forms.ValidationError('Give either --a or --epsilon, not both.')
            if cleaned_data.get('check_bound'):
                raise forms.ValidationError('The sampled bound check needs a real a.')
            return cleaned_data
        if not a:
            raise forms.ValidationError('Give --a or --epsilon.')
        try:
            value = parse_real(a, cleaned_data.get('float_mode', False))
        except (ValueError, ZeroDivisionError):
            self.add_error('a', 'a must be a number.')
            return cleaned_data
        if not value > 0:
            self.add_error('a', 'a must be strictly positive.')
            return cleaned_data
        cleaned_data['a'] = value
        return cleaned_data
