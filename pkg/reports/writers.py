"""
Deterministic CSV and JSON emission.

Exact values are written as ``p/q`` strings, floats with ``repr`` and
series in their ``c*e^(q)`` form, so identical runs give identical bytes.
"""

import csv
import enum
import json
import logging
from fractions import Fraction

from django.conf import settings
from django.core.serializers.json import DjangoJSONEncoder

from infinitesimal.series import LCNumber, format_series

logger = logging.getLogger(__name__)


def format_value(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, LCNumber):
        return format_series(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, enum.Enum):
        return str(value.value)
    return str(value)


class ReportEncoder(DjangoJSONEncoder):
    """JSON encoder that also knows rationals, series and enums."""

    def default(self, o):
        if isinstance(o, (Fraction, LCNumber, enum.Enum)):
            return format_value(o)
        return super().default(o)


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    logger.info("wrote %s", path)
    return path


def dump_json(payload):
    document = {'schema_version': settings.HF_SCHEMA_VERSION, **payload}
    return json.dumps(document, cls=ReportEncoder, sort_keys=True, indent=2) + '\n'


def write_json(path, payload):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(payload), encoding='utf-8')
    logger.info("wrote %s", path)
    return path


def write_table(path_stem, header, rows, output_format):
    """A table as CSV, or as a JSON list of records."""
    if output_format == 'csv':
        return write_csv(path_stem.with_suffix('.csv'), header, rows)
    records = [dict(zip(header, (format_value(value) for value in row))) for row in rows]
    return write_json(path_stem.with_suffix('.json'), {'rows': records})
