"""
Run configuration shared by every command.

Each option is resolved as: explicit flag, then the process environment,
then the ``--config`` file (``KEY = value`` lines), then the project settings.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

from decouple import Config, RepositoryEmpty, RepositoryEnv
from django.conf import settings

from infinitesimal.series import TruncationPolicy
from lineelement.constants import PhysicalConstants

from .exceptions import RunConfigError

logger = logging.getLogger(__name__)

# option name -> (environment / file key, settings attribute or None)
SHARED_OPTIONS = {
    'seed': ('HF_SEED', 'HF_SEED'),
    'G': ('HF_G', None),
    'M': ('HF_M', None),
    'c': ('HF_C', None),
    'units': ('HF_UNITS', 'HF_UNITS'),
    'window': ('HF_WINDOW', 'HF_WINDOW'),
    'max_terms': ('HF_MAX_TERMS', 'HF_MAX_TERMS'),
    'out': ('HF_OUTPUT_DIR', 'HF_OUTPUT_DIR'),
    'format': ('HF_FORMAT', 'HF_FORMAT'),
    'float_mode': ('HF_FLOAT', None),
}


def config_source(path=None):
    """A decouple Config reading the environment first, then the given file."""
    if not path:
        return Config(RepositoryEmpty())
    try:
        return Config(RepositoryEnv(str(path)))
    except OSError as exc:
        raise RunConfigError(f"cannot read config file {path}: {exc}") from exc


def resolve_options(options, config_path=None):
    """Merge flags with environment, file and settings into raw form data."""
    source = config_source(config_path)
    data = {}
    for name, (key, setting) in SHARED_OPTIONS.items():
        flag = options.get(name)
        if flag is not None:
            data[name] = flag
            continue
        default = getattr(settings, setting) if setting else ''
        data[name] = source(key, default=default)
    logger.debug("resolved run options: %s", data)
    return data


@dataclass(frozen=True)
class RunConfig:
    constants: PhysicalConstants
    policy: TruncationPolicy
    output_dir: Path
    output_format: str
    seed: int
    float_mode: bool = False
    record: bool = False

    @classmethod
    def from_cleaned(cls, cleaned, record=False):
        return cls(
            constants=cleaned['constants'],
            policy=cleaned['policy'],
            output_dir=Path(cleaned['out']),
            output_format=cleaned['format'],
            seed=cleaned['seed'],
            float_mode=cleaned['float_mode'],
            record=record,
        )

    def as_parameters(self):
        """JSON-ready echo of the run settings for reports and the run ledger."""
        return {
            'constants': self.constants.to_dict(),
            'window': str(self.policy.window),
            'max_terms': self.policy.max_terms,
            'format': self.output_format,
            'seed': self.seed,
            'float_mode': self.float_mode,
        }
