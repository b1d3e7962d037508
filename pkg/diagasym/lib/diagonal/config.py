"""diagonal.config.

Run configuration shared by the command modules. Values come from the query
built by the entry point, then from DIAGASYM_* environment variables, then
from the defaults below.
"""

import os
from dataclasses import asdict, dataclass
from typing import Optional

from .errors import ConfigError

DEFAULT_PRECISION_BITS = 256
DEFAULT_ORACLE_N_MAX = 6
DEFAULT_MAX_ORDER = 6
DEFAULT_MAX_DEGREE = 8


def default_cache_dir():
    return os.getenv('DIAGASYM_CACHE_DIR') or os.path.join(os.path.expanduser('~'), '.cache', 'diagasym')


def default_n_max(d, command=None):
    if command == 'oracle':
        return DEFAULT_ORACLE_N_MAX
    if d == 2:
        return 30
    if d in (3, 4):
        return 100
    if d == 5:
        return 40
    return 20


def _env_int(name, default):
    value = os.getenv(name)
    if not value:
        return default
    try:
        return int(value)
    except ValueError:
        raise ConfigError('{} must be an integer, got {!r}'.format(name, value))


@dataclass
class RunConfig:
    d: int
    n_max: int
    precision_bits: int = DEFAULT_PRECISION_BITS
    seed: int = 0
    output_path: Optional[str] = None
    cache_dir: Optional[str] = None
    workers: int = 1
    max_order: int = DEFAULT_MAX_ORDER
    max_degree: int = DEFAULT_MAX_DEGREE

    def validate(self):
        if self.d < 2:
            raise ConfigError('d must be at least 2, got {}'.format(self.d))
        if self.n_max < 1:
            raise ConfigError('n_max must be at least 1, got {}'.format(self.n_max))
        if self.precision_bits < 64:
            raise ConfigError('precision_bits must be at least 64, got {}'.format(self.precision_bits))
        if self.workers < 0:
            raise ConfigError('workers must be nonnegative, got {}'.format(self.workers))
        if self.max_order < 1 or self.max_degree < 0:
            raise ConfigError('Need max_order >= 1 and max_degree >= 0')
        return self

    @classmethod
    def from_request(cls, request, command=None):
        """Build a validated config from the 'config' member of a command query."""
        config = request.get('config') or {}
        if 'd' not in config:
            raise ConfigError('Missing required setting d')
        try:
            d = int(config['d'])
            values = {
                'd': d,
                'n_max': int(config.get('n_max') or default_n_max(d, command)),
                'precision_bits': int(config.get('precision_bits') or _env_int('DIAGASYM_PRECISION_BITS', DEFAULT_PRECISION_BITS)),
                'seed': int(config.get('seed') or 0),
                'workers': int(config['workers']) if config.get('workers') is not None else _env_int('DIAGASYM_WORKERS', 1),
                'max_order': int(config.get('max_order') or DEFAULT_MAX_ORDER),
                'max_degree': int(config['max_degree']) if config.get('max_degree') is not None else DEFAULT_MAX_DEGREE,
            }
        except (TypeError, ValueError) as e:
            raise ConfigError('Invalid setting: {}'.format(e))
        values['output_path'] = config.get('output_path')
        values['cache_dir'] = config.get('cache_dir') or default_cache_dir()
        return cls(**values).validate()

    def to_dict(self):
        return asdict(self)
