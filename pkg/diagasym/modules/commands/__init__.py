import datetime
import logging
import time

from diagasym.helpers import cache
from diagasym.lib.diagonal.series import cubical_series

__all__ = ['series', 'oracle', 'verify', 'analyze', 'ratio']

log = logging.getLogger('diagasym')

standard_error_message = 'This command requires a "config" field with at least "d"'


def load_series(config):
    """C_d(0..n_max) as a prefix of a long enough cached series, else computed from scratch and cached.

    Returns (series, cache file or None, whether the cache served it).
    """
    series = cache.get(config.d, config.n_max, config.cache_dir)
    if series is not None:
        return series, cache.series_path(config.d, config.cache_dir), True
    series = cubical_series(config.d, config.n_max)
    try:
        path = cache.put(series, config.d, config.cache_dir)
    except OSError as e:
        log.warning('Could not cache C_{}: {}'.format(config.d, e))
        path = None
    return series, path, False


def metadata(started):
    return {
        'finished': datetime.datetime.now(datetime.timezone.utc).isoformat(),
        'wall_time': round(time.monotonic() - started, 3),
    }
