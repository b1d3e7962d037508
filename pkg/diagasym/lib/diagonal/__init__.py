__all__ = ['errors', 'polynomial', 'series', 'smooth_point', 'linalg', 'roots', 'recurrence',
           'approximants', 'config', 'report']
