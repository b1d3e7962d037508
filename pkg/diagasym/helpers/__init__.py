__all__ = ['cache']
