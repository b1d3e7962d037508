from .diagonal import *  # noqa
