from ._wclass import *  # noqa: F401,F403
from ._wclass import __doc__  # noqa: F401
