from ._adaptbound import *  # noqa: F401,F403
from ._adaptbound import __version__  # noqa: F401
