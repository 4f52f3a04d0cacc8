"""Distance distributions in finite binomial networks."""

from ._bppdist import *  # noqa: F401,F403
from ._bppdist import __version__  # noqa: F401
