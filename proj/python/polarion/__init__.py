"""Digital quantum simulation of the Holstein model on trapped-ion chains."""

from _polarion import *  # noqa: F401,F403
from _polarion import __doc__  # noqa: F401
