"""Theta-function covering maps of the disc and the annulus."""

try:
    from ._thetacover import *  # noqa: F401,F403
    from ._thetacover import __doc__  # noqa: F401
except ImportError:  # built in-tree: the extension sits next to the package
    from _thetacover import *  # noqa: F401,F403
