"""Simultaneous matrix diagonalization: joint rotation/shear solvers,
low-rank and asymmetric factor recovery, and synthetic problem generators."""

try:
    from ._simdiag import *  # noqa: F401,F403  (installed layout)
except ImportError:  # build-tree layout: extension sits next to the package
    from _simdiag import *  # noqa: F401,F403

from ._version import __version__  # noqa: F401
