"""Fusion systems of finite groups at a prime p.

Core objects: permutation groups with exact search (``perm``), the group
catalog (``catalog``), subgroup lattices (``lattice``), fusion systems and
their closures (``fusion``), subgroup classification (``classify``),
saturation checking (``saturation``), the index-prime-to-p machinery
(``indexp``), monomial groups and the classification predictor
(``tables``), first cohomology (``cohomology``), and report plumbing
(``report``, ``cache``).  The HTTP service lives in ``fusionsys.service``
and the ``fusion`` CLI in ``fusionsys.cli``.
"""

__version__ = "0.1.0"
