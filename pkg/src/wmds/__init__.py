"""Metaplectic Weyl group averages and multiple Dirichlet series for
symmetrizable Kac-Moody root systems.

The package is organised bottom-up:

* :mod:`wmds.cartan`      Cartan data, symmetrization, shifted Weyl actions
* :mod:`wmds.roots`       root tables, multiplicities, Weyl words, inversion sets
* :mod:`wmds.coeff`       the coefficient ring Q[q, q^-1][gamma(1..n-1)]
* :mod:`wmds.cyclotomic`  exact arithmetic in cyclotomic fields
* :mod:`wmds.series`      truncated and rational formal distributions
* :mod:`wmds.action`      the metaplectic action, s, h, N and local functional equations
* :mod:`wmds.arith`       function field arithmetic (residue symbols, Gauss sums)
* :mod:`wmds.hcoeff`      local and global H coefficients
* :mod:`wmds.mds`         partial sums of Z, Gamma factors and region geometry
* :mod:`wmds.characters`  Freudenthal oracle for the n = 1 reduction
* :mod:`wmds.presets`     named root data for the worked examples
* :mod:`wmds.verify`      the property suite behind ``wmds verify``
* :mod:`wmds.cli`         command line front end
"""

from wmds.cartan import CartanData, symmetrize
from wmds.errors import WMDSError

__all__ = ["CartanData", "symmetrize", "WMDSError"]
__version__ = "0.1.0"
