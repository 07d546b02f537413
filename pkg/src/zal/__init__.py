"""Numerical and exact-rational machinery for Selberg zeta special values.

Subpackages by theme:

- ``specfun``      real special functions with error accounting
- ``tautconst``    tautological surface constants and log-linear forms
- ``lengthspec``   geodesic length spectra of congruence subgroups
- ``selberg``      Selberg zeta local factors and Euler products
- ``degeneration`` pinching-family star-graph model
- ``modforms``     the level-11 weight-2 eigenform pipeline
- ``arakelov``     the arithmetic-degree ledger and exponent extraction
- ``cli``          command-line verification surface
"""

__version__ = "0.1.0"
