#
# See top-level LICENSE.rst file for Copyright information
#
# -*- coding: utf-8 -*-
"""
Tools for the {5,4} pentagrid of the hyperbolic plane: cornucopia
decomposition, Fibonacci tree coordinates, embedded quarters and ends.
"""

from ._version import __version__
