"""
Point location: the tile of a quarter containing a given point, found by
descending through the regions of the cornucopia decomposition.
"""

import numpy as np

from pentameter.log import get_logger
from pentameter.hyperbolic import GeometryError, ETA, dist, lorentz_inverse, tolerance
from pentameter.pentagrid import SIDE, BASE_POLES, _region_offset, tile_of_path

class PointOutsideQuarter(GeometryError):
    pass

#- rows give <pole_i, x> for the five sides of the base pentagon
_SIGNS = BASE_POLES.dot(ETA)

_region_inverses = dict()

def _region_inverse(j):
    if j not in _region_inverses :
        _region_inverses[j] = lorentz_inverse(_region_offset(j)[0].matrix)
    return _region_inverses[j]

def _shift_p(t):
    ch = np.cosh(t)
    sh = np.sinh(t)
    return np.array([[ch, sh, 0.], [sh, ch, 0.], [0., 0., 1.]])

def _in_quarter(x):
    tol = tolerance(x)
    return x[1] >= -tol and x[2] >= -tol

def _descend(x, path, generation, found, limit):
    #- x is expressed in the frame of the current region
    if generation > limit :
        raise RuntimeError("point location went past generation {}".format(limit))
    t = np.arctanh(np.clip(x[1]/x[0], -1+1e-15, 1-1e-15))
    k0 = max(0, int(np.floor(t/SIDE)))
    ks = [k for k in (k0-1, k0, k0+1) if k >= 0]

    #- cornucopia first, then the regions of the next generation
    for k in ks :
        y = _shift_p(-k*SIDE).dot(x)
        if np.all(_SIGNS.dot(y) >= -tolerance(y)) :
            found.append((path+(0,)*k, generation))
    for j in sorted(set(j for k in ks for j in (k, k+1))) :
        z = _region_inverse(j).dot(x)
        if _in_quarter(z) :
            _descend(z, path+_region_offset(j)[1], generation+1, found, limit)

def locate(m, quarter):
    """
    Tile of quarter containing the point m.

    Ties between tiles whose closures contain m are resolved to the
    lexicographically smallest tree path.

    Args:
        m: MPoint inside quarter
        quarter: Quarter

    Returns:
        Tile, with its generation (number of region descents - 1 visited)

    Raises:
        PointOutsideQuarter
    """
    log = get_logger()
    x = quarter.frame.inverse().apply(np.asarray(m.coords))
    if not _in_quarter(x) :
        raise PointOutsideQuarter("point {} is outside the quarter".format(m))

    limit = int(np.ceil(dist(x, [1., 0., 0.])/SIDE)) + 2
    found = []
    _descend(x, (), 0, found, limit)
    if len(found) == 0 :
        raise RuntimeError("no tile found for {}".format(m))
    path, generation = min(found)
    if len(found) > 1 :
        log.debug("point on {} tiles, keeping path {}".format(len(found), list(path)))
    tile = tile_of_path(path, quarter)
    if not tile.pentagon.contains(m) :
        log.warning("located tile {} does not contain {}".format(tile, m))
    return tile
