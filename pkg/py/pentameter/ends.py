"""
Ends of the hyperbolic plane and their neighbourhoods.

An end is known either geometrically, as an IdealPoint, or operationally as
the limit of a sequence of quarters, through a nested chain of half-planes
bounded by lines of the pentagrid.  Two ends can be certified different by
exhibiting disjoint half-planes in their chains; they are never certified
equal.
"""

from collections import namedtuple

import numpy as np
from scipy.spatial import cKDTree as KDTree

from pentameter.log import get_logger
from pentameter.hyperbolic import (IdealPoint, MLine, HalfPlane, GeometryError, DegenerateInput,
                                   SameLine, Ultraparallel, mdot, origin, tangent, tolerance,
                                   relative, line_relation, intersection_point, local_pair,
                                   halfplane_within, halfplanes_disjoint, _same_line,
                                   to_disc, _cross, _line_frame)
from pentameter.pentagrid import BASE_POLES, base_quarter, decompose
from pentameter import quarters as qc

class BudgetExhausted(RuntimeError):
    pass

class TailOutside(GeometryError):
    pass

Separated = namedtuple('Separated', ['h1', 'h2', 'i', 'j'])

class UnknownAtHorizon(object):
    """No disjoint pair of half-planes was found in the chains."""
    def __bool__(self):
        return False

    def __repr__(self):
        return "UnknownAtHorizon()"


class End(object):
    """
    End of the plane, stored as an ideal point.
    """
    def __init__(self, ideal):
        if not isinstance(ideal, IdealPoint) :
            ideal = IdealPoint(ideal)
        self.ideal = ideal

    def isclose(self, other, tol=None):
        other = getattr(other, 'ideal', other)
        return self.ideal.isclose(other, tol)

    def disc(self):
        return to_disc(self.ideal)

    def tolist(self):
        return self.ideal.tolist()

    def __repr__(self):
        return "End({:.9g}, {:.9g})".format(*self.disc())


class NeighborhoodChain(object):
    """
    Nested half-planes, each containing the next one.

    from_index[i] is the first index of the vertex sequence known to stay in
    half_planes[i], and restarts counts the strict steps of the sequence the
    chain was built from.
    """
    def __init__(self, half_planes, from_index=None, restarts=0):
        self.half_planes = list(half_planes)
        if from_index is None :
            from_index = [0]*len(self.half_planes)
        if len(from_index) != len(self.half_planes) :
            raise ValueError("from_index and half_planes differ in length")
        self.from_index = [int(i) for i in from_index]
        self.restarts = restarts

    def __len__(self):
        return len(self.half_planes)

    def __iter__(self):
        return iter(self.half_planes)

    def __getitem__(self, i):
        return self.half_planes[i]

    def nested(self):
        return all(halfplane_within(self.half_planes[i+1], self.half_planes[i])
                   for i in range(len(self.half_planes)-1))

    def touches(self, alpha):
        """True if every half-plane of the chain touches alpha."""
        return all(h.touches(alpha) for h in self.half_planes)

    def tojson(self):
        return [dict(pole=h.boundary.tolist(), from_index=i)
                for h, i in zip(self.half_planes, self.from_index)]

    @classmethod
    def fromjson(cls, rows):
        return cls([HalfPlane(MLine(row['pole'])) for row in rows],
                   [row['from_index'] for row in rows])

    def __repr__(self):
        return "NeighborhoodChain({} half-planes, {} restarts)".format(len(self), self.restarts)


def write_chain(filename, chain):
    from pentameter.io import write_json
    write_json(filename, chain.tojson())

def read_chain(filename):
    from pentameter.io import read_json
    rows = read_json(filename)
    if not isinstance(rows, list) or len(rows) == 0 :
        raise ValueError("{} does not hold a nonempty chain".format(filename))
    return NeighborhoodChain.fromjson(rows)


def neighborhood_distance(n):
    """Distance d_n from the base point of the line cutting a sector of angle pi/n."""
    if n < 1 :
        raise ValueError("n must be a positive integer, got {}".format(n))
    return float(-np.log(np.tan(np.pi/(4*n))))

def neighborhood(alpha, n, base=None):
    """
    Open half-plane beyond the line perpendicular to the ray from base to alpha
    whose two ends are seen from base under the angle pi/n.

    The half-plane touches alpha and does not contain base.
    """
    if base is None :
        base = origin()
    alpha = getattr(alpha, 'ideal', alpha)
    d = neighborhood_distance(n)
    x = np.asarray(base.coords)
    v = tangent(x, alpha)
    pole = np.sinh(d)*x + np.cosh(d)*v
    return HalfPlane(MLine(pole), closed=False)

def neighborhood_chain(alpha, nmax, base=None):
    return NeighborhoodChain([neighborhood(alpha, n, base) for n in range(1, nmax+1)],
                             list(range(1, nmax+1)))

def halfplane_of_end(line, alpha):
    """
    Closed half-plane of line touching alpha.

    Raises:
        DegenerateInput if alpha is an end of line
    """
    alpha = getattr(alpha, 'ideal', alpha)
    line = line if isinstance(line, MLine) else MLine(line)
    s = mdot(alpha, line.pole)
    if abs(s) <= tolerance(alpha, line.pole) :
        raise DegenerateInput("{} is an end of {}".format(alpha, line))
    return HalfPlane(line if s > 0 else line.flipped())


def _vertex_graph(tiles, radius=1e-7):
    #- de-duplicate the tile vertices on their disc images, and collect
    #- the edges and the side lines through each vertex
    points = np.array([v for tile in tiles for v in tile.pentagon._vertices])
    poles = np.array([p for tile in tiles for p in tile.pentagon._poles])
    disc = points[:, 1:]/(1+points[:, 0:1])
    tree = KDTree(disc)
    ids = -np.ones(len(points), dtype=int)
    uniq = []
    for i in range(len(points)) :
        if ids[i] >= 0 :
            continue
        ids[tree.query_ball_point(disc[i], radius)] = len(uniq)
        uniq.append(i)

    edges = [set() for _ in uniq]
    lines = [list() for _ in uniq]
    for t in range(len(tiles)) :
        for k in range(5) :
            i = ids[5*t+k]
            j = ids[5*t+(k+1) % 5]
            edges[i].add(j)
            edges[j].add(i)
            #- vertex k lies on the sides k and k+1 (sides are numbered from 1)
            for s in (k-1, k) :
                pole = poles[5*t+(s % 5)]
                if not any(_same_line(pole, q) for q in lines[i]) :
                    lines[i].append(pole)
    return points[uniq], disc[uniq], edges, lines

def pentagrid_line_beyond(line, alpha, tiling_budget, quarter=None):
    """
    A line of the pentagrid inside the half-plane H of line touching alpha,
    whose own half-plane touching alpha is contained in H.

    Vertices of the decomposition of quarter at depth tiling_budget are
    visited breadth first from the vertex nearest to the foot of the
    perpendicular from alpha to line, each breadth level ordered by distance
    to line.  The first side line through a visited vertex that is
    ultraparallel to line, with the foot on its negative side and alpha
    strictly on its positive side, is returned oriented toward alpha.

    Raises:
        BudgetExhausted if no such line is in the decomposition
    """
    log = get_logger()
    if quarter is None :
        quarter = base_quarter()
    alpha = getattr(alpha, 'ideal', alpha)
    h = halfplane_of_end(line, alpha)
    pole = h.boundary.pole
    foot = intersection_point(MLine(_cross(alpha, pole)), MLine(pole)).coords

    tiles = decompose(quarter, tiling_budget)
    points, disc, edges, lines = _vertex_graph(tiles)
    sides = mdot(points, pole)
    inside = sides > np.array([tolerance(p, pole) for p in points])
    if not np.any(inside) :
        raise BudgetExhausted("no pentagrid vertex beyond {} at depth {}".format(h.boundary, tiling_budget))

    candidates = np.where(inside)[0]
    _, k = KDTree(disc[candidates]).query(to_disc(foot))
    start = int(candidates[k])

    seen = set([start])
    level = [start]
    nvisited = 0
    while level :
        level.sort(key=lambda i: (sides[i], i))
        for i in level :
            nvisited += 1
            if not inside[i] :
                continue
            for lam in lines[i] :
                lam = lam if mdot(foot, lam) < 0 else -lam
                if mdot(alpha, lam) <= tolerance(alpha, lam) :
                    continue
                try :
                    relation = line_relation(lam, pole)
                except SameLine :
                    continue
                if isinstance(relation, Ultraparallel) :
                    log.debug("line found at vertex {} after {} vertices, distance {:.6f}".format(
                        i, nvisited, relation.distance))
                    return MLine(lam)
        nxt = set()
        for i in level :
            nxt.update(j for j in edges[i] if j not in seen)
        seen.update(nxt)
        level = list(nxt)

    raise BudgetExhausted("no pentagrid line beyond {} toward {} at depth {}".format(
        h.boundary, alpha, tiling_budget))


def _shared_side(f1, f2):
    #- side number, in the head of f2, of the edge shared with the head of f1
    idx = sorted(i for i, _ in f2.head.shared_vertices(f1.head))
    if len(idx) != 2 :
        raise qc.NotStepwise("heads of {} and {} do not share an edge".format(f1, f2))
    i, j = idx
    return j if j == i+1 else 5

def _direct_halfplane(f1, f2):
    #- complement (closure) of the border of f1 which is not a border line of f2
    rel = relative(f2.frame, f1.frame)
    mine = [np.array([0., 0., 1.]), np.array([0., 1., 0.])]
    theirs = [rel.dot(p) for p in mine]
    for p, q in zip(mine, theirs) :
        shared = any(min(np.max(np.abs(q-r)), np.max(np.abs(q+r))) <= 1e-7 for r in mine)
        if not shared :
            return HalfPlane.framed(f1.frame, MLine(-p))
    raise GeometryError("no free border in the direct step {} -> {}".format(f1, f2))

def _vertex_in(h, f, tol=1e-9):
    #- the vertex of f in the closed half-plane h, in their shared frame
    if h.frame is not None :
        s = relative(h.frame, f.frame)[:, 0]
        return mdot(s, h.local.pole) >= -max(tol, tolerance(s, h.local.pole))
    return h.contains(f.vertex)

def track_limit(seq, horizon):
    """
    Nested chain of pentagrid half-planes containing the tails of the vertex
    sequence of seq, within the horizon.

    After a non-strict step F_n -> F_n+1 the chain receives the far side of
    the border of F_n orthogonal to the common border line, after a strict
    step it receives the side of the line of the shared edge containing the
    head of F_n+1.  Entries which do not contain the new one are dropped, so
    the chain restarts after a turn.  The entries left form a nested chain,
    so each of them holds every later vertex; TailOutside is raised when that
    fails numerically.

    Raises:
        NotStepwise, AlternationPresent, TailOutside
    """
    log = get_logger()
    report = qc.classify(seq, horizon)
    if not report['stepwise_ok'] :
        raise qc.NotStepwise("steps into terms {} are not one-step embeddings".format(report['violations']))
    if len(report['alternations']) > 0 :
        raise qc.AlternationPresent("alternations at terms {}".format(report['alternations']))

    terms = seq.take(horizon)
    kinds = report['kinds']
    entries = []
    for n, kind in enumerate(kinds) :
        f1, f2 = terms[n], terms[n+1]
        if kind == qc.NONSTRICT_STEP :
            h = _direct_halfplane(f1, f2)
        else :
            side = _shared_side(f1, f2)
            h = HalfPlane.framed(f2.frame, MLine(BASE_POLES[side-1]))
        while entries and not halfplane_within(h, entries[-1][0]) :
            entries.pop()
        entries.append((h, n+1))

    for h, first in entries :
        bad = [j for j in range(first, len(terms)) if not _vertex_in(h, terms[j])]
        if bad :
            raise TailOutside("half-plane from term {} misses the vertices of terms {}".format(first, bad))

    chain = NeighborhoodChain([h for h, _ in entries], [i for _, i in entries],
                              restarts=len(report['strict_steps']))
    log.debug("track_limit horizon={} : {} half-planes, {} restarts".format(
        horizon, len(chain), chain.restarts))
    return chain


def ends_separated(c1, c2):
    """
    Separated(h1, h2, i, j) for the first pair of half-planes of the two
    chains with disjoint closures, UnknownAtHorizon() if there is none.
    """
    if len(c1) == 0 or len(c2) == 0 :
        raise ValueError("chains must be nonempty")
    for i, h1 in enumerate(c1) :
        for j, h2 in enumerate(c2) :
            if halfplanes_disjoint(h1, h2) :
                return Separated(h1, h2, i, j)
    return UnknownAtHorizon()


def _sample_side(pole, n, rng):
    foot, v = _line_frame(pole)
    s = rng.uniform(-3., 3., n)
    t = rng.uniform(1e-3, 3., n)
    along = np.cosh(s)[:, None]*foot[None, :] + np.sinh(s)[:, None]*v[None, :]
    return np.cosh(t)[:, None]*along + np.sinh(t)[:, None]*pole[None, :]

def separation_witness_check(sep, n=100, seed=0):
    """
    Samples n points in each half-plane of a Separated verdict and checks
    that none of them lies in the other one.

    Returns:
        number of failures
    """
    rng = np.random.RandomState(seed)
    p, q = local_pair(sep.h1, sep.h2)
    p = p/np.sqrt(mdot(p, p))
    q = q/np.sqrt(mdot(q, q))
    nfailed = 0
    for a, b in ((p, q), (q, p)) :
        pts = _sample_side(a, n, rng)
        nfailed += int(np.sum(mdot(pts, b) >= 0))
    return nfailed
