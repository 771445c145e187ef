"""
The {5,4} pentagrid restricted to a quarter: labelled pentagons, the
cornucopia decomposition into regions, and the Fibonacci tree coordinates
of the tiles.

Conventions for the base quarter: its vertex is the origin O, its border p
is the ray along +x and its border q the ray along +y.  The head P_0 has the
vertices A, B, C, D, E counter-clockwise with E = O, A on p and D on q, and
side i joins the vertices i-1 and i (side 4 lies on q and side 5 on p).

Every pentagon, quarter and region is the image of its base object under a
word-tracked Isometry, its frame.
"""

from collections import namedtuple

import numpy as np
from astropy.table import Table
from scipy.spatial import cKDTree as KDTree

from pentameter.log import get_logger
from pentameter.hyperbolic import (Isometry, MPoint, MLine, HalfPlane, Ray,
                                   GeometryError, mdot, dist, tangent, project,
                                   translate_along, reflect_in, line_through,
                                   relative, tolerance, to_disc, origin, frame_of_hat)

PHI = (1+np.sqrt(5.))/2.

#- side length, cosh(a) = phi
SIDE = float(np.arccosh(PHI))
IN_RADIUS = float(np.arccosh(np.cos(np.pi/4)/np.sin(np.pi/5)))
CIRCUMRADIUS = float(np.arccosh(1./np.tan(np.pi/5)))
#- largest distance between two points of a pentagon
DIAMETER = CIRCUMRADIUS + IN_RADIUS

WHITE = 'W'
BLACK = 'B'

LABELS = ('A', 'B', 'C', 'D', 'E')

class InvalidPath(GeometryError):
    pass


def constants():
    """
    Returns dict with the side a, in_radius, circumradius and diameter b of the pentagon.
    """
    return dict(a=SIDE, in_radius=IN_RADIUS, circumradius=CIRCUMRADIUS, b=DIAMETER)


def _base_vertices():
    ch = PHI
    sh = np.sqrt(PHI)  # sinh(a), as phi^2-1 = phi
    return np.array([
        [ch, sh, 0.],          # A, on p
        [ch*ch, sh*ch, sh],    # B
        [ch*ch, sh, sh*ch],    # C
        [ch, 0., sh],          # D, on q
        [1., 0., 0.],          # E = O
    ])

BASE_VERTICES = _base_vertices()
BASE_POLES = np.array([line_through(BASE_VERTICES[i-1], BASE_VERTICES[i]).pole for i in range(1, 5)]
                      + [line_through(BASE_VERTICES[4], BASE_VERTICES[0]).pole])
BASE_INCENTER = MPoint(BASE_VERTICES.sum(axis=0)).coords

#- the shift of amplitude a along p, moving side 4 onto side 1
SHIFT_P = Isometry.generator('shift_p', translate_along(BASE_POLES[4], SIDE))
#- the shift of amplitude a along q, moving side 5 onto side 3
SHIFT_Q = Isometry.generator('shift_q', translate_along(-BASE_POLES[3], SIDE))
#- the shift of amplitude a along side 1 from A to B, moving side 5 onto side 2
SHIFT_SIDE1 = Isometry.generator('shift_side1', translate_along(BASE_POLES[0], SIDE))
#- reflections of the base pentagon in its sides
MIRRORS = [Isometry.generator('mirror{}'.format(i+1), reflect_in(BASE_POLES[i])) for i in range(5)]

#- side correspondence of Lemma heads: side of P_i -> side of the head of R_{i+1},
#- side of P_0 -> side of the head of R_0, for lines which coincide
CORRESPONDING_SIDES = {
    'next' : {1 : 1, 2 : 5, 3 : 4},
    'first' : {2 : 1, 3 : 5, 4 : 4},
}

def corresponding_sides(kind):
    if kind not in CORRESPONDING_SIDES :
        raise ValueError("kind should be one of {}".format(sorted(CORRESPONDING_SIDES)))
    return dict(CORRESPONDING_SIDES[kind])


class Pentagon(object):
    """
    Labelled right-angled pentagon, image of the base pentagon by frame.

    The pentagon lies on the positive side of each of its five side lines.
    """
    def __init__(self, frame):
        self.frame = frame
        self._vertices = frame.apply(BASE_VERTICES)
        self._poles = frame.apply(BASE_POLES)

    @property
    def vertices(self):
        return [MPoint(v) for v in self._vertices]

    def vertex(self, label):
        if not isinstance(label, int) :
            label = LABELS.index(label)
        return MPoint(self._vertices[label])

    def side(self, i):
        if i < 1 or i > 5 :
            raise ValueError("sides are numbered 1 to 5, got {}".format(i))
        return MLine(self._poles[i-1])

    def half_plane(self, i):
        """H_i, the closed half-plane of side i containing the pentagon."""
        return HalfPlane.framed(self.frame, MLine(BASE_POLES[i-1]))

    def contains(self, x, strict=False):
        x = np.asarray(getattr(x, 'coords', x), dtype=float)
        signs = mdot(self._poles, x)
        tol = tolerance(x, self._poles[0])
        if strict :
            return bool(np.all(signs > tol))
        return bool(np.all(signs >= -tol))

    def contains_points(self, points, strict=False):
        """Vectorized membership of a (N,3) array of points."""
        signs = mdot(points[:, None, :], self._poles[None, :, :])
        if strict :
            return np.all(signs > 1e-9, axis=1)
        return np.all(signs >= -1e-9, axis=1)

    def incenter(self):
        return MPoint(self.frame.apply(BASE_INCENTER))

    def angles(self):
        """Interior angles at A, B, C, D, E."""
        res = []
        for i in range(5) :
            v = self._vertices[i]
            t1 = tangent(v, self._vertices[i-1])
            t2 = tangent(v, self._vertices[(i+1) % 5])
            res.append(float(np.arccos(np.clip(mdot(t1, t2), -1, 1))))
        return np.array(res)

    def side_lengths(self):
        """Lengths of the sides 1 to 5."""
        return np.array([dist(self._vertices[i-1], self._vertices[i]) for i in range(1, 5)]
                        + [dist(self._vertices[4], self._vertices[0])])

    def neighbor(self, i):
        """Reflection of the pentagon in its side i, labels carried by the reflection."""
        return Pentagon(self.frame.compose(MIRRORS[i-1]))

    def shared_vertices(self, other):
        """Indices (i,j) of the vertices of self and other which coincide."""
        rel = relative(self.frame, other.frame)
        theirs = BASE_VERTICES.dot(rel.T)
        close = -mdot(BASE_VERTICES[:, None, :], theirs[None, :, :]) < np.cosh(SIDE/2)
        return [(int(i), int(j)) for i, j in zip(*np.where(close))]

    def lower_strip(self):
        return LowerStrip(self)

    def disc_vertices(self):
        return np.array([to_disc(v) for v in self._vertices])

    def __repr__(self):
        return "Pentagon({})".format(self.frame)


class LowerStrip(object):
    """
    Lower strip H1 & H4 & not H5 of a labelled pentagon (closed).
    """
    def __init__(self, pentagon):
        self.pentagon = pentagon
        frame = pentagon.frame
        self.h1 = HalfPlane.framed(frame, MLine(BASE_POLES[0]))
        self.h4 = HalfPlane.framed(frame, MLine(BASE_POLES[3]))
        self.not_h5 = HalfPlane.framed(frame, MLine(-BASE_POLES[4]))

    @property
    def half_planes(self):
        return [self.h1, self.h4, self.not_h5]

    def contains(self, x, strict=False):
        x = np.asarray(getattr(x, 'coords', x), dtype=float)
        signs = np.array([h.boundary.side(x) for h in self.half_planes])
        tol = tolerance(x)
        if strict :
            return bool(np.all(signs > tol))
        return bool(np.all(signs >= -tol))

    def contains_points(self, points, strict=False):
        poles = np.array([h.boundary.pole for h in self.half_planes])
        signs = mdot(points[:, None, :], poles[None, :, :])
        if strict :
            return np.all(signs > 1e-9, axis=1)
        return np.all(signs >= -1e-9, axis=1)

    def sample(self, n, rng, depth=3., margin=1e-3):
        """
        n points strictly inside the strip, at most depth away from side 5.

        In the frame of the pentagon the strip is {0 <= t <= a, s <= 0} in
        Fermi coordinates (t along side 5, s across it).
        """
        t = rng.uniform(margin, SIDE-margin, n)
        s = -rng.uniform(margin, depth, n)
        local = np.column_stack([np.cosh(t)*np.cosh(s), np.sinh(t)*np.cosh(s), np.sinh(s)])
        return self.pentagon.frame.apply(local)


class Quarter(object):
    """
    Quarter with hat (A, S, B), the image of the base quarter by frame.

    The base quarter has hat (A, O, D) of the base pentagon; its borders are
    the rays from O through A (along p) and through D (along q).
    """
    def __init__(self, frame):
        self.frame = frame

    @classmethod
    def hat_of(cls, a, s, b):
        return cls(frame_of_hat(a, s, b))

    @property
    def hat(self):
        m = self.frame
        return (MPoint(m.apply(BASE_VERTICES[0])), MPoint(m.apply(BASE_VERTICES[4])),
                MPoint(m.apply(BASE_VERTICES[3])))

    @property
    def vertex(self):
        return MPoint(self.frame.matrix[:, 0])

    @property
    def head(self):
        return Pentagon(self.frame)

    @property
    def borders(self):
        a, s, b = self.hat
        return (Ray.through(s, a), Ray.through(s, b))

    def half_planes(self):
        """The two closed border half-planes, the first one bounded by the line S-A."""
        return [HalfPlane.framed(self.frame, MLine([0., 0., 1.])),
                HalfPlane.framed(self.frame, MLine([0., 1., 0.]))]

    def contains(self, x, strict=False):
        x = np.asarray(getattr(x, 'coords', x), dtype=float)
        local = self.frame.inverse().apply(x)
        tol = tolerance(local)
        if strict :
            return bool(local[1] > tol and local[2] > tol)
        return bool(local[1] >= -tol and local[2] >= -tol)

    def same_as(self, other, tol=1e-7):
        rel = relative(self.frame, other.frame)
        return float(np.max(np.abs(rel-np.eye(3)))) <= tol*max(1., float(np.max(np.abs(rel))))

    def hat_list(self):
        return [p.tolist() for p in self.hat]

    def __repr__(self):
        return "Quarter({})".format(self.frame)


def base_quarter():
    return Quarter(Isometry.identity())

def base_pentagon():
    return Pentagon(Isometry.identity())


Region = namedtuple('Region', ['quarter', 'generation', 'path'])

class Tile(object):
    """
    Tile of the pentagrid restricted to a quarter, with its tree coordinate.
    """
    def __init__(self, pentagon, path, color, generation=0):
        self.pentagon = pentagon
        self.path = tuple(path)
        self.color = color
        self.generation = generation

    def quarter(self):
        """Natural quarter of the tile: its frame applied to the base quarter."""
        return Quarter(self.pentagon.frame)

    def tojson(self):
        return dict(path=list(self.path), color=self.color, generation=int(self.generation),
                    vertices=[[float(c) for c in v] for v in self.pentagon._vertices])

    def __repr__(self):
        return "Tile(path={}, color={}, generation={})".format(list(self.path), self.color, self.generation)


def cornucopia(quarter, n):
    """
    The pentagons P_0 .. P_n along the border p of quarter.
    """
    if n < 0 :
        raise ValueError("n must be nonnegative")
    res = []
    frame = quarter.frame
    for _ in range(n+1) :
        res.append(Pentagon(frame))
        frame = frame.compose(SHIFT_P)
    return res


def _region_offset(j):
    #- frame of the region R_j relative to its parent region, and the tree
    #- path from the head of the parent to the head of R_j
    if j == 0 :
        return SHIFT_Q, (1,)
    if j == 1 :
        return SHIFT_SIDE1, (2,)
    return SHIFT_P.power(j-1).compose(SHIFT_SIDE1), (0,)*(j-1) + (1,)

def child_regions(region, n):
    """
    The regions R_0 .. R_n of the next generation inside region.
    """
    if n < 0 :
        raise ValueError("n must be nonnegative")
    res = []
    for j in range(n+1) :
        offset, steps = _region_offset(j)
        res.append(Region(Quarter(region.quarter.frame.compose(offset)), region.generation+1,
                          tuple(region.path)+steps))
    return res

def root_region(quarter):
    return Region(quarter, 0, ())


def _walk(frame, path, generation, d, tiles, regions):
    depth = len(path)
    regions.append(Region(Quarter(frame), generation, path))
    node = frame
    for k in range(d-depth+1) :
        node_path = path + (0,)*k
        tiles.append(Tile(Pentagon(node), node_path, WHITE if k == 0 else BLACK, generation))
        if depth+k+1 <= d :
            if k == 0 :
                _walk(node.compose(SHIFT_Q), node_path+(1,), generation+1, d, tiles, regions)
                _walk(node.compose(SHIFT_SIDE1), node_path+(2,), generation+1, d, tiles, regions)
            else :
                _walk(node.compose(SHIFT_SIDE1), node_path+(1,), generation+1, d, tiles, regions)
        node = node.compose(SHIFT_P)

def _sortkey(obj):
    return (len(obj.path), obj.path)

def decompose(quarter, d):
    """
    All tiles of quarter at tree distance <= d from the root.

    The cornucopia of every region is the leftmost branch of the subtree of
    its head and the heads of its child regions are its white nodes.

    Args:
        quarter: Quarter
        d: maximum tree distance

    Returns:
        list of Tile, sorted by (len(path), path)
    """
    if d < 0 :
        raise ValueError("d must be nonnegative")
    tiles = []
    _walk(quarter.frame, (), 0, d, tiles, [])
    tiles.sort(key=_sortkey)
    get_logger().debug("decompose d={} : {} tiles".format(d, len(tiles)))
    return tiles

def regions(quarter, d):
    """All regions whose head is at tree distance <= d, the quarter itself included."""
    res = []
    _walk(quarter.frame, (), 0, d, [], res)
    res.sort(key=_sortkey)
    return res


def tile_of_path(path, quarter):
    """
    The tile with tree coordinate path, built along its branch.

    Raises:
        InvalidPath if an index exceeds the arity of its node
    """
    node = quarter.frame
    k = 0
    generation = 0
    for step in path :
        arity = 3 if k == 0 else 2
        if not isinstance(step, (int, np.integer)) or step < 0 or step >= arity :
            raise InvalidPath("index {} is not a son of a {} node in path {}".format(
                step, WHITE if k == 0 else BLACK, list(path)))
        if step == 0 :
            node = node.compose(SHIFT_P)
            k += 1
        elif k == 0 and step == 1 :
            node = node.compose(SHIFT_Q)
            k = 0
            generation += 1
        else :
            node = node.compose(SHIFT_SIDE1)
            k = 0
            generation += 1
    return Tile(Pentagon(node), path, WHITE if k == 0 else BLACK, generation)


class FibNode(object):
    def __init__(self, color, path):
        self.color = color
        self.path = tuple(path)
        self.children = []

    def sons(self):
        return [c.color for c in self.children]

    def __repr__(self):
        return "FibNode({}, {})".format(self.color, list(self.path))

_RULES = {WHITE : (BLACK, WHITE, WHITE), BLACK : (BLACK, WHITE)}

def fib_tree(d):
    """
    Fibonacci tree of depth d from a white root, W -> BWW and B -> BW.
    """
    if d < 0 :
        raise ValueError("d must be nonnegative")
    root = FibNode(WHITE, ())
    level = [root]
    for _ in range(d) :
        nxt = []
        for node in level :
            for i, color in enumerate(_RULES[node.color]) :
                child = FibNode(color, node.path+(i,))
                node.children.append(child)
                nxt.append(child)
        level = nxt
    return root

def tree_levels(root):
    """Nodes of the tree level by level."""
    levels = []
    level = [root]
    while level :
        levels.append(level)
        level = [c for node in level for c in node.children]
    return levels

def fib_color(path):
    """Color of the node at path, following the rewriting rules from the root."""
    color = WHITE
    for step in path :
        rule = _RULES[color]
        if step < 0 or step >= len(rule) :
            raise InvalidPath("index {} is not a son of a {} node".format(step, color))
        color = rule[step]
    return color

def fibonacci(n):
    """f_n with f_0 = f_1 = 1."""
    a, b = 1, 1
    for _ in range(n) :
        a, b = b, a+b
    return a

def level_counts(d):
    return [fibonacci(2*k+1) for k in range(d+1)]


def region_distance(region):
    """
    Distance from the vertex of the base quarter to a region, measured through
    the orthogonal projection on the side 5 of its head, clamped to that side.
    """
    head = region.quarter.head
    o = origin()
    e = head.vertex('E')
    a = head.vertex('A')
    k = project(o, head.side(5))
    if abs(dist(e, k) + dist(k, a) - SIDE) > 1e-7 :
        k = e if dist(k, e) < dist(k, a) else a
    return dist(o, k)


def shared_edges(tiles, radius=1e-6):
    """
    Pairs of tiles sharing an edge, found with a KD-tree on the disc images of
    the edge midpoints.

    Returns:
        list of (i, side_i, j, side_j, gap) where gap is the largest difference
        between the matched endpoints
    """
    mids = []
    owners = []
    for i, tile in enumerate(tiles) :
        v = tile.pentagon._vertices
        for s in range(1, 6) :
            m = MPoint(v[s-1]+v[s % 5])
            mids.append(to_disc(m))
            owners.append((i, s))
    tree = KDTree(np.array(mids))
    res = []
    for k1, k2 in sorted(tree.query_pairs(radius)) :
        i, si = owners[k1]
        j, sj = owners[k2]
        if i == j :
            continue
        vi = tiles[i].pentagon._vertices
        vj = tiles[j].pentagon._vertices
        ei = np.array([vi[si-1], vi[si % 5]])
        ej = np.array([vj[sj-1], vj[sj % 5]])
        gap = min(np.max(np.abs(ei-ej)), np.max(np.abs(ei-ej[::-1])))
        res.append((i, si, j, sj, float(gap)))
    return res


def interior_samples(pentagon, n, rng):
    """n points strictly inside pentagon, normalized positive combinations of its vertices."""
    w = rng.uniform(0.05, 1., size=(n, 5))
    pts = w.dot(pentagon._vertices)
    return pts/np.sqrt(-mdot(pts, pts))[:, None]


def tiles_table(tiles):
    """astropy Table view of a list of tiles."""
    t = Table()
    t['PATH'] = [",".join(str(s) for s in tile.path) for tile in tiles]
    t['DEPTH'] = np.array([len(tile.path) for tile in tiles], dtype=int)
    t['COLOR'] = [tile.color for tile in tiles]
    t['GENERATION'] = np.array([tile.generation for tile in tiles], dtype=int)
    centers = np.array([to_disc(tile.pentagon.incenter()) for tile in tiles]).reshape(-1, 2)
    t['X_DISC'] = centers[:, 0]
    t['Y_DISC'] = centers[:, 1]
    return t

def verify_strip_lemmas(d, quarter=None, nsamples=200, seed=0):
    """
    Numerical check of the strip inclusions on all tiles at distance < d.

    For each tile P:
      - visilow: strip(P) is in the strips of its reflections in sides 2 and 3
        (labelled by the shifts along sides 1 and 4);
      - visi_shift: with Q the shift of P along side 5, the strip of the shift
        of Q along its side 1 contains strip(P), the one along its side 4 does
        not meet the interior of strip(P);
    and for each region head T other than the root:
      - ovisible: the vertex of the quarter is not on the side of T's side 5
        containing T;
      - oposit: the vertex of the quarter is in the lower strip of T.

    Returns:
        astropy Table with columns PATH, CHECK, NSAMPLES, NFAILED, PASSED
    """
    log = get_logger()
    if d < 1 :
        raise ValueError("d must be at least 1")
    if quarter is None :
        quarter = base_quarter()
    rng = np.random.RandomState(seed)
    o = quarter.vertex.coords

    rows = []
    def _add(tile, check, nsamp, nfailed):
        rows.append((",".join(str(s) for s in tile.path), check, nsamp, nfailed, nfailed == 0))

    for tile in decompose(quarter, d-1) :
        pen = tile.pentagon
        strip = pen.lower_strip()
        pts = strip.sample(nsamples, rng)
        checks = [
            ('visilow_side2', Pentagon(pen.frame.compose(SHIFT_SIDE1)), True),
            ('visilow_side3', Pentagon(pen.frame.compose(SHIFT_Q)), True),
            ('visi_shift_side2', Pentagon(pen.frame.compose(SHIFT_P).compose(SHIFT_SIDE1)), True),
            ('visi_shift_side3', Pentagon(pen.frame.compose(SHIFT_P).compose(SHIFT_Q)), False),
        ]
        for name, other, inclusion in checks :
            if inclusion :
                ok = other.lower_strip().contains_points(pts)
            else :
                ok = ~other.lower_strip().contains_points(pts, strict=True)
            _add(tile, name, nsamples, int(np.sum(~ok)))

        if tile.color == WHITE and len(tile.path) > 0 :
            pole5 = pen._poles[4]
            _add(tile, 'ovisible', 1, int(mdot(o, pole5) > tolerance(o, pole5)))
            _add(tile, 'oposit', 1, int(not strip.contains(o)))

    t = Table(rows=rows, names=('PATH', 'CHECK', 'NSAMPLES', 'NFAILED', 'PASSED'))
    log.debug("strip lemmas d={} : {} checks, {} failed".format(d, len(t), np.sum(~t['PASSED'])))
    return t
