"""
Hyperbolic plane arithmetic in the hyperboloid model.

Points are unit timelike vectors x (<x,x> = -1, x0 > 0) of Minkowski space
with the form <u,v> = -u0*v0 + u1*v1 + u2*v2.  A line is represented by its
unit spacelike pole l, the line being {x : <x,l> = 0} and its positive
half-plane {x : <x,l> >= 0}.  An end (ideal point) is a null vector scaled
to u0 = 1.  Isometries are 3x3 matrices m with m^T eta m = eta.

Isometries may carry the word of named generators they were composed from.
Comparisons between two framed objects are then evaluated after cancelling
the common prefix of their words (see common_frame), which keeps predicates
exact between neighbouring objects far away from the origin.
"""

from collections import namedtuple

import numpy as np

from pentameter.log import get_logger

ETA = np.diag([-1., 1., 1.])

#- unit norm tolerance after construction
EPS_NORM = 1e-12
#- tolerance of geometric predicates (incidence, orientation, classification)
EPS_GEO = 1e-9

#- relative round-off floor of one evaluation of the form
_ROUNDOFF = 64*np.finfo(float).eps

#- past this magnitude <x,x> is no longer resolved in double precision:
#- vectors and matrices are kept as computed, without renormalization
RESOLUTION_LIMIT = 1e7


class GeometryError(ValueError):
    pass

class DegenerateInput(GeometryError):
    pass

class NegativeDistance(GeometryError):
    pass

class SameLine(GeometryError):
    pass

class NotUltraparallel(GeometryError):
    pass


Intersecting = namedtuple('Intersecting', ['angle'])
Parallel = namedtuple('Parallel', ['end'])
Ultraparallel = namedtuple('Ultraparallel', ['distance'])


def set_tolerances(eps_norm=None, eps_geo=None):
    """
    Install process wide tolerances (called once by the command line tools).
    """
    global EPS_NORM, EPS_GEO
    if eps_norm is not None :
        if eps_norm <= 0 :
            raise ValueError("eps_norm must be positive, got {}".format(eps_norm))
        EPS_NORM = float(eps_norm)
    if eps_geo is not None :
        if eps_geo <= 0 :
            raise ValueError("eps_geo must be positive, got {}".format(eps_geo))
        EPS_GEO = float(eps_geo)
    get_logger().debug("eps_norm={} eps_geo={}".format(EPS_NORM, EPS_GEO))


def mdot(u, v):
    """
    Minkowski form -u0*v0 + u1*v1 + u2*v2, along the last axis of u and v.
    """
    u = _vec(u, flat=False)
    v = _vec(v, flat=False)
    return -u[..., 0]*v[..., 0] + u[..., 1]*v[..., 1] + u[..., 2]*v[..., 2]


def _vec(x, flat=True):
    if isinstance(x, MLine) :
        x = x.pole
    elif isinstance(x, (MPoint, IdealPoint)) :
        x = x.coords
    x = np.asarray(x, dtype=float)
    if flat :
        x = x.reshape(3)
    return x

def _scale(*vectors):
    return max(1., max(float(np.max(np.abs(v))) for v in vectors))

def resolvable(x):
    """True if the form can still be evaluated with relative precision on x."""
    return float(np.max(np.abs(x))) <= RESOLUTION_LIMIT

def tolerance(u, v=None):
    """
    Tolerance for the sign of <u,v>: EPS_GEO widened to the round-off of the operands.
    """
    u = _vec(u)
    v = u if v is None else _vec(v)
    return max(EPS_GEO, _ROUNDOFF*_scale(u)*_scale(v))


class MPoint(object):
    """
    Ordinary point of the hyperbolic plane.

    Args:
        coords: Minkowski coordinates (x0, x1, x2)
        normalize: if True, rescale onto the hyperboloid
    """
    def __init__(self, coords, normalize=True):
        x = np.array(_vec(coords))
        if not np.all(np.isfinite(x)) or x[0] <= 0 :
            raise DegenerateInput("{} is not on the upper sheet".format(x))
        if resolvable(x) :
            norm = mdot(x, x)
            if normalize :
                if norm >= 0 :
                    raise DegenerateInput("{} is not timelike".format(x))
                x /= np.sqrt(-norm)
            elif abs(norm+1) > EPS_NORM*_scale(x)**2 :
                raise GeometryError("<x,x>={} for point {}".format(norm, x))
        x.flags.writeable = False
        self.coords = x

    @property
    def x0(self):
        return self.coords[0]

    @property
    def x1(self):
        return self.coords[1]

    @property
    def x2(self):
        return self.coords[2]

    def isclose(self, other, tol=None):
        if tol is None :
            tol = tolerance(self, other)
        return -mdot(self, other) - 1. <= tol

    def tolist(self):
        return [float(v) for v in self.coords]

    @classmethod
    def fromlist(cls, values):
        return cls(values)

    def __repr__(self):
        return "MPoint({:.12g}, {:.12g}, {:.12g})".format(*self.coords)


class MLine(object):
    """
    Oriented line given by its spacelike pole; the positive side is {<x,pole> >= 0}.
    """
    def __init__(self, pole, normalize=True):
        p = np.array(_vec(pole))
        if not np.all(np.isfinite(p)) :
            raise DegenerateInput("pole {} is not finite".format(p))
        if resolvable(p) :
            norm = mdot(p, p)
            if normalize :
                if norm <= 0 :
                    raise DegenerateInput("pole {} is not spacelike".format(p))
                p /= np.sqrt(norm)
            elif abs(norm-1) > EPS_NORM*_scale(p)**2 :
                raise GeometryError("<l,l>={} for pole {}".format(norm, p))
        p.flags.writeable = False
        self.pole = p

    def side(self, x):
        """Signed value <x,pole>, the sinh of the signed distance for an ordinary point."""
        return float(mdot(x, self.pole))

    def contains(self, x, tol=None):
        if tol is None :
            tol = tolerance(x, self.pole)
        return abs(self.side(x)) <= tol

    def flipped(self):
        return MLine(-self.pole, normalize=False)

    def same_line(self, other, oriented=False):
        return _same_line(self.pole, _vec(other), oriented=oriented)

    def tolist(self):
        return [float(v) for v in self.pole]

    @classmethod
    def fromlist(cls, values):
        return cls(values)

    def __neg__(self):
        return self.flipped()

    def __repr__(self):
        return "MLine({:.12g}, {:.12g}, {:.12g})".format(*self.pole)


class IdealPoint(object):
    """
    End of the hyperbolic plane, a null vector scaled so that u0 = 1.
    """
    def __init__(self, coords):
        u = np.array(_vec(coords))
        if not np.all(np.isfinite(u)) or u[0] == 0 :
            raise DegenerateInput("{} is not a null direction".format(u))
        u /= u[0]
        if abs(mdot(u, u)) > max(EPS_GEO, EPS_NORM*_scale(u)**2) :
            raise DegenerateInput("{} is not a null vector".format(u))
        u.flags.writeable = False
        self.coords = u

    def isclose(self, other, tol=None):
        if tol is None :
            tol = EPS_GEO
        return float(np.max(np.abs(self.coords-_vec(other)))) <= tol

    def tolist(self):
        return [float(v) for v in self.coords]

    @classmethod
    def fromlist(cls, values):
        return cls(values)

    def __repr__(self):
        return "IdealPoint({:.12g}, {:.12g}, {:.12g})".format(*self.coords)


class HalfPlane(object):
    """
    Half-plane {x : <x,boundary> >= 0} (closed) or > 0 (open).

    A half-plane may also be attached to a frame, an Isometry, with its
    boundary given in the local coordinates of that frame. The global
    boundary is always available; pairwise predicates use the frames when
    both operands have one.
    """
    def __init__(self, boundary, closed=True):
        if not isinstance(boundary, MLine) :
            boundary = MLine(boundary)
        self.boundary = boundary
        self.closed = closed
        self.frame = None
        self.local = None

    @classmethod
    def framed(cls, frame, local, closed=True):
        if not isinstance(local, MLine) :
            local = MLine(local)
        h = cls(frame.apply(local), closed=closed)
        h.frame = frame
        h.local = local
        return h

    def contains(self, x, tol=None):
        s = self.boundary.side(x)
        if tol is None :
            tol = tolerance(x, self.boundary)
        if self.closed :
            return s >= -tol
        return s > tol

    def touches(self, alpha):
        return halfplane_touches(self, alpha)

    def complement(self):
        if self.frame is not None :
            return HalfPlane.framed(self.frame, self.local.flipped(), closed=not self.closed)
        return HalfPlane(self.boundary.flipped(), closed=not self.closed)

    def witness(self, depth=1.):
        """A point at distance depth inside the half-plane, above the foot of the origin."""
        return MPoint(_inside_point(self.boundary.pole, depth))

    def __repr__(self):
        return "HalfPlane({}, closed={})".format(self.boundary, self.closed)


class Ray(object):
    """
    Ray issued from origin toward the end direction.
    """
    def __init__(self, origin, direction):
        if not isinstance(direction, IdealPoint) :
            direction = IdealPoint(direction)
        self.origin = origin
        self.direction = direction

    @classmethod
    def through(cls, origin, point):
        return cls(origin, IdealPoint(origin.coords + tangent(origin, point)))

    def point_at(self, t):
        return point_toward(self.origin, self.direction, t)

    def line(self):
        return line_through(self.origin, self.point_at(1.))

    def __repr__(self):
        return "Ray({}, {})".format(self.origin, self.direction)


#- registry of named generators, filled at import time by the modules that
#- define them; words are tuples of these names
_GENERATORS = dict()

def _renormalize(m):
    if not resolvable(m) :
        return m
    c0 = m[:, 0]/np.sqrt(-mdot(m[:, 0], m[:, 0]))
    c1 = m[:, 1] + mdot(m[:, 1], c0)*c0
    c1 = c1/np.sqrt(mdot(c1, c1))
    c2 = m[:, 2] + mdot(m[:, 2], c0)*c0 - mdot(m[:, 2], c1)*c1
    c2 = c2/np.sqrt(mdot(c2, c2))
    return np.column_stack([c0, c1, c2])

def lorentz_inverse(m):
    """Inverse of a Lorentz matrix, eta m^T eta."""
    return ETA.dot(np.asarray(m).T).dot(ETA)

def word_matrix(word):
    """Product of the generator matrices of word, renormalized as it grows."""
    m = np.eye(3)
    for name in word :
        if name not in _GENERATORS :
            raise KeyError("unknown generator '{}'".format(name))
        m = _renormalize(m.dot(_GENERATORS[name]))
    return m


class Isometry(object):
    """
    Isometry of the hyperbolic plane.

    Args:
        matrix: 3x3 Lorentz matrix preserving the upper sheet
        word: optional tuple of generator names whose product is matrix
        renormalize: Gram-Schmidt the columns against eta before checking
    """
    def __init__(self, matrix, word=None, renormalize=True):
        m = np.array(matrix, dtype=float).reshape(3, 3)
        if renormalize :
            m = _renormalize(m)
        if not np.all(np.isfinite(m)) :
            raise GeometryError("isometry matrix is not finite")
        if m[0, 0] <= 0 :
            raise GeometryError("matrix does not preserve the upper sheet")
        if resolvable(m) :
            err = np.max(np.abs(m.T.dot(ETA).dot(m)-ETA))
            if err > EPS_GEO*_scale(m)**2 :
                raise GeometryError("not a Lorentz matrix, |m^T eta m - eta| = {}".format(err))
        m.flags.writeable = False
        self.matrix = m
        self.word = None if word is None else tuple(word)

    @classmethod
    def identity(cls):
        return cls(np.eye(3), word=())

    @classmethod
    def generator(cls, name, matrix):
        """
        Register matrix under name and return it as a one letter word.
        """
        m = _renormalize(np.array(getattr(matrix, 'matrix', matrix), dtype=float))
        if name in _GENERATORS and not np.allclose(_GENERATORS[name], m, rtol=0, atol=EPS_GEO) :
            raise ValueError("generator '{}' is already defined differently".format(name))
        _GENERATORS[name] = m
        return cls(m, word=(name,))

    def compose(self, other):
        if self.word is not None and other.word is not None :
            word = self.word + other.word
        else :
            word = None
        return Isometry(self.matrix.dot(other.matrix), word=word)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self):
        return Isometry(lorentz_inverse(self.matrix), renormalize=False)

    def power(self, n):
        if n < 0 :
            return self.inverse().power(-n)
        result = Isometry.identity() if self.word is not None else Isometry(np.eye(3))
        for _ in range(n) :
            result = result.compose(self)
        return result

    def apply(self, obj):
        """
        Image of a point, line, end, half-plane or ray, or of raw Minkowski vectors.
        """
        m = self.matrix
        if isinstance(obj, MPoint) :
            return MPoint(m.dot(obj.coords))
        if isinstance(obj, MLine) :
            return MLine(m.dot(obj.pole))
        if isinstance(obj, IdealPoint) :
            return IdealPoint(m.dot(obj.coords))
        if isinstance(obj, HalfPlane) :
            if obj.frame is not None :
                return HalfPlane.framed(self.compose(obj.frame), obj.local, closed=obj.closed)
            return HalfPlane(self.apply(obj.boundary), closed=obj.closed)
        if isinstance(obj, Ray) :
            return Ray(self.apply(obj.origin), self.apply(obj.direction))
        if isinstance(obj, np.ndarray) :
            return obj.dot(m.T)
        raise TypeError("don't know how to apply an isometry to {}".format(type(obj)))

    def preserves_orientation(self):
        return np.linalg.det(self.matrix) > 0

    def isclose(self, other, tol=None):
        if tol is None :
            tol = EPS_GEO*_scale(self.matrix, other.matrix)
        return float(np.max(np.abs(self.matrix-other.matrix))) <= tol

    def tolist(self):
        return self.matrix.tolist()

    def __repr__(self):
        if self.word is not None :
            return "Isometry(word={})".format(".".join(self.word) if self.word else "id")
        return "Isometry({})".format(self.matrix.tolist())


def common_frame(f, g):
    """
    Matrices of isometries f and g expressed in a shared reference frame.

    With words on both sides the shared frame is the product of their common
    prefix, otherwise it is f itself.

    Returns:
        (mf, mg) with f = C mf and g = C mg for the same isometry C
    """
    if f.word is not None and g.word is not None :
        n = 0
        nmax = min(len(f.word), len(g.word))
        while n < nmax and f.word[n] == g.word[n] :
            n += 1
        return word_matrix(f.word[n:]), word_matrix(g.word[n:])
    return np.eye(3), lorentz_inverse(f.matrix).dot(g.matrix)

def relative(f, g):
    """Matrix of g seen from the frame of f, i.e. f^-1 g."""
    mf, mg = common_frame(f, g)
    return lorentz_inverse(mf).dot(mg)


def origin():
    return MPoint([1., 0., 0.])

def dist(p, q):
    """Hyperbolic distance, cosh d = -<p,q>."""
    return float(np.arccosh(max(1., -mdot(p, q))))

def _cross(u, v):
    return ETA.dot(np.cross(_vec(u), _vec(v)))

def line_through(p, q):
    """
    Oriented line through p and q, with its positive side on the left of p -> q.
    """
    n = _cross(p, q)
    norm = mdot(n, n)
    if norm <= _ROUNDOFF*_scale(_vec(p))**2*_scale(_vec(q))**2 :
        raise DegenerateInput("cannot draw a line through coincident points {} and {}".format(p, q))
    return MLine(n)

def project(m, line):
    """Foot of the perpendicular from m to line."""
    x = _vec(m)
    p = _vec(line)
    return MPoint(x - mdot(x, p)*p)

def _inside_point(pole, depth):
    foot = _vec(project(origin(), pole))
    return np.cosh(depth)*foot + np.sinh(depth)*pole

def angle_of_parallelism(d):
    if d < 0 :
        raise NegativeDistance("angle of parallelism needs a nonnegative distance, got {}".format(d))
    return float(2*np.arctan(np.exp(-d)))

def _same_line(p, q, oriented=False):
    tol = EPS_GEO*_scale(p, q)
    if np.max(np.abs(p-q)) <= tol :
        return True
    return (not oriented) and np.max(np.abs(p+q)) <= tol

def line_relation(l, m):
    """
    Classify two lines as Intersecting(angle), Parallel(end) or Ultraparallel(distance).
    """
    p = _vec(l)
    q = _vec(m)
    if _same_line(p, q) :
        raise SameLine("lines {} and {} coincide".format(l, m))
    c = abs(float(mdot(p, q)))
    tol = tolerance(p, q)
    if c < 1-tol :
        return Intersecting(float(np.arccos(c)))
    if c <= 1+tol :
        u = _cross(p, q)
        if u[0] < 0 :
            u = -u
        return Parallel(IdealPoint(u))
    return Ultraparallel(float(np.arccosh(c)))

def intersection_point(l, m):
    n = _cross(l, m)
    if mdot(n, n) >= 0 :
        raise GeometryError("lines {} and {} do not meet".format(l, m))
    if n[0] < 0 :
        n = -n
    return MPoint(n)

def common_perpendicular(l, m):
    rel = line_relation(l, m)
    if not isinstance(rel, Ultraparallel) :
        raise NotUltraparallel("lines {} and {} are {}".format(l, m, type(rel).__name__))
    return MLine(_cross(l, m))

def reflect_in(line):
    """Reflection x -> x - 2<x,l>l."""
    p = _vec(line)
    return Isometry(np.eye(3) - 2*np.outer(p, ETA.dot(p)))

def _line_frame(pole):
    #- foot of the origin on the line and the unit forward direction there
    foot = _vec(project(origin(), pole))
    v = _cross(pole, foot)
    v = v/np.sqrt(mdot(v, v))
    return foot, v

def translate_along(line, t):
    """
    Translation of amplitude t along line, toward its forward end if t > 0.
    """
    pole = _vec(line)
    foot, v = _line_frame(pole)
    basis = np.column_stack([foot, v, pole])
    ch = np.cosh(t)
    sh = np.sinh(t)
    boost = np.array([[ch, sh, 0.], [sh, ch, 0.], [0., 0., 1.]])
    return Isometry(basis.dot(boost).dot(lorentz_inverse(basis)))

def ideal_points_of(line):
    """
    The two ends of line, forward end first (the end on the left of the positive side).
    """
    foot, v = _line_frame(_vec(line))
    return IdealPoint(foot+v), IdealPoint(foot-v)

def halfplane_touches(h, alpha):
    s = float(mdot(alpha, h.boundary.pole))
    tol = tolerance(alpha, h.boundary.pole)
    if h.closed :
        return s >= -tol
    return s > tol

def tangent(p, q):
    """Unit tangent vector at p pointing toward q (ordinary or ideal)."""
    x = _vec(p)
    y = _vec(q)
    v = y + mdot(y, x)*x
    norm = mdot(v, v)
    if norm <= _ROUNDOFF*_scale(x)**2*_scale(y)**2 :
        raise DegenerateInput("no direction from {} toward {}".format(p, q))
    return v/np.sqrt(norm)

def point_toward(p, q, t):
    """Point at distance t from p on the ray toward q."""
    return MPoint(np.cosh(t)*_vec(p) + np.sinh(t)*tangent(p, q))

def ends_angle(line, x):
    """Angle at x between the rays toward the two ends of line."""
    e1, e2 = ideal_points_of(line)
    c = mdot(tangent(x, e1), tangent(x, e2))
    return float(np.arccos(np.clip(c, -1., 1.)))

def frame_of_hat(a, s, b):
    """
    Isometry mapping the base hat (point on +x, origin, point on +y) onto the
    right-angled hat a-s-b, i.e. with columns s and the unit tangents toward a and b.
    """
    ta = tangent(s, a)
    tb = tangent(s, b)
    c = mdot(ta, tb)
    if abs(c) > max(1e-6, tolerance(ta, tb)) :
        raise DegenerateInput("hat is not right-angled, cos={}".format(c))
    return Isometry(np.column_stack([_vec(s), ta, tb]))

def local_pair(h1, h2):
    """Poles of two half-planes in a common frame."""
    if h1.frame is not None and h2.frame is not None :
        m1, m2 = common_frame(h1.frame, h2.frame)
        return m1.dot(h1.local.pole), m2.dot(h2.local.pole)
    return h1.boundary.pole, h2.boundary.pole

def halfplane_within(inner, outer):
    """
    True if the closed half-plane inner is contained in outer: the boundaries
    do not cross, both ends of inner's boundary are touched by outer and so
    is a witness point of inner.
    """
    p, q = local_pair(inner, outer)
    c = float(mdot(p, q))
    tol = tolerance(p, q)
    if abs(c) < 1-tol :
        return False
    for end in ideal_points_of(p) :
        if mdot(end, q) < -tolerance(end, q) :
            return False
    witness = _inside_point(p, 1.)
    return mdot(witness, q) >= -tolerance(witness, q)

def halfplanes_disjoint(h1, h2):
    """
    True if the closures of h1 and h2 are disjoint: ultraparallel boundaries
    with positive sides facing away from each other.
    """
    p, q = local_pair(h1, h2)
    if mdot(p, q) >= -1-tolerance(p, q) :
        return False
    f1 = _vec(project(origin(), p))
    f2 = _vec(project(origin(), q))
    return mdot(f1, q) < -tolerance(f1, q) and mdot(f2, p) < -tolerance(f2, p)

def to_disc(x):
    """Poincare disc coordinates of an ordinary or ideal point."""
    if isinstance(x, IdealPoint) :
        u = x.coords
        return np.array([u[1]/u[0], u[2]/u[0]])
    v = _vec(x)
    return np.array([v[1]/(1+v[0]), v[2]/(1+v[0])])

def from_disc(x, y):
    """Point of the hyperboloid with disc coordinates (x, y), |(x,y)| < 1."""
    r2 = x*x + y*y
    if r2 >= 1 :
        raise DegenerateInput("({}, {}) is not inside the unit disc".format(x, y))
    return MPoint(np.array([1+r2, 2*x, 2*y])/(1-r2))
