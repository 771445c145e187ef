"""
Embedding calculus on quarters of the pentagrid.

F1 is embedded in F2 (F1 <= F2) when F1 is contained in F2, strictly
embedded (F1 < F2) when F1 is contained in the interior of F2.  A one-step
embedding additionally requires that the heads of F1 and F2 share an edge.
Sequences of quarters are classified over a finite horizon.
"""


import numpy as np

from pentameter.log import get_logger
from pentameter.hyperbolic import (GeometryError, Isometry, MPoint, mdot, relative,
                                   tolerance, frame_of_hat, reflect_in, word_matrix)
from pentameter.pentagrid import (BASE_VERTICES, BASE_POLES, BASE_INCENTER, SIDE, Quarter,
                                  base_quarter, tile_of_path)
from pentameter.stepmask import stepmask

NOT_EMBEDDED = 'NotEmbedded'
EMBEDDED = 'Embedded'
STRICTLY_EMBEDDED = 'StrictlyEmbedded'

NO_STEP = 'NoStep'
NONSTRICT_STEP = 'NonStrictStep'
STRICT_STEP = 'StrictStep'

class NotEmbedded(GeometryError):
    pass

class NotStepwise(GeometryError):
    pass

class NoAlternation(GeometryError):
    pass

class AlternationPresent(GeometryError):
    pass

#- border half-planes of the base quarter (lines S-A and S-B), the ends of
#- its two border rays, and the four ends of its two border lines
_POLES = np.array([[0., 0., 1.], [0., 1., 0.]])
_RAY_ENDS = np.array([[1., 1., 0.], [1., 0., 1.]])
_LINE_ENDS = np.array([[1., 1., 0.], [1., -1., 0.], [1., 0., 1.], [1., 0., -1.]])


def _is_identity(rel, tol=1e-7):
    return float(np.max(np.abs(rel-np.eye(3)))) <= tol*max(1., float(np.max(np.abs(rel))))

def _embedding(rel):
    #- rel: frame of F1 seen from F2
    s1 = rel[:, 0]
    ends = _RAY_ENDS.dot(rel.T)
    ends = ends/ends[:, 0:1]
    poles1 = _POLES.dot(rel.T)

    strict = True
    for pole in _POLES :
        v = mdot(s1, pole)
        tol = tolerance(s1, pole)
        if v < -tol :
            return NOT_EMBEDDED
        strict &= bool(v > tol)
        for e in ends :
            v = mdot(e, pole)
            tol = tolerance(e, pole)
            if v < -tol :
                return NOT_EMBEDDED
            strict &= bool(v > tol)

    #- no border line of F2 may have an end strictly inside F1
    for f in _LINE_ENDS :
        if all(mdot(f, q) > tolerance(f, q) for q in poles1) :
            return NOT_EMBEDDED

    return STRICTLY_EMBEDDED if strict else EMBEDDED

def embeds(f1, f2):
    """
    Returns NOT_EMBEDDED, EMBEDDED or STRICTLY_EMBEDDED for F1 with respect to F2.

    F1 is embedded if its vertex and the ends of its two border rays are in
    both closed border half-planes of F2, and no border line of F2 has an end
    strictly inside F1.  Strict embedding requires strict signs for the
    vertex and for the ends.
    """
    return _embedding(relative(f2.frame, f1.frame))

def _shared_count(rel):
    theirs = BASE_VERTICES.dot(rel.T)
    close = -mdot(BASE_VERTICES[:, None, :], theirs[None, :, :]) < np.cosh(SIDE/2)
    return int(np.sum(close))

def one_step(f1, f2):
    """
    Returns NO_STEP, NONSTRICT_STEP or STRICT_STEP.

    A one-step embedding needs distinct heads sharing an edge and F1 <= F2.
    """
    rel = relative(f2.frame, f1.frame)
    if _is_identity(rel) :
        return NO_STEP
    if _shared_count(rel) != 2 :
        return NO_STEP
    kind = _embedding(rel)
    if kind == STRICTLY_EMBEDDED :
        return STRICT_STEP
    if kind == EMBEDDED :
        return NONSTRICT_STEP
    return NO_STEP


def _adjacent_moves():
    moves = []
    for i in range(5) :
        refl = reflect_in(BASE_POLES[i]).matrix
        verts = BASE_VERTICES.dot(refl.T)
        for j in range(5) :
            #- the reflected labels run clockwise
            frame = frame_of_hat(verts[(j-1) % 5], verts[j], verts[(j+1) % 5])
            moves.append(Isometry.generator('adjacent{}{}'.format(i+1, j), frame))
    return moves

ADJACENT_MOVES = _adjacent_moves()

def neighbor_quarters(f):
    """
    The 25 quarters whose head shares an edge with the head of f, one at
    each vertex of each of the five neighbouring pentagons.
    """
    return [Quarter(f.frame.compose(m)) for m in ADJACENT_MOVES]


def chain(f1, f2):
    """
    One-step chain G_1 = F1, ..., G_k = F2 of an embedded pair, following the
    tree path of the head of F1 in the decomposition of F2.

    Raises:
        NotEmbedded
    """
    from pentameter.locator import locate

    if embeds(f1, f2) == NOT_EMBEDDED :
        raise NotEmbedded("{} is not embedded in {}".format(f1, f2))
    rel = relative(f2.frame, f1.frame)
    if _is_identity(rel) :
        return [f1]
    tile = locate(MPoint(rel.dot(BASE_INCENTER)), base_quarter())
    path = tile.path
    res = [f1]
    for n in range(len(path)-1, 0, -1) :
        node = tile_of_path(path[:n], base_quarter())
        res.append(Quarter(f2.frame.compose(node.pentagon.frame)))
    res.append(f2)
    for i in range(len(res)-1) :
        if one_step(res[i], res[i+1]) == NO_STEP :
            raise NotEmbedded("no one-step chain from {} to {} (fails at term {})".format(f1, f2, i))
    return res

def vertex_gap(f1, f2):
    """
    Distance between the vertices of an embedded pair.

    Raises:
        NotEmbedded
    """
    if embeds(f1, f2) == NOT_EMBEDDED :
        raise NotEmbedded("{} is not embedded in {}".format(f1, f2))
    rel = relative(f2.frame, f1.frame)
    return float(np.arccosh(max(1., rel[0, 0])))


def detect_alternation(fn, fn1, fn2):
    """
    True if Fn <=_0 Fn1 and Fn1 <=_0 Fn2 are both non-strict and Fn < Fn2.

    Raises:
        NotStepwise if one of the two steps is not a one-step embedding
    """
    s1 = one_step(fn, fn1)
    s2 = one_step(fn1, fn2)
    if s1 == NO_STEP or s2 == NO_STEP :
        raise NotStepwise("triple is not stepwise ({}, {})".format(s1, s2))
    return s1 == NONSTRICT_STEP and s2 == NONSTRICT_STEP and embeds(fn, fn2) == STRICTLY_EMBEDDED

def remove_alternation(fn, fn1, fn2):
    """
    Quarter F4 with Fn <=_0 F4 (non-strict) and F4 <_0 Fn2, replacing Fn1.

    Raises:
        NoAlternation
    """
    if not detect_alternation(fn, fn1, fn2) :
        raise NoAlternation("no alternation at {}".format(fn1))
    for g in neighbor_quarters(fn) :
        if one_step(fn, g) == NONSTRICT_STEP and one_step(g, fn2) == STRICT_STEP :
            return g
    raise NoAlternation("no replacement found for {}".format(fn1))


class QuarterSeq(object):
    """
    Lazily generated sequence of quarters, consumed by a single cursor.

    The generator yields Quarter objects, or (Quarter, info) pairs where
    info is a dict kept alongside the term.  Materialized prefixes are
    returned as tuples.
    """
    def __init__(self, terms, name=None):
        self._iter = iter(terms)
        self._terms = []
        self._info = []
        self.name = name

    def _fill(self, n):
        while len(self._terms) < n :
            try :
                item = next(self._iter)
            except StopIteration :
                break
            if isinstance(item, tuple) :
                self._terms.append(item[0])
                self._info.append(item[1])
            else :
                self._terms.append(item)
                self._info.append(dict())

    def take(self, n):
        self._fill(n)
        return tuple(self._terms[:n])

    def info(self, n):
        self._fill(n)
        return tuple(self._info[:n])

    def __getitem__(self, i):
        terms = self.take(i+1)
        if len(terms) <= i :
            raise IndexError("sequence has only {} terms".format(len(terms)))
        return terms[i]

    @classmethod
    def from_hats(cls, hats, name=None):
        return cls([Quarter.hat_of(*[MPoint(p) for p in hat]) for hat in hats], name=name)


def _steps(terms):
    return [one_step(terms[i], terms[i+1]) for i in range(len(terms)-1)]

def _alternations(terms, kinds):
    res = []
    for i in range(len(terms)-2) :
        if kinds[i] == NONSTRICT_STEP and kinds[i+1] == NONSTRICT_STEP \
           and embeds(terms[i], terms[i+2]) == STRICTLY_EMBEDDED :
            res.append(i+1)
    return res

def classify(seq, horizon):
    """
    Report on the first horizon terms of a sequence.

    Indices refer to the larger term of a step (n+1 for the step F_n -> F_n+1)
    and to the middle term of an alternation.  direct_so_far only says that
    no strict step was seen within the horizon.

    Returns:
        dict with stepwise_ok, violations, alternations, strict_steps,
        direct_so_far and kinds (the step kinds, in order)
    """
    if horizon < 2 :
        raise ValueError("horizon must be at least 2")
    terms = seq.take(horizon)
    if len(terms) < horizon :
        get_logger().warning("sequence has only {} terms".format(len(terms)))
    kinds = _steps(terms)
    violations = [i+1 for i, k in enumerate(kinds) if k == NO_STEP]
    strict = [i+1 for i, k in enumerate(kinds) if k == STRICT_STEP]
    return dict(stepwise_ok=len(violations) == 0,
                violations=violations,
                alternations=_alternations(terms, kinds),
                strict_steps=strict,
                direct_so_far=len(strict) == 0,
                kinds=kinds)

def trace(seq, horizon):
    """
    Per-term rows {index, hat, word, step_kind, alternation, flags} of a sequence.
    """
    terms = seq.take(horizon)
    kinds = _steps(terms)
    alternations = set(_alternations(terms, kinds))
    rows = []
    for i, f in enumerate(terms) :
        kind = kinds[i-1] if i > 0 else None
        flags = 0
        if kind == NONSTRICT_STEP :
            flags |= stepmask.NONSTRICT
        elif kind == STRICT_STEP :
            flags |= stepmask.STRICT
            if i > 1 and kinds[i-2] == NONSTRICT_STEP :
                flags |= stepmask.TURN
        elif kind == NO_STEP :
            flags |= stepmask.VIOLATION
        if i in alternations :
            flags |= stepmask.ALTERNATION
        rows.append(dict(index=i, hat=f.hat_list(),
                         word=None if f.frame.word is None else list(f.frame.word),
                         step_kind=kind, alternation=i in alternations, flags=int(flags)))
    return rows

def write_trace(filename, seq, horizon):
    from pentameter.io import write_json
    params = dict(name='Quarter sequence trace', version='1', sequence=seq.name,
                  rows=trace(seq, horizon))
    write_json(filename, params)

def read_trace(filename):
    """
    Sequence stored by write_trace. Frames are rebuilt from the generator
    words when present, otherwise from the hats.
    """
    from pentameter.io import read_json
    log = get_logger()
    params = read_json(filename)
    if params.get('name') != 'Quarter sequence trace' :
        raise RuntimeError("don't know how to read {}".format(filename))
    terms = []
    for row in params['rows'] :
        word = row.get('word')
        if word is not None :
            try :
                terms.append(Quarter(Isometry(word_matrix(word), word=word)))
                continue
            except KeyError as err :
                log.warning("{}, using hats".format(err))
        terms.append(Quarter.hat_of(*[MPoint(p) for p in row['hat']]))
    return QuarterSeq(terms, name=params.get('sequence'))
