"""
Sequences of quarters driven by Turing machines.

noalgo: the quarters march along one line while the machine runs and turn
once, by a strict step, when it halts.  Whether the vertices tend to the end
of the first line is then the halting problem.

noconv: at each step the head is reflected in the side A-S or in the side
S-B of its hat, according to whether a machine of the roster has halted.
Every step is strict and the two continuations at each step lead to
disjoint half-planes.
"""

from collections import namedtuple

import numpy as np
from astropy.table import Table

from pentameter.log import get_logger
from pentameter.hyperbolic import (Isometry, MLine, HalfPlane, frame_of_hat, line_relation,
                                   halfplanes_disjoint)
from pentameter.pentagrid import BASE_VERTICES, SIDE, Quarter, base_quarter
from pentameter.quarters import QuarterSeq
from pentameter.ends import End
from pentameter.turing import IndexOutOfRoster, kleene, halting_step

NoalgoRun = namedtuple('NoalgoRun', ['seq', 'delta0', 'delta1', 'alpha0', 'alpha1', 'turn'])
NoconvRun = namedtuple('NoconvRun', ['seq', 'bit_path'])

#- reflections in p (the line S-A of the base hat) and in q (the line S-B)
_REFLECT_P = np.diag([1., 1., -1.])
_REFLECT_Q = np.diag([1., -1., 1.])

#- q, oriented so that its positive side holds A, and its end away from B
_Q_POLE = np.array([0., 1., 0.])
_Q_END = np.array([1., 0., -1.])


def noalgo_turn_frames():
    """
    Local moves of the noalgo construction, as generators.

    The straight move translates the quarter by a along q, away from B: the
    new head is the reflection of the old one in the line S-A and the two
    quarters share the border q.  The turn moves the vertex to the image of
    C by the reflection in p, keeping that reflected head: the quarter it
    gives strictly contains the previous one, and its border line carried
    from q is the image of the side C-B, ultraparallel to q at distance a
    (their common perpendicular is the image of the side C-D).
    """
    ch = np.cosh(SIDE)
    sh = np.sinh(SIDE)
    straight = np.array([[ch, 0., -sh], [0., 1., 0.], [-sh, 0., ch]])
    v = BASE_VERTICES.dot(_REFLECT_P)
    turn = frame_of_hat(v[3], v[2], v[1])
    return Isometry.generator('straight', straight), Isometry.generator('turn', turn)

def noconv_moves():
    """Local moves reflecting the head in side 0 (A-S) and side 1 (S-B) of the hat."""
    vp = BASE_VERTICES.dot(_REFLECT_P)
    vq = BASE_VERTICES.dot(_REFLECT_Q)
    side0 = frame_of_hat(vp[1], vp[2], vp[3])
    side1 = frame_of_hat(vq[0], vq[1], vq[2])
    return Isometry.generator('side0', side0), Isometry.generator('side1', side1)

STRAIGHT, TURN = noalgo_turn_frames()
SIDE0, SIDE1 = noconv_moves()


def build_noalgo_seq(machine, n, horizon):
    """
    Quarters F_0 .. F_horizon-1 of the noalgo construction for machine on input n.

    The step F_m -> F_m+1 reads whether the machine has halted within m+1
    steps; the first 1 triggers the turn, so a machine halting at step j >= 1
    gives one strict step into F_j.

    Returns:
        NoalgoRun(seq, delta0, delta1, alpha0, alpha1, turn) where delta1,
        alpha1 and turn (index of the term after the turn) are None if the
        machine does not halt within the horizon
    """
    log = get_logger()
    if horizon < 1 :
        raise ValueError("horizon must be at least 1")
    j = halting_step(machine, n, horizon-1)
    turn = None if j is None else max(j, 1)

    def _terms():
        frame = Isometry.identity()
        flag = 0
        yield Quarter(frame), dict(k=0, bit=None, flag=flag)
        for m in range(horizon-1) :
            bit = int(j is not None and j <= m+1)
            if flag == 0 and bit == 1 :
                frame = frame.compose(TURN)
                flag = 1
            else :
                frame = frame.compose(STRAIGHT)
            yield Quarter(frame), dict(k=m+1, bit=bit, flag=flag)

    delta0 = MLine(_Q_POLE)
    alpha0 = End(_Q_END)
    delta1 = alpha1 = None
    if turn is not None :
        t = STRAIGHT.power(turn-1).compose(TURN)
        delta1 = t.apply(delta0)
        alpha1 = End(t.apply(_Q_END))
        log.debug("machine {} halts at {}, turn into term {}".format(machine.name, j, turn))
    seq = QuarterSeq(_terms(), name='noalgo:{}:{}'.format(machine.name, n))
    return NoalgoRun(seq, delta0, delta1, alpha0, alpha1, turn)


def noconv_bits(roster, n, horizon):
    """
    Bits of the steps of G_0 .. G_horizon-1: bit k tells whether machine k+1
    has halted on k+1 within n steps.

    Raises:
        IndexOutOfRoster if the horizon reaches past the roster
    """
    if horizon < 1 :
        raise ValueError("horizon must be at least 1")
    if horizon > len(roster) :
        raise IndexOutOfRoster("horizon {} needs {} machines, the roster has {}".format(
            horizon, horizon, len(roster)))
    return tuple(kleene(roster, k+1, k+1, n) for k in range(horizon-1))

def build_noconv_seq(roster, n, horizon=None):
    """
    Quarters G_0 .. G_horizon-1 of the noconv construction for the input n.

    Returns:
        NoconvRun(seq, bit_path)

    Raises:
        IndexOutOfRoster if horizon > len(roster), ValueError for an empty roster
    """
    if len(roster) == 0 :
        raise ValueError("roster is empty")
    if horizon is None :
        horizon = len(roster)
    bits = noconv_bits(roster, n, horizon)

    def _terms():
        frame = Isometry.identity()
        yield Quarter(frame), dict(k=0, bit=None, flag=0)
        for k, bit in enumerate(bits) :
            frame = frame.compose(SIDE1 if bit else SIDE0)
            yield Quarter(frame), dict(k=k+1, bit=bit, flag=bit)

    return NoconvRun(QuarterSeq(_terms(), name='noconv:{}'.format(n)), bits)


def branch_separation(quarter=None):
    """
    The half-planes K_0 and K_1 reached by the two continuations of a hat.

    K_0 is beyond the perpendicular to q at distance a past S (continuation
    on side 0), K_1 beyond the perpendicular to p at distance a past S
    (continuation on side 1).

    Returns:
        (K_0, K_1, relation of their boundaries, disjoint)
    """
    if quarter is None :
        quarter = base_quarter()
    ch = np.cosh(SIDE)
    sh = np.sinh(SIDE)
    k0 = HalfPlane.framed(quarter.frame, MLine([sh, 0., -ch]))
    k1 = HalfPlane.framed(quarter.frame, MLine([sh, -ch, 0.]))
    relation = line_relation(MLine([sh, 0., -ch]), MLine([sh, -ch, 0.]))
    return k0, k1, relation, halfplanes_disjoint(k0, k1)


def y_sequence(roster, nmax, horizon=None):
    """Bit paths of the noconv sequences for the inputs 0 .. nmax."""
    if nmax < 0 :
        raise ValueError("nmax must be nonnegative")
    if horizon is None :
        horizon = len(roster)
    return [noconv_bits(roster, n, horizon) for n in range(nmax+1)]

def y_sequence_table(roster, nmax, horizon=None):
    """
    astropy Table with columns N, BIT_PATH and CHANGED (path differs from n-1).
    """
    paths = y_sequence(roster, nmax, horizon)
    t = Table()
    t['N'] = np.arange(len(paths), dtype=int)
    t['BIT_PATH'] = [''.join(str(b) for b in p) for p in paths]
    t['CHANGED'] = [i > 0 and paths[i] != paths[i-1] for i in range(len(paths))]
    return t

def path_blocks(paths):
    """Runs of equal consecutive paths, as (first, last) indices."""
    blocks = []
    for i, p in enumerate(paths) :
        if blocks and paths[blocks[-1][0]] == p :
            blocks[-1][1] = i
        else :
            blocks.append([i, i])
    return [tuple(b) for b in blocks]


def tm_trace(seq, horizon):
    """Per-step rows {k, bit, hat, flag} of a machine driven sequence."""
    terms = seq.take(horizon)
    infos = seq.info(horizon)
    return [dict(k=info.get('k', i), bit=info.get('bit'), hat=f.hat_list(), flag=info.get('flag'))
            for i, (f, info) in enumerate(zip(terms, infos))]
