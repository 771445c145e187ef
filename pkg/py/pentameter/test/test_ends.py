"""
Test neighbourhoods of ends, pentagrid lines and limit tracking.
"""

import os
import unittest
from unittest import mock
import shutil
import tempfile

import numpy as np

from pentameter.hyperbolic import (MPoint, MLine, HalfPlane, IdealPoint, Ultraparallel, DegenerateInput,
                                   GeometryError, origin, line_relation, ends_angle, halfplane_within)
from pentameter.pentagrid import SIDE, SHIFT_P, SHIFT_Q, Quarter, base_quarter
from pentameter.quarters import QuarterSeq, NotStepwise, AlternationPresent
from pentameter.ends import (End, NeighborhoodChain, Separated, UnknownAtHorizon, BudgetExhausted,
                             TailOutside, _direct_halfplane,
                             neighborhood_distance, neighborhood, neighborhood_chain,
                             halfplane_of_end, pentagrid_line_beyond, track_limit, ends_separated,
                             separation_witness_check, write_chain, read_chain)
from pentameter.tmconstruct import build_noalgo_seq
from pentameter import turing

def _end(theta):
    return IdealPoint([1., np.cos(theta), np.sin(theta)])

def _perpendicular(theta, t):
    #- line orthogonal to the ray from the origin at angle theta, at distance t
    return MLine([np.sinh(t), np.cosh(t)*np.cos(theta), np.cosh(t)*np.sin(theta)])

class TestEnds(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.testdir = tempfile.mkdtemp()

    @classmethod
    def tearDownClass(cls):
        if os.path.isdir(cls.testdir) :
            shutil.rmtree(cls.testdir)

    def test_neighborhood_distance(self):
        self.assertAlmostEqual(neighborhood_distance(2), np.log(1+np.sqrt(2.)), places=12)
        self.assertAlmostEqual(neighborhood_distance(1), 0., places=12)
        for n in range(2, 20) :
            self.assertTrue(neighborhood_distance(n+1) > neighborhood_distance(n))
        with self.assertRaises(ValueError):
            neighborhood_distance(0)

    def test_neighborhood(self):
        alpha = _end(0.)
        for n in range(2, 12) :
            h = neighborhood(alpha, n)
            self.assertTrue(h.touches(alpha))
            self.assertFalse(h.contains(origin()))
            self.assertTrue(h.contains(MPoint([np.cosh(5.), np.sinh(5.), 0.])))
            self.assertAlmostEqual(ends_angle(h.boundary, origin()), np.pi/n, places=9)
        for n in range(1, 10) :
            self.assertTrue(halfplane_within(neighborhood(alpha, n+1), neighborhood(alpha, n)))
        #- any other end is eventually left out
        beta = _end(0.3)
        self.assertTrue(neighborhood(alpha, 2).touches(beta))
        self.assertFalse(neighborhood(alpha, 10).touches(beta))

    def test_neighborhood_chain(self):
        alpha = End(_end(0.7))
        chain = neighborhood_chain(alpha, 8)
        self.assertEqual(len(chain), 8)
        self.assertTrue(chain.nested())
        self.assertTrue(chain.touches(alpha.ideal))
        self.assertFalse(chain.touches(_end(1.2)))

    def test_halfplane_of_end(self):
        p = MLine([0., 0., 1.])
        h = halfplane_of_end(p, _end(np.pi/2))
        self.assertTrue(h.boundary.same_line(p, oriented=True))
        h = halfplane_of_end(p, _end(-np.pi/2))
        self.assertTrue(h.boundary.same_line(p.flipped(), oriented=True))
        with self.assertRaises(DegenerateInput):
            halfplane_of_end(p, _end(0.))

    def test_line_beyond_along_p(self):
        #- beyond the perpendicular to p at 1.5 a, the first pentagrid line is
        #- the perpendicular to p at 2 a
        line = MLine([np.sinh(1.5*SIDE), np.cosh(1.5*SIDE), 0.])
        alpha = _end(0.)
        lam = pentagrid_line_beyond(line, alpha, 4)
        self.assertTrue(abs(lam.pole[2]) < 1e-9)
        rel = line_relation(lam, line)
        self.assertIsInstance(rel, Ultraparallel)
        self.assertAlmostEqual(rel.distance, 0.5*SIDE, places=9)
        self.assertTrue(lam.side(alpha) > 0)

    def test_line_beyond_random(self):
        rng = np.random.RandomState(3)
        for _ in range(50) :
            theta = rng.uniform(0.1, np.pi/2-0.1)
            t = rng.uniform(0.3, 1.)
            alpha = _end(theta)
            line = _perpendicular(theta, t)
            lam = pentagrid_line_beyond(line, alpha, 6)
            self.assertTrue(lam.side(alpha) > 0)
            self.assertIsInstance(line_relation(lam, line), Ultraparallel)
            self.assertTrue(halfplane_within(HalfPlane(lam), halfplane_of_end(line, alpha)))

    def test_budget_exhausted(self):
        line = MLine([np.sinh(5.), np.cosh(5.), 0.])
        with self.assertRaises(BudgetExhausted):
            pentagrid_line_beyond(line, _end(0.), 0)

    def test_track_direct(self):
        run = build_noalgo_seq(turing.never_halts(), 0, 10)
        chain = track_limit(run.seq, 10)
        self.assertEqual(len(chain), 9)
        self.assertEqual(chain.restarts, 0)
        self.assertTrue(chain.nested())
        self.assertTrue(chain[-1].touches(run.alpha0.ideal))
        self.assertFalse(chain[-1].touches(_end(np.pi/2)))
        terms = run.seq.take(10)
        for h, first in zip(chain, chain.from_index) :
            for f in terms[first:] :
                self.assertTrue(h.contains(f.vertex))

    def test_track_turn(self):
        run = build_noalgo_seq(turing.halts_after(3), 0, 12)
        chain = track_limit(run.seq, 12)
        self.assertEqual(chain.restarts, 1)
        self.assertTrue(chain[-1].touches(run.alpha1.ideal))
        self.assertFalse(chain[-1].touches(run.alpha0.ideal))

    def test_track_errors(self):
        q = base_quarter()
        with self.assertRaises(NotStepwise):
            track_limit(QuarterSeq([q, Quarter(SHIFT_P)]), 2)
        alternating = QuarterSeq([Quarter(SHIFT_P.compose(SHIFT_Q)), Quarter(SHIFT_P), q])
        with self.assertRaises(AlternationPresent):
            track_limit(alternating, 3)

    def test_track_tail_outside(self):
        #- half-planes facing away from the tail break the chain loudly
        run = build_noalgo_seq(turing.never_halts(), 0, 10)
        facing_back = lambda f1, f2 : _direct_halfplane(f1, f2).complement()
        with mock.patch('pentameter.ends._direct_halfplane', side_effect=facing_back):
            with self.assertRaises(TailOutside):
                track_limit(run.seq, 10)
        self.assertTrue(issubclass(TailOutside, GeometryError))

    def test_separation(self):
        horizon = 20
        straight = track_limit(build_noalgo_seq(turing.never_halts(), 0, horizon).seq, horizon)
        for j in (1, 3, 5, 10) :
            turned = track_limit(build_noalgo_seq(turing.halts_after(j), 0, horizon).seq, horizon)
            sep = ends_separated(turned, straight)
            self.assertIsInstance(sep, Separated)
            self.assertTrue(bool(sep))
            self.assertEqual(separation_witness_check(sep), 0)
            self.assertIsInstance(ends_separated(straight, turned), Separated)

        shorter = track_limit(build_noalgo_seq(turing.never_halts(), 0, 12).seq, 12)
        verdict = ends_separated(straight, shorter)
        self.assertIsInstance(verdict, UnknownAtHorizon)
        self.assertFalse(verdict)
        with self.assertRaises(ValueError):
            ends_separated(NeighborhoodChain([]), straight)

    def test_chain_file(self):
        alpha = _end(0.9)
        chain = neighborhood_chain(alpha, 5)
        filename = os.path.join(self.testdir, 'chain.json')
        write_chain(filename, chain)
        back = read_chain(filename)
        self.assertEqual(len(back), 5)
        self.assertEqual(back.from_index, chain.from_index)
        for h1, h2 in zip(chain, back) :
            self.assertTrue(h1.boundary.same_line(h2.boundary, oriented=True))
        self.assertTrue(back.touches(alpha))


if __name__ == '__main__':
    unittest.main()
