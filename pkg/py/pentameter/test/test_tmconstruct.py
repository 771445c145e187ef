"""
Test the machine driven quarter sequences.
"""

import unittest

import numpy as np

from pentameter.hyperbolic import Ultraparallel, line_relation, relative, mdot
from pentameter.pentagrid import SIDE, Quarter
from pentameter.quarters import classify, vertex_gap, embeds, STRICTLY_EMBEDDED
from pentameter.turing import IndexOutOfRoster, read_roster, never_halts, halts_after
from pentameter.io import demo_roster_filename
from pentameter.ends import Separated, UnknownAtHorizon, track_limit, ends_separated, separation_witness_check
from pentameter.tmconstruct import (STRAIGHT, TURN, SIDE0, SIDE1, build_noalgo_seq, build_noconv_seq,
                                    noconv_bits, branch_separation, y_sequence, y_sequence_table,
                                    path_blocks, tm_trace)

class TestTMConstruct(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.roster = read_roster(demo_roster_filename())

    def test_noalgo_halting(self):
        horizon = 20
        for j in (1, 3, 5, 10) :
            run = build_noalgo_seq(halts_after(j), 0, horizon)
            self.assertEqual(run.turn, j)
            report = classify(run.seq, horizon)
            self.assertTrue(report['stepwise_ok'])
            self.assertEqual(report['alternations'], [])
            self.assertEqual(report['strict_steps'], [j])
            self.assertFalse(report['direct_so_far'])
            #- after the turn the vertices follow delta1
            t = STRAIGHT.power(j-1).compose(TURN)
            for f in run.seq.take(horizon)[j:] :
                self.assertAlmostEqual(relative(t, f.frame)[1, 0], 0., places=9)
            rel = line_relation(run.delta0, run.delta1)
            self.assertIsInstance(rel, Ultraparallel)
            self.assertAlmostEqual(rel.distance, SIDE, places=6)
            self.assertAlmostEqual(run.delta1.side(run.alpha1.ideal), 0., places=6)
            self.assertFalse(run.alpha0.isclose(run.alpha1, tol=1e-7))

    def test_noalgo_running(self):
        horizon = 100
        run = build_noalgo_seq(never_halts(), 0, horizon)
        self.assertIsNone(run.turn)
        self.assertIsNone(run.delta1)
        self.assertIsNone(run.alpha1)
        report = classify(run.seq, horizon)
        self.assertTrue(report['direct_so_far'])
        self.assertEqual(report['alternations'], [])
        for f in run.seq.take(horizon) :
            self.assertEqual(set(f.frame.word), set(['straight']) if f.frame.word else set())
        #- the vertices stay on q, x1 = 0
        for f in run.seq.take(horizon) :
            self.assertEqual(f.frame.matrix[1, 0], 0.)
        with self.assertRaises(ValueError):
            build_noalgo_seq(never_halts(), 0, 0)

    def test_noalgo_halts_late(self):
        #- halting past the horizon looks like running
        run = build_noalgo_seq(halts_after(30), 0, 20)
        self.assertIsNone(run.turn)
        self.assertTrue(classify(run.seq, 20)['direct_so_far'])

    def test_noconv(self):
        horizon = len(self.roster)
        run = build_noconv_seq(self.roster, 5)
        self.assertEqual(len(run.bit_path), horizon-1)
        self.assertEqual(run.bit_path[2], 1)
        self.assertEqual(sum(run.bit_path), 1)
        report = classify(run.seq, horizon)
        self.assertTrue(report['stepwise_ok'])
        self.assertEqual(report['strict_steps'], list(range(1, horizon)))
        terms = run.seq.take(horizon)
        for f1, f2 in zip(terms[:-1], terms[1:]) :
            self.assertEqual(embeds(f1, f2), STRICTLY_EMBEDDED)
            self.assertTrue(vertex_gap(f1, f2) > SIDE)
        with self.assertRaises(IndexOutOfRoster):
            build_noconv_seq(self.roster, 5, horizon=horizon+1)
        with self.assertRaises(ValueError):
            build_noconv_seq([], 5)

    def test_noconv_bits(self):
        self.assertEqual(sum(noconv_bits(self.roster, 2, 13)), 0)
        bits = noconv_bits(self.roster, 7, 13)
        self.assertEqual([k for k, b in enumerate(bits) if b], [2, 6])
        #- more steps only turn bits on
        for n in range(12) :
            a = np.array(noconv_bits(self.roster, n, 13))
            b = np.array(noconv_bits(self.roster, n+1, 13))
            self.assertTrue(np.all(b >= a))

    def test_noconv_separation(self):
        #- inputs from the three blocks of the demo roster have different bit paths
        horizon = len(self.roster)
        runs = [build_noconv_seq(self.roster, n, horizon) for n in (2, 5, 9)]
        self.assertEqual(len(set(run.bit_path for run in runs)), 3)
        chains = [track_limit(run.seq, horizon) for run in runs]
        for i in range(3) :
            for j in range(3) :
                if i == j :
                    continue
                sep = ends_separated(chains[i], chains[j])
                self.assertIsInstance(sep, Separated)
                self.assertEqual(separation_witness_check(sep), 0)
        #- the same bit path gives no certificate
        again = track_limit(build_noconv_seq(self.roster, 6, horizon).seq, horizon)
        self.assertIsInstance(ends_separated(chains[1], again), UnknownAtHorizon)

    def test_branch_separation(self):
        k0, k1, relation, disjoint = branch_separation()
        self.assertIsInstance(relation, Ultraparallel)
        self.assertTrue(disjoint)
        v0 = Quarter(SIDE0).vertex
        v1 = Quarter(SIDE1).vertex
        self.assertTrue(k0.contains(v0))
        self.assertFalse(k1.contains(v0))
        self.assertTrue(k1.contains(v1))
        self.assertFalse(k0.contains(v1))
        #- the same holds in any frame
        k0, k1, relation, disjoint = branch_separation(Quarter(SIDE1.compose(SIDE0)))
        self.assertTrue(disjoint)

    def test_y_sequence(self):
        paths = y_sequence(self.roster, 12)
        self.assertEqual(len(paths), 13)
        self.assertEqual(path_blocks(paths), [(0, 2), (3, 6), (7, 12)])
        t = y_sequence_table(self.roster, 12)
        self.assertEqual(len(t), 13)
        self.assertEqual(list(np.where(t['CHANGED'])[0]), [3, 7])
        self.assertEqual(t['BIT_PATH'][0], '0'*12)
        self.assertEqual(path_blocks([]), [])
        with self.assertRaises(ValueError):
            y_sequence(self.roster, -1)

    def test_tm_trace(self):
        run = build_noalgo_seq(halts_after(3), 0, 6)
        rows = tm_trace(run.seq, 6)
        self.assertEqual(len(rows), 6)
        self.assertEqual([r['bit'] for r in rows], [None, 0, 0, 1, 1, 1])
        self.assertEqual([r['flag'] for r in rows], [0, 0, 0, 1, 1, 1])
        self.assertEqual(len(rows[0]['hat']), 3)

    def test_moves_are_lorentz(self):
        eta = np.diag([-1., 1., 1.])
        for move in (STRAIGHT, TURN, SIDE0, SIDE1) :
            m = move.matrix
            np.testing.assert_allclose(m.T.dot(eta).dot(m), eta, atol=1e-12)
            self.assertAlmostEqual(mdot(m[:, 0], m[:, 0]), -1., places=12)


if __name__ == '__main__':
    unittest.main()
