"""
Test the pentagrid decomposition of a quarter.
"""

import unittest

import numpy as np

from pentameter.hyperbolic import MPoint, dist, origin
from pentameter.pentagrid import (PHI, SIDE, DIAMETER, WHITE, BLACK, SHIFT_P, SHIFT_Q, SHIFT_SIDE1,
                                  InvalidPath, Pentagon, constants, base_quarter, base_pentagon,
                                  decompose, regions, tile_of_path, fib_tree, tree_levels,
                                  fib_color, fibonacci, level_counts, region_distance, shared_edges,
                                  interior_samples, tiles_table, corresponding_sides,
                                  verify_strip_lemmas, cornucopia, root_region, child_regions)

class TestPentagrid(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.quarter = base_quarter()
        cls.tiles = decompose(cls.quarter, 4)

    def test_constants(self):
        c = constants()
        self.assertAlmostEqual(np.cosh(c['a']), PHI, places=12)
        self.assertAlmostEqual(c['a'], 1.0612750619, places=9)
        self.assertAlmostEqual(c['b'], 1.46935, places=5)
        self.assertTrue(c['a'] < c['b'] < 2.5*c['a'])
        #- b is also the distance from a vertex to the middle of the opposite side
        pen = base_pentagon()
        mid = MPoint(pen._vertices[2]+pen._vertices[3])
        self.assertAlmostEqual(dist(pen.vertex('A'), mid), DIAMETER, places=9)

    def test_base_pentagon(self):
        pen = base_pentagon()
        np.testing.assert_allclose(pen.angles(), np.pi/2, atol=1e-9)
        np.testing.assert_allclose(pen.side_lengths(), SIDE, atol=1e-9)
        self.assertTrue(pen.vertex('E').isclose(origin()))
        self.assertTrue(pen.contains(pen.incenter(), strict=True))
        with self.assertRaises(ValueError):
            pen.side(6)

    def test_fibonacci_tree(self):
        for d in range(7) :
            levels = tree_levels(fib_tree(d))
            self.assertEqual([len(level) for level in levels], level_counts(d))
        self.assertEqual(level_counts(4), [1, 3, 8, 21, 55])
        root = fib_tree(2)
        self.assertEqual(root.sons(), [BLACK, WHITE, WHITE])
        self.assertEqual(root.children[0].sons(), [BLACK, WHITE])
        self.assertEqual(fib_color((0, 1)), WHITE)
        self.assertEqual(fib_color((0, 0)), BLACK)
        with self.assertRaises(InvalidPath):
            fib_color((0, 2))

    def test_level_counts(self):
        self.assertEqual(len(self.tiles), 88)
        counts = np.bincount([len(t.path) for t in self.tiles])
        self.assertEqual(list(counts), [1, 3, 8, 21, 55])
        self.assertEqual([fibonacci(n) for n in range(8)], [1, 1, 2, 3, 5, 8, 13, 21])
        for d in range(6) :
            self.assertEqual(len(decompose(self.quarter, d)), sum(level_counts(d)))

    def test_paths_and_colors(self):
        paths = [t.path for t in self.tiles]
        self.assertEqual(len(set(paths)), len(paths))
        self.assertEqual(paths, sorted(paths, key=lambda p : (len(p), p)))
        for tile in self.tiles :
            self.assertEqual(tile.color, fib_color(tile.path))

    def test_right_angles(self):
        for tile in self.tiles :
            np.testing.assert_allclose(tile.pentagon.angles(), np.pi/2, atol=1e-9)
            np.testing.assert_allclose(tile.pentagon.side_lengths(), SIDE, atol=1e-9)

    def test_tile_of_path(self):
        for tile in self.tiles :
            other = tile_of_path(tile.path, self.quarter)
            self.assertTrue(tile.pentagon.frame.isclose(other.pentagon.frame))
            self.assertEqual(tile.color, other.color)
            self.assertEqual(tile.generation, other.generation)
        p2 = tile_of_path((0, 0), self.quarter)
        self.assertTrue(p2.pentagon.frame.isclose(SHIFT_P.power(2)))
        with self.assertRaises(InvalidPath):
            tile_of_path((3,), self.quarter)
        with self.assertRaises(InvalidPath):
            tile_of_path((0, 2), self.quarter)

    def test_cornucopia(self):
        pens = cornucopia(self.quarter, 4)
        self.assertEqual(len(pens), 5)
        for k, pen in enumerate(pens) :
            self.assertAlmostEqual(dist(origin(), pen.vertex('E')), k*SIDE, places=9)
            self.assertAlmostEqual(pen.vertex('E').x2, 0., places=12)

    def test_child_regions(self):
        #- the heads of the child regions are tiles of the decomposition
        children = child_regions(root_region(self.quarter), 3)
        self.assertEqual([r.path for r in children], [(1,), (2,), (0, 1), (0, 0, 1)])
        by_path = dict((t.path, t) for t in self.tiles)
        for region in children :
            self.assertEqual(region.generation, 1)
            tile = by_path[region.path]
            self.assertTrue(region.quarter.frame.isclose(tile.pentagon.frame))
        paths = set(r.path for r in regions(self.quarter, 4))
        for region in children :
            self.assertIn(region.path, paths)
        with self.assertRaises(ValueError):
            child_regions(root_region(self.quarter), -1)

    def test_edges_match(self):
        pairs = shared_edges(self.tiles)
        self.assertTrue(len(pairs) > 0)
        for i, si, j, sj, gap in pairs :
            self.assertTrue(gap < 1e-9)

    def test_interiors_disjoint(self):
        rng = np.random.RandomState(1)
        for i, tile in enumerate(self.tiles) :
            pts = interior_samples(tile.pentagon, 50, rng)
            self.assertTrue(np.all(tile.pentagon.contains_points(pts, strict=True)))
            for j, other in enumerate(self.tiles) :
                if i == j :
                    continue
                self.assertFalse(np.any(other.pentagon.contains_points(pts, strict=True)),
                                 "tiles {} and {} overlap".format(tile.path, other.path))

    def test_inside_quarter(self):
        for tile in self.tiles :
            for v in tile.pentagon.vertices :
                self.assertTrue(self.quarter.contains(v))

    def test_region_distance(self):
        for region in regions(self.quarter, 6) :
            self.assertTrue(region_distance(region) >= region.generation*SIDE - 1e-9,
                            "region {} at generation {}".format(region.path, region.generation))

    def test_corresponding_sides(self):
        p0 = base_pentagon()
        head = Pentagon(SHIFT_Q)
        for i, j in corresponding_sides('first').items() :
            self.assertTrue(p0.side(i).same_line(head.side(j)))
        head = Pentagon(SHIFT_SIDE1)
        for i, j in corresponding_sides('next').items() :
            self.assertTrue(p0.side(i).same_line(head.side(j)))
        #- and along the cornucopia
        p3 = Pentagon(SHIFT_P.power(3))
        head = Pentagon(SHIFT_P.power(3).compose(SHIFT_SIDE1))
        for i, j in corresponding_sides('next').items() :
            self.assertTrue(p3.side(i).same_line(head.side(j)))
        with self.assertRaises(ValueError):
            corresponding_sides('last')

    def test_strip_lemmas(self):
        t = verify_strip_lemmas(3, seed=2)
        print(t[~t['PASSED']])
        self.assertTrue(len(t) > 0)
        self.assertTrue(np.all(t['PASSED']))

    def test_tiles_table(self):
        t = tiles_table(self.tiles)
        self.assertEqual(len(t), 88)
        self.assertEqual(np.sum(t['DEPTH'] == 4), 55)
        r = np.hypot(t['X_DISC'], t['Y_DISC'])
        self.assertTrue(np.all(r < 1))


if __name__ == '__main__':
    unittest.main()
