import unittest

import numpy as np

from pentameter.hyperbolic import MPoint, from_disc
from pentameter.pentagrid import SIDE, base_quarter, decompose, shared_edges, Quarter, SHIFT_Q, SHIFT_P
from pentameter.locator import locate, PointOutsideQuarter

class TestLocator(unittest.TestCase):

    def test_incenters(self):
        quarter = base_quarter()
        for tile in decompose(quarter, 4) :
            found = locate(tile.pentagon.incenter(), quarter)
            self.assertEqual(found.path, tile.path)
            self.assertEqual(found.color, tile.color)

    def test_origin_corner(self):
        tile = locate(from_disc(0.05, 0.05), base_quarter())
        self.assertEqual(tile.path, ())
        self.assertEqual(tile.generation, 0)

    def test_random_points(self):
        quarter = base_quarter()
        rng = np.random.RandomState(0)
        r = rng.uniform(0.01, 4*SIDE, 10000)
        theta = rng.uniform(0.001, np.pi/2-0.001, 10000)
        for ri, ti in zip(r, theta) :
            m = MPoint([np.cosh(ri), np.sinh(ri)*np.cos(ti), np.sinh(ri)*np.sin(ti)])
            tile = locate(m, quarter)
            self.assertTrue(tile.pentagon.contains(m))
            self.assertTrue(tile.generation <= int(np.ceil(ri/SIDE))+1)

    def test_shared_edges(self):
        #- a point of an edge shared by two tiles goes to the smaller path, every time
        quarter = base_quarter()
        tiles = decompose(quarter, 3)
        pairs = shared_edges(tiles)
        self.assertTrue(len(pairs) > 0)
        for i, si, j, sj, _ in pairs :
            v = tiles[i].pentagon._vertices
            m = MPoint(0.3*v[si-1] + 0.7*v[si % 5])
            expected = min(tuple(tiles[i].path), tuple(tiles[j].path))
            for _ in range(2) :
                self.assertEqual(tuple(locate(m, quarter).path), expected)

    def test_other_quarter(self):
        #- location is relative to the frame of the quarter
        quarter = Quarter(SHIFT_P.compose(SHIFT_Q))
        for tile in decompose(quarter, 3) :
            found = locate(tile.pentagon.incenter(), quarter)
            self.assertEqual(found.path, tile.path)

    def test_outside(self):
        with self.assertRaises(PointOutsideQuarter):
            locate(from_disc(-0.1, 0.2), base_quarter())


if __name__ == '__main__':
    unittest.main()
