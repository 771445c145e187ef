import unittest

import yaml

from pentameter.bitmask import BitMask
from pentameter.stepmask import stepmask

class TestStepMask(unittest.TestCase):

    def test_bits(self):
        self.assertEqual(stepmask.NONSTRICT, 1)
        self.assertEqual(stepmask.STRICT, 2)
        self.assertEqual(stepmask.TURN, 16)
        self.assertEqual(stepmask.mask('STRICT|TURN'), 18)
        self.assertEqual(stepmask.mask(3), 8)
        self.assertEqual(stepmask.bitnum('ALTERNATION'), 2)
        self.assertEqual(stepmask.bitname(3), 'VIOLATION')
        self.assertEqual(stepmask.names(), ['NONSTRICT', 'STRICT', 'ALTERNATION', 'VIOLATION', 'TURN'])
        self.assertEqual(stepmask.names(stepmask.STRICT | stepmask.TURN), ['STRICT', 'TURN'])
        self.assertEqual(stepmask.names(2**7), ['UNKNOWN7'])
        self.assertIn('strict', stepmask.comment('STRICT'))
        with self.assertRaises(AttributeError):
            stepmask.NOT_A_BIT

    def test_definitions(self):
        twice = yaml.safe_load("""
        m:
            - [A, 0, "first"]
            - [B, 0, "same bit"]
        """)
        with self.assertRaises(ValueError):
            BitMask('m', twice)
        short = dict(m=[['A', 0]])
        with self.assertRaises(ValueError):
            BitMask('m', short)


if __name__ == '__main__':
    unittest.main()
