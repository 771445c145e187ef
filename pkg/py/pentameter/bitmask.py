# Licensed under a 3-clause BSD style license - see LICENSE.rst
# -*- coding: utf-8 -*-
"""
Named bit flags defined from yaml.

Example::

    _bitdefs = yaml.safe_load('''
    stepmask:
        - [NONSTRICT,  0, "non-strict step"]
        - [STRICT,     1, "strict step"]
    ''')
    stepmask = BitMask('stepmask', _bitdefs)

    stepmask.STRICT | stepmask.NONSTRICT   # 3
    stepmask.names(2)                      # ['STRICT']
"""


class _MaskBit(int):
    """
    A single bit, an int equal to 2**bitnum which also knows its name and comment.
    """
    def __new__(cls, name, bitnum, comment):
        self = super(_MaskBit, cls).__new__(cls, 2**bitnum)
        self.name = name
        self.bitnum = bitnum
        self.mask = 2**bitnum
        self.comment = comment
        return self

    def __str__(self):
        return ('{0.name:16s} bit {0.bitnum} mask 0x{0.mask:X} - ' +
                '{0.comment}').format(self)


class BitMask(object):
    """
    Bit names, values and comments of one mask.

    Args:
        name: name of the mask, a key of bitdefs
        bitdefs: dict of mask definitions, each a list of [bitname, bitnum, comment]
    """

    def __init__(self, name, bitdefs):
        self._bits = dict()
        self._name = name
        for x in bitdefs[name]:
            if len(x) != 3 :
                raise ValueError("bit definition {} should be [name, bitnum, comment]".format(x))
            bitname, bitnum, comment = x
            if bitname in self._bits or bitnum in self._bits :
                raise ValueError("bit {} ({}) is defined twice in {}".format(bitname, bitnum, name))
            self._bits[bitname] = _MaskBit(bitname, bitnum, comment)
            self._bits[bitnum] = self._bits[bitname]

    def __getitem__(self, bitname):
        return self._bits[bitname]

    def bitnum(self, bitname):
        return self._bits[bitname].bitnum

    def bitname(self, bitnum):
        return self._bits[bitnum].name

    def comment(self, bitname_or_num):
        return self._bits[bitname_or_num].comment

    def mask(self, name_or_num):
        """
        Value of a bit given by number, or of names joined with '|' such as 'STRICT|TURN'.
        """
        if isinstance(name_or_num, int):
            return self._bits[name_or_num].mask
        mask = 0
        for name in name_or_num.split('|'):
            mask |= self._bits[name.strip()].mask
        return mask

    def names(self, mask=None):
        """
        Names of the bits set in mask, or of all bits if mask is None,
        in order of bit number.  Undefined bits are reported as UNKNOWNn.
        """
        if mask is None:
            bitnums = [x for x in self._bits.keys() if isinstance(x, int)]
            return [self._bits[bitnum].name for bitnum in sorted(bitnums)]

        names = list()
        mask = int(mask)
        bitnum = 0
        while 2**bitnum <= mask:
            if 2**bitnum & mask:
                if bitnum in self._bits:
                    names.append(self._bits[bitnum].name)
                else:
                    names.append('UNKNOWN' + str(bitnum))
            bitnum += 1
        return names

    def __getattr__(self, name):
        if name.startswith('_') :
            raise AttributeError(name)
        if name in self._bits:
            return self._bits[name]
        raise AttributeError('Unknown mask bit name ' + name)

    def __repr__(self):
        result = [self._name + ':']
        bitnums = [x for x in self._bits.keys() if isinstance(x, int)]
        for bitnum in sorted(bitnums):
            bit = self._bits[bitnum]
            result.append('  - [{:16s} {:2d}, "{}"]'.format(bit.name+',', bit.bitnum, bit.comment))
        return "\n".join(result)
