import yaml
from pentameter.bitmask import BitMask

_bitdefs = yaml.safe_load("""
#- flags of one term of a quarter sequence
stepmask:
    - [NONSTRICT,    0, "non-strict one-step embedding into this term"]
    - [STRICT,       1, "strict one-step embedding into this term"]
    - [ALTERNATION,  2, "this term presents an alternation"]
    - [VIOLATION,    3, "previous term is not one-step embedded in this one"]
    - [TURN,         4, "strict step right after a non-strict one"]
""")

stepmask = BitMask('stepmask', _bitdefs)
