"""
Deterministic Turing machines on a two-way tape over {0, 1, blank}, the
step-bounded halting predicate, and rosters of machines indexed by integers.

Inputs are written in unary: n ones from position 0, head on position 0.
"""

import os
from collections import namedtuple

import yaml

from pentameter.log import get_logger

BLANK = '_'
SYMBOLS = ('0', '1', BLANK)
MOVES = ('L', 'R')

class MachineFormatError(ValueError):
    pass

class IndexOutOfRoster(IndexError):
    pass

Halted = namedtuple('Halted', ['step'])
Running = namedtuple('Running', ['steps'])


def _symbol(s):
    s = str(s)
    if s not in SYMBOLS :
        raise MachineFormatError("unknown tape symbol '{}', expected one of {}".format(s, SYMBOLS))
    return s


class Tape(dict):
    """Sparse tape, position -> symbol, blank everywhere else."""

    def __missing__(self, key):
        return BLANK

    def ones(self):
        return sum(1 for s in self.values() if s == '1')

    def content(self):
        """Written cells from the leftmost to the rightmost non-blank one."""
        cells = [i for i, s in self.items() if s != BLANK]
        if not cells :
            return ''
        return ''.join(self[i] for i in range(min(cells), max(cells)+1))


class TuringMachine(object):
    """
    Args:
        states: list of state names
        start: start state
        halt: halt state, which has no transitions
        transitions: dict (state, symbol) -> (state, symbol, move), total on
            the states other than halt
        name: optional label
    """
    def __init__(self, states, start, halt, transitions, name=None):
        self.states = [str(s) for s in states]
        self.start = str(start)
        self.halt = str(halt)
        self.name = name
        self.transitions = dict()
        for state in (self.start, self.halt) :
            if state not in self.states :
                raise MachineFormatError("state '{}' is not in {}".format(state, self.states))
        for (state, sym), (nstate, nsym, move) in transitions.items() :
            state, nstate = str(state), str(nstate)
            if state == self.halt :
                raise MachineFormatError("the halt state '{}' has a transition".format(state))
            if state not in self.states or nstate not in self.states :
                raise MachineFormatError("transition {}->{} uses an unknown state".format(state, nstate))
            if move not in MOVES :
                raise MachineFormatError("move should be L or R, got '{}'".format(move))
            key = (state, _symbol(sym))
            if key in self.transitions :
                raise MachineFormatError("two transitions for {}".format(key))
            self.transitions[key] = (nstate, _symbol(nsym), move)
        for state in self.states :
            if state == self.halt :
                continue
            for sym in SYMBOLS :
                if (state, sym) not in self.transitions :
                    raise MachineFormatError("no transition for state '{}' on '{}'".format(state, sym))

    def tojson(self):
        rows = [[s, a, ns, na, m] for (s, a), (ns, na, m) in sorted(self.transitions.items())]
        return dict(states=list(self.states), start=self.start, halt=self.halt, transitions=rows)

    @classmethod
    def fromjson(cls, params, name=None):
        try :
            transitions = dict()
            for row in params['transitions'] :
                if len(row) != 5 :
                    raise MachineFormatError("transition {} should have 5 entries".format(row))
                state, sym, nstate, nsym, move = row
                if (str(state), str(sym)) in transitions :
                    raise MachineFormatError("two transitions for ({}, {})".format(state, sym))
                transitions[(str(state), str(sym))] = (nstate, nsym, move)
            return cls(params['states'], params['start'], params['halt'], transitions, name=name)
        except (KeyError, TypeError) as err :
            raise MachineFormatError("malformed machine description: {}".format(err))

    def __repr__(self):
        return "TuringMachine({}, {} states)".format(self.name, len(self.states))


def run(machine, n, k, tape=False):
    """
    Simulates machine on the unary input n for at most k steps.

    Returns:
        Halted(step) if the halt state is entered at step <= k, else Running(k),
        and the Tape if tape is True
    """
    if k < 0 :
        raise ValueError("number of steps must be nonnegative")
    cells = Tape()
    for i in range(n) :
        cells[i] = '1'
    state = machine.start
    pos = 0
    step = 0
    result = None
    while result is None :
        if state == machine.halt :
            result = Halted(step)
        elif step >= k :
            result = Running(k)
        else :
            state, cells[pos], move = machine.transitions[(state, cells[pos])]
            pos += 1 if move == 'R' else -1
            step += 1
    if tape :
        return result, cells
    return result

def halting_step(machine, n, k):
    """Step at which machine halts on n, None if not within k steps."""
    res = run(machine, n, k)
    return res.step if isinstance(res, Halted) else None

def kleene(roster, m, n, k):
    """
    1 if roster[m] on input n has halted within k steps, else 0.

    Raises:
        IndexOutOfRoster
    """
    if m < 0 or m >= len(roster) :
        raise IndexOutOfRoster("machine {} is not in a roster of {}".format(m, len(roster)))
    return int(isinstance(run(roster[m], n, k), Halted))


def halts_after(j):
    """Machine moving right through j states, halting at step j on any input."""
    if j < 0 :
        raise ValueError("j must be nonnegative")
    states = ['q{}'.format(i) for i in range(j)] + ['H']
    transitions = dict()
    for i in range(j) :
        for sym in SYMBOLS :
            transitions[(states[i], sym)] = (states[i+1], sym, 'R')
    return TuringMachine(states, states[0], 'H', transitions, name='halts_after_{}'.format(j))

def halt_immediately():
    return TuringMachine(['H'], 'H', 'H', dict(), name='halt_immediately')

def never_halts():
    transitions = dict((('A', sym), ('A', sym, 'R')) for sym in SYMBOLS)
    return TuringMachine(['A', 'H'], 'A', 'H', transitions, name='never_halts')

def busy_beaver_2():
    """Two-state busy beaver: 6 steps, four ones on a blank tape (blank reads as 0)."""
    transitions = dict()
    for blank in ('0', BLANK) :
        transitions[('A', blank)] = ('B', '1', 'R')
        transitions[('B', blank)] = ('A', '1', 'L')
    transitions[('A', '1')] = ('B', '1', 'L')
    transitions[('B', '1')] = ('H', '1', 'R')
    return TuringMachine(['A', 'B', 'H'], 'A', 'H', transitions, name='busy_beaver_2')

FIXTURES = dict(halt_immediately=halt_immediately, never_halts=never_halts,
                busy_beaver_2=busy_beaver_2)

def fixture(name):
    """Fixture machine by name, 'halts_after_<j>' included."""
    if name.startswith('halts_after_') :
        return halts_after(int(name[len('halts_after_'):]))
    if name not in FIXTURES :
        raise MachineFormatError("unknown fixture machine '{}'".format(name))
    return FIXTURES[name]()


def read_machine(filename):
    """
    Machine description, JSON (or YAML) {states, start, halt, transitions}
    with transitions as [state, symbol, new state, new symbol, "L"|"R"].
    """
    log = get_logger()
    log.debug("reading {}".format(filename))
    try :
        with open(filename) as ifile :
            params = yaml.safe_load(ifile)
    except yaml.YAMLError as err :
        raise MachineFormatError("cannot parse {}: {}".format(filename, err))
    if not isinstance(params, dict) :
        raise MachineFormatError("{} does not describe a machine".format(filename))
    name = os.path.splitext(os.path.basename(filename))[0]
    return TuringMachine.fromjson(params, name=name)

def write_machine(filename, machine):
    from pentameter.io import write_json
    write_json(filename, machine.tojson())

def read_roster(filename):
    """
    Roster file, a YAML/JSON list under the key 'machines'.  Each entry is a
    fixture name, a machine file relative to the roster file, or an inline
    machine description.
    """
    log = get_logger()
    try :
        with open(filename) as ifile :
            params = yaml.safe_load(ifile)
    except yaml.YAMLError as err :
        raise MachineFormatError("cannot parse {}: {}".format(filename, err))
    if not isinstance(params, dict) or 'machines' not in params :
        raise MachineFormatError("{} has no 'machines' list".format(filename))
    dirname = os.path.dirname(os.path.abspath(filename))
    roster = []
    for entry in params['machines'] :
        if isinstance(entry, dict) :
            roster.append(TuringMachine.fromjson(entry, name='inline{}'.format(len(roster))))
        elif os.path.splitext(str(entry))[1] in ('.json', '.yaml') :
            roster.append(read_machine(os.path.join(dirname, entry)))
        else :
            roster.append(fixture(str(entry)))
    log.debug("roster {} : {} machines".format(filename, len(roster)))
    return roster
