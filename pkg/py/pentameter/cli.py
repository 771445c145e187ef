"""
Command line interface: pentameter <command> [options]

Commands:
    tiling         tiles of the base quarter up to a tree depth (json or svg)
    locate         tile containing a point given by its disc coordinates
    tmseq          quarter sequence driven by Turing machines (noalgo or noconv)
    sequence       classify a sequence trace file and track its limit
    ends-separate  compare the chains of two sequences

Exit codes: 0 ok, 2 domain error, 3 input error.
"""

import os
import sys
import json
import argparse

from pentameter.log import get_logger
from pentameter import io
from pentameter.hyperbolic import GeometryError, set_tolerances, from_disc
from pentameter.ends import BudgetExhausted
from pentameter.turing import IndexOutOfRoster, MachineFormatError

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_INPUT = 3

class DepthTooLarge(GeometryError):
    pass


def _print(params):
    print(json.dumps(params, sort_keys=True))

def _read_machine(name):
    from pentameter import turing
    if os.path.isfile(name) :
        return turing.read_machine(name)
    return turing.fixture(name)


def cmd_tiling(args, config):
    from pentameter.pentagrid import decompose, base_quarter, verify_strip_lemmas, level_counts
    log = get_logger()
    depth = args.depth
    if depth < 0 or depth > config['max_depth'] :
        raise DepthTooLarge("depth {} is not in [0, {}]".format(depth, config['max_depth']))
    quarter = base_quarter()
    tiles = decompose(quarter, depth)
    log.info("{} tiles at depth <= {}, expected {}".format(len(tiles), depth, sum(level_counts(depth))))
    if args.check :
        t = verify_strip_lemmas(max(depth, 1), quarter, seed=config['seed'])
        nfailed = int(len(t) - t['PASSED'].sum())
        log.info("strip checks: {} run, {} failed".format(len(t), nfailed))
        if nfailed > 0 :
            raise GeometryError("{} strip checks failed".format(nfailed))
    if args.format == 'svg' :
        from pentameter.render import plot_tiling
        plot_tiling(args.out, tiles, config['width_px'], config['height_px'], quarter=quarter)
    else :
        io.write_tiles(args.out, tiles, depth=depth)
    log.info("wrote {}".format(args.out))
    return EXIT_OK

def cmd_locate(args, config):
    from pentameter.locator import locate
    from pentameter.pentagrid import base_quarter
    tile = locate(from_disc(args.x, args.y), base_quarter())
    _print(dict(path=list(tile.path), color=tile.color, generation=tile.generation))
    return EXIT_OK

def _straight_chain(horizon):
    from pentameter import turing
    from pentameter.tmconstruct import build_noalgo_seq
    from pentameter.ends import track_limit
    run = build_noalgo_seq(turing.never_halts(), 0, horizon)
    return track_limit(run.seq, horizon)

def cmd_tmseq(args, config):
    from pentameter import tmconstruct
    from pentameter.quarters import classify
    from pentameter.ends import track_limit, ends_separated, write_chain
    log = get_logger()
    horizon = args.horizon if args.horizon is not None else config['horizon']

    if args.mode == 'noalgo' :
        if args.machine is None :
            raise MachineFormatError("noalgo needs --machine")
        machine = _read_machine(args.machine)
        run = tmconstruct.build_noalgo_seq(machine, args.input, horizon)
        seq = run.seq
        lines = [run.delta0] + ([run.delta1] if run.delta1 is not None else [])
    else :
        from pentameter.turing import read_roster
        roster = read_roster(args.roster if args.roster is not None else io.demo_roster_filename())
        if args.horizon is None :
            horizon = len(roster)
        print(tmconstruct.y_sequence_table(roster, args.input, horizon))
        run = tmconstruct.build_noconv_seq(roster, args.input, horizon)
        seq = run.seq
        lines = []

    io.write_json(args.out, dict(name='Machine sequence trace', sequence=seq.name,
                                 rows=tmconstruct.tm_trace(seq, horizon)))
    if args.trace is not None :
        from pentameter.quarters import write_trace
        write_trace(args.trace, seq, horizon)

    report = classify(seq, horizon)
    chain = track_limit(seq, horizon)
    if args.chain is not None :
        write_chain(args.chain, chain)
    if args.svg is not None :
        from pentameter.render import plot_sequence
        plot_sequence(args.svg, seq.take(horizon), lines, chain, config['width_px'], config['height_px'])

    verdict = dict(strict_steps=report['strict_steps'], alternations=report['alternations'],
                   direct_so_far=report['direct_so_far'])
    if args.mode == 'noalgo' and not report['direct_so_far'] :
        sep = ends_separated(chain, _straight_chain(horizon))
        if sep :
            verdict['verdict'] = 'Separated'
            verdict['poles'] = [sep.h1.boundary.tolist(), sep.h2.boundary.tolist()]
        else :
            verdict['verdict'] = 'UnknownAtHorizon'
    if args.mode == 'noalgo' and report['direct_so_far'] :
        print("direct_so_far=true")
    _print(verdict)
    log.info("wrote {}".format(args.out))
    return EXIT_OK

def cmd_sequence(args, config):
    from pentameter.quarters import read_trace, classify
    from pentameter.ends import track_limit, write_chain
    import pentameter.tmconstruct  # registers the generators of the machine sequences
    seq = read_trace(args.trace)
    horizon = args.horizon if args.horizon is not None else len(seq.take(10**6))
    report = classify(seq, horizon)
    _print(report)
    if report['stepwise_ok'] and len(report['alternations']) == 0 :
        chain = track_limit(seq, horizon)
        if args.out is not None :
            write_chain(args.out, chain)
    return EXIT_OK

def cmd_ends_separate(args, config):
    from pentameter.ends import read_chain, ends_separated
    c1 = read_chain(args.chain1)
    c2 = read_chain(args.chain2)
    sep = ends_separated(c1, c2)
    if sep :
        _print(dict(verdict='Separated', i=sep.i, j=sep.j,
                    poles=[sep.h1.boundary.tolist(), sep.h2.boundary.tolist()]))
    else :
        _print(dict(verdict='UnknownAtHorizon'))
    return EXIT_OK


def get_parser():
    parser = argparse.ArgumentParser(prog='pentameter',
                                     description='Pentagrid tilings, quarters and their limits')
    parser.add_argument('--config', type=str, default=None, help='key=value configuration file')
    parser.add_argument('--seed', type=int, default=None, help='seed of sampled checks')
    sub = parser.add_subparsers(dest='command')

    p = sub.add_parser('tiling', help='tiles of the base quarter')
    p.add_argument('--depth', type=int, required=True, help='tree depth')
    p.add_argument('--out', type=str, required=True, help='output file')
    p.add_argument('--format', type=str, choices=['json', 'svg'], default='json')
    p.add_argument('--check', action='store_true', help='also run the strip lemma checks')
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser('locate', help='tile containing a point of the disc')
    p.add_argument('x', type=float)
    p.add_argument('y', type=float)
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser('tmseq', help='machine driven quarter sequence')
    p.add_argument('--mode', type=str, choices=['noalgo', 'noconv'], default='noalgo')
    p.add_argument('--machine', type=str, default=None, help='machine file or fixture name')
    p.add_argument('--roster', type=str, default=None, help='roster file (noconv)')
    p.add_argument('--input', type=int, default=0, help='machine input, largest n in noconv')
    p.add_argument('--horizon', type=int, default=None)
    p.add_argument('--out', type=str, required=True, help='trace json file')
    p.add_argument('--trace', type=str, default=None, help='quarter sequence trace for the sequence command')
    p.add_argument('--chain', type=str, default=None, help='chain json file')
    p.add_argument('--svg', type=str, default=None, help='svg rendering')
    p.set_defaults(func=cmd_tmseq)

    p = sub.add_parser('sequence', help='classify a sequence trace')
    p.add_argument('trace', type=str)
    p.add_argument('--horizon', type=int, default=None)
    p.add_argument('--out', type=str, default=None, help='chain json file')
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser('ends-separate', help='separation of two chains')
    p.add_argument('chain1', type=str)
    p.add_argument('chain2', type=str)
    p.set_defaults(func=cmd_ends_separate)
    return parser


def main(argv=None):
    log = get_logger()
    parser = get_parser()
    args = parser.parse_args(argv)
    if args.command is None :
        parser.print_help()
        return EXIT_INPUT
    try :
        config = io.read_config(args.config)
        if args.seed is not None :
            config['seed'] = args.seed
        set_tolerances(config['eps_norm'], config['eps_geo'])
        return args.func(args, config)
    except (GeometryError, BudgetExhausted, IndexOutOfRoster) as err :
        log.error("{}: {}".format(type(err).__name__, err))
        return EXIT_DOMAIN
    except (MachineFormatError, io.ConfigError, IOError, ValueError, KeyError, RuntimeError) as err :
        log.error("{}: {}".format(type(err).__name__, err))
        return EXIT_INPUT

if __name__ == '__main__' :
    sys.exit(main())
