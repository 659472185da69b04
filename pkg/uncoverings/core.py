import argparse
import contextlib
import logging
import os
import sys

from uncoverings.config import Config
from uncoverings.connectivity import (brute_force_edge_connectivity, cut_sides,
                                      edge_connectivity, min_edge_cut)
from uncoverings.construct import construct_family
from uncoverings.decompose import (circulant_decomposition, decomposition_to_json, gk_factorisation,
                                   walecki)
from uncoverings.errors import (ConstructionError, DecompositionError, FormatError, GraphError,
                                PreconditionViolation, ResourceLimitExceeded)
from uncoverings.graph import build_circulant
from uncoverings.graphreader import (dump_json, load_graph, load_graphs, load_uncovering,
                                     open_text, uncovering_to_json, write_graph6)
from uncoverings.netsim import FAILURE_MODELS, SimConfig, simulate, write_trials_csv
from uncoverings.search import conjecture_scan, exact_min_ubb, greedy_min_ubb, write_scan_csv
from uncoverings.verify import (EXHAUSTIVE, Sampled, is_covering_by_bases, is_minimal_ubb,
                                schonheim_bound, verify_ubb)

logger = logging.getLogger('uncoverings')

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


@contextlib.contextmanager
def _output(path):
    if path is None or path == '-':
        yield sys.stdout
    else:
        with open_text(path, 'w') as fh:
            yield fh


###########################################################
# commands
###########################################################
def _decomposition(args):
    if args.family == 'complete':
        return walecki(args.n) if args.n % 2 else gk_factorisation(args.n)
    if args.family == 'circulant':
        return circulant_decomposition(build_circulant(args.n, args.steps or [1]))
    raise GraphError(f'the {args.family} construction does not use a decomposition')


def cmd_construct(args):
    u = construct_family(args.family, args.n, m=args.m, steps=args.steps)
    logger.info('%s: %d trees, t=%d', u.provenance, len(u), u.t)
    dump_json(uncovering_to_json(u), args.out)
    if args.decomposition:
        dump_json(decomposition_to_json(_decomposition(args)), args.decomposition)
    if args.graph6:
        with _output(args.graph6) as fh:
            write_graph6([u.graph], fh)
    return EXIT_OK


def cmd_verify(args):
    graph = load_graph(args.graph) if args.graph else None
    mode = Sampled(args.samples, args.seed) if args.mode == 'sampled' or args.samples else EXHAUSTIVE
    if isinstance(mode, Sampled) and not mode.count:
        mode = Sampled(Config.SAMPLE_COUNT, args.seed)
    try:
        # an uncovering with t >= lambda is refused as soon as it is loaded
        u = load_uncovering(args.ubb, graph)
        g = u.graph
        verdict = verify_ubb(g, u, mode, threads=args.threads, progress=args.progress)
    except PreconditionViolation as exc:
        dump_json({'status': 'precondition-violated', 'witness': None,
                   'subsets_checked': 0, 'reason': str(exc)}, args.out)
        return EXIT_INVALID
    body = verdict.to_json()
    code = EXIT_OK if verdict.ok else EXIT_INVALID
    if args.minimal and verdict.ok:
        report = is_minimal_ubb(g, u, threads=args.threads, progress=args.progress)
        body['minimality'] = report.to_json()
        if not report.minimal:
            code = EXIT_INVALID
    if args.covering:
        body['covering_by_bases'] = is_covering_by_bases(g, u)
    dump_json(body, args.out)
    return code


def cmd_mincut(args):
    g = load_graph(args.graph)
    lam = edge_connectivity(g)
    body = {'lambda': lam}
    if lam > 0:
        cut = min_edge_cut(g)
        body['cut'] = list(cut.ids)
        body['sides'] = cut_sides(g, cut)
    code = EXIT_OK
    if args.oracle:
        body['oracle'] = brute_force_edge_connectivity(g)
        if body['oracle'] != lam:
            logger.error('Stoer-Wagner gives %d, bipartition oracle gives %d', lam, body['oracle'])
            code = EXIT_INVALID
    dump_json(body, args.out)
    return code


def cmd_bound(args):
    try:
        value = schonheim_bound(args.n, args.k, args.t)
    except PreconditionViolation as exc:
        logger.error('%s', exc)
        return EXIT_USAGE
    print(value)
    return EXIT_OK


def cmd_search(args):
    g = load_graph(args.graph)
    t = edge_connectivity(g) - 1
    if t < 0:
        raise GraphError('search needs a connected graph')
    if args.exact_budget:
        result = exact_min_ubb(g, t, args.exact_budget, progress=args.progress)
        u = result.uncovering
        summary = {'size': result.size, 'optimal': result.optimal, 'nodes': result.nodes}
    else:
        u = greedy_min_ubb(g, t, progress=args.progress)
        summary = {'size': len(u), 'optimal': None, 'nodes': 0}
    logger.info('search on %d vertices, t=%d: %s', g.vertex_count, t, summary)
    body = uncovering_to_json(u)
    body['search'] = summary
    dump_json(body, args.out)
    return EXIT_OK


def cmd_scan(args):
    if args.dump_dir:
        os.makedirs(args.dump_dir, exist_ok=True)
    flagged = 0

    def rows():
        nonlocal flagged
        for row in conjecture_scan(load_graphs(args.graphs), args.exact_budget,
                                   args.threads, args.progress):
            if row.status in ('counterexample-candidate', 'error'):
                flagged += 1
            if args.dump_dir and row.uncovering is not None:
                dump_json(uncovering_to_json(row.uncovering),
                          os.path.join(args.dump_dir, f'{row.graph_id}.json'))
            yield row

    with _output(args.out) as fh:
        count = write_scan_csv(rows(), fh)
    logger.info('scanned %d graphs, %d flagged', count, flagged)
    return EXIT_INVALID if flagged else EXIT_OK


def cmd_simulate(args):
    graph = load_graph(args.graph) if args.graph else None
    u = load_uncovering(args.ubb, graph)
    size = tuple(args.failure_range) if args.failure_range else args.failure_size
    cfg = SimConfig(root=args.root, trials=args.trials, failure_size=size,
                    seed=args.seed, failure_model=args.model)
    stats = simulate(u.graph, u, cfg, progress=args.progress)
    if args.csv:
        with _output(args.csv) as fh:
            write_trials_csv(stats, fh)
    text = stats.dumps(records=args.records)
    with _output(args.out) as fh:
        fh.write(text + '\n')
    return EXIT_OK


###########################################################
# parser
###########################################################
def build_parser():
    pr = argparse.ArgumentParser(prog='uncoverings',
                                 description='Uncoverings-by-bases: build, verify, search and simulate.')
    pr.add_argument('-v', '--verbose', action='count', default=0, help='more logging, progress bars')
    pr.add_argument('-q', '--quiet', action='store_true', help='errors only')
    pr.add_argument('--threads', type=int, default=Config.THREADS, help='worker cap')
    sub = pr.add_subparsers(dest='command', required=True)

    p = sub.add_parser('construct', help='build a UBB for a named family')
    p.add_argument('--family', required=True, choices=['complete', 'bipartite', 'wheel', 'circulant'])
    p.add_argument('-n', type=int, required=True)
    p.add_argument('-m', type=int)
    p.add_argument('--steps', type=int, nargs='+')
    p.add_argument('--out')
    p.add_argument('--decomposition', help='also write the underlying decomposition as JSON')
    p.add_argument('--graph6', help='also write the graph in graph6 format')
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser('verify', help='check an uncovering JSON file')
    p.add_argument('--graph', help='graph file whose edge ids the verdict should use')
    p.add_argument('--ubb', required=True)
    p.add_argument('--mode', choices=['exhaustive', 'sampled'], default='exhaustive')
    p.add_argument('--samples', type=int, default=0)
    p.add_argument('--seed', type=int, default=Config.SEED)
    p.add_argument('--minimal', action='store_true', help='also certify minimality')
    p.add_argument('--covering', action='store_true', help='also test the covering-by-bases property')
    p.add_argument('--out')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser('mincut', help='edge connectivity and a minimum cut')
    p.add_argument('--graph', required=True)
    p.add_argument('--oracle', action='store_true', help='cross-check by brute force')
    p.add_argument('--out')
    p.set_defaults(func=cmd_mincut)

    p = sub.add_parser('bound', help='Schonheim lower bound')
    p.add_argument('-n', type=int, required=True)
    p.add_argument('-k', type=int, required=True)
    p.add_argument('-t', type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser('search', help='smallest UBB by set cover, t = lambda - 1')
    p.add_argument('--graph', required=True)
    p.add_argument('--exact-budget', type=int, default=Config.EXACT_BUDGET,
                   help='branch-and-bound nodes; 0 runs greedy only')
    p.add_argument('--out')
    p.set_defaults(func=cmd_search)

    p = sub.add_parser('scan', help='conjecture scan over a graph6 catalog')
    p.add_argument('--graphs', required=True)
    p.add_argument('--exact-budget', type=int, default=Config.EXACT_BUDGET)
    p.add_argument('--dump-dir', help='write each row\'s UBB as JSON here')
    p.add_argument('--out')
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser('simulate', help='edge-failure broadcast trials')
    p.add_argument('--graph')
    p.add_argument('--ubb', required=True)
    p.add_argument('--root', type=int, default=0)
    p.add_argument('--trials', type=int, default=1000)
    p.add_argument('--failure-size', type=int, default=0)
    p.add_argument('--failure-range', type=int, nargs=2, metavar=('LO', 'HI'))
    p.add_argument('--model', choices=FAILURE_MODELS, default='uniform-random')
    p.add_argument('--seed', type=int, default=Config.SEED)
    p.add_argument('--records', action='store_true', help='include per-trial records in the JSON')
    p.add_argument('--csv', help='per-trial CSV file')
    p.add_argument('--out')
    p.set_defaults(func=cmd_simulate)
    return pr


def _setup_logging(args):
    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = Config.LOG_LEVEL
    logging.basicConfig(level=level, format=Config.LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def run(argv=None):
    """Parse argv, dispatch, and map errors onto exit codes."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _setup_logging(args)
    args.progress = args.verbose > 0 and not args.quiet
    try:
        return args.func(args)
    except ResourceLimitExceeded as exc:
        logger.error('resource ceiling: %s', exc)
        return EXIT_RESOURCE
    except PreconditionViolation as exc:
        logger.error('precondition violated: %s', exc)
        return EXIT_INVALID
    except (FormatError, GraphError, ConstructionError, DecompositionError, OSError) as exc:
        logger.error('%s', exc)
        return EXIT_USAGE


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
