"""Command line front end."""
import argparse
import cmd
import json
import logging
import random
import re
import sys
from fractions import Fraction
from typing import Any, Callable, List, Optional, Sequence, TextIO

from . import __version__
from .config import Settings
from .exceptions import IndClusterError, NotExchangeableError, UnknownVariableError
from .expansion import check_expansion, laurent_expansion
from .grassmann import q_infty_window, quad_quiver, rect_seed
from .indseed import ind_seed_window
from .morphism import MeltingMorphismSpec, check_melting_morphism
from .partition import as_partition, parse_partition, weakly_separated
from .pluecker import diag_relation, hook_relation, pluecker_relation, verify_relation
from .seed import Seed, exchange_relation_text, mutate, quiver_to_dot
from .similarity import seeds_similar
from .systems import get_system, load_seed
from .tau import (PointW, Tau, check_plucker, giambelli_check, kp_residual, positivity_certificate,
                  tau_from_point)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


#
# Helpers
#

def _read_json(path: str) -> Any:
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def _write_text(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return

    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info('Wrote %s', path)


def _dump(data: Any) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + '\n'


def _resolve_token(seed: Seed, token: str) -> int:
    """A variable given by name or by partition label."""
    if token in seed.names:
        return seed.resolve(token)

    label = as_partition(token)
    if label is not None:
        found = seed.by_label(label)
        if found is not None:
            return found.id

    raise UnknownVariableError(f'{token!r} is neither a variable nor a label of this seed')


def _index_tuple(text: str) -> List[int]:
    raw = text.strip()
    if raw[:1] in '[(' and raw[-1:] in '])':
        raw = raw[1:-1]

    return [int(x) for x in raw.split(',') if x.strip()]


def _split_steps(text: str) -> List[str]:
    """Mutation steps separated by semicolons or whitespace; commas stay inside labels."""
    return [step for step in re.split(r'[;\s]+', text.strip()) if step]


def describe(seed: Seed) -> str:
    """Plain text summary of a seed: exchangeable and frozen variables, then the arrows."""
    lines = [
        'exchangeable: ' + ' '.join(v.name for v in seed.vars if v.id in seed.ex),
        'frozen: ' + ' '.join(v.name for v in seed.vars if v.id not in seed.ex),
    ]
    if seed.locked:
        lines.append('locked: ' + ' '.join(v.name for v in seed.vars if v.id in seed.locked))

    for u in seed.vars:
        for v in seed.vars:
            b = seed.entry(u.id, v.id)
            if b > 0:
                lines.append(f'{u.name} -> {v.name}' + (f' ({b})' if b > 1 else ''))

    return '\n'.join(lines) + '\n'


def _mutate_echoing(seed: Seed, steps: Sequence[str], show: bool) -> Seed:
    for index, token in enumerate(steps):
        try:
            x = _resolve_token(seed, token)
        except UnknownVariableError:
            raise NotExchangeableError(f'Step {index}: {token!r} is not in the cluster', step=index)

        if show:
            print(exchange_relation_text(seed, x))
        seed = mutate(seed, x)

    return seed


#
# Verbs
#

def _seed_from_args(args) -> Seed:
    if args.kind == 'grass':
        return rect_seed(*args.sizes)
    if args.kind == 'qinf-window':
        return q_infty_window(*args.sizes)

    return quad_quiver(args.sizes[0])


def cmd_seed(args, settings: Settings) -> int:
    if args.kind == 'validate':
        report = load_seed(args.sizes[0]).validate()
        for warning in report.warnings:
            print(f'warning: {warning}')
        if not report:
            for violation in report.violations:
                print(f'invalid: {violation}')
            return EXIT_FAILED

        print('valid')
        return EXIT_OK

    expected = 1 if args.kind == 'quad' else 2
    if len(args.sizes) != expected:
        raise ValueError(f'seed {args.kind} takes {expected} integer arguments')
    args.sizes = [int(x) for x in args.sizes]

    seed = _mutate_echoing(_seed_from_args(args), args.mutate or [], args.show_relations)
    if args.json:
        _write_text(args.json, _dump(seed.to_json()))
    if args.dot:
        _write_text(args.dot, quiver_to_dot(seed))
    if not args.quiet:
        sys.stdout.write(describe(seed))

    return EXIT_OK


def cmd_mutate(args, settings: Settings) -> int:
    seed = _mutate_echoing(load_seed(args.file), _split_steps(args.seq), args.show_relations)
    _write_text(args.out, _dump(seed.to_json()))
    return EXIT_OK


def cmd_check(args, settings: Settings) -> int:
    if args.what == 'weak-sep':
        if len(args.operands) != 2:
            raise ValueError('check weak-sep takes two partitions')
        a, b = (parse_partition(x) for x in args.operands)
        if weakly_separated(a, b):
            print(f'{a} and {b} are weakly separated')
            return EXIT_OK

        print(f'{a} and {b} are NOT weakly separated')
        return EXIT_FAILED

    if args.what == 'similar':
        if len(args.operands) != 2:
            raise ValueError('check similar takes two seed files')
        a, b = (load_seed(path) for path in args.operands)
        found = seeds_similar(a, b, bound=settings.similarity_bound)
        if found is None:
            print('NOT similar')
            return EXIT_FAILED

        print('strongly similar' if found.strong else 'similar')
        for source, target in found.mapping.items():
            if source != target:
                print(f'{source} -> {target}')
        for key, sign in found.signs.items():
            print(f'sign {key}: {sign:+d}')
        return EXIT_OK

    if len(args.operands) != 3:
        raise ValueError('check morphism takes SRC DST MAP')
    src, dst = load_seed(args.operands[0]), load_seed(args.operands[1])
    f = MeltingMorphismSpec(_read_json(args.operands[2]))
    depth = settings.morphism_depth if args.depth is None else args.depth

    report = check_melting_morphism(f, src, dst, depth)
    if report:
        print(f'PASS ({report.checked_sequences} sequences checked)')
        return EXIT_OK

    for failure in report.failures:
        print(f'FAIL {failure}')
    if report.failing_sequence is not None:
        print('sequence: ' + ' '.join(report.failing_sequence))
    return EXIT_FAILED


def cmd_relations(args, settings: Settings) -> int:
    values = args.values
    if args.family == 'pluecker':
        if len(values) != 3:
            raise ValueError('relations pluecker takes M I J')
        relation = pluecker_relation(int(values[0]), _index_tuple(values[1]), _index_tuple(values[2]))
    elif args.family == 'hook':
        if len(values) != 2:
            raise ValueError('relations hook takes A B')
        relation = hook_relation(int(values[0]), int(values[1]))
    else:
        if len(values) != 1:
            raise ValueError('relations diag takes K')
        relation = diag_relation(int(values[0]))

    print(_dump(relation.to_json()).rstrip('\n') if args.json else relation.to_text())

    if args.verify:
        m, n = args.verify
        ok = verify_relation(relation, m, n, trials=settings.oracle_trials, rng=random.Random(settings.rng_seed),
                             bound=settings.oracle_entry_bound, exact=args.exact)
        print(f'oracle on Gr({m}, {m + n}): ' + ('PASS' if ok else 'FAIL'))
        return EXIT_OK if ok else EXIT_FAILED

    return EXIT_OK


def cmd_laurent(args, settings: Settings) -> int:
    label = parse_partition(args.label)
    m, n = args.box
    expr = laurent_expansion(label, m, n)
    print(expr.to_fraction_text())

    if args.verify_oracle:
        check_expansion(expr, label, m, n, trials=settings.oracle_trials, rng=random.Random(settings.rng_seed),
                        bound=settings.oracle_entry_bound)
        print(f'oracle: PASS ({settings.oracle_trials} matrices)')

    return EXIT_OK


def cmd_ind(args, settings: Settings) -> int:
    system = get_system(args.system)
    bound = args.bound or settings.probe_bound or system.probe_bound
    top = system.seed(bound)
    classes = [top.var(_resolve_token(top, token)).name for token in args.classes]

    window = ind_seed_window(system, classes, bound, jobs=settings.jobs)
    if args.certificates:
        _write_text(args.certificates, _dump(window.certificates_json()))
    _write_text(args.out, _dump(window.to_json()))
    return EXIT_OK


def cmd_tau(args, settings: Settings) -> int:
    if args.action == 'from-point':
        if args.size is None:
            raise ValueError('tau from-point needs --size')
        point = PointW.from_json(_read_json(args.file))
        tau = tau_from_point(point, args.size, jobs=settings.jobs)
        _write_text(args.out, _dump(tau.to_json()))
        return EXIT_OK

    tau = Tau.from_json(_read_json(args.file))
    if args.action == 'kp':
        residual = kp_residual(tau)
        print(f'KP residual: {residual}')
        return EXIT_OK if residual == 0 else EXIT_FAILED

    report = check_plucker(tau, args.m_bound, args.index_bound)
    if report:
        print(f'PASS ({report.checked} relations)')
        return EXIT_OK

    print(f'FAIL {report.relation.to_text()} (residual {report.residual})')
    return EXIT_FAILED


def cmd_giambelli(args, settings: Settings) -> int:
    report = giambelli_check(PointW.from_json(_read_json(args.file)), parse_partition(args.label))
    print(f'{report.label}: {report.value} vs {report.determinant}, residual {report.residual}')
    return EXIT_OK if report else EXIT_FAILED


def cmd_positivity(args, settings: Settings) -> int:
    data = _read_json(args.file)
    m, n = data['box']
    values = {parse_partition(k): v for k, v in data['values'].items()}
    labels = [parse_partition(x) for x in data['labels']] if 'labels' in data else None

    report = positivity_certificate({k: Fraction(v) for k, v in values.items()}, labels, m, n)
    for label, value in report.values.items():
        print(f'{label}: {value}')
    for label in report.non_positive_expansions:
        print(f'{label}: expansion has a non-positive coefficient')

    return EXIT_OK if report else EXIT_FAILED


def cmd_dot(args, settings: Settings) -> int:
    _write_text(args.out, quiver_to_dot(load_seed(args.file)))
    return EXIT_OK


def cmd_explore(args, settings: Settings) -> int:
    seed = load_seed(args.file) if args.file else rect_seed(*args.grass)
    Explorer(seed).cmdloop()
    return EXIT_OK


#
# REPL
#

class Explorer(cmd.Cmd):
    """
    Interactive mutation of a seed. Every mutation echoes the exchange relation it used; `undo` restores the
    previous seed exactly.
    """

    intro = 'Type help for the list of commands.'
    prompt = 'indcluster> '

    def __init__(self, seed: Seed, stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> None:
        super().__init__(stdin=stdin, stdout=stdout)
        if stdin is not None:
            self.use_rawinput = False
        self.seed = seed
        self.undo_stack: List[Seed] = []

    def _say(self, text: str) -> None:
        self.stdout.write(text if text.endswith('\n') else text + '\n')

    def do_show(self, arg: str) -> None:
        """show: print the current seed."""
        self._say(describe(self.seed))

    def do_labels(self, arg: str) -> None:
        """labels: list the variables with their labels."""
        for v in self.seed.vars:
            kind = 'ex' if v.id in self.seed.ex else 'frozen'
            self._say(f'{v.name}\t{v.label if v.label is not None else "-"}\t{kind}')

    def do_mutate(self, arg: str) -> None:
        """mutate <name or label>: mutate the current seed."""
        token = arg.strip()
        try:
            x = _resolve_token(self.seed, token)
            relation = exchange_relation_text(self.seed, x)
            mutated = mutate(self.seed, x)
        except UnknownVariableError:
            self._say(f'Unknown variable {token!r}')
            return
        except IndClusterError as e:
            self._say(f'Refused: {e}')
            return

        self.undo_stack.append(self.seed)
        self.seed = mutated
        self._say(relation)

    def do_undo(self, arg: str) -> None:
        """undo: revert the last mutation."""
        if not self.undo_stack:
            self._say('Nothing to undo')
            return

        self.seed = self.undo_stack.pop()
        self._say('Undone')

    def do_dot(self, arg: str) -> None:
        """dot <file>: write the current quiver in DOT."""
        path = arg.strip()
        if not path:
            self._say('Usage: dot <file>')
            return

        with open(path, 'w', encoding='utf-8') as f:
            f.write(quiver_to_dot(self.seed))
        self._say(f'Wrote {path}')

    def do_quit(self, arg: str) -> bool:
        """quit: leave the explorer."""
        return True

    do_EOF = do_quit

    def default(self, line: str) -> None:
        self._say(f'Unknown command {line.split()[0]!r}')

    def emptyline(self) -> None:
        pass


#
# Parser
#

def _pair_of_ints(parser: argparse.ArgumentParser, name: str, **kwargs) -> None:
    parser.add_argument(name, nargs=2, type=int, metavar=('M', 'N'), **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='indcluster',
                                     description='Cluster algebras of infinite rank and the Sato Grassmannian.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for progress, -vv for details')
    parser.add_argument('--rng-seed', type=int, default=None, help='seed of the random oracle matrices')
    parser.add_argument('--jobs', type=int, default=None, help='worker threads (default: $INDCLUSTER_JOBS or 1)')
    verbs = parser.add_subparsers(dest='verb', metavar='VERB')
    verbs.required = True

    p = verbs.add_parser('seed', help='build, mutate and export a seed')
    p.add_argument('kind', choices=['grass', 'qinf-window', 'quad', 'validate'])
    p.add_argument('sizes', nargs='+', help='sizes, or the seed file for validate')
    p.add_argument('--mutate', action='append', metavar='VAR', help='mutate at a name or label; repeatable')
    p.add_argument('--show-relations', action='store_true', help='print the exchange relation of every mutation')
    p.add_argument('--json', metavar='FILE', help='write the seed as JSON')
    p.add_argument('--dot', metavar='FILE', help='write the quiver as DOT')
    p.add_argument('--quiet', action='store_true', help='do not print the seed summary')
    p.set_defaults(func=cmd_seed)

    p = verbs.add_parser('mutate', help='mutate a seed file along a sequence')
    p.add_argument('file')
    p.add_argument('--seq', required=True, help='steps separated by ";" or spaces')
    p.add_argument('--out', metavar='FILE', help='output file (default: stdout)')
    p.add_argument('--show-relations', action='store_true')
    p.set_defaults(func=cmd_mutate)

    p = verbs.add_parser('check', help='weak separation, melting morphism or similarity checks')
    p.add_argument('what', choices=['weak-sep', 'morphism', 'similar'])
    p.add_argument('operands', nargs='+')
    p.add_argument('--depth', type=int, default=None, help='CM2 search depth')
    p.add_argument('--similarity-bound', type=int, default=None, help='largest seed for a similarity search')
    p.set_defaults(func=cmd_check)

    p = verbs.add_parser('relations', help='Plücker relations')
    p.add_argument('family', choices=['pluecker', 'hook', 'diag'])
    p.add_argument('values', nargs='+', help='M I J, A B or K; index tuples as [i1,i2,...]')
    _pair_of_ints(p, '--verify', default=None, help='check on Gr(M, M + N) with random minors')
    p.add_argument('--exact', action='store_true', help='use a symbolic matrix (M + N <= 6)')
    p.add_argument('--json', action='store_true', help='print the term list as JSON')
    p.set_defaults(func=cmd_relations)

    p = verbs.add_parser('laurent', help='Laurent expansion of a Plücker variable in Q(M, N)')
    p.add_argument('label')
    _pair_of_ints(p, '--box', required=True)
    p.add_argument('--verify-oracle', action='store_true')
    p.set_defaults(func=cmd_laurent)

    p = verbs.add_parser('ind', help='ind-seed windows of directed systems')
    p.add_argument('action', choices=['window'])
    p.add_argument('--system', required=True, help='grass-chain, merging-chain, example-2-5 or constant:<seed file>')
    p.add_argument('--classes', nargs='+', required=True, help='class names or labels at the probe bound')
    p.add_argument('--bound', type=int, default=None)
    p.add_argument('--out', metavar='FILE')
    p.add_argument('--certificates', metavar='FILE')
    p.set_defaults(func=cmd_ind)

    p = verbs.add_parser('tau', help='tau-functions')
    p.add_argument('action', choices=['from-point', 'check', 'kp'])
    p.add_argument('file')
    p.add_argument('--size', type=int, default=None)
    p.add_argument('--m-bound', type=int, default=3)
    p.add_argument('--index-bound', type=int, default=4)
    p.add_argument('--out', metavar='FILE')
    p.set_defaults(func=cmd_tau)

    p = verbs.add_parser('giambelli', help='Giambelli check on a point of the Sato Grassmannian')
    p.add_argument('file')
    p.add_argument('label')
    p.set_defaults(func=cmd_giambelli)

    p = verbs.add_parser('positivity', help='certify positivity from rectangle values')
    p.add_argument('file')
    p.set_defaults(func=cmd_positivity)

    p = verbs.add_parser('explore', help='interactive mutation')
    p.add_argument('file', nargs='?')
    _pair_of_ints(p, '--grass', default=[2, 2])
    p.set_defaults(func=cmd_explore)

    p = verbs.add_parser('dot', help='render a seed file as DOT')
    p.add_argument('file')
    p.add_argument('out')
    p.set_defaults(func=cmd_dot)

    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG

    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the command line.

    :return: 0 on success, 1 when a verification fails, 2 on usage or input errors.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    _configure_logging(args.verbose)

    handler: Callable[..., int] = args.func
    try:
        settings = Settings.from_env().updated(jobs=args.jobs, rng_seed=args.rng_seed,
                                               similarity_bound=getattr(args, 'similarity_bound', None))
        return handler(args, settings)
    except (IndClusterError, ValueError, KeyError, OSError) as e:
        print(f'indcluster: error: {e}', file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
