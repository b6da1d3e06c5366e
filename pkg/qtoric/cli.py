import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

from qtoric import __version__
from qtoric.census import census
from qtoric.cohomology.ring import betti_numbers, cohomology_ring
from qtoric.curves.trees import min_tree, tree_for_class
from qtoric.expr import ExpressionError, evaluate_classical_expression, evaluate_expression
from qtoric.fan.fan import Fan, InvalidCurveClass, ValidationFailed, curve_class, require_cone
from qtoric.fan.io import FanFormatError, load_fan
from qtoric.fan.primitive import NotEffective, primitive_data
from qtoric.fano.blowdown import build_tower, is_product_of_projective_spaces
from qtoric.fano.exceptional import exceptional_sets, special_exceptional_sets
from qtoric.fano.tier import NotInTier, Tier, check_condition_iii, classify, require_tier
from qtoric.predefined import CENSUS_DEFAULT_MAX_RAYS, CENSUS_DIM, ExitCode
from qtoric.quantum.giambelli import giambelli
from qtoric.quantum.presentation import presentation
from qtoric.quantum.product import gw3, quantum_product
from qtoric.report import (basis_table, basis_text, class_to_dict, quantum_class_text, quantum_class_to_dict,
                           stratum_text)
from qtoric.util import QtoricError, format_index_set, format_rational, one_based, zero_based

logger = logging.getLogger(__name__)

Result = Tuple[dict, str, ExitCode]


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma separated list of integers")


def _load(args) -> Fan:
    return load_fan(sys.stdin if args.fan == '-' else args.fan)


def _fan(args) -> Fan:
    return _load(args).require_accepted()


def _ok(data: dict, text: str) -> Result:
    return data, text, ExitCode.OK


# --- Sub-commands ---

def cmd_validate(args) -> Result:
    fan = _load(args)
    report = fan.report
    lines = ['accepted' if report.accepted else 'rejected']
    lines += [f'  {f.invariant}: {f.message}' for f in report.failures]
    return report.to_dict(), '\n'.join(lines), ExitCode.OK if report.accepted else ExitCode.VALIDATION_FAILED


def cmd_classify(args) -> Result:
    fan = _fan(args)
    result = classify(fan)
    condition = check_condition_iii(fan)
    data = {**result.to_dict(), 'condition_iii': condition.to_dict()}

    lines = [str(result.tier)]
    for c in result.certificates:
        rhs = '0' if c.rhs_ray is None else f'{c.rhs_multiplicity}*r{c.rhs_ray + 1}'
        lines.append(f'  {format_index_set(c.set)}: coefficient sum {c.coefficient_sum}, rhs {rhs}')
    lines.append(f'condition (iii): {"passed" if condition.passed else "failed"}')
    return _ok(data, '\n'.join(lines))


def cmd_primitive(args) -> Result:
    fan = _fan(args)
    data = primitive_data(fan)
    lines = [f'{format_index_set(pd.set)}  {pd.relation_text()}  {pd.cls}' for pd in data]
    return _ok({'primitive': [pd.to_dict() for pd in data]}, '\n'.join(lines))


def cmd_present(args) -> Result:
    fan = _fan(args)
    p = presentation(fan)
    lines = ['generators: ' + ', '.join(p.generators)]
    lines += [p.linear_text(r) for r in p.linear_relations]
    lines += [r.text() for r in p.deformed_relations]
    return _ok(p.to_dict(), '\n'.join(lines))


def cmd_giambelli(args) -> Result:
    fan = _fan(args)
    sigma = require_cone(fan, zero_based(args.cone))
    formula = giambelli(fan, sigma)
    text = f'{stratum_text(sigma)} = {formula.text()}'
    data = {
        'cone': list(one_based(sigma)),
        'formula': formula.text(),
        'terms': [{'beta': list(beta.pairings), 'monomial': list(one_based(mono)), 'coefficient': format_rational(c)}
                  for (beta, mono), c in formula.items()],
    }
    return _ok(data, text)


def cmd_multiply(args) -> Result:
    fan = _fan(args)
    require_tier(fan, Tier.FULL_CLASS)
    ring = cohomology_ring(fan)
    product = quantum_product(fan, evaluate_expression(args.a, fan), evaluate_expression(args.b, fan))
    data = {**quantum_class_to_dict(product), 'basis': basis_table(ring)}
    return _ok(data, quantum_class_text(ring, product))


def cmd_gw(args) -> Result:
    fan = _fan(args)
    require_tier(fan, Tier.FULL_CLASS)
    a, b, c = (evaluate_classical_expression(e, fan) for e in (args.a, args.b, args.c))
    beta = curve_class(fan, args.beta)
    value = gw3(fan, a, b, c, beta)
    return _ok({'beta': list(beta.pairings), 'value': format_rational(value)}, str(value))


def cmd_tower(args) -> Result:
    fan = _fan(args)
    tower = build_tower(fan, zero_based(args.order) if args.order else None)
    end = is_product_of_projective_spaces(tower.fans[-1])
    data = {**tower.to_dict(), 'end': end.to_dict()}

    lines = [f'{len(tower.fans[0].rays)} rays']
    for ray, f in zip(tower.removed, tower.fans[1:]):
        lines.append(f'  - r{ray + 1} -> {f.m} rays')
    if end.is_product:
        lines.append('end: product of projective spaces of dimensions ' + ', '.join(str(d) for d in end.factor_dims))
    else:
        lines.append('end: not a product of projective spaces')
    return _ok(data, '\n'.join(lines))


def cmd_tree(args) -> Result:
    fan = _fan(args)
    if args.beta is not None:
        forest = tree_for_class(fan, curve_class(fan, args.beta))
        lines = [f'root {stratum_text(fan.max_cones[forest.root])}, class {forest.cls}, degree {forest.degree}']
        if not forest.verified_degree:
            lines.append('  (degrees not verified minimal)')
        for tree, copies in forest.trees:
            lines.append(f'  {copies} x tree to D{tree.divisor + 1}, class {tree.cls}')
            lines += [f'    {stratum_text(e.wall)} x{e.multiplicity}  {e.cls}' for e in tree.edges]
        return _ok(forest.to_dict(fan), '\n'.join(lines))

    if args.cone is None or args.divisor is None:
        raise QtoricError('tree needs --beta, or --cone and --divisor.')
    tree = min_tree(fan, zero_based(args.cone), args.divisor - 1)
    lines = [f'tree from {stratum_text(fan.max_cones[tree.root])} to D{tree.divisor + 1}, '
             f'class {tree.cls}, degree {tree.degree}']
    lines += [f'  {stratum_text(e.wall)} x{e.multiplicity}  {e.cls}' for e in tree.edges]
    return _ok(tree.to_dict(fan), '\n'.join(lines))


def cmd_census(args) -> Result:
    entries = census(args.dim, args.max_rays, args.jobs)
    lines = [f'{len(entries)} classes']
    for e in entries:
        lines.append(f'  {e.fan.m} rays: ' + ' '.join(str(list(r)) for r in e.fan.rays))
    return _ok({'count': len(entries), 'classes': [e.to_dict() for e in entries]}, '\n'.join(lines))


def cmd_exceptional(args) -> Result:
    fan = _fan(args)
    if args.cone is not None:
        sigma = require_cone(fan, zero_based(args.cone))
        sets = special_exceptional_sets(fan, sigma)
    else:
        sets = list(exceptional_sets(fan))
    lines = [f'{format_index_set(e.set)} -> D{e.exc_divisor + 1}  {e.cls}' for e in sets]
    return _ok({'exceptional': [e.to_dict() for e in sets]}, '\n'.join(lines))


def cmd_shelling(args) -> Result:
    fan = _fan(args)
    ring = cohomology_ring(fan)
    betti = betti_numbers(fan)
    data = {**ring.shelling.to_dict(), 'basis': basis_table(ring), 'betti': betti,
            'point': class_to_dict(ring.point())}
    return _ok(data, basis_text(ring) + '\nbetti: ' + ' '.join(str(b) for b in betti))


# --- Entry point ---

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='qtoric', description='Quantum cohomology of toric Fano varieties.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--json', action='store_true', help='print JSON instead of text')
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging on stderr')
    commands = parser.add_subparsers(dest='command', required=True)

    def command(name: str, handler: Callable, help_text: str, fan: bool = True) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        if fan:
            sub.add_argument('--fan', required=True, help='fan file (JSON), - for standard input')
        sub.set_defaults(handler=handler)
        return sub

    command('validate', cmd_validate, 'check the fan invariants')
    command('classify', cmd_classify, 'Fano tier of the fan')
    command('primitive', cmd_primitive, 'primitive sets, relations and classes')
    command('present', cmd_present, 'presentation of the quantum cohomology ring')

    sub = command('giambelli', cmd_giambelli, 'quantum Giambelli formula of a stratum')
    sub.add_argument('cone', type=_int_list, help='cone as a comma separated list of rays, e.g. 1,2')

    sub = command('multiply', cmd_multiply, 'quantum product of two class expressions')
    sub.add_argument('a')
    sub.add_argument('b')

    sub = command('gw', cmd_gw, 'three-point Gromov-Witten invariant')
    sub.add_argument('a')
    sub.add_argument('b')
    sub.add_argument('c')
    sub.add_argument('--beta', type=_int_list, required=True, help='curve class pairings, e.g. --beta=1,1,0,-1')

    sub = command('tower', cmd_tower, 'blow down exceptional divisors')
    sub.add_argument('--order', type=_int_list, help='rays to contract first, e.g. 4,5')

    sub = command('tree', cmd_tree, 'trees of toric curves')
    sub.add_argument('--beta', type=_int_list, help='curve class pairings, e.g. --beta=1,1,1')
    sub.add_argument('--cone', type=_int_list, help='maximal cone of a minimal tree')
    sub.add_argument('--divisor', type=int, help='target divisor of a minimal tree')

    sub = command('census', cmd_census, 'isomorphism classes of the full class', fan=False)
    sub.add_argument('--dim', type=int, default=CENSUS_DIM)
    sub.add_argument('--max-rays', type=int, default=CENSUS_DEFAULT_MAX_RAYS)
    sub.add_argument('--jobs', type=int, default=1)

    sub = command('exceptional', cmd_exceptional, 'exceptional sets, or the special ones for a cone')
    sub.add_argument('--cone', type=_int_list)

    command('shelling', cmd_shelling, 'shelling basis of the cohomology')
    return parser


def exit_code(error: QtoricError) -> ExitCode:
    if isinstance(error, (FanFormatError, ExpressionError, InvalidCurveClass)):
        return ExitCode.PARSE_ERROR
    if isinstance(error, ValidationFailed):
        return ExitCode.VALIDATION_FAILED
    if isinstance(error, NotInTier):
        return ExitCode.NOT_IN_CLASS
    if isinstance(error, NotEffective):
        return ExitCode.NOT_EFFECTIVE
    return ExitCode.FAILURE


def _print(data: dict, text: str, as_json: bool):
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(format='%(name)s:%(levelname)s:%(message)s',
                        level=logging.DEBUG if args.verbose else logging.WARNING)

    try:
        data, text, code = args.handler(args)
    except QtoricError as e:
        code = exit_code(e)
        logger.debug('%s exits with %d', type(e).__name__, code)
        error: Dict = {'error': type(e).__name__, 'message': e.message, 'details': e.details}
        if args.json:
            print(json.dumps(error, indent=2, default=str))
        else:
            print(f'error: {e.message}', file=sys.stderr)
        return int(code)

    _print(data, text, args.json)
    return int(code)
