#!/usr/bin/env python3
import argparse
import datetime
import json
import logging
import sys
import time
import warnings
from pathlib import Path
from types import MappingProxyType
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np

import tccmap
from tccmap import parallel
from tccmap.cli.goldens import emit_goldens
from tccmap.cli.output import (
    ResultEnvelope,
    RunConfig,
    parse_complex,
    parse_list,
    parse_real,
    write_csv,
)
from tccmap.cluster import (
    FieldSpec,
    build_cluster_graph,
    closed_form_cluster_state,
    cluster_state,
    project_faces,
    verify_field_identity,
)
from tccmap.codestate.overlap import overlap, string_net_overlap
from tccmap.codestate.vectors import ProductState, code_state
from tccmap.colex import serialize
from tccmap.colex.builders import (
    build_48_torus,
    build_hex_torus,
    hexagon_patch,
    single_triangle_patch,
    triangular_patch,
    union_jack_patch,
)
from tccmap.colex.dual import build_bordered, build_dual
from tccmap.colex.types import Colex2, DualTriangulation
from tccmap.colex.validation import validate
from tccmap.correspondence.identity import verify_overlap_identity
from tccmap.correspondence.mqc import (
    MeasurementBasis,
    mqc_joint,
    mqc_sample,
    partial_measurement_partition,
)
from tccmap.exceptions import (
    HomologyObstruction,
    JSONError,
    MappingDomainException,
    TccException,
    TccInternalException,
    UsageError,
)
from tccmap.pauli.stabilizers import encoded_qubits, stabilizer_set
from tccmap.pauli.stringnets import FaceChain
from tccmap.settings import TCCMAP_THREADS, TCCMAP_TRACEBACK_LIMIT
from tccmap.spinmodel.couplings import CouplingSet
from tccmap.spinmodel.criticality import (
    DEFAULT_GRID,
    REFERENCE_CONSTANTS,
    critical_coupling,
    criticality_scan,
)
from tccmap.spinmodel.expansion import partition_high_t
from tccmap.spinmodel.partition import partition_exact
from tccmap.spinmodel.symmetry import ground_states
from tccmap.typing import JSONDict
from tccmap.utils import relative_error

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2

DEFAULT_BETA_J = '-2,-1,-0.5,0,0.5,1,2'

Handler = Callable[[argparse.Namespace, RunConfig], Tuple[JSONDict, int]]

logger = logging.getLogger('tccmap')


class _ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        raise UsageError(message)


def _parse_cli_args():
    sys.exit(run(sys.argv[1:]))


def exc_handler_to_dict(exception: Exception, component: str) -> Dict:
    err_dict: Dict = {
        "type": type(exception).__name__,
        "component": component,
        "severity": "error",
        "message": str(exception).strip('"'),
    }
    if hasattr(exception, 'message'):
        err_dict.update({
            'message': exception.message,  # type: ignore
            'formattedMessage': str(exception)
        })
    location = getattr(exception, 'location', None)
    if location is not None:
        err_dict['location'] = {'kind': location[0], 'index': location[1]}
    path = getattr(exception, 'path', None)
    if path is not None:
        err_dict['location'] = {'file': path}
    return err_dict


# Input files

def _load_lattice(path: str, config: RunConfig) -> Union[Colex2, DualTriangulation]:
    if not Path(path).is_file():
        raise UsageError(f"No such lattice file: {path}")
    config.add_input(path)
    return serialize.load(path)


def _load_colex(path: str, config: RunConfig) -> Colex2:
    lattice = _load_lattice(path, config)
    if isinstance(lattice, DualTriangulation):
        if not lattice.border:
            raise UsageError(f"{path} holds a closed triangulation, pass its colex instead")
        return build_bordered(lattice)
    return lattice


def _load_dual(path: str, config: RunConfig) -> DualTriangulation:
    lattice = _load_lattice(path, config)
    if isinstance(lattice, DualTriangulation):
        return lattice
    return build_dual(lattice)


def _load_json(path: str, config: RunConfig):
    if not Path(path).is_file():
        raise UsageError(f"No such file: {path}")
    config.add_input(path)
    with Path(path).open() as fh:
        try:
            return json.load(fh)
        except json.decoder.JSONDecodeError as exc:
            raise JSONError(str(exc), path)


def _entries(spec, size: int, key: str, path: Optional[str]) -> np.ndarray:
    """Uniform value, positional list, or list of indexed ``{"re", "im"}`` entries."""
    values = np.zeros(size, dtype=np.complex128)
    if isinstance(spec, dict) and 'uniform' in spec:
        values[:] = parse_complex(spec['uniform'])
        return values
    if not isinstance(spec, list):
        raise JSONError(f"'{key}' must be a list or {{\"uniform\": value}}", path)
    for i, entry in enumerate(spec):
        index = int(entry[key]) if isinstance(entry, dict) and key in entry else i
        if not 0 <= index < size:
            raise JSONError(f"Index {index} out of range for {size} entries", path)
        values[index] = parse_complex(entry)
    return values


def parse_couplings(data, dual: DualTriangulation, path: Optional[str] = None) -> CouplingSet:
    if not isinstance(data, dict) or 'J' not in data:
        raise JSONError("Couplings JSON must be an object with a 'J' field", path)
    J = _entries(data['J'], dual.n_triangles, 'tri', path)
    h = _entries(data.get('h', []), dual.n_sites, 'site', path)
    return CouplingSet(parse_real(data.get('beta', 1.0)), J, h)


def parse_coefficients(data, n: int, path: Optional[str] = None) -> ProductState:
    if isinstance(data, dict) and 'betaJ' in data:
        return ProductState.thermal(n, parse_complex(data['betaJ']))
    if isinstance(data, dict) and 'pairs' in data:
        rows = [[complex(a, b), complex(c, d)] for a, b, c, d in data['pairs']]
        return ProductState.from_pairs(rows)
    raise JSONError("Coefficients JSON needs 'betaJ' or 'pairs'", path)


def _vector(values, path: Optional[str] = None) -> np.ndarray:
    if len(values) != 4:
        raise JSONError("Basis vectors are written [re, im, re, im]", path)
    return np.array([complex(values[0], values[1]), complex(values[2], values[3])])


def parse_bases(spec, config: RunConfig):
    named = {'z': MeasurementBasis.z, 'x': MeasurementBasis.x}
    if spec in named:
        return named[spec]()
    data = _load_json(spec, config)
    if isinstance(data, dict):
        data = data.get('bases')
    if isinstance(data, str) and data in named:
        return named[data]()
    if not isinstance(data, list):
        raise JSONError("Basis JSON needs 'bases': \"z\", \"x\" or a list", spec)
    return [MeasurementBasis(_vector(b['b0'], spec), _vector(b['b1'], spec)) for b in data]


# Handlers

def _build_family(args) -> Union[Colex2, DualTriangulation]:
    family = args.family
    if family == 'hex':
        return build_hex_torus(args.rows, args.cols)
    if family == 'four8':
        return build_48_torus(args.rows, args.cols)
    patches = {
        'hexagon': hexagon_patch,
        'triangle': single_triangle_patch,
        'triangular': lambda: triangular_patch(args.rows, args.cols),
        'unionjack': lambda: union_jack_patch(args.rows, args.cols),
    }
    return patches[family]()


def _emit_lattice(lattice, args) -> JSONDict:
    if args.out:
        serialize.dump(lattice, args.out, with_digest=True)
        return {'written': args.out, 'keccak256': serialize.to_dict(lattice, True)['keccak256']}
    return {'lattice': serialize.to_dict(lattice, with_digest=True)}


def colex_gen(args, config):
    lattice = _build_family(args)
    if args.dual and isinstance(lattice, Colex2):
        lattice = build_dual(lattice)
    elif not args.dual and isinstance(lattice, DualTriangulation):
        lattice = build_bordered(lattice)
    return _emit_lattice(lattice, args), EXIT_OK


def colex_dual(args, config):
    lattice = _load_lattice(args.input, config)
    if isinstance(lattice, DualTriangulation):
        raise UsageError(f"{args.input} already holds a triangulation")
    return _emit_lattice(build_dual(lattice), args), EXIT_OK


def colex_border(args, config):
    lattice = _load_lattice(args.input, config)
    if not isinstance(lattice, DualTriangulation):
        raise UsageError(f"{args.input} holds a colex, expected a triangulation")
    return _emit_lattice(build_bordered(lattice), args), EXIT_OK


def colex_validate(args, config):
    report = validate(_load_colex(args.input, config))
    return report.as_dict(), EXIT_OK if report.passed else EXIT_FAILED


def code_info(args, config):
    lattice = _load_colex(args.input, config)
    report = validate(lattice)
    stabilizers = stabilizer_set(lattice)
    return {
        'n': lattice.n_vertices,
        'generators': len(stabilizers.generators),
        'rank': stabilizers.rank,
        'k': encoded_qubits(lattice),
        'chi': lattice.euler_characteristic,
        'h1': report.betti_1,
        'closed': lattice.closed,
    }, EXIT_OK


def _write_state(state, out: Optional[str]) -> JSONDict:
    if not out:
        return {}
    with Path(out).open('wb') as fh:
        fh.write(state.to_bytes())
    return {'written': out}


def code_state_cmd(args, config):
    state = code_state(_load_colex(args.input, config))
    payload = {
        'n_qubits': state.n_qubits,
        'support': int(state.support().shape[0]),
        'norm2': state.norm2(),
    }
    payload.update(_write_state(state, args.out))
    return payload, EXIT_OK


def code_overlap(args, config):
    lattice = _load_colex(args.input, config)
    phi = parse_coefficients(_load_json(args.coeffs, config), lattice.n_vertices, args.coeffs)
    payload: JSONDict = {'overlap': overlap(code_state(lattice), phi)}
    try:
        payload['string_net_overlap'] = string_net_overlap(lattice, phi)
    except MappingDomainException as exc:
        payload['string_net_overlap'] = None
        payload['string_net_reason'] = str(exc)
    return payload, EXIT_OK


def spin_z(args, config):
    dual = _load_dual(args.lattice, config)
    couplings = parse_couplings(_load_json(args.couplings, config), dual, args.couplings)
    payload: JSONDict = {'n_sites': dual.n_sites, 'n_triangles': dual.n_triangles}
    if args.method in ('exact', 'both'):
        payload['exact'] = partition_exact(dual, couplings)
    if args.method in ('hight', 'both'):
        payload['high_temperature'] = partition_high_t(dual, couplings)
    if args.method == 'both':
        payload['relative_error'] = relative_error(
            payload['exact'], payload['high_temperature']  # type: ignore
        )
    return payload, EXIT_OK


def spin_ground(args, config):
    dual = _load_dual(args.lattice, config)
    states = ground_states(dual, args.sign)
    return {
        'count': len(states),
        'states': [''.join('+' if s > 0 else '-' for s in c.spins()) for c in states],
    }, EXIT_OK


def _plain(mapping):
    if isinstance(mapping, MappingProxyType):
        return {k: _plain(v) for k, v in mapping.items()}
    return mapping


def spin_critical(args, config):
    widths = parse_list(args.widths, int)
    grid = DEFAULT_GRID
    if args.grid:
        lo, hi, n = parse_list(args.grid)
        grid = (lo, hi, int(n))
    report = criticality_scan(widths, grid)
    if args.out:
        config.output_format = 'csv'
        write_csv(args.out, ('width', 'betaJ', 'free_energy', 'specific_heat'), list(report.rows))
    return {
        'widths': list(report.widths),
        'peaks': list(report.peaks),
        'extrapolated_kc': report.extrapolated_kc,
        'self_dual_coupling': critical_coupling(),
        'reference': _plain(REFERENCE_CONSTANTS),
    }, EXIT_OK


def verify_overlap(args, config):
    colex = _load_colex(args.lattice, config)
    dual = build_dual(colex)
    results = []
    failed = False
    for beta_j in parse_list(args.beta_j):
        result = verify_overlap_identity(colex, beta_j, dual)
        failed = failed or not result.passed(args.tolerance)
        results.append({
            'betaJ': beta_j,
            'partition': result.partition,
            'scaled_overlap': result.scaled_overlap,
            'relative_error': result.relative_error,
            'passed': result.passed(args.tolerance),
        })
    return {'n_sites': dual.n_sites, 'results': results}, EXIT_FAILED if failed else EXIT_OK


def verify_field(args, config):
    colex = _load_colex(args.lattice, config)
    fields = FieldSpec.from_dict(_load_json(args.fields, config))
    result = verify_field_identity(colex, fields)
    return {
        'n_sites': result.n_sites,
        'partition': result.partition,
        'scaled_overlap': result.scaled_overlap,
        'relative_error': result.relative_error,
        'passed': result.passed(args.tolerance),
    }, EXIT_OK if result.passed(args.tolerance) else EXIT_FAILED


def _bits(index: int, n: int) -> str:
    return ''.join(str((index >> v) & 1) for v in range(n))


def mqc_sample_cmd(args, config):
    lattice = _load_colex(args.lattice, config)
    config.seed = args.seed
    order = parse_list(args.order, int) if args.order else None
    samples = mqc_sample(
        lattice, parse_bases(args.basis, config), order, seed=args.seed, n_samples=args.n_samples
    )
    n = lattice.n_vertices
    rows = [(i, s.outcome_bits(n), s.probability) for i, s in enumerate(samples)]
    payload: JSONDict = {'n_samples': len(samples), 'seed': args.seed}
    if args.out:
        config.output_format = 'csv'
        write_csv(args.out, ('sample_index', 'outcome_bits', 'probability'), rows)
        payload['written'] = args.out
    else:
        payload['samples'] = [
            {'outcome_bits': bits, 'probability': p} for _, bits, p in rows
        ]
    return payload, EXIT_OK


def mqc_joint_cmd(args, config):
    lattice = _load_colex(args.lattice, config)
    dist = mqc_joint(lattice, parse_bases(args.basis, config))
    n = lattice.n_vertices
    return {
        'n': n,
        'total': dist.total,
        'probabilities': {
            _bits(int(i), n): dist.probabilities[i] for i in np.flatnonzero(dist.probabilities)
        },
    }, EXIT_OK


def mqc_partial_cmd(args, config):
    lattice = _load_colex(args.lattice, config)
    measured = parse_list(args.measured, int)
    outcomes = parse_list(args.outcomes, int)
    with warnings.catch_warnings():
        warnings.simplefilter('ignore')
        result = partial_measurement_partition(
            lattice, measured, outcomes, parse_bases(args.basis, config)
        )
    return {
        'dense': result.dense,
        'dictionary': result.dictionary,
        'relative_error': result.relative_error,
        'fallback': result.fallback,
        'reason': result.reason,
    }, EXIT_OK


def cluster_state_cmd(args, config):
    graph = build_cluster_graph(_load_colex(args.lattice, config))
    state = cluster_state(graph)
    payload = {
        'n1': graph.n1,
        'n2': graph.n2,
        'edges': len(graph.edges),
        'support': int(state.support().shape[0]),
        'matches_closed_form': state.equals(closed_form_cluster_state(graph)),
    }
    payload.update(_write_state(state, args.out))
    return payload, EXIT_OK


def cluster_project_cmd(args, config):
    lattice = _load_colex(args.lattice, config)
    graph = build_cluster_graph(lattice)
    x = FaceChain.from_bitstring(args.x)
    projected = project_faces(graph, cluster_state(graph), x)
    payload: JSONDict = {
        'x': x.bitstring(),
        'support': int(projected.support().shape[0]),
        'norm2': projected.norm2(),
    }
    if x.x == 0:
        payload['equals_code_state'] = projected.equals(code_state(lattice))
    payload.update(_write_state(projected, args.out))
    return payload, EXIT_OK


def goldens_cmd(args, config):
    return {'written': [p.as_posix() for p in emit_goldens(args.out)]}, EXIT_OK


# Parser

def _add(subparsers, name: str, handler: Handler, help: str) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help)
    parser.set_defaults(handler=handler)
    return parser


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog='tccmap',
        description='Topological color codes and 3-body Ising partition functions',
        formatter_class=argparse.RawTextHelpFormatter
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'{tccmap.__version__}+commit.{tccmap.__commit__}',
    )
    parser.add_argument(
        '--threads',
        help=f'Worker threads for enumerations (default {TCCMAP_THREADS})',
        type=int, default=TCCMAP_THREADS,
    )
    parser.add_argument('--verbose', help='Log progress to stderr', action='store_true')
    parser.add_argument(
        '--traceback',
        help='Show python traceback on error instead of returning JSON',
        action='store_true'
    )
    parser.add_argument(
        '--traceback-limit',
        help='Set the traceback limit for error messages',
        type=int,
    )
    parser.add_argument('--pretty-json', help='Output JSON in pretty format.', action='store_true')
    parser.add_argument(
        '-o',
        help="Filename to save the JSON envelope to. If the file exists it will be overwritten.",
        default=None, dest="output_file"
    )
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    colex = commands.add_parser('colex', help='Build, dualize and validate lattices')
    actions = colex.add_subparsers(dest='action', metavar='action')
    actions.required = True
    p = _add(actions, 'gen', colex_gen, 'Generate a lattice')
    p.add_argument(
        '--family', required=True,
        choices=('hex', 'four8', 'hexagon', 'triangle', 'triangular', 'unionjack'),
    )
    p.add_argument('--rows', type=int, default=1)
    p.add_argument('--cols', type=int, default=3)
    p.add_argument('--dual', help='Write the dual triangulation', action='store_true')
    p.add_argument('--out')
    p = _add(actions, 'dual', colex_dual, 'Dual triangulation of a colex')
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--out')
    p = _add(actions, 'border', colex_border, 'Bordered colex of a triangulated patch')
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--out')
    p = _add(actions, 'validate', colex_validate, 'Check the colex invariants')
    p.add_argument('--in', dest='input', required=True)

    code = commands.add_parser('code', help='Stabilizers and code states')
    actions = code.add_subparsers(dest='action', metavar='action')
    actions.required = True
    p = _add(actions, 'info', code_info, 'Qubits, stabilizer rank and encoded qubits')
    p.add_argument('--in', dest='input', required=True)
    p = _add(actions, 'state', code_state_cmd, 'Dense code state')
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--out', help='Little-endian complex128 amplitudes')
    p = _add(actions, 'overlap', code_overlap, 'Overlap with a product state')
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--coeffs', required=True)

    spin = commands.add_parser('spin', help='3-body Ising model')
    actions = spin.add_subparsers(dest='action', metavar='action')
    actions.required = True
    p = _add(actions, 'z', spin_z, 'Partition function')
    p.add_argument('--lattice', required=True)
    p.add_argument('--couplings', required=True)
    p.add_argument('--method', choices=('exact', 'hight', 'both'), default='exact')
    p = _add(actions, 'ground', spin_ground, 'Ground states')
    p.add_argument('--lattice', required=True)
    p.add_argument('--sign', choices=('+', '-'), default='+')
    p = _add(actions, 'critical', spin_critical, 'Transfer matrix specific heat peaks')
    p.add_argument('--family', choices=('tri',), default='tri')
    p.add_argument('--widths', default='3,6,9')
    p.add_argument('--grid', help='lo,hi,points')
    p.add_argument('--out', help='CSV of width,betaJ,free_energy,specific_heat')

    verify = commands.add_parser('verify', help='Overlap identities')
    actions = verify.add_subparsers(dest='action', metavar='action')
    actions.required = True
    p = _add(actions, 'overlap', verify_overlap, 'Z(beta J) = 2^N <Psi_c|Phi>')
    p.add_argument('--lattice', required=True)
    p.add_argument('--betaJ', dest='beta_j', default=DEFAULT_BETA_J)
    p.add_argument('--tolerance', type=float, default=1e-10)
    p = _add(actions, 'field', verify_field, 'Z(beta, J, h) = 2^N O(beta, J, h)')
    p.add_argument('--lattice', required=True)
    p.add_argument('--fields', required=True)
    p.add_argument('--tolerance', type=float, default=1e-10)

    mqc = commands.add_parser('mqc', help='Measurements on code states')
    actions = mqc.add_subparsers(dest='action', metavar='action')
    actions.required = True
    p = _add(actions, 'sample', mqc_sample_cmd, 'Sequential measurement runs')
    p.add_argument('--lattice', required=True)
    p.add_argument('--basis', default='z', help='z, x or a basis JSON file')
    p.add_argument('--n-samples', dest='n_samples', type=int, default=1)
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--order', help='Comma separated qubit order')
    p.add_argument('--out', help='CSV of sample_index,outcome_bits,probability')
    p = _add(actions, 'joint', mqc_joint_cmd, 'Joint outcome distribution')
    p.add_argument('--lattice', required=True)
    p.add_argument('--basis', default='z')
    p = _add(actions, 'partial', mqc_partial_cmd, 'Partial measurement partition function')
    p.add_argument('--lattice', required=True)
    p.add_argument('--measured', required=True)
    p.add_argument('--outcomes', required=True)
    p.add_argument('--basis', default='x')

    cluster = commands.add_parser('cluster', help='Cluster state preparation')
    actions = cluster.add_subparsers(dest='action', metavar='action')
    actions.required = True
    p = _add(actions, 'state', cluster_state_cmd, 'Dense cluster state')
    p.add_argument('--lattice', required=True)
    p.add_argument('--out')
    p = _add(actions, 'project', cluster_project_cmd, 'Project the face qubits')
    p.add_argument('--lattice', required=True)
    p.add_argument('--x', required=True, help='Face outcomes, one character per face')
    p.add_argument('--out')

    p = _add(commands, 'goldens', goldens_cmd, 'Write the golden lattices')
    p.add_argument('--out', default='goldens')
    return parser


def _command_name(args) -> str:
    return ' '.join(n for n in (args.command, getattr(args, 'action', None)) if n)


def _configure_logging(verbose: bool) -> None:
    if not verbose:
        return
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter('%(name)s %(levelname)s: %(message)s'))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)


def run(argv) -> int:
    """
    Run one subcommand and print its result envelope.

    Returns 0 on success, 1 on usage and input errors and 2 when a
    computation completes but a check fails.
    """
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tccmap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.traceback_limit is not None:
        sys.tracebacklimit = args.traceback_limit
    elif TCCMAP_TRACEBACK_LIMIT is not None:
        sys.tracebacklimit = TCCMAP_TRACEBACK_LIMIT
    _configure_logging(args.verbose)

    params = {
        k: v for k, v in vars(args).items()
        if k not in ('handler', 'verbose', 'traceback', 'traceback_limit', 'pretty_json')
    }
    config = RunConfig(_command_name(args), params, args.threads, output=args.output_file)
    envelope = ResultEnvelope(f'{tccmap.__version__}+commit.{tccmap.__commit__}', {})

    started = datetime.datetime.now(datetime.timezone.utc).isoformat()
    clock = time.perf_counter()
    code = EXIT_OK
    try:
        if args.threads < 1:
            raise UsageError(f"--threads must be positive, got {args.threads}")
        with parallel.thread_count(args.threads):
            envelope.payload, code = args.handler(args, config)
    except (TccException, JSONError, TccInternalException, OSError) as exc:
        if args.traceback:
            raise
        code = EXIT_FAILED if isinstance(exc, HomologyObstruction) else EXIT_USAGE
        envelope.errors.append(exc_handler_to_dict(exc, config.command))

    envelope.config = config.as_dict()
    envelope.timing = {'started': started, 'seconds': time.perf_counter() - clock}
    output_json = envelope.to_json(args.pretty_json)

    if args.output_file is not None:
        output_path = Path(args.output_file).resolve()
        with output_path.open('w') as fh:
            fh.write(output_json)
        print(f"Results saved to {output_path}")
    else:
        print(output_json)
    return code
