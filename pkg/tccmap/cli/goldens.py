#!/usr/bin/env python3
import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Union

import tccmap
from tccmap.colex import serialize
from tccmap.colex.builders import (
    build_48_torus,
    build_hex_torus,
    hexagon_patch,
    single_triangle_patch,
    triangular_patch,
    union_jack_patch,
)
from tccmap.colex.dual import build_bordered
from tccmap.colex.types import Colex2

GOLDENS: Dict[str, Callable[[], Colex2]] = {
    'hexagon_patch': lambda: build_bordered(hexagon_patch()),
    'single_triangle': lambda: build_bordered(single_triangle_patch()),
    'triangular_patch_2x2': lambda: build_bordered(triangular_patch(2, 2)),
    'union_jack_patch_1x1': lambda: build_bordered(union_jack_patch(1, 1)),
    'union_jack_patch_2x2': lambda: build_bordered(union_jack_patch(2, 2)),
    'hex_torus_minimal': lambda: build_hex_torus(1, 3),
    'hex_torus_9': lambda: build_hex_torus(3, 3),
    'four8_torus_2x2': lambda: build_48_torus(2, 2),
}


def emit_goldens(out_dir: Union[str, Path]) -> List[Path]:
    """
    Write every golden lattice as ``<name>.json`` with a keccak-256 digest.
    The files are byte-identical across runs.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        serialize.dump(build(), out_dir / f"{name}.json", with_digest=True)
        for name, build in GOLDENS.items()
    ]


def _parse_cli_args():
    return _parse_args(sys.argv[1:])


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        description='Write the canonical tccmap test lattices as JSON',
        formatter_class=argparse.RawTextHelpFormatter
    )
    parser.add_argument(
        '--version',
        action='version',
        version=f'{tccmap.__version__}+commit.{tccmap.__commit__}',
    )
    parser.add_argument(
        '--out',
        help='Directory to write the golden files to',
        default='goldens', dest='out_dir',
    )
    args = parser.parse_args(argv)
    for path in emit_goldens(args.out_dir):
        print(path.as_posix())
