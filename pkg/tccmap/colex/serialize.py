"""
JSON lattice files.

Colex files: ``{"kind": "colex2"|"bordered", "vertices": N,
"edges": [[a, b, "r"], ...], "faces": [{"verts": [...], "color": "g",
"partial": false}, ...]}``. Dual files: ``{"kind": "dual", "sites": ["r", ...],
"triangles": [[i, j, k], ...], "border": true}``. Either may carry a
``"keccak256"`` hex digest of the canonical body, verified on load.
"""
import json
from pathlib import Path
from typing import Dict, Union

from tccmap.colex.types import BorderedColex, Color, Colex2, DualTriangulation, Edge, Face
from tccmap.exceptions import InvalidParameter, JSONError
from tccmap.utils import keccak256

Lattice = Union[Colex2, DualTriangulation]


def canonical_json(body: Dict) -> str:
    return json.dumps(body, sort_keys=True, separators=(',', ':'))


def lattice_digest(body: Dict) -> str:
    body = {k: v for k, v in body.items() if k != 'keccak256'}
    return keccak256(canonical_json(body).encode('utf-8')).hex()


def to_dict(lattice: Lattice, with_digest: bool = False) -> Dict:
    if isinstance(lattice, DualTriangulation):
        body: Dict = {
            'kind': 'dual',
            'sites': [c.letter for c in lattice.colors],
            'triangles': [list(t) for t in lattice.triangles],
            'border': lattice.border,
        }
    else:
        body = {
            'kind': 'colex2' if lattice.closed else 'bordered',
            'vertices': lattice.n_vertices,
            'edges': [[e.a, e.b, e.color.letter] for e in lattice.edges],
            'faces': [
                {'verts': list(f.verts), 'color': f.color.letter, 'partial': f.partial}
                for f in lattice.faces
            ],
        }
    if with_digest:
        body['keccak256'] = lattice_digest(body)
    return body


def from_dict(body: Dict, path=None) -> Lattice:
    if not isinstance(body, dict) or 'kind' not in body:
        raise JSONError("Lattice JSON must be an object with a 'kind' field", path)
    if 'keccak256' in body:
        hash_ = str(body['keccak256']).lower()
        if hash_.startswith('0x'):
            hash_ = hash_[2:]
        if hash_ != lattice_digest(body):
            raise JSONError(
                "Calculated keccak of lattice does not match keccak given in JSON", path
            )

    kind = body['kind']
    try:
        if kind == 'dual':
            colors = tuple(Color.from_letter(c) for c in body['sites'])
            triangles = tuple(tuple(int(s) for s in t) for t in body['triangles'])
            if any(len(t) != 3 for t in triangles):
                raise JSONError("Every triangle needs exactly three sites", path)
            border = bool(body.get('border', True))
            return DualTriangulation(colors, triangles, border=border)  # type: ignore
        if kind in ('colex2', 'bordered'):
            edges = tuple(Edge(int(a), int(b), Color.from_letter(c)) for a, b, c in body['edges'])
            faces = tuple(
                Face(
                    tuple(int(v) for v in f['verts']),
                    Color.from_letter(f['color']),
                    bool(f.get('partial', False)),
                )
                for f in body['faces']
            )
            n = int(body['vertices'])
            if kind == 'colex2':
                if any(f.partial for f in faces):
                    raise JSONError("Closed colex files cannot contain partial faces", path)
                return Colex2(n, edges, faces, closed=True)
            return BorderedColex(n, edges, faces, closed=False)
    except (KeyError, TypeError, ValueError, InvalidParameter) as exc:
        raise JSONError(f"Malformed {kind} lattice: {exc}", path)
    raise JSONError(f"Unknown lattice kind '{kind}'", path)


def dumps(lattice: Lattice, with_digest: bool = False) -> str:
    return json.dumps(to_dict(lattice, with_digest), sort_keys=True, indent=1) + "\n"


def loads(text: str, path=None) -> Lattice:
    try:
        body = json.loads(text)
    except json.decoder.JSONDecodeError as exc:
        raise JSONError(str(exc), path)
    return from_dict(body, path)


def dump(lattice: Lattice, path: Union[str, Path], with_digest: bool = False) -> Path:
    path = Path(path)
    with path.open('w') as fh:
        fh.write(dumps(lattice, with_digest))
    return path


def load(path: Union[str, Path]) -> Lattice:
    path = Path(path)
    with path.open() as fh:
        return loads(fh.read(), path.as_posix())
