"""
Result envelopes and number formatting for the command line.

Reals are written as strings with 17 significant digits, complex numbers as
``{"re": ..., "im": ...}``. Everything in an envelope except ``timing`` is a
function of the inputs, the parameters and the seed.
"""
import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from tccmap import settings
from tccmap.exceptions import InvalidParameter, JSONError
from tccmap.typing import CSVRows, JSONDict
from tccmap.utils import format_real, keccak256


def encode_value(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_real(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {'re': format_real(value.real), 'im': format_real(value.imag)}
    if isinstance(value, np.ndarray):
        return [encode_value(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    return value


def parse_real(value: Any) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise JSONError(f"Expected a real number, got {value!r}")


def parse_complex(value: Any) -> complex:
    """Number, numeric string or ``{"re": .., "im": ..}``."""
    if isinstance(value, dict):
        return complex(parse_real(value.get('re', 0)), parse_real(value.get('im', 0)))
    if isinstance(value, str):
        try:
            return complex(value.replace(' ', ''))
        except ValueError:
            raise JSONError(f"Expected a complex number, got {value!r}")
    return complex(parse_real(value))


def parse_list(text: str, kind=float) -> List:
    try:
        return [kind(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise InvalidParameter(f"Cannot parse '{text}' as a comma separated list")


def file_digest(path: Union[str, Path]) -> str:
    with Path(path).open('rb') as fh:
        return keccak256(fh.read()).hex()


def current_caps() -> Dict[str, int]:
    return {
        'dense_qubits': settings.TCCMAP_DENSE_QUBIT_CAP,
        'site_enumeration': settings.TCCMAP_SITE_ENUMERATION_CAP,
        'span_rank': settings.TCCMAP_SPAN_RANK_CAP,
        'transfer_width': settings.TCCMAP_TRANSFER_WIDTH_CAP,
        'chunk_bits': settings.TCCMAP_CHUNK_BITS,
    }


@dataclass
class RunConfig:
    command: str
    params: Dict[str, Any]
    threads: int
    inputs: Dict[str, str] = field(default_factory=dict)
    output: Optional[str] = None
    output_format: str = 'json'
    seed: Optional[int] = None
    caps: Dict[str, int] = field(default_factory=current_caps)

    def add_input(self, path: Union[str, Path]) -> None:
        """Record an input file with the keccak-256 digest of its bytes."""
        self.inputs[Path(path).as_posix()] = file_digest(path)

    def as_dict(self) -> JSONDict:
        return {
            'command': self.command,
            'params': encode_value(self.params),
            'threads': self.threads,
            'inputs': dict(self.inputs),
            'output': self.output,
            'format': self.output_format,
            'seed': self.seed,
            'caps': dict(self.caps),
        }


@dataclass
class ResultEnvelope:
    version: str
    config: JSONDict
    payload: JSONDict = field(default_factory=dict)
    errors: List[JSONDict] = field(default_factory=list)
    timing: JSONDict = field(default_factory=dict)

    def as_dict(self) -> JSONDict:
        return {
            'version': self.version,
            'config': self.config,
            'payload': encode_value(self.payload),
            'errors': self.errors,
            'timing': self.timing,
        }

    def comparable(self) -> JSONDict:
        body = self.as_dict()
        del body['timing']
        return body

    def to_json(self, pretty: bool = False) -> str:
        return json.dumps(
            self.as_dict(), indent=2 if pretty else None, sort_keys=True, default=str
        )

    @classmethod
    def from_dict(cls, data: Dict) -> 'ResultEnvelope':
        try:
            return cls(
                data['version'], data['config'], data['payload'], data['errors'], data['timing']
            )
        except (KeyError, TypeError) as exc:
            raise JSONError(f"Malformed result envelope: {exc}")

    @classmethod
    def from_json(cls, text: str) -> 'ResultEnvelope':
        try:
            return cls.from_dict(json.loads(text))
        except json.decoder.JSONDecodeError as exc:
            raise JSONError(str(exc))


def write_csv(path: Union[str, Path], header: Sequence[str], rows: CSVRows) -> Path:
    path = Path(path)
    with path.open('w', newline='') as fh:
        writer = csv.writer(fh, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([
                format_real(v) if isinstance(v, (float, np.floating)) else v for v in row
            ])
    return path
