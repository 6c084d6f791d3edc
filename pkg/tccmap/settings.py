import os
from typing import Optional


def _int_setting(name: str, default: int, maximum: int) -> int:
    value = int(os.environ.get(name, str(default)))
    return max(1, min(value, maximum))


DENSE_QUBIT_CAP_MAX = 26
SITE_ENUMERATION_CAP_MAX = 24
SPAN_RANK_CAP_MAX = 24
TRANSFER_WIDTH_CAP_MAX = 12

TCCMAP_DENSE_QUBIT_CAP = _int_setting('TCCMAP_DENSE_QUBIT_CAP', 22, DENSE_QUBIT_CAP_MAX)
TCCMAP_SITE_ENUMERATION_CAP = _int_setting(
    'TCCMAP_SITE_ENUMERATION_CAP', 24, SITE_ENUMERATION_CAP_MAX
)
TCCMAP_SPAN_RANK_CAP = _int_setting('TCCMAP_SPAN_RANK_CAP', 24, SPAN_RANK_CAP_MAX)
TCCMAP_TRANSFER_WIDTH_CAP = _int_setting(
    'TCCMAP_TRANSFER_WIDTH_CAP', 12, TRANSFER_WIDTH_CAP_MAX
)
TCCMAP_CHUNK_BITS = _int_setting('TCCMAP_CHUNK_BITS', 16, 24)
TCCMAP_THREADS = _int_setting('TCCMAP_THREADS', os.cpu_count() or 1, 256)

TCCMAP_TRACEBACK_LIMIT: Optional[int]

_tb_limit_str = os.environ.get('TCCMAP_TRACEBACK_LIMIT')
if _tb_limit_str is not None:
    TCCMAP_TRACEBACK_LIMIT = int(_tb_limit_str)
else:
    TCCMAP_TRACEBACK_LIMIT = None
