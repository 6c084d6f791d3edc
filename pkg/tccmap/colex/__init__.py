from tccmap.colex.builders import (  # noqa: F401
    build_48_torus,
    build_hex_torus,
    hexagon_patch,
    single_triangle_patch,
    triangular_patch,
    union_jack_patch,
)
from tccmap.colex.dual import build_bordered, build_dual  # noqa: F401
from tccmap.colex.types import (  # noqa: F401
    BorderedColex,
    Color,
    Colex2,
    DualTriangulation,
    Edge,
    Face,
    LatticeReport,
)
from tccmap.colex.validation import validate  # noqa: F401
