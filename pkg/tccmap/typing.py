from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

# Bit masks: bit i set means element i is in the set
Mask = int

# Lattices
VertexIndex = int
FaceIndex = int
SiteIndex = int
TriangleIndex = int
SiteTriple = Tuple[SiteIndex, SiteIndex, SiteIndex]
FaceCycle = Tuple[VertexIndex, ...]

# Numerics
ComplexArray = np.ndarray
RealArray = np.ndarray
Scalar = Union[float, complex]
CoefficientPair = Tuple[complex, complex]

# Output
JSONDict = Dict[str, object]
CSVRow = Sequence[object]
CSVRows = List[CSVRow]
