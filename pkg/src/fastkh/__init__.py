"""Khovanov homology of knots and links by scanning tangle complexes.

Typical use::

    from fastkh import parse_pd, scan, homology
    table = homology(scan(parse_pd("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]")))
    print(table)
"""

from .complex import FormalComplex, deloop, gaussian_eliminate, simplify, tensor, validate
from .homology import HomologyTable, LaurentPolynomial, euler_characteristic, homology, to_graded
from .oracle import cube_complex, kauffman_bracket
from .planar import Diagram, braid_closure, order_crossings, parse_pd, serialize, torus_knot
from .rings import QQ, ZZ, PrimeField, ring_from_name
from .scan import crossing_complex, divide_and_conquer, scan

__all__ = [
    "Diagram",
    "FormalComplex",
    "HomologyTable",
    "LaurentPolynomial",
    "PrimeField",
    "QQ",
    "ZZ",
    "braid_closure",
    "crossing_complex",
    "cube_complex",
    "deloop",
    "divide_and_conquer",
    "euler_characteristic",
    "gaussian_eliminate",
    "homology",
    "kauffman_bracket",
    "order_crossings",
    "parse_pd",
    "ring_from_name",
    "scan",
    "serialize",
    "simplify",
    "tensor",
    "to_graded",
    "torus_knot",
    "validate",
]

__version__ = "0.1.0"
