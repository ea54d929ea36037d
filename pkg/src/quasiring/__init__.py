"""Quasi-regular and pi-algebraic elements of concrete rings.

Exact arithmetic over Z/n, subrings dZ/nZ, rational carriers, F_p[t],
matrices, direct sums and unitalizations, with witness polynomials,
radicals of finite rings, the circle group and certificate-emitting
verification suites.
"""

from .classify import classify_element, decide_pi
from .poly import Polynomial, parse_poly
from .ring import Elem, circ, parse_ring, quasi_inverse

__all__ = [
    "Elem",
    "Polynomial",
    "circ",
    "classify_element",
    "decide_pi",
    "parse_poly",
    "parse_ring",
    "quasi_inverse",
]

__version__ = "0.1.0"
