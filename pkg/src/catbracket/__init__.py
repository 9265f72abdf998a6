"""Exact bracket coefficients of Catalan states of lattice crossings."""

from .exact_arith import LaurentPoly, RationalFn, qint, rf_make, rf_to_laurent, scale_exponents
from .planar import Conn, K0, classify, conn_text, hprod, make_connection, parse_conn, split, symmetry, vprod

__all__ = [
    "Conn",
    "K0",
    "LaurentPoly",
    "RationalFn",
    "classify",
    "conn_text",
    "hprod",
    "make_connection",
    "parse_conn",
    "qint",
    "rf_make",
    "rf_to_laurent",
    "scale_exponents",
    "split",
    "symmetry",
    "vprod",
]
