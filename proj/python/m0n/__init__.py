"""Exact intersection numbers and volumes on genus-zero moduli spaces.

Rationals are returned as fractions.Fraction; inputs accept Fraction, int or
"p/q" strings. Boundary divisors are written as partition literals such as
"1,2" (either side of the partition is accepted).
"""

from ._core import (
    M0nError,
    boundary_partitions,
    cross_check,
    divisor,
    five_point_closed_form,
    kawamata_lambda_table,
    product_number,
    psi_class,
    selfcheck,
    symmetric_closed_form,
    volume,
    walls,
)

__all__ = [
    "M0nError",
    "boundary_partitions",
    "cross_check",
    "divisor",
    "five_point_closed_form",
    "kawamata_lambda_table",
    "product_number",
    "psi_class",
    "selfcheck",
    "symmetric_closed_form",
    "volume",
    "walls",
]
