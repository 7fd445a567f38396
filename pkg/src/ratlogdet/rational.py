"""Rational approximations to log z of orders 1..6, their partial-fraction
forms for odd orders, and an independent pole/residue re-derivation used to
cross-check the embedded constants.

Each approximant satisfies r(1) = 0 and r(z) = -r(1/z); the odd orders have
simple negative real poles, which is what makes the shifted-solve pipeline
downstream well posed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

__all__ = [
    "RationalClosedForm",
    "RationalPartialFraction",
    "closed_form",
    "eval_closed",
    "partial_fraction",
    "derive_partial_fraction",
    "eval_partial",
    "approximation_error_curve",
]


@dataclass(frozen=True)
class RationalClosedForm:
    """scale * N(z) / D(z) with exact rational coefficients (descending powers)."""

    order: int
    scale: Fraction
    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]


@dataclass(frozen=True)
class RationalPartialFraction:
    """b + sum_j residues[j] / (z - poles[j]); poles ascending (most negative first)."""

    order: int
    offset: float
    poles: tuple[float, ...]
    residues: tuple[float, ...]


def _cf(order, scale, num, den):
    return RationalClosedForm(
        order,
        Fraction(*scale) if isinstance(scale, tuple) else Fraction(scale),
        tuple(Fraction(c) for c in num),
        tuple(Fraction(c) for c in den),
    )


_CLOSED_FORMS = {
    1: _cf(1, 2, [1, -1], [1, 1]),
    2: _cf(2, 4, [1, 0, -1], [1, 6, 1]),
    3: _cf(3, (2, 3), [7, 27, -27, -7], [1, 15, 15, 1]),
    4: _cf(4, (16, 3), [1, 10, 0, -10, -1], [1, 28, 70, 28, 1]),
    5: _cf(5, (2, 15), [43, 825, 1150, -1150, -825, -43], [1, 45, 210, 210, 45, 1]),
    6: _cf(6, (4, 15), [23, 708, 2355, 0, -2355, -708, -23], [1, 66, 495, 924, 495, 66, 1]),
}

# Embedded partial-fraction constants for the odd orders (15-place decimals;
# re-derived from the closed forms by derive_partial_fraction at test time).
_PARTIAL_FRACTIONS = {
    1: RationalPartialFraction(1, 2.0, (-1.0,), (-4.0,)),
    3: RationalPartialFraction(
        3,
        14.0 / 3.0,
        (-13.92820323027551, -1.0, -0.0717967697244908),
        (-49.52250037431294, -20.0 / 9.0, -0.2552774034648563),
    ),
    5: RationalPartialFraction(
        5,
        86.0 / 15.0,
        (
            -39.863458189061411,
            -3.8518399963191827,
            -1.0,
            -0.25961618368249978,
            -0.025085630936916615,
        ),
        (
            -140.08241129102026,
            -6.1858406006156228,
            -92.0 / 75.0,
            -0.41692913805732562,
            -0.088152303639431204,
        ),
    ),
}


def closed_form(order: int) -> RationalClosedForm:
    if order not in _CLOSED_FORMS:
        raise ValueError(f"order must be in 1..6, got {order}")
    return _CLOSED_FORMS[order]


def eval_closed(r: RationalClosedForm, z):
    """Evaluate the closed form at scalar or array z."""
    z = np.asarray(z, dtype=np.float64)
    num = np.polyval([float(c) for c in r.numerator], z)
    den = np.polyval([float(c) for c in r.denominator], z)
    if np.any(den == 0.0):
        raise ZeroDivisionError("evaluation at a pole of the denominator")
    out = float(r.scale) * num / den
    return float(out) if out.ndim == 0 else out


def partial_fraction(order: int) -> RationalPartialFraction:
    if order not in _PARTIAL_FRACTIONS:
        raise ValueError(f"partial fractions exist for odd orders 1, 3, 5; got {order}")
    return _PARTIAL_FRACTIONS[order]


def derive_partial_fraction(r: RationalClosedForm) -> RationalPartialFraction:
    """Re-derive poles and residues from the closed form.

    Independent of the embedded constants: roots of the denominator are
    found in extended precision, residues via N(a)/D'(a), and the offset
    as the ratio of leading coefficients.  Fails on a repeated root.
    """
    if r.order % 2 == 0:
        raise ValueError("partial fractions only for odd orders")
    with mpmath.workdps(50):
        den = [mpmath.mpf(c.numerator) / c.denominator for c in r.denominator]
        num = [mpmath.mpf(c.numerator) / c.denominator for c in r.numerator]
        scale = mpmath.mpf(r.scale.numerator) / r.scale.denominator
        roots = mpmath.polyroots(den, maxsteps=200, extraprec=100)
        roots = sorted(roots, key=lambda x: mpmath.re(x))
        for a, b in zip(roots, roots[1:]):
            if abs(a - b) < mpmath.mpf("1e-30"):
                raise ValueError("repeated denominator root")
        dprime = [c * (len(den) - 1 - i) for i, c in enumerate(den[:-1])]
        poles, residues = [], []
        for root in roots:
            root = mpmath.re(root)
            c = scale * mpmath.polyval(num, root) / mpmath.polyval(dprime, root)
            poles.append(float(root))
            residues.append(float(c))
        offset = float(scale * num[0] / den[0])
    return RationalPartialFraction(r.order, offset, tuple(poles), tuple(residues))


def eval_partial(pf: RationalPartialFraction, z):
    """Evaluate b + sum_j c_j / (z - a_j) at scalar or array z."""
    z = np.asarray(z, dtype=np.float64)
    out = np.full_like(z, pf.offset, dtype=np.float64)
    for a, c in zip(pf.poles, pf.residues):
        diff = z - a
        if np.any(diff == 0.0):
            raise ZeroDivisionError(f"evaluation at pole {a}")
        out = out + c / diff
    return float(out) if out.ndim == 0 else out


def approximation_error_curve(order: int, z_grid) -> list[tuple[float, float]]:
    """Tabulate log z - r(z) over a positive grid."""
    r = closed_form(order)
    z_grid = np.asarray(z_grid, dtype=np.float64)
    if np.any(z_grid <= 0.0):
        raise ValueError("grid must be strictly positive")
    vals = eval_closed(r, z_grid)
    errs = np.log(z_grid) - vals
    return list(zip(z_grid.tolist(), np.atleast_1d(errs).tolist()))
