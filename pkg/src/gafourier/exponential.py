"""Multivector exponentials.

`exp_series` is the plain power series and works for any element.
`exp_imag` is the trigonometric closed form for elements that square to a
negative real number, the only case the transform engine needs; it
evaluates e^{-f} directly because the kernels always appear with a
negative exponent.  `exp_neg_many` is the same closed form vectorized
over stacked samples, with optional validation of the square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import (
    RELATIVE_TOL,
    STRUCTURAL_TOL,
    Multivector,
    Signature,
    gp_many,
    square_scalar_signs,
)

__all__ = [
    "ExpOptions",
    "NoConvergence",
    "NotImaginary",
    "exp_series",
    "exp_imag",
    "exp_neg_many",
]

# Below this value of r = sqrt(-<f^2>_0) the closed form switches to the
# first-order sum 1 - f, removing the 0/0 in (f/r) sin(r).
_SMALL_ANGLE = 1e-14


class NoConvergence(ArithmeticError):
    """Power series still has large terms after max_terms iterations."""


class NotImaginary(ValueError):
    """Argument does not square to a negative real number."""


@dataclass(frozen=True)
class ExpOptions:
    """Truncation control for exp_series."""

    tol: float = 1e-14
    max_terms: int = 256

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")


def exp_series(a: Multivector, opts: ExpOptions = ExpOptions()) -> Multivector:
    """Power-series exponential e^{a}.

    Terms a**j / j! are accumulated in ascending order; the sum stops at
    (and includes) the first term whose magnitude drops below opts.tol.
    """
    term = Multivector.scalar(a.sig, 1.0)
    total = term
    if term.magnitude() < opts.tol:
        return total
    for j in range(1, opts.max_terms + 1):
        term = term * a / j
        total = total + term
        if term.magnitude() < opts.tol:
            return total
    raise NoConvergence(
        f"series terms still above {opts.tol} after {opts.max_terms} iterations"
    )


def exp_imag(f: Multivector, tol: float = STRUCTURAL_TOL) -> Multivector:
    """Closed-form e^{-f} for f squaring to a negative real (or f = 0).

    With r = sqrt(-<f^2>_0) the value is cos(r) - (f/r) sin(r); pass -f to
    exponentiate with a positive sign.  Raises NotImaginary when the square
    has a non-scalar or positive part above tol relative to max(1, |f|^2);
    near-zero arguments fall through to the small-angle branch.
    """
    if f.magnitude() == 0.0:
        return Multivector.scalar(f.sig, 1.0)
    sq = f * f
    scale = max(1.0, float(f.coeffs @ f.coeffs))
    residue = float(np.linalg.norm(sq.coeffs[1:]))
    if residue > tol * scale or sq.coeffs[0] > tol * scale:
        raise NotImaginary(f"{f!r} does not square to a negative real")
    r = math.sqrt(max(-sq.coeffs[0], 0.0))
    if r < _SMALL_ANGLE:
        return Multivector.scalar(f.sig, 1.0) - f
    return math.cos(r) - f * (math.sin(r) / r)


def exp_neg_many(
    sig: Signature,
    values: np.ndarray,
    tol: float = RELATIVE_TOL,
    validate: bool = True,
    label: str = "kernel",
) -> np.ndarray:
    """e^{-f} for stacked coefficient rows of kernel samples.

    Rows must be zero or square to a negative real; with validate=True each
    row's square is checked against a relative tolerance and the first
    offender is reported.  Zero rows map to 1 through the small-angle
    branch, so the result is total on valid kernel samples.
    """
    values = np.asarray(values, dtype=np.float64)
    squares = square_scalar_signs(sig)
    s = (values * values) @ squares
    if validate:
        full = gp_many(sig, values, values)
        scale = np.maximum(1.0, (values * values).sum(axis=1))
        residue = np.abs(full[:, 1:]).max(axis=1) if sig.dim > 1 else np.zeros(len(full))
        bad = (residue > tol * scale) | (full[:, 0] > tol * scale)
        if bad.any():
            i = int(np.argmax(bad))
            raise NotImaginary(
                f"{label}: sample {i} does not square to a negative real"
            )
    r = np.sqrt(np.maximum(-s, 0.0))
    small = r < _SMALL_ANGLE
    coef = np.where(small, 1.0, np.sin(r) / np.where(small, 1.0, r))
    out = -values * coef[:, None]
    out[:, 0] += np.cos(r)
    return out
