"""Two-sided verifiers for the transform's algebraic identities.

Each check computes the identity's left- and right-hand sides by
independent code paths on the same discrete data and reports the largest
per-frequency deviation.  The identities are pointwise-algebraic in the
integrand, so on shared grids they hold to float roundoff; the reported
residual is compared against tol * max(1, |LHS|).

The auxiliary transforms a right-hand side assembles (sign-flipped kernel
sets, rescaled frequencies) skip kernel-value validation: they reuse the
same bilinear kernels the validated primary transform already exercised,
up to sign and scale, which preserve squaring to negative reals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import Multivector, gp_many
from .commsplit import SplitIndex, shift_exponential_terms, split_multi
from .exponential import exp_imag
from .kernels import GftSpec, eval_kernel, negate, side_directions
from .transform import FreqGrid, SampledField, gft_at, row_magnitudes

__all__ = [
    "TheoremReport",
    "UnsupportedScale",
    "OffGridShift",
    "SCALE_FACTORS",
    "scaled_field",
    "shifted_field",
    "check_linearity",
    "check_scaling",
    "check_left_product",
    "check_right_product",
    "check_shift",
    "check_existence_bound",
    "skip_line",
]

SCALE_FACTORS = (1.0, -1.0, 2.0, -2.0, 0.5, -0.5)

_COMPONENT_DROP = 1e-12


class UnsupportedScale(ValueError):
    """Scale factor outside the set the resampling contract supports."""


class OffGridShift(ValueError):
    """Shift vector off the sample lattice, or support pushed off-grid."""


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of one check: residual against an explicit bound."""

    name: str
    lhs_norm: float
    rhs_norm: float
    residual: float
    threshold: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"THEOREM {self.name} residual={self.residual:.6e} "
            f"bound={self.threshold:.6e} {status}"
        )


def skip_line(name: str, reason: str) -> str:
    return f"THEOREM {name} residual=- bound=- SKIP({reason})"


def _report(
    name: str,
    lhs: np.ndarray,
    rhs: np.ndarray,
    tol: float,
    detail: str = "",
    extra_residual: float = 0.0,
) -> TheoremReport:
    lhs_norm = float(row_magnitudes(lhs).max())
    rhs_norm = float(row_magnitudes(rhs).max())
    residual = max(float(row_magnitudes(lhs - rhs).max()), extra_residual)
    threshold = tol * max(1.0, lhs_norm)
    return TheoremReport(
        name, lhs_norm, rhs_norm, residual, threshold,
        residual <= threshold, detail,
    )


def _same_grid(a: SampledField, b: SampledField) -> bool:
    return (
        a.sig == b.sig
        and a.dims == b.dims
        and a.origin == b.origin
        and a.spacing == b.spacing
    )


def check_linearity(
    spec: GftSpec,
    b_field: SampledField,
    c_field: SampledField,
    b: float,
    c: float,
    freqs: FreqGrid,
    tol: float = 1e-12,
) -> TheoremReport:
    """Transform of b*B + c*C against the combination of transforms."""
    if not _same_grid(b_field, c_field):
        raise ValueError("linearity check needs fields on one shared grid")
    unodes = freqs.nodes()
    combined = b_field.with_values(b * b_field.values + c * c_field.values)
    lhs = gft_at(spec, combined, unodes, validate=True)
    rhs = b * gft_at(spec, b_field, unodes, validate=False) + c * gft_at(
        spec, c_field, unodes, validate=False
    )
    return _report("linearity", lhs, rhs, tol)


def scaled_field(field: SampledField, a: float) -> SampledField:
    """The field x -> field(a x), sampled exactly on the rescaled grid.

    The data is reused unchanged (reversed along every axis for a < 0);
    only the grid geometry moves, so both sides of the scaling identity
    see the same sample values.
    """
    if a == 1.0:
        return field
    if a > 0:
        origin = tuple(o / a for o in field.origin)
        values = field.values
    else:
        origin = tuple(
            (o + (d - 1) * s) / a
            for o, d, s in zip(field.origin, field.dims, field.spacing)
        )
        shaped = field.values.reshape(field.dims + (field.sig.dim,))
        values = np.flip(shaped, axis=tuple(range(field.m))).reshape(
            field.values.shape
        )
    spacing = tuple(s / abs(a) for s in field.spacing)
    return SampledField(field.sig, field.dims, origin, spacing, values)


def check_scaling(
    spec: GftSpec,
    b_field: SampledField,
    a: float,
    freqs: FreqGrid,
    tol: float = 1e-10,
) -> TheoremReport:
    """F(B(a.))(u) against |a|^-m F(B)(u/a) at every frequency node."""
    if a not in SCALE_FACTORS:
        raise UnsupportedScale(
            f"scale factor must be one of +-1, +-2, +-1/2; got {a}"
        )
    unodes = freqs.nodes()
    lhs = gft_at(spec, scaled_field(b_field, a), unodes, validate=True)
    rhs = abs(a) ** (-spec.m) * gft_at(
        spec, b_field, unodes / a, validate=False
    )
    return _report(f"scaling[a={a:g}]", lhs, rhs, tol)


def _constant_components(
    c: Multivector, dirs: Sequence[Multivector], direction: str
) -> list[tuple[SplitIndex, Multivector]]:
    comps = split_multi(c, list(dirs), direction)
    scale = max(1.0, c.magnitude())
    return [
        (bits, comp)
        for bits, comp in sorted(comps.items())
        if comp.magnitude() > _COMPONENT_DROP * scale
    ]


def check_left_product(
    spec: GftSpec,
    c: Multivector,
    b_field: SampledField,
    freqs: FreqGrid,
    tol: float = 1e-10,
) -> TheoremReport:
    """F(C B) against the sum of C's split components times sign-flipped
    transforms of B, one per component that survives the split."""
    dirs = side_directions(spec, "left")
    unodes = freqs.nodes()
    product_field = b_field.with_values(
        gp_many(spec.sig, c.coeffs, b_field.values)
    )
    lhs = gft_at(spec, product_field, unodes, validate=True)
    rhs = np.zeros_like(lhs)
    k_zero = (0,) * len(spec.right)
    terms = 0
    for bits, comp in _constant_components(c, dirs, "backward"):
        spectrum = gft_at(negate(spec, bits, k_zero), b_field, unodes,
                          validate=False)
        rhs += gp_many(spec.sig, comp.coeffs, spectrum)
        terms += 1
    return _report("left-product", lhs, rhs, tol, detail=f"terms={terms}")


def check_right_product(
    spec: GftSpec,
    c: Multivector,
    b_field: SampledField,
    freqs: FreqGrid,
    tol: float = 1e-10,
) -> TheoremReport:
    """F(B C) against sign-flipped transforms of B times C's components."""
    dirs = side_directions(spec, "right")
    unodes = freqs.nodes()
    product_field = b_field.with_values(
        gp_many(spec.sig, b_field.values, c.coeffs)
    )
    lhs = gft_at(spec, product_field, unodes, validate=True)
    rhs = np.zeros_like(lhs)
    j_zero = (0,) * len(spec.left)
    terms = 0
    for bits, comp in _constant_components(c, dirs, "forward"):
        spectrum = gft_at(negate(spec, j_zero, bits), b_field, unodes,
                          validate=False)
        rhs += gp_many(spec.sig, spectrum, comp.coeffs)
        terms += 1
    return _report("right-product", lhs, rhs, tol, detail=f"terms={terms}")


def shifted_field(field: SampledField, x0: Sequence[float]) -> SampledField:
    """The field x -> field(x - x0) on the same grid.

    x0 must be an integer multiple of the spacing per axis, and every
    nonzero sample must stay on the grid after the index shift.
    """
    offs = []
    for k, (v, s) in enumerate(zip(np.asarray(x0, dtype=float), field.spacing)):
        t = v / s
        r = round(t)
        if abs(t - r) > 1e-9 * max(1.0, abs(t)):
            raise OffGridShift(
                f"shift component {k + 1} is {v}, not an integer multiple "
                f"of spacing {s}"
            )
        offs.append(int(r))
    shaped = field.values.reshape(field.dims + (field.sig.dim,))
    out = np.zeros_like(shaped)
    src = []
    dst = []
    for d, t in zip(field.dims, offs):
        if abs(t) >= d:
            src.append(slice(0, 0))
            dst.append(slice(0, 0))
        else:
            src.append(slice(max(0, -t), d - max(0, t)))
            dst.append(slice(max(0, t), d + min(0, t)))
    out[tuple(dst)] = shaped[tuple(src)]
    if np.count_nonzero(out) != np.count_nonzero(shaped):
        raise OffGridShift(
            "field support does not stay on the grid under this shift"
        )
    return field.with_values(out.reshape(field.values.shape))


def _mutually_commutative(dirs: Sequence[Multivector], tol: float = 1e-12) -> bool:
    for i in range(len(dirs)):
        for j in range(i + 1, len(dirs)):
            if (dirs[i] * dirs[j] - dirs[j] * dirs[i]).magnitude() > tol:
                return False
    return True


def check_shift(
    spec: GftSpec,
    b_field: SampledField,
    x0: Sequence[float],
    freqs: FreqGrid,
    tol: float = 1e-10,
) -> TheoremReport:
    """F(B(. - x0)) against the triangular-matrix factor sum.

    Per frequency, the translated kernel exponentials split into constant
    factors (left factors from strictly lower, right factors from strictly
    upper matrices) times sign-flipped transforms of B.  When each side's
    kernel directions commute among themselves the sum must collapse to
    the single term  prod e^{-f(x0,u)} . F(B)(u) . prod e^{-f(x0,u)};  the
    collapsed form is then also evaluated and folded into the residual.
    """
    left_dirs = side_directions(spec, "left")
    right_dirs = side_directions(spec, "right")
    x0 = np.asarray(x0, dtype=float)
    unodes = freqs.nodes()
    lhs = gft_at(spec, shifted_field(b_field, x0), unodes, validate=True)

    one = Multivector.scalar(spec.sig, 1.0)
    cache: dict[tuple[SplitIndex, SplitIndex], np.ndarray] = {}

    def spectrum(j: SplitIndex, k: SplitIndex) -> np.ndarray:
        if (j, k) not in cache:
            cache[(j, k)] = gft_at(negate(spec, j, k), b_field, unodes,
                                   validate=False)
        return cache[(j, k)]

    collapsed = _mutually_commutative(left_dirs) and _mutually_commutative(
        right_dirs
    )
    rhs = np.empty_like(lhs)
    collapse_residual = 0.0
    max_left_terms = 0
    max_right_terms = 0
    for i, u in enumerate(unodes):
        left_vals = [eval_kernel(k, x0, u) for k in spec.left]
        right_vals = [eval_kernel(k, x0, u) for k in spec.right]
        left_terms = (
            shift_exponential_terms(left_vals, "lower", directions=left_dirs)
            if left_vals
            else [(one, ())]
        )
        right_terms = (
            shift_exponential_terms(right_vals, "upper", directions=right_dirs)
            if right_vals
            else [(one, ())]
        )
        max_left_terms = max(max_left_terms, len(left_terms))
        max_right_terms = max(max_right_terms, len(right_terms))
        acc = Multivector.zero(spec.sig)
        for lf, j in left_terms:
            for rf, k in right_terms:
                mid = Multivector(spec.sig, spectrum(j, k)[i])
                acc = acc + lf * mid * rf
        rhs[i] = acc.coeffs
        if collapsed:
            flat = Multivector(
                spec.sig,
                spectrum((0,) * len(spec.left), (0,) * len(spec.right))[i],
            )
            for f in reversed(left_vals):
                flat = exp_imag(f) * flat
            for f in right_vals:
                flat = flat * exp_imag(f)
            collapse_residual = max(
                collapse_residual, (acc - flat).magnitude()
            )
    detail = f"terms={max_left_terms}x{max_right_terms}"
    if collapsed:
        detail += f" collapsed_residual={collapse_residual:.3e}"
    return _report("shift", lhs, rhs, tol, detail=detail,
                   extra_residual=collapse_residual)


def check_existence_bound(
    spec: GftSpec,
    b_field: SampledField,
    freqs: FreqGrid,
    tol: float = 1e-12,
) -> TheoremReport:
    """Max spectrum magnitude against 2^nu times the field's L1 mass."""
    unodes = freqs.nodes()
    values = gft_at(spec, b_field, unodes, validate=True)
    attained = float(row_magnitudes(values).max())
    bound = (
        2.0 ** spec.nu
        * float(row_magnitudes(b_field.values).sum())
        * b_field.cell_volume
    )
    threshold = bound + tol * max(1.0, bound)
    return TheoremReport(
        "existence",
        lhs_norm=attained,
        rhs_norm=bound,
        residual=attained,
        threshold=threshold,
        passed=attained <= threshold,
        detail=f"nu={spec.nu}",
    )
