"""Discrete transform engine over sampled multivector fields.

The transform of a field A at one frequency u is the Riemann sum

    sum_x  prod_left e^{-f(x,u)}  A(x)  prod_right e^{-f(x,u)}  prod(dx)

over all grid nodes x, with the kernel products taken in their configured
order.  Evaluation is exact bilinear-algebra per node, not an FFT; the
frequency grid is arbitrary and independent of the spatial one.

Determinism: for each frequency the spatial reduction uses one fixed
numpy summation over row-major node order, so identical inputs produce
bit-identical spectra.  The frequency loop carries no state between
iterations and could run concurrently; this implementation keeps it
sequential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import Multivector, Signature, gp_many
from .exponential import exp_neg_many
from .kernels import GftSpec

__all__ = [
    "FreqGrid",
    "SampledField",
    "Spectrum",
    "grid_nodes",
    "gft",
    "gft_at",
    "default_freqs",
    "dft_complex_oracle",
    "row_magnitudes",
]


def _check_geometry(
    dims: Sequence[int], origin: Sequence[float], spacing: Sequence[float]
) -> tuple[tuple[int, ...], tuple[float, ...], tuple[float, ...]]:
    d = tuple(int(v) for v in dims)
    o = tuple(float(v) for v in origin)
    s = tuple(float(v) for v in spacing)
    if not d:
        raise ValueError("grid needs at least one axis")
    if len(o) != len(d) or len(s) != len(d):
        raise ValueError("dims, origin and spacing must have equal lengths")
    if any(v < 1 for v in d):
        raise ValueError("extents must be at least 1")
    if any(v <= 0.0 for v in s):
        raise ValueError("spacing must be positive")
    return d, o, s


def grid_nodes(
    dims: Sequence[int], origin: Sequence[float], spacing: Sequence[float]
) -> np.ndarray:
    """Node coordinates of a regular grid, row-major, shape (N, m)."""
    dims, origin, spacing = _check_geometry(dims, origin, spacing)
    axes = [np.arange(d) for d in dims]
    idx = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(
        -1, len(dims)
    )
    return np.asarray(origin) + idx * np.asarray(spacing)


@dataclass(frozen=True)
class FreqGrid:
    """Regular grid of frequency vectors u."""

    dims: tuple[int, ...]
    origin: tuple[float, ...]
    spacing: tuple[float, ...]

    def __post_init__(self) -> None:
        d, o, s = _check_geometry(self.dims, self.origin, self.spacing)
        object.__setattr__(self, "dims", d)
        object.__setattr__(self, "origin", o)
        object.__setattr__(self, "spacing", s)

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def node_count(self) -> int:
        return math.prod(self.dims)

    def nodes(self) -> np.ndarray:
        return grid_nodes(self.dims, self.origin, self.spacing)


@dataclass(frozen=True)
class SampledField:
    """A multivector per node of a regular spatial grid.

    `values` holds one coefficient row per node in row-major node order,
    shape (prod(dims), 2**n).
    """

    sig: Signature
    dims: tuple[int, ...]
    origin: tuple[float, ...]
    spacing: tuple[float, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        d, o, s = _check_geometry(self.dims, self.origin, self.spacing)
        v = np.array(self.values, dtype=float)
        if v.shape != (math.prod(d), self.sig.dim):
            raise ValueError(
                f"values must have shape {(math.prod(d), self.sig.dim)}, "
                f"got {v.shape}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "dims", d)
        object.__setattr__(self, "origin", o)
        object.__setattr__(self, "spacing", s)
        object.__setattr__(self, "values", v)

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def node_count(self) -> int:
        return math.prod(self.dims)

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    def nodes(self) -> np.ndarray:
        return grid_nodes(self.dims, self.origin, self.spacing)

    def at(self, index: int | Sequence[int]) -> Multivector:
        if not isinstance(index, int):
            index = int(np.ravel_multi_index(tuple(index), self.dims))
        return Multivector(self.sig, self.values[index])

    def with_values(self, values: np.ndarray) -> "SampledField":
        return SampledField(self.sig, self.dims, self.origin, self.spacing, values)

    @classmethod
    def zero(
        cls,
        sig: Signature,
        dims: Sequence[int],
        origin: Sequence[float],
        spacing: Sequence[float],
    ) -> "SampledField":
        n = math.prod(int(v) for v in dims)
        return cls(sig, tuple(dims), tuple(origin), tuple(spacing),
                   np.zeros((n, sig.dim)))

    @classmethod
    def from_multivectors(
        cls,
        dims: Sequence[int],
        origin: Sequence[float],
        spacing: Sequence[float],
        data: Iterable[Multivector],
    ) -> "SampledField":
        items = list(data)
        if not items:
            raise ValueError("need at least one multivector")
        sig = items[0].sig
        rows = np.stack([mv.coeffs for mv in items])
        return cls(sig, tuple(dims), tuple(origin), tuple(spacing), rows)


@dataclass(frozen=True)
class Spectrum:
    """Transform values on a frequency grid, one multivector per node."""

    sig: Signature
    grid: FreqGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.node_count, self.sig.dim):
            raise ValueError(
                f"values must have shape {(self.grid.node_count, self.sig.dim)}, "
                f"got {v.shape}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def dims(self) -> tuple[int, ...]:
        return self.grid.dims

    def at(self, index: int | Sequence[int]) -> Multivector:
        if not isinstance(index, int):
            index = int(np.ravel_multi_index(tuple(index), self.grid.dims))
        return Multivector(self.sig, self.values[index])


def row_magnitudes(values: np.ndarray) -> np.ndarray:
    return np.linalg.norm(np.asarray(values, dtype=float), axis=1)


def gft_at(
    spec: GftSpec,
    field: SampledField,
    unodes: np.ndarray,
    validate: bool = True,
) -> np.ndarray:
    """Transform values at an explicit (M, m) array of frequency vectors."""
    if spec.sig != field.sig:
        raise ValueError(f"spec is over {spec.sig}, field over {field.sig}")
    if spec.m != field.m:
        raise ValueError(f"spec has m={spec.m}, field has m={field.m}")
    unodes = np.asarray(unodes, dtype=float)
    if unodes.ndim != 2 or unodes.shape[1] != spec.m:
        raise ValueError(f"frequency nodes must have shape (M, {spec.m})")
    sig = spec.sig
    xs = field.nodes()
    vol = field.cell_volume
    out = np.empty((unodes.shape[0], sig.dim))
    for i, u in enumerate(unodes):
        rows = None
        for pos, kern in enumerate(spec.left, start=1):
            e = exp_neg_many(
                sig, kern.values(xs, u), validate=validate,
                label=f"left kernel {pos}",
            )
            rows = e if rows is None else gp_many(sig, rows, e)
        rows = field.values if rows is None else gp_many(sig, rows, field.values)
        for pos, kern in enumerate(spec.right, start=1):
            e = exp_neg_many(
                sig, kern.values(xs, u), validate=validate,
                label=f"right kernel {pos}",
            )
            rows = gp_many(sig, rows, e)
        out[i] = rows.sum(axis=0) * vol
    return out


def gft(
    spec: GftSpec,
    field: SampledField,
    freqs: FreqGrid,
    validate: bool = True,
) -> Spectrum:
    """Discrete transform of a sampled field on a frequency grid."""
    if freqs.m != field.m:
        raise ValueError(f"frequency grid has m={freqs.m}, field has m={field.m}")
    return Spectrum(spec.sig, freqs, gft_at(spec, field, freqs.nodes(), validate))


def default_freqs(field: SampledField, scale: float = 1.0) -> FreqGrid:
    """Frequency grid matching the field's extents.

    Spacing du = scale/(extent * dx) per axis; the origin is chosen so
    that u = 0 falls on the node at index extent//2.
    """
    if scale <= 0.0:
        raise ValueError("scale must be positive")
    spacing = tuple(
        scale / (d * s) for d, s in zip(field.dims, field.spacing)
    )
    origin = tuple(-(d // 2) * du for d, du in zip(field.dims, spacing))
    return FreqGrid(field.dims, origin, spacing)


def dft_complex_oracle(
    values: np.ndarray,
    freqs: FreqGrid,
    origin: Sequence[float],
    spacing: Sequence[float],
) -> np.ndarray:
    """Naive complex reference transform with the same conventions as gft.

    `values` is a complex array shaped like the spatial grid; the result is
    sum_x e^{-2 pi i x.u} c(x) prod(dx), shaped like the frequency grid.
    """
    c = np.asarray(values, dtype=complex)
    xs = grid_nodes(c.shape, origin, spacing)
    us = freqs.nodes()
    phases = np.exp(-2j * np.pi * (us @ xs.T))
    vol = math.prod(float(s) for s in spacing)
    return ((phases @ c.reshape(-1)) * vol).reshape(freqs.dims)
