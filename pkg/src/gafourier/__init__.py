"""Geometric Fourier transforms over Clifford algebras Cl(p,q).

The package provides a dense real-coefficient multivector type, closed
form exponentials of imaginary multivectors, commutativity splits, a
configurable two-sided discrete transform, and executable checks for
its algebraic identities.
"""

from .algebra import (
    MAX_DIMENSION,
    Multivector,
    NotInvertible,
    Signature,
    blade_mul,
    gp_many,
    pseudoscalar,
    square_scalar_signs,
)
from .commsplit import (
    MAX_GENERATORS,
    SplitIndex,
    TriangularSignMatrix,
    enumerate_triangular,
    shift_exponential_terms,
    split_multi,
    split_pair,
    swap_through_exponentials,
)
from .exponential import (
    ExpOptions,
    NoConvergence,
    NotImaginary,
    exp_imag,
    exp_neg_many,
    exp_series,
)
from .fileio import (
    FileFormatError,
    GridFile,
    format_multivector_expr,
    parse_multivector_expr,
    read_grid_file,
    read_kernels,
    read_ppm,
    write_field,
    write_kernels,
    write_spectrum,
)
from .kernels import (
    GftSpec,
    KernelMatrix,
    NotSeparable,
    UnsupportedSignature,
    eval_kernel,
    is_separable,
    negate,
    parse_preset,
    preset,
    side_directions,
    validate_spec,
)
from .theorems import (
    OffGridShift,
    TheoremReport,
    UnsupportedScale,
    check_existence_bound,
    check_left_product,
    check_linearity,
    check_right_product,
    check_scaling,
    check_shift,
)
from .transform import (
    FreqGrid,
    SampledField,
    Spectrum,
    default_freqs,
    dft_complex_oracle,
    gft,
    gft_at,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIMENSION",
    "MAX_GENERATORS",
    "ExpOptions",
    "FileFormatError",
    "FreqGrid",
    "GftSpec",
    "GridFile",
    "KernelMatrix",
    "Multivector",
    "NoConvergence",
    "NotImaginary",
    "NotInvertible",
    "NotSeparable",
    "OffGridShift",
    "SampledField",
    "Signature",
    "Spectrum",
    "SplitIndex",
    "TheoremReport",
    "TriangularSignMatrix",
    "UnsupportedScale",
    "UnsupportedSignature",
    "blade_mul",
    "check_existence_bound",
    "check_left_product",
    "check_linearity",
    "check_right_product",
    "check_scaling",
    "check_shift",
    "default_freqs",
    "dft_complex_oracle",
    "enumerate_triangular",
    "eval_kernel",
    "exp_imag",
    "exp_neg_many",
    "exp_series",
    "format_multivector_expr",
    "gft",
    "gft_at",
    "gp_many",
    "is_separable",
    "negate",
    "parse_multivector_expr",
    "parse_preset",
    "preset",
    "pseudoscalar",
    "read_grid_file",
    "read_kernels",
    "read_ppm",
    "shift_exponential_terms",
    "side_directions",
    "split_multi",
    "split_pair",
    "square_scalar_signs",
    "swap_through_exponentials",
    "validate_spec",
    "write_field",
    "write_kernels",
    "write_spectrum",
    "__version__",
]
