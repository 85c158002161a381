"""Hot-kernel dispatch: compiled extension when built, numpy otherwise.

The oracle modules call through this module's attributes, so a test or
benchmark can swap implementations by assigning them here. Both backends are
deterministic on their own; they agree with each other to rounding (their
summation orders differ).
"""

try:
    from . import _kernels as _impl

    BACKEND = "compiled"
except ImportError:
    from . import _kernels_py as _impl

    BACKEND = "python"

velocity_moment_sums = _impl.velocity_moment_sums
boosted_gradient_sums = _impl.boosted_gradient_sums
oscillatory_profile_sums = _impl.oscillatory_profile_sums


def backend() -> str:
    """Name of the kernel backend selected at import ('compiled' or 'python')."""
    return BACKEND
