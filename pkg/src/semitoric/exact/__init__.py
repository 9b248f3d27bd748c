from .intmat import hermite_normal_form, integer_kernel
from .linalg import ScalarMatrix, Subspace, kernel_of_power, nilpotency_index
from .novikov import ONE, ZERO, NovikovScalar, T

__all__ = [
    "NovikovScalar",
    "ONE",
    "ZERO",
    "T",
    "ScalarMatrix",
    "Subspace",
    "kernel_of_power",
    "nilpotency_index",
    "hermite_normal_form",
    "integer_kernel",
]
