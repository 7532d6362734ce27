from ambientkit.linalg.matrix import ExactMatrix, compose, stack  # noqa: F401
from ambientkit.linalg.elimination import (  # noqa: F401
    EchelonForm,
    ExactnessReport,
    KernelBasis,
    certify_exactness,
    kernel_basis,
    rank,
    reduced_row_echelon,
)
