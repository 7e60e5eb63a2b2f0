"""Angle-symmetric closed 6R linkages in dual-quaternion form."""
from ._kernels import BACKEND as KERNEL_BACKEND
from .algebra import (
    DualNumber,
    DualQuaternion,
    Line,
    LineError,
    act_on_line,
    cross_inner,
    dq_conj_norm,
    dq_mul,
    make_line,
)
from .linkage import (
    ClosureError,
    ConfigParam,
    Configuration,
    Linkage,
    LinkageError,
    SymConfiguration,
    closure_residual,
    link_parameters,
    parallel_pairing,
    transform_by_configuration,
)
from .lambda_matrix import LambdaMatrix, build_lambda_matrix, lambda_rank

__version__ = "0.1.0"
