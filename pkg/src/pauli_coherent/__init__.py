"""Coherent information and super-additivity of qubit Pauli channels."""
from .channel import ProbVec4, channel_on_purified, one_shot_capacity, one_shot_capacity_raw
from .codes import CodeId, build_code, parse_code_id
from .coherent import (
    best_family_rate,
    code_rate,
    coherent_information,
    q2_closed_psi,
    q3_closed_chi,
    q3_closed_phi,
)
from .kernels import BACKEND
from .linalg import DensityOp, PureState
from .scan import GridSpec, SliceSpec, gap_maximize, grid_scan, slice_density

__version__ = "0.1.0"
