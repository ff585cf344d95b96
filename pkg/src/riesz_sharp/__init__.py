"""Constants and numerical verification for reverse Riesz-projection inequalities

    ||f||_p <= B_{p,s} ||(|P+ f|^s + |P- f|^s)^(1/s)||_p.
"""

from .constants import ConstantResult, NoSharpConstant, lower_bound, sharp_constant
from .fourier import CircleGrid, TrigPoly, lp_norm, project_minus, project_plus, reverse_ratio
from .params import ParamSpace

__version__ = "0.1.0"
