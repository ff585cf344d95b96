from .boundary import (
    C_TABLE,
    Section5Margins,
    Section6Margins,
    aux_monotone_checks,
    boundary_r1_case_p_ge9,
    boundary_r1_case_p_lt2,
    c_table,
    r_p,
    section5_amgm_margin,
    section5_aux,
    section5_jensen_ratio,
    section5_phi,
    section6_aux,
    section6_phi,
    stationary_gap3,
    stationary_gap4,
    stationary_lower_chain3,
    stationary_lower_chain4,
    stationary_quotient,
)
from .pointwise import (
    PolarPair,
    lemma1_gap,
    lemma2_gap,
    phi1,
    phi2,
    psh_line_margins,
    psh_line_test,
    psh_scale,
    reduced_phi3,
    reduced_phi4,
    v_p,
)
from .scan import ScanReport, grid_max, scan, thread_count
