"""Exact-arithmetic toolkit for the degree-10 cuboid characteristic equation.

Layers: exact sparse polynomials over integer, Gaussian and quotient-ring
coefficients (exactpoly), the characteristic family and its unimodular
transforms (charpoly), symbolic remainder-equation derivation with bound
verification (expansion), certified root finding (roots), asymptotic-site
localization (sites), the cuboid construction pipeline (cuboid), exact
region classification (region), and a resumable scan CLI (scan, cli).
"""

from .charpoly import (
    NewtonUpperCoeffs,
    TransitionMatrix,
    char_poly,
    coefficient_equation,
    newton_upper_coeffs,
    shear_matrix,
    transformed_char_poly,
    uni_coeffs,
    uni_coeffs_shifted,
    unimodular_pair,
)
from .cuboid import Cuboid, Triple, check_conditions, try_build_cuboid
from .exactpoly import GAUSS, RAT, UQUOT, Gauss, MultiPoly, UQuot
from .expansion import (
    BoundReport,
    derive_complex_remainder,
    derive_real_remainder,
    rouche_margins,
    sample_complex_bound,
    sample_real_bound,
)
from .region import RegionClass, classify, theorem_71_applicable, theorem_81_applicable
from .roots import (
    CertifiedRoot,
    QuarticRoots,
    char_integer_roots,
    complex_roots,
    integer_roots,
    isolate_real_roots,
    refine_root,
    solve_site_quartic,
)
from .scan import ScanConfig, ScanRecord, run_scan, scan_records
from .sites import SiteSet, build_sites, check_disjoint, check_real_axis_separation, locate

__version__ = "0.1.0"
