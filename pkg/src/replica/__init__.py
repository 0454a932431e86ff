"""Exact truncated series for Schwarzian conditions, modular correspondences
and their arithmetic diagnostics."""

from .exact import (QQ, GF, CyclotomicElem, CyclotomicField, ParamPolynomial, PolyRing,
                    parse_rational, rational_str)
from .fixtures import diff_series, load_fixture
from .kernels import BACKEND
from .series import PuiseuxBranch, TruncatedSeries, expand_rational
from .special import FSpec, build_F, nome_from_f

__version__ = "0.1.0"

__all__ = ["QQ", "GF", "CyclotomicElem", "CyclotomicField", "ParamPolynomial", "PolyRing",
           "parse_rational", "rational_str", "diff_series", "load_fixture", "BACKEND",
           "PuiseuxBranch", "TruncatedSeries", "expand_rational", "FSpec", "build_F", "nome_from_f"]
