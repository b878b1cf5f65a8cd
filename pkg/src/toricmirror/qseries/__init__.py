"""Exact q-series: rational functions of q, truncated Laurent series, Pochhammer
symbols and log-bilinear prefactors."""
from .pochhammer import (
    FactoredProduct,
    expand_inverse_linear,
    infinite_pochhammer,
    inv_infinite_pochhammer,
    pochhammer_finite,
    q_pochhammer_number,
)
from .prefactor import LogPrefactor, PrefactoredSeries, apply_tau, scale_by_q_shift, shift, shift_variable
from .qrat import ONE, ZERO, QRat
from .series import (
    ExponentMonomial,
    TruncatedSeries,
    TruncationSpec,
    add_keys,
    monomial_key,
    swap_key,
    unit_key,
)

__all__ = [
    "QRat", "ZERO", "ONE", "ExponentMonomial", "TruncationSpec", "TruncatedSeries",
    "monomial_key", "unit_key", "add_keys", "swap_key",
    "FactoredProduct", "pochhammer_finite", "q_pochhammer_number",
    "expand_inverse_linear", "inv_infinite_pochhammer", "infinite_pochhammer",
    "LogPrefactor", "PrefactoredSeries", "shift", "shift_variable", "scale_by_q_shift", "apply_tau",
]
