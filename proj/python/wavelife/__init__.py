"""Python access to the wavelife core: exponent calculus, solvers and lifespan sweeps.

Exact exponents come back as ``fractions.Fraction``; fields as NumPy arrays
indexed ``[time_row, x_index]``.
"""

from fractions import Fraction

from . import _core
from ._core import (
    Grid,
    InitialData,
    Monomial,
    NonlinearitySpec,
    Profile,
    ProfileKind,
    WavelifeError,
    capital_r,
    duhamel,
    estimate_lifespan,
    fd_solve,
    fit_exponent,
    free_field,
    free_solution,
    geometric_eps,
    horizon,
    huygens_residual,
    picard_solve,
    run_sweep,
    verify,
)


def _frac(pair):
    return Fraction(*pair)


def predict(alpha, beta0=None, zero_mean=False):
    out = _core.predict(alpha, beta0, zero_mean)
    out["exponent"] = _frac(out["exponent"])
    return out


def regime_table(alpha, beta0=None, zero_mean=False):
    rows = _core.regime_table(alpha, beta0, zero_mean)
    for row in rows:
        if row["exponent"] is not None:
            row["exponent"] = _frac(row["exponent"])
    return rows


def combined_exponent(p, q, r):
    return _frac(_core.combined_exponent(p, q, r))


def improvement_margin(alpha, beta0):
    return _frac(_core.improvement_margin(alpha, beta0))


def weight_p(alpha, beta0):
    return _frac(_core.weight_p(alpha, beta0))


def positivity_identity_check(alpha, beta0):
    return _frac(_core.positivity_identity_check(alpha, beta0))


__all__ = [name for name in dir() if not name.startswith("_") and name != "Fraction"]
