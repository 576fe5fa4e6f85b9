"""Closed-form solution catalog and the quench mapping table.

Twenty-one catalog entries: exact solutions of the four second-order field
equations and of their envelope reductions.  Each envelope solution carries a
pure phase factor exp(i*theta*t); the mapping table records, for nine
KG/envelope pairs, the parameter choice at which theta vanishes and the
envelope profile collapses onto the static field solution.

Conventions: sn/cn/dn/dc take the parameter m = k**2 (see specfn); sign
choices default to + and are passed as tuples of +1/-1 reading the printed
formula left to right.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np

from .errors import ConstraintError, DomainError, FamilyMismatchError
from .models import Family, ModelSpec, nls_nonlinear_phase_rate
from .specfn import jacobi_dc, jacobi_elliptic

__all__ = [
    "SolutionId",
    "AnalyticSolution",
    "MappingPair",
    "make_solution",
    "eval_solution",
    "phase_rate",
    "in_validity_domain",
    "model_for",
    "mapping_table",
    "mapping_for",
    "instantiate_pair",
    "mapping_window",
    "catalog_ids",
    "formula_text",
    "catalog_dump",
]

ArrayLike = Union[float, np.ndarray]

_CONSTRAINT_RTOL = 1e-9


class SolutionId(Enum):
    CUBIC_KG_SN = "CUBIC_KG_SN"
    CUBIC_KG_CN = "CUBIC_KG_CN"
    CUBIC_KG_DC = "CUBIC_KG_DC"
    CUBIC_NLS_SN = "CUBIC_NLS_SN"
    CUBIC_NLS_CN = "CUBIC_NLS_CN"
    CUBIC_NLS_DC = "CUBIC_NLS_DC"
    DW_KG_KINK = "DW_KG_KINK"
    DW_KG_SN = "DW_KG_SN"
    DW_KG_CN = "DW_KG_CN"
    DW_KG_DC = "DW_KG_DC"
    DW_KG_CONST = "DW_KG_CONST"
    DW_NLS_TANH = "DW_NLS_TANH"
    DW_NLS_SN = "DW_NLS_SN"
    DW_NLS_CN = "DW_NLS_CN"
    DW_NLS_DC = "DW_NLS_DC"
    DW_NLS_CONST = "DW_NLS_CONST"
    CQ_KG_SN = "CQ_KG_SN"
    CQ_NLS_SN = "CQ_NLS_SN"
    SG_KINK = "SG_KINK"
    SG_IMAG = "SG_IMAG"
    BESSEL_UNIFORM = "BESSEL_UNIFORM"


@dataclass(frozen=True)
class AnalyticSolution:
    """A catalog entry bound to concrete parameter values and sign choices."""

    sid: SolutionId
    params: dict
    signs: tuple[int, ...]

    def __getitem__(self, key: str) -> float:
        return self.params[key]


@dataclass(frozen=True)
class _Entry:
    family: Family
    formula: str
    validity: str
    defaults: dict
    n_signs: int
    constraints: tuple[str, ...] = ()


_SQ2 = math.sqrt(2.0)


def _csqrt(z: float) -> complex:
    return cmath.sqrt(complex(z))


_CATALOG: dict[SolutionId, _Entry] = {
    SolutionId.CUBIC_KG_SN: _Entry(
        Family.CUBIC_KG,
        "phi = +/- i*c*sqrt(2/lambda) * sn(c*x | -1)",
        "all real x; purely imaginary",
        {"c": 1.0, "lam": 1.0},
        1,
    ),
    SolutionId.CUBIC_KG_CN: _Entry(
        Family.CUBIC_KG,
        "phi = +/- (i*c/sqrt(lambda)) * cn(c*x | 1/2)",
        "all real x; purely imaginary",
        {"c": 1.0, "lam": 1.0},
        1,
    ),
    SolutionId.CUBIC_KG_DC: _Entry(
        Family.CUBIC_KG,
        "phi = +/- c*sqrt(2/lambda) * dc(c*x | -1)",
        "real x away from the poles of dc",
        {"c": 1.0, "lam": 1.0},
        1,
    ),
    SolutionId.CUBIC_NLS_SN: _Entry(
        Family.CUBIC_NLS,
        "psi = +/- c*sqrt(2*m/lambda) * sn(c*x | m) * exp(-i*(1+m)*c**2*t/omega)",
        "m > 0",
        {"c": 1.0, "lam": 1.0, "omega": 1.0, "m": 0.6},
        1,
    ),
    SolutionId.CUBIC_NLS_CN: _Entry(
        Family.CUBIC_NLS,
        "psi = +/- i*c*sqrt(2*m/lambda) * cn(c*x | m) * exp(-i*(1-2*m)*c**2*t/omega)",
        "m < 0",
        {"c": 1.0, "lam": 1.0, "omega": 1.0, "m": -0.5},
        1,
    ),
    SolutionId.CUBIC_NLS_DC: _Entry(
        Family.CUBIC_NLS,
        "psi = +/- c*sqrt(2/lambda) * dc(c*x | m) * exp(-i*(1+m)*c**2*t/omega)",
        "any real m, x away from the poles of dc",
        {"c": 1.0, "lam": 1.0, "omega": 1.0, "m": 0.6},
        1,
    ),
    SolutionId.DW_KG_KINK: _Entry(
        Family.DOUBLE_WELL_KG,
        "phi = +/- (mass/sqrt(lambda)) * tanh(+/- (mass/sqrt(2))*(x - x0))",
        "all real x",
        {"mass": 1.0, "lam": 1.0, "x0": 0.0},
        2,
    ),
    SolutionId.DW_KG_SN: _Entry(
        Family.DOUBLE_WELL_KG,
        "phi = +/- sqrt(2*(mass**2 - c**2)/lambda) * sn(c*x | (mass**2 - c**2)/c**2)",
        "mass**2 > c**2 for a real profile",
        {"mass": 1.2, "c": 1.0, "lam": 1.0},
        1,
    ),
    SolutionId.DW_KG_CN: _Entry(
        Family.DOUBLE_WELL_KG,
        "phi = +/- i*sqrt((c**2 - mass**2)/lambda) * cn(c*x | (c**2 - mass**2)/(2*c**2))",
        "c**2 > mass**2 for an imaginary profile",
        {"mass": 0.6, "c": 1.0, "lam": 1.0},
        1,
    ),
    SolutionId.DW_KG_DC: _Entry(
        Family.DOUBLE_WELL_KG,
        "phi = +/- c*sqrt(2/lambda) * dc(c*x | (mass**2 - c**2)/c**2)",
        "real x away from the poles of dc",
        {"mass": 1.2, "c": 1.0, "lam": 1.0},
        1,
    ),
    SolutionId.DW_KG_CONST: _Entry(
        Family.DOUBLE_WELL_KG,
        "phi = +/- mass/sqrt(lambda)",
        "all real x (vacuum state)",
        {"mass": 1.0, "lam": 1.0},
        1,
    ),
    SolutionId.DW_NLS_TANH: _Entry(
        Family.DOUBLE_WELL_NLS,
        "psi = +/- c*sqrt(2/lambda) * tanh(+/- c*(x - x0)) * exp(i*(mass**2 - 2*c**2)*t/omega)",
        "all real x",
        {"c": 0.7, "mass": 1.0, "lam": 1.0, "omega": 1.0, "x0": 0.0},
        2,
    ),
    SolutionId.DW_NLS_SN: _Entry(
        Family.DOUBLE_WELL_NLS,
        "psi = +/- c*sqrt(2*m/lambda) * sn(c*x | m) * exp(i*(mass**2 - (1+m)*c**2)*t/omega)",
        "m > 0",
        {"m": 0.6, "mass": 1.0, "c": 1.0, "lam": 1.0, "omega": 1.0},
        1,
    ),
    SolutionId.DW_NLS_CN: _Entry(
        Family.DOUBLE_WELL_NLS,
        "psi = +/- i*c*sqrt(2*m/lambda) * cn(c*x | m) * exp(i*(mass**2 - (1-2*m)*c**2)*t/omega)",
        "m < 0",
        {"m": -0.5, "mass": 1.0, "c": 1.0, "lam": 1.0, "omega": 1.0},
        1,
    ),
    SolutionId.DW_NLS_DC: _Entry(
        Family.DOUBLE_WELL_NLS,
        "psi = +/- c*sqrt(2/lambda) * dc(c*x | m) * exp(i*(mass**2 - (1+m)*c**2)*t/omega)",
        "any real m, x away from the poles of dc",
        {"m": 0.6, "mass": 1.0, "c": 1.0, "lam": 1.0, "omega": 1.0},
        1,
    ),
    SolutionId.DW_NLS_CONST: _Entry(
        Family.DOUBLE_WELL_NLS,
        "psi = +/- a * exp(i*(mass**2 - a**2*lambda)*t/omega)",
        "all real x (uniform)",
        {"a": 1.0, "mass": 1.0, "lam": 1.0, "omega": 1.0},
        1,
    ),
    SolutionId.CQ_KG_SN: _Entry(
        Family.CUBIC_QUINTIC_KG,
        "phi = sqrt(3*sigma/(8*lambda) + sqrt(3/(20*lambda)) * sn(x | 1/5))",
        "real where the radicand is >= 0; requires 15*sigma**2 = 16*lambda",
        {"sigma": 1.0, "lam": 15.0 / 16.0},
        0,
        ("15*sigma**2 = 16*lambda",),
    ),
    SolutionId.CQ_NLS_SN: _Entry(
        Family.CUBIC_QUINTIC_NLS,
        "psi = sqrt(3*sigma/(8*lambda) + sqrt(3*m/(4*lambda)) * sn(x | m))"
        " * exp(-i*((1 + m - 9*sigma**2/(8*lambda))/4)*t)",
        "m > 0; requires 16*m*lambda = 3*sigma**2",
        {"m": 0.3, "lam": 1.0, "sigma": math.sqrt(1.6)},
        0,
        ("16*m*lambda = 3*sigma**2",),
    ),
    SolutionId.SG_KINK: _Entry(
        Family.SINE_GORDON_KG,
        "phi = 4*arctan(exp(lambda*gamma*(x - nu*t) + delta))",
        "|nu| < 1, gamma = 1/sqrt(1 - nu**2)",
        {"lam": 1.0, "nu": 0.5, "delta": 0.0},
        0,
        ("gamma**2*(1 - nu**2) = 1",),
    ),
    SolutionId.SG_IMAG: _Entry(
        Family.SINE_GORDON_KG,
        "phi = +/- 2*arctan(+/- i*sn(+/- x/sqrt(2) | -1))   [lambda = 1]",
        "purely imaginary; bounded for |x| < sqrt(2)*K(1/2), log-singular at the edges",
        {},
        3,
    ),
    SolutionId.BESSEL_UNIFORM: _Entry(
        Family.BESSEL_NLS,
        "psi = psi0 * exp(-i*lambda**2*J1(psi0)*t/(omega*psi0))",
        "psi0 >= 0 (uniform in x)",
        {"psi0": 3.0, "omega": 1.0, "lam": 1.0},
        0,
    ),
}


def catalog_ids() -> tuple[SolutionId, ...]:
    return tuple(_CATALOG.keys())


def formula_text(sid: SolutionId) -> str:
    return _CATALOG[sid].formula


def _check_constraints(sid: SolutionId, p: dict) -> None:
    if sid is SolutionId.CQ_KG_SN:
        lhs, rhs = 15.0 * p["sigma"] ** 2, 16.0 * p["lam"]
        if abs(lhs - rhs) > _CONSTRAINT_RTOL * max(abs(lhs), abs(rhs)):
            raise ConstraintError(
                f"CQ_KG_SN requires 15*sigma**2 = 16*lambda, got {lhs} vs {rhs}",
                relation="15*sigma**2 = 16*lambda",
            )
    elif sid is SolutionId.CQ_NLS_SN:
        lhs, rhs = 16.0 * p["m"] * p["lam"], 3.0 * p["sigma"] ** 2
        if abs(lhs - rhs) > _CONSTRAINT_RTOL * max(abs(lhs), abs(rhs)):
            raise ConstraintError(
                f"CQ_NLS_SN requires 16*m*lambda = 3*sigma**2, got {lhs} vs {rhs}",
                relation="16*m*lambda = 3*sigma**2",
            )
    elif sid is SolutionId.SG_KINK:
        if not abs(p["nu"]) < 1.0:
            raise DomainError(f"SG_KINK needs |nu| < 1, got {p['nu']}")
        if "gamma" not in p:
            p["gamma"] = 1.0 / math.sqrt(1.0 - p["nu"] ** 2)
        else:
            err = abs(p["gamma"] ** 2 * (1.0 - p["nu"] ** 2) - 1.0)
            if err > _CONSTRAINT_RTOL:
                raise ConstraintError(
                    f"SG_KINK requires gamma**2*(1 - nu**2) = 1, off by {err:.3e}",
                    relation="gamma**2*(1 - nu**2) = 1",
                )


def make_solution(sid: SolutionId, signs: Optional[tuple[int, ...]] = None, **overrides) -> AnalyticSolution:
    """Bind a catalog entry to parameters, filling defaults and checking constraints."""
    entry = _CATALOG[sid]
    params = dict(entry.defaults)
    extra_keys = {"gamma"} if sid is SolutionId.SG_KINK else set()
    for key, val in overrides.items():
        if key not in entry.defaults and key not in extra_keys:
            raise DomainError(f"{sid.value} has no parameter {key!r}")
        params[key] = float(val)
    for key, val in params.items():
        if not math.isfinite(val):
            raise DomainError(f"{sid.value} parameter {key} must be finite")
    if "lam" in params and params["lam"] <= 0.0:
        raise DomainError(f"{sid.value} requires lambda > 0")
    if "omega" in params and params["omega"] <= 0.0:
        raise DomainError(f"{sid.value} requires omega > 0")
    if sid is SolutionId.BESSEL_UNIFORM and params["psi0"] < 0.0:
        raise DomainError("BESSEL_UNIFORM requires psi0 >= 0")
    _check_constraints(sid, params)
    if signs is None:
        signs = (1,) * entry.n_signs
    signs = tuple(int(s) for s in signs)
    if len(signs) != entry.n_signs or any(s not in (-1, 1) for s in signs):
        raise DomainError(
            f"{sid.value} takes {entry.n_signs} sign choices of +/-1, got {signs!r}"
        )
    return AnalyticSolution(sid=sid, params=params, signs=signs)


def _phase(theta: float, t) -> np.ndarray:
    return np.exp(1j * theta * np.asarray(t, dtype=float))


# --- evaluators ------------------------------------------------------------

def _ev_cubic_kg_sn(p, s, x, t):
    amp = s[0] * 1j * p["c"] * math.sqrt(2.0 / p["lam"])
    return amp * jacobi_elliptic(p["c"] * x, -1.0).sn * _phase(0.0, t)


def _ev_cubic_kg_cn(p, s, x, t):
    amp = s[0] * 1j * p["c"] / math.sqrt(p["lam"])
    return amp * jacobi_elliptic(p["c"] * x, 0.5).cn * _phase(0.0, t)


def _ev_cubic_kg_dc(p, s, x, t):
    amp = s[0] * p["c"] * math.sqrt(2.0 / p["lam"])
    return amp * jacobi_dc(p["c"] * x, -1.0) * _phase(0.0, t)


def _ev_cubic_nls_sn(p, s, x, t):
    amp = s[0] * p["c"] * _csqrt(2.0 * p["m"] / p["lam"])
    theta = -(1.0 + p["m"]) * p["c"] ** 2 / p["omega"]
    return amp * jacobi_elliptic(p["c"] * x, p["m"]).sn * _phase(theta, t)


def _ev_cubic_nls_cn(p, s, x, t):
    amp = s[0] * 1j * p["c"] * _csqrt(2.0 * p["m"] / p["lam"])
    theta = -(1.0 - 2.0 * p["m"]) * p["c"] ** 2 / p["omega"]
    return amp * jacobi_elliptic(p["c"] * x, p["m"]).cn * _phase(theta, t)


def _ev_cubic_nls_dc(p, s, x, t):
    amp = s[0] * p["c"] * math.sqrt(2.0 / p["lam"])
    theta = -(1.0 + p["m"]) * p["c"] ** 2 / p["omega"]
    return amp * jacobi_dc(p["c"] * x, p["m"]) * _phase(theta, t)


def _ev_dw_kg_kink(p, s, x, t):
    amp = s[0] * p["mass"] / math.sqrt(p["lam"])
    arg = s[1] * (p["mass"] / _SQ2) * (np.asarray(x, dtype=float) - p["x0"])
    return amp * np.tanh(arg) * _phase(0.0, t)


def _ev_dw_kg_sn(p, s, x, t):
    m = (p["mass"] ** 2 - p["c"] ** 2) / p["c"] ** 2
    amp = s[0] * _csqrt(2.0 * (p["mass"] ** 2 - p["c"] ** 2) / p["lam"])
    return amp * jacobi_elliptic(p["c"] * x, m).sn * _phase(0.0, t)


def _ev_dw_kg_cn(p, s, x, t):
    m = (p["c"] ** 2 - p["mass"] ** 2) / (2.0 * p["c"] ** 2)
    amp = s[0] * 1j * _csqrt((p["c"] ** 2 - p["mass"] ** 2) / p["lam"])
    return amp * jacobi_elliptic(p["c"] * x, m).cn * _phase(0.0, t)


def _ev_dw_kg_dc(p, s, x, t):
    m = (p["mass"] ** 2 - p["c"] ** 2) / p["c"] ** 2
    amp = s[0] * p["c"] * math.sqrt(2.0 / p["lam"])
    return amp * jacobi_dc(p["c"] * x, m) * _phase(0.0, t)


def _ev_dw_kg_const(p, s, x, t):
    amp = s[0] * p["mass"] / math.sqrt(p["lam"])
    return amp * np.ones_like(np.asarray(x, dtype=float)) * _phase(0.0, t)


def _ev_dw_nls_tanh(p, s, x, t):
    amp = s[0] * p["c"] * math.sqrt(2.0 / p["lam"])
    arg = s[1] * p["c"] * (np.asarray(x, dtype=float) - p["x0"])
    theta = (p["mass"] ** 2 - 2.0 * p["c"] ** 2) / p["omega"]
    return amp * np.tanh(arg) * _phase(theta, t)


def _ev_dw_nls_sn(p, s, x, t):
    amp = s[0] * p["c"] * _csqrt(2.0 * p["m"] / p["lam"])
    theta = (p["mass"] ** 2 - (1.0 + p["m"]) * p["c"] ** 2) / p["omega"]
    return amp * jacobi_elliptic(p["c"] * x, p["m"]).sn * _phase(theta, t)


def _ev_dw_nls_cn(p, s, x, t):
    amp = s[0] * 1j * p["c"] * _csqrt(2.0 * p["m"] / p["lam"])
    theta = (p["mass"] ** 2 - (1.0 - 2.0 * p["m"]) * p["c"] ** 2) / p["omega"]
    return amp * jacobi_elliptic(p["c"] * x, p["m"]).cn * _phase(theta, t)


def _ev_dw_nls_dc(p, s, x, t):
    amp = s[0] * p["c"] * math.sqrt(2.0 / p["lam"])
    theta = (p["mass"] ** 2 - (1.0 + p["m"]) * p["c"] ** 2) / p["omega"]
    return amp * jacobi_dc(p["c"] * x, p["m"]) * _phase(theta, t)


def _ev_dw_nls_const(p, s, x, t):
    theta = (p["mass"] ** 2 - p["a"] ** 2 * p["lam"]) / p["omega"]
    ones = np.ones_like(np.asarray(x, dtype=float))
    return s[0] * p["a"] * ones * _phase(theta, t)


def _ev_cq_kg_sn(p, s, x, t):
    radicand = 3.0 * p["sigma"] / (8.0 * p["lam"]) + math.sqrt(
        3.0 / (20.0 * p["lam"])
    ) * jacobi_elliptic(np.asarray(x, dtype=float), 0.2).sn
    return np.sqrt(np.asarray(radicand, dtype=complex)) * _phase(0.0, t)


def _ev_cq_nls_sn(p, s, x, t):
    b = _csqrt(3.0 * p["m"] / (4.0 * p["lam"]))
    radicand = 3.0 * p["sigma"] / (8.0 * p["lam"]) + b * jacobi_elliptic(
        np.asarray(x, dtype=float), p["m"]
    ).sn
    theta = -(1.0 + p["m"] - 9.0 * p["sigma"] ** 2 / (8.0 * p["lam"])) / 4.0
    return np.sqrt(np.asarray(radicand, dtype=complex)) * _phase(theta, t)


def _ev_sg_kink(p, s, x, t):
    arg = p["lam"] * p["gamma"] * (np.asarray(x, dtype=float) - p["nu"] * np.asarray(t, dtype=float))
    arg = np.minimum(arg + p["delta"], 500.0)  # arctan saturates; avoid exp overflow
    return 4.0 * np.arctan(np.exp(arg)) + 0j


def _ev_sg_imag(p, s, x, t):
    sn = jacobi_elliptic(s[2] * np.asarray(x, dtype=float) / _SQ2, -1.0).sn
    with np.errstate(divide="ignore", invalid="ignore"):
        val = s[0] * 2.0 * np.arctan(s[1] * 1j * np.asarray(sn, dtype=complex))
    return val * _phase(0.0, t)


def _ev_bessel_uniform(p, s, x, t):
    theta = phase_rate_value(SolutionId.BESSEL_UNIFORM, p)
    ones = np.ones_like(np.asarray(x, dtype=float))
    return p["psi0"] * ones * _phase(theta, t)


_EVALUATORS: dict[SolutionId, Callable] = {
    SolutionId.CUBIC_KG_SN: _ev_cubic_kg_sn,
    SolutionId.CUBIC_KG_CN: _ev_cubic_kg_cn,
    SolutionId.CUBIC_KG_DC: _ev_cubic_kg_dc,
    SolutionId.CUBIC_NLS_SN: _ev_cubic_nls_sn,
    SolutionId.CUBIC_NLS_CN: _ev_cubic_nls_cn,
    SolutionId.CUBIC_NLS_DC: _ev_cubic_nls_dc,
    SolutionId.DW_KG_KINK: _ev_dw_kg_kink,
    SolutionId.DW_KG_SN: _ev_dw_kg_sn,
    SolutionId.DW_KG_CN: _ev_dw_kg_cn,
    SolutionId.DW_KG_DC: _ev_dw_kg_dc,
    SolutionId.DW_KG_CONST: _ev_dw_kg_const,
    SolutionId.DW_NLS_TANH: _ev_dw_nls_tanh,
    SolutionId.DW_NLS_SN: _ev_dw_nls_sn,
    SolutionId.DW_NLS_CN: _ev_dw_nls_cn,
    SolutionId.DW_NLS_DC: _ev_dw_nls_dc,
    SolutionId.DW_NLS_CONST: _ev_dw_nls_const,
    SolutionId.CQ_KG_SN: _ev_cq_kg_sn,
    SolutionId.CQ_NLS_SN: _ev_cq_nls_sn,
    SolutionId.SG_KINK: _ev_sg_kink,
    SolutionId.SG_IMAG: _ev_sg_imag,
    SolutionId.BESSEL_UNIFORM: _ev_bessel_uniform,
}


def eval_solution(sol: AnalyticSolution, x: ArrayLike, t: ArrayLike = 0.0):
    """Evaluate the solution at position(s) x and time(s) t; complex output.

    x and t broadcast against each other, so a (5,1) time column against an
    (n,) grid yields the (5,n) space-time slab the residual stencils need.
    """
    out = _EVALUATORS[sol.sid](sol.params, sol.signs, x, t)
    out = np.asarray(out, dtype=complex)
    return complex(out) if out.ndim == 0 else out


# --- phase rates -----------------------------------------------------------

def phase_rate_value(sid: SolutionId, p: dict) -> float:
    if sid is SolutionId.CUBIC_NLS_SN or sid is SolutionId.CUBIC_NLS_DC:
        return -(1.0 + p["m"]) * p["c"] ** 2 / p["omega"]
    if sid is SolutionId.CUBIC_NLS_CN:
        return -(1.0 - 2.0 * p["m"]) * p["c"] ** 2 / p["omega"]
    if sid is SolutionId.DW_NLS_TANH:
        return (p["mass"] ** 2 - 2.0 * p["c"] ** 2) / p["omega"]
    if sid is SolutionId.DW_NLS_SN or sid is SolutionId.DW_NLS_DC:
        return (p["mass"] ** 2 - (1.0 + p["m"]) * p["c"] ** 2) / p["omega"]
    if sid is SolutionId.DW_NLS_CN:
        return (p["mass"] ** 2 - (1.0 - 2.0 * p["m"]) * p["c"] ** 2) / p["omega"]
    if sid is SolutionId.DW_NLS_CONST:
        return (p["mass"] ** 2 - p["a"] ** 2 * p["lam"]) / p["omega"]
    if sid is SolutionId.CQ_NLS_SN:
        return -(1.0 + p["m"] - 9.0 * p["sigma"] ** 2 / (8.0 * p["lam"])) / 4.0
    if sid is SolutionId.BESSEL_UNIFORM:
        model = ModelSpec(Family.BESSEL_NLS, lam=p["lam"], omega=p["omega"])
        return -float(nls_nonlinear_phase_rate(model, p["psi0"]))
    raise FamilyMismatchError(f"{sid.value} is not an envelope solution; no phase rate")


def phase_rate(sol: AnalyticSolution) -> float:
    """Coefficient theta of t in the solution's phase factor exp(i*theta*t)."""
    return phase_rate_value(sol.sid, sol.params)


# --- validity domains ------------------------------------------------------

_VALIDITY: dict[SolutionId, Callable[[dict], bool]] = {
    SolutionId.CUBIC_NLS_SN: lambda p: p["m"] > 0.0,
    SolutionId.CUBIC_NLS_CN: lambda p: p["m"] < 0.0,
    SolutionId.DW_NLS_SN: lambda p: p["m"] > 0.0,
    SolutionId.DW_NLS_CN: lambda p: p["m"] < 0.0,
    SolutionId.DW_KG_SN: lambda p: p["mass"] ** 2 > p["c"] ** 2,
    SolutionId.DW_KG_CN: lambda p: p["c"] ** 2 > p["mass"] ** 2,
    SolutionId.CQ_NLS_SN: lambda p: p["m"] > 0.0,
    SolutionId.SG_KINK: lambda p: abs(p["nu"]) < 1.0,
}


def in_validity_domain(sol: AnalyticSolution) -> bool:
    """Whether the bound parameters sit inside the entry's stated domain.

    Evaluation is still possible outside (needed by the mapping checks, whose
    sn/cn quench values deliberately violate these domains).
    """
    pred = _VALIDITY.get(sol.sid)
    return True if pred is None else bool(pred(sol.params))


def model_for(sol: AnalyticSolution) -> ModelSpec:
    """The ModelSpec whose equation this solution solves (parameters copied over)."""
    entry = _CATALOG[sol.sid]
    p = sol.params
    kwargs = {"lam": p.get("lam", 1.0)}
    if entry.family in (Family.DOUBLE_WELL_KG, Family.DOUBLE_WELL_NLS):
        kwargs["mass"] = p["mass"]
    if entry.family in (Family.CUBIC_QUINTIC_KG, Family.CUBIC_QUINTIC_NLS):
        kwargs["sigma"] = p["sigma"]
    if entry.family.is_nls:
        kwargs["omega"] = p.get("omega", 1.0)
    return ModelSpec(family=entry.family, **kwargs)


# --- mapping table ---------------------------------------------------------

@dataclass(frozen=True)
class MappingPair:
    """One row of the quench table: envelope entry collapsing onto a static field entry."""

    kg_id: SolutionId
    nls_id: SolutionId
    m_star: Optional[float]
    constraint_note: str


_MAPPING_TABLE: tuple[MappingPair, ...] = (
    MappingPair(SolutionId.CUBIC_KG_SN, SolutionId.CUBIC_NLS_SN, -1.0,
                "phase rate -(1+m)*c**2/omega vanishes at m* = -1 (outside m > 0)"),
    MappingPair(SolutionId.CUBIC_KG_CN, SolutionId.CUBIC_NLS_CN, 0.5,
                "phase rate -(1-2m)*c**2/omega vanishes at m* = 1/2 (outside m < 0)"),
    MappingPair(SolutionId.CUBIC_KG_DC, SolutionId.CUBIC_NLS_DC, -1.0,
                "phase rate -(1+m)*c**2/omega vanishes at m* = -1; both equations hold"),
    MappingPair(SolutionId.DW_KG_KINK, SolutionId.DW_NLS_TANH, None,
                "mass**2 = 2*c**2"),
    MappingPair(SolutionId.DW_KG_SN, SolutionId.DW_NLS_SN, None,
                "m = (mass**2 - c**2)/c**2"),
    MappingPair(SolutionId.DW_KG_CN, SolutionId.DW_NLS_CN, None,
                "m = (c**2 - mass**2)/(2*c**2)"),
    MappingPair(SolutionId.DW_KG_DC, SolutionId.DW_NLS_DC, None,
                "m = (mass**2 - c**2)/c**2"),
    MappingPair(SolutionId.DW_KG_CONST, SolutionId.DW_NLS_CONST, None,
                "a = mass/sqrt(lambda)"),
    MappingPair(SolutionId.CQ_KG_SN, SolutionId.CQ_NLS_SN, 0.2,
                "16*m*lambda = 3*sigma**2 meets 15*sigma**2 = 16*lambda at m* = 1/5"),
)

# Canonical x-windows for pointwise mapping comparison, clear of dc poles and
# of the branch points of the cubic-quintic root.
_MAPPING_WINDOWS: dict[SolutionId, tuple[float, float]] = {
    SolutionId.CUBIC_NLS_SN: (-5.0, 5.0),
    SolutionId.CUBIC_NLS_CN: (-5.0, 5.0),
    SolutionId.CUBIC_NLS_DC: (-1.0, 1.0),
    SolutionId.DW_NLS_TANH: (-5.0, 5.0),
    SolutionId.DW_NLS_SN: (-5.0, 5.0),
    SolutionId.DW_NLS_CN: (-5.0, 5.0),
    SolutionId.DW_NLS_DC: (-1.4, 1.4),
    SolutionId.DW_NLS_CONST: (-5.0, 5.0),
    SolutionId.CQ_NLS_SN: (-1.2, 1.2),
}


def mapping_table() -> tuple[MappingPair, ...]:
    return _MAPPING_TABLE


def mapping_for(nls_id: SolutionId) -> MappingPair:
    for pair in _MAPPING_TABLE:
        if pair.nls_id is nls_id:
            return pair
    raise KeyError(f"no mapping row for {nls_id.value}")


def mapping_window(pair: MappingPair) -> tuple[float, float]:
    return _MAPPING_WINDOWS[pair.nls_id]


def instantiate_pair(pair: MappingPair, detune: float = 0.0):
    """Canonical (kg, nls) solution instances at the quench point.

    detune shifts the quenching parameter of the envelope side only: m -> m* +
    detune for the elliptic rows (the cubic-quintic sigma is recomputed from
    its own constraint so the instance stays admissible), c -> c*(1+detune)
    for the kink row, a -> a*(1+detune) for the constant row.  Any nonzero
    detune revives the phase rotation and the pair separates linearly in t.
    """
    d = float(detune)
    nid = pair.nls_id
    if nid is SolutionId.CUBIC_NLS_SN:
        return (make_solution(pair.kg_id, c=1.0, lam=1.0),
                make_solution(nid, c=1.0, lam=1.0, omega=1.0, m=-1.0 + d))
    if nid is SolutionId.CUBIC_NLS_CN:
        return (make_solution(pair.kg_id, c=1.0, lam=1.0),
                make_solution(nid, c=1.0, lam=1.0, omega=1.0, m=0.5 + d))
    if nid is SolutionId.CUBIC_NLS_DC:
        return (make_solution(pair.kg_id, c=1.0, lam=1.0),
                make_solution(nid, c=1.0, lam=1.0, omega=1.0, m=-1.0 + d))
    if nid is SolutionId.DW_NLS_TANH:
        mass = _SQ2  # mass**2 = 2*c**2 with c = 1
        return (make_solution(pair.kg_id, mass=mass, lam=1.0, x0=0.0),
                make_solution(nid, c=1.0 + d, mass=mass, lam=1.0, omega=1.0, x0=0.0))
    if nid is SolutionId.DW_NLS_SN:
        mass = 1.2
        m = mass * mass - 1.0
        return (make_solution(pair.kg_id, mass=mass, c=1.0, lam=1.0),
                make_solution(nid, m=m + d, mass=mass, c=1.0, lam=1.0, omega=1.0))
    if nid is SolutionId.DW_NLS_CN:
        mass = 0.6
        m = (1.0 - mass * mass) / 2.0
        return (make_solution(pair.kg_id, mass=mass, c=1.0, lam=1.0),
                make_solution(nid, m=m + d, mass=mass, c=1.0, lam=1.0, omega=1.0))
    if nid is SolutionId.DW_NLS_DC:
        mass = 1.2
        m = mass * mass - 1.0
        return (make_solution(pair.kg_id, mass=mass, c=1.0, lam=1.0),
                make_solution(nid, m=m + d, mass=mass, c=1.0, lam=1.0, omega=1.0))
    if nid is SolutionId.DW_NLS_CONST:
        return (make_solution(pair.kg_id, mass=1.0, lam=1.0),
                make_solution(nid, a=1.0 + d, mass=1.0, lam=1.0, omega=1.0))
    if nid is SolutionId.CQ_NLS_SN:
        lam = 15.0 / 16.0
        m = 0.2 + d
        sigma = math.sqrt(16.0 * m * lam / 3.0)
        return (make_solution(pair.kg_id, sigma=1.0, lam=lam),
                make_solution(nid, m=m, lam=lam, sigma=sigma))
    raise KeyError(f"no canonical instantiation for {nid.value}")


# --- catalog dump ----------------------------------------------------------

def catalog_dump() -> str:
    """Structured text rendering of the catalog, one record per solution."""
    blocks = []
    for sid, entry in _CATALOG.items():
        params = ", ".join(f"{k}={v!r}" for k, v in entry.defaults.items()) or "none"
        constraints = "; ".join(entry.constraints) or "none"
        blocks.append(
            f"id: {sid.value}\n"
            f"family: {entry.family.value}\n"
            f"formula: {entry.formula}\n"
            f"default params: {params}\n"
            f"validity: {entry.validity}\n"
            f"constraints: {constraints}\n"
        )
    return "\n".join(blocks)
