"""Tautological surface constants and exact log-linear bookkeeping.

Two closed-form constants are attached to a stable surface type (g, n),
with kappa = 2g - 2 + n:

    log C(g,n) = kappa * (-12 zeta'(-1) + 1/2)
    log E(g,n) = ((g+2-n)/3) log 2 - (n/2) log pi
                 + kappa * (2 zeta'(-1) - 1/4 + (1/2) log(2 pi))

Every constant is carried both as a float and as a ``LogLinearForm``:
an exact rational vector over the basis {1, log 2, log pi, zeta'(-1)}
plus symbolic L-value slots.  ``reduce`` projects a form to a
``TranscendenceVector`` over {1, log pi, log Gamma2(1/2)} by dropping
log 2 (2 is algebraic, so log 2 dies modulo log|Qbar^x|) and
substituting

    zeta'(-1)  ->  (1/6) log pi - (2/3) log Gamma2(1/2),

the rearranged cross-check identity of :mod:`zal.specfun`.  All vector
arithmetic is exact over ``fractions.Fraction``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .specfun import SpecialConstants

__all__ = [
    "SurfaceType",
    "LogLinearForm",
    "TranscendenceVector",
    "const_C",
    "const_E",
    "quillen_scale",
    "detprime_laplacian",
    "reduce_form",
]

Rat = Fraction
_LOG2 = math.log(2.0)


class StabilityError(ValueError):
    """Surface type violates 2g - 2 + n > 0."""


@dataclass(frozen=True)
class SurfaceType:
    g: int
    n: int

    def __post_init__(self) -> None:
        if self.g < 0 or self.n < 0:
            raise StabilityError("genus and puncture count must be >= 0")
        if 2 * self.g - 2 + self.n <= 0:
            raise StabilityError(f"unstable surface type (g={self.g}, n={self.n})")

    @property
    def kappa(self) -> int:
        return 2 * self.g - 2 + self.n


def _as_slots(slots) -> tuple[tuple[str, Rat], ...]:
    out = tuple(sorted((lab, Rat(c)) for lab, c in dict(slots or {}).items() if c != 0))
    return out


@dataclass(frozen=True)
class LogLinearForm:
    """Exact rational vector over {1, log 2, log pi, zeta'(-1)} + L slots."""

    c_one: Rat = Rat(0)
    c_log2: Rat = Rat(0)
    c_logpi: Rat = Rat(0)
    c_zp1: Rat = Rat(0)
    l_slots: tuple[tuple[str, Rat], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_one", Rat(self.c_one))
        object.__setattr__(self, "c_log2", Rat(self.c_log2))
        object.__setattr__(self, "c_logpi", Rat(self.c_logpi))
        object.__setattr__(self, "c_zp1", Rat(self.c_zp1))
        object.__setattr__(self, "l_slots", _as_slots(dict(self.l_slots)))

    def __add__(self, other: "LogLinearForm") -> "LogLinearForm":
        slots = dict(self.l_slots)
        for lab, c in other.l_slots:
            slots[lab] = slots.get(lab, Rat(0)) + c
        return LogLinearForm(self.c_one + other.c_one, self.c_log2 + other.c_log2,
                             self.c_logpi + other.c_logpi, self.c_zp1 + other.c_zp1,
                             tuple(slots.items()))

    def __sub__(self, other: "LogLinearForm") -> "LogLinearForm":
        return self + other.scale(-1)

    def scale(self, q) -> "LogLinearForm":
        q = Rat(q)
        return LogLinearForm(q * self.c_one, q * self.c_log2, q * self.c_logpi,
                             q * self.c_zp1, tuple((lab, q * c) for lab, c in self.l_slots))

    def evaluate(self, constants: SpecialConstants,
                 slot_values: Mapping[str, float] | None = None) -> float:
        """Numeric value of the form; slot exponents need log-values supplied."""
        total = float(self.c_one) + float(self.c_log2) * _LOG2 \
            + float(self.c_logpi) * constants.log_pi \
            + float(self.c_zp1) * constants.zeta_prime_minus1
        for lab, c in self.l_slots:
            if slot_values is None or lab not in slot_values:
                raise KeyError(f"no numeric value supplied for slot {lab!r}")
            total += float(c) * math.log(slot_values[lab])
        return total


@dataclass(frozen=True)
class TranscendenceVector:
    """Class of a real number modulo log|Qbar^x|.

    Coordinates over the formal basis {1, log pi, log Gamma2(1/2)} plus
    symbolic L-value slots; the basis elements are *treated* as
    Q-linearly independent mod log|Qbar^x| (actual independence is
    conjectural, which downstream reports flag).
    """

    c_one: Rat = Rat(0)
    c_logpi: Rat = Rat(0)
    c_logGamma2half: Rat = Rat(0)
    l_slots: tuple[tuple[str, Rat], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_one", Rat(self.c_one))
        object.__setattr__(self, "c_logpi", Rat(self.c_logpi))
        object.__setattr__(self, "c_logGamma2half", Rat(self.c_logGamma2half))
        object.__setattr__(self, "l_slots", _as_slots(dict(self.l_slots)))

    def __add__(self, other: "TranscendenceVector") -> "TranscendenceVector":
        slots = dict(self.l_slots)
        for lab, c in other.l_slots:
            slots[lab] = slots.get(lab, Rat(0)) + c
        return TranscendenceVector(self.c_one + other.c_one,
                                   self.c_logpi + other.c_logpi,
                                   self.c_logGamma2half + other.c_logGamma2half,
                                   tuple(slots.items()))

    def scale(self, q) -> "TranscendenceVector":
        q = Rat(q)
        return TranscendenceVector(q * self.c_one, q * self.c_logpi,
                                   q * self.c_logGamma2half,
                                   tuple((lab, q * c) for lab, c in self.l_slots))

    def evaluate(self, constants: SpecialConstants,
                 slot_values: Mapping[str, float] | None = None) -> float:
        total = float(self.c_one) + float(self.c_logpi) * constants.log_pi \
            + float(self.c_logGamma2half) * constants.log_gamma2_half
        for lab, c in self.l_slots:
            if slot_values is None or lab not in slot_values:
                raise KeyError(f"no numeric value supplied for slot {lab!r}")
            total += float(c) * math.log(slot_values[lab])
        return total


def reduce_form(form: LogLinearForm) -> TranscendenceVector:
    """Project to the mod-log|Qbar^x| basis.

    Drops log 2 and rewrites zeta'(-1) as (1/6) log pi - (2/3) log
    Gamma2(1/2); exact rational arithmetic throughout, hence linear.
    """
    return TranscendenceVector(
        c_one=form.c_one,
        c_logpi=form.c_logpi + form.c_zp1 * Rat(1, 6),
        c_logGamma2half=form.c_zp1 * Rat(-2, 3),
        l_slots=form.l_slots,
    )


def log_C_form(t: SurfaceType) -> LogLinearForm:
    k = t.kappa
    # zeta'(-1)/zeta(-1) = -12 zeta'(-1), with zeta(-1) = -1/12 exact
    return LogLinearForm(c_one=Rat(k, 2), c_zp1=Rat(-12 * k))


def log_E_form(t: SurfaceType) -> LogLinearForm:
    k = t.kappa
    return LogLinearForm(
        c_one=Rat(-k, 4),
        c_log2=Rat(t.g + 2 - t.n, 3) + Rat(k, 2),
        c_logpi=Rat(-t.n, 2) + Rat(k, 2),
        c_zp1=Rat(2 * k),
    )


def const_C(t: SurfaceType, constants: SpecialConstants) -> tuple[float, LogLinearForm]:
    """C(g,n) as (numeric, exact log-linear form)."""
    form = log_C_form(t)
    return math.exp(form.evaluate(constants)), form


def const_E(t: SurfaceType, constants: SpecialConstants) -> tuple[float, LogLinearForm]:
    """E(g,n) as (numeric, exact log-linear form)."""
    form = log_E_form(t)
    return math.exp(form.evaluate(constants)), form


def quillen_scale(t: SurfaceType, z_prime_1: float, constants: SpecialConstants) -> float:
    """Determinant-metric rescaling factor (E(g,n) * Z'(1))^(-1/2)."""
    if not z_prime_1 > 0:
        raise ValueError("z_prime_1 must be positive")
    e, _ = const_E(t, constants)
    return (e * z_prime_1) ** -0.5


def detprime_laplacian(g: int, z_prime_1: float, which: str,
                       constants: SpecialConstants) -> float:
    """det' of the hyperbolic Laplacian on a closed genus-g surface.

    ``which='scalar'`` is Z'(1) * exp((2g-2)(2 zeta'(-1) - 1/4 + (1/2) log 2pi));
    ``which='dbar'`` multiplies by 2^((g+2)/3), which makes it equal to
    E(g,0) * Z'(1) exactly.
    """
    if g < 2:
        raise ValueError("closed hyperbolic surface needs g >= 2")
    if not z_prime_1 > 0:
        raise ValueError("z_prime_1 must be positive")
    if which not in ("scalar", "dbar"):
        raise ValueError("which must be 'scalar' or 'dbar'")
    zp1 = constants.zeta_prime_minus1
    val = z_prime_1 * math.exp((2 * g - 2) * (2 * zp1 - 0.25 + 0.5 * math.log(2 * math.pi)))
    if which == "dbar":
        val *= 2.0 ** ((g + 2) / 3.0)
    return val
