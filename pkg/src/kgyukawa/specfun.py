"""Special functions used by the bound-state and scattering formulas.

Gamma is evaluated with a 13-term rational Lanczos approximation,
Gauss 2F1 with its power series (switching to the 1 - x connection formula
above x = 0.5), Kummer 1F1 with its power series, and Jacobi polynomials
with the three-term recurrence.

All functions are pure; complex arguments are plain Python ``complex``.

A naming note: the third parameter of 2F1 is called ``c`` throughout, even
where the physics formulas reuse the letter of the radial coordinate.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from dataclasses import dataclass

from .errors import DegenerateConnection, NonConvergence, NumericOverflow, PoleError

__all__ = [
    "SeriesControl",
    "ln_gamma",
    "gamma_arg",
    "rgamma",
    "gauss_2f1",
    "gauss_2f1_complement",
    "hyp2f1_terminating",
    "kummer_1f1",
    "jacobi_p",
    "jacobi_p_sum",
    "pochhammer",
]

# Rational Lanczos sum, g = 6.024680040776729583740234375, N = 13 (the
# constants used by CPython's math.lgamma and Boost). All coefficients are
# positive, so the sum does not cancel for Re z > 0.
_LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_NUM = (
    23531376880.410759688572007674451636754734846804940,
    42919803642.649098768957899047001988850926355848959,
    35711959237.355668049440185451547166705960488635843,
    17921034426.037209699919755754458931112671403265390,
    6039542586.3520280050642916443072979210699388420708,
    1439720407.3117216736632230727949123939715485786772,
    248874557.86205415651146038641322942321632125127801,
    31426415.585400194380614231628318205362874684987640,
    2876370.6289353724412254090516208496135991145378768,
    186056.26539522349504029498971604569928220784236328,
    8071.6720023658162106380029022722506138218516325024,
    210.82427775157934587250973392071336271166969580291,
    2.5066282746310002701649081771338373386264310793408,
)
_LANCZOS_DEN = (
    0.0, 39916800.0, 120543840.0, 150917976.0, 105258076.0, 45995730.0,
    13339535.0, 2637558.0, 357423.0, 32670.0, 1925.0, 66.0, 1.0,
)
_POLE_TOL = 1e-12
_DEGENERATE_TOL = 1e-8
_SPLIT = 0.5


@dataclass(frozen=True)
class SeriesControl:
    """Stopping rule for hypergeometric series."""

    rel_tol: float = 1e-15
    max_terms: int = 20000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_CONTROL = SeriesControl()


def _nonpositive_integer(z: complex, tol: float = _POLE_TOL) -> int | None:
    """Return the integer k <= 0 that z sits on (within tol), else None."""
    if abs(z.imag) > tol:
        return None
    k = round(z.real)
    if k <= 0 and abs(z.real - k) <= tol:
        return int(k)
    return None


def _check_finite(value: complex, what: str) -> complex:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NumericOverflow(f"{what} is not finite")
    return value


def _lanczos(z: complex) -> complex:
    # valid for Re z >= 0.5
    num = 0j
    den = 0j
    if abs(z) < 5.0:
        for i in range(len(_LANCZOS_NUM) - 1, -1, -1):
            num = num * z + _LANCZOS_NUM[i]
            den = den * z + _LANCZOS_DEN[i]
    else:
        w = 1.0 / z
        for i in range(len(_LANCZOS_NUM)):
            num = num * w + _LANCZOS_NUM[i]
            den = den * w + _LANCZOS_DEN[i]
    return cmath.log(num / den) - _LANCZOS_G + (z - 0.5) * (cmath.log(z + _LANCZOS_G - 0.5) - 1.0)


def ln_gamma(z: complex) -> complex:
    """Log-gamma on the branch that is continuous off the negative real axis.

    For Re z < 0.5 the argument is shifted right with the recurrence
    Gamma(z) = Gamma(z + m) / (z (z+1) ... (z+m-1)), summing principal logs.
    This is the same branch as :func:`scipy.special.loggamma`.

    Raises
    ------
    PoleError
        If z is within 1e-12 of 0, -1, -2, ...
    """
    z = complex(z)
    if _nonpositive_integer(z) is not None:
        raise PoleError(f"Gamma has a pole at z = {z}")
    if z.real >= 0.5:
        return _check_finite(_lanczos(z), "ln_gamma")
    m = math.ceil(0.5 - z.real)
    acc = 0j
    for j in range(m):
        acc += cmath.log(z + j)
    return _check_finite(_lanczos(z + m) - acc, "ln_gamma")


def gamma_arg(z: complex) -> float:
    """Argument of Gamma(z), taken as Im ln_gamma(z) (not reduced mod 2 pi)."""
    return ln_gamma(z).imag


def rgamma(z: complex) -> complex:
    """Reciprocal gamma 1/Gamma(z); exactly zero at the poles."""
    z = complex(z)
    if _nonpositive_integer(z) is not None:
        return 0j
    return _check_finite(cmath.exp(-ln_gamma(z)), "rgamma")


def _gamma_ratio(num: tuple, den: tuple) -> complex:
    """prod Gamma(num) / prod Gamma(den); zero if any den is a pole."""
    if any(_nonpositive_integer(complex(d)) is not None for d in den):
        return 0j
    s = 0j
    for v in num:
        s += ln_gamma(v)
    for v in den:
        s -= ln_gamma(v)
    return _check_finite(cmath.exp(s), "gamma ratio")


def _series_2f1(a: complex, b: complex, c: complex, x: float, ctrl: SeriesControl) -> complex:
    term = 1.0 + 0j
    total = term
    small = 0
    for k in range(ctrl.max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
        if term == 0:
            return total
        if abs(term) <= ctrl.rel_tol * abs(total):
            small += 1
            if small >= 2:
                return _check_finite(total, "2F1")
        else:
            small = 0
    raise NonConvergence(f"2F1 series did not converge in {ctrl.max_terms} terms (x = {x})")


def gauss_2f1(
    a: complex,
    b: complex,
    c: complex,
    x: float,
    ctrl: SeriesControl = DEFAULT_CONTROL,
    method: str = "auto",
) -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; x) for real 0 <= x < 1.

    Parameters
    ----------
    a, b, c : complex
        Parameters; ``c`` must not be a non-positive integer.
    x : float
        Argument in [0, 1).
    method : {"auto", "series", "connection"}
        ``auto`` sums the power series for x <= 0.5 and uses the 1 - x
        connection formula above. A terminating series (a or b a
        non-positive integer) is always summed directly.

    Raises
    ------
    PoleError, DegenerateConnection, NonConvergence
    """
    a, b, c = complex(a), complex(b), complex(c)
    x = float(x)
    if not 0.0 <= x < 1.0:
        raise ValueError(f"2F1 argument must lie in [0, 1), got {x}")
    if _nonpositive_integer(c) is not None:
        raise PoleError(f"2F1 undefined for c = {c}")
    if x == 0.0:
        return 1.0 + 0j
    terminating = _nonpositive_integer(a) is not None or _nonpositive_integer(b) is not None
    if method == "series" or terminating or (method == "auto" and x <= _SPLIT):
        return _series_2f1(a, b, c, x, ctrl)
    if method not in ("auto", "connection"):
        raise ValueError(f"unknown method {method!r}")

    return gauss_2f1_complement(a, b, c, 1.0 - x, ctrl)


def gauss_2f1_complement(
    a: complex, b: complex, c: complex, y: float, ctrl: SeriesControl = DEFAULT_CONTROL
) -> complex:
    """2F1(a, b; c; 1 - y) through the connection formula in powers of y.

    Taking y rather than x = 1 - y as input keeps full relative precision
    when x is within rounding of 1, e.g. y = exp(-2 alpha r) at large r.
    """
    a, b, c = complex(a), complex(b), complex(c)
    y = float(y)
    if not 0.0 < y <= 1.0:
        raise ValueError(f"complement argument must lie in (0, 1], got {y}")
    if _nonpositive_integer(c) is not None:
        raise PoleError(f"2F1 undefined for c = {c}")
    d = c - a - b
    if abs(d.imag) <= _DEGENERATE_TOL and abs(d.real - round(d.real)) <= _DEGENERATE_TOL:
        raise DegenerateConnection(f"c - a - b = {d} is (nearly) an integer")
    c1 = _gamma_ratio((c, d), (c - a, c - b))
    c2 = _gamma_ratio((c, -d), (a, b))
    t1 = c1 * _series_2f1(a, b, 1.0 - d, y, ctrl) if c1 != 0 else 0j
    t2 = c2 * cmath.exp(d * math.log(y)) * _series_2f1(c - a, c - b, 1.0 + d, y, ctrl) if c2 != 0 else 0j
    return _check_finite(t1 + t2, "2F1")


def hyp2f1_terminating(n: int, b: float, c: float, x: float) -> float:
    """Polynomial 2F1(-n, b; c; x) of degree n, valid for any real x.

    Raises PoleError if one of c, c+1, ..., c+n-1 is zero.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    term = 1.0
    total = 1.0
    for k in range(n):
        den = (c + k) * (k + 1)
        if abs(c + k) <= _POLE_TOL:
            raise PoleError(f"terminating 2F1 has c + {k} = 0")
        term *= (-n + k) * (b + k) / den * x
        total += term
    return total


def kummer_1f1(a: float, c: float, x: float, ctrl: SeriesControl = DEFAULT_CONTROL) -> float:
    """Confluent hypergeometric function 1F1(a; c; x) for real arguments.

    A non-positive integer ``a`` gives a polynomial, summed exactly. For other
    ``a`` and x < 0 Kummer's transformation e^x 1F1(c - a; c; -x) avoids the
    alternating-series cancellation.
    """
    if _nonpositive_integer(complex(c)) is not None:
        raise PoleError(f"1F1 undefined for c = {c}")
    if x == 0.0:
        return 1.0
    poly = _nonpositive_integer(complex(a)) is not None
    if not poly and x < 0.0:
        return math.exp(x) * kummer_1f1(c - a, c, -x, ctrl)
    term = 1.0
    total = 1.0
    small = 0
    for k in range(ctrl.max_terms):
        term *= (a + k) / ((c + k) * (k + 1)) * x
        total += term
        if term == 0.0:
            return total
        if not poly and abs(term) <= ctrl.rel_tol * abs(total):
            small += 1
            if small >= 2:
                break
        else:
            small = 0
    else:
        if not poly:
            raise NonConvergence(f"1F1 series did not converge in {ctrl.max_terms} terms")
    if not math.isfinite(total):
        raise NumericOverflow("1F1 overflow")
    return total


def pochhammer(k: float, n: int) -> float:
    """Rising factorial (k)_n = k (k+1) ... (k+n-1)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n <= 64:
        out = 1.0
        for j in range(n):
            out *= k + j
        return out
    if k <= 0 and float(k).is_integer() and k + n > 0:
        return 0.0
    lg1, s1 = math.lgamma(k + n), _gamma_sign(k + n)
    lg0, s0 = math.lgamma(k), _gamma_sign(k)
    return s1 * s0 * math.exp(lg1 - lg0)


def _gamma_sign(x: float) -> float:
    if x > 0:
        return 1.0
    return -1.0 if math.floor(x) % 2 else 1.0


def jacobi_p(n: int, a: float, b: float, x: float) -> float:
    """Jacobi polynomial P_n^(a,b)(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    p0 = 1.0
    if n == 0:
        return p0
    p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0)
    for k in range(2, n + 1):
        s = 2 * k + a + b
        c1 = 2 * k * (k + a + b) * (s - 2)
        c2 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
        c3 = 2 * (k + a - 1) * (k + b - 1) * s
        p0, p1 = p1, (c2 * p1 - c3 * p0) / c1
    return p1


def jacobi_p_sum(n: int, a: float, b: float, x: float) -> float:
    """Jacobi polynomial from its explicit binomial sum over s = 0..n,

    sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s).

    The terms alternate in sign and can exceed the result by orders of
    magnitude, so the sum is carried out in exact rational arithmetic on the
    binary values of a, b and x and rounded once at the end. Meant as a
    reference for `jacobi_p`, not for speed.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    fa, fb, fx = Fraction(a), Fraction(b), Fraction(x)
    um = (fx - 1) / 2
    up = (fx + 1) / 2

    def binom(top: Fraction, k: int) -> Fraction:
        out = Fraction(1)
        for i in range(k):
            out *= top - i
        return out / math.factorial(k)

    total = Fraction(0)
    for s in range(n + 1):
        total += binom(n + fa, n - s) * binom(n + fb, s) * um**s * up ** (n - s)
    return float(total)
