"""Gaussian rationals, the scalar field of the exact backend.

Scalars are elements of sympy's ``QQ_I`` domain. This module adds the
projcalc/1 text form ``"a/b+c/di"`` and the conversions the rest of the
package needs; the field arithmetic itself is sympy's.
"""

from fractions import Fraction
from numbers import Integral, Rational

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational

__all__ = [
    "GaussianRational",
    "QQ_I",
    "abs2",
    "conjugate",
    "format_gaussian",
    "gaussian",
    "imag_part",
    "parse_gaussian",
    "real_part",
    "to_complex",
]


def _as_qq(value):
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not exact scalars.")
    if isinstance(value, Integral):
        return QQ(int(value))
    if isinstance(value, Rational):
        return QQ(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        f = Fraction(value.strip())
        return QQ(f.numerator, f.denominator)
    raise TypeError(
        f"Cannot build an exact rational from {value!r} of type "
        f"{type(value).__name__}. Use int, Fraction or a 'p/q' string."
    )


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def gaussian(re=0, im=0) -> GaussianRational:
    """Builds the element ``re + im*i`` of ``QQ_I``.

    Parameters
    ----------
    re : int, Fraction, str or GaussianRational, optional
        Real part, or a complete Gaussian rational when ``im`` is zero.
        Default: 0
    im : int, Fraction or str, optional
        Imaginary part. Default: 0

    Returns
    -------
    GaussianRational
    """
    if isinstance(re, GaussianRational):
        if im != 0:
            raise TypeError("im must be zero when re is a GaussianRational.")
        return re
    return QQ_I(_as_qq(re), _as_qq(im))


def parse_gaussian(text: str) -> GaussianRational:
    """Parses the text form ``"a/b+c/di"``.

    The imaginary part may be omitted (``"3/4"``) and its sign is written
    after the plus sign (``"1/2+-3/4i"``). A bare imaginary value such as
    ``"2i"`` is accepted as well.

    Parameters
    ----------
    text : str
        Scalar in the projcalc/1 text form.

    Returns
    -------
    GaussianRational
    """
    body = text.strip().replace(" ", "")
    if not body:
        raise ValueError("Cannot parse an empty string as a Gaussian rational.")

    try:
        if not body.endswith("i"):
            return gaussian(Fraction(body))

        body = body[:-1]
        split = body.find("+", 1)
        if split == -1:
            re, im = "0", body
        else:
            re, im = body[:split], body[split + 1 :]

        if im in ("", "+"):
            im = "1"
        elif im == "-":
            im = "-1"

        return gaussian(Fraction(re), Fraction(im))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"'{text}' is not a valid Gaussian rational: {e}") from e


def real_part(z: GaussianRational) -> Fraction:
    return _to_fraction(z.x)


def imag_part(z: GaussianRational) -> Fraction:
    return _to_fraction(z.y)


def format_gaussian(z: GaussianRational) -> str:
    """Inverse of :func:`parse_gaussian`; real values print without ``i``."""
    z = gaussian(z)
    re, im = real_part(z), imag_part(z)
    if not im:
        return str(re)
    return f"{re}+{im}i"


def conjugate(z: GaussianRational) -> GaussianRational:
    return QQ_I.new(z.x, -z.y)


def abs2(z: GaussianRational) -> Fraction:
    """Squared modulus ``re**2 + im**2``, an exact rational."""
    return _to_fraction(z.x * z.x + z.y * z.y)


def to_complex(z) -> complex:
    """Complex double nearest to an exact scalar (or a plain number)."""
    if isinstance(z, GaussianRational):
        return complex(float(real_part(z)), float(imag_part(z)))
    if isinstance(z, Fraction):
        return complex(float(z))
    return complex(z)
