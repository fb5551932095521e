"""Exact signed fixed-point numbers with 18 fractional digits.

Values are stored as plain integers scaled by 10**18, mirroring on-chain
integer math so that results are deterministic across platforms. Addition
and subtraction are exact. Multiplication and division round half-even at
the 18th fractional digit (add/sub never need rounding; a product of two
scale-18 values carries up to 36 fractional digits, so it is rounded back
to scale). Magnitudes are capped at the 256-bit signed integer range and
exceeding it raises ``OverflowError`` instead of wrapping.

Floats are rejected everywhere: they are not exact and would silently
poison downstream results. Construct from ``int``, ``str``, or ``Dec``.
"""

from __future__ import annotations

DIGITS = 18
SCALE = 10**DIGITS
_BOUND = 2**255  # |raw| must stay strictly below this, mirroring int256


def _round_div(n: int, d: int) -> int:
    """Round n/d to the nearest integer, ties to even. Requires d > 0."""
    q, r = divmod(n, d)
    if 2 * r > d or (2 * r == d and q & 1):
        q += 1
    return q


def _checked(raw: int) -> int:
    if raw >= _BOUND or raw <= -_BOUND:
        raise OverflowError(f"fixed-point magnitude exceeds 2**255: {raw}")
    return raw


def _parse(text: str) -> int:
    s = text.strip()
    negative = s.startswith("-")
    if s[:1] in ("+", "-"):
        s = s[1:]
    whole, dot, frac = s.partition(".")
    if (dot and not frac) or (not whole and not frac):
        raise ValueError(f"not a decimal string: {text!r}")
    for part in (whole, frac):
        if part and not (part.isascii() and part.isdigit()):
            raise ValueError(f"not a decimal string: {text!r}")
    if len(frac) > DIGITS:
        raise ValueError(f"more than {DIGITS} fractional digits: {text!r}")
    raw = int(whole or "0") * SCALE + int(frac.ljust(DIGITS, "0") or "0")
    return -raw if negative else raw


class Dec:
    """An exact decimal number with 18 fractional digits."""

    __slots__ = ("_raw",)

    def __init__(self, value: "Dec | int | str" = 0):
        if isinstance(value, Dec):
            self._raw = value._raw
        elif isinstance(value, bool):
            raise TypeError("cannot construct Dec from bool")
        elif isinstance(value, int):
            self._raw = _checked(value * SCALE)
        elif isinstance(value, str):
            self._raw = _checked(_parse(value))
        elif isinstance(value, float):
            raise TypeError("floats are not exact; construct Dec from str or int")
        else:
            raise TypeError(f"cannot construct Dec from {type(value).__name__}")

    @classmethod
    def from_raw(cls, raw: int) -> "Dec":
        """Build a Dec from its scaled integer representation."""
        d = object.__new__(cls)
        d._raw = _checked(raw)
        return d

    @property
    def raw(self) -> int:
        return self._raw

    @classmethod
    def mul_div(cls, a: "Dec", b: "Dec", c: "Dec") -> "Dec":
        """a*b/c with a single half-even rounding (exact intermediate product)."""
        if c._raw == 0:
            raise ZeroDivisionError("mul_div by zero")
        n = a._raw * b._raw
        d = c._raw
        if d < 0:
            n, d = -n, -d
        return cls.from_raw(_round_div(n, d))

    # -- coercion ------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, Dec):
            return other
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            return Dec(other)
        if isinstance(other, float):
            raise TypeError("floats are not exact; convert to Dec explicitly")
        return NotImplemented

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dec.from_raw(self._raw + other._raw)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dec.from_raw(self._raw - other._raw)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dec.from_raw(other._raw - self._raw)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Dec.from_raw(_round_div(self._raw * other._raw, SCALE))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._raw == 0:
            raise ZeroDivisionError("division by zero")
        n, d = self._raw * SCALE, other._raw
        if d < 0:
            n, d = -n, -d
        return Dec.from_raw(_round_div(n, d))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return Dec.from_raw(-self._raw)

    def __pos__(self):
        return self

    def __abs__(self):
        return Dec.from_raw(abs(self._raw))

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._raw == other._raw

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._raw < other._raw

    def __le__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._raw <= other._raw

    def __gt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._raw > other._raw

    def __ge__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._raw >= other._raw

    def __hash__(self):
        # integral values hash like the matching int, so Dec(5) == 5 stays safe
        whole, frac = divmod(self._raw, SCALE)
        if frac == 0:
            return hash(whole)
        return hash(("liqlab.Dec", self._raw))

    def __bool__(self):
        return self._raw != 0

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        sign = "-" if self._raw < 0 else ""
        whole, frac = divmod(abs(self._raw), SCALE)
        if frac == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}." + str(frac).zfill(DIGITS).rstrip("0")

    def __repr__(self):
        return f"Dec('{self}')"


ZERO = Dec(0)
ONE = Dec(1)
ULP = Dec.from_raw(1)  # one unit in the 18th fractional digit
