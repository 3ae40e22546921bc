"""Exact scalars: the rationals (via Fraction) and prime fields F_p."""
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatchError


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Fp:
    """Element of F_p. Mixing two different primes raises FieldMismatchError."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _other(self, o):
        if isinstance(o, Fp):
            if o.p != self.p:
                raise FieldMismatchError(f"F_{self.p} combined with F_{o.p}")
            return o.v
        if isinstance(o, int):
            return o
        if isinstance(o, Fraction):
            raise FieldMismatchError(f"F_{self.p} combined with a rational")
        return None

    def __add__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(self.v - w, self.p)

    def __rsub__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(w - self.v, self.p)

    def __mul__(self, o):
        w = self._other(o)
        return NotImplemented if w is None else Fp(self.v * w, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __pos__(self):
        return self

    def inverse(self):
        if self.v == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return self * Fp(w, self.p).inverse()

    def __rtruediv__(self, o):
        w = self._other(o)
        if w is None:
            return NotImplemented
        return Fp(w, self.p) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        return Fp(pow(self.v, k, self.p), self.p)

    def __eq__(self, o):
        if isinstance(o, Fp):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return (self.v - o) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"{self.v}"

    def signed(self):
        """Representative in (-p/2, p/2]."""
        return self.v - self.p if self.v > self.p // 2 else self.v


@dataclass(frozen=True)
class Field:
    """Scalar field descriptor. p=None means the rationals."""

    p: int = None
    allow_small_char: bool = False

    def __post_init__(self):
        if self.p is None:
            return
        if not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p in (2, 3) and not self.allow_small_char:
            raise ValueError(
                f"characteristic {self.p} needs allow_small_char=True "
                "(the identities of interest degenerate there)")

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    @property
    def is_rational(self):
        return self.p is None

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        if self.p is None:
            if isinstance(value, Fp):
                raise FieldMismatchError("F_p element used over Q")
            if isinstance(value, str):
                return Fraction(value.strip())
            if isinstance(value, float):
                raise TypeError("floats are not exact scalars")
            return Fraction(value)
        if isinstance(value, Fp):
            if value.p != self.p:
                raise FieldMismatchError(f"F_{value.p} element used over F_{self.p}")
            return value
        if isinstance(value, str):
            value = Fraction(value.strip())
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} is undefined in F_{self.p}")
            return Fp(value.numerator, self.p) / value.denominator
        if isinstance(value, float):
            raise TypeError("floats are not exact scalars")
        return Fp(int(value), self.p)

    def elements(self):
        if self.p is None:
            raise ValueError("Q is infinite")
        return [Fp(v, self.p) for v in range(self.p)]

    def contains(self, value):
        if self.p is None:
            return isinstance(value, (int, Fraction)) and not isinstance(value, bool)
        return isinstance(value, Fp) and value.p == self.p

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field()


def GF(p, allow_small_char=False):
    return Field(p, allow_small_char)


def field_from_name(name, allow_small_char=False):
    """'Q' or 'F<p>'."""
    name = name.strip()
    if name == "Q":
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return GF(int(name[1:]), allow_small_char)
    raise ValueError(f"unknown field {name!r}; expected Q or F<p>")


def field_of(value):
    if isinstance(value, Fp):
        return Field(value.p, allow_small_char=True)
    return QQ


def is_zero(value):
    return value == 0
