"""Coefficient rings: the rationals, prime fields, and the integers.

Scalars are plain Python objects (Fraction for Q, int for F_p and Z); the ring
object only bundles the arithmetic, so vectors and matrices stay cheap dicts.
All arithmetic is exact; nothing here ever touches floats.
"""

from fractions import Fraction

from .errors import IntegerRingNotSupported, ParseError

_RING_NAMES = {"q": "Q", "z": "Z"}


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class CoefficientRing:
    """One of Rationals, PrimeField(p), Integers."""

    def __init__(self, kind, p=None):
        assert kind in ("Q", "Fp", "Z")
        if kind == "Fp":
            if p is None or not _is_prime(p):
                raise ParseError("prime field needs a prime modulus, got %r" % (p,))
        else:
            assert p is None
        self.kind = kind
        self.p = p

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def prime_field(cls, p):
        return cls("Fp", p)

    @classmethod
    def integers(cls):
        return cls("Z")

    @classmethod
    def from_name(cls, name):
        """Parse a ring label as used by manifests: q, z, f2, f5, ..."""
        s = name.strip().lower()
        if s in _RING_NAMES:
            return cls(_RING_NAMES[s])
        if s.startswith("f") and s[1:].isdigit():
            return cls.prime_field(int(s[1:]))
        raise ParseError("unknown ring %r" % (name,))

    @property
    def name(self):
        if self.kind == "Q":
            return "q"
        if self.kind == "Z":
            return "z"
        return "f%d" % self.p

    @property
    def is_field(self):
        return self.kind != "Z"

    def require_field(self, op):
        if not self.is_field:
            raise IntegerRingNotSupported("%s needs a field; use q or f<p>" % op)

    def __eq__(self, other):
        return isinstance(other, CoefficientRing) and (self.kind, self.p) == (other.kind, other.p)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "CoefficientRing(%s)" % self.name

    # -- scalar arithmetic ------------------------------------------------

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def from_int(self, n):
        if self.kind == "Q":
            return Fraction(n)
        if self.kind == "Fp":
            return n % self.p
        return int(n)

    def add(self, a, b):
        c = a + b
        return c % self.p if self.kind == "Fp" else c

    def sub(self, a, b):
        c = a - b
        return c % self.p if self.kind == "Fp" else c

    def neg(self, a):
        return (-a) % self.p if self.kind == "Fp" else -a

    def mul(self, a, b):
        c = a * b
        return c % self.p if self.kind == "Fp" else c

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            return 1 / Fraction(a)
        if self.kind == "Fp":
            return pow(a, self.p - 2, self.p)
        raise IntegerRingNotSupported("inverse over z")

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0 if self.kind == "Fp" else a == 0

    # -- serialization ----------------------------------------------------

    def scalar_to_str(self, a):
        if self.kind == "Q":
            f = Fraction(a)
            return "%d" % f.numerator if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)
        return "%d" % a

    def scalar_from_str(self, s):
        t = s.strip()
        try:
            if "/" in t:
                num, den = t.split("/")
                f = Fraction(int(num), int(den))
            else:
                f = Fraction(int(t))
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError("bad scalar literal %r" % (s,)) from e
        if self.kind == "Q":
            return f
        if f.denominator != 1:
            if self.kind == "Z":
                raise ParseError("non-integer scalar %r over z" % (s,))
            return self.mul(f.numerator % self.p, self.inv(f.denominator % self.p))
        return self.from_int(f.numerator)


RATIONALS = CoefficientRing.rationals()
INTEGERS = CoefficientRing.integers()
GF2 = CoefficientRing.prime_field(2)
