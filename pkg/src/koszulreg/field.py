"""Exact coefficient fields: the rationals and prime fields GF(p)."""

from dataclasses import dataclass
from fractions import Fraction

DEFAULT_PRIME = 32003


def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A coefficient field, identified by its characteristic (0 means QQ).

    Scalars are plain Python values in canonical form: ``int`` residues in
    ``[0, p)`` for GF(p), reduced ``Fraction`` objects for QQ.
    """

    characteristic: int = DEFAULT_PRIME

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"GF({p}): characteristic must be prime")

    @property
    def name(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __repr__(self):
        return self.name

    def __call__(self, x):
        p = self.characteristic
        if p:
            if isinstance(x, Fraction):
                return (x.numerator * pow(x.denominator, -1, p)) % p
            return int(x) % p
        return Fraction(x)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def add(self, a, b):
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a, b):
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a, b):
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a):
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self):
        return self.name

    @classmethod
    def parse(cls, text):
        """Accept ``QQ``, ``GF(p)``, ``GF:p`` or a bare prime."""
        t = text.strip().replace(" ", "")
        if t.upper() in ("QQ", "Q", "0"):
            return cls(0)
        for prefix in ("GF(", "GF:", "ZZ/"):
            if t.upper().startswith(prefix):
                t = t[len(prefix):].rstrip(")")
                break
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"cannot parse field {text!r}") from None


QQ = Field(0)
GF32003 = Field(DEFAULT_PRIME)


def GF(p):
    return Field(p)
