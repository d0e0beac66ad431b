"""Coefficient rings: the integers, the rationals and prime fields."""

from __future__ import annotations

from fractions import Fraction


class Ring:
    name = "?"

    def coerce(self, x):
        return x

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<ring {self.name}>"


class Integers(Ring):
    name = "Z"

    def coerce(self, x):
        return int(x)

    def is_unit(self, x) -> bool:
        return x == 1 or x == -1

    def inverse(self, x):
        if x == 1 or x == -1:
            return x
        raise ZeroDivisionError(f"{x} is not a unit in Z")


class Rationals(Ring):
    name = "Q"

    def coerce(self, x):
        x = Fraction(x)
        return int(x) if x.denominator == 1 else x

    def is_unit(self, x) -> bool:
        return x != 0

    def inverse(self, x):
        return self.coerce(Fraction(1) / x)


class PrimeField(Ring):
    def __init__(self, p: int):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"

    def coerce(self, x):
        return int(x) % self.p

    def is_unit(self, x) -> bool:
        return x % self.p != 0

    def inverse(self, x):
        return pow(int(x), -1, self.p)


ZZ = Integers()
QQ = Rationals()


def ring_from_name(name: str, p: int | None = None) -> Ring:
    """Parse ``z``, ``q``, ``fp`` (with ``p``) or ``f2``-style names."""
    key = name.strip().lower()
    if key in ("z", "zz", "int", "integers"):
        return ZZ
    if key in ("q", "qq", "rationals"):
        return QQ
    if key == "fp":
        if p is None:
            raise ValueError("ring fp needs a prime p")
        return PrimeField(p)
    if key.startswith("f") and key[1:].isdigit():
        return PrimeField(int(key[1:]))
    raise ValueError(f"unknown ring {name!r}")
