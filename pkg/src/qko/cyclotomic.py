"""Exact arithmetic in 2-power cyclotomic fields and in the circle group Q/2Z.

A :class:`Cyclo` stores an element of Q(zeta_m), m a power of two, by its
coordinates in the power basis {1, zeta, ..., zeta^(m/2 - 1)}.  Because the
minimal polynomial of zeta over Q is x^(m/2) + 1, that representation is
unique and equality is coefficient-wise.  All coefficients are
:class:`fractions.Fraction`; nothing in this module rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

Scalar = Union[int, Fraction]


class ZeroInverseError(ZeroDivisionError):
    """Raised when inverting the zero cyclotomic number."""


class NotRationalError(ArithmeticError):
    """Raised when a value expected to be rational has irrational parts."""


def _check_conductor(m: int) -> None:
    if m < 2 or m & (m - 1):
        raise ValueError(f"conductor must be a power of two >= 2, got {m}")


class Cyclo:
    """An element of the cyclotomic field of 2-power conductor.

    ``Cyclo(8, [2, -1, 0, -1])`` is 2 - zeta - zeta^3 with zeta = zeta_8.
    Mixed-conductor arithmetic embeds the smaller field into the larger one.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence[Scalar]) -> None:
        _check_conductor(conductor)
        n = conductor // 2
        if len(coeffs) != n:
            raise ValueError(f"conductor {conductor} needs {n} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Cyclo values are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, conductor: int = 2) -> Cyclo:
        return cls(conductor, [0] * (conductor // 2))

    @classmethod
    def one(cls, conductor: int = 2) -> Cyclo:
        return cls.rational(1, conductor)

    @classmethod
    def rational(cls, value: Scalar, conductor: int = 2) -> Cyclo:
        coeffs = [Fraction(value)] + [Fraction(0)] * (conductor // 2 - 1)
        return cls(conductor, coeffs)

    @classmethod
    def root_of_unity(cls, conductor: int, power: int = 1) -> Cyclo:
        """zeta_m^power, reduced into the power basis via zeta^(m/2) = -1."""
        _check_conductor(conductor)
        n = conductor // 2
        e = power % conductor
        coeffs = [Fraction(0)] * n
        if e < n:
            coeffs[e] = Fraction(1)
        else:
            coeffs[e - n] = Fraction(-1)
        return cls(conductor, coeffs)

    # -- conductor handling ------------------------------------------------

    def lift(self, conductor: int) -> Cyclo:
        """Embed into the field of the given (larger 2-power) conductor."""
        _check_conductor(conductor)
        if conductor == self.conductor:
            return self
        if conductor < self.conductor or conductor % self.conductor:
            raise ValueError(f"cannot embed conductor {self.conductor} into {conductor}")
        step = conductor // self.conductor
        coeffs = [Fraction(0)] * (conductor // 2)
        for i, c in enumerate(self.coeffs):
            coeffs[i * step] = c
        return Cyclo(conductor, coeffs)

    def reduced(self) -> Cyclo:
        """The same value at the smallest possible 2-power conductor."""
        m, coeffs = self.conductor, list(self.coeffs)
        while m > 2 and not any(coeffs[1::2]):
            m //= 2
            coeffs = coeffs[::2]
        return Cyclo(m, coeffs)

    def _pair(self, other: Cyclo) -> tuple[Cyclo, Cyclo]:
        m = max(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def _coerce(self, other: object) -> "Cyclo | None":
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclo.rational(other, self.conductor)
        return None

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: object) -> Cyclo:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        a, b = self._pair(rhs)
        return Cyclo(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> Cyclo:
        return Cyclo(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other: object) -> Cyclo:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Cyclo:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return rhs + (-self)

    def __mul__(self, other: object) -> Cyclo:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        a, b = self._pair(rhs)
        n = a.conductor // 2
        out = [Fraction(0)] * n
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if not y:
                    continue
                k = i + j
                if k < n:
                    out[k] += x * y
                else:
                    out[k - n] -= x * y
        return Cyclo(a.conductor, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Cyclo:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclo.one(self.conductor)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> Cyclo:
        """Multiplicative inverse, by solving a linear system over Q."""
        if self.is_zero():
            raise ZeroInverseError("zero has no inverse")
        n = self.conductor // 2
        # column j of the system is self * zeta^j in the power basis
        mat = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n):
            for i, c in enumerate(self.coeffs):
                k = i + j
                if k < n:
                    mat[k][j] += c
                else:
                    mat[k - n][j] -= c
        rhs = [Fraction(1)] + [Fraction(0)] * (n - 1)
        for col in range(n):
            pivot = next(r for r in range(col, n) if mat[r][col])
            if pivot != col:
                mat[col], mat[pivot] = mat[pivot], mat[col]
                rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
            inv = 1 / mat[col][col]
            mat[col] = [x * inv for x in mat[col]]
            rhs[col] *= inv
            for r in range(n):
                if r != col and mat[r][col]:
                    factor = mat[r][col]
                    mat[r] = [x - factor * y for x, y in zip(mat[r], mat[col])]
                    rhs[r] -= factor * rhs[col]
        return Cyclo(self.conductor, rhs)

    def conjugate(self) -> Cyclo:
        """Complex conjugation, the field automorphism zeta -> zeta^(-1)."""
        n = self.conductor // 2
        out = [Fraction(0)] * n
        out[0] = self.coeffs[0]
        for i in range(1, n):
            out[n - i] -= self.coeffs[i]
        return Cyclo(self.conductor, out)

    # -- predicates and extraction -----------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise NotRationalError(f"{self!r} has irrational parts")
        return self.coeffs[0]

    def __eq__(self, other: object) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        a, b = self._pair(rhs)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        small = self.reduced()
        return hash((small.conductor, small.coeffs))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"Cyclo({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            sym = f"z{self.conductor}" if i == 1 else f"z{self.conductor}^{i}"
            if c == 1:
                terms.append(sym)
            elif c == -1:
                terms.append(f"-{sym}")
            else:
                terms.append(f"{c}*{sym}")
        if not terms:
            return "0"
        text = terms[0]
        for t in terms[1:]:
            text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return text


class Mod2Z:
    """A rational residue modulo 2Z, held by its canonical representative in [0, 2)."""

    __slots__ = ("rep",)

    def __init__(self, value: Scalar) -> None:
        object.__setattr__(self, "rep", Fraction(value) % 2)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Mod2Z values are immutable")

    def __add__(self, other: object) -> Mod2Z:
        if isinstance(other, Mod2Z):
            return Mod2Z(self.rep + other.rep)
        if isinstance(other, (int, Fraction)):
            return Mod2Z(self.rep + other)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Mod2Z:
        return Mod2Z(-self.rep)

    def __sub__(self, other: object) -> Mod2Z:
        if isinstance(other, Mod2Z):
            return Mod2Z(self.rep - other.rep)
        if isinstance(other, (int, Fraction)):
            return Mod2Z(self.rep - other)
        return NotImplemented

    def __mul__(self, other: object) -> Mod2Z:
        if isinstance(other, int):
            return Mod2Z(self.rep * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mod2Z):
            return self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == Fraction(other) % 2
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Mod2Z", self.rep))

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __repr__(self) -> str:
        return f"Mod2Z({self.rep})"

    def __str__(self) -> str:
        return f"{self.rep.numerator}/{self.rep.denominator}"
