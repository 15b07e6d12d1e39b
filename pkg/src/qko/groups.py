"""The generalized quaternion group of 2-power order and its character theory.

The group of order ell = 2^j >= 8 is generated by a primitive (ell/2)-th root
of unity xi and the quaternion unit J, subject to J^2 = xi^(ell/4) and
J xi J^(-1) = xi^(-1).  Elements are written xi^a J^b with a mod ell/2 and
b in {0, 1}.  Character values live in the cyclotomic field of conductor
ell/2, handled exactly by :mod:`qko.cyclotomic`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple, Sequence

from .cyclotomic import Cyclo, NotRationalError


class InvalidParamsError(ValueError):
    """Raised for a group order that is not a 2-power >= 8."""


class NotVirtualError(ArithmeticError):
    """Raised when a class function has a non-integral irreducible multiplicity."""


@dataclass(frozen=True)
class GroupParams:
    """The order ell = 2^j >= 8 of the quaternion group under study."""

    ell: int

    def __post_init__(self) -> None:
        if self.ell < 8 or self.ell & (self.ell - 1):
            raise InvalidParamsError(f"group order must be a power of two >= 8, got {self.ell}")

    @property
    def j(self) -> int:
        return self.ell.bit_length() - 1

    @property
    def half(self) -> int:
        return self.ell // 2

    @property
    def quarter(self) -> int:
        return self.ell // 4

    @property
    def eighth(self) -> int:
        return self.ell // 8

    @property
    def conductor(self) -> int:
        """Conductor of the field containing all character values."""
        return self.half


class GroupElement(NamedTuple):
    """xi^a J^b, with a reduced mod ell/2 and b mod 2."""

    a: int
    b: int


class Subgroup(Enum):
    """The full group or one of its three non-conjugate order-4 cyclic subgroups."""

    FULL = "full"
    GEN_I = "I"        # generated by I = xi^(ell/8)
    GEN_J = "J"        # generated by J
    GEN_XI_J = "xiJ"   # generated by xi*J


class QuaternionGroup:
    """Multiplication table, conjugacy classes and subgroups for fixed ell."""

    def __init__(self, params: GroupParams) -> None:
        self.params = params
        self.identity = GroupElement(0, 0)
        self.elements = tuple(GroupElement(a, b)
                              for b in (0, 1) for a in range(params.half))
        self._classes = self._conjugacy_classes()
        self._class_index = {g: idx for idx, (rep, _) in enumerate(self._classes)
                             for g in self._class_members(rep)}

    def element(self, a: int, b: int) -> GroupElement:
        return GroupElement(a % self.params.half, b % 2)

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        a = g.a + (h.a if g.b == 0 else -h.a)
        if g.b and h.b:
            a += self.params.quarter  # J^2 = xi^(ell/4)
        return self.element(a, g.b + h.b)

    def inverse(self, g: GroupElement) -> GroupElement:
        if g.b == 0:
            return self.element(-g.a, 0)
        return self.element(g.a + self.params.quarter, 1)

    def square(self, g: GroupElement) -> GroupElement:
        return self.mul(g, g)

    def order_of(self, g: GroupElement) -> int:
        power, n = g, 1
        while power != self.identity:
            power = self.mul(power, g)
            n += 1
        return n

    def conjugate_of(self, x: GroupElement, by: GroupElement) -> GroupElement:
        return self.mul(self.mul(by, x), self.inverse(by))

    def _orbit(self, x: GroupElement) -> frozenset[GroupElement]:
        return frozenset(self.conjugate_of(x, g) for g in self.elements)

    def _conjugacy_classes(self) -> tuple[tuple[GroupElement, int], ...]:
        seen: set[GroupElement] = set()
        orbits = []
        for x in self.elements:
            if x in seen:
                continue
            orbit = self._orbit(x)
            seen.update(orbit)
            orbits.append(orbit)
        quarter = self.params.quarter

        def key(orbit: frozenset[GroupElement]) -> tuple[int, int]:
            rep = min(orbit)
            if rep.b:
                return (3, rep.a)      # J class, then xi*J class
            if rep.a == 0:
                return (0, 0)          # identity
            if rep.a == quarter:
                return (1, 0)          # -1
            return (2, rep.a)

        orbits.sort(key=key)
        return tuple((min(orbit), len(orbit)) for orbit in orbits)

    def _class_members(self, rep: GroupElement) -> frozenset[GroupElement]:
        return self._orbit(rep)

    @property
    def classes(self) -> tuple[tuple[GroupElement, int], ...]:
        return self._classes

    def class_index(self, g: GroupElement) -> int:
        return self._class_index[self.element(g.a, g.b)]

    def subgroup_elements(self, which: Subgroup) -> tuple[GroupElement, ...]:
        if which is Subgroup.FULL:
            return self.elements
        generator = {
            Subgroup.GEN_I: self.element(self.params.eighth, 0),
            Subgroup.GEN_J: self.element(0, 1),
            Subgroup.GEN_XI_J: self.element(1, 1),
        }[which]
        out = [self.identity]
        g = generator
        while g != self.identity:
            out.append(g)
            g = self.mul(g, generator)
        return tuple(out)

    def element_name(self, g: GroupElement) -> str:
        g = self.element(g.a, g.b)
        if g.b == 0:
            if g.a == 0:
                return "1"
            if g.a == self.params.quarter:
                return "-1"
            return f"xi^{g.a}"
        if g.a == 0:
            return "J"
        if g.a == 1:
            return "xi*J"
        return f"xi^{g.a}*J"


@lru_cache(maxsize=None)
def quaternion_group(params: GroupParams) -> QuaternionGroup:
    return QuaternionGroup(params)


def conjugacy_classes(params: GroupParams) -> tuple[tuple[GroupElement, int], ...]:
    """Class representatives and sizes, ordered 1, -1, xi^a (a ascending), J, xi*J."""
    return quaternion_group(params).classes


# ---------------------------------------------------------------------------
# Irreducible characters
# ---------------------------------------------------------------------------

_ONE_DIM = {
    # label: (value at xi, value at J)
    "rho0": (1, 1),
    "kappa1": (-1, 1),
    "kappa2": (1, -1),
    "kappa3": (-1, -1),
}


def irreducible_labels(params: GroupParams) -> tuple[str, ...]:
    """The ell/4 + 3 irreducible characters: four 1-dimensional, the rest 2-dimensional."""
    return tuple(_ONE_DIM) + tuple(f"gamma{u}" for u in range(1, params.quarter))


def char_dim(label: str) -> int:
    return 1 if label in _ONE_DIM else 2


def _gamma_index(label: str) -> int | None:
    if label.startswith("gamma"):
        return int(label[5:])
    return None


def gamma_trace(params: GroupParams, u: int, g: GroupElement) -> Cyclo:
    """Trace of the 2-dimensional representation indexed by u (any integer u)."""
    group = quaternion_group(params)
    g = group.element(g.a, g.b)
    if g.b:
        return Cyclo.zero(params.conductor)
    return (Cyclo.root_of_unity(params.conductor, u * g.a)
            + Cyclo.root_of_unity(params.conductor, -u * g.a))


def gamma_matrix(params: GroupParams, u: int, g: GroupElement) -> tuple[tuple[Cyclo, ...], ...]:
    """The explicit 2x2 unitary matrix of the representation indexed by u at g."""
    group = quaternion_group(params)
    g = group.element(g.a, g.b)
    m = params.conductor
    zero = Cyclo.zero(m)
    za = Cyclo.root_of_unity(m, u * g.a)
    zb = Cyclo.root_of_unity(m, -u * g.a)
    if g.b == 0:
        return ((za, zero), (zero, zb))
    sign = Cyclo.rational((-1) ** (u % 2), m)
    return ((zero, sign * za), (zb, zero))


@lru_cache(maxsize=None)
def _char_value(params: GroupParams, label: str, a: int, b: int) -> Cyclo:
    u = _gamma_index(label)
    if u is not None:
        return gamma_trace(params, u, GroupElement(a, b))
    sx, sj = _ONE_DIM[label]
    return Cyclo.rational(sx ** (a % 2) * sj ** b, params.conductor)


def char_value(params: GroupParams, label: str, g: GroupElement) -> Cyclo:
    """Value of the irreducible character at a group element."""
    if label not in irreducible_labels(params):
        raise ValueError(f"unknown irreducible label {label!r} for ell={params.ell}")
    g = quaternion_group(params).element(g.a, g.b)
    return _char_value(params, label, g.a, g.b)


def det_one_minus_gamma(params: GroupParams, u: int, g: GroupElement) -> Cyclo:
    """det(I - M) for the explicit 2x2 matrix M of the representation u at g."""
    (m00, m01), (m10, m11) = gamma_matrix(params, u, g)
    one = Cyclo.one(params.conductor)
    return (one - m00) * (one - m11) - m01 * m10


# ---------------------------------------------------------------------------
# Virtual characters
# ---------------------------------------------------------------------------

class VirtualCharacter:
    """An integer combination of irreducible characters, used as a class function.

    The multiplicity vector is the canonical exact form; the value vector on
    conjugacy-class representatives is derived (and cached) from it.
    """

    __slots__ = ("params", "_mults", "_values")

    def __init__(self, params: GroupParams, mults: Mapping[str, int]) -> None:
        labels = irreducible_labels(params)
        clean = {}
        for label, m in mults.items():
            if label not in labels:
                raise ValueError(f"unknown irreducible label {label!r} for ell={params.ell}")
            if int(m) != m:
                raise NotVirtualError(f"multiplicity of {label} is not an integer: {m}")
            if m:
                clean[label] = int(m)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "_mults", tuple(sorted(clean.items(),
                                                        key=lambda kv: labels.index(kv[0]))))
        object.__setattr__(self, "_values", None)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("VirtualCharacter values are immutable")

    @classmethod
    def zero(cls, params: GroupParams) -> VirtualCharacter:
        return cls(params, {})

    @classmethod
    def irreducible(cls, params: GroupParams, label: str) -> VirtualCharacter:
        return cls(params, {label: 1})

    @property
    def mults(self) -> dict[str, int]:
        return dict(self._mults)

    def coefficient(self, label: str) -> int:
        return dict(self._mults).get(label, 0)

    @property
    def dimension(self) -> int:
        return sum(m * char_dim(label) for label, m in self._mults)

    def class_values(self) -> tuple[Cyclo, ...]:
        cached = self._values
        if cached is None:
            reps = conjugacy_classes(self.params)
            zero = Cyclo.zero(self.params.conductor)
            cached = tuple(
                sum((m * char_value(self.params, label, rep) for label, m in self._mults),
                    zero)
                for rep, _ in reps)
            object.__setattr__(self, "_values", cached)
        return cached

    def value(self, g: GroupElement) -> Cyclo:
        idx = quaternion_group(self.params).class_index(g)
        return self.class_values()[idx]

    def _binary(self, other: VirtualCharacter, sign: int) -> VirtualCharacter:
        if self.params != other.params:
            raise ValueError("virtual characters live over different groups")
        mults = self.mults
        for label, m in other._mults:
            mults[label] = mults.get(label, 0) + sign * m
        return VirtualCharacter(self.params, mults)

    def __add__(self, other: VirtualCharacter) -> VirtualCharacter:
        return self._binary(other, 1)

    def __sub__(self, other: VirtualCharacter) -> VirtualCharacter:
        return self._binary(other, -1)

    def __neg__(self) -> VirtualCharacter:
        return VirtualCharacter(self.params, {label: -m for label, m in self._mults})

    def __mul__(self, other: object) -> VirtualCharacter:
        if not isinstance(other, int):
            return NotImplemented
        return VirtualCharacter(self.params, {label: other * m for label, m in self._mults})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VirtualCharacter):
            return NotImplemented
        return self.params == other.params and self._mults == other._mults

    def __hash__(self) -> int:
        return hash((self.params, self._mults))

    def __repr__(self) -> str:
        if not self._mults:
            return "0"
        parts = []
        for label, m in self._mults:
            if m == 1:
                text = label
            elif m == -1:
                text = f"-{label}"
            else:
                text = f"{m}*{label}"
            parts.append(text)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


def inner_product(f1: VirtualCharacter, f2: VirtualCharacter) -> Fraction:
    """The class-function inner product (1/ell) * sum_g f1(g) conj(f2(g))."""
    if f1.params != f2.params:
        raise ValueError("virtual characters live over different groups")
    params = f1.params
    total = Cyclo.zero(params.conductor)
    for (rep, size), v1, v2 in zip(conjugacy_classes(params),
                                   f1.class_values(), f2.class_values()):
        total = total + size * (v1 * v2.conjugate())
    return (total.to_rational()) / params.ell


def decompose(params: GroupParams, values: Sequence[Cyclo | Fraction | int]) -> VirtualCharacter:
    """Expand a class function, given by its values on the class representatives
    in the :func:`conjugacy_classes` order, over the irreducible characters.

    Raises :class:`NotVirtualError` if any multiplicity is non-integral.
    """
    classes = conjugacy_classes(params)
    if len(values) != len(classes):
        raise ValueError(f"expected {len(classes)} class values, got {len(values)}")
    vals = [v if isinstance(v, Cyclo) else Cyclo.rational(v, params.conductor)
            for v in values]
    mults = {}
    for label in irreducible_labels(params):
        total = Cyclo.zero(params.conductor)
        for (rep, size), v in zip(classes, vals):
            total = total + size * (v * char_value(params, label, rep).conjugate())
        m = total.to_rational() / params.ell
        if m.denominator != 1:
            raise NotVirtualError(f"multiplicity of {label} is {m}, not an integer")
        mults[label] = int(m)
    return VirtualCharacter(params, mults)


# ---------------------------------------------------------------------------
# The distinguished class functions and constants
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def theta(i: int, params: GroupParams) -> VirtualCharacter:
    """The dimension-zero class function supported on the order-4 elements:
    ell/4 at +-I, -2 on the xi^even*J class (i=1) or the xi^odd*J class (i=2).
    """
    if i not in (1, 2):
        raise ValueError(f"theta index must be 1 or 2, got {i}")
    values = []
    for rep, _ in conjugacy_classes(params):
        if rep.b == 0 and rep.a == params.eighth:
            values.append(Fraction(params.quarter))
        elif rep.b == 1 and rep.a == (0 if i == 1 else 1):
            values.append(Fraction(-2))
        else:
            values.append(Fraction(0))
    return decompose(params, values)


def delta(params: GroupParams) -> VirtualCharacter:
    """The virtual character 2*rho0 - gamma1; its class function is det(I - gamma1(.))."""
    return VirtualCharacter(params, {"rho0": 2, "gamma1": -1})


@lru_cache(maxsize=None)
def delta_power(r: int, params: GroupParams) -> VirtualCharacter:
    """The r-th pointwise power of delta's class function, re-expanded (r >= 1)."""
    if r < 1:
        raise ValueError(f"delta_power needs r >= 1, got {r}")
    values = [det_one_minus_gamma(params, 1, rep) ** r
              for rep, _ in conjugacy_classes(params)]
    return decompose(params, values)


@lru_cache(maxsize=None)
def c_constant(i: int, params: GroupParams) -> Fraction:
    """(1/ell) * sum over nonidentity g of det(I - gamma1(g))^i; i may be negative."""
    total = Cyclo.zero(params.conductor)
    for rep, size in conjugacy_classes(params):
        if rep == GroupElement(0, 0):
            continue
        total = total + size * (det_one_minus_gamma(params, 1, rep) ** i)
    return total.to_rational() / params.ell


def fs_indicator(params: GroupParams, label: str) -> int:
    """Frobenius-Schur indicator: +1 real type, -1 quaternion type, 0 complex type."""
    group = quaternion_group(params)
    total = Cyclo.zero(params.conductor)
    for g in group.elements:
        total = total + char_value(params, label, group.square(g))
    value = total.to_rational() / params.ell
    if value.denominator != 1 or value not in (-1, 0, 1):
        raise ArithmeticError(f"indicator of {label} came out as {value}")
    return int(value)


_RINGS = ("RU", "RU0", "RO", "RO0", "RSp", "RSp0")


def membership(sigma: VirtualCharacter, ring: str) -> bool:
    """Whether sigma lies in the stated lattice of the unitary representation ring.

    The real span has 2*gamma_odd but plain gamma_even and 1-dim generators;
    the quaternionic span doubles exactly the complementary generators.  The
    trailing 0 adds the dimension-zero condition.
    """
    if ring not in _RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {_RINGS}")
    if ring.endswith("0") and sigma.dimension != 0:
        return False
    base = ring.rstrip("0")
    if base == "RU":
        return True
    for label, m in sigma.mults.items():
        u = _gamma_index(label)
        if base == "RO":
            doubled = u is not None and u % 2 == 1
        else:  # RSp
            doubled = u is None or u % 2 == 0
        if doubled and m % 2:
            return False
    return True


# ---------------------------------------------------------------------------
# Fixed point free representations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FpfRep:
    """A direct sum of 2-dimensional representations indexed by odd integers,
    acting freely on the unit sphere in C^(2*nu)."""

    params: GroupParams
    summands: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(int(s) for s in self.summands))
        if not self.summands:
            raise ValueError("a fixed point free representation needs at least one summand")
        for s in self.summands:
            if s % 2 == 0:
                raise ValueError(f"summand index {s} is even, so the action has fixed points")

    @property
    def nu(self) -> int:
        return len(self.summands)

    @property
    def dim(self) -> int:
        return 2 * len(self.summands)


def standard_fpf(params: GroupParams, nu: int) -> FpfRep:
    """nu copies of the index-1 summand; the 'which tau' choice never matters."""
    if nu < 1:
        raise ValueError(f"need nu >= 1, got {nu}")
    return FpfRep(params, (1,) * nu)


def det_I_minus(tau: FpfRep, g: GroupElement) -> Cyclo:
    """det(I - tau(g)), the product of the per-summand 2x2 determinants."""
    result = Cyclo.one(tau.params.conductor)
    for s in tau.summands:
        result = result * det_one_minus_gamma(tau.params, s, g)
    return result


def is_fixed_point_free(params: GroupParams, summands: Iterable[int]) -> bool:
    """True iff det(I - rep(g)) is nonzero for every g != 1 (no parity assumption)."""
    summands = tuple(int(s) for s in summands)
    if not summands:
        return False
    group = quaternion_group(params)
    for g in group.elements:
        if g == group.identity:
            continue
        value = Cyclo.one(params.conductor)
        for s in summands:
            value = value * det_one_minus_gamma(params, s, g)
        if value.is_zero():
            return False
    return True
