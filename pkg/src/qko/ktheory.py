"""Eta-invariant pairing matrices and the K-group structures they cut out.

For the dimension 4*nu-1 quotient of the sphere by the full quaternion group,
the vector of eta invariants against the scheduled twists maps the subgroup
of KSp spanned by the standard virtual bundles onto a block-diagonal matrix
in (Q/2Z)^(nu+1): a 2x2 block A from the theta classes and an
(nu-1)x(nu-1) block B from the powers of delta.  The connective real
K-groups of the classifying space are hit the same way by manifold
generators (lens-space differences and products with the auxiliary
A-roof-genus manifolds), giving blocks C and B with a dimension shift of one.
The group structures are read off with exact Smith-form quotients.

Coefficient schedules: a generator delta^i carries 2 when i is even and 1
when i is odd (making it quaternionic); a twist delta^j carries the
complementary parity when nu is even (real twists) and the same parity when
nu is odd (quaternionic twists), and the theta twists carry 1 for nu even
and 2 for nu odd.  The ko-side schedule at degree 4k-1 equals the KSp-side
schedule at nu = k+1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .abelian import AbelianGroup, quotient_group
from .cyclotomic import Mod2Z
from .eta import EtaValue, eta_lens_difference, eta_pair, quaternion_space
from .groups import (
    GroupParams,
    Subgroup,
    VirtualCharacter,
    c_constant,
    delta_power,
    theta,
)


class StructureMismatchError(RuntimeError):
    """A computed matrix or group contradicts its independently known shape."""


def _theta_twist_coeff(nu: int) -> int:
    return 1 if nu % 2 == 0 else 2


def _delta_twist_coeff(nu: int, j: int) -> int:
    if nu % 2 == 0:
        return 2 if j % 2 == 1 else 1
    return 2 if j % 2 == 0 else 1


def _delta_generator_coeff(i: int) -> int:
    return 2 if i % 2 == 0 else 1


def _coeff_label(coeff: int, base: str) -> str:
    return base if coeff == 1 else f"{coeff}*{base}"


def twist_schedule(nu: int, params: GroupParams) -> tuple[tuple[str, VirtualCharacter], ...]:
    """The nu+1 twisting characters of the eta vector, coefficients included."""
    ct = _theta_twist_coeff(nu)
    out = [(_coeff_label(ct, "Theta1"), ct * theta(1, params)),
           (_coeff_label(ct, "Theta2"), ct * theta(2, params))]
    for j in range(1, nu):
        cj = _delta_twist_coeff(nu, j)
        out.append((_coeff_label(cj, f"Delta^{j}"), cj * delta_power(j, params)))
    return tuple(out)


def ksp_generators(nu: int, params: GroupParams) -> tuple[tuple[str, VirtualCharacter], ...]:
    """The nu+1 quaternionic virtual bundle classes spanning the KSp image."""
    out = [("2*Theta1", 2 * theta(1, params)),
           ("2*Theta2", 2 * theta(2, params))]
    for i in range(1, nu):
        ci = _delta_generator_coeff(i)
        out.append((_coeff_label(ci, f"Delta^{i}"), ci * delta_power(i, params)))
    return tuple(out)


@dataclass(frozen=True)
class EtaMatrix:
    """A matrix of eta invariants in Q/2Z: generator rows against twist columns."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    entries: tuple[tuple[Mod2Z, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_labels), len(self.col_labels))

    def rows(self) -> list[list[Fraction]]:
        return [[e.rep for e in row] for row in self.entries]

    def submatrix(self, row_range: range, col_range: range) -> EtaMatrix:
        return EtaMatrix(
            tuple(self.row_labels[i] for i in row_range),
            tuple(self.col_labels[j] for j in col_range),
            tuple(tuple(self.entries[i][j] for j in col_range) for i in row_range),
        )

    def span(self) -> AbelianGroup:
        return quotient_group(self.rows())


@lru_cache(maxsize=None)
def ksp_eta_matrix(nu: int, params: GroupParams) -> EtaMatrix:
    """The full (nu+1)x(nu+1) pairing matrix for KSp of the 4*nu-1 space form."""
    if nu < 2:
        raise ValueError(f"need nu >= 2, got {nu}")
    space = quaternion_space(params, nu)
    gens = ksp_generators(nu, params)
    twists = twist_schedule(nu, params)
    entries = tuple(
        tuple(eta_pair(space, sigma, bundle).residue for _, sigma in twists)
        for _, bundle in gens)
    return EtaMatrix(tuple(lbl for lbl, _ in gens), tuple(lbl for lbl, _ in twists), entries)


@lru_cache(maxsize=None)
def ko_eta_matrix(k: int, params: GroupParams) -> EtaMatrix:
    """The full (k+2)x(k+2) pairing matrix for ko in degree 4k-1, from manifold
    generators: two lens-space differences, then products of the top space form
    with the auxiliary manifolds."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    twists = twist_schedule(k + 1, params)
    row_labels = []
    rows = []
    for name, subtrahend in (("M_I - M_J", Subgroup.GEN_J),
                             ("M_I - M_xiJ", Subgroup.GEN_XI_J)):
        row_labels.append(f"{name} (dim {4 * k - 1})")
        rows.append(tuple(eta_lens_difference(subtrahend, k, sigma, params).residue
                          for _, sigma in twists))
    for mu in range(k):
        space = quaternion_space(params, k - mu, z_factor=mu)
        label = f"M_Q^{4 * (k - mu) - 1}"
        if mu:
            label += f" x Z^{4 * mu}"
        row_labels.append(label)
        rows.append(tuple(eta_pair(space, sigma).residue for _, sigma in twists))
    return EtaMatrix(tuple(row_labels), tuple(lbl for lbl, _ in twists), tuple(rows))


def _closed_form_a(nu: int, params: GroupParams) -> list[list[Fraction]]:
    scale = Fraction(2) ** ((1 if nu % 2 == 0 else 2) - nu)
    side = params.ell // 8
    return [[scale * (side + 1), scale * side], [scale * side, scale * (side + 1)]]


def matrix_A(nu: int, params: GroupParams) -> EtaMatrix:
    """The 2x2 theta block, checked entry-by-entry against its closed form."""
    block = ksp_eta_matrix(nu, params).submatrix(range(2), range(2))
    expected = _closed_form_a(nu, params)
    for i in range(2):
        for j in range(2):
            if block.entries[i][j] != Mod2Z(expected[i][j]):
                raise StructureMismatchError(
                    f"theta block ({i},{j}) is {block.entries[i][j]}, "
                    f"expected {Mod2Z(expected[i][j])}")
    return block


def matrix_B(nu: int, params: GroupParams) -> EtaMatrix:
    """The (nu-1)x(nu-1) delta block, checked against the coefficient-scheduled
    c-constant pattern entry(i,j) = eps_i * delta_j * c_{i+j-nu}."""
    full = ksp_eta_matrix(nu, params)
    block = full.submatrix(range(2, nu + 1), range(2, nu + 1))
    for i in range(1, nu):
        for j in range(1, nu):
            expected = Mod2Z(_delta_generator_coeff(i) * _delta_twist_coeff(nu, j)
                             * c_constant(i + j - nu, params))
            if block.entries[i - 1][j - 1] != expected:
                raise StructureMismatchError(
                    f"delta block ({i},{j}) is {block.entries[i - 1][j - 1]}, "
                    f"expected {expected}")
    return block


def _closed_form_c(k: int, params: GroupParams) -> list[list[Fraction]]:
    # the printed normal form: scaled [[2,1],[1,2]] for ell = 8, scaled identity above
    scale = _theta_twist_coeff(k + 1) * Fraction(1, 2 ** k)
    if params.ell == 8:
        return [[scale * 2, scale], [scale, scale * 2]]
    return [[scale, Fraction(0)], [Fraction(0), scale]]


def matrix_C(k: int, params: GroupParams) -> EtaMatrix:
    """The 2x2 lens-difference block.  For ell = 8 the printed normal form is
    matched entry-by-entry; for larger ell the directly computed matrix is a
    row-equivalent of the printed one, so only the spans are compared."""
    block = ko_eta_matrix(k, params).submatrix(range(2), range(2))
    expected = _closed_form_c(k, params)
    if params.ell == 8:
        for i in range(2):
            for j in range(2):
                if block.entries[i][j] != Mod2Z(expected[i][j]):
                    raise StructureMismatchError(
                        f"lens block ({i},{j}) is {block.entries[i][j]}, "
                        f"expected {Mod2Z(expected[i][j])}")
    else:
        if block.span() != quotient_group(expected):
            raise StructureMismatchError(
                f"lens block spans {block.span()}, printed form spans "
                f"{quotient_group(expected)}")
    return block


def matrix_B_manifold(k: int, params: GroupParams) -> EtaMatrix:
    """The ko-side delta block, built from the manifold generators."""
    return ko_eta_matrix(k, params).submatrix(range(2, k + 2), range(2, k + 2))


def ahss_order_bound(nu: int, params: GroupParams) -> int:
    """Order bound from the spectral-sequence page for the 4*nu-1 quotient.

    Tabulates the nonzero reduced-cohomology contributions in total degree
    zero: one cyclic factor of order ell for each u = 0, 4 mod 8 with
    0 < u < 4*nu - 1 (integral coefficients), and a Klein four-group for each
    u = 5, 6 mod 8 with u <= 4*nu - 1 (where the coefficient group is Z_2).
    """
    if nu < 2:
        raise ValueError(f"need nu >= 2, got {nu}")
    top = 4 * nu - 1
    bound = 1
    for u in range(1, top + 1):
        if u % 8 in (0, 4) and u < top:
            bound *= params.ell
        elif u % 8 in (5, 6):
            bound *= 4
    return bound


@dataclass(frozen=True)
class KGroupReport:
    """A computed K-group: its structure, the per-block structures, and the
    matrices the computation went through."""

    kind: str                 # "ksp" or "ko"
    params: GroupParams
    index: int                # nu for ksp, k for ko
    group: AbelianGroup
    a_block: AbelianGroup
    b_block: AbelianGroup
    order: int
    ahss_bound: int
    matrix: EtaMatrix
    a_matrix: EtaMatrix
    b_matrix: EtaMatrix
    splitting: tuple[tuple[str, str], ...]


_SPLITTING_A = "two copies of ko(desuspended BS^3/BN); the theta/lens rows"
_SPLITTING_B = "ko(B SL_2(F_q)); the delta-power rows"


def _check_off_blocks(full: EtaMatrix, split: int) -> None:
    n_rows, n_cols = full.shape
    for i in range(n_rows):
        for j in range(n_cols):
            if (i < split) == (j < split):
                continue
            if full.entries[i][j] != Mod2Z(0):
                raise StructureMismatchError(
                    f"off-diagonal block entry ({full.row_labels[i]}, "
                    f"{full.col_labels[j]}) is {full.entries[i][j]}, expected 0")


def _assemble(kind: str, index: int, params: GroupParams, full: EtaMatrix,
              a_matrix: EtaMatrix, b_matrix: EtaMatrix,
              expected_a_exponent: int, bound: int) -> KGroupReport:
    _check_off_blocks(full, 2)
    group = full.span()
    a_block = a_matrix.span()
    b_block = b_matrix.span()
    expected_a = AbelianGroup((2 ** expected_a_exponent,) * 2)
    if a_block != expected_a:
        raise StructureMismatchError(
            f"{kind} theta/lens block is {a_block}, expected {expected_a}")
    if group != a_block.direct_sum(b_block):
        raise StructureMismatchError(
            f"{kind} group {group} is not the direct sum of its blocks "
            f"{a_block} and {b_block}")
    return KGroupReport(
        kind=kind, params=params, index=index, group=group,
        a_block=a_block, b_block=b_block, order=group.order, ahss_bound=bound,
        matrix=full, a_matrix=a_matrix, b_matrix=b_matrix,
        splitting=(("A", _SPLITTING_A), ("B", _SPLITTING_B)),
    )


@lru_cache(maxsize=None)
def ksp_group(nu: int, params: GroupParams) -> KGroupReport:
    """Structure of KSp of the 4*nu-1 dimensional quaternion space form (nu >= 2)."""
    if nu < 2:
        raise ValueError(f"need nu >= 2, got {nu}")
    full = ksp_eta_matrix(nu, params)
    exponent = nu if nu % 2 == 0 else nu - 1
    return _assemble("ksp", nu, params, full,
                     matrix_A(nu, params), matrix_B(nu, params),
                     exponent, ahss_order_bound(nu, params))


@lru_cache(maxsize=None)
def ko_group(k: int, params: GroupParams) -> KGroupReport:
    """Structure of the degree 4k-1 real connective K-group of the classifying
    space (k >= 1).  Uses the dimension shift nu = k + 1 throughout."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    full = ko_eta_matrix(k, params)
    exponent = k if k % 2 == 0 else k + 1
    return _assemble("ko", k, params, full,
                     matrix_C(k, params), matrix_B_manifold(k, params),
                     exponent, ahss_order_bound(k + 1, params))


def ksp_order_formula(nu: int, params: GroupParams) -> int:
    """Closed form for |KSp|: 4^nu ell^(nu-1) for even nu, 4^(nu-1) ell^(nu-1) odd."""
    return 4 ** (nu if nu % 2 == 0 else nu - 1) * params.ell ** (nu - 1)


def ko_order_formula(k: int, params: GroupParams) -> int:
    """Closed form for |ko|: 4^k ell^k for even k, 4^(k+1) ell^k for odd k."""
    return 4 ** (k if k % 2 == 0 else k + 1) * params.ell ** k


def ko_ksp_isomorphism_check(k: int, params: GroupParams) -> bool:
    """Whether ko in degree 4k-1 and KSp of the 4(k+1)-1 space form agree as
    abstract abelian groups (invariant factors compared exactly)."""
    return (ko_group(k, params).group.invariant_factors
            == ksp_group(k + 1, params).group.invariant_factors)
