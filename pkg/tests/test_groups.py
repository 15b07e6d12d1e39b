"""Group structure and character theory of the 2-power quaternion groups."""

from fractions import Fraction

import pytest

from qko.cyclotomic import Cyclo
from qko.groups import (
    FpfRep,
    GroupElement,
    GroupParams,
    InvalidParamsError,
    NotVirtualError,
    Subgroup,
    VirtualCharacter,
    c_constant,
    char_dim,
    char_value,
    conjugacy_classes,
    decompose,
    delta,
    delta_power,
    det_I_minus,
    det_one_minus_gamma,
    fs_indicator,
    gamma_matrix,
    inner_product,
    irreducible_labels,
    is_fixed_point_free,
    membership,
    quaternion_group,
    standard_fpf,
    theta,
)

P8 = GroupParams(8)
P16 = GroupParams(16)
P32 = GroupParams(32)
P64 = GroupParams(64)
ALL = (P8, P16, P32, P64)


def test_params_validation():
    for bad in (4, 6, 12, 24, 0, -8):
        with pytest.raises(InvalidParamsError):
            GroupParams(bad)
    assert GroupParams(8).j == 3
    assert GroupParams(64).j == 6


def test_group_axioms_order_8():
    g8 = quaternion_group(P8)
    assert len(g8.elements) == 8
    for a in g8.elements:
        assert g8.mul(a, g8.inverse(a)) == g8.identity
        for b in g8.elements:
            for c in g8.elements:
                assert g8.mul(g8.mul(a, b), c) == g8.mul(a, g8.mul(b, c))


def test_multiplication_against_faithful_matrix_representation():
    # the 2x2 matrices of the index-1 summand multiply the same way
    def mat_mul(x, y):
        return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2))
                     for i in range(2))

    for params in (P8, P16):
        group = quaternion_group(params)
        for g in group.elements:
            for h in group.elements:
                lhs = gamma_matrix(params, 1, group.mul(g, h))
                rhs = mat_mul(gamma_matrix(params, 1, g), gamma_matrix(params, 1, h))
                assert lhs == rhs, (g, h)


def test_reflections_square_to_minus_one():
    for params in ALL:
        group = quaternion_group(params)
        minus_one = group.element(params.quarter, 0)
        assert group.square(group.element(0, 1)) == minus_one  # J^2
        for a in range(params.half):
            assert group.square(group.element(a, 1)) == minus_one


def test_conjugacy_class_counts_and_sizes():
    assert [s for _, s in conjugacy_classes(P8)] == [1, 1, 2, 2, 2]
    assert len(conjugacy_classes(P16)) == 7
    for params in ALL:
        classes = conjugacy_classes(params)
        assert len(classes) == params.ell // 4 + 3
        assert sum(s for _, s in classes) == params.ell


def test_class_of_J_by_brute_conjugation():
    group = quaternion_group(P8)
    j = group.element(0, 1)
    orbit = {group.mul(group.mul(g, j), group.inverse(g)) for g in group.elements}
    assert orbit == {GroupElement(0, 1), GroupElement(2, 1)}
    assert dict(conjugacy_classes(P8))[GroupElement(0, 1)] == 2


def test_brute_force_partition_matches_classes():
    for params in (P8, P16, P32):
        group = quaternion_group(params)
        orbits = set()
        for x in group.elements:
            orbits.add(frozenset(group.mul(group.mul(g, x), group.inverse(g))
                                 for g in group.elements))
        reported = {frozenset(group._class_members(rep)) for rep, _ in group.classes}
        assert orbits == reported
        assert sorted(len(o) for o in orbits) == sorted(s for _, s in group.classes)


def test_subgroup_elements():
    for params in ALL:
        group = quaternion_group(params)
        q = params.quarter
        e = params.eighth
        assert set(group.subgroup_elements(Subgroup.GEN_I)) == {
            group.element(0, 0), group.element(e, 0),
            group.element(q, 0), group.element(3 * e, 0)}
        assert set(group.subgroup_elements(Subgroup.GEN_J)) == {
            group.element(0, 0), group.element(0, 1),
            group.element(q, 0), group.element(q, 1)}
        assert set(group.subgroup_elements(Subgroup.GEN_XI_J)) == {
            group.element(0, 0), group.element(1, 1),
            group.element(q, 0), group.element(q + 1, 1)}
        for which in (Subgroup.GEN_I, Subgroup.GEN_J, Subgroup.GEN_XI_J):
            members = group.subgroup_elements(which)
            assert len(members) == 4
            assert all(group.order_of(m) in (1, 2, 4) for m in members)
        assert len(group.subgroup_elements(Subgroup.FULL)) == params.ell


def test_character_values():
    assert char_value(P8, "kappa2", GroupElement(0, 1)) == -1
    for params in (P8, P16):
        for a in range(params.half):
            assert char_value(params, "gamma1", GroupElement(a, 1)).is_zero()
    # ell=8: gamma1(xi) = i + i^(-1) = 0
    assert char_value(P8, "gamma1", GroupElement(1, 0)).is_zero()
    # ell=16: gamma1(xi) = z8 + z8^7
    expected = Cyclo.root_of_unity(8) + Cyclo.root_of_unity(8, 7)
    assert char_value(P16, "gamma1", GroupElement(1, 0)) == expected


def test_full_character_table_order_8():
    # rows rho0, kappa1..3, gamma1; columns 1, -1, xi, J, xi*J
    expected = {
        "rho0": [1, 1, 1, 1, 1],
        "kappa1": [1, 1, -1, 1, -1],
        "kappa2": [1, 1, 1, -1, -1],
        "kappa3": [1, 1, -1, -1, 1],
        "gamma1": [2, -2, 0, 0, 0],
    }
    reps = [rep for rep, _ in conjugacy_classes(P8)]
    for label, values in expected.items():
        assert [char_value(P8, label, rep) for rep in reps] == values


def test_orthonormality_and_dimension_sum():
    for params in ALL:
        labels = irreducible_labels(params)
        assert len(labels) == params.ell // 4 + 3
        assert sum(char_dim(l) ** 2 for l in labels) == params.ell
        for i, l1 in enumerate(labels):
            for l2 in labels[i:]:
                got = inner_product(VirtualCharacter.irreducible(params, l1),
                                    VirtualCharacter.irreducible(params, l2))
                assert got == (1 if l1 == l2 else 0), (params.ell, l1, l2)


def test_frobenius_schur_classification():
    for params in ALL:
        for label in irreducible_labels(params):
            got = fs_indicator(params, label)
            if label.startswith("gamma"):
                assert got == (-1 if int(label[5:]) % 2 else 1), (params.ell, label)
            else:
                assert got == 1, (params.ell, label)


def test_theta_inner_products_from_known_table():
    # against the 2-dimensional family: <Theta_i, gamma_{2i}> = (-1)^i
    for params in (P16, P32, P64):
        for n in range(1, params.ell // 8):
            g = VirtualCharacter.irreducible(params, f"gamma{2 * n}")
            assert inner_product(theta(1, params), g) == (-1) ** n
            assert inner_product(theta(2, params), g) == (-1) ** n
    # the order-8 pattern for the 1-dimensional characters
    k = {l: VirtualCharacter.irreducible(P8, l) for l in ("kappa1", "kappa2", "kappa3")}
    assert inner_product(theta(1, P8), k["kappa1"]) == -1
    assert inner_product(theta(1, P8), k["kappa2"]) == 1
    assert inner_product(theta(1, P8), k["kappa3"]) == 0
    assert inner_product(theta(2, P8), k["kappa1"]) == 0
    assert inner_product(theta(2, P8), k["kappa2"]) == 1
    assert inner_product(theta(2, P8), k["kappa3"]) == -1
    # and for larger orders
    for params in (P16, P32):
        k = {l: VirtualCharacter.irreducible(params, l)
             for l in ("rho0", "kappa1", "kappa2", "kappa3")}
        assert inner_product(theta(1, params), k["rho0"]) == 0
        assert inner_product(theta(1, params), k["kappa1"]) == 0
        assert inner_product(theta(1, params), k["kappa2"]) == 1
        assert inner_product(theta(1, params), k["kappa3"]) == 1
        assert inner_product(theta(2, params), k["kappa1"]) == 1
        assert inner_product(theta(2, params), k["kappa3"]) == 0


def test_theta_values_and_decompositions():
    t1 = theta(1, P16)
    assert t1.value(GroupElement(2, 0)) == 4          # +-I class, ell/4
    assert t1.value(GroupElement(0, 1)) == -2         # even reflection class
    assert t1.value(GroupElement(1, 0)).is_zero()     # xi is not order 4 here
    assert t1.value(GroupElement(1, 1)).is_zero()     # odd reflections untouched
    assert theta(2, P16).value(GroupElement(1, 1)) == -2

    assert theta(1, P8) == VirtualCharacter(P8, {"kappa2": 1, "kappa1": -1})
    assert theta(2, P8) == VirtualCharacter(P8, {"kappa2": 1, "kappa3": -1})
    assert theta(1, P16) == VirtualCharacter(P16, {"kappa2": 1, "kappa3": 1, "gamma2": -1})
    assert theta(2, P16) == VirtualCharacter(P16, {"kappa2": 1, "kappa1": 1, "gamma2": -1})
    expected = {"kappa2": 1, "kappa3": 1, "gamma2": -1, "gamma4": 1, "gamma6": -1}
    assert theta(1, P32) == VirtualCharacter(P32, expected)
    for params in ALL:
        for i in (1, 2):
            assert theta(i, params).dimension == 0
            assert membership(theta(i, params), "RO0")


def test_decompose_roundtrip_and_failure():
    reps = [rep for rep, _ in conjugacy_classes(P8)]
    assert decompose(P8, [1] * len(reps)) == VirtualCharacter.irreducible(P8, "rho0")
    values = [char_value(P8, "gamma1", rep) for rep in reps]
    assert decompose(P8, values) == VirtualCharacter.irreducible(P8, "gamma1")
    with pytest.raises(NotVirtualError):
        decompose(P8, [Fraction(1, 2)] * len(reps))


def test_delta_class_function_is_the_determinant():
    for params in ALL:
        d = delta(params)
        assert d == VirtualCharacter(params, {"rho0": 2, "gamma1": -1})
        assert d.dimension == 0
        assert membership(d, "RSp0")
        for rep, _ in conjugacy_classes(params):
            assert d.value(rep) == det_one_minus_gamma(params, 1, rep)


def test_delta_power():
    assert delta_power(1, P8) == delta(P8)
    for r in (1, 2):
        with pytest.raises(ValueError):
            delta_power(-r, P8)
    with pytest.raises(ValueError):
        delta_power(0, P8)
    # pointwise powers, re-expanded, evaluate back to the literal powers
    for params in (P8, P16):
        for r in (2, 3, 4):
            power = delta_power(r, params)
            for rep, _ in conjugacy_classes(params):
                assert power.value(rep) == det_one_minus_gamma(params, 1, rep) ** r


def test_c_constants():
    for params in ALL:
        assert c_constant(0, params) == Fraction(params.ell - 1, params.ell)
    # frozen values from the direct sum over the 7 nonidentity elements
    assert c_constant(1, P8) == 2
    assert c_constant(2, P8) == 5
    assert c_constant(-1, P8) == Fraction(13, 32)
    # c_r equals the rho0 multiplicity of the r-th power for r > 0
    for params in (P8, P16):
        for r in (1, 2, 3, 4):
            assert c_constant(r, params) == delta_power(r, params).coefficient("rho0")


def test_c_parity():
    for params in ALL:
        for i in range(1, 21):
            even = c_constant(2 * i, params)
            odd = c_constant(2 * i - 1, params)
            assert even.denominator == 1, (params.ell, 2 * i, even)
            assert odd.denominator == 1 and odd % 2 == 0, (params.ell, 2 * i - 1, odd)


def test_membership():
    gamma1 = VirtualCharacter.irreducible(P8, "gamma1")
    assert not membership(gamma1, "RO")
    assert membership(2 * gamma1, "RO")
    assert membership(gamma1, "RSp")
    kappa1 = VirtualCharacter.irreducible(P8, "kappa1")
    assert membership(kappa1, "RO")
    assert not membership(kappa1, "RSp")
    assert membership(2 * kappa1, "RSp")
    gamma2 = VirtualCharacter.irreducible(P16, "gamma2")
    assert membership(gamma2, "RO")
    assert not membership(gamma2, "RSp")
    assert not membership(gamma2, "RO0")  # dimension 2
    with pytest.raises(ValueError):
        membership(kappa1, "RZ")


def test_det_I_minus():
    tau = standard_fpf(P8, 1)
    group = quaternion_group(P8)
    assert det_I_minus(tau, group.identity).is_zero()
    for a in range(P8.half):
        assert det_I_minus(tau, GroupElement(a, 1)) == 2
    assert det_I_minus(tau, GroupElement(2, 0)) == 4  # at -1
    # multiplicative over summands
    pair = FpfRep(P16, (1, 3))
    for rep, _ in conjugacy_classes(P16):
        expected = (det_one_minus_gamma(P16, 1, rep) * det_one_minus_gamma(P16, 3, rep))
        assert det_I_minus(pair, rep) == expected


def test_fixed_point_free_criterion():
    assert is_fixed_point_free(P8, (1, 1))
    assert is_fixed_point_free(P8, (1, 3))
    assert not is_fixed_point_free(P8, (2,))
    assert not is_fixed_point_free(P8, ())
    # the all-odd criterion, exhaustively over single summands
    for params in (P8, P16):
        for s in range(0, params.half):
            assert is_fixed_point_free(params, (s,)) == (s % 2 == 1), s
    with pytest.raises(ValueError):
        FpfRep(P8, (2,))
    with pytest.raises(ValueError):
        FpfRep(P8, ())


def test_virtual_character_algebra():
    t = theta(1, P8)
    d = delta(P8)
    assert (t + d) - d == t
    assert -(-t) == t
    assert 2 * t == t + t
    assert (2 * t).dimension == 0
    assert repr(d) == "2*rho0 - gamma1"
    with pytest.raises(ValueError):
        VirtualCharacter(P8, {"gamma7": 1})
