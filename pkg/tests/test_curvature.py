"""Curvature engine against the independent oracles, plus the theorem layer."""

import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings

from conftest import parameter_lists, pipeline, structure_for
from nordenlie import oracles as orc
from nordenlie.curvature import (
    PlaneType,
    basis_vector,
    bisectional_curvature,
    check_f_symmetries,
    classify,
    constant_curvature_predicates,
    curvature_symmetries_ok,
    first_bianchi_ok,
    isotropic_kahler_predicates,
    lee_form,
    local_symmetry_check,
    metric_value,
    nabla_j_norm_sq,
    nijenhuis_package,
    nijenhuis_tensor,
    plane_type,
    sectional_basis,
    sectional_curvature,
    w1_defining_tensor,
    weyl_tensor,
)
from nordenlie.tensor import (
    LOWER,
    UPPER,
    DenseTensor,
    TensorBuilder,
    evaluate_covariant,
)

F = Fraction


def _close_over_params(n, lam):
    env = pipeline(n, lam)
    s = env.structure
    return env, s


@settings(max_examples=50)
@given(parameter_lists(1))
def test_engine_matches_all_oracles_one_block(lam):
    env, s = _close_over_params(1, lam)
    assert check_f_symmetries(env.F, s.j_tensor)
    assert env.F == orc.bracket_fundamental_tensor(env.C, s.j_tensor, s.metric)
    assert env.F == orc.fundamental_tensor_table(env.p)
    assert env.theta.is_zero()
    assert env.R == orc.bracket_curvature_tensor(env.C, s.metric)
    assert env.R == orc.curvature_table(env.p)
    assert curvature_symmetries_ok(env.R)
    assert first_bianchi_ok(env.R)
    assert env.ricci == orc.ricci_table(env.p)
    assert env.tau == orc.scalar_curvature_closed_form(env.p)
    pack = nijenhuis_package(env.C, s, env.F)
    assert pack.tensor == orc.nijenhuis_table(env.p)
    assert pack.nabla_j_norm_sq == orc.nabla_j_norm_sq_closed_form(env.p)
    assert pack.norm_sq == orc.nijenhuis_norm_sq_closed_form(env.p)
    for (i, j), expected in orc.sectional_closed_form(env.p).items():
        assert sectional_basis(env.R, s.metric, i, j).value == expected


@settings(max_examples=15, deadline=None)
@given(parameter_lists(2))
def test_engine_matches_all_oracles_two_blocks(lam):
    env, s = _close_over_params(2, lam)
    assert check_f_symmetries(env.F, s.j_tensor)
    assert env.F == orc.bracket_fundamental_tensor(env.C, s.j_tensor, s.metric)
    assert env.F == orc.fundamental_tensor_table(env.p)
    assert env.theta.is_zero()
    assert env.R == orc.bracket_curvature_tensor(env.C, s.metric)
    assert env.R == orc.curvature_table(env.p)
    assert env.ricci == orc.ricci_table(env.p)
    assert env.tau == orc.scalar_curvature_closed_form(env.p)
    pack = nijenhuis_package(env.C, s, env.F)
    assert pack.tensor == orc.nijenhuis_table(env.p)
    assert pack.nabla_j_norm_sq == orc.nabla_j_norm_sq_closed_form(env.p)
    assert pack.norm_sq == orc.nijenhuis_norm_sq_closed_form(env.p)
    for (i, j), expected in orc.sectional_closed_form(env.p).items():
        assert sectional_basis(env.R, s.metric, i, j).value == expected


def test_fundamental_tensor_frozen_components():
    # indices are 0-based; the labels in comments are 1-based
    env, _ = _close_over_params(1, [1, 0, 0, 0])
    assert env.F[(0, 1, 1)] == -1  # F(X1,X2,X2)
    assert env.F[(0, 3, 3)] == -1
    assert env.F[(1, 0, 1)] == F(1, 2)
    assert env.F[(1, 2, 3)] == F(1, 2)
    assert env.F[(3, 0, 3)] == F(1, 2)
    assert env.F[(3, 1, 2)] == -F(1, 2)
    assert env.F[(0, 0, 1)] == 0

    env, _ = _close_over_params(1, [0, 1, 0, 0])
    # the second parameter contributes two full-weight components
    assert env.F[(1, 0, 0)] == -1  # F(X2,X1,X1)
    assert env.F[(1, 2, 2)] == -1
    assert env.F[(0, 0, 1)] == F(1, 2)
    assert env.F[(2, 0, 3)] == -F(1, 2)

    env, _ = _close_over_params(1, [0, 0, 1, 0])
    assert env.F[(2, 1, 1)] == 1  # F(X3,X2,X2)
    assert env.F[(2, 3, 3)] == 1
    assert env.F[(1, 0, 3)] == F(1, 2)
    assert env.F[(3, 0, 1)] == -F(1, 2)


def test_fundamental_tensor_is_symmetric_in_last_two_slots():
    env, _ = _close_over_params(1, [1, 2, 3, 4])
    for (i, j, k), value in env.F.nonzero_items():
        assert env.F[(i, k, j)] == value


def test_curvature_frozen_components():
    env, _ = _close_over_params(1, [1, 0, 0, 0])
    assert env.R[(0, 1, 1, 0)] == -F(1, 4)  # R(X1,X2,X2,X1)
    assert env.R[(0, 3, 3, 0)] == F(1, 4)  # R(X1,X4,X4,X1)
    assert env.R[(1, 3, 3, 1)] == F(1, 4)
    assert env.R[(0, 2, 2, 0)] == 0


def test_scalar_and_norm_frozen_values():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    # S = 1 + 4 - 9 - 16 = -20
    assert orc.parameter_square_norm(env.p) == -20
    assert env.tau == 30
    assert nabla_j_norm_sq(env.F, s.metric_inv) == -80
    pack = nijenhuis_package(env.C, s, env.F)
    assert pack.norm_sq == 640


def test_norm_can_vanish_while_tensor_does_not():
    env, s = _close_over_params(1, [1, 1, 1, 1])
    assert not env.F.is_zero()
    assert nabla_j_norm_sq(env.F, s.metric_inv) == 0
    assert env.tau == 0


def test_nijenhuis_frozen_rows():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    N = nijenhuis_tensor(env.C, s.j_tensor)
    # N(X1,X2) = 2(l4 X1 - l3 X2 + l2 X3 - l1 X4), N(X3,X4) = -N(X1,X2)
    assert tuple(N[(k, 0, 1)] for k in range(4)) == (8, -6, 4, -2)
    assert tuple(N[(k, 2, 3)] for k in range(4)) == (-8, 6, -4, 2)
    # N(X1,X4) = 2(l2 X1 - l1 X2 - l4 X3 + l3 X4), N(X2,X3) = -N(X1,X4)
    assert tuple(N[(k, 0, 3)] for k in range(4)) == (4, -2, -8, 6)
    assert tuple(N[(k, 1, 2)] for k in range(4)) == (-4, 2, 8, -6)
    assert all(N[(k, 0, 2)] == 0 for k in range(4))
    assert all(N[(k, 1, 3)] == 0 for k in range(4))


def test_classification_generic_member_is_strictly_quasi_kaehler():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    res = classify(env.F, env.theta, s.j_tensor, s.metric)
    assert (res.in_w0, res.in_w1, res.in_w2, res.in_w3) == (False, False, False, True)
    assert res.f_nonzero
    assert res.theta.is_zero()


def test_classification_zero_member_lies_in_every_class():
    env, s = _close_over_params(1, [0, 0, 0, 0])
    res = classify(env.F, env.theta, s.j_tensor, s.metric)
    assert (res.in_w0, res.in_w1, res.in_w2, res.in_w3) == (True, True, True, True)
    assert not res.f_nonzero


def test_w1_defining_tensor_round_trips_its_lee_form():
    s = structure_for(1)
    theta = TensorBuilder(4, (LOWER,))
    theta.set((0,), F(3))
    theta.set((2,), F(-2))
    theta = theta.build()
    t = w1_defining_tensor(theta, s.j_tensor, s.metric)
    # a synthetic member of the trace-built class
    assert check_f_symmetries(t, s.j_tensor)
    assert lee_form(t, s.metric_inv) == theta
    res = classify(t, theta, s.j_tensor, s.metric)
    assert res.in_w1
    assert not res.in_w0


@settings(max_examples=30)
@given(parameter_lists(1))
def test_weyl_vanishes_in_dimension_four(lam):
    env, s = _close_over_params(1, lam)
    assert weyl_tensor(env.R, env.ricci, env.tau, s.metric).is_zero()


def test_weyl_does_not_vanish_in_higher_dimension():
    env, s = _close_over_params(2, [1, 0, 0, 0, 0, 0, 0, 0])
    W = weyl_tensor(env.R, env.ricci, env.tau, s.metric)
    # cross-block plane (X1, X5): the conformal correction has no curvature
    # to cancel against, so a single nonzero parameter already obstructs it
    assert W[(0, 4, 4, 0)] == F(1, 21)
    assert not W.is_zero()


def test_weyl_requires_dimension_three():
    R = DenseTensor.zeros(2, (LOWER,) * 4)
    ricci = DenseTensor.zeros(2, (LOWER, LOWER))
    g = DenseTensor.diagonal(2, [F(1), F(1)], (LOWER, LOWER))
    with pytest.raises(ValueError, match="at least 3"):
        weyl_tensor(R, ricci, F(0), g)


def test_locally_symmetric_in_both_dimensions():
    for n, lam in ((1, [1, 2, 3, 4]), (2, [1, 2, 3, 4, 5, 6, 7, 8])):
        env, _ = _close_over_params(n, lam)
        assert local_symmetry_check(env.R, env.conn)


def test_local_symmetry_check_can_fail():
    # a connection that does not preserve this curvature tensor
    env, s = _close_over_params(1, [1, 2, 3, 4])
    other = pipeline(1, [5, 0, 0, 1]).conn
    assert not local_symmetry_check(env.R, other)


def test_plane_types_of_basic_planes():
    s = structure_for(1)
    J, g = s.j_tensor, s.metric
    assert plane_type(0, 2, J, g) is PlaneType.HOLOMORPHIC
    assert plane_type(1, 3, J, g) is PlaneType.HOLOMORPHIC
    for pair in ((0, 1), (0, 3), (1, 2), (2, 3)):
        assert plane_type(*pair, J, g) is PlaneType.TOTALLY_REAL
    with pytest.raises(ValueError, match="distinct"):
        plane_type(1, 1, J, g)


def test_plane_type_generic_branch():
    # an endomorphism sending X1 into the plane span{X1, X2} sideways
    j = TensorBuilder(4, (UPPER, LOWER))
    j.set((1, 0), F(1))
    j.set((2, 0), F(1))
    g = structure_for(1).metric
    assert plane_type(0, 1, j.build(), g) is PlaneType.GENERIC


def test_sectional_frozen_values():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    expected = {
        (0, 1): -F(5, 4),
        (0, 2): F(3),
        (0, 3): F(15, 4),
        (1, 2): F(5, 4),
        (1, 3): F(2),
        (2, 3): F(25, 4),
    }
    assert orc.sectional_closed_form(env.p) == expected
    for (i, j), value in expected.items():
        res = sectional_basis(env.R, s.metric, i, j)
        assert not res.degenerate
        assert res.value == value


def test_sectional_flags_degenerate_plane():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    x = (F(1), F(0), F(1), F(0))  # null vector: g(x,x) = 0
    y = basis_vector(4, 1)
    res = sectional_curvature(env.R, s.metric, x, y)
    assert res.degenerate
    assert res.value is None


def test_bisectional_diagonal_equals_holomorphic_sectional():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    e0 = basis_vector(4, 0)
    res = bisectional_curvature(env.R, s.metric, s.j_tensor, e0, e0)
    assert res.defined
    assert res.value == 3
    assert res.value == sectional_basis(env.R, s.metric, 0, 2).value


def test_bisectional_undefined_on_totally_isotropic_direction():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    x = (F(1), F(0), F(0), F(1))  # g(x,x) = 0 and g(x,Jx) = 0
    e0 = basis_vector(4, 0)
    res = bisectional_curvature(env.R, s.metric, s.j_tensor, x, e0)
    assert not res.defined
    assert res.value is None


def test_bisectional_defined_on_null_but_not_isotropic_direction():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    x = (F(1), F(0), F(1), F(0))  # g(x,x) = 0 but g(x,Jx) = -2
    e0 = basis_vector(4, 0)
    res = bisectional_curvature(env.R, s.metric, s.j_tensor, x, e0)
    assert res.defined


def test_bisectional_irrational_radicand_reports_exact_parts():
    env, s = _close_over_params(1, [1, 2, 3, 4])
    x = basis_vector(4, 0)
    y = (F(1), F(1), F(1), F(0))  # couple (1, -2), so the factor is 5
    res = bisectional_curvature(env.R, s.metric, s.j_tensor, x, y)
    assert res.defined
    assert res.value is None
    assert res.numerator == 1
    assert res.radicand == 5
    assert res.approx == pytest.approx(1 / math.sqrt(5))


@settings(max_examples=60)
@given(st_x=parameter_lists(1))
def test_bisectional_diagonal_matches_sectional_everywhere(st_x):
    env, s = _close_over_params(1, [1, 2, 3, 4])
    x = tuple(F(v) for v in st_x)
    jx = s.apply_j(x)
    assume(metric_value(s.metric, x, x) or metric_value(s.metric, x, jx))
    res = bisectional_curvature(env.R, s.metric, s.j_tensor, x, x)
    assert res.defined
    # the radicand is a perfect square on the diagonal, so value is exact
    assert res.value is not None
    assert res.value == sectional_curvature(env.R, s.metric, x, jx).value


ISOTROPY_CASES = [
    (1, [1, 1, 1, 1], True),
    (1, [1, 2, 3, 4], False),
    (1, [2, 1, 1, 2], True),
    (2, [1, 2, 3, 4, 2, 1, 4, 3], False),
    (2, [1, 2, 3, 4, 3, 4, 1, 2], True),
]


@pytest.mark.parametrize("n,lam,expected_null", ISOTROPY_CASES)
def test_isotropy_predicates_agree(n, lam, expected_null):
    env, s = _close_over_params(n, lam)
    pack = nijenhuis_package(env.C, s, env.F)
    preds = isotropic_kahler_predicates(
        pack.nabla_j_norm_sq,
        pack.norm_sq,
        env.tau,
        orc.parameter_square_norm(env.p),
    )
    assert preds.all_agree
    assert preds.parameter_null is expected_null
    assert preds.as_tuple() == (expected_null,) * 4


CONSTANT_CASES = [
    (1, [0, 0, 0, 0], True, True),
    (1, [2, 1, 2, 1], True, False),
    (1, [2, 2, 1, 1], True, False),
    (1, [1, 2, 2, 1], False, False),
    (1, [1, 2, 3, 4], False, False),
    (2, [2, 1, 2, 1, 1, 2, 1, 2], True, False),
    (2, [2, 2, 1, 1, 2, 1, 2, 1], False, False),
]


@pytest.mark.parametrize("n,lam,holo,tot_real", CONSTANT_CASES)
def test_constant_curvature_cases(n, lam, holo, tot_real):
    env, s = _close_over_params(n, lam)
    verdict = constant_curvature_predicates(env.R, s.metric, s.j_tensor)
    assert verdict.constant_holomorphic is holo
    assert verdict.constant_totally_real is tot_real
    assert orc.constant_holomorphic_parameter_identity(env.p) is holo


def test_constant_holomorphic_value_can_be_nonzero():
    env, s = _close_over_params(1, [2, 2, 1, 1])
    assert sectional_basis(env.R, s.metric, 0, 2).value == -F(3, 4)
    assert sectional_basis(env.R, s.metric, 1, 3).value == -F(3, 4)


@settings(max_examples=40)
@given(parameter_lists(1))
def test_constant_totally_real_means_flat(lam):
    env, s = _close_over_params(1, lam)
    verdict = constant_curvature_predicates(env.R, s.metric, s.j_tensor)
    assert verdict.constant_totally_real == env.R.is_zero()
    assert env.R.is_zero() == (set(lam) <= {0})


def test_evaluate_covariant_matches_component_lookup():
    env, _ = _close_over_params(1, [1, 2, 3, 4])
    e = [basis_vector(4, i) for i in range(4)]
    assert evaluate_covariant(env.R, e[0], e[1], e[1], e[0]) == env.R[(0, 1, 1, 0)]
