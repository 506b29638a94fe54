import pytest
from fractions import Fraction
import sys
import os

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from cohom_algebra import Weight, build_algebra
from cohom_complex import (
    CochainSpace,
    build_g123,
    check_extension_theorem,
    check_square_zero,
    cochain_from_values,
    cocycle_relation_g,
    cohomology,
    differential,
    evaluate_cochain,
    extend_to_gl,
    invariant_subcomplex,
    is_coboundary,
    negative_trace_cochain,
    restrict_to_sl,
    supertrace_form_cochain,
    trace_form_cochain,
)
from cohom_config import CochainError
from cohom_linalg import Subspace, add_scaled
from cohom_modules import (
    adjoint_module,
    build_V_realization,
    dual_module,
    eta_vector,
    invariants,
    kac_module,
    natural_module,
    restrict_module,
    tau_twist,
    trivial_module,
)


@pytest.fixture(scope="module")
def sl21():
    return build_algebra("sl", 2, 1)


@pytest.fixture(scope="module")
def gl21():
    return build_algebra("gl", 2, 1)


def test_cochain_space_dimensions(sl21):
    V = natural_module(sl21)
    # 4 even and 4 odd basis elements
    assert CochainSpace(sl21, V, 0).dim == 3
    assert CochainSpace(sl21, V, 1).dim == 8 * 3
    assert CochainSpace(sl21, V, 2).dim == (6 + 16 + 10) * 3


def test_cochain_space_errors(sl21, gl21):
    with pytest.raises(CochainError):
        CochainSpace(sl21, trivial_module(sl21), 4)
    with pytest.raises(CochainError):
        CochainSpace(sl21, trivial_module(gl21), 1)


def test_cochain_values_follow_koszul_signs(sl21):
    space = CochainSpace(sl21, trivial_module(sl21), 2)
    even = [b for b in range(sl21.dim) if sl21.parity[b] == 0]
    odd = [b for b in range(sl21.dim) if sl21.parity[b] == 1]
    a, b = even[0], even[1]
    f = cochain_from_values(space, {(a, b): {0: Fraction(2)}})
    assert evaluate_cochain(space, f, (b, a)) == {0: -2}
    x, y = odd[0], odd[1]
    g = cochain_from_values(space, {(x, y): {0: Fraction(1)}})
    assert evaluate_cochain(space, g, (y, x)) == {0: 1}
    assert evaluate_cochain(space, f, (a, a)) == {}
    with pytest.raises(CochainError):
        evaluate_cochain(space, f, (a,))


@pytest.mark.parametrize("builder", [trivial_module, adjoint_module, natural_module, build_V_realization])
def test_differential_squares_to_zero(sl21, builder):
    assert check_square_zero(sl21, builder(sl21))


def test_square_zero_on_gl_weight_block(gl21):
    V = build_V_realization(gl21)
    assert check_square_zero(gl21, V, Weight.zero(2, 1))


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 0), (2, 0)])
def test_trivial_coefficients(sl21, n, expected):
    report = cohomology(sl21, trivial_module(sl21), n, "both")
    assert not report.flagged
    assert report.dim_H == expected


@pytest.mark.parametrize("builder", [adjoint_module, natural_module, build_V_realization])
def test_methods_agree(sl21, builder):
    V = builder(sl21)
    for n in (0, 1, 2):
        report = cohomology(sl21, V, n, "both")
        assert not report.flagged, (V.descriptor, n)
        assert report.cochain_dims[f"C{n}"] == CochainSpace(sl21, V, n).dim


def test_cohomology_argument_errors(sl21):
    with pytest.raises(CochainError):
        cohomology(sl21, trivial_module(sl21), 3)
    with pytest.raises(CochainError):
        cohomology(sl21, trivial_module(sl21), 1, "fast")


def test_trace_form_is_the_coboundary_of_minus_trace(gl21):
    K = trivial_module(gl21)
    f = trace_form_cochain(gl21, K)
    assert f
    assert differential(gl21, K, 1).apply(negative_trace_cochain(gl21, K)) == f
    assert is_coboundary(gl21, K, f) is not None


@pytest.mark.parametrize("kind", ["sl", "gl"])
def test_both_trace_readings_are_coboundaries(kind):
    L = build_algebra(kind, 2, 1)
    K = trivial_module(L)
    assert supertrace_form_cochain(L, K) == {}
    witness = is_coboundary(L, K, trace_form_cochain(L, K))
    assert witness is not None
    assert differential(L, K, 1).apply(witness) == trace_form_cochain(L, K)


def test_is_coboundary_rejects_non_cocycles(gl21):
    K = trivial_module(gl21)
    space = CochainSpace(gl21, K, 1)
    with pytest.raises(CochainError):
        is_coboundary(gl21, K, {space.position((0,), 0): Fraction(1)}, degree=1)


@pytest.mark.parametrize("m", [2, 3])
def test_polynomial_model_invariant_cochains(m):
    gl = build_algebra("gl", m, 1)
    V = build_V_realization(gl)
    K = invariant_subcomplex(gl, V, 2)
    assert K.dim == 3
    for g in build_g123(gl, V):
        assert g
        assert K.subspace.contains(K.to_local(g))
    relation = cocycle_relation_g(gl, V)
    assert len(relation) == 1
    c1, c2, c3 = relation[0]
    assert c1 == 0 and c2 != 0 and c2 + c3 == 0


def test_second_differential_of_g2_and_g3():
    m = 2
    gl = build_algebra("gl", m, 1)
    V = build_V_realization(gl)
    g1, g2, g3 = build_g123(gl, V)
    D = differential(gl, V, 2)
    space3 = CochainSpace(gl, V, 3)
    N = m + 1
    E = lambda i, j: (i - 1) * N + (j - 1)
    for k, i, j in ((1, 1, 2), (2, 1, 2)):
        args = (E(k, m + 1), E(m + 1, i), E(m + 1, j))
        expected = {}
        if k == i:
            for v, x in eta_vector(m, j).items():
                expected[v] = expected.get(v, 0) - x
        if k == j:
            for v, x in eta_vector(m, i).items():
                expected[v] = expected.get(v, 0) - x
        expected = {v: x for v, x in expected.items() if x}
        assert evaluate_cochain(space3, D.apply(g2), args) == expected
        assert evaluate_cochain(space3, D.apply(g3), args) == expected


@pytest.mark.parametrize("m", [2, 3])
def test_polynomial_model_cohomology(m):
    gl, sl = build_algebra("gl", m, 1), build_algebra("sl", m, 1)
    gl_report = cohomology(gl, build_V_realization(gl), 2)
    sl_report = cohomology(sl, build_V_realization(sl), 2)
    assert gl_report.dim_H == 1
    assert gl_report.coboundary_status == ["not_coboundary"]
    assert sl_report.dim_H == 0


@pytest.mark.parametrize("m", [2, 3])
def test_h2_of_trivial_module_vanishes(m):
    L = build_algebra("sl", m, 1)
    assert cohomology(L, trivial_module(L), 2).dim_H == 0


def test_extension_and_restriction_round_trip():
    gl, sl = build_algebra("gl", 2, 1), build_algebra("sl", 2, 1)
    V_gl = build_V_realization(gl)
    V_sl = restrict_module(V_gl, sl)
    sl2, gl2 = CochainSpace(sl, V_sl, 2), CochainSpace(gl, V_gl, 2)
    K = invariant_subcomplex(sl, V_sl, 2, sl2)
    for f in K.full_vectors():
        g = extend_to_gl(f, sl2, gl2)
        assert restrict_to_sl(g, gl2, sl2) == f


@pytest.mark.parametrize("m", [2, 3])
def test_extension_theorem(m):
    assert check_extension_theorem(m)


def test_report_serializes_rationals(gl21):
    report = cohomology(gl21, build_V_realization(gl21), 2)
    data = report.to_dict()
    assert data["dim_H"] == 1
    assert data["method_used"] == "invariant"
    for rep in data["representatives"]:
        for _, value in rep:
            assert isinstance(value, str)


def test_representatives_are_reduced_modulo_the_image(gl21):
    V = build_V_realization(gl21)
    report = cohomology(gl21, V, 2, "brute")
    image = Subspace(CochainSpace(gl21, V, 2).dim, differential(gl21, V, 1).columns.values())
    D = differential(gl21, V, 2)
    assert len(report.representatives) == 1
    for z in report.representatives:
        assert image.reduce(z) == z
        assert D.apply(z) == {}


def kac_trivial(L):
    return kac_module(L, Weight.zero(L.m, L.n))


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("builder", [natural_module, adjoint_module, kac_trivial],
                         ids=["natural", "adjoint", "kac"])
def test_tau_twist_keeps_cohomology(m, builder):
    L = build_algebra("sl", m, 1)
    V = builder(L)
    for n in (1, 2):
        assert cohomology(L, V, n).dim_H == cohomology(L, tau_twist(V), n).dim_H, (V.descriptor, n)


@pytest.mark.parametrize("builder", [
    trivial_module, adjoint_module, natural_module, build_V_realization, kac_trivial,
    lambda L: dual_module(natural_module(L)),
], ids=["trivial", "adjoint", "natural", "realization", "kac", "dual"])
def test_h0_is_the_invariants(sl21, builder):
    V = builder(sl21)
    assert cohomology(sl21, V, 0, "brute").dim_H == invariants(V).dim
    assert invariant_subcomplex(sl21, V, 0).dim == invariants(V, "L0").dim


@pytest.mark.parametrize("m", [2, 3])
def test_unique_invariant_form_on_slm1(m):
    L = build_algebra("sl", m, 1)
    assert invariant_subcomplex(L, trivial_module(L), 2).dim == 1


def _g_difference(gl, V):
    _, g2, g3 = build_g123(gl, V)
    g = dict(g2)
    add_scaled(g, g3, -1)
    return g


@pytest.mark.parametrize("m", [2, 3])
def test_g_difference_is_supertrace_times_eta(m):
    gl = build_algebra("gl", m, 1)
    V = build_V_realization(gl)
    g = _g_difference(gl, V)
    space = CochainSpace(gl, V, 2)
    N = m + 1
    for a in gl.degree_indices(0):
        s = gl.supertrace_vector[a]
        for k in range(1, m + 1):
            expected = {v: s * x for v, x in eta_vector(m, k).items()} if s else {}
            assert evaluate_cochain(space, g, (a, m * N + k - 1)) == expected


@pytest.mark.parametrize("m", [2, 3])
def test_g_difference_vanishes_on_sl(m):
    gl, sl = build_algebra("gl", m, 1), build_algebra("sl", m, 1)
    V_gl = build_V_realization(gl)
    V_sl = restrict_module(V_gl, sl)
    gl2, sl2 = CochainSpace(gl, V_gl, 2), CochainSpace(sl, V_sl, 2)
    assert restrict_to_sl(_g_difference(gl, V_gl), gl2, sl2) == {}
    _, g2, _ = build_g123(gl, V_gl)
    assert restrict_to_sl(g2, gl2, sl2)


@pytest.mark.parametrize("m", [2, pytest.param(3, marks=pytest.mark.slow)])
def test_second_differential_on_even_pairs(m):
    # g is L0-invariant and zero on L0 x L0, so δg(A, B, C) = g(<A, B>, C) for even A, B
    gl = build_algebra("gl", m, 1)
    V = build_V_realization(gl)
    D = differential(gl, V, 2)
    space2, space3 = CochainSpace(gl, V, 2), CochainSpace(gl, V, 3)
    even = gl.degree_indices(0)
    for g in build_g123(gl, V):
        dg = D.apply(g)
        for a in even:
            for b in even:
                for c in range(gl.dim):
                    expected = {}
                    for e, s in gl.bracket_basis(a, b).items():
                        add_scaled(expected, evaluate_cochain(space2, g, (e, c)), s)
                    assert evaluate_cochain(space3, dg, (a, b, c)) == expected, (a, b, c)
