import pytest
from collections import Counter
from fractions import Fraction
import sys
import os

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from cohom_algebra import Weight, build_algebra
from cohom_config import ModuleError
from cohom_linalg import SparseRationalMatrix
from cohom_modules import (
    adjoint_module,
    ext_power_eps,
    kac_module,
    natural_module,
    simple_module,
    sym_power_eps,
    trivial_module,
)
from cohom_structure import (
    L0Class,
    analyze_W_structure,
    _layer_label,
    casimir_operator,
    composition_factors,
    decompose_L0,
    generalized_kernel,
    kac_L0_classes,
    l0_class,
    stable_image,
)


@pytest.fixture(scope="module")
def sl21():
    return build_algebra("sl", 2, 1)


def test_l0_class_dimension():
    c = L0Class((Fraction(1), Fraction(0)), (Fraction(2),), Fraction(-1))
    assert c.dim == 3 * 3
    L = build_algebra("sl", 3, 2)
    assert l0_class(L, Weight.parse("(1,1,1|-1,-2)")).d == -3


def test_adjoint_L0_constituents(sl21):
    classes = decompose_L0(adjoint_module(sl21))
    # sl(2) ⊕ center, L_{-1}, L_{+1}
    assert sum(classes.values()) == 4
    assert sorted(c.dim for c in classes.elements()) == [1, 2, 2, 3]
    assert sorted(c.d for c in classes.elements()) == [-1, 0, 0, 1]


@pytest.mark.parametrize("text", ["(0,0|0)", "(1,0|-1)", "(1,1|-2)", "(2,1|-3)"])
def test_klimyk_matches_kac_module(sl21, text):
    w = Weight.parse(text)
    assert kac_L0_classes(sl21, w) == decompose_L0(kac_module(sl21, w))


def test_klimyk_matches_kac_module_sl31():
    L = build_algebra("sl", 3, 1)
    for text in ("(0,0,0|0)", "(1,1,1|-3)", "(0,0,-1|1)"):
        w = Weight.parse(text)
        assert kac_L0_classes(L, w) == decompose_L0(kac_module(L, w))


def test_klimyk_rejects_non_dominant(sl21):
    with pytest.raises(ModuleError):
        kac_L0_classes(sl21, Weight.parse("(0,1|-1)"))


def test_composition_factors_of_atypical_kac_module(sl21):
    K = kac_module(sl21, Weight.zero(2, 1))
    factors = composition_factors(K)
    assert factors[Weight.zero(2, 1)] >= 1
    assert sum(simple_module(sl21, w).dim * k for w, k in factors.items()) == K.dim
    assert sum(factors.values()) >= 2


def test_composition_factors_of_simple_module(sl21):
    V = natural_module(sl21)
    factors = composition_factors(V)
    assert sum(factors.values()) == 1


def test_casimir_commutes_with_the_action(sl21):
    for M in (adjoint_module(sl21), natural_module(sl21)):
        omega = casimir_operator(M)
        for A in M.actions:
            assert omega @ A == A @ omega


def test_casimir_scalars(sl21):
    assert casimir_operator(trivial_module(sl21)).is_zero()
    omega = casimir_operator(adjoint_module(sl21))
    c = omega.get(0, 0)
    assert c != 0
    assert omega == SparseRationalMatrix.identity(sl21.dim).scale(c)


def test_generalized_kernel_and_stable_image():
    A = SparseRationalMatrix.from_triples(3, 3, [(0, 1, 1), (2, 2, 2)])
    K = generalized_kernel(A)
    S = stable_image(A)
    assert K.dim == 2
    assert S.dim == 1
    assert S.contains({2: Fraction(1)})
    assert K.contains({0: Fraction(1)}) and K.contains({1: Fraction(1)})


def test_small_S2_splits_under_casimir(sl21):
    S = sym_power_eps(adjoint_module(sl21), 2)
    omega = casimir_operator(S)
    assert generalized_kernel(omega).dim + stable_image(omega).dim == S.dim


@pytest.mark.slow
def test_sl32_wedge_square_constituents():
    L = build_algebra("sl", 3, 2)
    wedge = ext_power_eps(adjoint_module(L), 2)
    assert wedge.dim == 288
    assert sum(decompose_L0(wedge).values()) == 27


def test_layer_label_lists_the_factors(sl21):
    adj = Weight.parse("(1,0|-1)")
    assert _layer_label(composition_factors(trivial_module(sl21))) == "(0,0|0)"
    assert _layer_label(Counter({adj: 1, Weight.zero(2, 1): 2})) == "(0,0|0) + (0,0|0) + (1,0|-1)"


@pytest.mark.slow
def test_sl32_S2_filtration():
    L = build_algebra("sl", 3, 2)
    report = analyze_W_structure(L)
    assert report.status == "ok", report.notes
    assert report.flags["W2_is_line"]
    assert report.flags["direct_sum"]
    assert report.chain_dims[-1] == 0
    assert report.factor_weights == ["(0,0,0|0,0)", "(1,1,0|0,-2)", "(0,0,0|0,0)"]
    assert report.flags["top_factor_trivial"] and report.flags["bottom_factor_trivial"]
    assert report.flags["middle_is_V(1,1,0|0,-2)"]
    factors = composition_factors(sym_power_eps(adjoint_module(L), 2))
    assert factors == Counter({
        Weight.parse("(2,0,0|-1,-1)"): 1,
        Weight.parse("(1,0,0|0,-1)"): 1,
        Weight.parse("(1,1,0|0,-2)"): 1,
        Weight.zero(3, 2): 2,
    })
