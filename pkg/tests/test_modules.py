import pytest
from collections import Counter
from fractions import Fraction
import sys
import os

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from cohom_algebra import Weight, build_algebra, subalgebra_L0
from cohom_config import ModuleError
from cohom_modules import (
    adjoint_module,
    build_V_realization,
    check_representation,
    check_weight_compatibility,
    cyclic_submodule,
    d_eigenvalues,
    dual_module,
    ext_power_eps,
    inflate_to_gl,
    invariants,
    is_simple,
    kac_module,
    natural_module,
    realization_basis,
    restrict_module,
    simple_L0_module,
    simple_module,
    singular_vectors,
    sym_power_eps,
    tau_twist,
    tensor,
    trivial_module,
    weight_multiset,
    weyl_dimension,
)


@pytest.fixture(scope="module")
def sl21():
    return build_algebra("sl", 2, 1)


@pytest.fixture(scope="module")
def gl21():
    return build_algebra("gl", 2, 1)


def test_weyl_dimension():
    assert weyl_dimension(()) == 1
    assert weyl_dimension((1,)) == 2
    assert weyl_dimension((3,)) == 4
    assert weyl_dimension((1, 0)) == 3
    assert weyl_dimension((1, 1)) == 8
    assert weyl_dimension((2, 0)) == 6


def test_basic_modules_are_representations(sl21, gl21):
    for L in (sl21, gl21):
        for M in (
            trivial_module(L),
            adjoint_module(L),
            natural_module(L),
            dual_module(natural_module(L)),
            tau_twist(natural_module(L)),
            tensor(natural_module(L), dual_module(natural_module(L))),
        ):
            assert check_representation(M) == [], M.descriptor
            assert check_weight_compatibility(M), M.descriptor


def test_natural_parities(sl21):
    V = natural_module(sl21)
    assert V.dim == 3
    assert V.parity_dims() == (2, 1)
    with pytest.raises(ModuleError):
        natural_module(sl21, "other")


def test_section3_grading():
    L = build_algebra("sl", 3, 1)
    W = natural_module(L, "section3")
    assert W.parity == (1, 1, 1, 0)
    assert W.z_degree == (-1, -1, -1, 0)
    with pytest.raises(ModuleError):
        natural_module(build_algebra("sl", 3, 2), "section3")


@pytest.mark.parametrize("symmetric,dim", [(True, 32), (False, 32)])
def test_second_powers_of_adjoint(sl21, symmetric, dim):
    A = adjoint_module(sl21)
    M = sym_power_eps(A, 2) if symmetric else ext_power_eps(A, 2)
    # 4 even and 4 odd basis elements: 10 + 16 + 6 either way
    assert M.dim == dim
    assert check_representation(M) == []


def test_trivial_invariants(sl21):
    assert invariants(trivial_module(sl21)).dim == 1
    assert invariants(adjoint_module(sl21)).dim == 0
    S2 = sym_power_eps(adjoint_module(sl21), 2)
    # the supertrace form gives the invariant
    assert invariants(S2).dim == 1


@pytest.mark.parametrize("m", [2, 3])
def test_realization(m):
    L = build_algebra("gl", m, 1)
    V = build_V_realization(L)
    assert V.dim == len(realization_basis(m)) == 2 ** m - 1
    assert check_representation(V) == []
    identity = V.action_of(L.identity())
    assert identity.is_zero()


def test_realization_restricts_to_sl():
    gl, sl = build_algebra("gl", 2, 1), build_algebra("sl", 2, 1)
    V = restrict_module(build_V_realization(gl), sl)
    assert check_representation(V) == []
    assert weight_multiset(V) == weight_multiset(build_V_realization(sl))


def test_inflation_to_gl(sl21, gl21):
    M = inflate_to_gl(adjoint_module(sl21), gl21)
    assert check_representation(M) == []
    assert M.action_of(gl21.identity()).is_zero()


def test_simple_L0_module_dimensions():
    L = build_algebra("sl", 3, 2)
    L0 = subalgebra_L0(L)
    for text, dim in (("(0,0,0|0,0)", 1), ("(1,0,0|0,-1)", 6), ("(2,0,0|-1,-1)", 6), ("(1,1,0|0,-2)", 9)):
        V0 = simple_L0_module(L0, Weight.parse(text))
        assert V0.dim == dim
        assert check_representation(V0) == []
    with pytest.raises(ModuleError):
        simple_L0_module(L0, Weight.parse("(0,1,0|0,-1)"))


def test_kac_module_dimension(sl21):
    for text in ("(0,0|0)", "(1,0|-1)", "(1,1|-2)"):
        w = Weight.parse(text)
        K = kac_module(sl21, w)
        assert K.dim == 4 * simple_L0_module(sl21, w).dim
        assert check_representation(K) == []


def test_simple_modules(sl21):
    assert simple_module(sl21, Weight.zero(2, 1)).dim == 1
    # the trivial weight is atypical: its Kac module is not simple
    assert not is_simple(kac_module(sl21, Weight.zero(2, 1)))
    top = singular_vectors(natural_module(sl21))[0][0]
    V = simple_module(sl21, top)
    assert V.dim == 3
    assert weight_multiset(V) == weight_multiset(natural_module(sl21))
    assert is_simple(V)


def test_radical_methods_agree(sl21):
    for text in ("(0,0|0)", "(1,0|-1)", "(0,-1|1)", "(2,1|-3)"):
        w = Weight.parse(text)
        graded = simple_module(sl21, w, "graded")
        fixpoint = simple_module(sl21, w, "fixpoint")
        assert graded.dim == fixpoint.dim
        assert weight_multiset(graded) == weight_multiset(fixpoint)


def test_sl_weights_must_sum_to_zero(sl21):
    with pytest.raises(ModuleError):
        simple_module(sl21, Weight.parse("(1,0|0)"))


def test_cyclic_submodule_of_top_vector(sl21):
    V = natural_module(sl21)
    top_weight, vectors = singular_vectors(V)[0]
    assert cyclic_submodule(V, vectors[:1]).dim == V.dim


@pytest.mark.parametrize("p,expected", [(1, [1, 2, 3]), (2, [2, 3, 4])])
def test_d_eigenvalues_on_family(p, expected):
    L = build_algebra("sl", 3, 1)
    V = simple_module(L, Weight((0, 0, -p, p), 3, 1))
    assert sorted(set(d_eigenvalues(V))) == expected


def test_realization_matches_simple_module():
    L = build_algebra("sl", 3, 1)
    V = build_V_realization(L)
    S = simple_module(L, Weight((0, 0, -1, 1), 3, 1))
    assert S.dim == V.dim == 7
    assert weight_multiset(S) == weight_multiset(V)
    assert Counter(d_eigenvalues(S)) == Counter(d_eigenvalues(V))


def test_dual_of_dual_has_same_weights(sl21):
    V = natural_module(sl21)
    assert weight_multiset(dual_module(dual_module(V))) == weight_multiset(V)
    assert weight_multiset(dual_module(V)) == Counter(-w for w in weight_multiset(V).elements())
