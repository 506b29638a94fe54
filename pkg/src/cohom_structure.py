"""
Structure of modules: L0-constituents, composition factors, the Casimir
operator and the filtration of the indecomposable summand W of S_2(L, ε)
for sl(3|2).
"""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from loguru import logger

from cohom_algebra import LieSuperalgebra, Weight, build_algebra, d_value, odd_parts, sign_of
from cohom_config import ModuleError
from cohom_linalg import (
    SparseRationalMatrix,
    Subspace,
    Vector,
    add_scaled,
    kernel_basis,
    solve,
    subspace_sum,
)
from cohom_modules import (
    Module,
    action_span,
    adjoint_module,
    cyclic_submodule,
    graded_radical,
    invariants,
    quotient_module,
    simple_module,
    singular_vectors,
    submodule,
    sym_power_eps,
    weyl_dimension,
)


@dataclass(frozen=True, order=True)
class L0Class:
    """Isomorphism class of a simple L0-module: block label differences and D-eigenvalue."""

    even_diffs: Tuple[Fraction, ...]
    odd_diffs: Tuple[Fraction, ...]
    d: Fraction

    @property
    def dim(self) -> int:
        return weyl_dimension(self.even_diffs) * weyl_dimension(self.odd_diffs)

    def __str__(self) -> str:
        fmt = lambda xs: ",".join(str(x) for x in xs)
        return f"[{fmt(self.even_diffs)}|{fmt(self.odd_diffs)}; D={self.d}]"


def l0_class(L: LieSuperalgebra, weight: Weight) -> L0Class:
    even, odd = weight.block_diffs()
    return L0Class(even, odd, d_value(L, weight))


def decompose_L0(M: Module) -> Counter:
    """Multiset of simple L0-constituents, counted by L0-singular vectors."""
    classes: Counter = Counter()
    for w, vectors in singular_vectors(M, "L0"):
        classes[l0_class(M.algebra, w)] += len(vectors)
    total = sum(c.dim * k for c, k in classes.items())
    if total != M.dim:
        raise ModuleError(
            f"L0 constituents of {M.descriptor} add up to {total}, module has dim {M.dim}"
        )
    return classes


def _dot_normalize(labels: List[Fraction]) -> Optional[Tuple[int, Tuple[Fraction, ...]]]:
    """Move labels + ρ into the dominant chamber; None on a wall."""
    k = len(labels)
    shifted = [x + (k - 1 - i) for i, x in enumerate(labels)]
    if len(set(shifted)) < k:
        return None
    order = sorted(range(k), key=lambda i: shifted[i], reverse=True)
    inversions = sum(1 for a in range(k) for b in range(a + 1, k) if order[a] > order[b])
    dominant = tuple(shifted[i] - (k - 1 - pos) for pos, i in enumerate(order))
    return sign_of(inversions), dominant


def kac_L0_classes(L: LieSuperalgebra, weight: Weight) -> Counter:
    """L0-constituents of the Kac module, from the weights of Λ(L_{+1}) (Klimyk's rule)."""
    if not weight.is_block_dominant():
        raise ModuleError(f"{weight} is not dominant within the blocks")
    lowering = odd_parts(L)[1]
    roots = [L.basis_weights[b] for b in lowering]
    signed: Counter = Counter()
    m = L.m
    for size in range(len(roots) + 1):
        for subset in combinations(roots, size):
            mu = weight
            for r in subset:
                mu = mu + r
            first = _dot_normalize(list(mu.even_labels))
            second = _dot_normalize(list(mu.odd_labels))
            if first is None or second is None:
                continue
            labels = first[1] + second[1]
            signed[Weight(labels, m, L.n)] += first[0] * second[0]
    classes: Counter = Counter()
    for w, k in signed.items():
        if k < 0:
            raise ModuleError(f"negative Klimyk multiplicity at {w}")
        if k:
            classes[l0_class(L, w)] += k
    return classes


def composition_factors(M: Module) -> Counter:
    """Highest weights of a Jordan-Hölder series, peeled from maximal singular vectors."""
    factors: Counter = Counter()
    if M.dim == 0:
        return factors
    found = singular_vectors(M, "L")
    if not found:
        raise ModuleError(f"{M.descriptor} has no singular vector")
    top, vectors = max(found, key=lambda item: item[0])
    Y = cyclic_submodule(M, [vectors[0]])
    Y_mod = submodule(M, Y)
    inner = graded_radical(Y_mod, top)
    factors[top] += 1
    if inner.dim:
        factors += composition_factors(submodule(Y_mod, inner))
    if Y.dim < M.dim:
        factors += composition_factors(quotient_module(M, Y))
    return factors


# ---------------------------------------------------------------------------
# Casimir operator
# ---------------------------------------------------------------------------

def supertrace_form_matrix(L: LieSuperalgebra) -> SparseRationalMatrix:
    """B_ab = Str(e_a e_b) on the defining matrices."""
    triples = []
    sigma = L.sigma
    for a, Ma in enumerate(L.matrices):
        for b, Mb in enumerate(L.matrices):
            value = Fraction(0)
            for (i, j), x in Ma.items():
                y = Mb.get((j, i))
                if y:
                    value += sigma[i] * x * y
            if value:
                triples.append((a, b, value))
    return SparseRationalMatrix.from_triples(L.dim, L.dim, triples)


def dual_basis(L: LieSuperalgebra) -> List[Vector]:
    """x^a with Str(x^a x_b) = δ_ab."""
    Bt = supertrace_form_matrix(L).transpose()
    out = []
    for a in range(L.dim):
        x = solve(Bt, {a: Fraction(1)})
        if x is None:
            raise ModuleError(f"supertrace form of {L.descriptor} is degenerate")
        out.append(x)
    return out


def casimir_operator(M: Module) -> SparseRationalMatrix:
    """Ω = Σ_a (-1)^{|a|} x^a x_a acting on M; commutes with every action."""
    L = M.algebra
    omega = SparseRationalMatrix.zero(M.dim, M.dim)
    for a, upper in enumerate(dual_basis(L)):
        term = M.action_of(upper) @ M.actions[a]
        omega = omega + term.scale(sign_of(L.parity[a]))
    return omega


def generalized_kernel(A: SparseRationalMatrix) -> Subspace:
    """Union of ker A^k."""
    K = kernel_basis(A)
    n = A.ncols
    while True:
        columns = {c: K.reduce(A.column(c)) for c in range(n)}
        grown = kernel_basis(SparseRationalMatrix.from_columns(n, n, columns))
        if grown.dim == K.dim:
            return K
        K = grown


def stable_image(A: SparseRationalMatrix) -> Subspace:
    """Intersection of the images of A^k (the Fitting complement of the generalized kernel)."""
    n = A.ncols
    power = A
    image = Subspace(n, power.columns.values())
    while True:
        power = power @ A
        nxt = Subspace(n, power.columns.values())
        if nxt.dim == image.dim:
            return nxt
        image = nxt


# ---------------------------------------------------------------------------
# The filtration of W
# ---------------------------------------------------------------------------

def _lift(coords: Vector, basis: List[Vector]) -> Vector:
    out: Vector = {}
    for j, x in coords.items():
        add_scaled(out, basis[j], x)
    return out


@dataclass
class FiltrationReport:
    chain_dims: List[int] = field(default_factory=list)
    factor_weights: List[str] = field(default_factory=list)
    summand_dims: Dict[str, int] = field(default_factory=dict)
    flags: Dict[str, bool] = field(default_factory=dict)
    status: str = "ok"
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "chain_dims": self.chain_dims,
            "factor_weights": self.factor_weights,
            "summand_dims": self.summand_dims,
            "flags": self.flags,
            "status": self.status,
            "notes": self.notes,
        }


def _layer_label(factors: Counter) -> str:
    """One weight for a simple layer, otherwise the factors joined with '+'."""
    return " + ".join(str(w) for w in sorted(factors.elements()))


def analyze_W_structure(L: Optional[LieSuperalgebra] = None) -> FiltrationReport:
    """Split S_2(L, ε) for sl(3|2) and describe W ⊃ W1 ⊃ W2 ⊃ 0."""
    L = L or build_algebra("sl", 3, 2)
    report = FiltrationReport()
    S = sym_power_eps(adjoint_module(L), 2)
    omega = casimir_operator(S)
    W = generalized_kernel(omega)
    rest = stable_image(omega)
    report.summand_dims = {"S2": S.dim, "W": W.dim, "casimir_nonzero": rest.dim}
    logger.info("S_2(L, eps): dim {}, Casimir-nilpotent part {}", S.dim, W.dim)

    big = Weight.parse("(2,0,0|-1,-1)")
    adj = Weight.parse("(1,0,0|0,-1)")
    pieces = {}
    R_mod = submodule(S, rest)
    rest_basis = rest.basis()
    for name, w in (("V(2,0,0|-1,-1)", big), ("adjoint", adj)):
        vectors = []
        for weight, vs in singular_vectors(R_mod, "L"):
            if weight == w:
                vectors.extend(_lift(v, rest_basis) for v in vs)
        if not vectors:
            report.status = "hypothesis_failed"
            report.notes.append(f"no singular vector of weight {w} outside W")
            continue
        pieces[name] = cyclic_submodule(S, vectors[:1])
        report.summand_dims[name] = pieces[name].dim

    total = W
    for space in pieces.values():
        total = subspace_sum(total, space)
    direct = total.dim == S.dim and sum(p.dim for p in pieces.values()) + W.dim == S.dim
    report.flags["direct_sum"] = direct
    if not direct:
        report.status = "hypothesis_failed"
        report.notes.append("S_2 is not the direct sum of the two simple summands and W")
        logger.warning("direct-sum hypothesis for S_2(L, eps) failed")

    W_mod = submodule(S, W)
    W2 = invariants(W_mod)
    W1 = action_span(W_mod)
    report.chain_dims = [W_mod.dim, W1.dim, W2.dim, 0]
    report.flags["W2_is_line"] = W2.dim == 1
    report.flags["W2_inside_W1"] = W2.is_subspace_of(W1)
    report.flags["top_is_trivial_line"] = W_mod.dim - W1.dim == 1
    middle = submodule(W_mod, W1)
    middle_top = quotient_module(middle, invariants(middle)) if W2.is_subspace_of(W1) else middle
    layers = [
        composition_factors(quotient_module(W_mod, W1)),
        composition_factors(middle_top),
        composition_factors(submodule(W_mod, W2)),
    ]
    report.factor_weights = [_layer_label(c) for c in layers]
    trivial = Counter({Weight.zero(L.m, L.n): 1})
    expected_mid = Weight.parse("(1,1,0|0,-2)")
    report.flags["top_factor_trivial"] = layers[0] == trivial
    report.flags["middle_is_V(1,1,0|0,-2)"] = (
        layers[1] == Counter({expected_mid: 1}) and middle_top.dim == simple_module(L, expected_mid).dim
    )
    report.flags["bottom_factor_trivial"] = layers[2] == trivial

    l0_fixed = invariants(W_mod, "L0")
    outside = [v for v in l0_fixed.basis() if not W1.contains(v)]
    report.flags["L0_invariant_outside_W1"] = bool(outside)
    report.flags["indecomposable_evidence"] = report.flags["W2_inside_W1"] and W1.dim < W_mod.dim
    if not all(report.flags.values()):
        report.status = "hypothesis_failed"
        report.notes.append("some filtration checks failed: " + ", ".join(k for k, v in report.flags.items() if not v))
    return report
