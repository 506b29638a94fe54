"""
Finite-dimensional modules over the algebras of cohom_algebra.

A Module stores one exact sparse action matrix per algebra basis element;
weights are read off the diagonal of the Cartan action, so every
construction below keeps a weight basis.
"""
from collections import Counter
from functools import cached_property, lru_cache
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from cohom_algebra import (
    LieSuperalgebra,
    Weight,
    even_gl,
    gl_projection,
    koszul_sort,
    odd_parts,
    positive_root_vectors,
    sign_of,
    simple_root_vectors,
    subalgebra_L0,
)
from cohom_config import ModuleError
from cohom_linalg import (
    SparseRationalMatrix,
    Subspace,
    Vector,
    add_scaled,
    kernel_basis,
)


class Module:
    """A super module: parity, Z-degree and an action matrix per basis element."""

    def __init__(
        self,
        algebra: LieSuperalgebra,
        dim: int,
        parity: Sequence[int],
        actions: Sequence[SparseRationalMatrix],
        z_degree: Optional[Sequence] = None,
        descriptor: str = "",
    ):
        if len(parity) != dim:
            raise ModuleError(f"parity list has {len(parity)} entries for dim {dim}")
        if len(actions) != algebra.dim:
            raise ModuleError(f"need {algebra.dim} action matrices, got {len(actions)}")
        for A in actions:
            if A.shape != (dim, dim):
                raise ModuleError(f"action matrix of shape {A.shape} on a module of dim {dim}")
        self.algebra = algebra
        self.dim = dim
        self.parity = tuple(int(p) % 2 for p in parity)
        self.actions = list(actions)
        self.descriptor = descriptor
        if z_degree is None:
            z_degree = self.d_diagonal()
        self.z_degree = tuple(Fraction(z) for z in z_degree)

    def __repr__(self) -> str:
        return f"Module({self.descriptor or '?'}, dim={self.dim}, over {self.algebra.descriptor})"

    def action_of(self, x: Vector) -> SparseRationalMatrix:
        """Matrix of an algebra element given in coordinates."""
        out = SparseRationalMatrix.zero(self.dim, self.dim)
        for b, k in x.items():
            out = out + self.actions[b].scale(k)
        return out

    def act(self, b: int, v: Vector) -> Vector:
        return self.actions[b].apply(v)

    def d_diagonal(self) -> List[Fraction]:
        """Diagonal of the D action (D is diagonal on a weight basis)."""
        D = self.algebra.D
        return [
            sum((k * self.actions[b].get(v, v) for b, k in D.items()), Fraction(0))
            for v in range(self.dim)
        ]

    @cached_property
    def weights(self) -> Tuple[Weight, ...]:
        L = self.algebra
        diagonals = [{v: A.get(v, v) for v in range(self.dim)} for A in self.actions]
        out = []
        for v in range(self.dim):
            labels = [
                sum((k * diagonals[b][v] for b, k in element.items()), Fraction(0))
                for element in L.label_elements
            ]
            out.append(Weight(tuple(labels), L.m, L.n))
        return tuple(out)

    def parity_dims(self) -> Tuple[int, int]:
        odd = sum(self.parity)
        return self.dim - odd, odd


# ---------------------------------------------------------------------------
# Basic constructions
# ---------------------------------------------------------------------------

def trivial_module(L: LieSuperalgebra) -> Module:
    zero = SparseRationalMatrix.zero(1, 1)
    return Module(L, 1, [0], [zero] * L.dim, z_degree=[0], descriptor="trivial")


def adjoint_module(L: LieSuperalgebra) -> Module:
    actions = []
    for b in range(L.dim):
        columns = {a: L.bracket_basis(b, a) for a in range(L.dim)}
        actions.append(SparseRationalMatrix.from_columns(L.dim, L.dim, columns))
    return Module(L, L.dim, L.parity, actions, z_degree=L.z_degree, descriptor="adjoint")


def natural_module(L: LieSuperalgebra, grading_variant: str = "standard") -> Module:
    """The defining module; `section3` regrades it as W_{-1} = odd part (dim m), W_0 = even line."""
    N = L.size
    actions = [
        SparseRationalMatrix.from_triples(N, N, ((i, j, x) for (i, j), x in M.items()))
        for M in L.matrices
    ]
    if grading_variant == "standard":
        parity = [0 if k < L.m else 1 for k in range(N)]
        return Module(L, N, parity, actions, descriptor="natural")
    if grading_variant != "section3":
        raise ModuleError(f"unknown grading variant {grading_variant!r}")
    if L.n != 1:
        raise ModuleError("the section3 grading is only defined for n = 1")
    parity = [1] * L.m + [0]
    z = [-1] * L.m + [0]
    return Module(L, N, parity, actions, z_degree=z, descriptor="natural:section3")


def dual_module(M: Module) -> Module:
    """(x·φ)(v) = -(-1)^{|x||φ|} φ(x·v)."""
    L = M.algebra
    actions = []
    for b, A in enumerate(M.actions):
        pb = L.parity[b]
        triples = []
        for j, row in A.rows.items():
            s = -sign_of(pb * M.parity[j])
            for i, x in row.items():
                triples.append((i, j, s * x))
        actions.append(SparseRationalMatrix.from_triples(M.dim, M.dim, triples))
    return Module(L, M.dim, M.parity, actions,
                  z_degree=[-z for z in M.z_degree], descriptor=f"dual({M.descriptor})")


def tau_twist(M: Module) -> Module:
    """Precompose the action with the automorphism tau."""
    L = M.algebra
    actions = [M.action_of(L.tau_vector({b: Fraction(1)})) for b in range(L.dim)]
    return Module(L, M.dim, M.parity, actions,
                  z_degree=[-z for z in M.z_degree], descriptor=f"tau({M.descriptor})")


def shift_grading(M: Module, r) -> Module:
    return Module(M.algebra, M.dim, M.parity, M.actions,
                  z_degree=[z + r for z in M.z_degree], descriptor=f"shift({M.descriptor},{r})")


def parity_flip(M: Module) -> Module:
    return Module(M.algebra, M.dim, [1 - p for p in M.parity], M.actions,
                  z_degree=M.z_degree, descriptor=f"flip({M.descriptor})")


def tensor(M: Module, N: Module) -> Module:
    """x(v ⊗ w) = xv ⊗ w + (-1)^{|x||v|} v ⊗ xw; basis index i * N.dim + j."""
    if M.algebra is not N.algebra:
        raise ModuleError("tensor product of modules over different algebras")
    L = M.algebra
    I_N = SparseRationalMatrix.identity(N.dim)
    P = SparseRationalMatrix.diagonal([sign_of(p) for p in M.parity])
    I_M = SparseRationalMatrix.identity(M.dim)
    actions = []
    for b in range(L.dim):
        left = M.actions[b].kron(I_N)
        right = (P if L.parity[b] else I_M).kron(N.actions[b])
        actions.append(left + right)
    parity = [(p + q) % 2 for p in M.parity for q in N.parity]
    z = [a + c for a in M.z_degree for c in N.z_degree]
    return Module(L, M.dim * N.dim, parity, actions, z_degree=z,
                  descriptor=f"({M.descriptor})*({N.descriptor})")


def _power(M: Module, k: int, symmetric: bool) -> Module:
    if k < 0:
        raise ModuleError(f"power degree must be >= 0, got {k}")
    forbidden = 1 if symmetric else 0
    basis = [
        t for t in combinations_with_replacement(range(M.dim), k)
        if all(not (a == b and M.parity[a] == forbidden) for a, b in zip(t, t[1:]))
    ]
    index = {t: i for i, t in enumerate(basis)}
    L = M.algebra
    actions = []
    for b in range(L.dim):
        pb = L.parity[b]
        columns = M.actions[b].columns
        cols: Dict[int, Vector] = {}
        for col, t in enumerate(basis):
            out: Vector = {}
            prefix = 0
            for pos, factor in enumerate(t):
                s = sign_of(pb * prefix)
                for c, x in columns.get(factor, {}).items():
                    normal = koszul_sort(t[:pos] + (c,) + t[pos + 1:], M.parity, symmetric)
                    if normal is None:
                        continue
                    sign, key = normal
                    i = index[key]
                    out[i] = out.get(i, 0) + s * sign * x
                prefix += M.parity[factor]
            cols[col] = {i: x for i, x in out.items() if x}
        actions.append(SparseRationalMatrix.from_columns(len(basis), len(basis), cols))
    parity = [sum(M.parity[a] for a in t) % 2 for t in basis]
    z = [sum((M.z_degree[a] for a in t), Fraction(0)) for t in basis]
    name = "sym" if symmetric else "ext"
    return Module(L, len(basis), parity, actions, z_degree=z,
                  descriptor=f"{name}{k}({M.descriptor})")


def sym_power_eps(M: Module, k: int) -> Module:
    """Super-symmetric power: even factors may repeat, odd ones may not."""
    return _power(M, k, symmetric=True)


def ext_power_eps(M: Module, k: int) -> Module:
    """Super-exterior power: odd factors may repeat, even ones may not."""
    return _power(M, k, symmetric=False)


# ---------------------------------------------------------------------------
# The polynomial model of V(-ε_m + ε_{m+1}) for gl(m|1) / sl(m|1)
# ---------------------------------------------------------------------------

def _drop(S: Tuple[int, ...], j: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Left derivative ∂/∂θ_j of θ_S."""
    if j not in S:
        return None
    pos = S.index(j)
    return sign_of(pos), S[:pos] + S[pos + 1:]


def _insert(T: Tuple[int, ...], i: int) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Left multiplication θ_i θ_T."""
    if i in T:
        return None
    before = sum(1 for t in T if t < i)
    return sign_of(before), tuple(sorted(T + (i,)))


def realization_basis(m: int) -> List[Tuple[int, Tuple[int, ...]]]:
    """(a, S) for the monomials z^a θ_S, grouped by the power of z."""
    return [(a, S) for a in range(m) for S in combinations(range(m), m - 1 - a)]


def eta_vector(m: int, k: int) -> Vector:
    """η_k = ∂/∂θ_k (θ_1 ... θ_m) for k = 1..m."""
    S = tuple(i for i in range(m) if i != k - 1)
    return {realization_basis(m).index((0, S)): Fraction(sign_of(k - 1))}


def build_V_realization(L: LieSuperalgebra) -> Module:
    """Monomials z^a θ_S with a + |S| = m - 1 under the twisted first-order operators.

    E_ij -> θ_i ∂_j - δ_ij,  E_{i,m+1} -> θ_i ∂_z,  E_{m+1,i} -> z ∂_i,
    E_{m+1,m+1} -> z ∂_z + 1; the identity acts as zero.
    """
    m = L.m
    if L.n != 1:
        raise ModuleError("the polynomial realization needs n = 1")
    if m < 2:
        raise ModuleError(f"the polynomial realization needs m >= 2, got {m}")
    basis = realization_basis(m)
    index = {state: k for k, state in enumerate(basis)}
    dim = len(basis)

    def gl_unit(i: int, j: int) -> SparseRationalMatrix:
        triples = []
        for col, (a, S) in enumerate(basis):
            if i < m and j < m:
                d = _drop(S, j)
                if d is not None:
                    t = _insert(d[1], i)
                    if t is not None:
                        triples.append((index[(a, t[1])], col, d[0] * t[0]))
                if i == j:
                    triples.append((col, col, -1))
            elif i < m:
                if a > 0:
                    t = _insert(S, i)
                    if t is not None:
                        triples.append((index[(a - 1, t[1])], col, a * t[0]))
            elif j < m:
                d = _drop(S, j)
                if d is not None:
                    triples.append((index[(a + 1, d[1])], col, d[0]))
            else:
                triples.append((col, col, a + 1))
        return SparseRationalMatrix.from_triples(dim, dim, triples)

    units = {(i, j): gl_unit(i, j) for i in range(m + 1) for j in range(m + 1)}
    actions = []
    for M in L.matrices:
        out = SparseRationalMatrix.zero(dim, dim)
        for (i, j), x in M.items():
            out = out + units[(i, j)].scale(x)
        actions.append(out)
    parity = [len(S) % 2 for _, S in basis]
    z = [a + 1 for a, _ in basis]
    logger.debug("polynomial realization for m={} has dim {}", m, dim)
    return Module(L, dim, parity, actions, z_degree=z, descriptor=f"real:{m}")


# ---------------------------------------------------------------------------
# Weights and gradings
# ---------------------------------------------------------------------------

def weight_spaces(M: Module) -> Dict[Weight, List[int]]:
    out: Dict[Weight, List[int]] = {}
    for v, w in enumerate(M.weights):
        out.setdefault(w, []).append(v)
    return out


def weight_decomposition(M: Module) -> Dict[Weight, Subspace]:
    return {w: Subspace.coordinate(M.dim, idx) for w, idx in weight_spaces(M).items()}


def weight_multiset(M: Module) -> Counter:
    return Counter(M.weights)


def d_eigenvalues(M: Module) -> Counter:
    """Multiset of D-eigenvalues, read from the D action."""
    return Counter(M.d_diagonal())


def check_representation(M: Module) -> List[Tuple[int, int]]:
    """Basis pairs (a, b) where A_<a,b> != A_a A_b - (-1)^{|a||b|} A_b A_a."""
    L = M.algebra
    failures = []
    for a in range(L.dim):
        for b in range(a, L.dim):
            lhs = M.action_of(L.bracket_basis(a, b))
            Aa, Ab = M.actions[a], M.actions[b]
            rhs = Aa @ Ab - (Ab @ Aa).scale(sign_of(L.parity[a] * L.parity[b]))
            if lhs != rhs:
                failures.append((a, b))
    if failures:
        logger.warning("{}: representation property fails on {} pairs", M.descriptor, len(failures))
    return failures


def check_weight_compatibility(M: Module) -> bool:
    """Every action maps weight μ into weight μ + wt(e) with matching parity."""
    L = M.algebra
    for b, A in enumerate(M.actions):
        shift = L.basis_weights[b]
        for i, row in A.rows.items():
            for j in row:
                if M.weights[i] != M.weights[j] + shift:
                    return False
                if M.parity[i] != (M.parity[j] + L.parity[b]) % 2:
                    return False
    return True


# ---------------------------------------------------------------------------
# Closures
# ---------------------------------------------------------------------------

def _stack_kernel(blocks: List[SparseRationalMatrix], ncols: int) -> Subspace:
    """Joint kernel of several matrices with ncols columns."""
    rows: Dict[int, Dict[int, Fraction]] = {}
    offset = 0
    for A in blocks:
        for r, row in A.rows.items():
            rows[offset + r] = dict(row)
        offset += A.nrows
    return kernel_basis(SparseRationalMatrix(max(offset, 1), ncols, rows))


def _part_indices(M: Module, algebra_part: str) -> List[int]:
    if algebra_part == "L":
        return list(range(M.algebra.dim))
    if algebra_part == "L0":
        return M.algebra.degree_indices(0)
    raise ModuleError(f"algebra part must be 'L' or 'L0', got {algebra_part!r}")


def singular_vectors(M: Module, algebra_part: str = "L") -> List[Tuple[Weight, List[Vector]]]:
    """Joint kernel of the positive root vectors, weight by weight (highest first)."""
    raising = positive_root_vectors(M.algebra, algebra_part)
    out = []
    for w, idx in sorted(weight_spaces(M).items(), key=lambda item: item[0], reverse=True):
        blocks = [M.actions[b].submatrix(range(M.dim), idx) for b in raising]
        local = _stack_kernel(blocks, len(idx))
        if local.dim:
            vectors = [{idx[c]: x for c, x in v.items()} for v in local.basis()]
            out.append((w, vectors))
    return out


def cyclic_submodule(
    M: Module, seeds: Iterable[Vector], algebra_indices: Optional[Sequence[int]] = None
) -> Subspace:
    """Smallest subspace containing the seeds and stable under the chosen actions."""
    ops = [M.actions[b] for b in (algebra_indices if algebra_indices is not None else range(M.algebra.dim))]
    space = Subspace(M.dim)
    queue = []
    for v in seeds:
        r = space.reduce(v)
        if r and space.absorb(r):
            queue.append(r)
    while queue:
        u = queue.pop()
        for A in ops:
            r = space.reduce(A.apply(u))
            if r and space.absorb(r):
                queue.append(r)
    return space


def largest_invariant_subspace(
    M: Module, K: Subspace, algebra_indices: Optional[Sequence[int]] = None
) -> Subspace:
    """Fixpoint of K_{t+1} = {u in K_t : e·u in K_t for every basis e}."""
    ops = [M.actions[b] for b in (algebra_indices if algebra_indices is not None else range(M.algebra.dim))]
    current = K
    while True:
        basis = current.basis()
        if not basis:
            return current
        columns = {}
        for j, v in enumerate(basis):
            col: Vector = {}
            for t, A in enumerate(ops):
                for c, x in current.reduce(A.apply(v)).items():
                    col[t * M.dim + c] = x
            columns[j] = col
        relation = SparseRationalMatrix.from_columns(max(len(ops) * M.dim, 1), len(basis), columns)
        combos = kernel_basis(relation).basis()
        if len(combos) == len(basis):
            return current
        vectors = []
        for combo in combos:
            v: Vector = {}
            for j, k in combo.items():
                add_scaled(v, basis[j], k)
            vectors.append(v)
        current = Subspace(M.dim, vectors)


def is_invariant(M: Module, S: Subspace) -> bool:
    return all(S.contains(A.apply(v)) for A in M.actions for v in S.basis())


def quotient_module(M: Module, S: Subspace) -> Module:
    """M/S on the unit vectors of the non-pivot coordinates."""
    if S.ambient != M.dim:
        raise ModuleError("subspace lives in a different ambient space")
    if not is_invariant(M, S):
        raise ModuleError("cannot form a quotient by a non-invariant subspace")
    keep = S.complement_indices()
    position = {c: j for j, c in enumerate(keep)}
    actions = []
    for A in M.actions:
        columns = {}
        for j, c in enumerate(keep):
            r = S.reduce(A.column(c))
            columns[j] = {position[i]: x for i, x in r.items()}
        actions.append(SparseRationalMatrix.from_columns(len(keep), len(keep), columns))
    return Module(M.algebra, len(keep), [M.parity[c] for c in keep], actions,
                  z_degree=[M.z_degree[c] for c in keep], descriptor=f"{M.descriptor}/sub")


def submodule(M: Module, S: Subspace) -> Module:
    """S as a module on its echelon basis (one pivot per basis vector)."""
    if not is_invariant(M, S):
        raise ModuleError("subspace is not invariant")
    basis = S.basis()
    pivots = S.pivots
    actions = []
    for A in M.actions:
        columns = {}
        for j, v in enumerate(basis):
            coords = S.coordinates(A.apply(v))
            columns[j] = {i: x for i, x in enumerate(coords) if x}
        actions.append(SparseRationalMatrix.from_columns(len(basis), len(basis), columns))
    return Module(M.algebra, len(basis), [M.parity[p] for p in pivots], actions,
                  z_degree=[M.z_degree[p] for p in pivots], descriptor=f"sub({M.descriptor})")


def action_span(M: Module, algebra_part: str = "L") -> Subspace:
    """Span of all e·u (the submodule L·M)."""
    space = Subspace(M.dim)
    for b in _part_indices(M, algebra_part):
        for col in M.actions[b].columns.values():
            space.absorb(col)
    return space


def invariants(M: Module, algebra_part: str = "L") -> Subspace:
    """Joint kernel of every action of the chosen part."""
    return _stack_kernel([M.actions[b] for b in _part_indices(M, algebra_part)], M.dim)


def restrict_module(M: Module, target: LieSuperalgebra) -> Module:
    """Restrict along L0 -> L (target.parent is M.algebra) or sl(m|n) -> gl(m|n)."""
    source = M.algebra
    if target.parent is source:
        actions = [M.actions[b] for b in target.parent_indices]
    elif source.kind == "gl" and target.kind == "sl" and (source.m, source.n) == (target.m, target.n):
        actions = [M.action_of(source.coordinates(mat)) for mat in target.matrices]
    else:
        raise ModuleError(f"no restriction from {source.descriptor} to {target.descriptor}")
    return Module(target, M.dim, M.parity, actions, z_degree=M.z_degree,
                  descriptor=f"res({M.descriptor})")


def inflate_to_gl(M: Module, gl: LieSuperalgebra) -> Module:
    """Let gl(m|n) act on an sl(m|n)-module through A -> A - Str(A)/(m-n) I."""
    P = gl_projection(M.algebra, gl)
    actions = [M.action_of(P.column(b)) for b in range(gl.dim)]
    return Module(gl, M.dim, M.parity, actions, z_degree=M.z_degree,
                  descriptor=f"gl({M.descriptor})")


# ---------------------------------------------------------------------------
# Highest-weight modules
# ---------------------------------------------------------------------------

def weyl_dimension(diffs: Sequence) -> int:
    """dim of the simple sl(k)-module with labels a_1..a_{k-1}."""
    k = len(diffs) + 1
    value = Fraction(1)
    for i in range(k):
        for j in range(i + 1, k):
            value *= Fraction(sum(diffs[i:j], Fraction(0)) + (j - i), j - i)
    return int(value)


@lru_cache(maxsize=None)
def _gl_simple(k: int, partition: Tuple[int, ...]) -> Module:
    """Simple gl(k)-module of a partition, cut out of a tensor product of wedge powers."""
    G = even_gl(k)
    if not any(partition):
        return Module(G, 1, [0], [SparseRationalMatrix.zero(1, 1)] * G.dim,
                      z_degree=[0], descriptor="gl-trivial")
    columns = [sum(1 for part in partition if part >= j) for j in range(1, partition[0] + 1)]
    nat = natural_module(G)
    host = None
    top = 0
    for c in columns:
        wedge = ext_power_eps(nat, c)
        # e_1 ∧ ... ∧ e_c is the first monomial of the wedge basis
        if host is None:
            host, top = wedge, 0
        else:
            host, top = tensor(host, wedge), top * wedge.dim
    V = submodule(host, cyclic_submodule(host, [{top: Fraction(1)}]))
    expected = weyl_dimension([partition[i] - partition[i + 1] for i in range(k - 1)])
    if V.dim != expected:
        raise ModuleError(f"gl({k}) module {partition} has dim {V.dim}, Weyl formula gives {expected}")
    return V


def _block_data(labels: Sequence[Fraction]) -> Tuple[Tuple[int, ...], Fraction]:
    base = labels[-1]
    partition = []
    for x in labels:
        d = x - base
        if d.denominator != 1:
            raise ModuleError(f"labels {tuple(str(y) for y in labels)} are not integral within a block")
        partition.append(int(d))
    if any(a < b for a, b in zip(partition, partition[1:])):
        raise ModuleError(f"labels {tuple(str(y) for y in labels)} are not dominant within a block")
    return tuple(partition), base


def _check_weight(L: LieSuperalgebra, weight: Weight):
    if (weight.m, weight.n) != (L.m, L.n):
        raise ModuleError(f"weight {weight} does not fit {L.descriptor}")
    root_kind = L.parent.kind if L.parent is not None else L.kind
    if root_kind == "sl" and weight.label_sum() != 0:
        raise ModuleError(f"sl labels must sum to zero, got {weight}")


def simple_L0_module(L: LieSuperalgebra, weight: Weight) -> Module:
    """Simple module of the even part L0 with the given labels.

    Built as V_gl(m)(λ1) ⊗ V_gl(n)(λ2); the last label of each block
    enters as a multiple of the block trace.
    """
    L0 = L if L.kind == "L0" else subalgebra_L0(L)
    _check_weight(L0, weight)
    m, n = L0.m, L0.n
    p1, base1 = _block_data(weight.even_labels)
    p2, base2 = _block_data(weight.odd_labels)
    V1, V2 = _gl_simple(m, p1), _gl_simple(n, p2)
    I1 = SparseRationalMatrix.identity(V1.dim)
    I2 = SparseRationalMatrix.identity(V2.dim)
    dim = V1.dim * V2.dim
    actions = []
    for M in L0.matrices:
        A1 = SparseRationalMatrix.zero(V1.dim, V1.dim)
        A2 = SparseRationalMatrix.zero(V2.dim, V2.dim)
        scalar = Fraction(0)
        for (i, j), x in M.items():
            if i < m and j < m:
                A1 = A1 + V1.actions[i * m + j].scale(x)
                if i == j:
                    scalar += base1 * x
            elif i >= m and j >= m:
                A2 = A2 + V2.actions[(i - m) * n + (j - m)].scale(x)
                if i == j:
                    scalar += base2 * x
            else:
                raise ModuleError("L0 element with an odd matrix entry")
        total = A1.kron(I2) + I1.kron(A2)
        if scalar:
            total = total + SparseRationalMatrix.identity(dim).scale(scalar)
        actions.append(total)
    return Module(L0, dim, [0] * dim, actions, descriptor=f"L0:{weight.compact()}")


def kac_module(L: LieSuperalgebra, weight: Weight) -> Module:
    """Λ(L_{+1}) ⊗ V0(weight) with L_{-1} killing 1 ⊗ V0."""
    L0 = subalgebra_L0(L)
    V0 = simple_L0_module(L0, weight)
    to_L0 = {p: k for k, p in enumerate(L0.parent_indices)}
    lowering = sorted(odd_parts(L)[1])
    basis: List[Tuple[Tuple[int, ...], int]] = []
    for size in range(len(lowering) + 1):
        for S in combinations(lowering, size):
            basis.extend((S, v) for v in range(V0.dim))
    index = {state: k for k, state in enumerate(basis)}
    memo: Dict[Tuple[int, Tuple[int, ...], int], Vector] = {}

    def multiply(s: int, vec: Vector) -> Vector:
        """f_s · vec for an odd f_s in L_{+1}."""
        out: Vector = {}
        for k, x in vec.items():
            S, v = basis[k]
            if s in S:
                continue
            sign = sign_of(sum(1 for t in S if t < s))
            key = index[(tuple(sorted(S + (s,))), v)]
            out[key] = out.get(key, 0) + sign * x
        return {k: x for k, x in out.items() if x}

    def act(b: int, S: Tuple[int, ...], v: int) -> Vector:
        key = (b, S, v)
        if key in memo:
            return memo[key]
        if not S:
            z = L.z_degree[b]
            if z == 0:
                out = {index[((), w)]: x for w, x in V0.actions[to_L0[b]].column(v).items()}
            elif z < 0:
                out = {}
            else:
                out = {index[((b,), v)]: Fraction(1)}
        else:
            s, rest = S[0], S[1:]
            out = {}
            for c, y in L.bracket_basis(b, s).items():
                add_scaled(out, act(c, rest, v), y)
            tail = multiply(s, act(b, rest, v))
            add_scaled(out, tail, sign_of(L.parity[b]))
        memo[key] = out
        return out

    actions = []
    for b in range(L.dim):
        columns = {k: act(b, S, v) for k, (S, v) in enumerate(basis)}
        actions.append(SparseRationalMatrix.from_columns(len(basis), len(basis), columns))
    parity = [len(S) % 2 for S, _ in basis]
    M = Module(L, len(basis), parity, actions, descriptor=f"kac:{weight.compact()}")
    logger.debug("Kac module {} over {} has dim {}", weight, L.descriptor, M.dim)
    return M


def _top_index(M: Module, weight: Weight) -> int:
    idx = weight_spaces(M).get(weight, [])
    if len(idx) != 1:
        raise ModuleError(f"weight {weight} has multiplicity {len(idx)} in {M.descriptor}")
    return idx[0]


def graded_radical(M: Module, top: Weight) -> Subspace:
    """Largest submodule missing the top line of a highest-weight module.

    Weight by weight from the top: v lies in it iff every simple positive
    root vector maps v into it.
    """
    raising = simple_root_vectors(M.algebra)
    spaces = weight_spaces(M)
    radical = Subspace(M.dim)
    for w in sorted(spaces, key=lambda mu: mu.depth_below(top)):
        if w == top:
            continue
        idx = spaces[w]
        columns = {}
        for j, c in enumerate(idx):
            col: Vector = {}
            for t, b in enumerate(raising):
                for r, x in radical.reduce(M.actions[b].column(c)).items():
                    col[t * M.dim + r] = x
            columns[j] = col
        relation = SparseRationalMatrix.from_columns(max(len(raising) * M.dim, 1), len(idx), columns)
        for v in kernel_basis(relation).basis():
            radical.absorb({idx[j]: x for j, x in v.items()})
    return radical


def simple_module(L: LieSuperalgebra, weight: Weight, method: str = "graded") -> Module:
    """V(weight) as the Kac module modulo its maximal submodule."""
    K = kac_module(L, weight)
    if method == "graded":
        radical = graded_radical(K, weight)
    elif method == "fixpoint":
        top = _top_index(K, weight)
        radical = largest_invariant_subspace(K, Subspace.coordinate(K.dim, [i for i in range(K.dim) if i != top]))
    else:
        raise ModuleError(f"unknown radical method {method!r}")
    V = quotient_module(K, radical)
    V.descriptor = f"hw:{weight.compact()}"
    logger.debug("V{} over {}: dim {} (Kac dim {})", weight, L.descriptor, V.dim, K.dim)
    return V


def is_simple(M: Module) -> bool:
    """Cyclic from every nonzero basis vector."""
    return all(cyclic_submodule(M, [{v: Fraction(1)}]).dim == M.dim for v in range(M.dim))
