"""
Chevalley-Eilenberg cochains C^0..C^3(L, V) and their cohomology in degrees 0..2.

An n-cochain is stored by its values on normalized super-exterior tuples of
algebra basis indices; coordinate (t, v) sits at index t * dim V + v.
Values on unsorted arguments follow from the Koszul sign of sorting.
"""
import time
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from cohom_algebra import (
    LieSuperalgebra,
    Weight,
    build_algebra,
    gl_projection,
    inclusion_into_gl,
    koszul_sort,
    sign_of,
)
from cohom_config import Budget, CochainError
from cohom_linalg import (
    SparseRationalMatrix,
    Subspace,
    Vector,
    add_scaled,
    fstr,
    kernel_basis,
    rank,
    solve,
)
from cohom_modules import Module, build_V_realization, eta_vector, restrict_module

MAX_DEGREE = 3
METHODS = ("brute", "invariant", "both")


class CochainSpace:
    """Basis of C^n(L, V): pairs (normalized tuple, module basis vector)."""

    def __init__(self, L: LieSuperalgebra, V: Module, n: int):
        if not 0 <= n <= MAX_DEGREE:
            raise CochainError(f"cochain degree must lie in 0..{MAX_DEGREE}, got {n}")
        if V.algebra is not L:
            raise CochainError("coefficient module lives over a different algebra")
        self.algebra = L
        self.module = V
        self.degree = n
        parity = L.parity
        self.tuples: List[Tuple[int, ...]] = [
            t for t in combinations_with_replacement(range(L.dim), n)
            if all(not (a == b and parity[a] == 0) for a, b in zip(t, t[1:]))
        ]
        self.index = {t: i for i, t in enumerate(self.tuples)}
        zero = Weight.zero(L.m, L.n)
        weights = []
        for t in self.tuples:
            w = zero
            for a in t:
                w = w - L.basis_weights[a]
            weights.append(w)
        self.tuple_weights = weights

    @property
    def dim(self) -> int:
        return len(self.tuples) * self.module.dim

    def __repr__(self) -> str:
        return f"CochainSpace(C^{self.degree}, dim={self.dim})"

    def position(self, t: Tuple[int, ...], v: int) -> int:
        return self.index[t] * self.module.dim + v

    def split(self, k: int) -> Tuple[Tuple[int, ...], int]:
        i, v = divmod(k, self.module.dim)
        return self.tuples[i], v

    def weight(self, k: int) -> Weight:
        i, v = divmod(k, self.module.dim)
        return self.module.weights[v] + self.tuple_weights[i]

    def normalize(self, args: Sequence[int]) -> Optional[Tuple[int, Tuple[int, ...]]]:
        return koszul_sort(args, self.algebra.parity, symmetric=False)

    @cached_property
    def blocks(self) -> Dict[Weight, List[int]]:
        out: Dict[Weight, List[int]] = {}
        for k in range(self.dim):
            out.setdefault(self.weight(k), []).append(k)
        return out

    def block(self, weight: Weight) -> List[int]:
        return self.blocks.get(weight, [])

    def label(self, k: int) -> str:
        t, v = self.split(k)
        args = ",".join(self.algebra.basis_labels[a] for a in t)
        return f"({args})->v{v}"


def cochain_space(L: LieSuperalgebra, V: Module, n: int) -> CochainSpace:
    return CochainSpace(L, V, n)


def evaluate_cochain(space: CochainSpace, f: Vector, args: Sequence[int]) -> Vector:
    """f(e_{a_1}, ..., e_{a_n}) as a vector of the module."""
    if len(args) != space.degree:
        raise CochainError(f"a {space.degree}-cochain takes {space.degree} arguments")
    normal = space.normalize(args)
    if normal is None:
        return {}
    sign, t = normal
    base = space.index[t] * space.module.dim
    return {v: sign * f[base + v] for v in range(space.module.dim) if f.get(base + v)}


def cochain_from_values(space: CochainSpace, values: Dict[Tuple[int, ...], Vector]) -> Vector:
    """Cochain with prescribed values on (not necessarily sorted) argument tuples."""
    f: Vector = {}
    for args, value in values.items():
        normal = space.normalize(args)
        if normal is None:
            if value:
                raise CochainError(f"arguments {args} force the value zero")
            continue
        sign, t = normal
        base = space.index[t] * space.module.dim
        for v, x in value.items():
            f[base + v] = sign * Fraction(x)
    return {k: x for k, x in f.items() if x}


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

class _Functional:
    """Row functional: Σ c·A_b φ(t) terms plus Σ c·φ(t) terms."""

    __slots__ = ("act", "maps")

    def __init__(self):
        self.act: Dict[Tuple[int, Tuple[int, ...]], Fraction] = {}
        self.maps: Dict[Tuple[int, ...], Fraction] = {}

    def add_map(self, space: CochainSpace, args: Sequence[int], coeff) -> None:
        normal = space.normalize(args)
        if normal is None:
            return
        sign, t = normal
        self.maps[t] = self.maps.get(t, 0) + sign * coeff


def _delta_functional(source: CochainSpace, J: Tuple[int, ...]) -> _Functional:
    """(δφ)(e_J) for the degree-n differential, n = len(J) - 1."""
    L = source.algebra
    p = L.parity
    fn = _Functional()
    prefix = 0
    for pos, b in enumerate(J):
        rest = J[:pos] + J[pos + 1:]
        coeff = sign_of(pos) * sign_of(p[b] * prefix)
        key = (b, rest)
        fn.act[key] = fn.act.get(key, 0) + coeff
        prefix += p[b]
    n = len(J) - 1
    if n == 1:
        x, y = J
        for c, s in L.bracket_basis(x, y).items():
            fn.add_map(source, (c,), -s)
    elif n == 2:
        x, y, z = J
        for c, s in L.bracket_basis(x, y).items():
            fn.add_map(source, (c, z), -s)
        for c, s in L.bracket_basis(x, z).items():
            fn.add_map(source, (c, y), sign_of(p[y] * p[z]) * s)
        for c, s in L.bracket_basis(y, z).items():
            fn.add_map(source, (x, c), s)
    return fn


def _action_functional(space: CochainSpace, x: int, J: Tuple[int, ...]) -> _Functional:
    """(x·φ)(e_J) = x·φ(e_J) - Σ φ(..., <x, e_j>, ...) for an even x."""
    L = space.algebra
    fn = _Functional()
    fn.act[(x, J)] = Fraction(1)
    for pos, a in enumerate(J):
        for c, s in L.bracket_basis(x, a).items():
            fn.add_map(space, J[:pos] + (c,) + J[pos + 1:], -s)
    return fn


def _rows_with_weight(space: CochainSpace, rows: List[Tuple[int, ...]], weight: Optional[Weight]):
    """(row tuple, module index) pairs, restricted to a total weight."""
    V = space.module
    if weight is None:
        for J in rows:
            for w in range(V.dim):
                yield J, w
        return
    by_weight: Dict[Weight, List[int]] = {}
    for w, mu in enumerate(V.weights):
        by_weight.setdefault(mu, []).append(w)
    L = space.algebra
    zero = Weight.zero(L.m, L.n)
    for J in rows:
        shift = zero
        for a in J:
            shift = shift - L.basis_weights[a]
        for w in by_weight.get(weight - shift, ()):
            yield J, w


def _assemble(
    source: CochainSpace,
    row_pairs,
    functional,
    row_index,
    col_index: Optional[Dict[int, int]],
    nrows: int,
    ncols: int,
) -> SparseRationalMatrix:
    V = source.module
    rows: Dict[int, Dict[int, Fraction]] = {}
    cache: Dict[Tuple[int, ...], _Functional] = {}
    for J, w in row_pairs:
        fn = cache.get(J)
        if fn is None:
            fn = cache[J] = functional(J)
        entries: Dict[int, Fraction] = {}
        for (b, t), c in fn.act.items():
            for v, x in V.actions[b].row(w).items():
                k = source.position(t, v)
                entries[k] = entries.get(k, 0) + c * x
        for t, c in fn.maps.items():
            k = source.position(t, w)
            entries[k] = entries.get(k, 0) + c
        row: Dict[int, Fraction] = {}
        for k, x in entries.items():
            if not x:
                continue
            if col_index is not None:
                if k not in col_index:
                    raise CochainError("assembled entry leaves its weight block")
                k = col_index[k]
            row[k] = x
        if row:
            rows[row_index(J, w)] = row
    return SparseRationalMatrix(nrows, ncols, rows)


def differential(
    L: LieSuperalgebra, V: Module, n: int, weight: Optional[Weight] = None,
    source: Optional[CochainSpace] = None, target: Optional[CochainSpace] = None,
) -> SparseRationalMatrix:
    """δ^n : C^n -> C^{n+1}, optionally only its block of one total weight.

    With a weight, rows and columns are indexed by positions inside
    `target.block(weight)` and `source.block(weight)`.
    """
    if not 0 <= n <= 2:
        raise CochainError(f"differential degree must lie in 0..2, got {n}")
    source = source or CochainSpace(L, V, n)
    target = target or CochainSpace(L, V, n + 1)
    started = time.perf_counter()
    functional = lambda J: _delta_functional(source, J)
    if weight is None:
        matrix = _assemble(
            source, _rows_with_weight(target, target.tuples, None), functional,
            target.position, None, target.dim, source.dim,
        )
    else:
        row_local = {k: i for i, k in enumerate(target.block(weight))}
        col_local = {k: j for j, k in enumerate(source.block(weight))}
        matrix = _assemble(
            source, _rows_with_weight(target, target.tuples, weight), functional,
            lambda J, w: row_local[target.position(J, w)], col_local,
            len(row_local), len(col_local),
        )
    logger.debug(
        "δ^{} on {} with {}: {}x{} ({} nonzeros) in {:.3f}s",
        n, L.descriptor, V.descriptor, matrix.nrows, matrix.ncols, matrix.nnz,
        time.perf_counter() - started,
    )
    return matrix


def cochain_action(space: CochainSpace, x: int, weight: Weight) -> SparseRationalMatrix:
    """Action of an even basis element on the cochains of one weight block.

    Rows are full indices of C^n, columns positions inside the block.
    """
    if space.algebra.parity[x]:
        raise CochainError("cochain action is only assembled for even elements")
    col_local = {k: j for j, k in enumerate(space.block(weight))}
    target_weight = weight + space.algebra.basis_weights[x]
    return _assemble(
        space, _rows_with_weight(space, space.tuples, target_weight),
        lambda J: _action_functional(space, x, J),
        space.position, col_local, space.dim, len(col_local),
    )


# ---------------------------------------------------------------------------
# L0-invariant subcomplex
# ---------------------------------------------------------------------------

@dataclass
class InvariantCochains:
    """Basis of C^n(L, V)^{L0}, held inside the weight-zero block."""

    space: CochainSpace
    columns: List[int]
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def basis_matrix(self) -> SparseRationalMatrix:
        vectors = self.subspace.basis()
        return SparseRationalMatrix.from_columns(len(self.columns), len(vectors), dict(enumerate(vectors)))

    def full_vectors(self) -> List[Vector]:
        return [self.to_full(v) for v in self.subspace.basis()]

    def to_full(self, local: Vector) -> Vector:
        return {self.columns[j]: x for j, x in local.items()}

    def to_local(self, full: Vector) -> Vector:
        position = {k: j for j, k in enumerate(self.columns)}
        if any(k not in position for k in full):
            raise CochainError("cochain has components outside the weight-zero block")
        return {position[k]: x for k, x in full.items()}


def invariant_subcomplex(L: LieSuperalgebra, V: Module, n: int,
                         space: Optional[CochainSpace] = None) -> InvariantCochains:
    """Weight-zero cochains killed by every root vector of L0."""
    space = space or CochainSpace(L, V, n)
    zero = Weight.zero(L.m, L.n)
    columns = space.block(zero)
    roots = [b for b in L.positive_root_indices + L.negative_root_indices if L.z_degree[b] == 0]
    rows: Dict[int, Dict[int, Fraction]] = {}
    offset = 0
    for x in roots:
        A = cochain_action(space, x, zero)
        for r, row in A.rows.items():
            rows[offset + r] = row
        offset += A.nrows
    stacked = SparseRationalMatrix(max(offset, 1), len(columns), rows)
    K = kernel_basis(stacked)
    logger.debug("C^{}({}, {})^L0: weight-zero block {}, invariants {}",
                 n, L.descriptor, V.descriptor, len(columns), K.dim)
    return InvariantCochains(space, columns, K)


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------

def _serialize(v: Vector) -> List[Tuple[int, str]]:
    return [(k, fstr(x)) for k, x in sorted(v.items())]


@dataclass
class CohomologyReport:
    algebra: str
    module: str
    degree: int
    method: str
    cochain_dims: Dict[str, int] = field(default_factory=dict)
    rank_previous: int = 0
    dim_kernel: int = 0
    dim_H: int = 0
    representatives: List[Vector] = field(default_factory=list)
    coboundary_status: List[str] = field(default_factory=list)
    elapsed: float = 0.0
    flagged: bool = False
    method_used: str = ""

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra,
            "module": self.module,
            "degree": self.degree,
            "method": self.method,
            "method_used": self.method_used,
            "cochain_dims": self.cochain_dims,
            "rank_previous": self.rank_previous,
            "dim_kernel": self.dim_kernel,
            "dim_H": self.dim_H,
            "representatives": [_serialize(v) for v in self.representatives],
            "coboundary_status": self.coboundary_status,
            "elapsed": round(self.elapsed, 3),
            "flagged": self.flagged,
        }


def _representatives(kernel: List[Vector], image: List[Vector], ambient: int) -> List[Vector]:
    """Kernel vectors independent modulo the image, each reduced modulo the image."""
    image_span = Subspace(ambient, image)
    span = image_span.copy()
    reps = []
    for z in kernel:
        if span.absorb(z):
            reps.append(image_span.reduce(z))
    return reps


def _brute(L, V, n, budget: Budget) -> Tuple[int, int, List[Vector], Dict[str, int]]:
    spaces = {k: CochainSpace(L, V, k) for k in range(max(n - 1, 0), n + 2)}
    budget.check(f"δ^{n}")
    D = differential(L, V, n, source=spaces[n], target=spaces[n + 1])
    ker = kernel_basis(D)
    image: List[Vector] = []
    rank_prev = 0
    if n > 0:
        budget.check(f"δ^{n - 1}")
        P = differential(L, V, n - 1, source=spaces[n - 1], target=spaces[n])
        rank_prev = rank(P)
        image = list(P.columns.values())
    reps = _representatives(ker.basis(), image, spaces[n].dim)
    dims = {f"C{k}": s.dim for k, s in spaces.items()}
    return ker.dim, rank_prev, reps, dims


def _invariant(L, V, n, budget: Budget) -> Tuple[int, int, List[Vector], Dict[str, int]]:
    zero = Weight.zero(L.m, L.n)
    spaces = {k: CochainSpace(L, V, k) for k in range(max(n - 1, 0), n + 2)}
    budget.check(f"invariant cochains of degree {n}")
    K = invariant_subcomplex(L, V, n, spaces[n])
    D = differential(L, V, n, zero, spaces[n], spaces[n + 1])
    ker = kernel_basis(D @ K.basis_matrix())
    basis = K.subspace.basis()
    kernel_vectors = []
    for combo in ker.basis():
        v: Vector = {}
        for j, x in combo.items():
            add_scaled(v, basis[j], x)
        kernel_vectors.append(v)
    image: List[Vector] = []
    rank_prev = 0
    if n > 0:
        budget.check(f"invariant cochains of degree {n - 1}")
        K_prev = invariant_subcomplex(L, V, n - 1, spaces[n - 1])
        P = differential(L, V, n - 1, zero, spaces[n - 1], spaces[n]) @ K_prev.basis_matrix()
        rank_prev = rank(P)
        image = list(P.columns.values())
    reps = [K.to_full(v) for v in _representatives(kernel_vectors, image, len(K.columns))]
    dims = {f"C{k}": s.dim for k, s in spaces.items()}
    dims[f"C{n}_invariant"] = K.dim
    return ker.dim, rank_prev, reps, dims


def cohomology(
    L: LieSuperalgebra, V: Module, n: int, method: str = "invariant",
    budget: Optional[Budget] = None,
) -> CohomologyReport:
    """dim H^n(L, V) = dim ker δ^n - rank δ^{n-1} on the full or the invariant complex."""
    if not 0 <= n <= 2:
        raise CochainError(f"cohomology is computed in degrees 0..2, got {n}")
    if method not in METHODS:
        raise CochainError(f"method must be one of {METHODS}, got {method!r}")
    budget = budget or Budget()
    started = time.perf_counter()
    report = CohomologyReport(L.descriptor, V.descriptor, n, method)
    if method == "both":
        brute = _brute(L, V, n, budget)
        inv = _invariant(L, V, n, budget)
        h_brute, h_inv = brute[0] - brute[1], inv[0] - inv[1]
        chosen = brute
        report.method_used = "brute"
        if h_brute != h_inv:
            report.flagged = True
            logger.warning("H^{}({}, {}): brute {} but invariant {}", n, L.descriptor, V.descriptor, h_brute, h_inv)
        report.cochain_dims = {**brute[3], **inv[3]}
    else:
        chosen = (_brute if method == "brute" else _invariant)(L, V, n, budget)
        report.method_used = method
        report.cochain_dims = chosen[3]
    report.dim_kernel, report.rank_previous, report.representatives = chosen[0], chosen[1], chosen[2]
    report.dim_H = report.dim_kernel - report.rank_previous
    if report.dim_H < 0 or report.dim_H != len(report.representatives):
        raise CochainError(f"inconsistent cohomology count for H^{n}({L.descriptor}, {V.descriptor})")
    for rep in report.representatives:
        if n == 0:
            report.coboundary_status.append("not_coboundary")
        else:
            witness = solve(differential(L, V, n - 1), rep)
            report.coboundary_status.append("coboundary" if witness is not None else "not_coboundary")
    report.elapsed = time.perf_counter() - started
    logger.info("H^{}({}, {}) = {} [{}] in {:.2f}s", n, L.descriptor, V.descriptor,
                report.dim_H, report.method_used, report.elapsed)
    return report


def is_coboundary(L: LieSuperalgebra, V: Module, cocycle: Vector, degree: int = 2) -> Optional[Vector]:
    """A cochain h with δh = cocycle, or None (certified by the exact solve)."""
    if not 1 <= degree <= 2:
        raise CochainError("coboundary test is defined in degrees 1 and 2")
    if differential(L, V, degree).apply(cocycle):
        raise CochainError("input is not a cocycle")
    return solve(differential(L, V, degree - 1), cocycle)


def check_square_zero(L: LieSuperalgebra, V: Module, weight: Optional[Weight] = None) -> bool:
    """δ^1 δ^0 = 0 and δ^2 δ^1 = 0 (on one weight block when given)."""
    spaces = [CochainSpace(L, V, k) for k in range(4)]
    ok = True
    for n in (0, 1):
        first = differential(L, V, n, weight, spaces[n], spaces[n + 1])
        second = differential(L, V, n + 1, weight, spaces[n + 1], spaces[n + 2])
        if not (second @ first).is_zero():
            logger.warning("δ^{} δ^{} != 0 for {} with {}", n + 1, n, L.descriptor, V.descriptor)
            ok = False
    return ok


# ---------------------------------------------------------------------------
# Pullbacks, restriction and the gl extension
# ---------------------------------------------------------------------------

def pullback_cochain(
    f: Vector, source: CochainSpace, target: CochainSpace, P: SparseRationalMatrix
) -> Vector:
    """(P*f)(e_1, ..., e_n) = f(P e_1, ..., P e_n).

    P maps target-algebra coordinates to source-algebra coordinates; both
    spaces share the coefficient module's basis.
    """
    if source.degree != target.degree or source.module.dim != target.module.dim:
        raise CochainError("pullback needs cochain spaces of equal degree and module dimension")
    if P.shape != (source.algebra.dim, target.algebra.dim):
        raise CochainError(f"pullback map has shape {P.shape}")
    dim_v = source.module.dim
    out: Vector = {}
    for T in target.tuples:
        value: Vector = {}
        for choice in product(*(P.column(a).items() for a in T)):
            coeff = Fraction(1)
            for _, x in choice:
                coeff *= x
            add_scaled(value, evaluate_cochain(source, f, [c for c, _ in choice]), coeff)
        base = target.index[T] * dim_v
        for v, x in value.items():
            out[base + v] = x
    return out


def extend_to_gl(f: Vector, sl_space: CochainSpace, gl_space: CochainSpace) -> Vector:
    """f̄ = f on sl × sl and f̄(I, ·) = 0, i.e. the pullback along gl -> sl."""
    gl = gl_space.algebra
    V = gl_space.module
    if not V.action_of(gl.identity()).is_zero():
        raise CochainError("the identity matrix must act as zero on the coefficient module")
    return pullback_cochain(f, sl_space, gl_space, gl_projection(sl_space.algebra, gl))


def restrict_to_sl(g: Vector, gl_space: CochainSpace, sl_space: CochainSpace) -> Vector:
    return pullback_cochain(g, gl_space, sl_space, inclusion_into_gl(sl_space.algebra, gl_space.algebra))


def _pullback_matrix(source: CochainSpace, target: CochainSpace, P: SparseRationalMatrix,
                     columns: Sequence[int]) -> SparseRationalMatrix:
    cols = {j: pullback_cochain({k: Fraction(1)}, source, target, P) for j, k in enumerate(columns)}
    return SparseRationalMatrix.from_columns(target.dim, len(columns), cols)


def check_extension_theorem(m: int) -> bool:
    """On sl(m|1) with the polynomial module: f is an L0-invariant 2-cocycle iff f̄ is a G0-invariant one."""
    sl, gl = build_algebra("sl", m, 1), build_algebra("gl", m, 1)
    V_gl = build_V_realization(gl)
    V_sl = restrict_module(V_gl, sl)
    zero_sl = Weight.zero(m, 1)
    sl2, sl3 = CochainSpace(sl, V_sl, 2), CochainSpace(sl, V_sl, 3)
    gl2, gl3 = CochainSpace(gl, V_gl, 2), CochainSpace(gl, V_gl, 3)

    # invariant 2-cocycles on sl, inside the weight-zero block
    K_sl = invariant_subcomplex(sl, V_sl, 2, sl2)
    D_sl = differential(sl, V_sl, 2, zero_sl, sl2, sl3)
    Z_sl = Subspace(len(K_sl.columns), (
        _combine(K_sl.subspace.basis(), c) for c in kernel_basis(D_sl @ K_sl.basis_matrix()).basis()
    ))

    # preimage of the G0-invariant 2-cocycles under the extension
    K_gl = invariant_subcomplex(gl, V_gl, 2, gl2)
    invariant_full = Subspace(gl2.dim, K_gl.full_vectors())
    E = _pullback_matrix(sl2, gl2, gl_projection(sl, gl), K_sl.columns)
    D_gl = differential(gl, V_gl, 2, None, gl2, gl3)
    rows: Dict[int, Dict[int, Fraction]] = {}
    for j, col in E.columns.items():
        for r, x in invariant_full.reduce(col).items():
            rows.setdefault(r, {})[j] = x
        for r, x in D_gl.apply(col).items():
            rows.setdefault(gl2.dim + r, {})[j] = x
    conditions = SparseRationalMatrix(gl2.dim + gl3.dim, len(K_sl.columns), rows)
    preimage = kernel_basis(conditions)
    agree = preimage == Z_sl
    logger.info("extension check for sl({}|1): {} invariant cocycles, preimage {}, agree={}",
                m, Z_sl.dim, preimage.dim, agree)
    return agree


def _combine(basis: List[Vector], coeffs: Vector) -> Vector:
    v: Vector = {}
    for j, x in coeffs.items():
        add_scaled(v, basis[j], x)
    return v


# ---------------------------------------------------------------------------
# Explicit cochains
# ---------------------------------------------------------------------------

def _bracket_cochain(L: LieSuperalgebra, K: Module, functional: Sequence[Fraction]) -> Vector:
    if K.dim != 1:
        raise CochainError("trace form takes values in the one-dimensional trivial module")
    space = CochainSpace(L, K, 2)
    f: Vector = {}
    for t in space.tuples:
        x, y = t
        value = sum((s * functional[c] for c, s in L.bracket_basis(x, y).items()), Fraction(0))
        if value:
            f[space.position(t, 0)] = value
    return f


def trace_form_cochain(L: LieSuperalgebra, K: Module) -> Vector:
    """(x, y) -> Tr(<x, y>) with values in the trivial module."""
    return _bracket_cochain(L, K, L.trace_vector)


def supertrace_form_cochain(L: LieSuperalgebra, K: Module) -> Vector:
    """(x, y) -> Str(<x, y>); identically zero since Str kills brackets."""
    return _bracket_cochain(L, K, L.supertrace_vector)


def negative_trace_cochain(L: LieSuperalgebra, K: Module) -> Vector:
    """The 1-cochain A -> -Tr(A)."""
    return {a: -x for a, x in enumerate(L.trace_vector) if x}


def build_g123(gl: LieSuperalgebra, V: Module) -> Tuple[Vector, Vector, Vector]:
    """The three G0-invariant super-skew maps G × G -> V of the polynomial model.

    g1(E_ij, E_{m+1,k}) = δ_ik η_j, g2(E_ij, E_{m+1,k}) = δ_ij η_k,
    g3(E_{m+1,m+1}, E_{m+1,k}) = η_k; zero on all other basis pairs.
    """
    if gl.kind != "gl" or gl.n != 1:
        raise CochainError("g1, g2, g3 live on gl(m|1)")
    m = gl.m
    N = m + 1
    E = lambda i, j: (i - 1) * N + (j - 1)
    space = CochainSpace(gl, V, 2)
    values = ({}, {}, {})
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            for k in range(1, m + 1):
                if i == k:
                    values[0][(E(i, j), E(m + 1, k))] = eta_vector(m, j)
                if i == j:
                    values[1][(E(i, j), E(m + 1, k))] = eta_vector(m, k)
    for k in range(1, m + 1):
        values[2][(E(m + 1, m + 1), E(m + 1, k))] = eta_vector(m, k)
    g1, g2, g3 = (cochain_from_values(space, v) for v in values)
    return g1, g2, g3


def cocycle_relation_g(gl: LieSuperalgebra, V: Module) -> List[Tuple[Fraction, Fraction, Fraction]]:
    """Coefficient triples (c1, c2, c3) with δ^2(c1 g1 + c2 g2 + c3 g3) = 0."""
    gs = build_g123(gl, V)
    D = differential(gl, V, 2)
    columns = {j: D.apply(g) for j, g in enumerate(gs)}
    system = SparseRationalMatrix.from_columns(D.nrows, 3, columns)
    out = []
    for v in kernel_basis(system).basis():
        out.append(tuple(Fraction(v.get(j, 0)) for j in range(3)))
    return out
