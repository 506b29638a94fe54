"""
gl(m|n) and sl(m|n) as explicit structure-constant algebras.

Basis conventions (all indices 0-based internally, labels 1-based):
  gl(m|n): E_ij in lexicographic (i, j) order, index i*(m+n) + j.
  sl(m|n): X_ij (i != j) in lexicographic order, then the distinguished
           simple coroots h_1..h_{m+n-1}, h_k = X_kk - X_{k+1,k+1}
           except h_m = X_mm + X_{m+1,m+1}.
Weights are label vectors (L_1..L_{m+n}) with L_k the eigenvalue of X_kk
(of E_kk for gl), so the root vector E_ij carries the labels e_i - e_j.
"""
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from cohom_config import AlgebraError, DescriptorError
from cohom_linalg import SparseRationalMatrix, Vector, add_scaled

MatrixDict = Dict[Tuple[int, int], Fraction]

KINDS = ("gl", "sl")


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    @classmethod
    def of(cls, value: int) -> "Parity":
        return cls(value % 2)

    def flip(self) -> "Parity":
        return Parity(1 - self.value)


def sign_of(parity_product: int) -> int:
    """(-1)^k for an integer k."""
    return -1 if parity_product % 2 else 1


def koszul_sort(
    indices: Sequence[int], parity: Sequence[int], symmetric: bool
) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """Sort a product of homogeneous factors into increasing order.

    symmetric=True  -> super-symmetric algebra: ab = (-1)^{|a||b|} ba
    symmetric=False -> super-exterior algebra:   ab = -(-1)^{|a||b|} ba
    Returns (sign, sorted tuple), or None when the product vanishes
    (a repeated odd factor in S, a repeated even factor in Λ).
    """
    items = list(indices)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            a, b = items[j - 1], items[j]
            s = sign_of(parity[a] * parity[b])
            sign *= s if symmetric else -s
            items[j - 1], items[j] = b, a
            j -= 1
    forbidden = 1 if symmetric else 0
    for a, b in zip(items, items[1:]):
        if a == b and parity[a] == forbidden:
            return None
    return sign, tuple(items)


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """Label vector (L_1..L_m | L_{m+1}..L_{m+n})."""

    labels: Tuple[Fraction, ...]
    m: int
    n: int

    def __post_init__(self):
        labels = tuple(Fraction(x) for x in self.labels)
        if len(labels) != self.m + self.n:
            raise AlgebraError(f"weight needs {self.m + self.n} labels, got {len(labels)}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def zero(cls, m: int, n: int) -> "Weight":
        return cls((0,) * (m + n), m, n)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Accepts `(a,b,c|d,e)` or `a,b,c/d,e`."""
        body = text.strip().strip("()")
        sep = "|" if "|" in body else "/"
        if sep not in body:
            raise DescriptorError(f"weight {text!r} lacks a '|' or '/' block separator")
        left, right = body.split(sep)
        try:
            even = [Fraction(x) for x in left.split(",") if x.strip()]
            odd = [Fraction(x) for x in right.split(",") if x.strip()]
        except ValueError as e:
            raise DescriptorError(f"bad weight {text!r}: {e}") from e
        return cls(tuple(even + odd), len(even), len(odd))

    def __str__(self) -> str:
        fmt = lambda xs: ",".join(str(x) for x in xs)
        return f"({fmt(self.labels[:self.m])}|{fmt(self.labels[self.m:])})"

    def compact(self) -> str:
        fmt = lambda xs: ",".join(str(x) for x in xs)
        return f"{fmt(self.labels[:self.m])}/{fmt(self.labels[self.m:])}"

    def _check(self, other: "Weight"):
        if (self.m, self.n) != (other.m, other.n):
            raise AlgebraError(f"weights of different shapes: {self} vs {other}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.labels, other.labels)), self.m, self.n)

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.labels, other.labels)), self.m, self.n)

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.labels), self.m, self.n)

    def __lt__(self, other: "Weight") -> bool:
        return self.labels < other.labels

    @property
    def even_labels(self) -> Tuple[Fraction, ...]:
        return self.labels[: self.m]

    @property
    def odd_labels(self) -> Tuple[Fraction, ...]:
        return self.labels[self.m:]

    def is_zero(self) -> bool:
        return not any(self.labels)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.labels)

    def label_sum(self) -> Fraction:
        return sum(self.labels, Fraction(0))

    def block_diffs(self) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
        """Consecutive label differences inside each block (sl(m), sl(n) labels)."""
        ev, od = self.even_labels, self.odd_labels
        return (
            tuple(ev[i] - ev[i + 1] for i in range(len(ev) - 1)),
            tuple(od[i] - od[i + 1] for i in range(len(od) - 1)),
        )

    def is_block_dominant(self) -> bool:
        d1, d2 = self.block_diffs()
        return all(x.denominator == 1 and x >= 0 for x in d1 + d2)

    def lambda_of_D(self) -> Fraction:
        """Λ(D) = -(L_1 + ... + L_m)."""
        return -sum(self.even_labels, Fraction(0))

    def depth_below(self, top: "Weight") -> Fraction:
        """Height of top - self in simple roots (partial sums of the label difference)."""
        diff = (top - self).labels
        total, partial = Fraction(0), Fraction(0)
        for x in diff[:-1]:
            partial += x
            total += partial
        return total


# ---------------------------------------------------------------------------
# Matrix helpers
# ---------------------------------------------------------------------------

def _matmul(A: MatrixDict, B: MatrixDict) -> MatrixDict:
    by_row: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (k, l), y in B.items():
        by_row.setdefault(k, []).append((l, y))
    out: MatrixDict = {}
    for (i, j), x in A.items():
        for l, y in by_row.get(j, ()):
            v = out.get((i, l), 0) + x * y
            if v:
                out[(i, l)] = v
            else:
                out.pop((i, l), None)
    return out


def _matadd(A: MatrixDict, B: MatrixDict, k=1) -> MatrixDict:
    out = dict(A)
    for key, y in B.items():
        v = out.get(key, 0) + k * y
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _supercommutator(A: MatrixDict, pa: int, B: MatrixDict, pb: int) -> MatrixDict:
    return _matadd(_matmul(A, B), _matmul(B, A), -sign_of(pa * pb))


# ---------------------------------------------------------------------------
# The algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LieSuperalgebra:
    kind: str
    m: int
    n: int
    basis_labels: Tuple[str, ...]
    parity: Tuple[int, ...]
    z_degree: Tuple[int, ...]
    matrices: Tuple[MatrixDict, ...]
    structure_constants: Dict[Tuple[int, int], Vector]
    cartan_indices: Tuple[int, ...]
    D: Vector
    sigma: Tuple[int, ...]
    positive_root_indices: Tuple[int, ...]
    negative_root_indices: Tuple[int, ...]
    supertrace_vector: Tuple[Fraction, ...]
    trace_vector: Tuple[Fraction, ...]
    basis_weights: Tuple[Weight, ...]
    label_elements: Tuple[Vector, ...]
    parent: Optional["LieSuperalgebra"] = None
    parent_indices: Tuple[int, ...] = ()
    _tau: List[Vector] = field(default_factory=list, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    @property
    def size(self) -> int:
        return self.m + self.n

    @property
    def descriptor(self) -> str:
        if self.parent is not None:
            return f"{self.parent.descriptor}/{self.kind}"
        return f"{self.kind}:{self.m}:{self.n}"

    def __repr__(self) -> str:
        return f"LieSuperalgebra({self.descriptor}, dim={self.dim})"

    # --- coordinates --------------------------------------------------
    def coordinates(self, matrix: MatrixDict) -> Vector:
        """Express a matrix of the algebra in its basis."""
        if self.parent is not None:
            coords = self.parent.coordinates(matrix)
            local = {p: k for k, p in enumerate(self.parent_indices)}
            if any(i not in local for i in coords):
                raise AlgebraError(f"matrix does not lie in {self.descriptor}")
            return {local[i]: x for i, x in coords.items()}
        N = self.size
        if self.kind == "gl":
            return {i * N + j: Fraction(x) for (i, j), x in matrix.items() if x}
        out: Vector = {}
        diag = [Fraction(0)] * N
        offsets = _sl_offdiag_index(N)
        for (i, j), x in matrix.items():
            if not x:
                continue
            if i == j:
                diag[i] = Fraction(x)
            else:
                out[offsets[(i, j)]] = Fraction(x)
        base = len(offsets)
        c = Fraction(0)
        for k in range(N - 1):
            s_prev = -1 if k - 1 == self.m - 1 else 1
            c = diag[0] if k == 0 else diag[k] + s_prev * c
            if c:
                out[base + k] = c
        s_last = -1 if N - 2 == self.m - 1 else 1
        if diag[N - 1] != -s_last * c:
            raise AlgebraError(f"matrix has nonzero supertrace; not in {self.descriptor}")
        return out

    def matrix_of(self, x: Vector) -> MatrixDict:
        out: MatrixDict = {}
        for b, k in x.items():
            out = _matadd(out, self.matrices[b], k)
        return out

    def unit(self, i: int, j: int) -> Vector:
        """Coordinates of E_ij (1-based); for sl the diagonal gives X_ii."""
        N = self.size
        if not (1 <= i <= N and 1 <= j <= N):
            raise AlgebraError(f"index ({i},{j}) out of range for {self.descriptor}")
        if i != j or self.kind == "gl":
            return self.coordinates({(i - 1, j - 1): Fraction(1)})
        return self.label_elements[i - 1]

    def identity(self) -> Vector:
        return self.coordinates({(k, k): Fraction(1) for k in range(self.size)})

    # --- bracket --------------------------------------------------------
    def bracket_basis(self, a: int, b: int) -> Vector:
        return self.structure_constants.get((a, b), {})

    def bracket_vectors(self, x: Vector, y: Vector) -> Vector:
        out: Vector = {}
        for a, xa in x.items():
            for b, yb in y.items():
                c = self.structure_constants.get((a, b))
                if c:
                    add_scaled(out, c, xa * yb)
        return out

    def element(self, coeffs: Vector) -> "Element":
        return Element(self, dict(coeffs))

    def basis_element(self, i: int) -> "Element":
        return Element(self, {i: Fraction(1)})

    def index_of(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise AlgebraError(f"{label!r} is not a basis label of {self.descriptor}") from None

    def tau_vector(self, x: Vector) -> Vector:
        out: Vector = {}
        for b, k in x.items():
            add_scaled(out, self._tau[b], k)
        return out

    def tau_matrix(self) -> SparseRationalMatrix:
        return SparseRationalMatrix.from_columns(self.dim, self.dim, dict(enumerate(self._tau)))

    def degree_indices(self, r: int) -> List[int]:
        return [i for i, z in enumerate(self.z_degree) if z == r]


@dataclass(frozen=True)
class Element:
    algebra: LieSuperalgebra
    coeffs: Vector

    def _same(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        out = dict(self.coeffs)
        add_scaled(out, other.coeffs, 1)
        return Element(self.algebra, out)

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        out = dict(self.coeffs)
        add_scaled(out, other.coeffs, -1)
        return Element(self.algebra, out)

    def __rmul__(self, k) -> "Element":
        return Element(self.algebra, {i: k * x for i, x in self.coeffs.items() if k * x})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def matrix(self) -> MatrixDict:
        return self.algebra.matrix_of(self.coeffs)

    def parity(self) -> Optional[Parity]:
        ps = {self.algebra.parity[i] for i in self.coeffs}
        if not ps:
            return Parity.EVEN
        return Parity(ps.pop()) if len(ps) == 1 else None

    def __repr__(self) -> str:
        terms = [f"{x}*{self.algebra.basis_labels[i]}" for i, x in sorted(self.coeffs.items())]
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _sl_offdiag_index(N: int) -> Dict[Tuple[int, int], int]:
    pairs = [(i, j) for i in range(N) for j in range(N) if i != j]
    return {p: k for k, p in enumerate(pairs)}


def _index_parity(k: int, m: int) -> int:
    return 0 if k < m else 1


def _d_diagonal(m: int, n: int) -> List[Fraction]:
    if m != n:
        return [Fraction(n, m - n)] * m + [Fraction(m, m - n)] * n
    return [Fraction(0)] * m + [Fraction(1)] * n


def _assemble(kind: str, m: int, n: int) -> LieSuperalgebra:
    N = m + n
    par = [_index_parity(k, m) for k in range(N)]
    sigma = tuple(1 if k < m else -1 for k in range(N))
    if kind == "gl":
        pairs = [(i, j) for i in range(N) for j in range(N)]
        labels = [f"E{i + 1},{j + 1}" for i, j in pairs]
        matrices = [{(i, j): Fraction(1)} for i, j in pairs]
        cartan = [i * N + i for i in range(N)]
    else:
        pairs = [(i, j) for i in range(N) for j in range(N) if i != j]
        labels = [f"X{i + 1},{j + 1}" for i, j in pairs]
        matrices = [{(i, j): Fraction(1)} for i, j in pairs]
        cartan = []
        for k in range(N - 1):
            s = -1 if k == m - 1 else 1
            labels.append(f"h{k + 1}")
            matrices.append({(k, k): Fraction(1), (k + 1, k + 1): Fraction(-s)})
            cartan.append(len(matrices) - 1)
    d = _d_diagonal(m, n)
    dim = len(matrices)
    parity, zdeg, weights, pos, neg = [], [], [], [], []
    for b, M in enumerate(matrices):
        if b in cartan or (kind == "gl" and b in cartan):
            parity.append(0)
            zdeg.append(0)
            weights.append(Weight.zero(m, n))
            continue
        (i, j), = M.keys()
        parity.append((par[i] + par[j]) % 2)
        dz = d[i] - d[j]
        if dz.denominator != 1:
            raise AlgebraError("non-integral Z-degree")
        zdeg.append(int(dz))
        lab = [0] * N
        if i != j:
            lab[i] += 1
            lab[j] -= 1
            (pos if i < j else neg).append(b)
        weights.append(Weight(tuple(lab), m, n))
    supertrace = []
    trace = []
    for M in matrices:
        supertrace.append(sum((x * sigma[i] for (i, j), x in M.items() if i == j), Fraction(0)))
        trace.append(sum((x for (i, j), x in M.items() if i == j), Fraction(0)))
    L = LieSuperalgebra(
        kind=kind, m=m, n=n,
        basis_labels=tuple(labels),
        parity=tuple(parity),
        z_degree=tuple(zdeg),
        matrices=tuple(matrices),
        structure_constants={},
        cartan_indices=tuple(cartan),
        D={},
        sigma=sigma,
        positive_root_indices=tuple(pos),
        negative_root_indices=tuple(neg),
        supertrace_vector=tuple(supertrace),
        trace_vector=tuple(trace),
        basis_weights=tuple(weights),
        label_elements=(),
    )
    sc = L.structure_constants
    for a in range(dim):
        for b in range(dim):
            br = _supercommutator(matrices[a], parity[a], matrices[b], parity[b])
            if br:
                sc[(a, b)] = L.coordinates(br)
    D = L.coordinates({(k, k): d[k] for k in range(N)})
    if kind == "gl" or m == n:
        label_elements = [L.coordinates({(k, k): Fraction(1)}) for k in range(N)]
    else:
        shift = Fraction(1, m - n)
        label_elements = []
        for k in range(N):
            X = {(l, l): -sigma[k] * shift for l in range(N)}
            X[(k, k)] = X[(k, k)] + 1
            label_elements.append(L.coordinates(X))
    object.__setattr__(L, "D", D)
    object.__setattr__(L, "label_elements", tuple(label_elements))
    tau_images = []
    for b, M in enumerate(matrices):
        # st(A)_ij = (-1)^{p_j (p_i + p_j)} A_ji ; tau(A) = -st(A)
        image = {(j, i): -sign_of(par[i] * (par[i] + par[j])) * x for (i, j), x in M.items()}
        tau_images.append(L.coordinates(image))
    L._tau.extend(tau_images)
    return L


def build_algebra(kind: str, m: int, n: int) -> LieSuperalgebra:
    """gl(m|n) or sl(m|n) with the distinguished Borel."""
    if kind not in KINDS:
        raise AlgebraError(f"unknown algebra kind {kind!r}; expected one of {KINDS}")
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise AlgebraError(f"m and n must be positive integers, got m={m}, n={n}")
    if kind == "sl" and m == n:
        raise AlgebraError("sl(m|n) needs m != n (the generators carry a 1/(m-n) factor)")
    return _assemble(kind, m, n)


def even_gl(k: int) -> LieSuperalgebra:
    """The ordinary matrix algebra gl(k), used to build simple L0-modules."""
    if k < 1:
        raise AlgebraError(f"gl(k) needs k >= 1, got {k}")
    return _assemble("gl", k, 0)


def algebra_from_descriptor(text: str) -> LieSuperalgebra:
    """Parse `sl:m:n` / `gl:m:n`."""
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise DescriptorError(f"algebra descriptor {text!r} is not of the form kind:m:n")
    kind, m, n = parts
    try:
        return build_algebra(kind, int(m), int(n))
    except ValueError as e:
        if isinstance(e, AlgebraError):
            raise DescriptorError(str(e)) from e
        raise DescriptorError(f"bad algebra descriptor {text!r}") from e


def subalgebra(L: LieSuperalgebra, indices: Sequence[int], kind: str) -> LieSuperalgebra:
    """The span of some basis elements, with inherited structure constants."""
    indices = tuple(sorted(indices))
    local = {p: k for k, p in enumerate(indices)}
    sc: Dict[Tuple[int, int], Vector] = {}
    for a in indices:
        for b in indices:
            c = L.structure_constants.get((a, b))
            if not c:
                continue
            if any(i not in local for i in c):
                raise AlgebraError(f"basis subset is not closed under the bracket of {L.descriptor}")
            sc[(local[a], local[b])] = {local[i]: x for i, x in c.items()}

    def restrict(v: Vector) -> Vector:
        if any(i not in local for i in v):
            return {}
        return {local[i]: x for i, x in v.items()}

    S = LieSuperalgebra(
        kind=kind, m=L.m, n=L.n,
        basis_labels=tuple(L.basis_labels[i] for i in indices),
        parity=tuple(L.parity[i] for i in indices),
        z_degree=tuple(L.z_degree[i] for i in indices),
        matrices=tuple(L.matrices[i] for i in indices),
        structure_constants=sc,
        cartan_indices=tuple(local[i] for i in L.cartan_indices if i in local),
        D=restrict(L.D),
        sigma=L.sigma,
        positive_root_indices=tuple(local[i] for i in L.positive_root_indices if i in local),
        negative_root_indices=tuple(local[i] for i in L.negative_root_indices if i in local),
        supertrace_vector=tuple(L.supertrace_vector[i] for i in indices),
        trace_vector=tuple(L.trace_vector[i] for i in indices),
        basis_weights=tuple(L.basis_weights[i] for i in indices),
        label_elements=tuple(restrict(v) for v in L.label_elements),
        parent=L,
        parent_indices=indices,
    )
    S._tau.extend(restrict(L._tau[i]) for i in indices)
    return S


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def bracket(x: Element, y: Element) -> Element:
    """Super commutator <x, y>, bilinear in the structure constants."""
    x._same(y)
    return Element(x.algebra, x.algebra.bracket_vectors(x.coeffs, y.coeffs))


def epsilon(L: LieSuperalgebra, i: int) -> Weight:
    """ε_i restricted to the Cartan subalgebra, as labels ε_i(X_kk)."""
    N = L.size
    if not 1 <= i <= N:
        raise AlgebraError(f"epsilon index {i} out of range 1..{N}")
    if L.kind == "gl" or L.m == L.n:
        labels = [Fraction(int(k == i - 1)) for k in range(N)]
    else:
        labels = [Fraction(int(k == i - 1)) - Fraction(L.sigma[k], L.m - L.n) for k in range(N)]
    return Weight(tuple(labels), L.m, L.n)


def check_eps_relation(L: LieSuperalgebra) -> bool:
    """Σ σ_i ε_i = 0 (holds for sl only; gl has independent ε_i)."""
    total = Weight.zero(L.m, L.n)
    for i in range(1, L.size + 1):
        e = epsilon(L, i)
        total = total + (e if L.sigma[i - 1] == 1 else -e)
    return total.is_zero()


def tau(x: Element) -> Element:
    """The automorphism A -> -(supertranspose of A)."""
    return Element(x.algebra, x.algebra.tau_vector(x.coeffs))


def supertrace(x: Element) -> Fraction:
    L = x.algebra
    return sum((k * L.supertrace_vector[b] for b, k in x.coeffs.items()), Fraction(0))


def trace(x: Element) -> Fraction:
    L = x.algebra
    return sum((k * L.trace_vector[b] for b, k in x.coeffs.items()), Fraction(0))


def trace_form(x: Element, y: Element) -> Fraction:
    """(x, y) -> Tr(<x, y>) with the ordinary trace."""
    return trace(bracket(x, y))


def supertrace_form(x: Element, y: Element) -> Fraction:
    return supertrace(bracket(x, y))


def subalgebra_L0(L: LieSuperalgebra) -> LieSuperalgebra:
    """Z-degree 0 part (contains D and the Cartan subalgebra)."""
    return subalgebra(L, L.degree_indices(0), "L0")


def positive_root_vectors(L: LieSuperalgebra, part: str = "L") -> List[int]:
    """Distinguished positive root vectors E_ij (i < j), optionally only those in L0."""
    if part not in ("L", "L0"):
        raise AlgebraError(f"part must be 'L' or 'L0', got {part!r}")
    if part == "L":
        return list(L.positive_root_indices)
    return [i for i in L.positive_root_indices if L.z_degree[i] == 0]


def negative_root_vectors(L: LieSuperalgebra, part: str = "L") -> List[int]:
    if part == "L":
        return list(L.negative_root_indices)
    return [i for i in L.negative_root_indices if L.z_degree[i] == 0]


def simple_root_vectors(L: LieSuperalgebra, part: str = "L") -> List[int]:
    """E_{k,k+1} for the distinguished simple roots (within L0 if requested)."""
    out = []
    for i in positive_root_vectors(L, part):
        (a, b), = L.matrices[i].keys()
        if b == a + 1:
            out.append(i)
    return out


def odd_parts(L: LieSuperalgebra) -> Tuple[List[int], List[int]]:
    """(L_{-1}, L_{+1}) index lists; L_{-1} holds the positive odd root vectors."""
    return L.degree_indices(-1), L.degree_indices(1)


def gl_projection(sl: LieSuperalgebra, gl: LieSuperalgebra) -> SparseRationalMatrix:
    """gl(m|n) -> sl(m|n), A -> A - Str(A)/(m-n) I (kills I)."""
    if sl.kind != "sl" or gl.kind != "gl" or (sl.m, sl.n) != (gl.m, gl.n):
        raise AlgebraError("gl_projection needs sl(m|n) and gl(m|n) of equal shape")
    N = sl.size
    columns = {}
    for b, M in enumerate(gl.matrices):
        s = gl.supertrace_vector[b] / (sl.m - sl.n)
        image = _matadd(M, {(k, k): Fraction(1) for k in range(N)}, -s)
        columns[b] = sl.coordinates(image)
    return SparseRationalMatrix.from_columns(sl.dim, gl.dim, columns)


def inclusion_into_gl(sl: LieSuperalgebra, gl: LieSuperalgebra) -> SparseRationalMatrix:
    """sl(m|n) -> gl(m|n) on coordinates."""
    if (sl.m, sl.n) != (gl.m, gl.n):
        raise AlgebraError("inclusion needs algebras of equal shape")
    columns = {b: gl.coordinates(M) for b, M in enumerate(sl.matrices)}
    return SparseRationalMatrix.from_columns(gl.dim, sl.dim, columns)


def d_value(L: LieSuperalgebra, weight: Weight) -> Fraction:
    """Eigenvalue of D on a vector of the given weight."""
    d = _d_diagonal(L.m, L.n)
    return sum((a * b for a, b in zip(d, weight.labels)), Fraction(0))
