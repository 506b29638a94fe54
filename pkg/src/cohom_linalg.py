"""
Sparse exact-rational linear algebra.

Matrices are stored row-wise as {row: {col: Fraction}} with no stored zeros.
Rank uses fraction-free integer elimination (rows cleared of denominators
and kept primitive) with a sparsest-row-first pivot order; an optional
prepass modulo a large prime short-circuits full-rank cases. Kernels,
solves and subspace operations go through the reduced echelon form kept by
`Subspace`, which is canonical, so results do not depend on input order.
"""
import time
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from cohom_config import LinalgError, get_settings

Vector = Dict[int, Fraction]


def fstr(x) -> str:
    """Rational as a `p/q` (or `p`) string."""
    return str(Fraction(x))


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def add_scaled(target: Vector, v: Vector, k) -> None:
    """target += k * v, in place, dropping zeros."""
    if not k:
        return
    for i, x in v.items():
        y = target.get(i, 0) + k * x
        if y:
            target[i] = y
        else:
            target.pop(i, None)


def scale_vector(v: Vector, k) -> Vector:
    if not k:
        return {}
    return {i: k * x for i, x in v.items()}


def clean_vector(v: Vector) -> Vector:
    return {i: Fraction(x) for i, x in v.items() if x}


class SparseRationalMatrix:
    """An immutable sparse matrix over Q acting on column vectors."""

    __slots__ = ("nrows", "ncols", "_rows", "_cols")

    def __init__(self, nrows: int, ncols: int, rows: Optional[Dict[int, Dict[int, object]]] = None):
        if nrows < 0 or ncols < 0:
            raise LinalgError(f"negative shape {nrows}x{ncols}")
        self.nrows = nrows
        self.ncols = ncols
        clean: Dict[int, Vector] = {}
        for r, row in (rows or {}).items():
            if not 0 <= r < nrows:
                raise LinalgError(f"row index {r} out of range for {nrows} rows")
            entries = {}
            for c, x in row.items():
                if not 0 <= c < ncols:
                    raise LinalgError(f"column index {c} out of range for {ncols} columns")
                if x:
                    entries[c] = Fraction(x)
            if entries:
                clean[r] = entries
        self._rows = clean
        self._cols: Optional[Dict[int, Vector]] = None

    # --- constructors -------------------------------------------------
    @classmethod
    def from_triples(cls, nrows: int, ncols: int, triples: Iterable[Tuple[int, int, object]]):
        rows: Dict[int, Dict[int, Fraction]] = {}
        for r, c, x in triples:
            row = rows.setdefault(r, {})
            row[c] = row.get(c, 0) + Fraction(x)
        return cls(nrows, ncols, rows)

    @classmethod
    def from_columns(cls, nrows: int, ncols: int, columns: Dict[int, Vector]):
        rows: Dict[int, Dict[int, Fraction]] = {}
        for c, col in columns.items():
            for r, x in col.items():
                rows.setdefault(r, {})[c] = x
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, {i: {i: 1} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int):
        return cls(nrows, ncols)

    @classmethod
    def diagonal(cls, values: Sequence[object]):
        n = len(values)
        return cls(n, n, {i: {i: x} for i, x in enumerate(values) if x})

    # --- access -------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> Dict[int, Vector]:
        return self._rows

    @property
    def columns(self) -> Dict[int, Vector]:
        if self._cols is None:
            cols: Dict[int, Vector] = {}
            for r, row in self._rows.items():
                for c, x in row.items():
                    cols.setdefault(c, {})[r] = x
            self._cols = cols
        return self._cols

    def row(self, r: int) -> Vector:
        return self._rows.get(r, {})

    def column(self, c: int) -> Vector:
        return self.columns.get(c, {})

    def get(self, r: int, c: int) -> Fraction:
        return self._rows.get(r, {}).get(c, Fraction(0))

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._rows.values())

    def is_zero(self) -> bool:
        return not self._rows

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self.nnz))

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"

    # --- arithmetic ---------------------------------------------------
    def apply(self, v: Vector) -> Vector:
        """Matrix times a sparse column vector."""
        out: Vector = {}
        cols = self.columns
        for c, x in v.items():
            col = cols.get(c)
            if col:
                add_scaled(out, col, x)
        return out

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.ncols != other.nrows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        columns = {c: self.apply(col) for c, col in other.columns.items()}
        return SparseRationalMatrix.from_columns(self.nrows, other.ncols, columns)

    def _combine(self, other: "SparseRationalMatrix", k) -> "SparseRationalMatrix":
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")
        rows = {r: dict(row) for r, row in self._rows.items()}
        for r, row in other._rows.items():
            target = rows.setdefault(r, {})
            add_scaled(target, row, k)
        return SparseRationalMatrix(self.nrows, self.ncols, rows)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, k) -> "SparseRationalMatrix":
        return SparseRationalMatrix(
            self.nrows, self.ncols, {r: scale_vector(row, k) for r, row in self._rows.items()}
        )

    def __neg__(self):
        return self.scale(-1)

    def transpose(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(self.ncols, self.nrows, self.columns)

    def kron(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        """Kronecker product; basis (i, j) of the result is i * other.dim + j."""
        rows: Dict[int, Dict[int, Fraction]] = {}
        for r1, row1 in self._rows.items():
            for r2, row2 in other._rows.items():
                target = rows.setdefault(r1 * other.nrows + r2, {})
                for c1, x in row1.items():
                    for c2, y in row2.items():
                        target[c1 * other.ncols + c2] = x * y
        return SparseRationalMatrix(self.nrows * other.nrows, self.ncols * other.ncols, rows)

    def submatrix(self, row_ids: Sequence[int], col_ids: Sequence[int]) -> "SparseRationalMatrix":
        col_pos = {c: j for j, c in enumerate(col_ids)}
        rows = {}
        for i, r in enumerate(row_ids):
            row = self._rows.get(r)
            if not row:
                continue
            picked = {col_pos[c]: x for c, x in row.items() if c in col_pos}
            if picked:
                rows[i] = picked
        return SparseRationalMatrix(len(row_ids), len(col_ids), rows)

    # --- output -------------------------------------------------------
    def dump(self) -> str:
        """Debug dump: `rows cols` header then sorted `r c p/q` triplets."""
        lines = [f"{self.nrows} {self.ncols}"]
        for r in sorted(self._rows):
            row = self._rows[r]
            for c in sorted(row):
                lines.append(f"{r} {c} {fstr(row[c])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        nrows, ncols = (int(x) for x in lines[0].split())
        triples = []
        for ln in lines[1:]:
            r, c, x = ln.split()
            triples.append((int(r), int(c), parse_fraction(x)))
        return cls.from_triples(nrows, ncols, triples)

    def to_dense(self) -> np.ndarray:
        out = np.full((self.nrows, self.ncols), Fraction(0), dtype=object)
        for r, row in self._rows.items():
            for c, x in row.items():
                out[r, c] = x
        return out


# ---------------------------------------------------------------------------
# Fraction-free rank
# ---------------------------------------------------------------------------

def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for x in row.values():
        g = gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return {c: x // g for c, x in row.items()}
    return row


def _integer_row(row: Vector) -> Dict[int, int]:
    den = 1
    for x in row.values():
        d = x.denominator
        den = den * d // gcd(den, d)
    return _primitive({c: int(x * den) for c, x in row.items()})


def _echelon_lines(A: SparseRationalMatrix) -> List[Vector]:
    """Rows or columns of A, whichever family is smaller, sparsest first."""
    lines = A.rows if A.nrows <= A.ncols else A.columns
    return [lines[k] for k in sorted(lines, key=lambda k: (len(lines[k]), k))]


def _fraction_free_rank(A: SparseRationalMatrix) -> Tuple[int, int]:
    pivots: Dict[int, Dict[int, int]] = {}
    steps = 0
    for line in _echelon_lines(A):
        row = _integer_row(line)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, b = row[lead], piv[lead]
            new = {c: b * x for c, x in row.items()}
            for c, x in piv.items():
                y = new.get(c, 0) - a * x
                if y:
                    new[c] = y
                else:
                    new.pop(c, None)
            row = _primitive(new)
            steps += 1
    return len(pivots), steps


def rank_mod_p(A: SparseRationalMatrix, p: int) -> Optional[int]:
    """Rank of A reduced modulo p, or None when a denominator vanishes mod p."""
    pivots: Dict[int, Dict[int, int]] = {}
    for line in _echelon_lines(A):
        row = {}
        for c, x in line.items():
            if x.denominator % p == 0:
                return None
            y = x.numerator * pow(x.denominator, -1, p) % p
            if y:
                row[c] = y
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: x * inv % p for c, x in row.items()}
                break
            a = row[lead]
            for c, x in piv.items():
                y = (row.get(c, 0) - a * x) % p
                if y:
                    row[c] = y
                else:
                    row.pop(c, None)
    return len(pivots)


def rank(A: SparseRationalMatrix, modular_prepass: Optional[bool] = None) -> int:
    """Exact rank over Q."""
    if A.is_zero():
        return 0
    settings = get_settings()
    if modular_prepass is None:
        modular_prepass = settings.modular_prepass
    bound = min(A.nrows, A.ncols)
    start = time.perf_counter()
    if modular_prepass:
        # rank mod p never exceeds the rational rank, so a full mod-p rank is certified
        r = rank_mod_p(A, settings.prime)
        if r == bound:
            logger.debug(f"rank {A.nrows}x{A.ncols}: {r} (modular prepass, full rank)")
            return r
    r, steps = _fraction_free_rank(A)
    logger.debug(
        f"rank {A.nrows}x{A.ncols} nnz={A.nnz}: {r} "
        f"({steps} elimination steps, {time.perf_counter() - start:.3f}s)"
    )
    return r


# ---------------------------------------------------------------------------
# Subspaces in reduced echelon form
# ---------------------------------------------------------------------------

class Subspace:
    """A subspace of Q^ambient held as its reduced row echelon basis.

    Each basis row has a pivot (its smallest column) with coefficient 1,
    and every row vanishes on the other rows' pivots. `absorb` is only
    meant for use while a subspace is being built.
    """

    __slots__ = ("ambient", "_rows")

    def __init__(self, ambient: int, vectors: Iterable[Vector] = ()):
        self.ambient = ambient
        self._rows: Dict[int, Vector] = {}
        for v in vectors:
            self.absorb(v)

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        space = cls(ambient)
        space._rows = {i: {i: Fraction(1)} for i in range(ambient)}
        return space

    @classmethod
    def coordinate(cls, ambient: int, indices: Iterable[int]) -> "Subspace":
        space = cls(ambient)
        space._rows = {i: {i: Fraction(1)} for i in indices}
        return space

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def basis(self) -> List[Vector]:
        return [self._rows[p] for p in sorted(self._rows)]

    def complement_indices(self) -> List[int]:
        """Non-pivot coordinates; their unit vectors span a complement."""
        return [i for i in range(self.ambient) if i not in self._rows]

    def reduce(self, v: Vector) -> Vector:
        """Remainder of v modulo the subspace (supported off the pivots)."""
        out = dict(v)
        for p in [c for c in v if c in self._rows]:
            add_scaled(out, self._rows[p], -v[p])
        return out

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vector) -> List[Fraction]:
        """Coefficients of v in `basis()`; v must lie in the subspace."""
        if self.reduce(v):
            raise LinalgError("vector does not lie in the subspace")
        return [Fraction(v.get(p, 0)) for p in sorted(self._rows)]

    def absorb(self, v: Vector) -> bool:
        """Add v to the span; returns True when the dimension grew."""
        if v and max(v) >= self.ambient:
            raise LinalgError(f"vector index {max(v)} outside ambient {self.ambient}")
        r = self.reduce(v)
        if not r:
            return False
        lead = min(r)
        inv = 1 / Fraction(r[lead])
        r = {c: Fraction(x) * inv for c, x in r.items()}
        for row in self._rows.values():
            x = row.get(lead)
            if x:
                add_scaled(row, r, -x)
        self._rows[lead] = r
        return True

    def extended(self, vectors: Iterable[Vector]) -> "Subspace":
        space = self.copy()
        for v in vectors:
            space.absorb(v)
        return space

    def copy(self) -> "Subspace":
        space = Subspace(self.ambient)
        space._rows = {p: dict(row) for p, row in self._rows.items()}
        return space

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self._rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self._rows == other._rows

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def kernel_basis(A: SparseRationalMatrix) -> Subspace:
    """{x : A x = 0} as a Subspace of Q^cols."""
    echelon = Subspace(A.ncols, (A.rows[r] for r in sorted(A.rows)))
    rows = echelon._rows
    free = echelon.complement_indices()
    vectors = []
    for f in free:
        x: Vector = {f: Fraction(1)}
        for p, row in rows.items():
            y = row.get(f)
            if y:
                x[p] = -y
        vectors.append(x)
    return Subspace(A.ncols, vectors)


def solve(A: SparseRationalMatrix, b: Vector) -> Optional[Vector]:
    """Some x with A x = b, or None when the system is inconsistent."""
    if b and max(b) >= A.nrows:
        raise LinalgError(f"right-hand side index {max(b)} outside {A.nrows} rows")
    n = A.ncols
    augmented = []
    for r in sorted(set(A.rows) | set(b)):
        row = dict(A.row(r))
        if b.get(r):
            row[n] = Fraction(b[r])
        augmented.append(row)
    echelon = Subspace(n + 1, augmented)
    if n in echelon._rows:
        return None
    return {p: row[n] for p, row in echelon._rows.items() if row.get(n)}


def image(A: SparseRationalMatrix) -> Subspace:
    return Subspace(A.nrows, (A.columns[c] for c in sorted(A.columns)))


def intersect(S: Subspace, T: Subspace) -> Subspace:
    if S.ambient != T.ambient:
        raise LinalgError("subspaces live in different ambient spaces")
    basis = S.basis()
    residues = {j: T.reduce(v) for j, v in enumerate(basis)}
    relation = SparseRationalMatrix.from_columns(S.ambient, len(basis), residues)
    vectors = []
    for combo in kernel_basis(relation).basis():
        v: Vector = {}
        for j, k in combo.items():
            add_scaled(v, basis[j], k)
        vectors.append(v)
    return Subspace(S.ambient, vectors)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    if S.ambient != T.ambient:
        raise LinalgError("subspaces live in different ambient spaces")
    return S.extended(T.basis())


def rank_of_vectors(vectors: Iterable[Vector], ambient: int) -> int:
    columns = {j: v for j, v in enumerate(vectors)}
    return rank(SparseRationalMatrix.from_columns(ambient, len(columns), columns))
