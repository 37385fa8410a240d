"""
Exact dense linear algebra over Q and GF(p).

Matrices are immutable row-major grids of sympy domain elements. Elimination,
multiplication, inversion and determinants are delegated to sympy's
``DomainMatrix``; kernel and image bases are read off the reduced row echelon
form, so every basis returned here is deterministic (leftmost pivot column,
topmost row).

Matrices act on coordinate columns: a map k^n -> k^m is an m x n matrix and
the composite "psi after phi" is ``psi @ phi``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import Poly, Symbol, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from quiverlab.exceptions import FieldError, ShapeMismatchError

logger = logging.getLogger(__name__)

T = Symbol("t")


@lru_cache(maxsize=None)
def _prime_domain(p: int):
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class Field:
    """
    The ground field: the rationals (``p == 0``) or the prime field GF(p).

    Attributes:
        p: 0 for Q, otherwise a prime.
    """

    p: int = 0

    def __post_init__(self) -> None:
        if self.p != 0 and (self.p < 2 or not isprime(self.p)):
            raise FieldError(f"GF({self.p}) is not a prime field", descriptor=str(self.p))

    # -- constructors ------------------------------------------------------

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"Q"``, ``"GF(p)"`` or ``"GF:p"``."""
        raw = text.strip()
        if raw.upper() in ("Q", "QQ"):
            return cls.rationals()
        upper = raw.upper()
        for prefix, suffix in (("GF(", ")"), ("GF:", "")):
            if upper.startswith(prefix) and upper.endswith(suffix):
                body = raw[len(prefix): len(raw) - len(suffix)]
                try:
                    return cls.prime(int(body))
                except ValueError:
                    break
        raise FieldError(f"unknown field descriptor {text!r}", descriptor=text)

    # -- properties --------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def domain(self):
        return QQ if self.p == 0 else _prime_domain(self.p)

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def describe(self) -> str:
        return "Q" if self.p == 0 else f"GF({self.p})"

    def __str__(self) -> str:
        return self.describe()

    # -- scalars -----------------------------------------------------------

    def scalar(self, value: Any):
        """Convert an int, ``"a/b"`` string, Fraction or domain element."""
        if isinstance(value, str):
            text = value.strip()
            if "/" in text:
                num, den = text.split("/", 1)
                return self.fraction(int(num), int(den))
            return self.fraction(int(text), 1)
        if isinstance(value, bool):
            return self.fraction(int(value), 1)
        if isinstance(value, int):
            return self.fraction(value, 1)
        if isinstance(value, Fraction):
            return self.fraction(value.numerator, value.denominator)
        try:
            return self.domain.convert(value)
        except Exception as exc:  # sympy raises CoercionFailed
            raise FieldError(f"cannot convert {value!r} into {self}") from exc

    def fraction(self, num: int, den: int):
        if den == 0:
            raise FieldError("zero denominator", descriptor=f"{num}/{den}")
        if self.p == 0:
            return QQ(num, den)
        if den % self.p == 0:
            raise FieldError(
                f"denominator {den} vanishes in {self}", descriptor=f"{num}/{den}"
            )
        return self.domain(num * pow(den, -1, self.p) % self.p)

    def to_int(self, element) -> int:
        """Residue in [0, p) for GF(p); the integer value for integral rationals."""
        if self.p:
            return int(element) % self.p
        if QQ.denom(element) != 1:
            raise FieldError(f"{element} is not integral")
        return int(QQ.numer(element))

    def to_str(self, element) -> str:
        """Canonical text: residues for GF(p), ``n`` or ``n/d`` for Q."""
        if self.p:
            return str(int(element) % self.p)
        num, den = int(QQ.numer(element)), int(QQ.denom(element))
        return str(num) if den == 1 else f"{num}/{den}"

    def to_fraction(self, element) -> Fraction:
        if self.p:
            return Fraction(int(element) % self.p)
        return Fraction(int(QQ.numer(element)), int(QQ.denom(element)))

    def elements(self) -> Iterator[Any]:
        """All elements of a prime field, in residue order."""
        if self.p == 0:
            raise FieldError("Q has no finite element list")
        return (self.domain(a) for a in range(self.p))

    def small_scalars(self, count: int) -> List[Any]:
        """Deterministic list 0, 1, -1, 2, -2, ... truncated to distinct values."""
        seen: List[Any] = []
        k = 0
        while len(seen) < count:
            for v in ((k,) if k == 0 else (k, -k)):
                c = self.fraction(v, 1)
                if c not in seen:
                    seen.append(c)
            k += 1
            if self.p and k > self.p:
                break
        return seen[:count]

    def convert_from(self, other: "Field", element):
        """Map an element of ``other`` into this field (lossless only)."""
        if other == self:
            return element
        if other.p == 0:
            frac = other.to_fraction(element)
            return self.fraction(frac.numerator, frac.denominator)
        if self.p == 0:
            raise FieldError(f"cannot lift {other} elements to Q losslessly")
        raise FieldError(f"cannot convert {other} elements into {self}")


# =============================================================================
# Matrix
# =============================================================================


class Matrix:
    """Immutable dense matrix over a Field."""

    __slots__ = ("field", "_rows", "_shape", "_dm")

    def __init__(self, field: Field, rows: Sequence[Sequence[Any]], shape: Optional[Tuple[int, int]] = None):
        rows_t = tuple(tuple(r) for r in rows)
        if shape is None:
            if not rows_t:
                raise ShapeMismatchError("shape required for a matrix without rows")
            shape = (len(rows_t), len(rows_t[0]))
        m, n = shape
        if len(rows_t) != m or any(len(r) != n for r in rows_t):
            raise ShapeMismatchError("ragged rows do not match the declared shape", left=shape)
        self.field = field
        self._rows = rows_t
        self._shape = (m, n)
        self._dm: Optional[DomainMatrix] = None

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[Any]], shape: Optional[Tuple[int, int]] = None) -> "Matrix":
        converted = [[field.scalar(v) for v in row] for row in rows]
        return cls(field, converted, shape)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence[Any]], nrows: int) -> "Matrix":
        cols = [[field.scalar(v) for v in c] for c in columns]
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
        return cls(field, rows, (nrows, len(cols)))

    @classmethod
    def zeros(cls, field: Field, m: int, n: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)], (m, n))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], (n, n))

    @classmethod
    def unit_column(cls, field: Field, n: int, k: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == k else z] for i in range(n)], (n, 1))

    @classmethod
    def _from_dm(cls, field: Field, dm: DomainMatrix) -> "Matrix":
        m, n = dm.shape
        if m == 0 or n == 0:
            return cls.zeros(field, m, n)
        out = cls(field, dm.to_list(), (m, n))
        out._dm = dm
        return out

    @classmethod
    def hstack(cls, field: Field, blocks: Sequence["Matrix"], nrows: Optional[int] = None) -> "Matrix":
        if not blocks:
            return cls.zeros(field, nrows or 0, 0)
        m = blocks[0].nrows
        if any(b.nrows != m for b in blocks):
            raise ShapeMismatchError("hstack row counts differ", left=[b.nrows for b in blocks])
        rows = [sum((b._rows[i] for b in blocks), ()) for i in range(m)]
        return cls(field, rows, (m, sum(b.ncols for b in blocks)))

    @classmethod
    def vstack(cls, field: Field, blocks: Sequence["Matrix"], ncols: Optional[int] = None) -> "Matrix":
        if not blocks:
            return cls.zeros(field, 0, ncols or 0)
        n = blocks[0].ncols
        if any(b.ncols != n for b in blocks):
            raise ShapeMismatchError("vstack column counts differ", left=[b.ncols for b in blocks])
        rows = [r for b in blocks for r in b._rows]
        return cls(field, rows, (sum(b.nrows for b in blocks), n))

    @classmethod
    def block_diag(cls, field: Field, blocks: Sequence["Matrix"]) -> "Matrix":
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        z = field.zero
        rows = [[z] * n for _ in range(m)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._rows):
                rows[r0 + i][c0: c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls(field, rows, (m, n))

    @classmethod
    def blocks(cls, field: Field, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix from a rectangular grid."""
        return cls.vstack(field, [cls.hstack(field, list(row)) for row in grid])

    # -- inspection --------------------------------------------------------

    @property
    def shape(self) -> Tuple[int, int]:
        return self._shape

    @property
    def nrows(self) -> int:
        return self._shape[0]

    @property
    def ncols(self) -> int:
        return self._shape[1]

    @property
    def rows(self) -> Tuple[Tuple[Any, ...], ...]:
        return self._rows

    def entry(self, i: int, j: int):
        return self._rows[i][j]

    def column(self, j: int) -> "Matrix":
        return Matrix(self.field, [(r[j],) for r in self._rows], (self.nrows, 1))

    def columns(self) -> List["Matrix"]:
        return [self.column(j) for j in range(self.ncols)]

    def column_values(self, j: int) -> List[Any]:
        return [r[j] for r in self._rows]

    def to_strings(self) -> List[List[str]]:
        return [[self.field.to_str(v) for v in r] for r in self._rows]

    def is_zero(self) -> bool:
        return all(v == self.field.zero for r in self._rows for v in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def dm(self) -> DomainMatrix:
        if self._dm is None:
            self._dm = DomainMatrix([list(r) for r in self._rows], self._shape, self.field.domain)
        return self._dm

    # -- arithmetic --------------------------------------------------------

    def _check_field(self, other: "Matrix") -> None:
        if other.field != self.field:
            raise FieldError(f"cannot combine matrices over {self.field} and {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeMismatchError("matrix product shape mismatch", left=self.shape, right=other.shape)
        if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
            return Matrix.zeros(self.field, self.nrows, other.ncols)
        return Matrix._from_dm(self.field, self.dm.matmul(other.dm))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeMismatchError("matrix sum shape mismatch", left=self.shape, right=other.shape)
        rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)]
        return Matrix(self.field, rows, self.shape)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self._rows], self.shape)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c: Any) -> "Matrix":
        c = self.field.scalar(c)
        return Matrix(self.field, [[c * a for a in r] for r in self._rows], self.shape)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.field, self.shape, tuple(tuple(r) for r in self.to_strings())))

    def __repr__(self) -> str:
        return f"Matrix({self.field}, {self.to_strings()}, shape={self.shape})"

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def transpose(self) -> "Matrix":
        m, n = self.shape
        return Matrix(self.field, [[self._rows[i][j] for i in range(m)] for j in range(n)], (n, m))

    def extract(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[self._rows[i][j] for j in cols] for i in rows], (len(rows), len(cols)))

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ShapeMismatchError("power of a non-square matrix", left=self.shape)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k > 0:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # -- elimination -------------------------------------------------------

    def rref(self) -> Tuple["Matrix", Tuple[int, ...]]:
        """Reduced row echelon form and pivot columns."""
        if self.nrows == 0 or self.ncols == 0:
            return self, ()
        reduced, pivots = self.dm.rref()
        return Matrix._from_dm(self.field, reduced), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ShapeMismatchError("inverse of a non-square matrix", left=self.shape)
        if self.nrows == 0:
            return self
        return Matrix._from_dm(self.field, self.dm.inv())

    def determinant(self):
        if not self.is_square():
            raise ShapeMismatchError("determinant of a non-square matrix", left=self.shape)
        if self.nrows == 0:
            return self.field.one
        return self.dm.det()

    def trace(self):
        total = self.field.zero
        for i in range(min(self.shape)):
            total += self._rows[i][i]
        return total

    def flatten(self) -> List[Any]:
        """Row-major entries."""
        return [v for r in self._rows for v in r]


# =============================================================================
# Subspace operations
# =============================================================================


def rank(m: Matrix) -> int:
    """Rank by exact Gaussian elimination."""
    return m.rank()


def _kernel_from_rref(field: Field, reduced: Matrix, pivots: Sequence[int], ncols: int) -> Matrix:
    free = [j for j in range(ncols) if j not in set(pivots)]
    vectors = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in enumerate(pivots):
            v[p] = -reduced.entry(row, f)
        vectors.append(v)
    return Matrix.from_columns(field, vectors, ncols) if vectors else Matrix.zeros(field, ncols, 0)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of {x : m x = 0}; one column per free variable."""
    if m.nrows == 0:
        return Matrix.identity(m.field, m.ncols)
    reduced, pivots = m.rref()
    return _kernel_from_rref(m.field, reduced, pivots, m.ncols)


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of m, a basis of its column space."""
    _, pivots = m.rref()
    return m.extract(range(m.nrows), pivots)


def cokernel_projection(m: Matrix) -> Matrix:
    """A full-row-rank C with C @ m = 0 and rows - rank(m) rows."""
    return kernel_basis(m.T).T


def solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some x with a @ x = b (free variables set to zero), or None."""
    if a.nrows != b.nrows:
        raise ShapeMismatchError("solve: row counts differ", left=a.shape, right=b.shape)
    n, k = a.ncols, b.ncols
    if a.nrows == 0:
        return Matrix.zeros(a.field, n, k)
    reduced, pivots = Matrix.hstack(a.field, [a, b]).rref()
    if any(p >= n for p in pivots):
        return None
    rows = [[a.field.zero] * k for _ in range(n)]
    for r, p in enumerate(pivots):
        rows[p] = [reduced.entry(r, n + c) for c in range(k)]
    return Matrix(a.field, rows, (n, k))


def coordinates(basis: Matrix, vectors: Matrix) -> Matrix:
    """Coordinates of ``vectors`` (columns) in the column basis ``basis``."""
    x = solve(basis, vectors)
    if x is None:
        raise ShapeMismatchError("vectors do not lie in the given span", left=basis.shape, right=vectors.shape)
    return x


def right_inverse(m: Matrix) -> Matrix:
    """A section s with m @ s = id for a surjective m."""
    s = solve(m, Matrix.identity(m.field, m.nrows))
    if s is None:
        raise ShapeMismatchError("right inverse requested for a non-surjective map", left=m.shape)
    return s


def left_inverse(m: Matrix) -> Matrix:
    """A retraction r with r @ m = id for an injective m."""
    return right_inverse(m.T).T


def complement_basis(u: Matrix) -> Matrix:
    """Standard basis columns completing the columns of u to a basis."""
    d = u.nrows
    _, pivots = Matrix.hstack(u.field, [u, Matrix.identity(u.field, d)]).rref()
    extra = [p - u.ncols for p in pivots if p >= u.ncols]
    return Matrix.identity(u.field, d).extract(range(d), extra)


def intersect(u: Matrix, w: Matrix) -> Matrix:
    """Basis of span(u) ∩ span(w)."""
    if u.ncols == 0 or w.ncols == 0:
        return Matrix.zeros(u.field, u.nrows, 0)
    k = kernel_basis(Matrix.hstack(u.field, [u, -w]))
    return image_basis(u @ k.extract(range(u.ncols), range(k.ncols)))


def span_sum(field: Field, dim: int, spaces: Iterable[Matrix]) -> Matrix:
    blocks = [s for s in spaces if s.ncols]
    if not blocks:
        return Matrix.zeros(field, dim, 0)
    return image_basis(Matrix.hstack(field, blocks))


# =============================================================================
# Sparse linear systems
# =============================================================================


def sparse_kernel(field: Field, ncols: int, equations: Sequence[Dict[int, Any]]) -> List[Dict[int, Any]]:
    """
    Nullspace of a sparse system given as row dictionaries ``{col: coeff}``.

    Returns one sparse vector per free column (1 at that column), the same
    normalization as kernel_basis.
    """
    rows = {i: {j: v for j, v in eq.items() if v != field.zero} for i, eq in enumerate(equations)}
    rows = {i: r for i, r in rows.items() if r}
    if not rows:
        return [{j: field.one} for j in range(ncols)]
    packed = {k: r for k, r in enumerate(rows.values())}
    dm = DomainMatrix(packed, (len(packed), ncols), field.domain)
    reduced, pivots = dm.rref()
    reduced_rows = dict(reduced.to_sparse().rep)
    pivot_set = set(pivots)
    vectors: Dict[int, Dict[int, Any]] = {j: {j: field.one} for j in range(ncols) if j not in pivot_set}
    for r, p in enumerate(pivots):
        for j, val in reduced_rows.get(r, {}).items():
            if j != p and j in vectors:
                vectors[j][p] = -val
    logger.debug("sparse kernel: %d unknowns, %d equations, nullity %d", ncols, len(packed), len(vectors))
    return [vectors[j] for j in sorted(vectors)]


def sparse_rank(field: Field, ncols: int, equations: Sequence[Dict[int, Any]]) -> int:
    return ncols - len(sparse_kernel(field, ncols, equations))


# =============================================================================
# Polynomials
# =============================================================================


def to_poly(field: Field, coeffs: Sequence[Any]) -> Poly:
    """Leading-first coefficient list to a sympy Poly over the field."""
    return Poly.from_list([field.domain.to_sympy(field.scalar(c)) for c in coeffs], T, domain=field.domain)


def poly_coeffs(field: Field, poly: Poly) -> List[Any]:
    return [field.domain.from_sympy(c) for c in poly.all_coeffs()]


def evaluate(poly: Poly, m: Matrix) -> Matrix:
    """Horner evaluation of poly at a square matrix."""
    result = Matrix.zeros(m.field, m.nrows, m.ncols)
    ident = Matrix.identity(m.field, m.nrows)
    for c in poly_coeffs(m.field, poly):
        result = result @ m + ident.scale(c)
    return result


def minimal_poly(m: Matrix) -> Poly:
    """
    Minimal polynomial of a square matrix as a monic sympy Poly.

    Krylov iteration on each standard basis vector yields the local minimal
    polynomial of that vector; their lcm annihilates m.
    """
    if not m.is_square():
        raise ShapeMismatchError("minimal polynomial of a non-square matrix", left=m.shape)
    field = m.field
    n = m.nrows
    result = Poly.from_list([1], T, domain=field.domain)
    for j in range(n):
        v = Matrix.unit_column(field, n, j)
        if evaluate(result, m) @ v == Matrix.zeros(field, n, 1):
            continue
        krylov = [v]
        while True:
            nxt = m @ krylov[-1]
            x = solve(Matrix.hstack(field, krylov), nxt)
            if x is not None:
                coeffs = [field.one] + [-x.entry(k, 0) for k in reversed(range(len(krylov)))]
                local = Poly.from_list([field.domain.to_sympy(c) for c in coeffs], T, domain=field.domain)
                result = result.lcm(local)
                break
            krylov.append(nxt)
    return result.monic() if n else result


def minimal_polynomial(m: Matrix) -> List[Any]:
    """Coefficients (leading first) of the monic minimal polynomial of m."""
    return poly_coeffs(m.field, minimal_poly(m))


def roots_in_field(field: Field, poly: Poly) -> List[Any]:
    """Distinct roots of poly lying in the field, sorted canonically."""
    if poly.degree() <= 0:
        return []
    found: List[Any] = []
    if field.p and field.p <= 1024:
        for a in field.elements():
            if poly.eval(field.domain.to_sympy(a)) == 0:
                found.append(a)
        return found
    for root in poly.ground_roots():
        found.append(field.domain.from_sympy(root))
    return sorted(found, key=field.to_fraction)


def jordan_block(field: Field, p: int, lam: Any = 0) -> Matrix:
    """J(p, λ): λ on the diagonal, 1 on the superdiagonal, so e_i ↦ λe_i + e_{i-1}."""
    lam = field.scalar(lam)
    z, o = field.zero, field.one
    rows = [[lam if i == j else (o if j == i + 1 else z) for j in range(p)] for i in range(p)]
    return Matrix(field, rows, (p, p))
