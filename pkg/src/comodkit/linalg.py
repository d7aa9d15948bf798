"""Exact linear algebra over the rationals and prime fields.

Everything is stored sparsely: a matrix is a tuple of rows, each row a dict
``{column: nonzero entry}``.  Rational entries are ``gmpy2.mpq``; elements of
GF(p) are plain ints in ``range(p)``.  Tensor products use the lexicographic
basis ordering with the left factor major, i.e. ``e_i (x) f_j`` has index
``i * dim(F) + j``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .errors import Inconclusive, NoSolution

__all__ = [
    "FieldSpec",
    "QQ",
    "GF",
    "Matrix",
    "Subspace",
    "AffineSolution",
    "kernel_basis",
    "solve_affine",
    "kronecker",
    "image",
    "rank",
    "linear_combination",
    "generic_determinant_vanishes",
    "find_invertible_combination",
]


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "prime-field":
            p = self.characteristic
            if p < 2 or not gmpy2.is_prime(p):
                raise ValueError(f"characteristic {p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def zero(self):
        return mpq(0) if self.characteristic == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.characteristic == 0 else 1

    def __call__(self, x):
        """Coerce ints, strings like ``"-3/7"``, Fractions and mpq."""
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            if isinstance(x, float):
                raise TypeError("floats are not exact field elements")
            return mpq(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, float):
            raise TypeError("floats are not exact field elements")
        q = mpq(x) if not isinstance(x, Fraction) else mpq(x.numerator, x.denominator)
        num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"{x} has denominator divisible by {p}")
        return num * pow(den, -1, p) % p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / x
        return pow(x, -1, self.characteristic)

    def neg(self, x):
        return -x if self.characteristic == 0 else (-x) % self.characteristic

    def random(self, rng: random.Random, bound: int = 10):
        if self.characteristic:
            return rng.randrange(self.characteristic)
        return mpq(rng.randint(-bound, bound))

    def elements(self):
        """All elements of a prime field, in order."""
        if not self.characteristic:
            raise ValueError("the rationals are infinite")
        return range(self.characteristic)

    def fmt(self, x) -> str:
        if self.characteristic == 0:
            q = mpq(x)
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return str(int(x) % self.characteristic)

    def to_json(self) -> dict:
        if self.characteristic == 0:
            return {"kind": "rationals"}
        return {"kind": "prime-field", "p": self.characteristic}

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec("rationals", 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


def _clean(d: dict, p: int) -> dict:
    if p:
        out = {}
        for k, v in d.items():
            v %= p
            if v:
                out[k] = v
        return out
    return {k: v for k, v in d.items() if v}


def _axpy(target: dict, a, row: dict, p: int) -> None:
    """target -= a * row, in place."""
    if p:
        for k, v in row.items():
            w = (target.get(k, 0) - a * v) % p
            if w:
                target[k] = w
            else:
                target.pop(k, None)
    else:
        for k, v in row.items():
            w = target.get(k, 0) - a * v
            if w:
                target[k] = w
            else:
                target.pop(k, None)


class _Echelon:
    """Incremental Gauss-Jordan elimination.  Rows stay fully reduced with
    pivot entry 1, so the final form is the canonical reduced echelon form."""

    __slots__ = ("field", "p", "piv")

    def __init__(self, field: FieldSpec):
        self.field = field
        self.p = field.characteristic
        self.piv: dict[int, dict] = {}

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        piv = self.piv
        for c in [c for c in v if c in piv]:
            a = v.get(c)
            if a:
                _axpy(v, a, piv[c], self.p)
        return v

    def add(self, vec: dict) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        c = min(r)
        inv = self.field.inv(r[c])
        p = self.p
        r = {k: (v * inv) % p for k, v in r.items()} if p else {k: v * inv for k, v in r.items()}
        for row in self.piv.values():
            a = row.get(c)
            if a:
                _axpy(row, a, r, p)
        self.piv[c] = r
        return True

    def rows(self) -> tuple[tuple[int, ...], tuple[dict, ...]]:
        pivots = tuple(sorted(self.piv))
        return pivots, tuple(self.piv[c] for c in pivots)


class Matrix:
    """Sparse exact matrix.  Treat instances as immutable."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = tuple(rows)

    # construction -----------------------------------------------------
    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def from_dense(cls, field, data, ncols: int | None = None):
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            d = {}
            for j, x in enumerate(r):
                v = field(x)
                if v:
                    d[j] = v
            rows.append(d)
        return cls(field, len(data), ncols, rows)

    @classmethod
    def from_entries(cls, field, nrows, ncols, entries: dict):
        rows = [{} for _ in range(nrows)]
        p = field.characteristic
        for (i, j), x in entries.items():
            rows[i][j] = rows[i].get(j, 0) + field(x)
        return cls(field, nrows, ncols, [_clean(r, p) for r in rows])

    @classmethod
    def from_columns(cls, field, nrows, columns: Sequence[Sequence]):
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            if isinstance(col, dict):
                items = col.items()
            else:
                items = enumerate(col)
            for i, x in items:
                if x:
                    rows[i][j] = x
        return cls(field, nrows, len(columns), rows)

    @classmethod
    def row_vector(cls, field, vec):
        return cls.from_dense(field, [vec], len(vec))

    @classmethod
    def column_vector(cls, field, vec):
        return cls.from_columns(field, len(vec), [list(vec)])

    # access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, self.field.zero)

    def to_dense(self) -> list[list]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self.rows]

    def row(self, i) -> list:
        z = self.field.zero
        r = self.rows[i]
        return [r.get(j, z) for j in range(self.ncols)]

    def column(self, j) -> list:
        z = self.field.zero
        return [r.get(j, z) for r in self.rows]

    def columns(self) -> list[list]:
        return self.T.to_dense()

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def __repr__(self):
        return f"Matrix({self.field}, {self.nrows}x{self.ncols}, {self.to_dense()})"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) and self.rows == other.rows

    __hash__ = None

    def is_zero(self) -> bool:
        return not any(self.rows)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and all(r == {i: 1} for i, r in enumerate(self.rows))

    # arithmetic -------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        rows = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                rows[j][i] = v
        return Matrix(self.field, self.ncols, self.nrows, rows)

    def __matmul__(self, other):
        p = self.field.characteristic
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            orows = other.rows
            out = []
            for r in self.rows:
                acc: dict = {}
                for k, a in r.items():
                    for j, b in orows[k].items():
                        acc[j] = acc.get(j, 0) + a * b
                out.append(_clean(acc, p))
            return Matrix(self.field, self.nrows, other.ncols, out)
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        res = []
        for r in self.rows:
            s = self.field.zero
            for k, a in r.items():
                s += a * vec[k]
            res.append(s % p if p else s)
        return res

    def _combine(self, other, sign):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        p = self.field.characteristic
        out = []
        for r, s in zip(self.rows, other.rows):
            d = dict(r)
            for k, v in s.items():
                d[k] = d.get(k, 0) + sign * v
            out.append(_clean(d, p))
        return Matrix(self.field, self.nrows, self.ncols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        p = self.field.characteristic
        c = self.field(c) if not isinstance(c, type(self.field.zero)) else c
        if not c:
            return Matrix.zeros(self.field, self.nrows, self.ncols)
        return Matrix(self.field, self.nrows, self.ncols, [_clean({k: v * c for k, v in r.items()}, p) for r in self.rows])

    def kron(self, other: "Matrix") -> "Matrix":
        return kronecker(self, other)

    def select_rows(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.field, len(idx), self.ncols, [self.rows[i] for i in idx])

    def select_cols(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        pos = {j: t for t, j in enumerate(idx)}
        rows = [{pos[j]: v for j, v in r.items() if j in pos} for r in self.rows]
        return Matrix(self.field, self.nrows, len(idx), rows)

    @staticmethod
    def hstack(mats: Sequence["Matrix"]) -> "Matrix":
        field, n = mats[0].field, mats[0].nrows
        rows = [{} for _ in range(n)]
        off = 0
        for m in mats:
            for i, r in enumerate(m.rows):
                for j, v in r.items():
                    rows[i][j + off] = v
            off += m.ncols
        return Matrix(field, n, off, rows)

    @staticmethod
    def vstack(mats: Sequence["Matrix"]) -> "Matrix":
        field = mats[0].field
        rows = [r for m in mats for r in m.rows]
        return Matrix(field, len(rows), mats[0].ncols, rows)

    @staticmethod
    def block_diag(mats: Sequence["Matrix"]) -> "Matrix":
        field = mats[0].field
        rows, off = [], 0
        for m in mats:
            for r in m.rows:
                rows.append({j + off: v for j, v in r.items()})
            off += m.ncols
        return Matrix(field, len(rows), off, rows)

    def flatten(self) -> dict:
        """Row-major vectorisation as a sparse dict."""
        n = self.ncols
        return {i * n + j: v for i, r in enumerate(self.rows) for j, v in r.items()}

    @classmethod
    def unflatten(cls, field, nrows, ncols, vec) -> "Matrix":
        rows = [{} for _ in range(nrows)]
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        for k, v in items:
            if v:
                rows[k // ncols][k % ncols] = v
        return cls(field, nrows, ncols, rows)

    # elimination-based -------------------------------------------------
    def rank(self) -> int:
        ech = _Echelon(self.field)
        for r in self.rows:
            ech.add(r)
        return len(ech.piv)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("non-square matrix")
        ech = _Echelon(self.field)
        for i, r in enumerate(self.rows):
            aug = dict(r)
            aug[n + i] = self.field.one
            ech.add(aug)
        pivots, rows = ech.rows()
        if len(pivots) < n or pivots[n - 1] >= n:
            raise ZeroDivisionError("singular matrix")
        return Matrix(self.field, n, n, [{k - n: v for k, v in r.items() if k >= n} for r in rows])

    def det(self):
        n = self.nrows
        if n != self.ncols:
            raise ValueError("non-square matrix")
        F, p = self.field, self.field.characteristic
        rows = [dict(r) for r in self.rows]
        d = F.one
        for c in range(n):
            k = next((i for i in range(c, n) if rows[i].get(c)), None)
            if k is None:
                return F.zero
            if k != c:
                rows[c], rows[k] = rows[k], rows[c]
                d = F.neg(d)
            a = rows[c][c]
            d = d * a % p if p else d * a
            inv = F.inv(a)
            for i in range(c + 1, n):
                b = rows[i].get(c)
                if b:
                    _axpy(rows[i], b * inv, rows[c], p)
        return d

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def order(self, limit: int = 1000) -> int | None:
        """Multiplicative order, or None if infinite or above ``limit``."""
        if self.field.characteristic == 0:
            return self._rational_order(limit)
        m = self
        for k in range(1, limit + 1):
            if m.is_identity():
                return k
            m = m @ self
        return None

    def _rational_order(self, limit: int) -> int | None:
        # finite order forces every irreducible factor of the characteristic
        # polynomial to be cyclotomic; the candidate order is then checked
        import math

        import sympy

        if not self.is_invertible():
            return None
        x = sympy.Symbol("x")
        dense = [[sympy.Rational(int(v.numerator), int(v.denominator)) for v in r] for r in self.to_dense()]
        cp = sympy.Matrix(dense).charpoly(x)
        order = 1
        for fac, _ in sympy.factor_list(cp.as_expr())[1]:
            deg = sympy.degree(fac, x)
            for d in range(1, 4 * deg * deg + 3):
                if sympy.totient(d) == deg and sympy.expand(sympy.cyclotomic_poly(d, x) - sympy.Poly(fac, x).monic().as_expr()) == 0:
                    order = order * d // math.gcd(order, d)
                    break
            else:
                return None
        if order > limit or not self.power(order).is_identity():
            return None
        return order


class Subspace:
    """Subspace of k^ambient with its canonical reduced echelon basis."""

    __slots__ = ("field", "ambient", "pivots", "rows", "_rowof")

    def __init__(self, field: FieldSpec, ambient: int, pivots=(), rows=()):
        self.field = field
        self.ambient = ambient
        self.pivots = tuple(pivots)
        self.rows = tuple(rows)
        self._rowof = dict(zip(self.pivots, self.rows))

    @classmethod
    def span(cls, field, ambient, vectors: Iterable) -> "Subspace":
        ech = _Echelon(field)
        for v in vectors:
            ech.add(v if isinstance(v, dict) else {i: x for i, x in enumerate(v) if x})
        return cls(field, ambient, *ech.rows())

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, range(ambient), [{i: field.one} for i in range(ambient)])

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def basis(self) -> list[list]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ambient)] for r in self.rows]

    def as_matrix(self) -> Matrix:
        """Basis vectors as columns (ambient x dim)."""
        return Matrix.from_columns(self.field, self.ambient, list(self.rows))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.pivots == other.pivots and self.rows == other.rows

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, basis={self.basis()})"

    def _echelon(self) -> _Echelon:
        ech = _Echelon(self.field)
        ech.piv = {c: dict(r) for c, r in zip(self.pivots, self.rows)}
        return ech

    def reduce(self, v) -> dict:
        """Canonical representative of v modulo the subspace (sparse)."""
        d = v if isinstance(v, dict) else {i: x for i, x in enumerate(v) if x}
        p = self.field.characteristic
        d = dict(d)
        rowof = self._rowof
        for c in [c for c in d if c in rowof]:
            a = d.get(c)
            if a:
                _axpy(d, a, rowof[c], p)
        return d

    def contains(self, v) -> bool:
        return not self.reduce(v)

    def coords(self, v) -> list:
        """Coordinates of a vector known to lie in the subspace."""
        z = self.field.zero
        if isinstance(v, dict):
            return [v.get(c, z) for c in self.pivots]
        return [v[c] for c in self.pivots]

    def complement_indices(self) -> list[int]:
        return [j for j in range(self.ambient) if j not in self._rowof]

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.ambient, list(self.rows) + list(other.rows))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        # x = sum a_i u_i = sum b_j w_j  <=>  [U | -W] (a, b) = 0
        U = self.as_matrix()
        W = other.as_matrix()
        K = kernel_basis(Matrix.hstack([U, -W]))
        vecs = [U @ kv[: self.dim] for kv in K.basis()]
        return Subspace.span(self.field, self.ambient, vecs)


@dataclass(frozen=True)
class AffineSolution:
    particular: list
    kernel: Subspace


def _rref_rows(A: Matrix):
    ech = _Echelon(A.field)
    for r in A.rows:
        ech.add(r)
    return ech.rows()


def kernel_basis(A: Matrix) -> Subspace:
    pivots, rows = _rref_rows(A)
    F = A.field
    pset = set(pivots)
    free = [j for j in range(A.ncols) if j not in pset]
    vecs = []
    for f in free:
        v = {f: F.one}
        for c, r in zip(pivots, rows):
            a = r.get(f)
            if a:
                v[c] = F.neg(a)
        vecs.append(v)
    return Subspace.span(F, A.ncols, vecs)


def solve_affine(A: Matrix, b: Sequence) -> AffineSolution:
    if len(b) != A.nrows:
        raise ValueError("rows(A) != len(b)")
    F = A.field
    n = A.ncols
    ech = _Echelon(F)
    for r, bi in zip(A.rows, b):
        aug = dict(r)
        bi = F(bi) if not isinstance(bi, type(F.zero)) else bi
        if bi:
            aug[n] = bi
        ech.add(aug)
    pivots, rows = ech.rows()
    if n in pivots:
        raise NoSolution("right-hand side is not in the image")
    x = [F.zero] * n
    for c, r in zip(pivots, rows):
        x[c] = r.get(n, F.zero)
    return AffineSolution(x, kernel_basis(A))


def kronecker(A: Matrix, B: Matrix) -> Matrix:
    p = A.field.characteristic
    bc = B.ncols
    rows = []
    for ra in A.rows:
        for rb in B.rows:
            d = {}
            for j, a in ra.items():
                off = j * bc
                for l, b in rb.items():
                    v = a * b
                    if p:
                        v %= p
                    if v:
                        d[off + l] = v
            rows.append(d)
    return Matrix(A.field, A.nrows * B.nrows, A.ncols * bc, rows)


def image(A: Matrix) -> Subspace:
    return Subspace.span(A.field, A.nrows, A.T.rows)


def rank(A: Matrix) -> int:
    return A.rank()


def linear_combination(field: FieldSpec, mats: Sequence[Matrix], coeffs) -> Matrix:
    out = Matrix.zeros(field, mats[0].nrows, mats[0].ncols)
    for c, A in zip(coeffs, mats):
        if c:
            out = out + A.scale(c)
    return out


def generic_determinant_vanishes(field: FieldSpec, mats: Sequence[Matrix]) -> bool:
    """True iff det(sum t_i A_i) is the zero polynomial.

    This certifies that no combination of the square matrices ``mats`` is
    invertible, over any extension of the field.
    """
    import sympy
    from sympy.polys.matrices import DomainMatrix

    n = mats[0].nrows
    if n == 0:
        return False
    ts = sympy.symbols(f"t0:{len(mats)}")
    base = sympy.QQ if field.characteristic == 0 else sympy.GF(field.characteristic)
    R = base[ts]
    entries = [[R.zero] * n for _ in range(n)]
    for t, A in zip(ts, mats):
        tv = R(t)
        for i, row in enumerate(A.rows):
            for j, v in row.items():
                c = sympy.Rational(int(v.numerator), int(v.denominator)) if field.characteristic == 0 else int(v)
                entries[i][j] = entries[i][j] + R(c) * tv
    return DomainMatrix(entries, (n, n), R).det() == R.zero


def find_invertible_combination(field: FieldSpec, mats: Sequence[Matrix], rng: random.Random | None = None,
                                tries: int = 64, exhaustive_limit: int = 4096, bound: int = 50):
    """An invertible element of span(mats), or None when certified absent.

    Over a small prime field the span is enumerated.  Otherwise random
    combinations are tried; if all are singular the generic determinant is
    expanded symbolically, which either certifies absence or (over a finite
    field whose points all miss) raises Inconclusive.
    """
    import itertools

    if not mats or mats[0].nrows != mats[0].ncols:
        return None
    if mats[0].nrows == 0:
        return mats[0]
    for A in mats:
        if A.is_invertible():
            return A
    rng = rng or random.Random(0)
    k = len(mats)
    p = field.characteristic
    if p and p ** k <= exhaustive_limit:
        for coeffs in itertools.product(range(p), repeat=k):
            if any(coeffs):
                A = linear_combination(field, mats, coeffs)
                if A.is_invertible():
                    return A
        return None
    for _ in range(tries):
        A = linear_combination(field, mats, [field.random(rng, bound) for _ in range(k)])
        if A.is_invertible():
            return A
    if generic_determinant_vanishes(field, mats):
        return None
    if p == 0:
        # a nonzero polynomial: keep sampling, a hit is guaranteed eventually
        while True:
            A = linear_combination(field, mats, [field.random(rng, 10 ** 6) for _ in range(k)])
            if A.is_invertible():
                return A
    raise Inconclusive("generic determinant is nonzero but every sampled point was singular")
