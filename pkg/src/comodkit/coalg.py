"""Coalgebras, their convolution algebras, and idempotent machinery.

A coalgebra with basis c_0..c_{n-1} stores Delta as an (n^2 x n) matrix whose
column i is Delta(c_i) in the basis c_j (x) c_k (index j*n + k).  The dual
basis f_0..f_{n-1} of C* multiplies by <f g, c> = <f, c_1><g, c_2>, so the
structure constants of C* are the transpose of Delta.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Callable, Sequence

import sympy

from .errors import NonSplitSimple, SmallCharacteristic, ValidationError
from .linalg import FieldSpec, Matrix, Subspace, kernel_basis, solve_affine, _clean
from .errors import NoSolution

__all__ = [
    "Coalgebra",
    "Algebra",
    "StructureAlgebra",
    "ConvolutionAlgebra",
    "Idempotent",
    "HarpoonActions",
    "validate_coalgebra",
    "dual_algebra",
    "harpoon_actions",
    "radical",
    "primitive_idempotents",
]


def _triples_to_delta(field: FieldSpec, n: int, delta) -> Matrix:
    if isinstance(delta, Matrix):
        if delta.shape != (n * n, n):
            raise ValidationError("dimensions", {"expected": [n * n, n], "got": list(delta.shape)})
        return delta
    entries: dict = {}
    for t in delta:
        i, j, k, c = t
        for idx in (i, j, k):
            if not 0 <= idx < n:
                raise ValidationError("dimensions", {"index": idx, "dim": n})
        entries[(j * n + k, i)] = entries.get((j * n + k, i), 0) + field(c)
    return Matrix.from_entries(field, n * n, n, entries)


class Coalgebra:
    """A finite-dimensional coalgebra.  Build through validate_coalgebra."""

    def __init__(self, field: FieldSpec, dim: int, delta: Matrix, eps: Sequence, names: Sequence[str] | None = None):
        self.field = field
        self.dim = dim
        self.delta = delta
        self.eps = tuple(field(x) for x in eps)
        self.names = tuple(names) if names else tuple(f"c{i}" for i in range(dim))
        n = dim
        terms: list[list] = [[] for _ in range(n)]
        for r, row in enumerate(delta.rows):
            j, k = divmod(r, n)
            for i, v in row.items():
                terms[i].append((j, k, v))
        # dterms[i]: sparse Delta(c_i) as (j, k, coefficient)
        self.dterms = tuple(tuple(t) for t in terms)
        self._cop = None

    def __repr__(self):
        return f"Coalgebra(dim={self.dim}, field={self.field})"

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Coalgebra):
            return NotImplemented
        return (self.field, self.dim, self.eps) == (other.field, other.dim, other.eps) and self.delta == other.delta

    def __hash__(self):
        return hash((self.field, self.dim, self.eps))

    def cop(self) -> "Coalgebra":
        """The co-opposite coalgebra (tensor factors of Delta swapped)."""
        if self._cop is None:
            n = self.dim
            rows = [{} for _ in range(n * n)]
            for r, row in enumerate(self.delta.rows):
                j, k = divmod(r, n)
                rows[k * n + j] = dict(row)
            c = Coalgebra(self.field, n, Matrix(self.field, n * n, n, rows), self.eps, self.names)
            c._cop = self
            self._cop = c
        return self._cop

    @cached_property
    def algebra(self) -> "ConvolutionAlgebra":
        return ConvolutionAlgebra(self)

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def left_harpoon(self, f: Sequence) -> Matrix:
        """Matrix of c -> f ⇀ c = c_1 <f, c_2> on C."""
        p = self.field.characteristic
        rows = [{} for _ in range(self.dim)]
        for i, terms in enumerate(self.dterms):
            for j, k, v in terms:
                if f[k]:
                    rows[j][i] = rows[j].get(i, 0) + v * f[k]
        return Matrix(self.field, self.dim, self.dim, [_clean(r, p) for r in rows])

    def right_harpoon(self, f: Sequence) -> Matrix:
        """Matrix of c -> c ↼ f = <f, c_1> c_2 on C."""
        p = self.field.characteristic
        rows = [{} for _ in range(self.dim)]
        for i, terms in enumerate(self.dterms):
            for j, k, v in terms:
                if f[j]:
                    rows[k][i] = rows[k].get(i, 0) + v * f[j]
        return Matrix(self.field, self.dim, self.dim, [_clean(r, p) for r in rows])

    @cached_property
    def left_harpoon_basis(self) -> tuple[Matrix, ...]:
        return tuple(self.left_harpoon(self.basis_vector(a)) for a in range(self.dim))

    @cached_property
    def right_harpoon_basis(self) -> tuple[Matrix, ...]:
        return tuple(self.right_harpoon(self.basis_vector(a)) for a in range(self.dim))

    def iterated_delta(self, i: int, k: int) -> dict:
        """Delta^{(k-1)}(c_i) as {(j_1, ..., j_k): coefficient}."""
        p = self.field.characteristic
        cur = {(i,): self.field.one}
        for _ in range(k - 1):
            nxt: dict = {}
            for key, c in cur.items():
                for j, l, v in self.dterms[key[-1]]:
                    t = key[:-1] + (j, l)
                    nxt[t] = nxt.get(t, 0) + c * v
            cur = _clean(nxt, p)
        return cur

    def grouplikes(self) -> list[int]:
        """Indices of basis vectors that are grouplike."""
        return [i for i, t in enumerate(self.dterms) if t == ((i, i, 1),) and self.eps[i] == 1]


def validate_coalgebra(field: FieldSpec, dim: int, delta, eps: Sequence, names=None) -> Coalgebra:
    """Check coassociativity and counitality; return the Coalgebra."""
    n = dim
    if len(eps) != n:
        raise ValidationError("dimensions", {"eps_length": len(eps), "dim": n})
    D = _triples_to_delta(field, n, delta)
    C = Coalgebra(field, n, D, eps, names)
    p = field.characteristic
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for j, k, v in C.dterms[i]:
            for a, b, w in C.dterms[j]:
                key = (a, b, k)
                left[key] = left.get(key, 0) + v * w
            for a, b, w in C.dterms[k]:
                key = (j, a, b)
                right[key] = right.get(key, 0) + v * w
        left, right = _clean(left, p), _clean(right, p)
        if left != right:
            bad = sorted(set(left) ^ set(right) | {t for t in left if t in right and left[t] != right[t]})[0]
            raise ValidationError(
                "coassociativity",
                {"index": i, "basis": C.names[i], "term": list(bad),
                 "lhs": field.fmt(left.get(bad, 0)), "rhs": field.fmt(right.get(bad, 0))},
            )
    for side in ("right", "left"):
        for i in range(n):
            acc: dict = {}
            for j, k, v in C.dterms[i]:
                if side == "left":
                    if C.eps[j]:
                        acc[k] = acc.get(k, 0) + C.eps[j] * v
                else:
                    if C.eps[k]:
                        acc[j] = acc.get(j, 0) + C.eps[k] * v
            acc = _clean(acc, p)
            if acc != {i: 1}:
                raise ValidationError(
                    "counit",
                    {"index": i, "basis": C.names[i], "side": side,
                     "value": {str(k): field.fmt(v) for k, v in sorted(acc.items())}},
                )
    return C


# ---------------------------------------------------------------- algebras


class Algebra:
    """Finite-dimensional associative unital algebra with elements as
    coordinate lists.  Subclasses implement ``mul`` and ``one``."""

    field: FieldSpec
    dim: int
    one: list

    def mul(self, x: Sequence, y: Sequence) -> list:
        raise NotImplementedError

    def basis_vector(self, i: int) -> list:
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return v

    def add(self, x, y):
        p = self.field.characteristic
        return [(a + b) % p for a, b in zip(x, y)] if p else [a + b for a, b in zip(x, y)]

    def sub(self, x, y):
        p = self.field.characteristic
        return [(a - b) % p for a, b in zip(x, y)] if p else [a - b for a, b in zip(x, y)]

    def scale(self, c, x):
        p = self.field.characteristic
        return [(c * a) % p for a in x] if p else [c * a for a in x]

    def zero(self):
        return [self.field.zero] * self.dim

    @cached_property
    def table(self) -> list[dict]:
        """table[a*dim + b] = product of basis elements a and b (sparse)."""
        d = self.dim
        out = []
        for a in range(d):
            ea = self.basis_vector(a)
            for b in range(d):
                prod = self.mul(ea, self.basis_vector(b))
                out.append({c: v for c, v in enumerate(prod) if v})
        return out

    def trace_functionals(self) -> list[list]:
        """Candidate linear forms t with radical = {x : t(xA) = 0}."""
        d = self.dim
        tab = self.table
        p = self.field.characteristic
        t = []
        for c in range(d):
            s = sum((tab[c * d + e].get(e, 0) for e in range(d)), self.field.zero)
            t.append(s % p if p else s)
        return [t]

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, self.dim, vectors)

    @cached_property
    def radical(self) -> Subspace:
        return radical(self)

    def is_associative(self) -> bool:
        d = self.dim
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    x = self.mul(self.mul(self.basis_vector(a), self.basis_vector(b)), self.basis_vector(c))
                    y = self.mul(self.basis_vector(a), self.mul(self.basis_vector(b), self.basis_vector(c)))
                    if x != y:
                        return False
        return True

    def is_unital(self) -> bool:
        return all(
            self.mul(self.one, self.basis_vector(a)) == self.basis_vector(a) == self.mul(self.basis_vector(a), self.one)
            for a in range(self.dim)
        )

    def power(self, x, k):
        out = list(self.one)
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def left_matrix(self, x) -> Matrix:
        cols = [self.mul(x, self.basis_vector(b)) for b in range(self.dim)]
        return Matrix.from_columns(self.field, self.dim, cols)

    def inverse(self, x):
        """Two-sided inverse of x, or None."""
        try:
            sol = solve_affine(self.left_matrix(x), self.one)
        except NoSolution:
            return None
        y = sol.particular
        return y if self.mul(y, x) == self.one else None


class StructureAlgebra(Algebra):
    def __init__(self, field: FieldSpec, dim: int, table: Sequence[dict], one: Sequence):
        self.field = field
        self.dim = dim
        self.__dict__["table"] = [dict(t) for t in table]
        self.one = list(one)

    def mul(self, x, y):
        d = self.dim
        tab = self.table
        acc: dict = {}
        ys = [(b, w) for b, w in enumerate(y) if w]
        for a, v in enumerate(x):
            if not v:
                continue
            base = a * d
            for b, w in ys:
                vw = v * w
                for c, s in tab[base + b].items():
                    acc[c] = acc.get(c, 0) + vw * s
        p = self.field.characteristic
        out = [self.field.zero] * d
        for c, s in acc.items():
            out[c] = s % p if p else s
        return out

    def opposite(self) -> "StructureAlgebra":
        d = self.dim
        tab = [self.table[b * d + a] for a in range(d) for b in range(d)]
        return StructureAlgebra(self.field, d, tab, self.one)


class ConvolutionAlgebra(StructureAlgebra):
    """C* with <f g, c> = <f, c_1><g, c_2> and unit eps."""

    def __init__(self, parent: Coalgebra):
        n = parent.dim
        tab: list[dict] = [{} for _ in range(n * n)]
        for i, terms in enumerate(parent.dterms):
            for j, k, v in terms:
                tab[j * n + k][i] = v
        super().__init__(parent.field, n, tab, parent.eps)
        self.parent = parent


def dual_algebra(C: Coalgebra) -> ConvolutionAlgebra:
    return C.algebra


@dataclass(frozen=True)
class HarpoonActions:
    """The two module structures C* has on comodules.

    ``left(M, f)`` is f ⇀ (-) on a right comodule, ``right(L, f)`` is
    (-) ↼ f on a left comodule, both as matrices on the underlying space.
    """

    coalgebra: Coalgebra

    def left(self, M, f) -> Matrix:
        if M.side != "right":
            raise ValueError("⇀ acts on right comodules")
        return M.action(f)

    def right(self, L, f) -> Matrix:
        if L.side != "left":
            raise ValueError("↼ acts on left comodules")
        return L.action(f)

    def on_regular_right(self, f) -> Matrix:
        return self.coalgebra.left_harpoon(f)

    def on_regular_left(self, f) -> Matrix:
        return self.coalgebra.right_harpoon(f)


def harpoon_actions(C: Coalgebra) -> HarpoonActions:
    return HarpoonActions(C)


# ------------------------------------------------------------ radical


def _ideal_product(A: Algebra, X: Subspace, Y: Subspace) -> Subspace:
    return A.span([A.mul(x, y) for x in X.basis() for y in Y.basis()])


def _is_nilpotent_ideal(A: Algebra, J: Subspace) -> bool:
    P = J
    for _ in range(A.dim + 1):
        if P.dim == 0:
            return True
        nxt = _ideal_product(A, J, P)
        if nxt.dim == P.dim:
            return False
        P = nxt
    return P.dim == 0


def radical(A: Algebra) -> Subspace:
    """Jacobson radical as the radical of a trace form.

    The trace-form radical always contains J and is an ideal; once it is
    checked to be nilpotent it equals J, in any characteristic.
    """
    d = A.dim
    tab = A.table
    p = A.field.characteristic
    for t in A.trace_functionals():
        rows = []
        for a in range(d):
            row = {}
            for b in range(d):
                s = 0
                for c, v in tab[a * d + b].items():
                    if t[c]:
                        s += v * t[c]
                if p:
                    s %= p
                if s:
                    row[b] = s
            rows.append(row)
        J = kernel_basis(Matrix(A.field, d, d, rows).T)
        if _is_nilpotent_ideal(A, J):
            return J
    raise SmallCharacteristic(
        f"trace-form radical is not nilpotent in characteristic {p} (algebra dim {d})"
    )


# ------------------------------------------------------------ polynomials
# coefficient lists, lowest degree first


def _ptrim(a, F):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _pmul(a, b, F):
    p = F.characteristic
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    if p:
        out = [v % p for v in out]
    return _ptrim(out, F)


def _psub(a, b, F):
    p = F.characteristic
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    if p:
        out = [v % p for v in out]
    return _ptrim(out, F)


def _pdivmod(a, b, F):
    p = F.characteristic
    a = _ptrim(a, F)
    b = _ptrim(b, F)
    inv = F.inv(b[-1])
    q = [F.zero] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        if p:
            c %= p
        sh = len(a) - len(b)
        q[sh] = c
        a = _psub(a, [F.zero] * sh + [c * x for x in b], F)
    return _ptrim(q, F), a


def _pxgcd(a, b, F):
    """(g, s, t) with s a + t b = g, g monic."""
    r0, r1 = _ptrim(a, F), _ptrim(b, F)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = _pdivmod(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1, F), F)
        t0, t1 = t1, _psub(t0, _pmul(q, t1, F), F)
    inv = F.inv(r0[-1])
    norm = lambda v: _ptrim([(x * inv) % F.p if F.p else x * inv for x in v], F)
    return norm(r0), norm(s0), norm(t0)


def _roots(poly, F) -> list:
    """Roots in F of a polynomial (coefficients lowest first)."""
    p = F.characteristic
    if p and p <= 4096:
        out = []
        for x in range(p):
            s = 0
            for c in reversed(poly):
                s = (s * x + c) % p
            if s == 0:
                out.append(x)
        return out
    t = sympy.Symbol("t")
    if p:
        P = sympy.Poly([int(c) for c in reversed(poly)], t, modulus=p)
        return sorted(int(r) % p for r in P.ground_roots())
    coeffs = [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(poly)]
    P = sympy.Poly(coeffs, t, domain="QQ")
    return sorted(F(f"{r.p}/{r.q}") for r in P.ground_roots())


def _peval_alg(A: Algebra, poly, x, unit):
    """Evaluate poly at x with x^0 = unit (Horner)."""
    acc = A.zero()
    for c in reversed(poly):
        acc = A.add(A.mul(acc, x), A.scale(c, unit))
    return acc


# ------------------------------------------------------------ idempotents


@dataclass(frozen=True)
class Idempotent:
    element: tuple
    primitive: bool = True
    iso_class: int = 0


def _min_poly_mod(A: Algebra, x, unit, ideal: Subspace):
    """Minimal polynomial of x in the quotient (unit A unit)/ideal."""
    F = A.field
    powers = [ideal.reduce(unit)]
    raw = unit
    for k in range(1, A.dim + 2):
        raw = A.mul(raw, x)
        red = ideal.reduce(raw)
        cols = powers
        M = Matrix.from_columns(F, A.dim, cols)
        b = [red.get(i, F.zero) for i in range(A.dim)]
        try:
            sol = solve_affine(M, b)
        except NoSolution:
            powers.append(red)
            continue
        coeffs = [F.neg(c) for c in sol.particular] + [F.one]
        return coeffs
    raise RuntimeError("minimal polynomial not found")


def _lift_idempotent(A: Algebra, u, limit: int = 64):
    for _ in range(limit):
        u2 = A.mul(u, u)
        if u2 == u:
            return u
        u3 = A.mul(u2, u)
        u = A.sub(A.scale(A.field(3), u2), A.scale(A.field(2), u3))
    raise RuntimeError("idempotent lifting did not converge")


def _split(A: Algebra, J: Subspace, e, rng: random.Random, budget: int):
    """Split e = u + (e - u) into orthogonal idempotents, or None if e is
    primitive."""
    F = A.field
    basis = [A.basis_vector(i) for i in range(A.dim)]
    corner_vecs = [A.mul(A.mul(e, b), e) for b in basis]
    corner = A.span(corner_vecs)
    cornerJ = A.span([A.mul(A.mul(e, j), e) for j in J.basis()])
    if corner.dim - cornerJ.dim <= 1:
        return None

    def attempt(x):
        if cornerJ.contains(x):
            return None
        mp = _min_poly_mod(A, x, e, cornerJ)
        if len(mp) <= 2:
            return None
        for lam in _roots(mp, F):
            lin = [F.neg(lam), F.one]
            rest, mult = list(mp), 0
            while True:
                q, r = _pdivmod(rest, lin, F)
                if r:
                    break
                rest, mult = q, mult + 1
            if len(rest) <= 1:
                continue
            pk = [F.one]
            for _ in range(mult):
                pk = _pmul(pk, lin, F)
            g, s, _t = _pxgcd(rest, pk, F)
            # s*rest = 1 mod pk, and = 0 mod rest
            upoly = _pdivmod(_pmul(s, rest, F), mp, F)[1]
            u = _peval_alg(A, upoly, x, e)
            return _lift_idempotent(A, u)
        return None

    nil = []
    cands = [v for v in corner.basis()]
    for x in cands:
        u = attempt(x)
        if u is not None:
            return u, A.sub(e, u)
        if not cornerJ.contains(x):
            mp = _min_poly_mod(A, x, e, cornerJ)
            if all(not c for c in mp[:-1]):
                nil.append(x)
    for n_ in nil:
        for b in corner.basis():
            for x in (A.mul(n_, b), A.mul(b, n_)):
                u = attempt(x)
                if u is not None:
                    return u, A.sub(e, u)
    cb = corner.basis()
    for _ in range(budget):
        x = A.zero()
        for v in cb:
            x = A.add(x, A.scale(F.random(rng, 3), v))
        u = attempt(x)
        if u is not None:
            return u, A.sub(e, u)
    raise NonSplitSimple(
        f"could not split an idempotent whose corner has semisimple dimension {corner.dim - cornerJ.dim}"
    )


def equivalent_idempotents(A: Algebra, J: Subspace, e, f) -> bool:
    """A e ≅ A f  iff  e A f A e is not contained in J."""
    basis = [A.basis_vector(i) for i in range(A.dim)]
    eAf = A.span([A.mul(A.mul(e, b), f) for b in basis]).basis()
    fAe = A.span([A.mul(A.mul(f, b), e) for b in basis]).basis()
    return any(not J.contains(A.mul(x, y)) for x in eAf for y in fAe)


def primitive_idempotents(A: Algebra, *, seed: int = 0, budget: int = 60) -> list[Idempotent]:
    """Complete set of orthogonal primitive idempotents summing to 1, each
    tagged with the index of its isomorphism class."""
    J = A.radical
    rng = random.Random(seed)
    done = []
    stack = [list(A.one)]
    while stack:
        e = stack.pop()
        parts = _split(A, J, e, rng, budget)
        if parts is None:
            done.append(e)
        else:
            stack.extend(reversed(parts))
    classes: list[int] = []
    reps: list = []
    for e in done:
        for ci, r in enumerate(reps):
            if equivalent_idempotents(A, J, e, r):
                classes.append(ci)
                break
        else:
            classes.append(len(reps))
            reps.append(e)
    return [Idempotent(tuple(e), True, c) for e, c in zip(done, classes)]
