"""Comodules, comodule maps and the structure theory built on them.

Internally a comodule over C with basis v_0..v_{m-1} is stored through the
C*-action of the dual basis f_0..f_{n-1}:

* right comodule: ``act[a]`` is the matrix of v -> f_a ⇀ v, so
  rho(v_p) = sum_{q,a} act[a][q, p] v_q (x) c_a;
* left comodule: ``act[a]`` is the matrix of v -> v ↼ f_a, so
  rho(v_p) = sum_{q,a} act[a][q, p] c_a (x) v_q.

A left C-comodule has the same action matrices as the corresponding right
C^cop-comodule, which is how left comodules reuse the right-sided code.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from .coalg import Algebra, Coalgebra, Idempotent, primitive_idempotents
from .errors import NotRational, ValidationError
from .linalg import FieldSpec, Matrix, Subspace, _Echelon, _clean, find_invertible_combination, kernel_basis, image

__all__ = [
    "Comodule",
    "ComoduleMap",
    "SimpleDecomposition",
    "CoalgebraStructure",
    "hom_comodule",
    "dual_comodule",
    "module_to_comodule",
    "socle_and_simples",
    "injective_hull",
    "projective_cover",
    "is_projective",
    "is_injective",
    "regular_comodule",
    "trivial_comodule",
    "grouplike_comodule",
    "structure",
    "find_isomorphism",
    "decompose",
    "indecomposables",
    "direct_sum",
    "subcomodule",
    "quotient_comodule",
]


class Comodule:
    """A finite-dimensional comodule (see module docstring for storage)."""

    def __init__(self, coalgebra: Coalgebra, side: str, act: Sequence[Matrix], name: str | None = None):
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if len(act) != coalgebra.dim:
            raise ValueError("need one action matrix per basis element of C")
        self.coalgebra = coalgebra
        self.side = side
        self.act = tuple(act)
        self.dim = act[0].nrows if act else 0
        self.name = name

    @property
    def field(self) -> FieldSpec:
        return self.coalgebra.field

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Comodule({self.side}{label}, dim={self.dim})"

    @classmethod
    def from_rho(cls, coalgebra: Coalgebra, side: str, rho: Matrix, name=None, validate=True) -> "Comodule":
        """From a coaction matrix (m*n x m for right, n*m x m for left)."""
        n = coalgebra.dim
        m = rho.ncols
        if rho.nrows != m * n:
            raise ValidationError("dimensions", {"rows": rho.nrows, "expected": m * n})
        rows = [[{} for _ in range(m)] for _ in range(n)]
        for r, row in enumerate(rho.rows):
            if side == "right":
                q, a = divmod(r, n)
            else:
                a, q = divmod(r, m)
            for p, v in row.items():
                rows[a][q][p] = v
        act = [Matrix(coalgebra.field, m, m, rows[a]) for a in range(n)]
        M = cls(coalgebra, side, act, name)
        if validate:
            M.validate()
        return M

    @cached_property
    def rho(self) -> Matrix:
        n, m = self.coalgebra.dim, self.dim
        rows = [{} for _ in range(m * n)]
        for a, A in enumerate(self.act):
            for q, row in enumerate(A.rows):
                r = q * n + a if self.side == "right" else a * m + q
                for p, v in row.items():
                    rows[r][p] = v
        return Matrix(self.field, m * n, m, rows)

    def coaction_terms(self) -> list[list]:
        """coaction_terms()[p] = [(q, a, coeff)] for rho(v_p)."""
        out = [[] for _ in range(self.dim)]
        for a, A in enumerate(self.act):
            for q, row in enumerate(A.rows):
                for p, v in row.items():
                    out[p].append((q, a, v))
        return out

    def action(self, f: Sequence) -> Matrix:
        """f ⇀ (-) on a right comodule, (-) ↼ f on a left comodule."""
        F = self.field
        p = F.characteristic
        rows = [{} for _ in range(self.dim)]
        for a, c in enumerate(f):
            if not c:
                continue
            for i, row in enumerate(self.act[a].rows):
                r = rows[i]
                for j, v in row.items():
                    r[j] = r.get(j, 0) + c * v
        return Matrix(F, self.dim, self.dim, [_clean(r, p) for r in rows])

    def validate(self) -> "Comodule":
        C = self.coalgebra
        F = self.field
        p = F.characteristic
        terms = self.coaction_terms()
        for vp in range(self.dim):
            lhs: dict = {}
            rhs: dict = {}
            for q, a, v in terms[vp]:
                # coaction applied again to the comodule factor
                for r, b, w in terms[q]:
                    key = (r, b, a) if self.side == "right" else (a, b, r)
                    lhs[key] = lhs.get(key, 0) + v * w
                for j, k, w in C.dterms[a]:
                    key = (q, j, k) if self.side == "right" else (j, k, q)
                    rhs[key] = rhs.get(key, 0) + v * w
            lhs, rhs = _clean(lhs, p), _clean(rhs, p)
            if lhs != rhs:
                raise ValidationError("comodule-coassociativity", {"index": vp})
        for vp in range(self.dim):
            acc: dict = {}
            for q, a, v in terms[vp]:
                if C.eps[a]:
                    acc[q] = acc.get(q, 0) + v * C.eps[a]
            if _clean(acc, p) != {vp: 1}:
                raise ValidationError("comodule-counit", {"index": vp})
        return self

    def as_right(self) -> "Comodule":
        """Left C-comodules are right C^cop-comodules with the same matrices."""
        if self.side == "right":
            return self
        return Comodule(self.coalgebra.cop(), "right", self.act, self.name)

    def as_left_of_cop(self) -> "Comodule":
        """Inverse of as_right for comodules over C^cop."""
        return Comodule(self.coalgebra.cop(), "left" if self.side == "right" else "right", self.act, self.name)

    def rename(self, name: str) -> "Comodule":
        return Comodule(self.coalgebra, self.side, self.act, name)

    def identity(self) -> "ComoduleMap":
        return ComoduleMap(self, self, Matrix.identity(self.field, self.dim))

    def same_category(self, other: "Comodule") -> bool:
        return self.side == other.side and self.coalgebra == other.coalgebra


@dataclass(frozen=True, eq=False)
class ComoduleMap:
    source: Comodule
    target: Comodule
    matrix: Matrix

    def is_morphism(self) -> bool:
        X = self.matrix
        if X.shape != (self.target.dim, self.source.dim):
            return False
        return all(X @ a == b @ X for a, b in zip(self.source.act, self.target.act))

    def verify(self) -> "ComoduleMap":
        if not self.is_morphism():
            raise ValidationError("intertwining", {"source": self.source.name, "target": self.target.name})
        return self

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.matrix.is_invertible()

    def is_injective(self) -> bool:
        return self.matrix.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.matrix.rank() == self.target.dim

    def __matmul__(self, other: "ComoduleMap") -> "ComoduleMap":
        return ComoduleMap(other.source, self.target, self.matrix @ other.matrix)

    def inverse(self) -> "ComoduleMap":
        return ComoduleMap(self.target, self.source, self.matrix.inverse())


# ------------------------------------------------------------------ basics


def regular_comodule(C: Coalgebra, side: str = "right") -> Comodule:
    act = C.left_harpoon_basis if side == "right" else C.right_harpoon_basis
    return Comodule(C, side, act, "regular")


def grouplike_comodule(C: Coalgebra, g: Sequence, side: str = "right", name=None) -> Comodule:
    """1-dim comodule with coaction v -> v (x) g (or g (x) v)."""
    F = C.field
    act = [Matrix(F, 1, 1, [{0: F(x)}] if F(x) else [{}]) for x in g]
    return Comodule(C, side, act, name)


def trivial_comodule(C: Coalgebra, unit: Sequence, side: str = "right") -> Comodule:
    return grouplike_comodule(C, unit, side, "trivial")


def _intertwiner_rows(actM: Sequence[Matrix], actN: Sequence[Matrix], mM: int, mN: int, p: int) -> list[dict]:
    """Equations X actM[a] = actN[a] X in the unknowns X[r][q] (index r*mM+q)."""
    eqs = []
    for A, B in zip(actM, actN):
        block: dict = {}
        # X A : entry (r, p) gets X[r][q] A[q][p]
        for q, row in enumerate(A.rows):
            for pp, v in row.items():
                for r in range(mN):
                    d = block.setdefault(r * mM + pp, {})
                    k = r * mM + q
                    d[k] = d.get(k, 0) + v
        # - B X : entry (r, p) gets B[r][s] X[s][p]
        for r, row in enumerate(B.rows):
            for s, w in row.items():
                for pp in range(mM):
                    d = block.setdefault(r * mM + pp, {})
                    k = s * mM + pp
                    d[k] = d.get(k, 0) - w
        eqs.extend(_clean(d, p) for d in block.values())
    return eqs


def hom_space(M: Comodule, N: Comodule) -> Subspace:
    """Hom^C(M, N) as a subspace of row-major flattened (dim N x dim M)
    matrices, in canonical echelon form."""
    if M.side != N.side or M.coalgebra != N.coalgebra:
        raise ValueError("comodules live in different categories")
    F = M.field
    mM, mN = M.dim, N.dim
    eqs = _intertwiner_rows(M.act, N.act, mM, mN, F.characteristic)
    return kernel_basis(Matrix(F, len(eqs), mM * mN, eqs))


def hom_comodule(M: Comodule, N: Comodule) -> list[ComoduleMap]:
    """Canonical basis of Hom^C(M, N)."""
    K = hom_space(M, N)
    F = M.field
    return [ComoduleMap(M, N, Matrix.unflatten(F, N.dim, M.dim, r)) for r in K.rows]


def dual_comodule(M: Comodule) -> Comodule:
    """M* on the opposite side; the action matrices transpose."""
    other = "left" if M.side == "right" else "right"
    name = f"{M.name}*" if M.name else None
    return Comodule(M.coalgebra, other, [a.T for a in M.act], name)


def dual_map(f: ComoduleMap) -> ComoduleMap:
    return ComoduleMap(dual_comodule(f.target), dual_comodule(f.source), f.matrix.T)


def module_to_comodule(C: Coalgebra, action: Callable | Sequence[Matrix], side: str = "right", name=None) -> Comodule:
    """Rebuild a comodule from a C*-module.

    ``action`` is either a callable f -> matrix or the list of matrices of
    the dual basis.  ``side='right'`` reads a left C*-module (⇀) and gives a
    right comodule via rho(v) = sum_i (f_i . v) (x) c_i.
    """
    if callable(action):
        act = [action(C.basis_vector(a)) for a in range(C.dim)]
    else:
        act = list(action)
    M = Comodule(C, side, act, name)
    try:
        M.validate()
    except ValidationError as exc:
        raise NotRational(str(exc)) from exc
    return M


def direct_sum(mods: Sequence[Comodule], name=None) -> Comodule:
    C = mods[0].coalgebra
    act = [Matrix.block_diag([M.act[a] for M in mods]) for a in range(C.dim)]
    return Comodule(C, mods[0].side, act, name)


def subcomodule(M: Comodule, W: Subspace, name=None) -> tuple[Comodule, Matrix]:
    """Restriction of M to an invariant subspace; returns (S, inclusion)."""
    B = W.as_matrix()
    piv = list(W.pivots)
    act = [(A @ B).select_rows(piv) for A in M.act]
    S = Comodule(M.coalgebra, M.side, act, name)
    for A, a in zip(M.act, act):
        if A @ B != B @ a:
            raise ValueError("subspace is not a subcomodule")
    return S, B


def quotient_comodule(M: Comodule, W: Subspace, name=None) -> tuple[Comodule, Matrix]:
    """M/W with basis the classes of the non-pivot coordinates; returns
    (Q, projection)."""
    F = M.field
    comp = W.complement_indices()
    pos = {j: t for t, j in enumerate(comp)}
    rows = [{} for _ in comp]
    for i in range(M.dim):
        red = W.reduce({i: F.one})
        for j, v in red.items():
            rows[pos[j]][i] = v
    P = Matrix(F, len(comp), M.dim, rows)
    incl = Matrix.from_columns(F, M.dim, [{j: F.one} for j in comp])
    act = [P @ A @ incl for A in M.act]
    return Comodule(M.coalgebra, M.side, act, name), P


def image_subspace(M: Comodule, X: Matrix) -> Subspace:
    return image(X)


# -------------------------------------------------------- isomorphisms


def _search_invertible(F: FieldSpec, mats: Sequence[Matrix], rng: random.Random, tries: int = 60,
                       exhaustive_limit: int = 4096):
    """Find an invertible linear combination of ``mats`` or None (certified)."""
    if not mats:
        return None
    return find_invertible_combination(F, mats, rng, tries, exhaustive_limit)


def _lincomb(F: FieldSpec, mats: Sequence[Matrix], coeffs) -> Matrix:
    out = Matrix.zeros(F, mats[0].nrows, mats[0].ncols)
    for c, A in zip(coeffs, mats):
        if c:
            out = out + A.scale(c)
    return out


def find_isomorphism(M: Comodule, N: Comodule, seed: int = 0) -> ComoduleMap | None:
    """An isomorphism M -> N, or None when the search finds none.

    Exhaustive over small prime fields (so None is a certificate there);
    randomised otherwise.
    """
    if M.dim != N.dim or not M.same_category(N):
        return None
    if M.dim == 0:
        return ComoduleMap(M, N, Matrix.zeros(M.field, 0, 0))
    basis = hom_comodule(M, N)
    if not basis:
        return None
    if len(basis) != len(hom_space(M, M).rows):
        return None
    A = _search_invertible(M.field, [f.matrix for f in basis], random.Random(seed))
    return None if A is None else ComoduleMap(M, N, A)


def isomorphic(M: Comodule, N: Comodule) -> bool:
    return find_isomorphism(M, N) is not None


# -------------------------------------------------------- endomorphisms


class EndAlgebra(Algebra):
    """End^C(M) in the canonical basis of hom_space(M, M)."""

    def __init__(self, M: Comodule):
        self.module = M
        self.field = M.field
        self.space = hom_space(M, M)
        self.dim = self.space.dim
        m = M.dim
        self.mats = [Matrix.unflatten(self.field, m, m, r) for r in self.space.rows]
        self.one = self.coords(Matrix.identity(self.field, m))

    def coords(self, X: Matrix) -> list:
        return self.space.coords(X.flatten())

    def to_matrix(self, x) -> Matrix:
        out = Matrix.zeros(self.field, self.module.dim, self.module.dim)
        for c, A in zip(x, self.mats):
            if c:
                out = out + A.scale(c)
        return out

    def mul(self, x, y):
        return self.coords(self.to_matrix(x) @ self.to_matrix(y))

    def trace_functionals(self):
        nat = []
        p = self.field.characteristic
        for A in self.mats:
            t = sum((A.rows[i].get(i, 0) for i in range(A.nrows)), self.field.zero)
            nat.append(t % p if p else t)
        return [nat] + super().trace_functionals()


def decompose(M: Comodule) -> list[tuple[Comodule, Matrix, Matrix]]:
    """Indecomposable summands as (summand, inclusion, projection)."""
    if M.dim == 0:
        return []
    E = EndAlgebra(M)
    out = []
    for idem in primitive_idempotents(E):
        X = E.to_matrix(idem.element)
        W = image(X)
        S, incl = subcomodule(M, W, M.name)
        proj = X.select_rows(W.pivots)
        out.append((S, incl, proj))
    return out


def is_indecomposable(M: Comodule) -> bool:
    E = EndAlgebra(M)
    return E.dim - E.radical.dim == 1


# -------------------------------------------------------- structure theory


@dataclass
class CoalgebraStructure:
    """Primitive idempotents of C* grouped into isomorphism classes, with the
    indecomposable injective Ce, projective (eC)* and simple soc(Ce) for the
    lowest-index idempotent of each class."""

    coalgebra: Coalgebra
    idempotents: list
    radical: Subspace
    reps: list
    injectives: list
    projectives: list
    simples: list

    @property
    def num_simples(self) -> int:
        return len(self.simples)

    def simple_index(self, S: Comodule) -> int:
        """Index of the simple isomorphic to S (S must be simple)."""
        for i, T in enumerate(self.simples):
            if T.dim == S.dim and hom_space(T, S).dim:
                return i
        raise ValueError("not isomorphic to any listed simple")


def _socle_space(M: Comodule, J: Subspace) -> Subspace:
    if J.dim == 0:
        return Subspace.full(M.field, M.dim)
    return kernel_basis(Matrix.vstack([M.action(j) for j in J.basis()]))


def structure(C: Coalgebra) -> CoalgebraStructure:
    cached = C.__dict__.get("_structure")
    if cached is not None:
        return cached
    A = C.algebra
    idems = primitive_idempotents(A)
    J = A.radical
    reg_r = regular_comodule(C, "right")
    reg_l = regular_comodule(C, "left")
    reps, inj, proj, simp = [], [], [], []
    seen = set()
    for idx, e in enumerate(idems):
        if e.iso_class in seen:
            continue
        seen.add(e.iso_class)
        reps.append(idx)
        k = len(reps) - 1
        E, _ = subcomodule(reg_r, image(C.right_harpoon(e.element)), f"E{k}")
        eC, _ = subcomodule(reg_l, image(C.left_harpoon(e.element)))
        P = dual_comodule(eC).rename(f"P{k}")
        S, _ = subcomodule(E, _socle_space(E, J), f"S{k}")
        inj.append(E)
        proj.append(P)
        simp.append(S)
    st = CoalgebraStructure(C, idems, J, reps, inj, proj, simp)
    C.__dict__["_structure"] = st
    return st


@dataclass
class SimpleDecomposition:
    simples: list
    multiplicities: list


def socle_space(M: Comodule) -> Subspace:
    C = M.coalgebra if M.side == "right" else M.coalgebra.cop()
    return _socle_space(M, C.algebra.radical)


def socle_and_simples(M: Comodule) -> tuple[Subspace, SimpleDecomposition]:
    R = M.as_right()
    st = structure(R.coalgebra)
    soc = _socle_space(R, st.radical)
    simples, mults = [], []
    for S in st.simples:
        k = hom_space(S, R).dim
        if k:
            simples.append(S)
            mults.append(k)
    return soc, SimpleDecomposition(simples, mults)


def radical_space(M: Comodule) -> Subspace:
    """J ⇀ M."""
    R = M.as_right()
    J = structure(R.coalgebra).radical
    vecs = []
    for j in J.basis():
        A = R.action(j)
        vecs.extend(A.T.rows)
    return Subspace.span(M.field, M.dim, vecs)


def top_multiplicities(M: Comodule) -> list[int]:
    st = structure(M.coalgebra)
    return [hom_space(M, S).dim for S in st.simples]


def socle_multiplicities(M: Comodule) -> list[int]:
    st = structure(M.coalgebra)
    return [hom_space(S, M).dim for S in st.simples]


def _acting_idempotent(S: Comodule) -> int:
    st = structure(S.coalgebra)
    for e in st.idempotents:
        if not S.action(e.element).is_zero():
            return e.iso_class
    raise ValueError("no idempotent acts nontrivially (zero comodule?)")


def injective_hull(S: Comodule) -> tuple[Comodule, ComoduleMap]:
    st = structure(S.coalgebra)
    E = st.injectives[_acting_idempotent(S)]
    maps = hom_comodule(S, E)
    emb = next(f for f in maps if f.is_injective())
    return E, emb


def projective_cover(S: Comodule) -> tuple[Comodule, ComoduleMap]:
    st = structure(S.coalgebra)
    P = st.projectives[_acting_idempotent(S)]
    maps = hom_comodule(P, S)
    surj = next(f for f in maps if f.is_surjective())
    return P, surj


@dataclass
class ProjectivityResult:
    value: bool
    iso: ComoduleMap | None = None
    failing_simple: int | None = None

    def __bool__(self):
        return self.value


def _random_sum_map(sources, M, mults, rng, F):
    blocks = []
    for P, t in zip(sources, mults):
        basis = [f.matrix for f in hom_comodule(P, M)] if t else []
        for _ in range(t):
            blocks.append(_lincomb(F, basis, [F.random(rng, 20) for _ in basis]))
    return Matrix.hstack(blocks) if blocks else Matrix.zeros(F, M.dim, 0)


def is_projective(M: Comodule, seed: int = 0) -> ProjectivityResult:
    """Projective iff the projective cover ⊕ P_i^{t_i} -> M is bijective."""
    R = M.as_right()
    st = structure(R.coalgebra)
    F = M.field
    tops = top_multiplicities(R)
    sources = st.projectives
    cover = direct_sum([P for P, t in zip(sources, tops) for _ in range(t)]) if any(tops) else None
    rng = random.Random(seed)
    for _ in range(50):
        X = _random_sum_map(sources, R, tops, rng, F)
        if X.rank() == R.dim:
            break
    else:
        raise RuntimeError("could not build a projective cover map")
    if cover is not None and cover.dim == R.dim:
        return ProjectivityResult(True, ComoduleMap(cover, R, X))
    K, _ = subcomodule(cover, kernel_basis(X))
    bad = next(i for i, S in enumerate(st.simples) if hom_space(K, S).dim)
    return ProjectivityResult(False, failing_simple=bad)


def is_injective(M: Comodule, seed: int = 0) -> ProjectivityResult:
    """Injective iff the injective hull M -> ⊕ E_i^{s_i} is bijective."""
    R = M.as_right()
    st = structure(R.coalgebra)
    F = M.field
    socs = socle_multiplicities(R)
    targets = [E for E, s in zip(st.injectives, socs) for _ in range(s)]
    hull = direct_sum(targets)
    rng = random.Random(seed)
    for _ in range(50):
        blocks = []
        for E in targets:
            basis = [f.matrix for f in hom_comodule(R, E)]
            blocks.append(_lincomb(F, basis, [F.random(rng, 20) for _ in basis]))
        X = Matrix.vstack(blocks)
        if X.rank() == R.dim:
            break
    else:
        raise RuntimeError("could not build an injective hull map")
    if hull.dim == R.dim:
        return ProjectivityResult(True, ComoduleMap(R, hull, X))
    Q, _ = quotient_comodule(hull, image(X))
    bad = next(i for i, S in enumerate(st.simples) if hom_space(S, Q).dim)
    return ProjectivityResult(False, failing_simple=bad)


# -------------------------------------------------------- indecomposables


def _radical_layers(M: Comodule) -> list[Comodule]:
    """Quotients M / J^k M for k = 1, 2, ..."""
    out = []
    R = M.as_right()
    J = structure(R.coalgebra).radical
    F = M.field
    cur = Subspace.full(F, M.dim)
    while cur.dim:
        vecs = [R.action(j) @ v for j in J.basis() for v in cur.basis()]
        nxt = Subspace.span(F, M.dim, vecs)
        if nxt.dim == cur.dim:
            break
        Q, _ = quotient_comodule(M, nxt)
        out.append(Q)
        cur = nxt
    return out


def _socle_layers(M: Comodule) -> list[Comodule]:
    """Submodules soc^k(M) for k = 1, 2, ..."""
    out = []
    R = M.as_right()
    J = structure(R.coalgebra).radical
    F = M.field
    cur = Subspace.zero(F, M.dim)
    while cur.dim < M.dim:
        # soc^{k+1} = {m : J m ⊆ soc^k}
        if cur.dim:
            mats = []
            for j in J.basis():
                A = R.action(j)
                cols = [cur.reduce(A.column(c)) for c in range(M.dim)]
                mats.append(Matrix.from_columns(F, M.dim, cols))
            nxt = kernel_basis(Matrix.vstack(mats)) if mats else Subspace.full(F, M.dim)
        else:
            nxt = _socle_space(R, J)
        if nxt.dim == cur.dim:
            break
        S, _ = subcomodule(M, nxt)
        out.append(S)
        cur = nxt
    return out


def indecomposables(C: Coalgebra, max_dim: int | None = None, extra: Sequence[Comodule] = ()) -> list[Comodule]:
    """Pairwise non-isomorphic indecomposable right comodules found among the
    radical quotients of projectives, socle layers of injectives, and the
    summands of ``extra``.  Complete for serial coalgebras (every
    indecomposable there is a quotient of a projective); a heuristic list in
    general."""
    st = structure(C)
    bound = C.dim if max_dim is None else max_dim
    cands: list[Comodule] = []
    for P in st.projectives:
        cands.extend(_radical_layers(P))
    for E in st.injectives:
        cands.extend(_socle_layers(E))
    for X in extra:
        cands.extend(S for S, _, _ in decompose(X))
    out: list[Comodule] = []
    for X in cands:
        if X.dim == 0 or X.dim > bound:
            continue
        if any(Y.dim == X.dim and isomorphic(X, Y) for Y in out):
            continue
        out.append(X)
    out.sort(key=lambda X: X.dim)
    return [X.rename(f"I{k}") for k, X in enumerate(out)]
