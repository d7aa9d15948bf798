"""Hopf algebras: validation, tensor products and duals of comodules,
cointegrals, the modular object and Radford's S^4 formula."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .coalg import Coalgebra
from .comod import (
    Comodule,
    ComoduleMap,
    find_isomorphism,
    grouplike_comodule,
    indecomposables,
    injective_hull,
    projective_cover,
    structure,
    trivial_comodule,
)
from .errors import IsoNotFound, NotOneDimensional, ValidationError
from .linalg import FieldSpec, Matrix, Subspace, _clean, kernel_basis, kronecker

__all__ = [
    "Bialgebra",
    "HopfAlgebra",
    "Cointegral",
    "ModularObject",
    "validate_bialgebra",
    "validate_hopf",
    "tensor_comodule",
    "dual_object",
    "duality_maps",
    "cointegral_space",
    "modular_object",
    "radford_check",
]


def _mult_from_triples(field: FieldSpec, n: int, mult) -> Matrix:
    """mult triples (a, b, c, coeff): coefficient of e_c in e_a e_b."""
    if isinstance(mult, Matrix):
        return mult
    entries: dict = {}
    for a, b, c, v in mult:
        entries[(c, a * n + b)] = entries.get((c, a * n + b), 0) + field(v)
    return Matrix.from_entries(field, n, n * n, entries)


def _map_from_pairs(field: FieldSpec, n: int, s) -> Matrix:
    """pairs (src, dst, coeff): coefficient of e_dst in s(e_src)."""
    if isinstance(s, Matrix):
        return s
    entries: dict = {}
    for src, dst, v in s:
        entries[(dst, src)] = entries.get((dst, src), 0) + field(v)
    return Matrix.from_entries(field, n, n, entries)


class Bialgebra:
    """Coalgebra plus an algebra structure (not yet validated)."""

    def __init__(self, base: Coalgebra, mult: Matrix, unit: Sequence):
        self.base = base
        self.field = base.field
        self.dim = base.dim
        self.mult = mult
        self.unit = tuple(self.field(x) for x in unit)
        n = self.dim
        terms: dict = {}
        for c, row in enumerate(mult.rows):
            for ab, v in row.items():
                terms.setdefault(divmod(ab, n), {})[c] = v
        # mterms[(a, b)] = {c: coeff} for e_a e_b
        self.mterms = terms

    def mul(self, x: Sequence, y: Sequence) -> list:
        F = self.field
        p = F.characteristic
        acc: dict = {}
        ys = [(b, w) for b, w in enumerate(y) if w]
        for a, v in enumerate(x):
            if not v:
                continue
            for b, w in ys:
                t = self.mterms.get((a, b))
                if t:
                    for c, s in t.items():
                        acc[c] = acc.get(c, 0) + v * w * s
        out = [F.zero] * self.dim
        for c, s in acc.items():
            out[c] = s % p if p else s
        return out

    def mul_basis(self, a: int, b: int) -> dict:
        return self.mterms.get((a, b), {})

    @property
    def coalgebra(self) -> Coalgebra:
        return self.base

    def unit_comodule(self, side: str = "right") -> Comodule:
        return trivial_comodule(self.base, self.unit, side)


class HopfAlgebra(Bialgebra):
    def __init__(self, base, mult, unit, antipode: Matrix, antipode_inv: Matrix | None = None):
        super().__init__(base, mult, unit)
        self.antipode = antipode
        self.antipode_inv = antipode_inv if antipode_inv is not None else antipode.inverse()

    def __repr__(self):
        return f"HopfAlgebra(dim={self.dim}, field={self.field})"

    @cached_property
    def cop(self) -> "HopfAlgebra":
        """H^cop: opposite coalgebra, same product, antipode s^{-1}."""
        return HopfAlgebra(self.base.cop(), self.mult, self.unit, self.antipode_inv, self.antipode)


def _same(F: FieldSpec, a, b) -> bool:
    return (a - b) % F.p == 0 if F.p else a == b


def _check_bialgebra(H: Bialgebra) -> None:
    F = H.field
    p = F.characteristic
    n = H.dim
    C = H.base
    basis = [C.basis_vector(i) for i in range(n)]
    unit = list(H.unit)
    for a in range(n):
        if H.mul(unit, basis[a]) != basis[a] or H.mul(basis[a], unit) != basis[a]:
            raise ValidationError("unit", {"index": a})
    for a in range(n):
        for b in range(n):
            ab = H.mul(basis[a], basis[b])
            for c in range(n):
                if H.mul(ab, basis[c]) != H.mul(basis[a], H.mul(basis[b], basis[c])):
                    raise ValidationError("associativity", {"indices": [a, b, c]})
    # unit is grouplike
    du: dict = {}
    for i, ui in enumerate(unit):
        if ui:
            for j, k, v in C.dterms[i]:
                du[(j, k)] = du.get((j, k), 0) + ui * v
    want = {(j, k): unit[j] * unit[k] for j in range(n) for k in range(n) if unit[j] and unit[k]}
    if _clean(du, p) != _clean(want, p) or not _same(F, sum(e * u for e, u in zip(C.eps, unit)), 1):
        raise ValidationError("unit-grouplike", {})
    # Delta(ab) = Delta(a) Delta(b), eps(ab) = eps(a) eps(b)
    for a in range(n):
        for b in range(n):
            prod = H.mul_basis(a, b)
            lhs: dict = {}
            for c, v in prod.items():
                for j, k, w in C.dterms[c]:
                    lhs[(j, k)] = lhs.get((j, k), 0) + v * w
            rhs: dict = {}
            for j1, k1, v1 in C.dterms[a]:
                for j2, k2, v2 in C.dterms[b]:
                    left = H.mul_basis(j1, j2)
                    right = H.mul_basis(k1, k2)
                    if not left or not right:
                        continue
                    for x, u in left.items():
                        for y, w in right.items():
                            rhs[(x, y)] = rhs.get((x, y), 0) + v1 * v2 * u * w
            if _clean(lhs, p) != _clean(rhs, p):
                raise ValidationError("comultiplicativity", {"indices": [a, b]})
            e = sum((C.eps[c] * v for c, v in prod.items()), F.zero)
            if not _same(F, e, C.eps[a] * C.eps[b]):
                raise ValidationError("counit-multiplicativity", {"indices": [a, b]})


def validate_bialgebra(base: Coalgebra, mult, unit) -> Bialgebra:
    B = Bialgebra(base, _mult_from_triples(base.field, base.dim, mult), unit)
    _check_bialgebra(B)
    return B


def _check_antipode(H: Bialgebra, S: Matrix) -> None:
    F = H.field
    p = F.characteristic
    C = H.base
    n = H.dim
    cols = S.T.rows  # cols[i] = s(e_i) as sparse dict
    for i in range(n):
        left: dict = {}
        right: dict = {}
        for j, k, v in C.dterms[i]:
            for a, w in cols[j].items():
                for c, u in H.mul_basis(a, k).items():
                    left[c] = left.get(c, 0) + v * w * u
            for a, w in cols[k].items():
                for c, u in H.mul_basis(j, a).items():
                    right[c] = right.get(c, 0) + v * w * u
        want = {c: C.eps[i] * u for c, u in enumerate(H.unit) if u}
        want = _clean(want, p)
        if _clean(left, p) != want:
            raise ValidationError("antipode", {"index": i, "side": "left"})
        if _clean(right, p) != want:
            raise ValidationError("antipode", {"index": i, "side": "right"})


def validate_hopf(base: Coalgebra, mult, unit, antipode) -> HopfAlgebra:
    F = base.field
    n = base.dim
    M = _mult_from_triples(F, n, mult)
    S = _map_from_pairs(F, n, antipode)
    B = Bialgebra(base, M, unit)
    _check_bialgebra(B)
    _check_antipode(B, S)
    if not S.is_invertible():
        raise ValidationError("antipode-invertible", {})
    return HopfAlgebra(base, M, unit, S)


# ------------------------------------------------------------ monoidal


def tensor_comodule(H: Bialgebra, X: Comodule, Y: Comodule, name=None) -> Comodule:
    """X (x) Y with coaction x (x) y -> x_0 (x) y_0 (x) x_1 y_1 (right) or
    x_{-1} y_{-1} (x) x_0 (x) y_0 (left)."""
    if X.side != Y.side:
        raise ValueError("tensor factors must have the same side")
    F = H.field
    n = H.dim
    acc: list[Matrix | None] = [None] * n
    kr: dict = {}
    for (i, j), t in H.mterms.items():
        if X.act[i].is_zero() or Y.act[j].is_zero():
            continue
        K = kr.get((i, j))
        if K is None:
            K = kr[(i, j)] = kronecker(X.act[i], Y.act[j])
        for a, v in t.items():
            term = K.scale(v)
            acc[a] = term if acc[a] is None else acc[a] + term
    m = X.dim * Y.dim
    act = [A if A is not None else Matrix.zeros(F, m, m) for A in acc]
    return Comodule(X.coalgebra, X.side, act, name)


def tensor_map(f: Matrix, g: Matrix) -> Matrix:
    return kronecker(f, g)


def _twisted_dual(X: Comodule, S: Matrix) -> Comodule:
    # act[a] = (sum_i S[a][i] X.act[i])^T, i.e. f_a o s acting, transposed
    F = X.field
    act = []
    for a in range(X.coalgebra.dim):
        act.append(X.action(S.row(a)).T)
    return Comodule(X.coalgebra, X.side, act)


def dual_object(H: HopfAlgebra, X: Comodule, side: str = "left") -> Comodule:
    """Left dual X^∨ (built with s) or right dual ^∨X (built with s^{-1})
    of a right comodule, on the dual space with the dual basis."""
    if X.side != "right":
        raise ValueError("dual objects are taken in the category of right comodules")
    S = H.antipode if side == "left" else H.antipode_inv
    D = _twisted_dual(X, S)
    mark = "∨"
    D.name = (f"{X.name}{mark}" if side == "left" else f"{mark}{X.name}") if X.name else None
    return D


@dataclass
class DualityData:
    dual: Comodule
    ev: Matrix
    coev: Matrix
    side: str


def duality_maps(H: HopfAlgebra, X: Comodule, side: str = "left") -> DualityData:
    """Evaluation and coevaluation in the dual bases.

    left:  ev: X^∨ (x) X -> k,  coev: k -> X (x) X^∨
    right: ev: X (x) ^∨X -> k,  coev: k -> ^∨X (x) X
    Both pairings are the identity pattern in the chosen bases.
    """
    F = H.field
    m = X.dim
    D = dual_object(H, X, side)
    ev = Matrix(F, 1, m * m, [{p * m + p: F.one for p in range(m)}])
    coev = Matrix(F, m * m, 1, [{0: F.one} if i // m == i % m else {} for i in range(m * m)])
    return DualityData(D, ev, coev, side)


def check_duality(H: HopfAlgebra, X: Comodule, data: DualityData) -> dict:
    """Zig-zag identities and comodule-map property of ev/coev."""
    F = H.field
    m = X.dim
    I = Matrix.identity(F, m)
    one = H.unit_comodule("right")
    D = data.dual
    if data.side == "left":
        z1 = kronecker(I, data.ev) @ kronecker(data.coev, I)   # X -> X X^∨ X -> X
        z2 = kronecker(data.ev, I) @ kronecker(I, data.coev)   # X^∨ -> X^∨ X X^∨ -> X^∨
        ev_src = tensor_comodule(H, D, X)
        coev_tgt = tensor_comodule(H, X, D)
    else:
        z1 = kronecker(data.ev, I) @ kronecker(I, data.coev)   # X -> X ^∨X X -> X
        z2 = kronecker(I, data.ev) @ kronecker(data.coev, I)   # ^∨X -> ^∨X X ^∨X -> ^∨X
        ev_src = tensor_comodule(H, X, D)
        coev_tgt = tensor_comodule(H, D, X)
    return {
        "zigzag_object": z1 == I,
        "zigzag_dual": z2 == I,
        "ev_is_morphism": ComoduleMap(ev_src, one, data.ev).is_morphism(),
        "coev_is_morphism": ComoduleMap(one, coev_tgt, data.coev).is_morphism(),
    }


# ------------------------------------------------------------ cointegrals


@dataclass(frozen=True)
class Cointegral:
    side: str
    lam: tuple


def cointegral_space(H: Bialgebra, side: str = "left") -> Subspace:
    """Cointegrals as a subspace of H*.

    left:  lambda(h_2) h_1 = lambda(h) 1   (map of left comodules H -> k)
    right: lambda(h_1) h_2 = lambda(h) 1
    """
    if side not in ("left", "right"):
        raise ValueError("side must be left or right")
    F = H.field
    p = F.characteristic
    n = H.dim
    C = H.base
    eqs = []
    for i in range(n):
        rows = [{} for _ in range(n)]
        for j, k, v in C.dterms[i]:
            coord, var = (j, k) if side == "left" else (k, j)
            rows[coord][var] = rows[coord].get(var, 0) + v
        for t, u in enumerate(H.unit):
            if u:
                rows[t][i] = rows[t].get(i, 0) - u
        eqs.extend(_clean(r, p) for r in rows)
    return kernel_basis(Matrix(F, len(eqs), n, eqs))


def cointegrals(H: Bialgebra, side: str = "left") -> list[Cointegral]:
    return [Cointegral(side, tuple(v)) for v in cointegral_space(H, side).basis()]


# ------------------------------------------------------------ modular object


@dataclass
class ModularObject:
    g: tuple                # coefficients of the grouplike in the basis of H
    comodule: Comodule      # nu^r(k) as computed
    index: int | None       # basis index when g is a basis vector

    def is_trivial(self, H: Bialgebra) -> bool:
        return tuple(self.g) == tuple(H.unit)


def modular_object(H: HopfAlgebra) -> ModularObject:
    """g = nu^r(k): a 1-dimensional comodule, read off as a grouplike."""
    from .nakayama import nakayama_right

    one = H.unit_comodule("right")
    G = nakayama_right(H.base, one).output
    if G.dim != 1:
        raise NotOneDimensional(f"nu^r(k) has dimension {G.dim}")
    g = tuple(A[0, 0] for A in G.act)
    C = H.base
    F = H.field
    # grouplike check
    dg: dict = {}
    for i, gi in enumerate(g):
        if gi:
            for j, k, v in C.dterms[i]:
                dg[(j, k)] = dg.get((j, k), 0) + gi * v
    want = {(j, k): g[j] * g[k] for j in range(C.dim) for k in range(C.dim) if g[j] and g[k]}
    p = F.characteristic
    if _clean(dg, p) != _clean(want, p):
        raise NotOneDimensional("nu^r(k) is not given by a grouplike")
    nz = [i for i, x in enumerate(g) if x]
    idx = nz[0] if len(nz) == 1 and g[nz[0]] == 1 else None
    return ModularObject(g, G.rename("g"), idx)


def grouplike_object(H: Bialgebra, g: Sequence, name=None) -> Comodule:
    return grouplike_comodule(H.base, g, "right", name)


# ------------------------------------------------------------ Radford


def _double_dual(H: HopfAlgebra, X: Comodule, times: int = 2) -> Comodule:
    D = X
    for _ in range(times):
        D = dual_object(H, D, "left")
    return D


@dataclass
class RadfordReport:
    witnesses: list             # NaturalIsoWitness for X^∨∨∨∨ ≅ g^∨ X g
    hull_cover: list            # (simple index, iso map) for E(S) ≅ P(g S^∨∨)
    modular: ModularObject


def radford_check(H: HopfAlgebra, max_dim: int | None = None, objects: Sequence[Comodule] | None = None) -> RadfordReport:
    from .natural import natural_iso

    g = modular_object(H)
    G = g.comodule
    Gv = dual_object(H, G, "left")
    objs = list(objects) if objects is not None else indecomposables(H.base, max_dim)
    lhs = [_double_dual(H, X, 4) for X in objs]
    rhs = [tensor_comodule(H, tensor_comodule(H, Gv, X), G) for X in objs]
    # both functors act on a morphism f by the matrix of f itself
    w = natural_iso(objs, lambda i: lhs[i], lambda i: rhs[i], lambda f: f, lambda f: f)
    if w is None:
        raise IsoNotFound("no natural isomorphism X^∨∨∨∨ -> g^∨ X g")
    hc = []
    st = structure(H.base)
    for k, S in enumerate(st.simples):
        E, _ = injective_hull(S)
        T = tensor_comodule(H, G, _double_dual(H, S, 2))
        P, _ = projective_cover(T)
        iso = find_isomorphism(E, P)
        if iso is None:
            raise IsoNotFound(f"E(S{k}) is not isomorphic to P(g S{k}^∨∨)")
        hc.append((k, iso))
    return RadfordReport([w], hc, g)
