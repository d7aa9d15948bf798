"""Frobenius-type classification of finite-dimensional coalgebras.

Each flag is decided twice, once through bilinear pairings on C and once
through the Nakayama functors, and the two answers must agree.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .coalg import Coalgebra
from .comod import (
    Comodule,
    ComoduleMap,
    find_isomorphism,
    hom_comodule,
    indecomposables,
    structure,
    top_multiplicities,
)
from .errors import RouteDisagreement
from .linalg import Matrix, find_invertible_combination, kernel_basis, kronecker
from .nakayama import nakayama_left, nakayama_left_map, nakayama_right, nakayama_right_map, unit_map
from .natural import NaturalIsoWitness, generator_morphisms, natural_iso

__all__ = [
    "BalancedPairing",
    "NakayamaAutomorphism",
    "ClassificationReport",
    "balanced_forms",
    "frobenius_pairing",
    "nakayama_automorphism",
    "twisted_comodule",
    "twist_formula_check",
    "nakayama_permutation",
    "coinner_check",
    "classify",
]


@dataclass
class BalancedPairing:
    beta: Matrix          # beta[i][j] = beta(c_i, c_j)
    nondegenerate: bool
    symmetric: bool

    def is_balanced(self, C: Coalgebra) -> bool:
        B = self.beta
        return all(R.T @ B == B @ L for R, L in zip(C.right_harpoon_basis, C.left_harpoon_basis))


@dataclass
class NakayamaAutomorphism:
    nu: Matrix

    def is_coalgebra_automorphism(self, C: Coalgebra) -> bool:
        nu = self.nu
        if not nu.is_invertible():
            return False
        eps = Matrix.row_vector(C.field, C.eps)
        return kronecker(nu, nu) @ C.delta == C.delta @ nu and eps @ nu == eps

    def order(self, limit: int = 1000):
        return self.nu.order(limit)


@dataclass
class ClassificationReport:
    cosemisimple: bool
    quasiFrobenius: bool
    coFrobenius: bool
    symmetric: bool
    simples: list
    nakayamaPermutation: list | None = None
    witnesses: dict = field(default_factory=dict)
    routes: dict = field(default_factory=dict)

    def implications_hold(self) -> bool:
        return ((not self.symmetric or self.coFrobenius)
                and (not self.coFrobenius or self.quasiFrobenius)
                and (not self.cosemisimple or self.symmetric))


# ------------------------------------------------------------------ pairings


def balanced_forms(C: Coalgebra, symmetric: bool = False) -> list[Matrix]:
    """Basis of the balanced bilinear forms beta(c <- f, d) = beta(c, f -> d)."""
    n = C.dim
    F = C.field
    p = F.characteristic
    eqs = []
    # unknown B[i][j] at i*n + j;  (R^T B - B L)[i][j] = 0
    for R, L in zip(C.right_harpoon_basis, C.left_harpoon_basis):
        Rc = R.T.rows          # Rc[i] = {k: R[k][i]}
        Lc = L.T.rows          # Lc[j] = {k: L[k][j]}
        for i in range(n):
            for j in range(n):
                d: dict = {}
                for k, v in Rc[i].items():
                    d[k * n + j] = d.get(k * n + j, 0) + v
                for k, v in Lc[j].items():
                    d[i * n + k] = d.get(i * n + k, 0) - v
                d = {key: (x % p if p else x) for key, x in d.items()}
                d = {key: x for key, x in d.items() if x}
                if d:
                    eqs.append(d)
    if symmetric:
        for i in range(n):
            for j in range(i + 1, n):
                eqs.append({i * n + j: F.one, j * n + i: F.neg(F.one)})
    K = kernel_basis(Matrix(F, len(eqs), n * n, eqs))
    return [Matrix.unflatten(F, n, n, r) for r in K.rows]


def frobenius_pairing(C: Coalgebra, symmetric: bool = False, seed: int = 0) -> BalancedPairing | None:
    """A nondegenerate balanced pairing, or None when certified absent."""
    forms = balanced_forms(C, symmetric)
    B = _small_combination(C, forms)
    if B is None:
        B = find_invertible_combination(C.field, forms, random.Random(seed), tries=64)
    if B is None:
        return None
    return BalancedPairing(B, True, B == B.T)


def _small_combination(C: Coalgebra, forms: list, limit: int = 512) -> Matrix | None:
    """Invertible 0/1 combination of the basis forms, fewest terms first;
    keeps the chosen pairing (and so its Nakayama map) simple."""
    k = len(forms)
    if not k or 2 ** k > limit:
        return None
    for size in range(1, k + 1):
        for idx in itertools.combinations(range(k), size):
            B = forms[idx[0]]
            for i in idx[1:]:
                B = B + forms[i]
            if B.is_invertible():
                return B
    return None


def nakayama_automorphism(C: Coalgebra, pairing: BalancedPairing) -> NakayamaAutomorphism:
    """nu with beta(y, x) = beta(nu(x), y), i.e. nu = B^{-T} B."""
    B = pairing.beta
    nu = B.T.inverse() @ B
    out = NakayamaAutomorphism(nu)
    if not out.is_coalgebra_automorphism(C):
        raise ArithmeticError("Nakayama map is not a coalgebra automorphism")
    return out


def twisted_comodule(M: Comodule, nu: Matrix) -> Comodule:
    """M^(nu): coaction (id (x) nu) rho, so f acts as f o nu."""
    F = M.field
    n = M.coalgebra.dim
    act = []
    for b in range(n):
        A = Matrix.zeros(F, M.dim, M.dim)
        for a, v in nu.rows[b].items():
            A = A + M.act[a].scale(v)
        act.append(A)
    name = f"{M.name}^nu" if M.name else None
    return Comodule(M.coalgebra, M.side, act, name)


def _twist_component(C: Coalgebra, B: Matrix, nr, M: Comodule) -> Matrix:
    """c_i (x) v_p -> beta(c_i, -) -> v_p, restricted to the quotient basis."""
    F = C.field
    n, m = C.dim, M.dim
    cols = []
    for j in nr.relations.complement_indices():
        i, p = divmod(j, m)
        col = Matrix.zeros(F, m, 1)
        for k, v in B.rows[i].items():
            col = col + M.act[k].select_cols([p]).scale(v)
        cols.append(col.column(0))
    return Matrix.from_columns(F, m, cols) if cols else Matrix.zeros(F, m, 0)


def _twist_well_defined(C: Coalgebra, B: Matrix, nr, M: Comodule) -> bool:
    """The map on C (x) M kills every defining relation of the quotient."""
    F = C.field
    m = M.dim
    p = F.characteristic
    full = []
    for j in range(C.dim * m):
        i, q = divmod(j, m)
        v = [F.zero] * m
        for k, b in B.rows[i].items():
            for r, x in enumerate(M.act[k].column(q)):
                if x:
                    v[r] += b * x
        full.append([x % p if p else x for x in v])
    Theta = Matrix.from_columns(F, m, full)
    return nr.relations.dim == 0 or (Theta @ nr.relations.as_matrix()).is_zero()


def twist_formula_check(C: Coalgebra, pairing: BalancedPairing, nu: NakayamaAutomorphism | None = None,
                        objects=None, max_dim: int | None = None) -> NaturalIsoWitness | None:
    """nu^r(M) ≅ M^(nu) through c (x) m -> beta(c, -) -> m.

    Returns the witness over the objects (default: indecomposables up to
    dim C) or None if some component fails.
    """
    nu = nu or nakayama_automorphism(C, pairing)
    objs = list(objects) if objects is not None else indecomposables(C, max_dim)
    B = pairing.beta
    images = [nakayama_right(C, M) for M in objs]
    comps = []
    for M, nr in zip(objs, images):
        T = twisted_comodule(M, nu.nu)
        if not _twist_well_defined(C, B, nr, M):
            return None
        f = ComoduleMap(nr.output, T, _twist_component(C, B, nr, M))
        if not (f.is_iso() and f.is_morphism()):
            return None
        comps.append(f)
    w = NaturalIsoWitness(objs, comps, generator_morphisms(objs))
    ok = w.check(lambda f, i, j: nakayama_right_map(images[i], images[j], f), lambda f, i, j: f)
    return w if ok else None


def coinner_check(C: Coalgebra, nu: Matrix, seed: int = 0):
    """An invertible alpha in C* with alpha -> c = nu(c) <- alpha, or None."""
    F = C.field
    n = C.dim
    # column i of (L_a - R_a nu) for each a, stacked: unknown x_a
    cols = []
    for L, R in zip(C.left_harpoon_basis, C.right_harpoon_basis):
        cols.append((L - R @ nu).flatten())
    A = Matrix.from_columns(F, n * n, cols)
    K = kernel_basis(A)
    if not K.dim:
        return None
    A_alg = C.algebra
    mats = [A_alg.left_matrix(list(v)) for v in K.basis()]
    X = find_invertible_combination(F, mats, random.Random(seed))
    if X is None:
        return None
    # recover alpha: the left-multiplication matrix applied to the unit
    return (X @ Matrix.column_vector(F, list(C.eps))).column(0)


# ------------------------------------------------------------------ permutations


def nakayama_permutation(C: Coalgebra) -> tuple[list, list]:
    """pi with P(S_i) ≅ E(S_pi(i)); returns (pi, witnesses)."""
    st = structure(C)
    pi, wit = [], []
    for P in st.projectives:
        for j, E in enumerate(st.injectives):
            f = find_isomorphism(P, E)
            if f is not None:
                pi.append(j)
                wit.append(f)
                break
        else:
            raise ValueError("projective cover is not injective: coalgebra not quasi-Frobenius")
    if sorted(pi) != list(range(len(pi))):
        raise ValueError("matching is not a permutation")
    return pi, wit


def _projectives_are_injectives(C: Coalgebra) -> tuple[bool, list | None]:
    st = structure(C)
    pi = []
    for P in st.projectives:
        j = next((j for j, E in enumerate(st.injectives) if find_isomorphism(P, E) is not None), None)
        if j is None:
            return False, None
        pi.append(j)
    if sorted(pi) != list(range(len(pi))):
        return False, None
    return True, pi


def unit_natural_iso(C: Coalgebra, objects) -> NaturalIsoWitness | None:
    """nu^l nu^r ≅ id over the objects, tried first through the adjunction
    unit, then through the general search."""
    objs = list(objects)
    units = [unit_map(C, M) for M in objs]
    comps = [ComoduleMap(M, u[2].output, u[0]) for M, u in zip(objs, units)]
    gens = generator_morphisms(objs)

    def G_map(f, i, j):
        nr_i, nl_i = units[i][1], units[i][2]
        nr_j, nl_j = units[j][1], units[j][2]
        return nakayama_left_map(nl_i, nl_j, nakayama_right_map(nr_i, nr_j, f))

    if all(c.is_iso() for c in comps):
        w = NaturalIsoWitness(objs, comps, gens)
        if w.check(lambda f, i, j: f, G_map):
            return w
    return natural_iso(objs, lambda i: objs[i], lambda i: units[i][2].output,
                       lambda f, i, j: f, G_map, generators=gens)


# ------------------------------------------------------------------ classify


def classify(C: Coalgebra, max_dim: int | None = None, seed: int = 0) -> ClassificationReport:
    st = structure(C)
    routes: dict = {}
    wit: dict = {}
    cosemisimple = st.radical.dim == 0

    # quasi-Frobenius
    qf_a, pi = _projectives_are_injectives(C)
    objs = indecomposables(C, max_dim)
    unit_w = unit_natural_iso(C, objs)
    qf_b = unit_w is not None
    routes["quasiFrobenius"] = (qf_a, qf_b)
    if qf_a != qf_b:
        raise RouteDisagreement("quasiFrobenius", qf_a, qf_b)
    if unit_w is not None:
        wit["unit"] = unit_w

    # co-Frobenius
    pairing = frobenius_pairing(C, seed=seed)
    cof_a = pairing is not None
    dims_ok = True
    bad = None
    if qf_a:
        for k, S in enumerate(st.simples):
            d = nakayama_left(C, S).output.dim
            if d != S.dim:
                dims_ok, bad = False, k
                break
    cof_b = qf_a and dims_ok
    routes["coFrobenius"] = (cof_a, cof_b)
    if cof_a != cof_b:
        raise RouteDisagreement("coFrobenius", cof_a, cof_b)
    if pairing is not None:
        wit["pairing"] = pairing
    if bad is not None:
        wit["dimension_counterexample"] = bad

    # symmetric
    sym_pairing = frobenius_pairing(C, symmetric=True, seed=seed) if cof_a else None
    sym_a = sym_pairing is not None
    alpha = None
    if pairing is not None:
        nu = nakayama_automorphism(C, pairing)
        wit["nakayama_automorphism"] = nu
        alpha = coinner_check(C, nu.nu, seed)
    sym_b = alpha is not None
    routes["symmetric"] = (sym_a, sym_b)
    if sym_a != sym_b:
        raise RouteDisagreement("symmetric", sym_a, sym_b)
    if sym_pairing is not None:
        wit["symmetric_pairing"] = sym_pairing
    if alpha is not None:
        wit["coinner"] = alpha

    return ClassificationReport(
        cosemisimple=cosemisimple,
        quasiFrobenius=qf_a,
        coFrobenius=cof_a,
        symmetric=sym_a,
        simples=[S.dim for S in st.simples],
        nakayamaPermutation=pi,
        witnesses=wit,
        routes=routes,
    )
