"""Coquasi-bialgebras: axioms, preantipodes, coquasi-antipodes, dual objects
of left comodules via coinvariants, and the cointegral-based criteria.

Multilinear forms on H^(x)k are dicts {index tuple: value} (absent = 0);
``omega`` is also accepted as a flat list on the lexicographic basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .coalg import Coalgebra
from .comod import Comodule, find_isomorphism, subcomodule, structure
from .errors import NoPreantipode, NoSolution, NotConvolutionInvertible, ValidationError
from .hopf import Bialgebra, _mult_from_triples, _same, cointegral_space
from .linalg import Matrix, Subspace, _clean, kernel_basis, kronecker, solve_affine

__all__ = [
    "CoquasiBialgebra",
    "Preantipode",
    "AntipodeCheck",
    "validate_coquasi",
    "preantipode_solve",
    "coquasi_antipode_check",
    "right_dual_coquasi",
    "coquasi_classification",
    "trivial_omega",
    "hopf_left_comodule_dual",
    "CoinvariantDual",
    "CoquasiReport",
]


class CoquasiBialgebra(Bialgebra):
    def __init__(self, base: Coalgebra, mult: Matrix, unit: Sequence, omega: dict, omega_inv: dict):
        super().__init__(base, mult, unit)
        self.omega = omega
        self.omega_inv = omega_inv

    def __repr__(self):
        return f"CoquasiBialgebra(dim={self.dim}, field={self.field})"

    def omega_vector(self, inverse: bool = False) -> list:
        n = self.dim
        w = self.omega_inv if inverse else self.omega
        return [w.get(t, self.field.zero) for t in itertools.product(range(n), repeat=3)]

    @cached_property
    def is_trivial(self) -> bool:
        return _clean(dict(self.omega), self.field.p) == _clean(_eps_form(self.base, 3), self.field.p)


@dataclass
class Preantipode:
    S: Matrix
    solution_dim: int       # dimension of the affine solution space


@dataclass
class AntipodeCheck:
    ok: bool
    equation: str | None = None
    witness: int | None = None

    def __bool__(self):
        return self.ok


# ------------------------------------------------------------------ forms


def _eps_form(C: Coalgebra, k: int) -> dict:
    out = {}
    nz = [(i, e) for i, e in enumerate(C.eps) if e]
    for combo in itertools.product(nz, repeat=k):
        v = C.field.one
        for _, e in combo:
            v = v * e
        out[tuple(i for i, _ in combo)] = v
    return out


def _split_tensor(C: Coalgebra, t: tuple):
    """Delta on H^(x)k: yields (left tuple, right tuple, coefficient)."""
    for combo in itertools.product(*(C.dterms[i] for i in t)):
        c = C.field.one
        for _, _, v in combo:
            c = c * v
        yield tuple(j for j, _, _ in combo), tuple(l for _, l, _ in combo), c


def _convolve(C: Coalgebra, phi: dict, psi: dict, k: int) -> dict:
    p = C.field.characteristic
    out = {}
    for t in itertools.product(range(C.dim), repeat=k):
        s = 0
        for l, r, c in _split_tensor(C, t):
            a = phi.get(l)
            if a:
                b = psi.get(r)
                if b:
                    s += a * b * c
        if p:
            s %= p
        if s:
            out[t] = s
    return out


def _compose_mult(H: Bialgebra, form: dict, k: int, pos: int) -> dict:
    """form o (id^pos (x) m (x) id^(k-1-pos)), a form on k+1 factors."""
    p = H.field.characteristic
    out: dict = {}
    for (a, b), t in H.mterms.items():
        for c, v in t.items():
            for key, w in form.items():
                if key[pos] != c:
                    continue
                new = key[:pos] + (a, b) + key[pos + 1:]
                out[new] = out.get(new, 0) + v * w
    return _clean(out, p)


def _tensor_forms(phi: dict, psi: dict, p: int) -> dict:
    out = {}
    for a, x in phi.items():
        for b, y in psi.items():
            v = x * y
            out[a + b] = v % p if p else v
    return _clean(out, p)


def _first_difference(lhs: dict, rhs: dict, p: int):
    keys = sorted(set(lhs) | set(rhs))
    for k in keys:
        d = lhs.get(k, 0) - rhs.get(k, 0)
        if (d % p if p else d):
            return k
    return None


def _omega_dict(F, n: int, omega) -> dict:
    if isinstance(omega, dict):
        raw = {tuple(k): F(v) for k, v in omega.items()}
    else:
        omega = list(omega)
        if len(omega) != n ** 3:
            raise ValidationError("omega-shape", {"length": len(omega)}, f"omega needs {n ** 3} entries")
        raw = {t: F(v) for t, v in zip(itertools.product(range(n), repeat=3), omega)}
    return _clean(raw, F.p)


def _invert_form(C: Coalgebra, omega: dict, k: int = 3) -> dict:
    """Two-sided convolution inverse of a k-linear form, by linear solve."""
    F = C.field
    n = C.dim
    p = F.characteristic
    idx = {t: i for i, t in enumerate(itertools.product(range(n), repeat=k))}
    rows = []
    rhs = []
    eps = _eps_form(C, k)
    for t in idx:
        row: dict = {}
        for l, r, c in _split_tensor(C, t):
            a = omega.get(l)
            if a:
                row[idx[r]] = row.get(idx[r], 0) + a * c
        rows.append(_clean(row, p))
        rhs.append(eps.get(t, F.zero))
    try:
        sol = solve_affine(Matrix(F, len(rows), len(idx), rows), rhs)
    except NoSolution as exc:
        raise NotConvolutionInvertible("omega has no right convolution inverse") from exc
    inv = _clean({t: sol.particular[i] for t, i in idx.items()}, p)
    if _convolve(C, inv, omega, k) != _clean(eps, p):
        raise NotConvolutionInvertible("omega has no two-sided convolution inverse")
    return inv


def trivial_omega(C: Coalgebra) -> list:
    e = _eps_form(C, 3)
    return [e.get(t, C.field.zero) for t in itertools.product(range(C.dim), repeat=3)]


# ------------------------------------------------------------------ validation


def _vec_eq(F, a: dict, b: dict) -> bool:
    return _clean(dict(a), F.p) == _clean(dict(b), F.p)


def validate_coquasi(base: Coalgebra, mult, unit: Sequence, omega) -> CoquasiBialgebra:
    """Check every coquasi-bialgebra axiom, raising on the first failure."""
    F = base.field
    n = base.dim
    p = F.characteristic
    M = mult if isinstance(mult, Matrix) else _mult_from_triples(F, n, mult)
    H = Bialgebra(base, M, unit)
    one = H.unit
    C = base

    # unit laws
    for a in range(n):
        ea = C.basis_vector(a)
        if H.mul(one, ea) != list(ea) or H.mul(ea, one) != list(ea):
            raise ValidationError("unit", {"index": a, "basis": C.names[a]}, "1 is not a two-sided unit")
    # m and u are coalgebra maps
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
                    for c1, w1 in H.mul_basis(j1, j2).items():
                        for c2, w2 in H.mul_basis(k1, k2).items():
                            rhs[(c1, c2)] = rhs.get((c1, c2), 0) + v1 * v2 * w1 * w2
            if not _vec_eq(F, lhs, rhs):
                raise ValidationError("comultiplicativity", {"pair": [a, b], "basis": [C.names[a], C.names[b]]},
                                      "multiplication is not a coalgebra map")
            e = sum((C.eps[c] * v for c, v in prod.items()), F.zero)
            if not _same(F, e, C.eps[a] * C.eps[b]):
                raise ValidationError("counit-multiplicativity", {"pair": [a, b]}, "eps(ab) != eps(a) eps(b)")
    dunit: dict = {}
    for i, u in enumerate(one):
        if u:
            for j, k, v in C.dterms[i]:
                dunit[(j, k)] = dunit.get((j, k), 0) + u * v
    want = {(j, k): one[j] * one[k] for j in range(n) for k in range(n) if one[j] and one[k]}
    if not _vec_eq(F, dunit, want) or sum((e * u for e, u in zip(C.eps, one)), F.zero) != F.one:
        raise ValidationError("unit-grouplike", {}, "1 is not grouplike")

    om = _omega_dict(F, n, omega)
    om_inv = _invert_form(C, om, 3)

    # normalisation: omega(a, 1, c) = eps(a) eps(c)
    for a in range(n):
        for c in range(n):
            v = sum((u * om.get((a, b, c), 0) for b, u in enumerate(one) if u), F.zero)
            if not _same(F, v, C.eps[a] * C.eps[c]):
                raise ValidationError("normalization", {"triple": [a, "1", c]}, "omega(-, 1, -) != eps (x) eps")

    # 3-cocycle on H^(x)4
    lhs = _convolve(C, _compose_mult(H, om, 3, 2), _compose_mult(H, om, 3, 0), 4)
    e1 = _eps_form(C, 1)
    left = _tensor_forms(e1, om, p)
    mid = _compose_mult(H, om, 3, 1)
    right = _tensor_forms(om, e1, p)
    rhs = _convolve(C, _convolve(C, left, mid, 4), right, 4)
    bad = _first_difference(lhs, rhs, p)
    if bad is not None:
        raise ValidationError("cocycle", {"tuple": list(bad), "basis": [C.names[i] for i in bad]},
                              "omega fails the 3-cocycle condition")

    # quasi-associativity: m(id (x) m) * omega = omega * m(m (x) id), H-valued
    def assoc(t, left_first):
        a, b, c = t
        out: dict = {}
        if left_first:
            for x, v in H.mul_basis(a, b).items():
                for y, w in H.mul_basis(x, c).items():
                    out[y] = out.get(y, 0) + v * w
        else:
            for x, v in H.mul_basis(b, c).items():
                for y, w in H.mul_basis(a, x).items():
                    out[y] = out.get(y, 0) + v * w
        return out

    for t in itertools.product(range(n), repeat=3):
        lhs_v: dict = {}
        rhs_v: dict = {}
        for l, r, c in _split_tensor(C, t):
            wr = om.get(r)
            if wr:
                for y, v in assoc(l, False).items():
                    lhs_v[y] = lhs_v.get(y, 0) + v * wr * c
            wl = om.get(l)
            if wl:
                for y, v in assoc(r, True).items():
                    rhs_v[y] = rhs_v.get(y, 0) + v * wl * c
        if not _vec_eq(F, lhs_v, rhs_v):
            raise ValidationError("quasi-associativity", {"tuple": list(t), "basis": [C.names[i] for i in t]},
                                  "m(id (x) m) * omega != omega * m(m (x) id)")
    return CoquasiBialgebra(base, M, one, om, om_inv)


# ------------------------------------------------------------------ preantipode


def preantipode_solve(H: CoquasiBialgebra) -> Preantipode | None:
    """Solve the three (linear) preantipode equations for S."""
    C = H.base
    F = H.field
    n = H.dim
    p = F.characteristic
    one = H.unit
    var = lambda k, j: k * n + j   # S[k][j]: coefficient of e_k in S(e_j)
    rows: list = []
    rhs: list = []

    def push(eqs: dict, target: dict):
        for key in set(eqs) | set(target):
            rows.append(_clean(eqs.get(key, {}), p))
            rhs.append(target.get(key, F.zero))

    for i in range(n):
        # S(h_1)_1 h_2 (x) S(h_1)_2 = 1 (x) S(h)
        eqs: dict = {}
        for j, l, v in C.dterms[i]:
            for k in range(n):
                for a, b, w in C.dterms[k]:
                    for c, x in H.mul_basis(a, l).items():
                        d = eqs.setdefault((c, b), {})
                        d[var(k, j)] = d.get(var(k, j), 0) + v * w * x
        for u_idx, u in enumerate(one):
            if u:
                for k in range(n):
                    d = eqs.setdefault((u_idx, k), {})
                    d[var(k, i)] = d.get(var(k, i), 0) - u
        push(eqs, {})
        # S(h_2)_1 (x) h_1 S(h_2)_2 = S(h) (x) 1
        eqs = {}
        for j, l, v in C.dterms[i]:
            for k in range(n):
                for a, b, w in C.dterms[k]:
                    for c, x in H.mul_basis(j, b).items():
                        d = eqs.setdefault((a, c), {})
                        d[var(k, l)] = d.get(var(k, l), 0) + v * w * x
        for u_idx, u in enumerate(one):
            if u:
                for k in range(n):
                    d = eqs.setdefault((k, u_idx), {})
                    d[var(k, i)] = d.get(var(k, i), 0) - u
        push(eqs, {})
        # omega(h_1 (x) S(h_2) (x) h_3) = eps(h)
        row: dict = {}
        for (j, l, r), v in C.iterated_delta(i, 3).items():
            for k in range(n):
                w = H.omega.get((j, k, r))
                if w:
                    row[var(k, l)] = row.get(var(k, l), 0) + v * w
        rows.append(_clean(row, p))
        rhs.append(C.eps[i])
    A = Matrix(F, len(rows), n * n, rows)
    try:
        sol = solve_affine(A, rhs)
    except NoSolution:
        return None
    S = Matrix.unflatten(F, n, n, sol.particular)
    return Preantipode(S, sol.kernel.dim)


# ------------------------------------------------------------------ coquasi-antipode


def coquasi_antipode_check(H: CoquasiBialgebra, s: Matrix, alpha: Sequence, beta: Sequence) -> AntipodeCheck:
    """Check the four coquasi-antipode equations and that s is an
    anti-coalgebra map; reports the first failure with its basis index."""
    C = H.base
    F = H.field
    p = F.characteristic
    n = H.dim
    alpha = [F(x) for x in alpha]
    beta = [F(x) for x in beta]
    one = {i: u for i, u in enumerate(H.unit) if u}
    scol = [s.column(i) for i in range(n)]

    def sdict(i):
        return {k: v for k, v in enumerate(scol[i]) if v}

    def mul(x: dict, y: dict) -> dict:
        out: dict = {}
        for a, v in x.items():
            for b, w in y.items():
                for c, z in H.mul_basis(a, b).items():
                    out[c] = out.get(c, 0) + v * w * z
        return _clean(out, p)

    # anti-coalgebra map: Delta s = (s (x) s) tau Delta, eps s = eps
    sd = Matrix.from_columns(F, n, scol)
    swap_delta = Matrix(F, n * n, n, [dict() for _ in range(n * n)])
    rows = [dict() for _ in range(n * n)]
    for i in range(n):
        for j, l, v in C.dterms[i]:
            rows[l * n + j][i] = rows[l * n + j].get(i, 0) + v
    swap_delta = Matrix(F, n * n, n, [_clean(r, p) for r in rows])
    for i in range(n):
        lhs = (C.delta @ sd).column(i)
        rhs = (kronecker(sd, sd) @ swap_delta).column(i)
        if lhs != rhs:
            return AntipodeCheck(False, "anti-coalgebra", i)
        e = sum((C.eps[k] * v for k, v in sdict(i).items()), F.zero)
        if not _same(F, e, C.eps[i]):
            return AntipodeCheck(False, "anti-coalgebra", i)

    for i in range(n):
        # h_1 beta(h_2) s(h_3) = beta(h) 1
        acc: dict = {}
        for (a, b, c), v in C.iterated_delta(i, 3).items():
            if beta[b]:
                for k, w in mul({a: F.one}, sdict(c)).items():
                    acc[k] = acc.get(k, 0) + v * beta[b] * w
        if not _vec_eq(F, acc, {k: beta[i] * u for k, u in one.items()}):
            return AntipodeCheck(False, "beta", i)
        # s(h_1) alpha(h_2) h_3 = alpha(h) 1
        acc = {}
        for (a, b, c), v in C.iterated_delta(i, 3).items():
            if alpha[b]:
                for k, w in mul(sdict(a), {c: F.one}).items():
                    acc[k] = acc.get(k, 0) + v * alpha[b] * w
        if not _vec_eq(F, acc, {k: alpha[i] * u for k, u in one.items()}):
            return AntipodeCheck(False, "alpha", i)
    d5 = {i: C.iterated_delta(i, 5) for i in range(n)}
    for i in range(n):
        # omega^{-1}(s(h_1) (x) alpha(h_2) h_3 beta(h_4) (x) s(h_5)) = eps(h)
        tot = F.zero
        for (a, b, c, d, e), v in d5[i].items():
            if alpha[b] and beta[d]:
                for x, wx in sdict(a).items():
                    for z, wz in sdict(e).items():
                        tot += v * alpha[b] * beta[d] * wx * wz * H.omega_inv.get((x, c, z), 0)
        if not _same(F, tot, C.eps[i]):
            return AntipodeCheck(False, "omega-inverse", i)
        # omega(h_1 (x) beta(h_2) s(h_3) alpha(h_4) (x) h_5) = eps(h)
        tot = F.zero
        for (a, b, c, d, e), v in d5[i].items():
            if alpha[d] and beta[b]:
                for y, wy in sdict(c).items():
                    tot += v * alpha[d] * beta[b] * wy * H.omega.get((a, y, e), 0)
        if not _same(F, tot, C.eps[i]):
            return AntipodeCheck(False, "omega", i)
    return AntipodeCheck(True)


# ------------------------------------------------------------------ duals


@dataclass
class CoinvariantDual:
    comodule: Comodule          # left comodule on the coinvariants
    coinvariants: Subspace      # inside X* (x) H, basis x^r (x) e_i at r*n + i


def right_dual_coquasi(H: CoquasiBialgebra, X: Comodule, check_preantipode: bool = True) -> CoinvariantDual:
    """(X* (x) H)^{co H} with the left coaction on the H factor.

    X* is the right comodule dual to the left comodule X, and X* (x) H carries
    the tensor product right coaction phi (x) h -> phi_0 (x) h_1 (x) phi_1 h_2.
    """
    if X.side != "left":
        raise ValueError("right duals are taken in the category of left comodules")
    if check_preantipode and preantipode_solve(H) is None:
        raise NoPreantipode("the coquasi-bialgebra has no preantipode")
    C = H.base
    F = H.field
    p = F.characteristic
    n, d = H.dim, X.dim
    # rho(x_p) = sum act[a][q][p] e_a (x) x_q, so the right coaction on X* is
    # x^r -> sum_{p, a} act[a][r][p] x^p (x) e_a
    dual_terms = [[] for _ in range(d)]
    for a, A in enumerate(X.act):
        for r, row in enumerate(A.rows):
            for pp, v in row.items():
                dual_terms[r].append((pp, a, v))
    one = {i: u for i, u in enumerate(H.unit) if u}
    # equations: coefficient of x^p (x) e_j (x) e_c in rho(y) - y (x) 1
    eqs: dict = {}
    for r in range(d):
        for i in range(n):
            col = r * n + i
            for j, l, v in C.dterms[i]:
                for pp, a, w in dual_terms[r]:
                    for c, z in H.mul_basis(a, l).items():
                        key = (pp, j, c)
                        e = eqs.setdefault(key, {})
                        e[col] = e.get(col, 0) + v * w * z
            for c, u in one.items():
                e = eqs.setdefault((r, i, c), {})
                e[col] = e.get(col, 0) - u
    rows = [_clean(e, p) for e in eqs.values()]
    K = kernel_basis(Matrix(F, len(rows), d * n, rows))
    I = Matrix.identity(F, d)
    ambient = Comodule(C, "left", [kronecker(I, R) for R in C.right_harpoon_basis])
    D, _ = subcomodule(ambient, K, f"∨{X.name}" if X.name else None)
    return CoinvariantDual(D, K)


def hopf_left_comodule_dual(H, X: Comodule) -> Comodule:
    """X* with left coaction phi -> s(phi_1) (x) phi_0 (Hopf case)."""
    S = H.antipode
    act = [X.action(S.row(a)).T for a in range(H.dim)]
    return Comodule(X.coalgebra, "left", act, f"∨{X.name}" if X.name else None)


# ------------------------------------------------------------------ classification


@dataclass
class CoquasiReport:
    preantipode: Preantipode | None
    left_cointegrals: int
    right_cointegrals: int
    projective_exists: bool
    rational_part_nonzero: bool
    quasiFrobenius: bool
    dual_dims: list             # (dim X, dim of the double right dual) per simple
    dimension_criterion: bool
    qf_without_dimension_criterion: bool

    @property
    def items_consistent(self) -> bool:
        return (self.left_cointegrals > 0) == self.projective_exists == (self.right_cointegrals > 0)


def coquasi_classification(H: CoquasiBialgebra) -> CoquasiReport:
    from .classify import _projectives_are_injectives

    pre = preantipode_solve(H)
    if pre is None:
        raise NoPreantipode("the coquasi-bialgebra has no preantipode")
    C = H.base
    left = cointegral_space(H, "left").dim
    right = cointegral_space(H, "right").dim
    st = structure(C.cop())     # left comodules = right comodules over H^cop
    proj = len(st.projectives) > 0 and any(P.dim for P in st.projectives)
    qf, _ = _projectives_are_injectives(C)
    dims = []
    for S in st.simples:
        X = Comodule(C, "left", S.act, S.name)
        D1 = right_dual_coquasi(H, X, check_preantipode=False).comodule
        D2 = right_dual_coquasi(H, D1, check_preantipode=False).comodule
        dims.append((X.dim, D2.dim))
    crit = all(a == b for a, b in dims)
    return CoquasiReport(pre, left, right, proj, C.dim > 0, qf, dims, crit, qf and not crit)
