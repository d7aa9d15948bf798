"""Finite presentations of natural isomorphisms between functors on a list
of comodules."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Sequence

from .comod import Comodule, ComoduleMap, hom_comodule, hom_space
from .errors import Inconclusive
from .linalg import FieldSpec, Matrix, generic_determinant_vanishes, kernel_basis

__all__ = ["NaturalIsoWitness", "natural_iso", "generator_morphisms"]


@dataclass
class NaturalIsoWitness:
    objects: list                 # the comodules X_i
    components: list              # ComoduleMap F(X_i) -> G(X_i), invertible
    generators: list              # (i, j, matrix of X_i -> X_j)

    def check(self, F_map: Callable, G_map: Callable) -> bool:
        """Re-verify invertibility, morphism property and every square."""
        comps = self.components
        if not all(c.is_iso() and c.is_morphism() for c in comps):
            return False
        for i, j, f in self.generators:
            if G_map(f, i, j) @ comps[i].matrix != comps[j].matrix @ F_map(f, i, j):
                return False
        return True


def generator_morphisms(objects: Sequence[Comodule]) -> list:
    """Basis of Hom(X_i, X_j) for every ordered pair."""
    gens = []
    for i, X in enumerate(objects):
        for j, Y in enumerate(objects):
            for f in hom_comodule(X, Y):
                gens.append((i, j, f.matrix))
    return gens


def _wrap(fn: Callable) -> Callable:
    """Accept map callbacks with signature f or (f, i, j)."""
    try:
        import inspect

        n = len(inspect.signature(fn).parameters)
    except (TypeError, ValueError):
        n = 3
    return fn if n >= 3 else (lambda f, i, j: fn(f))


def natural_iso(
    objects: Sequence[Comodule],
    F_obj: Callable[[int], Comodule],
    G_obj: Callable[[int], Comodule],
    F_map: Callable,
    G_map: Callable,
    generators: Sequence | None = None,
    seed: int = 0,
    tries: int = 200,
    exhaustive_limit: int = 20000,
) -> NaturalIsoWitness | None:
    """Search for a natural isomorphism F => G on the given objects.

    The naturality squares over the generators are linear in the components,
    so the natural transformations form the kernel of one linear system.  A
    componentwise invertible element of that kernel is then searched:
    exhaustively over a small prime field (None is then certified), by
    random combinations otherwise (Inconclusive when nothing turns up).
    """
    F_map, G_map = _wrap(F_map), _wrap(G_map)
    objs = list(objects)
    if not objs:
        return NaturalIsoWitness([], [], [])
    FX = [F_obj(i) for i in range(len(objs))]
    GX = [G_obj(i) for i in range(len(objs))]
    if any(a.dim != b.dim for a, b in zip(FX, GX)):
        return None
    field: FieldSpec = objs[0].field
    p = field.characteristic
    gens = list(generators) if generators is not None else generator_morphisms(objs)

    # unknowns: coefficients of each component in a basis of Hom(F X_i, G X_i)
    bases = [[f.matrix for f in hom_comodule(FX[i], GX[i])] for i in range(len(objs))]
    if any(not b and FX[i].dim for i, b in enumerate(bases)):
        return None
    offs = [0]
    for b in bases:
        offs.append(offs[-1] + len(b))
    nvar = offs[-1]
    eqs = []
    for i, j, f in gens:
        Ff = F_map(f, i, j)
        Gf = G_map(f, i, j)
        # G(f) eta_i - eta_j F(f) = 0
        terms: dict = {}
        for t, B in enumerate(bases[i]):
            M = Gf @ B
            for r, row in enumerate(M.rows):
                for c, v in row.items():
                    terms.setdefault((r, c), {})[offs[i] + t] = v
        for t, B in enumerate(bases[j]):
            M = B @ Ff
            for r, row in enumerate(M.rows):
                for c, v in row.items():
                    d = terms.setdefault((r, c), {})
                    k = offs[j] + t
                    d[k] = d.get(k, 0) - v
        for d in terms.values():
            d = {k: (v % p if p else v) for k, v in d.items()}
            d = {k: v for k, v in d.items() if v}
            if d:
                eqs.append(d)
    K = kernel_basis(Matrix(field, len(eqs), nvar, eqs))
    sols = K.basis()
    if not sols and nvar:
        return None

    def components(vec):
        out = []
        for i in range(len(objs)):
            A = Matrix.zeros(field, GX[i].dim, FX[i].dim)
            for t, B in enumerate(bases[i]):
                c = vec[offs[i] + t]
                if c:
                    A = A + B.scale(c)
            out.append(A)
        return out

    def ok(comps):
        return all(A.is_invertible() for A in comps)

    def witness(comps):
        maps = [ComoduleMap(FX[i], GX[i], A) for i, A in enumerate(comps)]
        return NaturalIsoWitness(objs, maps, gens)

    for v in sols:
        comps = components(v)
        if ok(comps):
            return witness(comps)
    k = len(sols)
    if p and p ** k <= exhaustive_limit:
        for coeffs in itertools.product(range(p), repeat=k):
            if not any(coeffs):
                continue
            vec = [sum(c * s[t] for c, s in zip(coeffs, sols)) % p for t in range(nvar)]
            comps = components(vec)
            if ok(comps):
                return witness(comps)
        return None
    rng = random.Random(seed)

    def sample(bound):
        coeffs = [field.random(rng, bound) for _ in range(k)]
        vec = [sum(c * s[t] for c, s in zip(coeffs, sols)) for t in range(nvar)]
        if p:
            vec = [x % p for x in vec]
        return components(vec)

    for _ in range(tries):
        comps = sample(100)
        if ok(comps):
            return witness(comps)
    # a component whose generic determinant vanishes certifies absence
    for i in range(len(objs)):
        per = [components(v)[i] for v in sols]
        if FX[i].dim and generic_determinant_vanishes(field, per):
            return None
    if not p:
        while True:
            comps = sample(10 ** 6)
            if ok(comps):
                return witness(comps)
    raise Inconclusive(f"no invertible natural transformation found in {tries} random trials (solution space dim {k})")
