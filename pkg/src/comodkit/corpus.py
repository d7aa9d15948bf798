"""Deterministic builders for the example families."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any

from .coalg import Coalgebra, validate_coalgebra
from .errors import InvalidSpec
from .hopf import HopfAlgebra, validate_hopf
from .linalg import GF, QQ, FieldSpec

__all__ = [
    "CorpusSpec",
    "build",
    "build_matrix",
    "build_group",
    "build_function_hopf",
    "build_taft",
    "build_sweedler",
    "build_serial_qf",
    "build_cyclic_coquasi",
    "random_coalgebra",
    "parse_spec",
    "FAMILIES",
]

FAMILIES = ("matrix", "group", "function-hopf", "sweedler", "taft", "serial-qf", "cyclic-coquasi", "random")


@dataclass(frozen=True)
class CorpusSpec:
    family: str
    params: tuple = ()

    @classmethod
    def make(cls, family: str, **params) -> "CorpusSpec":
        return cls(family, tuple(sorted(params.items())))

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    def label(self) -> str:
        if not self.params:
            return self.family
        parts = []
        for k, v in self.params:
            if isinstance(v, (list, tuple)):
                v = "-".join(str(x) for x in v)
            parts.append(f"{k}={v}")
        return f"{self.family}:{','.join(parts)}"


def parse_spec(text: str) -> CorpusSpec:
    """``family[:key=value,...]``; list values use '-' (``dims=1-2``)."""
    family, _, rest = text.partition(":")
    family = family.strip()
    if family not in FAMILIES:
        raise InvalidSpec(f"unknown family {family!r}")
    params: dict[str, Any] = {}
    if rest:
        for item in rest.split(","):
            key, eq, val = item.partition("=")
            if not eq:
                raise InvalidSpec(f"malformed parameter {item!r}")
            key, val = key.strip(), val.strip()
            if key == "dims":
                params[key] = tuple(int(x) for x in val.split("-"))
            elif key == "group":
                params[key] = val
            else:
                try:
                    params[key] = int(val)
                except ValueError as exc:
                    raise InvalidSpec(f"parameter {key} must be an integer") from exc
    return CorpusSpec.make(family, **params)


def _field(p: int | None) -> FieldSpec:
    if not p:
        return QQ
    try:
        return GF(p)
    except ValueError as exc:
        raise InvalidSpec(str(exc)) from exc


# ------------------------------------------------------------ families


def build_matrix(n: int, field: FieldSpec = QQ) -> Coalgebra:
    """Matrix coalgebra M^c_n: Delta e_ij = sum_k e_ik (x) e_kj."""
    if n < 1:
        raise InvalidSpec("matrix size must be positive")
    idx = lambda i, j: i * n + j
    triples = [(idx(i, j), idx(i, k), idx(k, j), 1) for i in range(n) for j in range(n) for k in range(n)]
    eps = [1 if i == j else 0 for i in range(n) for j in range(n)]
    names = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    return validate_coalgebra(field, n * n, triples, eps, names)


def _hopf_from_group(field: FieldSpec, elems: list, op, inv, names) -> HopfAlgebra:
    pos = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    triples = [(i, i, i, 1) for i in range(n)]
    C = validate_coalgebra(field, n, triples, [1] * n, names)
    mult = [(i, j, pos[op(a, b)], 1) for i, a in enumerate(elems) for j, b in enumerate(elems)]
    e = next(g for g in elems if op(g, g) == g)
    unit = [1 if g == e else 0 for g in elems]
    anti = [(i, pos[inv(g)], 1) for i, g in enumerate(elems)]
    return validate_hopf(C, mult, unit, anti)


def build_group(n: int, field: FieldSpec = QQ) -> HopfAlgebra:
    """Group algebra of the cyclic group of order n."""
    if n < 1:
        raise InvalidSpec("group order must be positive")
    elems = list(range(n))
    return _hopf_from_group(field, elems, lambda a, b: (a + b) % n, lambda a: (-a) % n,
                            [f"g{i}" for i in elems])


def _group(name: str, n: int | None):
    if name == "S3":
        elems = list(itertools.permutations(range(3)))
        op = lambda a, b: tuple(a[b[i]] for i in range(3))
        inv = lambda a: tuple(sorted(range(3), key=lambda i: a[i]))
        return elems, op, inv
    if name in ("cyclic", "Z") and n:
        elems = list(range(n))
        return elems, (lambda a, b: (a + b) % n), (lambda a: (-a) % n)
    raise InvalidSpec(f"unknown group {name!r}")


def build_function_hopf(group: str = "S3", n: int | None = None, field: FieldSpec = QQ) -> HopfAlgebra:
    """Function algebra k^G: basis delta_x, Delta delta_x = sum_{yz=x} delta_y (x) delta_z."""
    elems, op, inv = _group(group, n)
    pos = {g: i for i, g in enumerate(elems)}
    N = len(elems)
    e = next(g for g in elems if op(g, g) == g)
    triples = [(pos[op(y, z)], pos[y], pos[z], 1) for y in elems for z in elems]
    eps = [1 if g == e else 0 for g in elems]
    C = validate_coalgebra(field, N, triples, eps, [f"d{i}" for i in range(N)])
    mult = [(i, i, i, 1) for i in range(N)]
    anti = [(i, pos[inv(g)], 1) for i, g in enumerate(elems)]
    return validate_hopf(C, mult, [1] * N, anti)


def build_taft(n: int, q, field: FieldSpec) -> HopfAlgebra:
    """Taft algebra T_{n^2}: g^n = 1, x^n = 0, x g = q g x,
    Delta g = g (x) g, Delta x = x (x) 1 + g (x) x.  Basis g^i x^j at i*n + j."""
    F = field
    q = F(q)
    if n < 2:
        raise InvalidSpec("Taft algebras need n >= 2")
    powers = [F.one]
    for _ in range(n):
        powers.append(powers[-1] * q % F.p if F.p else powers[-1] * q)
    if powers[n] != 1 or any(powers[k] == 1 for k in range(1, n)):
        raise InvalidSpec(f"q = {F.fmt(q)} is not a primitive root of unity of order {n} in {F}")

    def qpow(k):
        return powers[k % n]

    N = n * n
    idx = lambda i, j: (i % n) * n + j

    def mono_mul(a, b):
        (i, j), (k, l) = divmod(a, n), divmod(b, n)
        if j + l >= n:
            return {}
        return {idx(i + k, j + l): qpow(j * k)}

    def mul(x: dict, y: dict) -> dict:
        out: dict = {}
        for a, u in x.items():
            for b, v in y.items():
                for c, w in mono_mul(a, b).items():
                    out[c] = out.get(c, 0) + u * v * w
        return {k: (v % F.p if F.p else v) for k, v in out.items() if (v % F.p if F.p else v)}

    def tmul(x: dict, y: dict) -> dict:
        out: dict = {}
        for (a1, a2), u in x.items():
            for (b1, b2), v in y.items():
                for c1, w1 in mono_mul(a1, b1).items():
                    for c2, w2 in mono_mul(a2, b2).items():
                        out[(c1, c2)] = out.get((c1, c2), 0) + u * v * w1 * w2
        return {k: (v % F.p if F.p else v) for k, v in out.items() if (v % F.p if F.p else v)}

    g, x, one = idx(1, 0), idx(0, 1), idx(0, 0)
    dg = {(g, g): F.one}
    dx = {(x, one): F.one, (g, x): F.one}
    triples = []
    for i in range(n):
        for j in range(n):
            d = {(one, one): F.one}
            for _ in range(i):
                d = tmul(d, dg)
            for _ in range(j):
                d = tmul(d, dx)
            triples.extend((idx(i, j), a, b, v) for (a, b), v in d.items())
    eps = [1 if j == 0 else 0 for i in range(n) for j in range(n)]
    names = [f"g{i}x{j}" for i in range(n) for j in range(n)]
    C = validate_coalgebra(F, N, triples, eps, names)
    mult = []
    for a in range(N):
        for b in range(N):
            mult.extend((a, b, c, v) for c, v in mono_mul(a, b).items())
    unit = [1 if k == one else 0 for k in range(N)]
    # s(g) = g^{-1}, s(x) = -g^{-1} x, s anti-multiplicative
    sg = {idx(n - 1, 0): F.one}
    sx = {idx(n - 1, 1): F.neg(F.one)}
    anti = []
    for i in range(n):
        for j in range(n):
            s = {one: F.one}
            for _ in range(j):
                s = mul(s, sx)
            for _ in range(i):
                s = mul(s, sg)
            anti.extend((idx(i, j), c, v) for c, v in s.items())
    return validate_hopf(C, mult, unit, anti)


def build_sweedler(field: FieldSpec = QQ) -> HopfAlgebra:
    """Sweedler's 4-dimensional Hopf algebra (Taft algebra with n = 2)."""
    return build_taft(2, -1, field)


def build_serial_qf(dims, field: FieldSpec = QQ) -> Coalgebra:
    """Dual of a self-injective Nakayama algebra with simples of the given
    dimensions.

    Start from the cyclic quiver on m = len(dims) vertices modulo paths of
    length two (basic, self-injective, Nakayama permutation a cyclic shift)
    and blow vertex t up to a d_t x d_t matrix block.  The resulting algebra
    is Morita equivalent to the basic one, hence quasi-Frobenius, and it is
    Frobenius only when the shift preserves the block sizes.
    """
    dims = [int(d) for d in dims]
    m = len(dims)
    if m < 2 or any(d < 1 for d in dims):
        raise InvalidSpec("need at least two positive block sizes")
    if len(set(dims)) < 2:
        raise InvalidSpec("all block sizes equal: the result would be co-Frobenius")
    # basic algebra: paths are ('e', t) in e_t B e_t and ('a', s) in e_{s+1} B e_s
    paths = [("e", t, t) for t in range(m)] + [("a", (s + 1) % m, s) for s in range(m)]

    def path_mul(u, v):
        # u in e_t B e_s, v in e_s' B e_r
        if u[2] != v[1]:
            return None
        if u[0] == "e":
            return v
        if v[0] == "e":
            return u
        return None

    # basis of the blown-up algebra: (path, a, b) with a < d_target, b < d_source
    basis = [(pth, a, b) for pth in paths for a in range(dims[pth[1]]) for b in range(dims[pth[2]])]
    pos = {x: i for i, x in enumerate(basis)}
    n = len(basis)
    triples = []
    for j, (u, a, b) in enumerate(basis):
        for k, (v, c, d) in enumerate(basis):
            if b != c:
                continue
            w = path_mul(u, v)
            if w is None:
                continue
            # product b_j b_k = b_i  ->  Delta c_i gets c_j (x) c_k
            triples.append((pos[(w, a, d)], j, k, 1))
    eps = [1 if (pth[0] == "e" and a == b) else 0 for pth, a, b in basis]
    names = [f"{pth[0]}{pth[1]}{pth[2]}_{a}{b}" for pth, a, b in basis]
    return validate_coalgebra(field, n, triples, eps, names)


def build_cyclic_coquasi(n: int = 2, exponent: int = 1, field: FieldSpec = QQ, q=None):
    """Group algebra of Z_n with the 3-cocycle
    omega(a, b, c) = q^{exponent * a * (b + c - [b + c]) / n}, where [.] is
    the residue mod n and q a primitive n-th root of unity.  For n = 2 this
    is omega(g, g, g) = -1 when the exponent is odd."""
    from .coquasi import validate_coquasi

    H = build_group(n, field)
    F = field
    if q is None:
        if n == 1:
            q = 1
        elif n == 2:
            q = -1
        elif F.p and (F.p - 1) % n == 0:
            q = next(x for x in range(2, F.p)
                     if pow(x, n, F.p) == 1 and all(pow(x, k, F.p) != 1 for k in range(1, n)))
        else:
            raise InvalidSpec(f"no primitive root of unity of order {n} in {F}")
    q = F(q)
    omega = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                k = exponent * a * (b + c - (b + c) % n) // n
                val = F.one
                for _ in range(k % n):
                    val = val * q % F.p if F.p else val * q
                omega.append(val)
    return validate_coquasi(H.base, H.mult, H.unit, omega)


def random_coalgebra(seed: int, dim: int, field: FieldSpec = QQ) -> Coalgebra:
    """Dual of a monomial quotient of a path algebra.

    A random quiver is grown together with a set of paths closed under taking
    subpaths; the span of those paths is a subcoalgebra of the path
    coalgebra, with Delta the deconcatenation of paths.
    """
    if not 1 <= dim <= 8:
        raise InvalidSpec("random coalgebras are limited to 1 <= dim <= 8")
    rng = random.Random(f"random-coalgebra:{seed}:{dim}")
    nverts = rng.randint(1, max(1, min(dim, (dim + 1) // 2 + 1)))
    arrows: list[tuple[int, int]] = []       # (source, target)
    paths: list[tuple] = []                  # tuples of arrow ids, trivial paths as ('v', t)
    for v in range(nverts):
        paths.append(("v", v))
    pathset = set()

    def start(p):
        return p[1] if p[0] == "v" else arrows[p[0]][0]

    def end(p):
        return p[1] if p[0] == "v" else arrows[p[-1]][1]

    def subpaths_ok(p):
        for i in range(len(p)):
            for j in range(i + 1, len(p) + 1):
                if (i, j) != (0, len(p)) and p[i:j] not in pathset:
                    return False
        return True

    guard = 0
    while len(paths) < dim and guard < 1000:
        guard += 1
        nontriv = [p for p in paths if p[0] != "v"]
        if not nontriv or rng.random() < 0.45:
            s, t = rng.randrange(nverts), rng.randrange(nverts)
            arrows.append((s, t))
            p = (len(arrows) - 1,)
            paths.append(p)
            pathset.add(p)
            continue
        p = rng.choice(nontriv)
        ext = [a for a, (s, _t) in enumerate(arrows) if s == end(p)]
        rng.shuffle(ext)
        for a in ext:
            cand = p + (a,)
            if cand not in pathset and subpaths_ok(cand):
                paths.append(cand)
                pathset.add(cand)
                break
    index = {p: i for i, p in enumerate(paths)}
    triples = []
    for i, p in enumerate(paths):
        if p[0] == "v":
            triples.append((i, i, i, 1))
            continue
        # deconcatenation: p = p[:k] p[k:], with trivial paths at the ends
        triples.append((i, index[("v", start(p))], i, 1))
        triples.append((i, i, index[("v", end(p))], 1))
        for k in range(1, len(p)):
            triples.append((i, index[p[:k]], index[p[k:]], 1))
    eps = [1 if p[0] == "v" else 0 for p in paths]
    names = [f"v{p[1]}" if p[0] == "v" else "a" + ".".join(str(a) for a in p) for p in paths]
    return validate_coalgebra(field, len(paths), triples, eps, names)


def build(spec: CorpusSpec):
    fam = spec.family
    p = spec.get("p")
    F = _field(p)
    try:
        if fam == "matrix":
            return build_matrix(int(spec.get("n", 2)), F)
        if fam == "group":
            return build_group(int(spec.get("n", 2)), F)
        if fam == "function-hopf":
            return build_function_hopf(spec.get("group", "S3"), spec.get("n"), F)
        if fam == "sweedler":
            return build_sweedler(F)
        if fam == "taft":
            n = int(spec.get("n", 2))
            q = spec.get("q")
            if q is None:
                if F.p == 0 and n == 2:
                    q = -1
                else:
                    raise InvalidSpec("taft needs q (a primitive n-th root of unity)")
            if F.p and (F.p - 1) % n:
                raise InvalidSpec(f"taft needs p = 1 mod n (p={F.p}, n={n})")
            if F.p == 0 and n > 2:
                raise InvalidSpec("taft with n > 2 needs a prime field with p = 1 mod n")
            return build_taft(n, q, F)
        if fam == "serial-qf":
            return build_serial_qf(spec.get("dims", (1, 2)), F)
        if fam == "cyclic-coquasi":
            return build_cyclic_coquasi(int(spec.get("n", 2)), int(spec.get("exponent", 1)), F, spec.get("q"))
        if fam == "random":
            return random_coalgebra(int(spec.get("seed", 0)), int(spec.get("dim", 4)), F)
    except InvalidSpec:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidSpec(str(exc)) from exc
    raise InvalidSpec(f"unknown family {fam!r}")
