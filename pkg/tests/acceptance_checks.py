"""The nine acceptance checks, shared by the pytest gate and the standalone
runner (``python3 tests/test_acceptance.py``).

Each check returns (passed, detail).  Nothing here is relaxed: a check that
cannot be met reports failure.
"""

from __future__ import annotations

from comodkit.classify import classify, frobenius_pairing, nakayama_automorphism, twist_formula_check
from comodkit.comod import Comodule, find_isomorphism, indecomposables, regular_comodule, structure
from comodkit.coquasi import (
    CoquasiBialgebra,
    coquasi_classification,
    hopf_left_comodule_dual,
    preantipode_solve,
    right_dual_coquasi,
    trivial_omega,
    validate_coquasi,
)
from comodkit.corpus import build, parse_spec
from comodkit.hopf import cointegral_space, modular_object, radford_check
from comodkit.nakayama import adjunction_check, calabi_yau_pairing, coend_oracle, nakayama_left, nakayama_right

CORRESPONDENCE_CORPUS = (
    ["matrix:n=1", "matrix:n=2", "matrix:n=3"]
    + [f"group:n={n}" for n in range(1, 6)]
    + ["sweedler", "taft:n=2", "taft:n=3,p=7,q=2", "serial-qf:dims=1-2"]
)

CLASSIFY_EXPECTED = {
    "matrix:n=2": (True, True, True),
    "matrix:n=3": (True, True, True),
    "group:n=2": (True, True, True),
    "group:n=3": (True, True, True),
    "group:n=5": (True, True, True),
    "sweedler": (True, True, False),
    "taft:n=2": (True, True, False),
    "taft:n=3,p=7,q=2": (True, True, False),
    "serial-qf:dims=1-2": (True, False, False),
}

HOPF_CORPUS = ["group:n=2", "group:n=3", "group:n=4", "group:n=5", "sweedler", "taft:n=2",
               "taft:n=3,p=7,q=2", "function-hopf:group=S3"]


def coalgebra(spec: str):
    obj = build(parse_spec(spec))
    return obj, getattr(obj, "base", obj)


def check_correspondence():
    bad = []
    for spec in CORRESPONDENCE_CORPUS:
        _, C = coalgebra(spec)
        st = structure(C)
        for k, (P, E) in enumerate(zip(st.projectives, st.injectives)):
            f = find_isomorphism(nakayama_right(C, P).output, E)
            g = find_isomorphism(nakayama_left(C, E).output, P)
            if f is None or g is None or not (f.is_iso() and f.is_morphism() and g.is_iso() and g.is_morphism()):
                bad.append((spec, k))
    return not bad, f"{len(CORRESPONDENCE_CORPUS)} coalgebras, failures {bad}"


def check_coend(count: int = 100):
    bad = []
    cases = 0
    for seed in range(count):
        dim = 1 + seed % 6
        _, C = coalgebra(f"random:seed={seed},dim={dim}")
        mods = [regular_comodule(C, "right")] + list(structure(C).simples)
        for M in mods:
            cases += 1
            ce = coend_oracle(C, M).comodule
            if find_isomorphism(ce, nakayama_right(C, M).output) is None:
                bad.append((seed, M.name))
    return not bad, f"{count} random coalgebras, {cases} comodules, failures {bad}"


def check_classification():
    bad = []
    for spec, (qf, cof, sym) in CLASSIFY_EXPECTED.items():
        _, C = coalgebra(spec)
        try:
            r = classify(C)
        except Exception as exc:  # a RouteDisagreement is a failure here
            bad.append((spec, type(exc).__name__))
            continue
        got = (r.quasiFrobenius, r.coFrobenius, r.symmetric)
        if got != (qf, cof, sym) or not r.implications_hold():
            bad.append((spec, got))
    return not bad, f"{len(CLASSIFY_EXPECTED)} coalgebras, mismatches {bad}"


def check_twist():
    bad = []
    n_obj = 0
    for spec, (_, cof, _) in CLASSIFY_EXPECTED.items():
        if not cof:
            continue
        _, C = coalgebra(spec)
        b = frobenius_pairing(C)
        objs = indecomposables(C, C.dim)
        n_obj += len(objs)
        if b is None or twist_formula_check(C, b, nakayama_automorphism(C, b), objs) is None:
            bad.append(spec)
    return not bad, f"{n_obj} indecomposables, failures {bad}"


def check_calabi_yau():
    bad = []
    pairs = 0
    for spec in ["sweedler", "taft:n=3,p=7,q=2"]:
        _, C = coalgebra(spec)
        st = structure(C)
        for i, P in enumerate(st.projectives):
            for j, M in enumerate(st.simples):
                pairs += 1
                if not calabi_yau_pairing(C, P, M).full_rank:
                    bad.append((spec, i, j))
    return not bad, f"{pairs} (projective, simple) pairs, failures {bad}"


def check_radford():
    details = []
    ok = True
    for spec, max_dim, expect in [("sweedler", None, 4), ("taft:n=3,p=7,q=2", 3, None)]:
        H, C = coalgebra(spec)
        rep = radford_check(H, max_dim)
        w = rep.witnesses[0]
        lhs_ok = w.check(lambda f, i, j: f, lambda f, i, j: f)
        count = len(w.objects)
        ok &= lhs_ok and len(rep.hull_cover) == len(structure(C).simples)
        if expect is not None:
            ok &= count == expect
        details.append(f"{spec}: {count} objects, {len(w.generators)} generators")
    return bool(ok), "; ".join(details)


def check_cointegrals():
    bad = []
    for spec in HOPF_CORPUS:
        H, _ = coalgebra(spec)
        left = cointegral_space(H, "left")
        right = cointegral_space(H, "right")
        g = modular_object(H)
        same = left.dim == right.dim == 1 and left.basis() == right.basis()
        unimodular = g.is_trivial(H)
        expect_unimodular = not spec.startswith(("sweedler", "taft"))
        if left.dim != 1 or right.dim != 1 or same != unimodular or unimodular != expect_unimodular:
            bad.append(spec)
    return not bad, f"{len(HOPF_CORPUS)} Hopf algebras, failures {bad}"


def check_coquasi():
    H, C = coalgebra("cyclic-coquasi:n=2")
    ok = isinstance(H, CoquasiBialgebra) and not H.is_trivial
    H = validate_coquasi(C, H.mult, H.unit, H.omega)
    pre = preantipode_solve(H)
    ok &= pre is not None
    rep = coquasi_classification(H)
    ok &= rep.left_cointegrals == 1 and rep.right_cointegrals == 1 and rep.dimension_criterion
    # trivial associator: the coinvariant right dual matches the Hopf left dual
    dual_checks = 0
    for spec in ["group:n=2", "group:n=3", "sweedler"]:
        Hh, Ch = coalgebra(spec)
        T = validate_coquasi(Ch, Hh.mult, Hh.unit, trivial_omega(Ch))
        st = structure(Ch.cop())
        for S in list(st.simples) + list(st.injectives):
            X = Comodule(Ch, "left", S.act, S.name)
            D = right_dual_coquasi(T, X).comodule
            ok &= find_isomorphism(D, hopf_left_comodule_dual(Hh, X)) is not None
            dual_checks += 1
    return bool(ok), f"preantipode solution dim {pre.solution_dim if pre else None}, {dual_checks} dual comparisons"


def adjunction_objects(C):
    objs = [M for M in indecomposables(C, 6)]
    if C.dim <= 6:
        objs.append(regular_comodule(C, "right"))
    return objs


def check_adjunction():
    bad = []
    pairs = 0
    for spec in ["matrix:n=2", "group:n=3", "sweedler", "taft:n=2", "taft:n=3,p=7,q=2",
                 "serial-qf:dims=1-2", "serial-qf:dims=1-2-1", "random:seed=0,dim=4"]:
        _, C = coalgebra(spec)
        objs = adjunction_objects(C)
        for i, M in enumerate(objs):
            for j, M2 in enumerate(objs):
                pairs += 1
                rep = adjunction_check(C, M, M2, sources=objs, targets=objs, triangles=(i == j))
                if not rep.ok:
                    bad.append((spec, i, j))
    return not bad, f"{pairs} object pairs, failures {bad}"


CRITERIA = [
    (1, "projective-injective correspondence", check_correspondence, 60),
    (2, "coend oracle equivalence", check_coend, 300),
    (3, "classification route agreement", check_classification, 120),
    (4, "twist formula", check_twist, 120),
    (5, "Calabi-Yau pairing", check_calabi_yau, 30),
    (6, "Radford fourth-dual formula", check_radford, 120),
    (7, "cointegral and modular consistency", check_cointegrals, 30),
    (8, "coquasi layer", check_coquasi, 30),
    (9, "adjunction", check_adjunction, 60),
]
