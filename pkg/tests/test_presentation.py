import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comodkit import presentation as pres
from comodkit.comod import find_isomorphism, structure
from comodkit.corpus import build, parse_spec
from comodkit.errors import InputError, ValidationError
from comodkit.hopf import HopfAlgebra

KZ2 = {
    "schema": 1,
    "field": {"kind": "rationals"},
    "dim": 2,
    "names": ["e", "g"],
    "delta": [[0, 0, 0, 1], [1, 1, 1, 1]],
    "eps": ["1", "1"],
}


def doc(**changes):
    d = json.loads(json.dumps(KZ2))
    for k, v in changes.items():
        if v is None:
            d.pop(k, None)
        else:
            d[k] = v
    return d


def load_doc(d):
    return pres.loads(json.dumps(d))


def test_minimal_coalgebra():
    P = load_doc(doc())
    assert P.kind == "coalgebra" and P.coalgebra.dim == 2
    assert P.coalgebra.grouplikes() == [0, 1]


def test_hopf_round_trip_with_comodules():
    H = build(parse_spec("sweedler"))
    mods = structure(H.base).injectives
    text = pres.dumps(pres.to_document(H, mods))
    P = pres.loads(text)
    assert P.kind == "hopf" and isinstance(P.structure, HopfAlgebra)
    assert P.structure.antipode == H.antipode
    assert sorted(P.comodules) == sorted(M.name for M in mods)
    for M in mods:
        assert find_isomorphism(P.comodules[M.name], M) is not None
    assert pres.dumps(pres.to_document(P.structure, list(P.comodules.values()))) == text


def test_coquasi_round_trip():
    H = build(parse_spec("cyclic-coquasi:n=2"))
    P = pres.loads(pres.dumps(pres.to_document(H)))
    assert P.kind == "coquasi" and P.structure.omega == H.omega


def test_prime_field_round_trip():
    H = build(parse_spec("taft:n=3,p=7,q=2"))
    P = pres.loads(pres.dumps(pres.to_document(H)))
    assert P.field.p == 7 and P.coalgebra == H.base


def test_rational_coefficients():
    d = doc(delta=[[0, 0, 0, 2, 2], [1, 1, 1, "1"]], eps=["1", "2/2"])
    assert load_doc(d).coalgebra.eps == (1, 1)


def test_digest_format():
    assert pres.digest("abc").startswith("sha256:")
    assert pres.digest(b"abc") == pres.digest("abc")
    assert len(pres.digest("")) == len("sha256:") + 64


def test_float_is_rejected_with_position():
    text = '{"schema": 1, "field": {"kind": "rationals"}, "dim": 1,\n "delta": [[0, 0, 0, 1.0]], "eps": ["1"]}'
    with pytest.raises(InputError) as err:
        pres.loads(text)
    assert err.value.position == "line 2 column 22"


def test_float_inside_string_is_not_a_float():
    text = json.dumps(doc(names=["1.5", "g"]))
    assert pres.loads(text).coalgebra.names == ("1.5", "g")


@pytest.mark.parametrize("d, position", [
    (doc(delta=[[0, 0, 2, 1], [1, 1, 1, 1]]), "$.delta[0]"),
    (doc(dim=None), "$"),
    (doc(dim="2"), "$.dim"),
    (doc(eps=["1"]), "$.eps"),
    (doc(eps=["1", "x"]), "$.eps[1]"),
    (doc(delta=[[0, 0, 0, 1, 0], [1, 1, 1, 1]]), "$.delta[0]"),
    (doc(delta=[[0, 0, 0, True], [1, 1, 1, 1]]), "$.delta[0]"),
    (doc(field={"kind": "reals"}), "$.field.kind"),
    (doc(field={"kind": "prime-field", "p": 6}), "$.field.p"),
    (doc(schema=2), "$.schema"),
    (doc(antipode=[[0, 0, 1]]), "$"),
    (doc(comodules=[{"name": "M", "dim": 1, "side": "middle", "rho": []}]), "$.comodules[0].side"),
    (doc(comodules=[{"name": "M", "dim": 1, "rho": [[0, 1, 0, 1]]}]), "$.comodules[0].rho[0]"),
])
def test_input_errors_carry_positions(d, position):
    with pytest.raises(InputError) as err:
        load_doc(d)
    assert err.value.position == position


def test_malformed_json_position():
    with pytest.raises(InputError) as err:
        pres.loads('{"dim": 1,,}')
    assert err.value.position.startswith("line 1 column")


def test_axiom_failure_is_validation_error():
    with pytest.raises(ValidationError) as err:
        load_doc(doc(eps=["1", "0"]))
    assert err.value.axiom == "counit"


def test_comodule_axiom_failure():
    bad = {"name": "M", "dim": 1, "rho": [[0, 0, 0, 1], [0, 0, 1, 1]]}
    with pytest.raises(ValidationError):
        load_doc(doc(comodules=[bad]))


def test_load_missing_file():
    with pytest.raises(InputError):
        pres.load("/nonexistent/presentation.json")


# ---------------------------------------------------------------- properties


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["sweedler", "matrix:n=2", "group:n=4", "taft:n=2", "serial-qf:dims=1-2-1",
                        "function-hopf:group=S3", "random:seed=9,dim=5"]),
       st.integers(0, 2))
def test_round_trip_is_byte_stable(spec, which):
    obj = build(parse_spec(spec))
    C = getattr(obj, "base", obj)
    st_ = structure(C)
    mods = [st_.simples, st_.injectives, st_.projectives][which]
    text = pres.dumps(pres.to_document(obj, mods))
    P = pres.loads(text)
    again = pres.dumps(pres.to_document(P.structure or P.coalgebra, list(P.comodules.values())))
    assert again == text
