import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pincohom import checks, grp, qmat, serialize, swc
from pincohom.cliff import pin_cocycles
from pincohom.cohom import Z, Z2, h2, random_cocycle
from pincohom.errors import InputError
from pincohom.ext import decide_lift, from_cocycle

from conftest import CORPUS, diag


def through_json(x):
    return json.loads(json.dumps(x))


def test_group_spec_roundtrip():
    specs = [
        grp.TableSpec(tuple(map(tuple, grp.quaternion().table))),
        grp.PermSpec(4, (((1, 2, 3, 4),), ((1, 3),))),
        grp.OrthSpec(2, (qmat.as_matrix([["3/5", "-4/5"], ["4/5", "3/5"]]), diag(1, -1))),
    ]
    for spec in specs:
        d = serialize.group_spec_to_json(spec)
        assert serialize.group_spec_from_json(through_json(d)) == spec


def test_rational_strings():
    from fractions import Fraction

    m = qmat.as_matrix([[Fraction(6, 10), "-4/5"], ["4/5", "3/5"]])
    d = serialize.group_spec_to_json(grp.OrthSpec(2, (m,)))
    assert d["gens"][0] == [["3/5", "-4/5"], ["4/5", "3/5"]]
    for bad in ("6/10", "3/-5"):
        with pytest.raises(InputError):
            serialize.group_spec_from_json({"kind": "orth", "dim": 2, "gens": [[[bad, "0"], ["0", "1"]]]})
    with pytest.raises(InputError):
        serialize.group_spec_from_json({"kind": "orth", "dim": 2, "gens": [[["1/0", "0"], ["0", "1"]]]})


@pytest.mark.parametrize("bad", [
    {"kind": "table"},
    {"kind": "perm", "degree": 2, "gens": "x"},
    {"kind": "nope"},
    {"kind": "table", "mul": [[0, 1], [1, 1]]},
])
def test_malformed_specs(bad):
    with pytest.raises(InputError):
        serialize.group_from_json(bad)


@given(st.sampled_from(sorted(CORPUS)), st.sampled_from([2, 4, 6]), st.integers(0, 2**32 - 1))
def test_cocycle_and_extension_roundtrip(name, m, seed):
    G = CORPUS[name]
    A = Z(m)
    f = random_cocycle(G, A, np.random.default_rng(seed))
    assert serialize.cocycle_from_json(G, A, through_json(serialize.cocycle_to_json(f))) == f
    X = from_cocycle(G, A, f)
    Y = serialize.extension_from_json(through_json(serialize.extension_to_json(X)))
    assert Y.table_equal(X)


def test_extension_json_validated():
    X = from_cocycle(grp.cyclic(2), Z2, random_cocycle(grp.cyclic(2), Z2, np.random.default_rng(0)))
    d = serialize.extension_to_json(X)
    d["i"] = [0, 0]
    with pytest.raises(InputError):
        serialize.extension_from_json(d)
    with pytest.raises(InputError):
        serialize.extension_from_json({"E": {}})


def test_rep_roundtrip():
    d = {"group": {"kind": "table", "mul": [[0, 1], [1, 0]]}, "dim": 2, "images": {"1": [["-1", "0"], ["0", "-1"]]}}
    pi = serialize.rep_from_json(through_json(d))
    assert pi.dim == 2 and pi.mats[1] == diag(-1, -1)
    d["dim"] = 3
    with pytest.raises(InputError):
        serialize.rep_from_json(d)


def test_reports_are_json_stable(gamma2):
    G, mats = gamma2
    for obj in (
        serialize.h2_to_json(h2(G, Z2)),
        serialize.pin_report_to_json(pin_cocycles(G, mats)),
        serialize.sw_report_to_json(swc.lifting_report(swc.defining_rep(G, mats))),
        serialize.lift_report_to_json(decide_lift(grp.identity_hom(G), from_cocycle(G, Z2, random_cocycle(G, Z2, np.random.default_rng(1))))),
    ):
        assert through_json(obj) == obj


def test_report_cocycles_parse_back(gamma2):
    G, mats = gamma2
    r = pin_cocycles(G, mats)
    d = through_json(serialize.pin_report_to_json(r))
    assert serialize.cocycle_from_json(G, Z2, d["f_minus"]) == r.f_minus
    assert d["word_lengths"] == [0, 1, 1, 2]


def test_hom_and_coeff_hom_parsing():
    Q = grp.quaternion()
    phi = serialize.hom_from_json({"source": {"kind": "table", "mul": Q.table}, "images": {"2": 1, "1": 1}}, grp.cyclic(2))
    assert phi.map[4] == 0
    psi = serialize.coeff_hom_from_json({"target": [4], "matrix": [[2]]}, Z2)
    assert psi((1,)) == (2,)
