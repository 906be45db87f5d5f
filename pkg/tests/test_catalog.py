import pytest

from cuntz.algebra import COMPLEX, Mat, Tensor, parse_algebra, to_text
from cuntz.catalog import (
    CarSG,
    DirectSumSG,
    ExtNatSG,
    IdealLatticeSG,
    MfSG,
    MfiSG,
    NatSG,
    NotDecidable,
    Query,
    TwoPointSG,
    UnknownSG,
    WOfSG,
    ZeroSG,
    classify,
    compose_product,
    direct_sum_value,
    eval_W,
    eval_WW,
    eval_cuntz_homology,
    explore_values,
    has_unknown,
    query_text,
    scale_membership_note,
    value_text,
    value_to_json,
)
from cuntz.extnat import ExtNat, INF
from cuntz.multiplicity import Space, SpaceMismatch, mf


def W(a, b):
    return eval_W(parse_algebra(a), parse_algebra(b))


def WW(a, b):
    return eval_WW(parse_algebra(a), parse_algebra(b))


def anchors(trace):
    return [step.anchor for step in trace]


def rules(trace):
    return [step.rule for step in trace]


# ---------------------------------------------------------------------------
# The regression table.

def test_w_of_scalars_is_nat():
    value, trace = W("C", "C")
    assert value == NatSG()
    assert value_text(value) == "ℕ₀"
    assert "recovery of the Cuntz semigroup from the bivariant theory" in anchors(trace)
    assert "base Cuntz semigroup values" in anchors(trace)


def test_w_scalar_into_stabilization_is_extnat():
    value, trace = W("C", "C (x) K")
    assert value == ExtNatSG()
    assert "stability isomorphism" in anchors(trace)


def test_ww_matrix_pair_is_extnat():
    value, trace = WW("M(2)", "M(3)")
    assert value == ExtNatSG()
    assert rules(trace)[0] == "R3-bridge"


def test_ww_into_kirchberg_counts_ideals():
    value, trace = WW("M(2)", "O2")
    assert value == TwoPointSG()
    assert "bivariant ideal lattice theorem for Kirchberg algebras" in anchors(trace)
    value, _ = WW("Z", "O2")
    assert value == TwoPointSG()
    value, _ = WW("F(2,3,5)", "O2")
    assert value == IdealLatticeSG(3)
    value, _ = WW("CX(p,q)", "Oinf")
    assert value == IdealLatticeSG(2)


def test_car_self_pairing():
    value, trace = W("CAR", "CAR")
    assert value == CarSG()
    assert anchors(trace) == ["CAR algebra self-pairing"]
    assert value_text(value) == "ℕ₀[1/2]⊔(0,∞)"


@pytest.mark.parametrize("d", ["CAR", "Z", "Q"])
def test_absorption_identity(d):
    lhs, _ = W(f"M(2) (x) {d}", f"M(3) (x) {d}")
    rhs, _ = W("M(2)", f"M(3) (x) {d}")
    assert lhs == rhs
    assert not has_unknown(lhs)


def test_homology_values():
    value, trace = WW("CX(p,q,r)", "C")
    assert value == MfSG(Space.discrete(("p", "q", "r")))
    assert anchors(trace) == ["multiplicity function description of Cuntz homology"]
    value, _ = W("CX(p,q,r)", "C")
    assert value == MfiSG(Space.discrete(("p", "q", "r")))


def test_zero_rule():
    value, trace = W("O2", "F(2,3)")
    assert value == ZeroSG()
    assert anchors(trace) == ["finite-dimensional representation obstruction"]
    value, _ = W("CAR", "K")
    assert value == ZeroSG()
    value, _ = WW("Z", "M(4)")
    assert value == ZeroSG()


def test_tensor_factor_absorption_path():
    value, trace = W("CAR (x) Q", "Q")
    assert value == WOfSG(parse_algebra("Q"))
    assert "strongly self-absorbing absorption theorem" in anchors(trace)
    assert "absorption of a strongly self-absorbing factor" in anchors(trace)


# ---------------------------------------------------------------------------
# Terminal values and unknowns.

def test_terminal_wof_value():
    value, trace = W("C", "Z")
    assert value == WOfSG(parse_algebra("Z"))
    assert value_text(value) == "W(Z)"
    assert not has_unknown(value)


def test_direct_sum_of_terminals():
    value, _ = W("C", "Z (+) Z")
    assert value == DirectSumSG((WOfSG(parse_algebra("Z")), WOfSG(parse_algebra("Z"))))
    assert value_text(value) == "⊕[W(Z), W(Z)]"


def test_unknown_query_is_reported():
    value, trace = W("UHF(2:inf)", "UHF(3:inf)")
    assert value == UnknownSG("W(UHF(2:inf), UHF(3:inf))")
    assert has_unknown(value)
    assert trace == []


def test_direct_sum_flattens_and_sorts():
    v = direct_sum_value([DirectSumSG((ExtNatSG(), NatSG())), ZeroSG()])
    assert v == DirectSumSG((ExtNatSG(), NatSG(), ZeroSG()))
    assert has_unknown(direct_sum_value([NatSG(), UnknownSG("x")]))


def test_mixed_direct_sum_evaluation():
    value, _ = W("C", "C (+) M(2) (x) K")
    # ℕ₀ from the scalar summand, ℕ₀ ∪ {∞} from the stabilized one
    assert value == DirectSumSG((ExtNatSG(), NatSG()))


def test_normalization_recorded_in_trace():
    value, trace = W("M(3) (x) M(2)", "C")
    assert value == NatSG()
    assert trace[0].rule == "N"
    assert trace[0].anchor == "canonical presentation"
    assert trace[0].before == "W(M(3) (x) M(2), C)"
    assert trace[0].after == "W(M(6), C)"


def test_trace_steps_chain():
    _, trace = W("C", "C (x) K")
    for step in trace:
        assert step.before.startswith(("W(", "Cu(", "WW("))
        assert isinstance(step.to_json()["after"], str)
    # each step rewrites the previous result
    for first, second in zip(trace, trace[1:]):
        assert first.after == second.before


# ---------------------------------------------------------------------------
# Confluence of admissible rule orders.

CONFLUENT_QUERIES = [
    ("W", "C", "C"),
    ("W", "C", "M(5)"),
    ("W", "C", "C (x) K"),
    ("WW", "M(2)", "M(3)"),
    ("WW", "F(2,3,5)", "O2"),
    ("W", "CAR", "CAR"),
    ("WW", "CX(p,q,r)", "C"),
    ("W", "F(2,3)", "M(2)"),
    ("W", "M(2) (x) CAR", "M(3) (x) CAR"),
    ("W", "CAR (x) Q", "Q"),
    ("W", "C", "Z (+) Z"),
    ("W", "O2", "F(2,3)"),
    ("WW", "Z", "O2"),
]


@pytest.mark.parametrize("variant,a,b", CONFLUENT_QUERIES)
def test_rule_order_confluence(variant, a, b):
    q = Query(variant, parse_algebra(a), parse_algebra(b))
    values = explore_values(q)
    assert len(values) == 1
    evaluated, _ = (eval_W if variant == "W" else eval_WW)(
        parse_algebra(a), parse_algebra(b)
    )
    assert values == {evaluated}


def test_presentation_split_on_function_domain_with_matrix_target():
    # stripping the target gives Mf_i({p,q}); splitting the domain gives
    # ℕ₀ ⊕ ℕ₀.  The monoids agree, the presentations do not, and the
    # evaluator deterministically picks the multiplicity one.
    q = Query("W", parse_algebra("CX(p,q)"), parse_algebra("M(3)"))
    values = explore_values(q)
    assert values == {
        MfiSG(Space.discrete(("p", "q"))),
        DirectSumSG((NatSG(), NatSG())),
    }
    evaluated, _ = W("CX(p,q)", "M(3)")
    assert evaluated == MfiSG(Space.discrete(("p", "q")))


# ---------------------------------------------------------------------------
# The ideal lattice monoid.

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_ideal_lattice_monoid_laws(k):
    lat = IdealLatticeSG(k)
    elems = lat.elements()
    assert len(elems) == 2 ** k
    assert len(set(elems)) == len(elems)
    assert lat.identity == frozenset(range(1, k + 1))
    for x in elems:
        assert lat.add(x, lat.identity) == x
        assert lat.add(x, x) == x
        for y in elems:
            assert lat.add(x, y) == lat.add(y, x)
            for z in elems:
                assert lat.add(lat.add(x, y), z) == lat.add(x, lat.add(y, z))


def test_ideal_lattice_ordering_of_elements():
    elems = IdealLatticeSG(2).elements()
    assert elems == (
        frozenset(),
        frozenset({1}),
        frozenset({2}),
        frozenset({1, 2}),
    )


# ---------------------------------------------------------------------------
# Cuntz homology and the composition product.

def test_homology_variants():
    x = Space.discrete(("p", "q"))
    assert eval_cuntz_homology(x, "WW") == MfSG(x)
    assert eval_cuntz_homology(x, "W") == MfiSG(x)
    i = Space.interval()
    assert eval_cuntz_homology(i, "WW") == MfSG(i)
    with pytest.raises(ValueError):
        eval_cuntz_homology(i, "W")
    with pytest.raises(ValueError):
        eval_cuntz_homology(x, "Wi")


def test_compose_product_values():
    x = Space.discrete(("p", "q", "r"))
    nu = mf(x, atoms={"p": 2, "q": INF})
    assert compose_product({"p": 3}, nu) == ExtNat(6)
    assert compose_product({"p": 1, "q": 0, "r": 5}, nu) == ExtNat(2)
    assert compose_product({"q": 1}, nu) == INF
    assert compose_product({}, nu) == ExtNat(0)


def test_compose_product_rejects_bad_input():
    x = Space.discrete(("p",))
    nu = mf(x, atoms={"p": 1})
    with pytest.raises(SpaceMismatch):
        compose_product({"z": 1}, nu)
    with pytest.raises(ValueError):
        compose_product({"p": -1}, nu)
    interval_nu = mf(Space.interval(), atoms={})
    with pytest.raises(SpaceMismatch):
        compose_product({"p": 1}, interval_nu)


# ---------------------------------------------------------------------------
# Classification verdicts.

def test_matrix_classification():
    v = classify(parse_algebra("M(2)"), parse_algebra("M(2)"))
    assert v.verdict == "Isomorphic"
    v = classify(parse_algebra("M(2)"), parse_algebra("M(6)"))
    assert v.verdict == "NotIsomorphic"
    assert "2 != 6" in v.certificate
    v = classify(parse_algebra("M(3) (x) M(2)"), parse_algebra("M(6)"))
    assert v.verdict == "Isomorphic"
    v = classify(parse_algebra("C"), parse_algebra("M(1)"))
    assert v.verdict == "Isomorphic"


def test_uhf_classification():
    iso = classify(parse_algebra("CAR"), parse_algebra("UHF(2:inf)"))
    assert iso.verdict == "Isomorphic"
    iso = classify(parse_algebra("UHF(3:inf,2:inf)"), parse_algebra("UHF(2:inf,3:inf)"))
    assert iso.verdict == "Isomorphic"
    not_iso = classify(parse_algebra("UHF(2:inf)"), parse_algebra("UHF(3:inf)"))
    assert not_iso.verdict == "NotIsomorphic"
    assert "prime" in not_iso.certificate
    universal = classify(parse_algebra("Q"), parse_algebra("CAR"))
    assert universal.verdict == "NotIsomorphic"
    assert "prime 3" in universal.certificate


def test_cx_classification_uses_reconstruction():
    v = classify(parse_algebra("CX(p,q)"), parse_algebra("CX(a,b)"))
    assert v.verdict == "Isomorphic"
    assert "reconstructed" in v.certificate
    v = classify(parse_algebra("CX(p)"), parse_algebra("CX(a,b)"))
    assert v.verdict == "NotIsomorphic"


def test_classification_is_symmetric_on_the_fragment():
    pairs = [("M(2)", "M(4)"), ("CAR", "Q"), ("CX(p,q)", "CX(a,b,c)")]
    for a, b in pairs:
        fwd = classify(parse_algebra(a), parse_algebra(b))
        bwd = classify(parse_algebra(b), parse_algebra(a))
        assert fwd.verdict == bwd.verdict


def test_outside_fragment_is_undecided():
    for a, b in [("Z", "Z"), ("O2", "O2"), ("M(2)", "CAR"), ("Z (x) CAR", "CAR")]:
        v = classify(parse_algebra(a), parse_algebra(b))
        assert v.verdict == "Undecided"
        assert v.certificate == "outside the decidable catalog fragment"


# ---------------------------------------------------------------------------
# Scale membership notes.

def test_scale_note_for_matrix_pair():
    note = scale_membership_note(parse_algebra("M(2)"), parse_algebra("M(6)"))
    assert note.forward_scale == (0, 1, 2, 3)
    assert note.backward_scale == (0,)
    assert note.invertible
    assert not note.strictly_invertible
    assert "forces n = m" in note.text()
    assert note.to_json()["note"] == note.text()


def test_scale_note_for_equal_sizes():
    note = scale_membership_note(parse_algebra("M(3)"), parse_algebra("M(3)"))
    assert note.forward_scale == (0, 1)
    assert note.strictly_invertible
    assert "strictly invertible" in note.text()


def test_scale_note_unwraps_scalars_and_products():
    note = scale_membership_note(parse_algebra("C"), parse_algebra("M(2) (x) M(2)"))
    assert note.n == 1 and note.m == 4
    assert note.forward_scale == (0, 1, 2, 3, 4)


def test_scale_note_refuses_non_matrix_pairs():
    with pytest.raises(NotDecidable):
        scale_membership_note(parse_algebra("Z"), parse_algebra("M(2)"))


# ---------------------------------------------------------------------------
# Serialization of values.

def test_value_json_kinds():
    assert value_to_json(NatSG()) == {"kind": "Nat"}
    assert value_to_json(TwoPointSG()) == {"kind": "TwoPoint"}
    assert value_to_json(IdealLatticeSG(3)) == {"kind": "IdealLattice", "summands": 3}
    doc = value_to_json(MfSG(Space.discrete(("p",))))
    assert doc["kind"] == "Mf"
    assert doc["space"]["kind"] == "discrete"
    nested = value_to_json(DirectSumSG((NatSG(), WOfSG(parse_algebra("Z")))))
    assert nested == {
        "kind": "DirectSum",
        "summands": [{"kind": "Nat"}, {"kind": "WOf", "algebra": "Z"}],
    }


def test_query_text_shapes():
    q = Query("WW", Mat(2), Mat(3))
    assert query_text(q) == "WW(M(2), M(3))"
    assert query_text(Query("Wof", COMPLEX)) == "W(C)"
    assert query_text(Query("Cuof", Tensor(Mat(2), COMPLEX))) == "Cu(M(2) (x) C)"
