import json
from pathlib import Path

import pytest

from brdescent.brauer import BrauerClass, symbol
from brdescent.certlang import (
    DescentCertificate, Step, dump_document, parse, serialize, verify_certificate, verify_document,
)
from brdescent.descent import descend
from brdescent.errors import BadElementGrammar, CertificateSyntaxError, UnknownStepKind
from brdescent.fields import FieldTower, wp
from brdescent.oracle import DegreeBound

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="module")
def golden_text():
    return (GOLDEN / "generic.descent-cert").read_text(encoding="utf-8")


@pytest.fixture
def Fc():
    return FieldTower.rational(1, ("t",))


def small_cert(F):
    t = F.gen("t")
    s = symbol(wp(t), t + 1)
    return DescentCertificate(
        [("F", F)], BrauerClass(F, [s]),
        [Step("R3", "F", (s,), (), {}, {"x": t, "y": F.zero()})],
        BrauerClass(F),
    )


def test_golden_matches_pipeline(golden_text):
    res = descend(None, DegreeBound(8), mode="generic")
    assert serialize(res.cert) == golden_text


def test_golden_roundtrip(golden_text):
    assert serialize(parse(golden_text)) == golden_text
    index = (GOLDEN / "generic.index.descent-cert").read_text(encoding="utf-8")
    assert serialize(parse(index)) == index


def test_golden_accepts_strict(golden_text):
    v = verify_document(golden_text, "strict")
    assert v.accepted and v.oracle_calls == 0


def test_index_golden_accepts():
    v = verify_document((GOLDEN / "generic.index.descent-cert").read_text(encoding="utf-8"), "strict")
    assert v.accepted
    assert parse((GOLDEN / "generic.index.descent-cert").read_text()).final.is_empty()


def test_empty_cert(Fc):
    t = Fc.gen("t")
    A = BrauerClass(Fc, [symbol(t, t + 1)])
    cert = DescentCertificate([("F", Fc)], A, [], A)
    text = serialize(cert)
    assert json.loads(text)["steps"] == []
    assert serialize(parse(text)) == text
    assert verify_certificate(parse(text)).accepted


def test_small_cert(Fc):
    cert = small_cert(Fc)
    assert verify_certificate(cert).accepted
    assert verify_certificate(parse(serialize(cert))).accepted


def test_flipped_witness_rejected(Fc):
    cert = small_cert(Fc)
    cert.steps[0].witness["x"] = cert.steps[0].witness["x"] + Fc.gen("t")
    v = verify_certificate(cert)
    assert not v.accepted and v.step == 0 and v.reason == "WitnessFails"


def test_r1_shape(Fc):
    t = Fc.gen("t")
    a, b = symbol(t, t), symbol(t + 1, t + 1)
    cert = DescentCertificate([("F", Fc)], BrauerClass(Fc, [a, b]),
                              [Step("R1", "F", (a, b), (symbol(Fc.one(), t),))], BrauerClass(Fc))
    v = verify_certificate(cert)
    assert not v.accepted and v.step == 0 and v.reason == "RelationShape"


def test_unknown_step_kind(golden_text):
    doc = json.loads(golden_text)
    doc["steps"][2]["kind"] = "R9"
    with pytest.raises(UnknownStepKind):
        parse(dump_document(doc))


def test_truncated_position(golden_text):
    with pytest.raises(CertificateSyntaxError) as ei:
        parse(golden_text[:400])
    assert ei.value.line > 1 and ei.value.col >= 1
    v = verify_document(golden_text[:400])
    assert v.reason == "ParseError"


def test_bad_element_in_doc(golden_text):
    doc = json.loads(golden_text)
    doc["initial"]["symbols"][0] = "[s^3,(b0)+(b1)*nope)@R"
    with pytest.raises(BadElementGrammar):
        parse(dump_document(doc))


def test_version_and_kind_checked(golden_text):
    doc = json.loads(golden_text)
    doc["format-version"] = 2
    with pytest.raises(CertificateSyntaxError):
        parse(dump_document(doc))
    doc["format-version"] = 1
    doc["kind"] = "descent-instance"
    with pytest.raises(CertificateSyntaxError):
        parse(dump_document(doc))


# mutation robustness -------------------------------------------------------------


def _step(doc, kind, n=0):
    return [s for s in doc["steps"] if s["kind"] == kind][n]


def m_flip_split_witness(doc):
    _step(doc, "R3inv")["witness"]["x"] += "+s"


def m_flip_lemma_witness(doc):
    _step(doc, "Lemma33", 1)["witness"]["Y"] += "+b0"


def m_alter_chain(doc):
    _step(doc, "Corestrict")["witness"]["delta"] += "+s"


def m_drop_step(doc):
    del doc["steps"][4]


def m_swap_operands(doc):
    ops = _step(doc, "R2")["operands"]
    ops.reverse()


def m_relabel_tower(doc):
    doc["steps"][3]["tower"] = "T"


def m_alter_slot(doc):
    st = _step(doc, "R1inv")
    st["operands"][0] = st["operands"][0].replace("[s^3,", "[s^3+s,", 1)


def m_alter_param(doc):
    _step(doc, "R1inv", 1)["params"]["addend"] += "+1"


def m_alter_final(doc):
    doc["final"]["symbols"].pop(0)


def m_swap_steps(doc):
    # step 4 consumes a symbol produced by step 2
    doc["steps"][2], doc["steps"][4] = doc["steps"][4], doc["steps"][2]


MUTATIONS = [m_flip_split_witness, m_flip_lemma_witness, m_alter_chain, m_drop_step, m_swap_operands,
             m_relabel_tower, m_alter_slot, m_alter_param, m_alter_final, m_swap_steps]


def mutate_and_verify(text, op):
    doc = json.loads(text)
    op(doc)
    mtext = dump_document(doc)
    v = verify_document(mtext, "strict")
    same_claim = doc["initial"] == json.loads(text)["initial"] and doc["final"] == json.loads(text)["final"]
    return v, same_claim


@pytest.mark.parametrize("op", MUTATIONS, ids=lambda f: f.__name__)
def test_mutation_never_silently_accepted(golden_text, op):
    v, same_claim = mutate_and_verify(golden_text, op)
    assert not v.accepted or same_claim, f"{op.__name__} accepted with a changed claim"


def test_mutation_rejection_rate(golden_text):
    rejected = sum(not mutate_and_verify(golden_text, op)[0].accepted for op in MUTATIONS)
    # swapping R2 operands gives a valid proof of the same claim
    assert rejected >= len(MUTATIONS) - 1


def test_commuting_independent_steps_accepted(golden_text):
    doc = json.loads(golden_text)
    doc["steps"][4], doc["steps"][5] = doc["steps"][5], doc["steps"][4]
    assert verify_document(dump_document(doc), "strict").accepted
