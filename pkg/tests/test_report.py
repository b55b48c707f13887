import json

import pytest

from swtorsion.errors import ConsistencyError
from swtorsion.fourman import KodairaClass
from swtorsion.report import ReportDocument, build_report, report_for_genus
from swtorsion.surface import MappingClass, paper_phi
from swtorsion.torus3 import GroupPresentation, mapping_torus_presentation


@pytest.fixture(scope="module")
def genus2():
    return report_for_genus(2)


def test_report_fields(genus2):
    doc = genus2
    assert doc.genus == 2
    assert doc.twist_word == "Tb2 Ta2^-1 Ta1"
    assert doc.hypothesis_holds
    assert doc.b1_y == 2
    assert doc.betti_y == [1, 2, 2, 1]
    assert doc.h1_y.text == "Z^2"
    assert GroupPresentation.parse(doc.pi1_presentation) == mapping_torus_presentation(2, paper_phi(2))
    assert doc.alexander_t.text == "1 - 3*t + t^2"
    assert doc.milnor_torsion.text.startswith("t^-1 - 3")
    assert doc.sw_x.text == "s^-2 - 3 + s^2"
    assert doc.sw_x_classes == ["t"]
    assert (doc.b1_x, doc.b2_x, doc.b3_x) == (2, 2, 2)
    assert (doc.b_plus, doc.b_minus, doc.signature) == (1, 1, 0)
    assert doc.euler_characteristic == 0
    assert doc.intersection_form.determinant == -1
    assert (doc.canonical_k, doc.k_squared, doc.k_dot_omega) == (2, 0, 2)
    assert doc.kodaira == KodairaClass.ONE
    assert doc.noether.holds
    assert not doc.lefschetz.lefschetz_type
    assert doc.obstructions.psc_metric == "excluded"
    assert doc.oracle_quotient.text == "1 - 2*t + t^2"


def test_report_json_round_trip(genus2):
    payload = json.loads(genus2.model_dump_json())
    assert payload["kodaira"] == "1"
    assert payload["intersection_form"]["matrix"] == [[0, 1], [1, None]]
    assert ReportDocument.model_validate(payload) == genus2


def test_consistency_check_rejects_tampered_documents(genus2):
    with pytest.raises(ConsistencyError):
        genus2.model_copy(update={"euler_characteristic": 4}).check_consistency()
    with pytest.raises(ConsistencyError):
        genus2.model_copy(update={"b1_y": 3}).check_consistency()
    with pytest.raises(ConsistencyError):
        genus2.model_copy(update={"kodaira": KodairaClass.TWO}).check_consistency()
    with pytest.raises(ConsistencyError):
        genus2.model_copy(update={"betti_y": [1, 3, 3, 1]}).check_consistency()


def test_report_genus_one():
    doc = report_for_genus(1)
    assert doc.alexander.text == "1"
    assert doc.kodaira == KodairaClass.ZERO
    assert doc.canonical_k == 0


def test_report_with_zero_euler_class():
    doc = build_report(MappingClass.parse("Tb2 Ta2^-1 Ta1", 2), [0, 0])
    assert (doc.b1_x, doc.b2_x, doc.b3_x) == (3, 4, 3)
    assert doc.lefschetz.lefschetz_type
    assert doc.sw_x.text == "s1^-2 - 3 + s1^2"


def test_report_identity_monodromy_without_hypothesis():
    doc = build_report(MappingClass(1))
    assert not doc.hypothesis_holds
    assert doc.b1_y == 3
    assert doc.betti_y == [1, 3, 3, 1]
    assert doc.oracle_quotient is None or doc.oracle_quotient.variables == ["t"]
