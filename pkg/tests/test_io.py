import json
from pathlib import Path

import pytest

from braided_groupoids import io
from braided_groupoids.constructors import build_handy_group, build_nonhandy, handy_datum_is_braided
from braided_groupoids.errors import BadSection, NotAssociative, PsiCocycleViolation, SchemaError, UnknownFamily
from braided_groupoids.groups import cyclic, parse_ref
from braided_groupoids.verify import verify

from corpus import handy_instances, nonhandy_instances

DATA = Path(__file__).resolve().parent.parent / "data"
MANIFEST = json.loads((DATA / "manifest.json").read_text())


def test_round_trip_trivial_is_byte_identical():
    text = (DATA / "trivial.json").read_text()
    assert io.dumps(io.datum_to_json(io.datum_from_json(io.parse(text)))) == text


@pytest.mark.parametrize("name", sorted(MANIFEST))
def test_shipped_documents_reproduce_their_verdicts(name):
    text = (DATA / name).read_text()
    obj = io.load_any(io.parse(text))
    assert io.dumps(io.to_json(obj)) == text
    entry = MANIFEST[name]
    if entry["kind"] == "datum":
        assert verify(obj).verdict == entry["verdict"]
        assert (obj.n_objects, obj.D.order) == (entry["objects"], entry["order"])
    elif entry["kind"] == "handy-input":
        assert handy_datum_is_braided(obj).verdict == entry["verdict"]
    else:
        assert verify(build_nonhandy(obj)).verdict == entry["verdict"]


def test_order8_reloads_braided():
    d = io.datum_from_json(io.read(DATA / "nonhandy8.json"))
    assert d.D.order == 8 and verify(d).verdict == "braided"


def test_gamma_not_identity_is_bad_section():
    doc = io.read(DATA / "handy12.json")
    doc["gamma"][0] = doc["V"][1]
    with pytest.raises(BadSection) as err:
        io.datum_from_json(doc)
    assert err.value.path == "$.gamma[0]"


@pytest.mark.parametrize(
    "mutate,path",
    [
        (lambda d: d.pop("V"), "$.V"),
        (lambda d: d.update(kind="census"), "$.kind"),
        (lambda d: d.update(V=[0, "a"]), "$.V[1]"),
        (lambda d: d.update(H=[0, 99]), "$.H"),
        (lambda d: d.update(phi=[0]), "$.phi"),
        (lambda d: d["group"].update(order=5), "$.group.table"),
        (lambda d: d.update(gamma=7), "$.gamma"),
    ],
)
def test_schema_errors_carry_json_paths(mutate, path):
    doc = io.read(DATA / "handy12.json")
    mutate(doc)
    with pytest.raises(SchemaError) as err:
        io.datum_from_json(doc)
    assert err.value.path == path


def test_group_documents():
    assert io.group_from_json("C2xS3").order == 12
    assert io.group_from_json({"ref": "D4"}).same_table(parse_ref("D4"))
    G = io.group_from_json(io.group_to_json(cyclic(5)))
    assert G.same_table(cyclic(5))
    with pytest.raises(UnknownFamily) as err:
        io.group_from_json({"ref": "Q8"})
    assert err.value.path == "$.ref"
    t = cyclic(6).table.copy()
    t[2, 3], t[2, 5] = t[2, 5], t[2, 3]
    with pytest.raises(NotAssociative) as err:
        io.group_from_json({"label": "bad", "order": 6, "table": t.tolist()})
    assert err.value.path == "$.table"


def test_input_round_trips():
    for inp in list(handy_instances().values()) + list(nonhandy_instances().values()):
        doc = io.to_json(inp)
        back = io.load_any(io.parse(io.dumps(doc)))
        assert io.dumps(io.to_json(back)) == io.dumps(doc)


def test_nonhandy_loader_revalidates():
    doc = io.read(DATA / "nonhandy8_input.json")
    doc["P"] = {"ref": "C3"}
    with pytest.raises(PsiCocycleViolation):
        io.nonhandy_input_from_json(doc)


def test_built_data_round_trip():
    for inp in handy_instances().values():
        d = build_handy_group(inp)
        text = io.dumps(io.datum_to_json(d))
        assert io.dumps(io.datum_to_json(io.datum_from_json(io.parse(text)))) == text


def test_parse_rejects_bad_json():
    with pytest.raises(SchemaError):
        io.parse("{not json")
