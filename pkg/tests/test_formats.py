import csv
import io

import pytest

from barkernest.analysis import sac, scc
from barkernest.core import BinarySequence, GenericSet, generate_ccc
from barkernest.errors import FormatError
from barkernest.extend import NestingPlan, barker_extend, cdos_extend, plan_length
from barkernest.formats import (
    dumps_json,
    dumps_text,
    loads_json,
    loads_text,
    metric_csv,
    profile_csv,
    read_set,
    write_set,
)


def artifacts():
    code = generate_ccc(2, 1)
    yield code[0]
    yield code[3]
    yield generate_ccc(1, 0)[1]
    yield cdos_extend(code[1], 3)
    yield barker_extend(code[2], plan_length(20))
    yield barker_extend(code[2], plan_length(8, "exhaustive"))
    yield barker_extend(code[0], BinarySequence([-1, 1, 1]))
    yield GenericSet((BinarySequence([1, -1, 1]),) * 3)


@pytest.mark.parametrize("s", list(artifacts()), ids=lambda s: type(s).__name__)
def test_json_round_trip(s):
    text = dumps_json(s)
    back = loads_json(text)
    assert type(back) is type(s)
    assert back.chips_equal(s)
    assert back == s or isinstance(s, GenericSet)
    assert dumps_json(back) == text


@pytest.mark.parametrize("s", list(artifacts()), ids=lambda s: type(s).__name__)
def test_text_round_trip(s):
    text = dumps_text(s)
    back = loads_text(text)
    assert back.chips_equal(s)
    assert dumps_text(back) == text


def test_text_layout():
    text = dumps_text(generate_ccc(1, 1)[0])
    assert text.splitlines() == [text.splitlines()[0], "++", "+-"]
    assert text.startswith("# generated_by barkernest ")


def test_descriptor_round_trip():
    s = generate_ccc(3, 1)[6]
    back = loads_json(dumps_json(s))
    assert back.descriptor == s.descriptor
    assert back.set_index == 6


def test_extended_document_keeps_plan_and_base():
    ext = barker_extend(generate_ccc(2, 1)[1], plan_length(12))
    back = loads_json(dumps_json(ext))
    assert back.plan == ext.plan
    assert back.base == ext.base
    assert back.envelope == ext.envelope


@pytest.mark.parametrize(
    "bad",
    ["", "++\n\n+-\n", "++ \n+-\n", "+0\n+-\n", "++\n+\n"],
)
def test_text_rejects(bad):
    with pytest.raises(FormatError):
        loads_text(bad)


def test_json_rejects_garbage():
    with pytest.raises(FormatError):
        loads_json("{not json")
    with pytest.raises(FormatError):
        loads_json('{"format_version": 99, "sequences": ["+"]}')
    good = dumps_json(generate_ccc(1, 1)[0])
    with pytest.raises(FormatError):
        loads_json(good.replace('"++"', '"+0"'))


def test_json_rejects_inconsistent_plan():
    text = dumps_json(barker_extend(generate_ccc(1, 1)[0], plan_length(5)))
    with pytest.raises(FormatError):
        loads_json(text.replace('"+++-+"', '"++-++"'))


def test_read_write_files(tmp_path):
    s = barker_extend(generate_ccc(2, 1)[0], NestingPlan.from_factors([(3, 0), (4, 1)]))
    p = write_set(s, tmp_path / "a.json")
    q = write_set(s, tmp_path / "a.txt", "text")
    assert read_set(p) == s
    assert read_set(q).chips_equal(s)
    write_set(read_set(p), tmp_path / "b.json")
    assert (tmp_path / "b.json").read_bytes() == p.read_bytes()


def _rows(text):
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.reader(io.StringIO("\n".join(body))))


def test_profile_csv_row_count():
    ext = barker_extend(generate_ccc(1, 2)[0], plan_length(7))
    rows = _rows(profile_csv(sac(ext)))
    assert rows[0] == ["lag", "value"]
    assert len(rows) - 1 == 2 * ext.length - 1
    assert rows[1 + ext.length - 1] == ["0", str(2 * ext.length)]


def test_profile_csv_scc_rows():
    code = generate_ccc(1, 1)
    a, b = cdos_extend(code[0], 2), code[1]
    rows = _rows(profile_csv(scc(a, b)))
    assert len(rows) - 1 == a.length + b.length - 1
    assert all(r[1] == "0" for r in rows[1:])


def test_metric_csv():
    from fractions import Fraction

    rows = _rows(metric_csv([(13, "smr", Fraction(1, 13))]))
    assert rows == [["multiplier", "metric", "value_fraction", "value_decimal"], ["13", "smr", "1/13", "0.07692307692"]]
