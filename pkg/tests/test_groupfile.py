import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import permutations
from fix3.constructors import mathieu11
from fix3.errors import GroupFileError
from fix3.groupfile import format_group_file, parse_group_file, parse_group_text
from fix3.perm import PermGroup


def test_sym5_file():
    G = parse_group_text("degree 5\ngen (1 2)\ngen (1 2 3 4 5)\n")
    assert G.order() == 120


def test_genimg_and_comments():
    G = parse_group_text("# the 5-cycle\ndegree 5   # points\n\ngenimg 2 3 4 5 1\ngen ()\n")
    assert G.order() == 5
    assert G.generators[1].is_identity()


@pytest.mark.parametrize("text,line", [
    ("degree 3\ngenimg 1 1 2\n", 2),
    ("degree 3\ngenimg 1 2\n", 2),
    ("degree 3\ngen (1 4)\n", 2),
    ("degree 3\ngen (1 2)(2 3)\n", 2),
    ("degree 3\ngen (1 2\n", 2),
    ("degree 3\ngen 1 2\n", 2),
    ("degree 3\ngen (1,2)\n", 2),
    ("gen (1 2)\n", 1),
    ("degree 3\ndegree 4\n", 2),
    ("degree 3\n\nfoo 1\n", 3),
    ("degree x\n", 1),
])
def test_malformed_lines_report_line_number(text, line):
    with pytest.raises(GroupFileError) as err:
        parse_group_text(text)
    assert err.value.lineno == line
    assert f"line {line}" in str(err.value)


def test_missing_degree():
    with pytest.raises(GroupFileError):
        parse_group_text("# nothing\n")


def test_m11_round_trip_is_byte_identical(tmp_path):
    text = format_group_file(mathieu11())
    path = tmp_path / "m11.txt"
    path.write_bytes(text.encode("utf-8"))
    G = parse_group_file(path)
    assert format_group_file(G).encode("utf-8") == text.encode("utf-8")
    assert G.generators == mathieu11().generators
    assert G.order() == 7920


@settings(max_examples=50)
@given(st.lists(permutations(degree=9), min_size=0, max_size=4))
def test_round_trip(gens):
    G = PermGroup(gens, 9)
    G2 = parse_group_text(format_group_file(G))
    assert G2.generators == G.generators
