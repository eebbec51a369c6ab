import pytest

from pyselfdual.codemodel import CodeType, ParameterError
from pyselfdual.mutable import MuTable, allowed_row_weights, build_table, mu_set

WEIGHTS_56 = [27, 25, 23, 21, 19, 17, 15, 13, 11]

# admissible overlaps of two A-rows of a Type I (56, 28, 12) code
TABLE_56 = {
    27: ["-", "-", "-", "-", "18", "16", "14", "12", "10"],
    25: ["-", "-", "-", "18", "16", "14,16", "12,14", "10,12", "8,10"],
    23: ["-", "-", "18", "16", "14,16", "12,14", "10,12,14", "8,10,12", "6,8,10"],
    21: ["-", "18", "16", "14,16", "12,14", "10,12,14", "8,10,12", "6,8,10,12", "4,6,8,10"],
    19: ["18", "16", "14,16", "12,14", "10,12,14", "8,10,12", "6,8,10,12", "4,6,8,10", "2,4,6,8,10"],
    17: ["16", "14,16", "12,14", "10,12,14", "8,10,12", "6,8,10,12", "4,6,8,10", "2,4,6,8,10", "0,2,4,6,8"],
    15: ["14", "12,14", "10,12,14", "8,10,12", "6,8,10,12", "4,6,8,10", "2,4,6,8,10", "0,2,4,6,8", "0,2,4,6,8"],
    13: ["12", "10,12", "8,10,12", "6,8,10,12", "4,6,8,10", "2,4,6,8,10", "0,2,4,6,8", "0,2,4,6,8", "0,2,4,6"],
    11: ["10", "8,10", "6,8,10", "4,6,8,10", "2,4,6,8,10", "0,2,4,6,8", "0,2,4,6,8", "0,2,4,6", "0,2,4,6"],
}


def parse_cell(text):
    if text == "-":
        return ()
    return tuple(int(v) for v in text.split(","))


def test_golden_table_56():
    table = build_table(56, 28, 12, "I")
    assert table.allowed_row_weights == WEIGHTS_56

    mismatches = []
    for w1, cells in TABLE_56.items():
        for w2, text in zip(WEIGHTS_56, cells):
            if table[(w1, w2)] != parse_cell(text):
                mismatches.append((w1, w2, table[(w1, w2)], text))
    error_msg = "FAILED! {} of 81 cells differ: {}".format(len(mismatches), mismatches)
    assert not mismatches, error_msg


def test_table_is_symmetric():
    table = build_table(56, 28, 12, "I")
    for w1 in table.allowed_row_weights:
        for w2 in table.allowed_row_weights:
            assert table[(w1, w2)] == table[(w2, w1)]


def test_mu_set():
    assert mu_set(27, 19, 56, 28, 12) == [18]
    assert mu_set(11, 11, 56, 28, 12) == [0, 2, 4, 6]
    assert mu_set(27, 27, 56, 28, 12) == []


def test_allowed_row_weights():
    assert allowed_row_weights(56, 28, 12, "I") == WEIGHTS_56
    assert allowed_row_weights(12, 6, 4, "I") == [5, 3]
    # type II rows have weight divisible by 4
    assert allowed_row_weights(8, 4, 4, "II") == [3]
    # full-row weight bound
    assert allowed_row_weights(56, 28, 12, "I", max_row_weight=16) == [15, 13, 11]
    # a single row is the all-ones word
    assert allowed_row_weights(2, 1, 2, "I") == [1]
    # linear targets only bound the weight from below
    assert allowed_row_weights(7, 4, 3, "linear") == [3, 2]
    # without the parity rule every weight in the window is kept
    assert allowed_row_weights(12, 6, 4, "I", parity=False) == [6, 5, 4, 3]


def test_render_small_table():
    expected = (
        "w(r1)\\w(r2) | 5     | 3\n"
        "5           | {4}   | {2}\n"
        "3           | {2}   | {0,2}\n"
    )
    rendered = build_table(12, 6, 4, "I").render()
    error_msg = "FAILED! rendered table\n{}".format(rendered)
    assert rendered == expected, error_msg


def test_render_marks_empty_cells():
    lines = build_table(56, 28, 12, "I").render().splitlines()
    assert len(lines) == 10
    assert lines[1].split(" | ")[1].strip() == "-"
    assert lines[1].split(" | ")[5].strip() == "{18}"


def test_invalid_parameters():
    with pytest.raises(ParameterError):
        build_table(13, 6, 4, "I")
    with pytest.raises(ParameterError):
        build_table(7, 4, 3, "linear")
    with pytest.raises(ParameterError):
        build_table(56, 28, 14, "I")


def test_table_equality():
    assert build_table(12, 6, 4, "I") == build_table(12, 6, 4, CodeType.TYPE_I)
    assert build_table(12, 6, 4, "I") != build_table(12, 6, 2, "I")
    assert isinstance(build_table(12, 6, 4, "I"), MuTable)
