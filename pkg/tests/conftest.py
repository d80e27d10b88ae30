import pytest

from motzkin.diagram import Diagram


# Reference 0/1 matrices with the row/column order they were drawn in.
MO3_J1_ORDER = ["|()", "|..", ".|.", "()|", "..|"]
MO3_J1 = [
    "11010",
    "11000",
    "00100",
    "10011",
    "00011",
]

MO4_J2_ORDER = ["||()", "||..", "|.|.", "|()|", "|..|", ".||.", "()||", "..||", ".|.|"]
MO4_J2 = [
    "110100000",
    "110000000",
    "001000000",
    "100110100",
    "000110000",
    "000001000",
    "000100110",
    "000000110",
    "000000001",
]

# the drawn 9x9 block of Mo5 J1, as diagrams
MO5_ROWS = ["|()()", "|(())", "|(..)", "|()..", "|.().", "|..()", "|(.).", "|.(.)", "|...."]
MO5_COLS = ["|....", "()|()", "().|.", "(.)|.", "()..|", "(.).|", "(())|", "(..)|", "()()|"]


def D(top, bottom):
    return Diagram.of(top, bottom)


_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    def record(number, ok, detail=""):
        _ACCEPTANCE[number] = (ok, detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip())
