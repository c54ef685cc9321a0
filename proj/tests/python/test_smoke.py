from fractions import Fraction
from pathlib import Path

import pytest

import quivergit

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


@pytest.fixture(scope="module")
def diamond():
    return quivergit.load(FIXTURES / "diamond.quiver")


def test_diamond_chambers(diamond):
    assert diamond.num_chambers == 5
    assert sorted(diamond.picard_numbers()) == [1, 2, 2, 2, 3]
    labels = diamond.chamber_labels
    assert len(labels) == len(set(labels)) == 5

    matrix = diamond.stable_matrix()
    row_sizes = sorted(sum(row) for row in matrix)
    assert row_sizes == [1, 1, 2, 2, 5]
    for i in range(5):
        assert matrix[i][i]

    full = next(label for label, row in zip(labels, matrix) if sum(row) == 5)
    assert sorted(diamond.pseudoeffective(full)) == sorted(labels)


def test_diamond_report_is_exact(diamond):
    data = quivergit.report(diamond)
    assert len(data["walls"]) == 14
    always = [w for w in data["walls"] if w["always"]]
    assert [w["e"] for w in always] == [[0, 0, 0, 1], [0, 0, 1, 1], [0, 1, 1, 1]]

    limits = {}
    for chamber in data["chambers"]:
        for name, entry in chamber["divisor_characters"].items():
            limits[name] = entry["slice_limit"]
    assert limits["a"]["at"] == [Fraction(-1), Fraction(2)]
    assert limits["e"]["at"] == [Fraction(-1), Fraction(-2)]
    assert limits["c"]["dir"] == [Fraction(1), Fraction(0)]

    witness = data["chambers"][0]["witness"]
    assert all(isinstance(x, Fraction) for x in witness)


def test_locate_and_oracle(diamond):
    assert diamond.locate([18, -13, 17, -22]) in diamond.chamber_labels
    assert diamond.locate([0, 0, 0, 0]).startswith("on wall")
    ok, failures = diamond.oracle_check()
    assert ok and not failures


def test_svg_and_tables(diamond):
    svg = diamond.svg(viewport=("-1", "3", "-2", "2"), yscale="1/2")
    assert svg.startswith("<svg")
    assert svg.count('class="wall"') == 7
    assert 'class="chamber"' in svg
    text = diamond.tables()
    assert "stable chambers" in text


def test_hirzebruch_fixture():
    doc = quivergit.load(FIXTURES / "hirzebruch.quiver")
    assert doc.num_chambers == 2
    assert sorted(doc.picard_numbers()) == [1, 2]
    sizes = sorted(len(doc.pseudoeffective(label)) for label in doc.chamber_labels)
    assert sizes == [1, 2]


def test_calculators_and_errors():
    assert quivergit.picard_mds_quotient(6, 0, 1) == 5
    assert quivergit.picard_general(2, 1) == 1
    assert quivergit.kernel_basis([1, 1, 1, 1]) == [
        [1, -1, 0, 0],
        [0, 1, -1, 0],
        [0, 0, 1, -1],
    ]
    verdict = quivergit.king_semistability(
        ["0", "1"], [("f", "0", "1")], [1, 1], {"f": True}, [1, -1]
    )
    assert verdict == "stable"
    with pytest.raises(ValueError):
        quivergit.analyze("vertices: 0 1\nd: 2 1\n")
    with pytest.raises(ValueError):
        quivergit.analyze("vertices: 0\n")
