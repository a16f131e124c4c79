from elprior.tables import COLUMNS, render


def _rows():
    return [("s1", [(15, 1.0, 0.98, 0.99, -0.3, 0.15, 0.04, 0.03, 0.001, 0)])]


def test_render_csv():
    text = render(_rows(), "csv", provenance=("cmd", "seed: 1"))
    lines = text.split("\n")
    assert lines[0] == "# cmd"
    assert lines[1] == "# seed: 1"
    assert lines[2] == "# scenario: s1"
    assert lines[3] == ",".join(COLUMNS)
    assert lines[4].startswith("15,1,0.98,0.99,-0.3,0.15,")
    assert text.endswith("\n")
    assert "\r" not in text


def test_render_markdown():
    text = render(_rows(), "markdown")
    assert "| " + " | ".join(COLUMNS) + " |" in text
    assert "**s1**" in text
    assert "| 15 | 1 |" in text


def test_render_unknown_format():
    import pytest
    with pytest.raises(ValueError):
        render(_rows(), "json")
