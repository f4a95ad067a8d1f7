import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lambda_eit.config import (
    DEFAULTS,
    ConfigError,
    build_config,
    parse_config,
    parse_config_text,
    serialize_config,
)
from lambda_eit.errors import MissingColumn
from lambda_eit.sweeps import figure_tables
from lambda_eit.tables import CsvTable, format_number, render_svg

finite = st.floats(allow_nan=False, allow_infinity=False)


def polylines(svg):
    return re.findall(r'<polyline [^>]*points="([^"]*)"', svg)


# -- csv ------------------------------------------------------------------------


@given(st.lists(st.tuples(finite, finite, finite), min_size=0, max_size=20))
def test_csv_round_trip_is_exact(rows):
    t = CsvTable(("x", "y", "z"), rows)
    back = CsvTable.from_csv(t.to_csv())
    assert back.header == t.header
    assert back.rows == [tuple(r) for r in rows]


def test_csv_quotes_text_cells():
    t = CsvTable(("n", "identity"), [(1, "[A,S] = A")])
    text = t.to_csv()
    assert text == 'n,identity\n1,"[A,S] = A"\n'
    assert CsvTable.from_csv(text).rows == [(1.0, "[A,S] = A")]


def test_csv_file_round_trip(tmp_path):
    t = CsvTable(("a", "b"), [(0.1, 1e-300), (-0.0, 2.5)])
    t.write(tmp_path / "t.csv")
    assert CsvTable.read(tmp_path / "t.csv").rows == t.rows
    assert (tmp_path / "t.csv").read_bytes().count(b"\r") == 0


def test_format_number():
    assert format_number(0.1) == "0.10000000000000001"
    assert format_number(2) == "2"
    assert format_number("x") == "x"


def test_row_width_checked():
    with pytest.raises(ValueError):
        CsvTable(("a",), [(1, 2)])
    t = CsvTable(("a",))
    with pytest.raises(ValueError):
        t.append((1, 2))


def test_missing_column():
    t = CsvTable(("a", "b"), [(1, 2), (3, 4)])
    with pytest.raises(MissingColumn):
        t.column("c")
    with pytest.raises(MissingColumn):
        render_svg(t, "a", ("c",))


# -- svg ------------------------------------------------------------------------


def test_svg_two_points():
    svg = render_svg(CsvTable(("x", "y"), [(0, 0), (1, 1)]), "x", ("y",))
    lines = polylines(svg)
    assert len(lines) == 1
    assert len(lines[0].split()) == 2
    assert svg.startswith("<svg ") and svg.endswith("</svg>\n")


def test_svg_skips_non_finite_points():
    svg = render_svg(CsvTable(("x", "y"), [(0, 0), (1, float("nan")), (2, 1)]), "x", ("y",))
    assert len(polylines(svg)[0].split()) == 2


def test_svg_needs_two_rows():
    with pytest.raises(ValueError):
        render_svg(CsvTable(("x", "y"), [(0, 0)]), "x", ("y",))


def test_svg_figure_panel():
    table, x_col, y_cols = figure_tables()["fig2_a2"]
    svg = render_svg(table, x_col, y_cols)
    lines = polylines(svg)
    assert len(lines) == 2
    assert all(len(p.split()) == len(table.rows) for p in lines)
    assert render_svg(table, x_col, y_cols) == svg


# -- config ---------------------------------------------------------------------


def test_empty_config_gives_defaults():
    cfg = parse_config_text("")
    assert cfg.values() == {**DEFAULTS, "probe_amp_re": 1e-3, "probe_amp_im": 0.0}
    assert cfg.probe_amp == 1e-3


def test_config_overrides_and_comments(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# comment\n\nrabi = 2   # strong control\ndelta_c=-1.5\ng_root_n = 8e1\n")
    params, point, amp = parse_config(path)
    assert params.rabi == 2 and params.g_root_n == 80
    assert point.delta_c == -1.5 and point.delta_p == 0
    assert amp == 1e-3


@pytest.mark.parametrize(
    "text, line",
    [
        ("gamma_a = -1\n", 1),
        ("rabi = 1\nbogus = 2\n", 2),
        ("rabi = 1\nrabi = 2\n", 2),
        ("\nrabi = one\n", 2),
        ("rabi 1\n", 1),
        ("delta_p = nan\n", 1),
        ("delta_p = -2e6\n", 1),
    ],
)
def test_config_errors_carry_line(text, line):
    with pytest.raises(ConfigError, match=rf"cfg:{line}: "):
        parse_config_text(text, "cfg")


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(tmp_path / "nope.cfg")


def test_build_config_rejects_unknown_key():
    with pytest.raises(ConfigError):
        build_config({"temperature": 1.0})


@given(
    gamma_c=st.floats(0, 1),
    rabi=st.floats(0, 300),
    delta_p=st.floats(-5, 5),
    delta_c=st.floats(-5, 5),
    re=st.floats(-1, 1),
)
def test_config_round_trip(gamma_c, rabi, delta_p, delta_c, re):
    cfg = build_config(dict(gamma_c=gamma_c, rabi=rabi, delta_p=delta_p, delta_c=delta_c, probe_amp_re=re))
    assert parse_config_text(serialize_config(cfg)) == cfg
