"""Unit parsing, key-value files and separation grids."""

import math

import pytest

from caslens import build_grid, parse_kv_file, parse_length, parse_temperature


def test_parse_length_units():
    assert parse_length("1000 nm") == pytest.approx(1.0e-6, rel=1.0e-15)
    assert parse_length("1um") == pytest.approx(1.0e-6, rel=1.0e-15)
    assert parse_length("0.001mm") == pytest.approx(1.0e-6, rel=1.0e-15)
    assert parse_length("15cm") == pytest.approx(0.15, rel=1.0e-15)
    assert parse_length("2.5e-6") == 2.5e-6          # bare numbers are metres
    assert parse_length("1.5 m") == 1.5
    assert parse_length(3.0e-6) == 3.0e-6            # numbers pass through
    assert parse_length("+2um") == pytest.approx(2.0e-6)


def test_parse_length_errors():
    for bad in ("", "abc", "1 parsec", "1..2um", "1e999um"):
        with pytest.raises(ValueError):
            parse_length(bad)


def test_parse_temperature():
    assert parse_temperature("300") == 300.0
    assert parse_temperature("300K") == 300.0
    assert parse_temperature("300 K") == 300.0
    assert parse_temperature(77.0) == 77.0
    with pytest.raises(ValueError):
        parse_temperature("300C")
    with pytest.raises(ValueError):
        parse_temperature("warm")


def test_parse_kv_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# benchmark case\n"
        "R = 15cm\n"
        "R1= 25cm   # wide bubble\n"
        "D1 = 0.5um\n"
        "\n"
        "T = 300\n",
        encoding="utf-8",
    )
    settings = parse_kv_file(path)
    assert settings == {"R": "15cm", "R1": "25cm", "D1": "0.5um", "T": "300"}


def test_parse_kv_file_errors(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("R 15cm\n", encoding="utf-8")
    with pytest.raises(ValueError, match="bad.cfg:1"):
        parse_kv_file(path)
    path.write_text("R =\n", encoding="utf-8")
    with pytest.raises(ValueError, match="bad.cfg:1"):
        parse_kv_file(path)


def test_build_grid_inclusive_endpoints():
    grid = build_grid(1.0e-6, 3.0e-6, 0.05e-6)
    assert len(grid) == 41
    assert grid[0] == 1.0e-6
    assert grid[-1] == pytest.approx(3.0e-6, rel=1.0e-12)
    assert all(b > a for a, b in zip(grid, grid[1:]))


def test_build_grid_corner_cases():
    assert build_grid(2.0e-6, 1.0e-6, 0.5e-6) == []     # empty when stop < start
    assert build_grid(1.0e-6, 1.0e-6, 0.5e-6) == [1.0e-6]
    with pytest.raises(ValueError):
        build_grid(0.0, 1.0e-6, 0.5e-6)
    with pytest.raises(ValueError):
        build_grid(1.0e-6, 2.0e-6, 0.0)
