from __future__ import annotations

from pathlib import Path

import pytest

from sdex import dumps, loads, space_to_dict, standard_simplex
from sdex.cli import EXIT_BUDGET, EXIT_FALSE, EXIT_OK, EXIT_USAGE, run


class TestMake:
    def test_simplex(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["make", "simplex", "-k", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "f-vector: (3, 3, 1)" in out
        assert "dim_bound: 2\n" in out

    def test_subdivision(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["make", "sd", "-n", "2", "--of", "simplex:2"]) == EXIT_OK
        assert "f-vector: (25, 60, 36)" in capsys.readouterr().out

    def test_nerve(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["make", "nerve", "--category", "Z2", "-K", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "f-vector: (1, 1, 1)" in out
        assert "(truncated)" in out

    def test_outputs(self, tmp_path: Path) -> None:
        json_path = tmp_path / "horn.json"
        dot_path = tmp_path / "horn.dot"
        args = ["make", "horn", "-k", "2", "-i", "1"]
        assert run([*args, "--json", str(json_path), "--dot", str(dot_path)]) == 0
        data = loads(json_path.read_text(encoding="utf-8"))
        assert len(data["simplices"]) == 5
        assert dot_path.read_text(encoding="utf-8").startswith('digraph "skeleton"')
        assert run(["validate", "--in", str(json_path)]) == EXIT_OK

    def test_budget(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["make", "sd", "-n", "9", "--of", "simplex:0"]) == EXIT_BUDGET
        assert "exceeds the budget" in capsys.readouterr().err


class TestMaps:
    def test_count(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["maps", "--of", "simplex:0", "--to", "simplex:2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "3"

    def test_enumerate(self, tmp_path: Path) -> None:
        path = tmp_path / "maps.json"
        args = ["maps", "--of", "simplex:1", "--to", "simplex:1", "--json", str(path)]
        assert run(args) == EXIT_OK
        assert len(loads(path.read_text(encoding="utf-8"))) == 3


class TestLifting:
    def test_kan_fails(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["kan", "--of", "simplex:1", "-K", "2"]) == EXIT_FALSE
        assert "Λ^0_2" in capsys.readouterr().out

    def test_kan_holds(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["kan", "--of", "nerve:Z2", "-K", "3"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("holds")

    def test_verdict_json(self, tmp_path: Path) -> None:
        path = tmp_path / "verdict.json"
        assert run(["kan", "--of", "simplex:1", "--json", str(path)]) == EXIT_FALSE
        data = loads(path.read_text(encoding="utf-8"))
        assert data["horn"] == {"k": 2, "i": 0}

    @pytest.mark.parametrize("jobs", ["1", "2"])
    def test_fib(self, jobs: str) -> None:
        args = ["fib", "--of", "horn:2:0", "-n", "1", "-K", "2", "--jobs", jobs]
        assert run(args) == EXIT_FALSE


class TestDistances:
    def test_pair(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["dist", "--of", "horn:2:0", "1", "2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "2"

    def test_unknown_vertex(self) -> None:
        assert run(["dist", "--of", "simplex:1", "0", "5"]) == EXIT_USAGE

    def test_lemma2d(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["dist", "--lemma2d", "-n", "2"]) == EXIT_OK
        assert capsys.readouterr().out.strip().endswith(": 4")

    def test_lemma3d(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["dist", "--lemma3d", "2", "-n", "1"]) == EXIT_OK
        assert "0 violations" in capsys.readouterr().out


class TestRays:
    def test_verified(self, tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
        path = tmp_path / "rays.svg"
        assert run(["rays", "-n", "2", "--svg", str(path)]) == EXIT_OK
        assert "4 rays, 36 triangles" in capsys.readouterr().out
        assert path.read_text(encoding="utf-8").startswith("<svg")


class TestTower:
    def test_certificate(self, capsys: pytest.CaptureFixture[str]) -> None:
        # the certificate holds exactly when no stage admits a lift
        assert run(["tower", "-n", "0", "-j", "1", "-k", "2", "--certify"]) == 1
        assert "certificate holds" in capsys.readouterr().out

    def test_stages(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["tower", "-n", "0", "-j", "1", "-k", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert all(line.endswith("d(x,y) = 2") for line in lines)


class TestCategoryChecks:
    def test_groupoid(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["cat-check", "groupoid", "--category", "Z2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "groupoid"

    def test_fractions(self, capsys: pytest.CaptureFixture[str]) -> None:
        assert run(["cat-check", "fractions", "--category", "V"]) == EXIT_FALSE
        assert capsys.readouterr().out.startswith("span condition fails")

    def test_injectivity(self) -> None:
        assert run(["cat-check", "injectivity", "--category", "Z2"]) == EXIT_OK

    def test_from_file(self, tmp_path: Path) -> None:
        path = tmp_path / "monoid.json"
        path.write_text(
            dumps({"elements": ["1", "e"], "table": [["1", "e"], ["e", "e"]]}),
            encoding="utf-8",
        )
        assert run(["cat-check", "groupoid", "--in", str(path)]) == EXIT_FALSE

    def test_unknown_category(self) -> None:
        assert run(["cat-check", "groupoid", "--category", "Z7"]) == EXIT_USAGE


class TestErrors:
    def test_invalid_space(self, tmp_path: Path) -> None:
        data = space_to_dict(standard_simplex(2))
        data["simplices"][-1]["faces"][0]["target"]["id"] = 0
        path = tmp_path / "bad.json"
        path.write_text(dumps(data), encoding="utf-8")
        assert run(["validate", "--in", str(path)]) == EXIT_FALSE
        assert run(["kan", "--in", str(path)]) == EXIT_USAGE

    def test_malformed_file(self, tmp_path: Path) -> None:
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert run(["validate", "--in", str(path)]) == EXIT_USAGE

    def test_missing_file(self, tmp_path: Path) -> None:
        assert run(["validate", "--in", str(tmp_path / "nope.json")]) == EXIT_USAGE

    @pytest.mark.parametrize(
        "args",
        [
            pytest.param(["kan", "--of", "blob:1"], id="specifier"),
            pytest.param(["kan", "--of", "simplex:x"], id="integer"),
            pytest.param(["kan"], id="no-space"),
            pytest.param(["frobnicate"], id="verb"),
            pytest.param(["make", "horn", "-k", "2", "-i", "5"], id="horn-index"),
        ],
    )
    def test_usage(self, args: list[str]) -> None:
        assert run(args) == EXIT_USAGE
