import json

import pytest

from subfit import cli
from subfit.errors import InternalConsistencyError

from .conftest import CHAIN3, M3, SQUARE


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


class TestAnalyze:
    def test_chain(self, capsys, write):
        code, out = run(capsys, "analyze", write("c3.json", CHAIN3), "--json")
        rep = json.loads(out)
        assert code == 0
        assert rep["subfit"] is False
        assert rep["jacobson"]["verdict"] is False
        assert rep["xi"]["bot"] == "m"
        assert rep["theorem2"] is True and rep["chi_equals_xi"] is True

    def test_square(self, capsys, write):
        code, out = run(capsys, "analyze", write("sq.json", SQUARE), "--json")
        rep = json.loads(out)
        assert rep["subfit"] is True and rep["jacobson"]["verdict"] is True
        assert all(k == v for k, v in rep["xi"].items())

    def test_m3_skips(self, capsys, write):
        code, out = run(capsys, "analyze", write("m3.json", M3), "--json")
        rep = json.loads(out)
        assert code == 0 and rep["distributive"] is False
        assert "skipped" in rep["subfit"] and "skipped" in rep["theorem2"]

    def test_deterministic(self, capsys, write):
        path = write("c3.json", CHAIN3)
        _, a = run(capsys, "analyze", path, "--json")
        _, b = run(capsys, "analyze", path, "--json")
        assert a == b

    def test_text(self, capsys, write):
        code, out = run(capsys, "analyze", write("c3.json", CHAIN3))
        assert "subfit: False" in out and "xi: bot->m" in out

    def test_cap_skips(self, capsys, write):
        code, out = run(capsys, "analyze", write("c3.json", CHAIN3), "--json", "--cap-enum", "2")
        assert "skipped" in json.loads(out)["theorem2"]

    def test_parse_error(self, capsys, write):
        assert cli.main(["analyze", write("bad.json", "{")]) == 1

    def test_missing_file(self, tmp_path):
        assert cli.main(["analyze", str(tmp_path / "nope.json")]) == 1

    def test_internal_error_exit(self, monkeypatch, write):
        def boom(*a, **k):
            raise InternalConsistencyError("forced")
        monkeypatch.setattr(cli, "is_subfit", boom)
        assert cli.main(["analyze", write("c3.json", CHAIN3)]) == 2


class TestSweep:
    @pytest.mark.parametrize("size,count", [(0, 1), (1, 2), (3, 9)])
    def test_sizes(self, capsys, size, count):
        code, out = run(capsys, "sweep", str(size), "--json")
        summary = json.loads(out)
        assert code == 0
        assert summary["lattices"] == count
        assert summary["failures"] == []
        assert summary["counts"]["theorem2"]["fail"] == 0

    def test_size_limit(self):
        assert cli.main(["sweep", "6"]) == 1

    def test_failure_exit(self, capsys, monkeypatch):
        monkeypatch.setattr(cli, "theorem2_check", lambda L, cap: False)
        code, _ = run(capsys, "sweep", "1")
        assert code == 2


class TestCurious:
    def test_text(self, capsys):
        code, out = run(capsys, "curious")
        assert code == 0
        assert 'xi(empty)   = {"exceptions": {}, "tail": "inf", "star": 0}' in out
        assert 'xi^2(empty) = {"exceptions": {}, "tail": "inf", "star": "inf"}' in out
        assert "xi is a nucleus: False" in out

    def test_json_and_samples(self, capsys):
        code, out = run(capsys, "curious", "--json", "--samples", "50", "--seed", "4")
        rep = json.loads(out)
        assert rep["samples"] == 50 and rep["is_nucleus"] is False
        assert rep["checks"]["inflationary"] == 50


class TestSpace:
    def test_sierpinski(self, capsys, write):
        path = write("s.json", '{"points":["a","b"],"opens":[[],["a"],["a","b"]]}')
        code, out = run(capsys, "space", path, "--json")
        rep = json.loads(out)
        assert code == 0 and rep["preceq_cross_check"] and rep["jacobson_space"] is False

    def test_spec(self, capsys, write):
        code, out = run(capsys, "space", write("c3.json", CHAIN3), "--spec", "--json")
        rep = json.loads(out)
        assert rep["opens_frame"]["size"] == 3
        assert len(rep["space"]["points"]) == 2

    def test_discrete(self, capsys, write):
        path = write("d.json", '{"points":["a","b"],"opens":[[],["a"],["b"],["a","b"]]}')
        code, out = run(capsys, "space", path, "--json")
        assert json.loads(out)["jacobson_space"] is True

    def test_invalid_space(self, capsys, write):
        path = write("bad.json", '{"points":["a","b"],"opens":[[],["a"],["b"]]}')
        assert cli.main(["space", path]) == 1
