import json

import numpy as np
import pytest

from turtlesynth.cli import main


SQUARE = "\n".join([
    "get repeat", "change 2 in 1 to 4",
    "get move", "connect 2 inside 1",
    "get turn", "connect 3 under 2", "change 30 in 3 to 90",
]) + "\n"


def run(args):
    return main(args)


@pytest.fixture
def square_program(tmp_path):
    path = tmp_path / "square.cmds"
    path.write_text(SQUARE)
    return path


class TestRenderAndDist:
    def test_render_then_self_distance_zero(self, tmp_path, square_program,
                                            capsys):
        out = tmp_path / "square.traj"
        assert run(["render", "--program", str(square_program),
                    "--out", str(out)]) == 0
        pts = np.loadtxt(out)
        assert pts[0].tolist() == [0.0, 0.0]
        assert run(["dist", str(out), str(out)]) == 0
        assert capsys.readouterr().out.strip() == "0"

    def test_render_writes_manifest(self, tmp_path, square_program):
        out = tmp_path / "square.traj"
        run(["render", "--program", str(square_program), "--out", str(out)])
        with open(tmp_path / "square.manifest.json") as f:
            manifest = json.load(f)
        assert manifest["subcommand"] == "render"
        assert str(square_program) in manifest["inputs"]
        assert len(manifest["inputs"][str(square_program)]) == 64

    def test_bad_program_is_input_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.cmds"
        bad.write_text("get move\nfrobnicate\n")
        assert run(["render", "--program", str(bad),
                    "--out", str(tmp_path / "x")]) == 3
        assert "input error" in capsys.readouterr().err

    def test_missing_required_option_is_usage_error(self, tmp_path):
        assert run(["render", "--out", str(tmp_path / "x")]) == 2


class TestCorpusCommands:
    def test_generate_validate_round_trip(self, tmp_path, capsys):
        out = tmp_path / "corpus"
        assert run(["corpus", "generate", "--out", str(out),
                    "--n", "4", "--seed", "1"]) == 0
        assert run(["corpus", "validate", str(out)]) == 0
        assert "4 items OK" in capsys.readouterr().out

    def test_generate_is_seed_deterministic(self, tmp_path):
        docs = []
        for name in ("a", "b"):
            out = tmp_path / name
            run(["corpus", "generate", "--out", str(out),
                 "--n", "3", "--seed", "5", "--noise", "2.0"])
            docs.append(sorted(
                p.read_text() for p in out.glob("*.json")
                if p.name != "manifest.json"))
        assert docs[0] == docs[1]

    def test_validate_rejects_broken_item(self, tmp_path, capsys):
        out = tmp_path / "corpus"
        out.mkdir()
        (out / "bad.json").write_text(json.dumps({
            "id": "bad", "commands": ["remove 7"], "trajectory": [[0, 0]],
        }))
        assert run(["corpus", "validate", str(out)]) == 3


class TestFitAndSynth:
    def test_fit_writes_model_and_manifest(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        run(["corpus", "generate", "--out", str(corpus),
             "--n", "5", "--seed", "2"])
        model_path = tmp_path / "model.json"
        assert run(["fit", "--corpus", str(corpus),
                    "--out", str(model_path)]) == 0
        with open(model_path) as f:
            model = json.load(f)
        assert model["mode"] == "nonuniform"
        assert (tmp_path / "model.manifest.json").exists()

    def test_synth_completes_one_missing_command(self, tmp_path,
                                                 square_program, capsys):
        target = tmp_path / "square.traj"
        run(["render", "--program", str(square_program),
             "--out", str(target)])
        prefix = tmp_path / "prefix.cmds"
        prefix.write_text("\n".join(SQUARE.splitlines()[:-1]) + "\n")
        out = tmp_path / "result.json"
        assert run(["synth", "--algo", "idps", "--budget", "50000",
                    "--cost", "2", "--program", str(prefix),
                    "--target", str(target), "--out", str(out)]) == 0
        with open(out) as f:
            doc = json.load(f)
        assert doc["distance"] == 0.0
        assert doc["candidates"][-1]["commands_delta"] == \
            ["change 30 in 3 to 90"]

    def test_synth_sampling_requires_seed(self, tmp_path, square_program):
        target = tmp_path / "t.traj"
        run(["render", "--program", str(square_program), "--out", str(target)])
        assert run(["synth", "--algo", "uniform", "--program",
                    str(square_program), "--target", str(target),
                    "--out", str(tmp_path / "r.json")]) == 2

    def test_synth_is_deterministic_up_to_timing(self, tmp_path,
                                                 square_program):
        target = tmp_path / "t.traj"
        run(["render", "--program", str(square_program), "--out", str(target)])
        docs = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            run(["synth", "--algo", "uniform", "--budget", "90", "--cost",
                 "3", "--seed", "4", "--program", str(square_program),
                 "--target", str(target), "--out", str(out)])
            with open(out) as f:
                doc = json.load(f)
            doc.pop("elapsed_seconds")
            docs.append(doc)
        assert docs[0] == docs[1]


class TestEval:
    def test_eval_writes_full_report(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        run(["corpus", "generate", "--out", str(corpus), "--n", "2",
             "--seed", "3", "--min-commands", "4", "--max-commands", "5"])
        report = tmp_path / "report"
        assert run(["eval", "--corpus", str(corpus), "--algos",
                    "idps,uniform", "--k", "1,2", "--budget", "200",
                    "--cost", "2", "--seed", "0",
                    "--out", str(report)]) == 0
        for name in ("results.csv", "summary.json", "accuracy.svg",
                     "error.svg", "error_reduction.svg", "manifest.json"):
            assert (report / name).exists()
        with open(report / "summary.json") as f:
            summary = json.load(f)
        keys = {(g["algorithm"], g["k"]) for g in summary["groups"]}
        assert keys == {("idps", 1), ("idps", 2),
                        ("uniform", 1), ("uniform", 2)}

    def test_eval_rejects_unknown_algorithm(self, tmp_path):
        corpus = tmp_path / "corpus"
        run(["corpus", "generate", "--out", str(corpus), "--n", "1",
             "--seed", "1"])
        assert run(["eval", "--corpus", str(corpus), "--algos", "magic",
                    "--seed", "0", "--out", str(tmp_path / "r")]) == 2
