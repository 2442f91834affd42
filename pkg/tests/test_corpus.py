import json
import random

import numpy as np
import pytest

from turtlesynth.corpus import (
    CorpusItem,
    ParseError,
    ReplayError,
    SyntheticSpec,
    generate_synthetic_corpus,
    load_corpus,
    load_item,
    random_session,
    save_corpus,
    save_item,
    target_trajectory,
)
from turtlesynth.editing import Get, format_command, replay
from turtlesynth.hausdorff import hausdorff
from turtlesynth.lang import interpret


def write_item(path, doc):
    with open(path, "w") as f:
        json.dump(doc, f)


class TestLoading:
    def test_empty_directory(self, tmp_path):
        assert load_corpus(tmp_path) == []

    def test_worked_editor_session_item(self, tmp_path):
        doc = {
            "id": "figure-1b",
            "commands": ["get repeat", "get move", "connect 2 inside 1",
                         "get turn", "connect 3 under 2",
                         "change 30 in 3 to 120"],
            "trajectory": [[0, 0], [0, 50]],
        }
        write_item(tmp_path / "a.json", doc)
        [item] = load_corpus(tmp_path)
        root = item.program().roots[0][0]
        assert root.kind == "repeat"
        assert [(b.kind, b.value) for b in root.body] == \
            [("move", None), ("turn", 120)]

    def test_bad_json_reports_position(self, tmp_path):
        (tmp_path / "bad.json").write_text('{"id": "x", \n  oops')
        with pytest.raises(ParseError, match="line 2"):
            load_item(tmp_path / "bad.json")

    def test_bad_command_reports_index(self, tmp_path):
        write_item(tmp_path / "a.json", {
            "id": "x", "commands": ["get move", "frob 3"],
            "trajectory": [[0, 0]],
        })
        with pytest.raises(ParseError, match="command 1"):
            load_item(tmp_path / "a.json")

    def test_infeasible_replay_reports_index(self, tmp_path):
        write_item(tmp_path / "a.json", {
            "id": "x",
            "commands": ["get move", "connect 5 under 1", "get turn"],
            "trajectory": [[0, 0]],
        })
        with pytest.raises(ReplayError) as e:
            load_item(tmp_path / "a.json")
        assert e.value.index == 1

    def test_empty_trajectory_rejected(self, tmp_path):
        write_item(tmp_path / "a.json", {
            "id": "x", "commands": ["get move"], "trajectory": [],
        })
        with pytest.raises(ParseError):
            load_item(tmp_path / "a.json")


class TestRoundTrip:
    def test_save_load_is_exact(self, tmp_path):
        spec = SyntheticSpec(seed=5, noise=2.5)
        items = generate_synthetic_corpus(spec, 5)
        save_corpus(items, tmp_path)
        loaded = load_corpus(tmp_path)
        assert [i.id for i in loaded] == [i.id for i in items]
        for a, b in zip(items, loaded):
            assert a.commands == b.commands
            assert np.array_equal(a.trajectory, b.trajectory)
            assert [format_command(c) for c in a.commands] == \
                [format_command(c) for c in b.commands]


class TestSyntheticGeneration:
    def test_same_seed_same_corpus(self):
        a = generate_synthetic_corpus(SyntheticSpec(seed=11, noise=3.0), 8)
        b = generate_synthetic_corpus(SyntheticSpec(seed=11, noise=3.0), 8)
        for x, y in zip(a, b):
            assert x.commands == y.commands
            assert np.array_equal(x.trajectory, y.trajectory)

    def test_noiseless_trajectories_match_interpretation(self):
        for item in generate_synthetic_corpus(SyntheticSpec(seed=2), 10):
            drawn = interpret(item.program())
            assert hausdorff(item.trajectory, drawn) == 0.0

    def test_noise_bound(self):
        sigma = 3.0
        items = generate_synthetic_corpus(
            SyntheticSpec(seed=7, noise=sigma), 200)
        within = sum(
            hausdorff(item.trajectory, interpret(item.program())) <= 5 * sigma
            for item in items)
        assert within / len(items) >= 0.99

    def test_sequences_have_requested_length_and_replay(self):
        spec = SyntheticSpec(seed=3, min_commands=8, max_commands=12)
        for item in generate_synthetic_corpus(spec, 20):
            assert 8 <= len(item.commands) <= 12
            replay(item.commands)  # must not raise

    def test_every_command_family_appears_in_a_large_corpus(self):
        from turtlesynth.editing import coarsen
        items = generate_synthetic_corpus(SyntheticSpec(seed=1), 50)
        tags = {coarsen(c) for item in items for c in item.commands}
        assert tags == {"Get", "Remove", "Connect", "Change", "Separate"}


class TestTargetTrajectory:
    def test_registers_first_point_to_origin(self):
        item = CorpusItem("x", (Get("move"),),
                          np.array([[7.0, 9.0], [7.0, 59.0]]))
        t = target_trajectory(item)
        assert (t[0] == [0.0, 0.0]).all()
        gaps = np.linalg.norm(np.diff(t, axis=0), axis=1)
        assert (gaps <= 5.0 + 1e-9).all()

    def test_noiseless_target_matches_program_exactly(self):
        [item] = generate_synthetic_corpus(SyntheticSpec(seed=19), 1)
        t = target_trajectory(item)
        assert hausdorff(t, interpret(item.program())) == 0.0
