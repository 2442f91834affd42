import random
from dataclasses import replace

import pytest
from scipy.stats import chi2

from turtlesynth.corpus import CorpusItem
from turtlesynth.editing import (
    COMMAND_TAGS,
    Change,
    ConnectInside,
    ConnectUnder,
    Get,
    apply_command,
    coarsen,
    enumerate_commands,
    replay,
)
from turtlesynth.lang import ANGLES, EMPTY_WORKSPACE
from turtlesynth.models import (
    CommandModel,
    NONUNIFORM,
    UNIFORM,
    fit_bigram,
    fit_lambdas,
    fit_model,
    sample_command,
    uniform_model,
)

from conftest import random_workspace


def item(commands, item_id="x"):
    import numpy as np
    return CorpusItem(item_id, tuple(commands), np.array([[0.0, 0.0]]))


class TestFitBigram:
    def test_empty_corpus_is_uniform(self):
        table = fit_bigram([])
        for row in table.values():
            assert all(p == pytest.approx(1 / 5) for p in row.values())

    def test_worked_pseudocount_example(self):
        # Tags Get, Get, Connect: Get->Get and Get->Connect once each.
        it = item([Get("move"), Get("turn"), ConnectUnder(2, 1)])
        table = fit_bigram([it])
        row = table["Get"]
        assert row["Get"] == pytest.approx(2 / 7, abs=1e-12)
        assert row["Connect"] == pytest.approx(2 / 7, abs=1e-12)
        for tag in ("Remove", "Change", "Separate"):
            assert row[tag] == pytest.approx(1 / 7, abs=1e-12)
        start = table["START"]
        assert start["Get"] == pytest.approx(2 / 6, abs=1e-12)
        for tag in ("Remove", "Connect", "Change", "Separate"):
            assert start[tag] == pytest.approx(1 / 6, abs=1e-12)

    def test_rows_sum_to_one_and_are_positive(self):
        corpus = [item([Get("move"), Get("repeat"), ConnectInside(1, 2),
                        Change(2, 2, 4)], "a"),
                  item([Get("turn"), Change(1, 30, 60)], "b")]
        table = fit_bigram(corpus)
        for row in table.values():
            assert sum(row.values()) == pytest.approx(1.0, abs=1e-9)
            assert all(p > 0 for p in row.values())


class TestFitLambdas:
    def test_all_local_connects(self):
        it = item([Get("repeat"), Get("move"), ConnectInside(2, 1)])
        assert fit_lambdas([it]) == (1.0, 1.0)

    def test_mixed_sources(self):
        # Three connects: sources last, last, other.
        a = item([Get("move"), Get("turn"), ConnectUnder(2, 1)], "a")
        b = item([Get("move"), Get("turn"), ConnectUnder(2, 1)], "b")
        c = item([Get("move"), Get("turn"), Get("move"),
                  ConnectUnder(1, 3)], "c")
        lam1, lam2 = fit_lambdas([a, b, c])
        assert lam1 == pytest.approx(2 / 3)

    def test_empty_corpus_defaults(self):
        assert fit_lambdas([]) == (0.5, 0.5)

    def test_bounds(self):
        rng = random.Random(4)
        from turtlesynth.corpus import random_session
        items = [item(random_session(rng, 10), f"i{i}") for i in range(10)]
        lam1, lam2 = fit_lambdas(items)
        assert 0.0 <= lam1 <= 1.0
        assert 0.0 <= lam2 <= 1.0


def forced_row(tag):
    """Bigram rows that put all renormalizable mass on one tag."""
    eps = 1e-9
    row = {t: eps for t in COMMAND_TAGS}
    row[tag] = 1.0 - eps * 4
    return {prev: dict(row) for prev in ("START",) + COMMAND_TAGS}


class TestSampleCommand:
    def test_empty_workspace_always_gets(self):
        model = uniform_model()
        rng = random.Random(0)
        for _ in range(50):
            c = sample_command(model, EMPTY_WORKSPACE, "START", rng)
            assert isinstance(c, Get)

    def test_samples_are_always_applicable(self):
        model = uniform_model()
        rng = random.Random(11)
        for _ in range(300):
            w = random_workspace(rng)
            c = sample_command(model, w, "Get", rng)
            apply_command(w, c)  # must not raise

    def test_seed_determinism(self):
        w = replay([Get("repeat"), Get("move")])
        model = uniform_model()
        a = [sample_command(model, w, "Get", random.Random(5))
             for _ in range(20)]
        b = [sample_command(model, w, "Get", random.Random(5))
             for _ in range(20)]
        assert a == b

    def test_forced_change_is_uniform_over_angles(self):
        w = replay([Get("turn")])
        model = CommandModel(forced_row("Change"), mode=UNIFORM)
        rng = random.Random(123)
        counts = {}
        n = 10_000
        for _ in range(n):
            c = sample_command(model, w, "Get", rng)
            assert isinstance(c, Change)
            counts[c.new] = counts.get(c.new, 0) + 1
        values = [v for v in ANGLES if v != 30]
        assert sorted(counts) == values
        expected = n / len(values)
        stat = sum((counts[v] - expected) ** 2 / expected for v in values)
        assert stat < chi2.ppf(0.99, len(values) - 1)

    def test_nonuniform_probability_one_branches(self):
        # Three root blocks created in order 1, 2, 3.
        w = replay([Get("move"), Get("move"), Get("move")])
        model = CommandModel(forced_row("Connect"), mode=NONUNIFORM,
                             lambda_last=1.0, lambda_second=1.0)
        rng = random.Random(77)
        for _ in range(50):
            c = sample_command(model, w, "Get", rng)
            assert c.source == 3
            assert c.dest == 2

    def test_nonuniform_samples_are_applicable(self):
        rng = random.Random(6)
        model = replace(uniform_model(), mode=NONUNIFORM,
                        lambda_last=0.8, lambda_second=0.7)
        for _ in range(300):
            w = random_workspace(rng)
            c = sample_command(model, w, "Connect", rng)
            apply_command(w, c)


class TestModelIO:
    def test_json_round_trip(self, tmp_path):
        it = item([Get("repeat"), Get("move"), ConnectInside(2, 1)])
        model = fit_model([it], mode=NONUNIFORM)
        path = tmp_path / "model.json"
        model.save(path)
        loaded = CommandModel.load(path)
        assert loaded == model

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            CommandModel(fit_bigram([]), mode="weird")
