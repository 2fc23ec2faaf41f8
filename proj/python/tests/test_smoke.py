import json

import pytest

import rift


def test_kappa_and_alpha_fixtures():
    a = [True] * 5 + [False] * 5
    b = [True, True, True, True, False, True, False, False, False, False]
    assert rift.cohen_kappa(a, b) == pytest.approx(0.6, abs=1e-12)
    rows = [[True, False], [False, True], [True, False], [False, True]]
    assert rift.krippendorff_alpha(rows) == pytest.approx(-0.75, abs=1e-12)
    assert rift.cohen_kappa([False] * 4, [False] * 4) is None


def test_missing_cells_are_none():
    rows = [[True, True, None], [False, False, True], [True, None, True]]
    assert 0.0 <= rift.pairwise_agreement(rows) <= 1.0
    assert rift.consolidate_gold([True, True, False, None]) is True
    assert rift.consolidate_gold([True, False]) is False


def test_sweep_auc_pearson():
    scores = [0.1, 0.4, 0.35, 0.8]
    gold = [False, False, True, True]
    sweep = rift.f1_threshold_sweep(scores, gold)
    assert sweep["f1"] == pytest.approx(0.8)
    assert sweep["direction"] == ">="
    assert rift.roc_auc(scores, gold) == pytest.approx(0.75)
    r = rift.pearson_r([1, 2, 3, 4], [2, 1, 4, 3], permutations=200, seed=3)
    assert r["r"] == pytest.approx(0.6)
    assert r == rift.pearson_r([1, 2, 3, 4], [2, 1, 4, 3], permutations=200, seed=3)


def test_errors_carry_codes():
    with pytest.raises(rift.DataError) as info:
        rift.f1_threshold_sweep([0.1, 0.2], [False, False])
    assert info.value.code == "no_positives"
    assert isinstance(info.value, rift.RiftError)


def test_majority_vote_threshold():
    def run(i, labels):
        return {"rubric_id": "r", "provider_id": "p", "run_index": i,
                "suggested_labels": [{"label": x} for x in labels]}

    verdicts = [run(0, ["subjective", "hackable"]), run(1, ["subjective"]), run(2, ["hackable"]),
                run(3, []), run(4, ["subjective"])]
    assert rift.majority_vote(verdicts, 5) == {"subjective"}


def test_taxonomy_round_trip_and_prompt():
    t = rift.default_taxonomy()
    assert len(t["failure_modes"]) == 8
    assert not [f for f in rift.validate_taxonomy(t) if f["severity"] == "error"]
    t2 = json.loads(json.dumps(t))
    t2["failure_modes"].pop()
    diff = rift.diff_taxonomies(t, t2)
    assert diff["removed"] == ["redundant_criteria"]
    prompt = rift.build_annotation_prompt(t, {"id": "r1", "input_context": "Explain X.",
                                              "rubric": "1. Mentions X."})
    assert "## Rubric to Evaluate" in prompt


def test_signals():
    def label(pair, who, verdict):
        return {"rubric_id": "r", "pair": pair, "labeler_id": who, "verdict": verdict}

    labels = [label(["a", "b"], "ref", "A"), label(["a", "b"], "w1", "A"),
              label(["b", "a"], "w2", "A")]
    assert rift.alignment_signal(labels, "ref", ["w1", "w2"]) == pytest.approx(0.5)
    assert rift.irr_signal(labels) == pytest.approx(1 / 3)
    assert rift.population_variance([0, 1, 0, 1]) == pytest.approx(0.25)


def test_cli_in_process():
    code, out, _ = rift.run_cli(["taxonomy", "default"])
    assert code == 0
    assert json.loads(out)["version"] == 1
    code, _, err = rift.run_cli(["no-such-verb"])
    assert code == 1
