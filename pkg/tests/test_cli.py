"""Exit codes, JSON shape, and the documented command examples."""

import json
from decimal import Decimal
from fractions import Fraction

import pytest

import pellrep.cli as cli
from pellrep.ball import RealBall
from pellrep.cli import PipelineConfig, ball_json, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_generate_examples(capsys):
    code, out = run(capsys, "generate", "--family", "pell-k", "--k", "3",
                    "--n-max", "5")
    assert code == 0 and out.strip().endswith("13, 33")
    code, out = run(capsys, "generate", "--family", "fibonacci",
                    "--n-max", "10")
    assert code == 0 and out.strip().endswith(", 55")
    code, out = run(capsys, "generate", "--family", "pell-k", "--k", "4",
                    "--n-max", "0")
    assert code == 0 and out.strip() == "0, 0, 0"


def test_generate_json(capsys):
    code, doc = run_json(capsys, "generate", "--family", "lucas",
                         "--n-max", "5", "--json")
    assert code == 0
    assert doc["terms"][-1] == {"n": 5, "value": 11}


def test_generate_requires_k_for_pell_family(capsys):
    code = main(["generate", "--family", "pell-k"])
    assert code == 2


def test_unknown_flag_is_usage_error(capsys):
    assert main(["search", "--frobnicate"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["reduce"]) == 2  # --stage is required


def test_root_command(capsys):
    code, doc = run_json(capsys, "root", "--k", "3")
    assert code == 0
    dec = Fraction(Decimal(doc["alpha"]["dec"]))
    rad = Fraction(Decimal(doc["alpha"]["rad"]))
    # enclosure property of the serialized pair
    assert abs(dec - Fraction("2.546818276884082079")) <= rad + Fraction(1, 10 ** 15)
    assert rad < Fraction(1, 10 ** 30)


def test_root_is_deterministic(capsys):
    _, first = run(capsys, "root", "--k", "7")
    _, second = run(capsys, "root", "--k", "7")
    assert first == second


def test_ball_json_encloses_value():
    third = RealBall.exact(Fraction(1, 3), 128)
    doc = ball_json(third)
    dec = Fraction(Decimal(doc["dec"]))
    rad = Fraction(Decimal(doc["rad"]))
    assert abs(Fraction(1, 3) - dec) <= rad
    # no binary floats anywhere
    assert isinstance(doc["dec"], str) and isinstance(doc["rad"], str)


def test_bound_stage1(capsys):
    code, doc = run_json(capsys, "bound", "--k", "3")
    assert code == 0
    assert doc["ok"] and doc["n_bound"] == 123514008637404967
    assert all(doc["flags"].values())


def test_bound_stage2(capsys):
    code, doc = run_json(capsys, "bound", "--stage", "2")
    assert code == 0
    assert doc["ok"]
    constant = Fraction(Decimal(doc["constant"]["dec"]))
    assert Fraction("2.5879e13") < constant < Fraction("2.588e13")


def test_bound_requires_k_for_stage1(capsys):
    assert main(["bound"]) == 2


def test_search_expect_theorem(capsys):
    code, doc = run_json(capsys, "search", "--expect-theorem")
    assert code == 0
    assert doc["matches_theorem"] and doc["verified"]
    assert [(s["n"], s["k"], s["d"], s["m"]) for s in doc["solutions"]] == [
        (5, 3, 3, 2), (6, 4, 8, 2)]


def test_search_single_digit_example(capsys):
    code, doc = run_json(capsys, "search", "--m-min", "1", "--k-min", "3",
                         "--k-max", "3", "--n-max", "4")
    assert code == 0
    assert [s["value"] for s in doc["solutions"]] == [1, 2, 5]


def test_search_empty_subrange(capsys):
    code, doc = run_json(capsys, "search", "--k-min", "5", "--k-max", "9")
    assert code == 0 and doc["solutions"] == []


def test_search_expectation_mismatch(capsys):
    # single-digit hits are not part of the theorem set, so expecting the
    # theorem over a single-digit domain must fail
    code, doc = run_json(capsys, "search", "--expect-theorem", "--m-min", "1",
                         "--k-min", "3", "--k-max", "3", "--n-max", "10")
    assert code == 1
    assert not doc["matches_theorem"]


def test_search_bad_range_is_usage_error(capsys):
    assert main(["search", "--k-min", "10", "--k-max", "5"]) == 2


def test_reduce_stage2(capsys):
    code, doc = run_json(capsys, "reduce", "--stage", "2")
    assert code == 0
    assert doc["k_cap"] == 889 and doc["ok"]
    assert doc["max_half_exponent_bound"].startswith("4.44")
    assert len(doc["instances"]) == 9
    assert all(inst["convergent_index"] == 180 for inst in doc["instances"])


def test_reduce_stage3(capsys):
    code, doc = run_json(capsys, "reduce", "--stage", "3")
    assert code == 0
    assert doc["k_cap"] == 312 and doc["ok"]


def test_reduce_stage1_small_range(capsys, tmp_path):
    code, doc = run_json(capsys, "reduce", "--stage", "1", "--k-min", "3",
                         "--k-max", "6", "--checkpoint", str(tmp_path))
    assert code == 0
    assert doc["ok"] and doc["n_cap"] <= 99
    assert len(doc["rows"]) == 4 * 9
    # resumes from the checkpoint directory
    code, doc = run_json(capsys, "reduce", "--stage", "1", "--k-min", "3",
                         "--k-max", "6", "--checkpoint", str(tmp_path))
    assert code == 0 and doc["resumed_orders"] == 4


def test_reduce_starved_precision_exhausts(capsys):
    code = main(["reduce", "--stage", "3", "--precision-bits", "64",
                 "--precision-cap", "64"])
    assert code == 4


def test_reduce_epsilon_failure_exit_code(capsys, monkeypatch):
    from pellrep.reduction import EpsilonNeverPositive

    def boom(*args, **kwargs):
        raise EpsilonNeverPositive("synthetic")

    monkeypatch.setattr(cli, "stage2_campaign", boom)
    assert main(["reduce", "--stage", "2"]) == 3


def test_interrupt_exit_code(capsys, monkeypatch):
    def interrupted(*args, **kwargs):
        raise KeyboardInterrupt

    monkeypatch.setattr(cli, "stage2_campaign", interrupted)
    assert main(["reduce", "--stage", "2"]) == 130


def test_out_file_and_io_error(capsys, tmp_path):
    target = tmp_path / "alpha.json"
    assert main(["root", "--k", "3", "--out", str(target)]) == 0
    doc = json.loads(target.read_text())
    assert doc["k"] == 3
    assert main(["root", "--k", "3", "--out",
                 str(tmp_path / "missing" / "alpha.json")]) == 5


def test_precision_invariant_is_usage_error(capsys):
    assert main(["reduce", "--stage", "2", "--precision-bits", "4096",
                 "--precision-cap", "2048"]) == 2


def test_pipeline_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(precision_bits=32)
    with pytest.raises(ValueError):
        PipelineConfig(precision_bits=4096, precision_cap=2048)
    with pytest.raises(ValueError):
        PipelineConfig(d_min=5, d_max=2)
    with pytest.raises(ValueError):
        PipelineConfig(jobs=0)
    cfg = PipelineConfig()
    assert cfg.digits == (1, 2, 3, 4, 5, 6, 7, 8, 9)
    assert cfg.as_dict()["k_range"] == [3, 400]


def test_report_round_trip(capsys):
    code, out = run(capsys, "reduce", "--stage", "2")
    assert code == 0
    parsed = json.loads(out)
    assert json.dumps(parsed, indent=2) + "\n" == out
