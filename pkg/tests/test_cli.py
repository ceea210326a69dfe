import io as _io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from pathvariety import freealg, generate, ideals, paths, series, varieties
from pathvariety.cli import COMMANDS, run

HERE = Path(__file__).parent / "golden"
INPUTS = HERE / "inputs"

# name -> argv (input file names are resolved against golden/inputs)
CASES = {
    "tensor_concat": ["tensor", "concat", "one.json", "two.json"],
    "tensor_shuffle": ["tensor", "shuffle", "one.json", "two.json"],
    "tensor_shuffle_12_1": ["tensor", "shuffle", "w12.json", "one.json"],
    "tensor_hsr": ["tensor", "hsr", "one.json", "w22.json"],
    "tensor_hsl": ["tensor", "hsl", "one.json", "two.json"],
    "tensor_antipode": ["tensor", "antipode", "bracket.json"],
    "tensor_deconcat": ["tensor", "deconcat", "w12.json"],
    "tensor_phi": ["tensor", "phi", "xy.json"],
    "tensor_mp": ["tensor", "mp", "map_sq.json", "w12.json"],
    "tensor_lambda": ["tensor", "lambda", "lettermap.json", "w12.json"],
    "tensor_map": ["tensor", "map", "lettermap.json", "w12.json"],
    "tensor_wide": ["tensor", "antipode", "wide.json"],
    "series_mul": ["series", "mul", "sig_e1e2.json", "sig_e1e2.json"],
    "series_inv": ["series", "inv", "sig_e1e2.json"],
    "series_exp": ["series", "exp", "lie_mixed.json"],
    "series_log": ["series", "log", "sig_e1e2.json"],
    "series_grouplike": ["series", "grouplike", "not_grouplike.json"],
    "series_lie": ["series", "lie", "bracket_lie.json"],
    "series_pair": ["series", "pair", "sig_e1e2.json", "w12.json"],
    "series_coord": ["series", "coord", "sig_e1e2.json", "bracket.json"],
    "path_sig_const": ["path", "sig", "const.json", "--level", "2"],
    "path_sig_parabola": ["path", "sig", "parabola.json", "--level", "3"],
    "path_stopped": ["path", "stopped", "parabola.json", "--word", "12"],
    "path_concat": ["path", "concat", "parabola.json", "chord.json"],
    "path_reverse": ["path", "reverse", "parabola.json"],
    "path_subpath": ["path", "subpath", "parabola.json", "--segment", "0", "--stop", "1/2"],
    "path_apply_poly": ["path", "apply-poly", "map_sq.json", "chord.json"],
    "path_lambda_star": ["path", "lambda-star", "lettermap.json", "chord.json"],
    "path_delta_shift": ["path", "delta-shift", "lettermap.json", "sig_e1e2.json"],
    "ideal_basis": ["ideal", "basis", "one.json", "--closure", "right-half", "--level", "3", "--dim", "2"],
    "ideal_basis_shuffle": ["ideal", "basis", "one.json", "--level", "2", "--dim", "2"],
    "ideal_power": ["ideal", "power", "w12.json", "--n", "2"],
    "ideal_multi": ["ideal", "multi", "w12.json", "--n", "2"],
    "ideal_invariant": ["ideal", "invariant", "group_pm.json", "w12.json"],
    "variety_member_parabola": ["variety", "member", "parabola.json", "parabola_spec.json"],
    "variety_member_chord": ["variety", "member", "chord.json", "parabola_spec.json"],
    "variety_rank": ["variety", "rank", "plane.json", "plane_rank.json"],
    "variety_subspace": ["variety", "subspace", "plane.json", "--m", "2", "--level", "4"],
    "variety_hypersurface": ["variety", "hypersurface", "parabola.json", "--m", "2", "--level", "6"],
    "variety_sphere": ["variety", "sphere", "chord.json", "--level", "4"],
    "variety_realize": ["variety", "realize", "bracket_lie.json"],
    "variety_shift": ["variety", "shift", "letters_spec.json", "sig_e1e2.json"],
    "variety_power": ["variety", "power", "letters_spec.json", "--n", "2"],
    "variety_loops": ["variety", "loops", "--k", "2", "--dim", "2"],
    "variety_increments": ["variety", "increments", "circle.json"],
    "variety_linpoly": ["variety", "linpoly", "w12.json"],
    "gen_path": ["gen", "path", "--seed", "7", "--dim", "3", "--segments", "2", "--degree", "2"],
    "gen_lie": ["gen", "lie", "--seed", "7", "--level", "3"],
}

# cases that read an earlier case's output
CHAINED = {
    "ideal_member_121": (["ideal", "member", "@ideal_basis", "w121.json"], True),
    "ideal_member_222": (["ideal", "member", "@ideal_basis", "w222.json"], False),
    "ideal_shift": (["ideal", "shift", "@ideal_basis_shuffle", "sig_e1e2.json"], None),
}


def resolve(argv, tmp=None):
    out = []
    for a in argv:
        if a.startswith("@"):
            out.append(str(HERE / f"{a[1:]}.json"))
        elif a.endswith(".json"):
            out.append(str(INPUTS / a))
        else:
            out.append(a)
    return out


def invoke(argv):
    buf = _io.StringIO()
    code = run(resolve(argv), buf)
    return code, buf.getvalue()


def all_cases():
    cases = dict(CASES)
    cases.update({k: v[0] for k, v in CHAINED.items()})
    return cases


def regenerate():
    for name, argv in all_cases().items():
        code, text = invoke(argv)
        assert code == 0, (name, text)
        (HERE / f"{name}.json").write_text(text, encoding="utf-8", newline="\n")


@pytest.mark.parametrize("name", sorted(all_cases()))
def test_golden(name):
    argv = all_cases()[name]
    expected = (HERE / f"{name}.json").read_bytes()
    first, second = invoke(argv), invoke(argv)
    assert first[0] == second[0] == 0
    assert first[1].encode("utf-8") == second[1].encode("utf-8") == expected


def test_golden_examples_match_module_values():
    # the shuffle golden is the documented example output
    text = (HERE / "tensor_shuffle.json").read_text()
    assert text == '[{"word":"12","coeff":"1"},{"word":"21","coeff":"1"}]\n'
    unit = json.loads((HERE / "path_sig_const.json").read_text())
    assert unit == {"level": 2, "dimension": 2, "terms": [{"word": "", "coeff": "1"}]}
    basis = json.loads((HERE / "ideal_basis.json").read_text())
    assert len(basis["rows"]) == 11
    assert json.loads((HERE / "ideal_member_121.json").read_text())["member"] is True
    assert json.loads((HERE / "ideal_member_222.json").read_text())["member"] is False
    assert json.loads((HERE / "variety_member_parabola.json").read_text())["member"] is True
    assert json.loads((HERE / "variety_member_chord.json").read_text())["member"] is False
    assert json.loads((HERE / "variety_rank.json").read_text())["certified_level"] == 4


REQUIRED_OPS = {
    freealg: ["concat_product", "deconcat", "shuffle", "half_shuffle_right", "half_shuffle_left", "antipode", "letter_map_extend"],
    series: ["pair", "series_mul", "series_inverse", "exp_conc", "log_conc", "is_grouplike", "is_lie", "first_kind_coordinate"],
    paths: ["signature", "stopped_signature_poly", "concat", "reverse", "left_subpath", "apply_polynomial_map", "lambda_star", "delta_shift"],
    ideals: ["phi", "m_p", "ideal_basis", "member", "shift_ideal", "power_ideal", "multi_path_ideal", "invariant_projector"],
    varieties: [
        "in_variety",
        "loops_variety",
        "increments_variety",
        "rank_test",
        "subspace_test",
        "hypersurface_test",
        "sphere_or_hyperplane_test",
        "realize_log_signature",
        "linear_signature_polynomial",
    ],
}


def test_every_operation_is_reachable():
    reached = {op for _, ops, _ in COMMANDS.values() for op in ops}
    for module, ops in REQUIRED_OPS.items():
        for op in ops:
            assert callable(getattr(module, op))
            assert op in reached, op
    for _, ops, _ in COMMANDS.values():
        for op in ops:
            assert any(hasattr(m, op) for m in (freealg, series, paths, ideals, varieties, generate)), op


def test_every_command_has_a_golden_case():
    covered = {tuple(argv[:2]) for argv in all_cases().values()}
    assert set(COMMANDS) <= covered


@pytest.mark.parametrize(
    "argv, field",
    [
        (["tensor", "shuffle", "bad_decimal.json", "one.json"], None),
        (["tensor", "shuffle", "bad_missing.json", "one.json"], "coeff"),
        (["tensor", "shuffle", "bad_syntax.json", "one.json"], None),
        (["tensor", "shuffle", "missing_file.json", "one.json"], None),
        (["tensor", "hsr", "sig_e1e2.json", "one.json"], None),
        (["path", "sig", "parabola.json"], "level"),
        (["series", "grouplike", "one.json"], None),
        (["variety", "member", "plane.json", "parabola_spec.json"], None),
        (["series", "coord", "not_grouplike.json", "one.json"], None),
    ],
)
def test_validation_errors_exit_2(argv, field):
    code, text = invoke(argv)
    assert code == 2
    doc = json.loads(text)
    assert "error" in doc
    if field is not None:
        assert doc["field"] == field


def test_usage_errors_exit_2(capsys):
    assert run(["frobnicate"], _io.StringIO()) == 2
    assert run(["tensor", "nope"], _io.StringIO()) == 2
    assert run([], _io.StringIO()) == 2


def test_output_flag_and_pretty(tmp_path):
    target = tmp_path / "out.json"
    code, text = invoke(["tensor", "shuffle", "one.json", "two.json", "--output", str(target)])
    assert code == 0 and text == ""
    assert target.read_bytes() == (HERE / "tensor_shuffle.json").read_bytes()
    code, text = invoke(["tensor", "shuffle", "one.json", "two.json", "--pretty"])
    assert json.loads(text) == json.loads((HERE / "tensor_shuffle.json").read_text())
    assert text.index('"12"') < text.index('"21"')


def test_stdin_input():
    proc = subprocess.run(
        [sys.executable, "-m", "pathvariety", "tensor", "antipode", "-"],
        input='[{"word":"12","coeff":"3"}]',
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == '[{"word":"21","coeff":"3"}]\n'


def test_subprocess_matches_in_process():
    argv = resolve(CASES["ideal_basis"])
    proc = subprocess.run([sys.executable, "-m", "pathvariety", *argv], capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout == (HERE / "ideal_basis.json").read_bytes()


if __name__ == "__main__" and os.environ.get("PATHVARIETY_REGEN"):
    regenerate()
