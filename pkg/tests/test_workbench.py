"""Manifest jobs, the result cache, and the command line front end."""

import os

import pytest

from cactus_samples import double_circle, figure_eight, single_circle
from strop.algebra import dual_numbers, truncated_polynomial
from strop.cactus import cactus_to_text
from strop.cli import main
from strop.errors import ParseError
from strop.rings import GF2
from strop.workbench import (ResultDocument, check_manifest, load_manifest,
                             parse_manifest, run)

import strop

DATA = os.path.join(os.path.dirname(strop.__file__), "data")


def data_path(name):
    return os.path.join(DATA, name + ".txt")


@pytest.fixture
def s2_model(tmp_path):
    a = truncated_polynomial(GF2, var_degree=2, truncation=2, var="x")
    p = tmp_path / "s2_f2.txt"
    p.write_text(a.to_text())
    return str(p)


@pytest.fixture
def dual_f2(tmp_path):
    p = tmp_path / "dual_f2.txt"
    p.write_text(dual_numbers(GF2).to_text())
    return str(p)


# -- task outputs ----------------------------------------------------------


def test_betti_of_the_tetrahedron_boundary():
    doc = run({"task": "betti", "inputs": [data_path("sphere2")],
               "ring": "q"})
    assert doc.value("betti") == [1, 0, 1]
    assert doc.value("ring") == "q"
    assert doc.cache_status == "computed"


def test_integer_betti_reports_torsion_and_checked_transforms():
    doc = run({"task": "betti", "inputs": [data_path("rp2")],
               "ring": "z", "transforms": True})
    assert doc.value("betti") == [1, 0, 0]
    assert doc.value("torsion") == {"1": ["2"]}
    factors = doc.value("invariant_factors")
    assert factors["2"][-1] == 2
    assert set(factors["1"]) == {1}
    assert doc.value("transforms_verified") is True
    with pytest.raises(ParseError):
        run({"task": "betti", "inputs": [data_path("rp2")],
             "ring": "q", "transforms": True})


def test_cohomology_ring_task_reports_basis_and_unit():
    doc = run({"task": "cohomology-ring", "inputs": [data_path("sphere2")],
               "ring": "q"})
    assert doc.value("dimensions") == {"0": 1, "2": 1}
    assert doc.value("representatives") == {"0": ["h0_0"], "2": ["h2_0"]}
    assert doc.value("unit") == {"h0_0": "1"}
    # the square of the degree-2 class vanishes, and unit rows are implied
    assert doc.value("products") == {}


def test_hochschild_task_emits_the_windowed_presentation(dual_f2):
    doc = run({"task": "hochschild", "inputs": [dual_f2],
               "window": [0, 3], "tensor_max": 4})
    assert doc.value("dimensions") == {"1": 2, "2": 2}
    assert doc.value("saturated") == {"1": True, "2": True}
    assert doc.value("products")["h1_0*h1_0"] == {"h2_0": "1"}


def test_loop_ring_task_on_a_formal_model(s2_model):
    doc = run({"task": "loop-ring", "inputs": [s2_model],
               "window": [-2, 2], "formal": True})
    assert doc.value("manifold_dimension") == 2
    assert doc.value("dimensions") == {"-2": 1, "-1": 1, "0": 2,
                                       "1": 2, "2": 2}
    assert doc.value("unit") == {"e0_0": "1"}
    assert all(doc.value("saturated").values())


def test_loop_ring_task_from_a_manifest_file(tmp_path):
    manifest = tmp_path / "job.txt"
    manifest.write_text(
        'task: "loop-ring"\n'
        'inputs: ["%s"]\n'
        'ring: "f2"\n'
        'window: [-1, 0]\n' % data_path("sphere2"))
    doc = run(load_manifest(str(manifest)))
    assert doc.value("dimensions") == {"-1": 1, "0": 2}
    assert doc.value("source") == "simplicial complex"


def test_cactus_validate_task_reports_the_violation(tmp_path):
    p = tmp_path / "double.txt"
    p.write_text(cactus_to_text(double_circle()))
    doc = run({"task": "cactus-validate", "inputs": [str(p)]})
    assert doc.value("valid") is False
    assert doc.value("violation") == "tree condition"
    assert doc.value("detail") == "dual graph has a cycle"


def test_cactus_compose_task_emits_the_composite(tmp_path):
    outer = tmp_path / "fig8.txt"
    outer.write_text(cactus_to_text(figure_eight()))
    unit = tmp_path / "unit.txt"
    unit.write_text(cactus_to_text(single_circle()))
    doc = run({"task": "cactus-compose",
               "inputs": [str(outer), str(outer), str(unit)]})
    assert doc.value("radii") == ["1/4", "1/4", "1/2"]
    assert doc.value("vertices") == [[[0, "1/12"], [1, "0"]],
                                     [[1, "1/24"], [2, "0"]]]
    assert doc.value("basepoint") == [0, "1/8"]
    assert doc.value("incidence_total") == 4
    assert doc.value("vertex_count") == 2


def test_oracle_compare_task_reports_the_verdict(dual_f2):
    doc = run({"task": "oracle-compare", "inputs": [dual_f2],
               "window": [0, 3], "tensor_max": 4})
    assert doc.value("verdict") == "equal"
    assert doc.value("located_degree") is None


# -- determinism and the cache ---------------------------------------------


def betti_job(cache=None):
    manifest = {"task": "betti", "inputs": [data_path("sphere3")],
                "ring": "z"}
    return run(manifest, cache_dir=cache)


def test_documents_are_byte_identical_across_runs_and_cache_paths(tmp_path):
    cache = str(tmp_path / "cache")
    plain = betti_job()
    cold = betti_job(cache)
    warm = betti_job(cache)
    assert cold.cache_status == "computed"
    assert warm.cache_status == "hit"
    assert plain.text == cold.text == warm.text
    assert "timing" not in cold.text
    entries = os.listdir(cache)
    assert len(entries) == 1 and entries[0].endswith(".result")


def test_corrupt_cache_entries_are_recomputed_not_trusted(tmp_path):
    cache = str(tmp_path / "cache")
    cold = betti_job(cache)
    entry = os.path.join(cache, os.listdir(cache)[0])
    with open(entry, "r+", encoding="utf-8") as fh:
        blob = fh.read().replace("betti", "defti")
        fh.seek(0)
        fh.write(blob)
        fh.truncate()
    redone = betti_job(cache)
    assert redone.cache_status == "recomputed"
    assert redone.text == cold.text
    assert betti_job(cache).cache_status == "hit"


def test_environment_variable_switches_the_cache_on(tmp_path, monkeypatch):
    cache = tmp_path / "envcache"
    monkeypatch.setenv("STROP_CACHE_DIR", str(cache))
    betti_job()
    assert len(os.listdir(cache)) == 1
    monkeypatch.delenv("STROP_CACHE_DIR")
    # with no cache configured nothing new is written anywhere
    before = os.listdir(cache)
    betti_job()
    assert os.listdir(cache) == before


def test_cache_keys_track_input_content(tmp_path):
    cache = str(tmp_path / "cache")
    source = tmp_path / "complex.txt"
    source.write_text("vertices: 1\nfacets: [[0]]\n")
    manifest = {"task": "betti", "inputs": [str(source)], "ring": "q"}
    first = run(manifest, cache_dir=cache)
    source.write_text("vertices: 2\nfacets: [[0], [1]]\n")
    second = run(manifest, cache_dir=cache)
    assert second.cache_status == "computed"
    assert first.value("betti") == [1]
    assert second.value("betti") == [2]
    assert len(os.listdir(cache)) == 2


def test_result_document_round_trips_its_fields():
    doc = run({"task": "betti", "inputs": [data_path("circle")],
               "ring": "f2"})
    again = ResultDocument(doc.text, 0, "hit")
    assert again.pairs() == doc.pairs()
    with pytest.raises(KeyError):
        doc.value("no_such_field")


# -- manifest validation ---------------------------------------------------


def test_manifest_shape_errors():
    good = {"task": "betti", "inputs": [data_path("point")], "ring": "q"}
    check_manifest(good)
    bad = [
        {"task": "bettis", "inputs": ["x"], "ring": "q"},
        {"task": "betti", "inputs": [], "ring": "q"},
        {"task": "betti", "inputs": ["x"]},
        {"task": "betti", "inputs": ["x"], "ring": "q", "mystery": 1},
        {"task": "betti", "inputs": ["x", "y"], "ring": "q"},
        {"task": "hochschild", "inputs": ["x"], "tensor_max": 3},
        {"task": "hochschild", "inputs": ["x"], "window": [0, 2]},
        {"task": "hochschild", "inputs": ["x"], "window": [2, 0],
         "tensor_max": 3},
        {"task": "hochschild", "inputs": ["x"], "window": [0, True],
         "tensor_max": 3},
        {"task": "hochschild", "inputs": ["x"], "window": [0, 2],
         "tensor_max": -1},
        {"task": "loop-ring", "inputs": ["x"], "window": [0, 1]},
        {"task": "cactus-compose", "inputs": ["x"]},
        {"task": "betti", "inputs": ["x"], "ring": "q", "formal": "yes"},
    ]
    for manifest in bad:
        with pytest.raises(ParseError):
            check_manifest(manifest)


def test_manifest_text_requires_task_and_inputs():
    parsed = parse_manifest('task: "betti"\ninputs: ["a"]\nring: "q"\n')
    assert parsed == {"task": "betti", "inputs": ["a"], "ring": "q"}
    with pytest.raises(ParseError):
        parse_manifest('task: "betti"\n')
    with pytest.raises(ParseError):
        parse_manifest('task: "betti"\ninputs: ["a"]\nextra: 1\n')


def test_algebra_ring_must_match_a_declared_ring(dual_f2):
    with pytest.raises(ParseError):
        run({"task": "hochschild", "inputs": [dual_f2], "ring": "q",
             "window": [0, 2], "tensor_max": 3})


def test_missing_input_file_is_a_parse_error(tmp_path):
    with pytest.raises(ParseError):
        run({"task": "betti", "inputs": [str(tmp_path / "absent.txt")],
             "ring": "q"})


# -- command line ----------------------------------------------------------


def test_cli_emits_fields_and_a_timing_line(capsys):
    code = main(["betti", data_path("sphere2"), "--ring", "q"])
    out = capsys.readouterr().out
    assert code == 0
    lines = out.splitlines()
    assert "betti: [1, 0, 1]" in lines
    assert lines[-1].startswith("timing_ms: ")


def test_cli_parses_bare_negative_windows(capsys, s2_model):
    code = main(["loop-ring", s2_model, "--formal", "--window", "-2..2"])
    out = capsys.readouterr().out
    assert code == 0
    assert 'window: [-2, 2]' in out


def test_cli_table_emission_aligns_keys(capsys):
    code = main(["betti", data_path("sphere2"), "--ring", "q",
                 "--emit", "table"])
    out = capsys.readouterr().out
    assert code == 0
    rows = dict(line.split(None, 1) for line in out.splitlines())
    assert rows["betti"] == "[1, 0, 1]"
    assert rows["ring"] == "q"


def test_cli_flags_override_the_manifest(tmp_path, capsys):
    manifest = tmp_path / "job.txt"
    manifest.write_text('task: "betti"\ninputs: ["%s"]\nring: "q"\n'
                        % data_path("circle"))
    code = main(["betti", "--manifest", str(manifest), "--ring", "f2"])
    out = capsys.readouterr().out
    assert code == 0
    assert 'ring: "f2"' in out


def test_cli_rejects_a_manifest_for_a_different_task(tmp_path, capsys):
    manifest = tmp_path / "job.txt"
    manifest.write_text('task: "betti"\ninputs: ["%s"]\nring: "q"\n'
                        % data_path("circle"))
    code = main(["cohomology-ring", "--manifest", str(manifest)])
    err = capsys.readouterr().err
    assert code == 1
    assert "does not match subcommand" in err


def test_cli_reports_errors_on_stderr_and_exits_nonzero(capsys):
    code = main(["betti", "no_such_file.txt", "--ring", "q"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == ""
    assert captured.err.startswith("error in task betti:")


def test_cli_window_syntax_errors_are_reported():
    with pytest.raises(SystemExit):
        main(["hochschild", "x", "--window", "0--2", "--tensor-max", "3"])
