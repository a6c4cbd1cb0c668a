import io
import json

import pytest

from distplan import (
    ScenarioParseError,
    ValidationFailure,
    check_tree,
    dump_scenario,
    generate_document,
    generate_instance,
    load_scenario,
    validate_scenario,
)
from distplan.cli import main

from conftest import WORKED_PATH, small_document


def write_doc(tmp_path, doc, name="scenario.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestLoadScenario:
    def test_minimal_file(self, tmp_path):
        doc = {
            "format_version": 1,
            "tasks": [{"id": "T1", "effort": 10}],
            "sites": [{"id": "A", "hourly_rate": 1}],
            "edges": [],
            "site_relations": [],
        }
        scenario = load_scenario(write_doc(tmp_path, doc))
        assert scenario.m == 1 and scenario.n == 1

    def test_defaults_applied(self, tmp_path):
        scenario = load_scenario(write_doc(tmp_path, small_document()))
        assert scenario.cost_model.skill_gap_penalty == 1.5
        assert scenario.cost_model.capacity_mode == "soft"
        assert scenario.goal_weights["total_cost"] == 1.0

    def test_unsupported_format_version(self, tmp_path):
        doc = small_document(format_version=2)
        with pytest.raises(ValidationFailure, match="unsupported format_version"):
            load_scenario(write_doc(tmp_path, doc))

    def test_parse_error_carries_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"tasks": [\n  {"id" "T1"}\n]}')
        with pytest.raises(ScenarioParseError) as exc:
            load_scenario(path)
        assert exc.value.line == 2

    def test_unknown_nested_key_rejected(self, tmp_path):
        doc = small_document()
        doc["tasks"][0]["efort"] = 5
        with pytest.raises(ValidationFailure, match="efort"):
            load_scenario(write_doc(tmp_path, doc))


class TestRoundTrip:
    def corpus(self):
        docs = [json.loads(WORKED_PATH.read_text()), small_document()]
        for seed in range(10):
            docs.append(generate_document(3 + seed, 2 + seed % 3, seed,
                                          shape="random-tree" if seed % 2 else "chain",
                                          with_skills=bool(seed % 2)))
        return docs

    def test_parse_serialize_parse_identity(self):
        for doc in self.corpus():
            first = validate_scenario(doc)
            again = validate_scenario(json.loads(dump_scenario(first)))
            assert first == again

    def test_serialization_is_stable(self):
        for doc in self.corpus():
            scenario = validate_scenario(doc)
            assert dump_scenario(scenario) == dump_scenario(
                validate_scenario(json.loads(dump_scenario(scenario)))
            )


class TestGenerateInstance:
    def test_deterministic(self):
        assert generate_instance(6, 3, seed=9) == generate_instance(6, 3, seed=9)
        assert generate_document(6, 3, 9) == generate_document(6, 3, 9)

    def test_chain_shape(self):
        scenario = generate_instance(6, 2, seed=4, shape="chain")
        tree = check_tree(scenario.task_graph)
        assert len(tree.leaves) == 1  # single leaf at the far end of the path

    def test_random_tree_edge_count(self):
        scenario = generate_instance(50, 3, seed=13, shape="random-tree")
        assert len(scenario.task_graph.edges) == 49
        check_tree(scenario.task_graph)

    def test_value_ranges(self):
        scenario = generate_instance(20, 5, seed=17)
        assert all(10 <= t.effort <= 200 for t in scenario.tasks)
        assert all(1 <= s.hourly_rate <= 5 for s in scenario.sites)
        assert all(0 <= e.volume <= 50 for e in scenario.task_graph.edges)
        mat = scenario.site_relations.matrix
        assert all(mat[i][i] == 0 for i in range(5))
        assert all(0 <= mat[i][j] <= 5 for i in range(5) for j in range(5))


class TestCli:
    def test_solve_worked_machine(self):
        code, out, _ = run_cli("solve", str(WORKED_PATH), "--out", "machine")
        assert code == 0
        doc = json.loads(out)
        assert doc["objective"] == 190.0
        assert doc["assignment"] == {"T1": "B", "T2": "B", "T3": "B"}

    def test_solve_table_output(self):
        code, out, _ = run_cli("solve", str(WORKED_PATH))
        assert code == 0
        assert "objective: 190" in out

    def test_weights_override_replaces_file_weights(self):
        code, out, _ = run_cli("solve", str(WORKED_PATH), "--out", "machine",
                               "--weights", "cross_site_volume=1")
        assert code == 0
        doc = json.loads(out)
        assert doc["goal_vector"]["cross_site_volume"] == 0.0

    def test_validate_ok(self):
        code, out, _ = run_cli("validate", str(WORKED_PATH))
        assert code == 0 and out.strip() == "ok"

    def test_validate_bad_file(self, tmp_path):
        doc = small_document(site_relations={"A": {"B": 2}, "B": {"A": 3}})
        path = write_doc(tmp_path, doc)
        code, _, err = run_cli("validate", str(path))
        assert code == 2
        assert "not symmetric" in err

    def test_evaluate(self):
        code, out, _ = run_cli("evaluate", str(WORKED_PATH),
                               "--assign", "T1=A", "T2=A", "T3=B")
        assert code == 0
        doc = json.loads(out)
        assert doc["goal_vector"]["total_cost"] == 200.0

    def test_evaluate_partial_is_usage_error(self):
        code, _, err = run_cli("evaluate", str(WORKED_PATH), "--assign", "T1=A")
        assert code == 2
        assert "not total" in err

    def test_goals(self):
        code, out, _ = run_cli("goals", str(WORKED_PATH))
        assert code == 0
        doc = json.loads(out)
        assert [g["goal"] for g in doc["goals"]] == [
            "total_cost", "cross_site_volume", "skill_risk", "load_imbalance",
        ]

    def test_pareto(self):
        code, out, _ = run_cli("pareto", str(WORKED_PATH))
        assert code == 0
        doc = json.loads(out)
        assert len(doc["frontier"]) == 1
        assert doc["frontier"][0]["goal_vector"]["total_cost"] == 190.0

    def test_pareto_oversized_exit_1(self, tmp_path):
        path = write_doc(tmp_path, generate_document(12, 5, seed=0))
        code, _, err = run_cli("pareto", str(path))
        assert code == 1
        assert "guard" in err

    def test_gen_deterministic_bytes(self):
        code1, out1, _ = run_cli("gen", "--tasks", "5", "--sites", "3", "--seed", "2")
        code2, out2, _ = run_cli("gen", "--tasks", "5", "--sites", "3", "--seed", "2")
        assert code1 == code2 == 0
        assert out1 == out2
        validate_scenario(json.loads(out1))

    def test_gen_output_solvable(self, tmp_path):
        _, out, _ = run_cli("gen", "--tasks", "4", "--sites", "2", "--seed", "8",
                            "--shape", "chain")
        path = tmp_path / "gen.json"
        path.write_text(out)
        code, solved, _ = run_cli("solve", str(path), "--out", "machine")
        assert code == 0
        assert json.loads(solved)["solver"] == "dp"

    def test_machine_output_deterministic(self):
        outputs = {run_cli("solve", str(WORKED_PATH), "--out", "machine")[1]
                   for _ in range(3)}
        assert len(outputs) == 1

    def test_unknown_flag_usage_error(self):
        code, _, _ = run_cli("solve", str(WORKED_PATH), "--frobnicate")
        assert code == 2

    def test_missing_file(self):
        code, _, err = run_cli("solve", "/nonexistent/path.json")
        assert code == 2

    def test_bench_machine_small(self, monkeypatch):
        import distplan.cli as cli_mod
        monkeypatch.setattr(cli_mod, "SITES_SWEEP", (2, 4))
        monkeypatch.setattr(cli_mod, "TASKS_SWEEP", (4, 8))
        code, out, _ = run_cli("bench", "--sites-sweep", "--tasks", "6",
                               "--out", "machine")
        assert code == 0
        doc = json.loads(out)
        assert [row["size"] for row in doc["sites"]["rows"]] == [2, 4]
        assert all(row["seconds"] > 0 for row in doc["sites"]["rows"])

    def test_bench_requires_a_sweep(self):
        code, _, err = run_cli("bench")
        assert code == 2
