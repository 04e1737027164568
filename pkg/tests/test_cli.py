import json

from click.testing import CliRunner

from projcalc.exact import gaussian

HALF = "1/2"


def exact_matrix(data):
    return {
        "schema": "projcalc/1",
        "backend": "exact",
        "rows": len(data),
        "cols": len(data[0]),
        "data": data,
    }


def write_pair(path, p, q):
    path.write_text(json.dumps({"p": exact_matrix(p), "q": exact_matrix(q)}))
    return str(path)


def run(*args, **kwargs):
    from projcalc.cli_tools.projcalc import main

    return CliRunner().invoke(main, list(args), **kwargs)


class TestGen:
    def test_gen_then_verify(self, tmp_path):
        from projcalc.cli_tools.projcalc import main

        runner = CliRunner()
        out = tmp_path / "pair.json"
        result = runner.invoke(
            main,
            [
                "gen",
                "--backend",
                "exact",
                "--dim",
                "3",
                "--rank-p",
                "1",
                "--rank-q",
                "2",
                "--seed",
                "4",
                "--out",
                str(out),
            ],
        )

        assert result.exit_code == 0
        assert "Wrote pair" in result.output
        assert json.loads(out.read_text())["p"]["backend"] == "exact"

        result = runner.invoke(
            main, ["verify", "--statement", "L2.2", "--in", str(out), "--json"]
        )
        assert result.exit_code == 0
        assert json.loads(result.output.splitlines()[0])["verdict"] == "pass"

    def test_gen_overlap(self, tmp_path):
        from projcalc.cli_tools.projcalc import main
        from projcalc.harness import read_pair
        from projcalc.subspaces import space_intersection

        out = tmp_path / "pair.json"
        args = ["gen", "--dim", "4", "--rank-p", "2", "--rank-q", "2"]
        args += ["--overlap", "1", "--out", str(out)]
        result = CliRunner().invoke(main, args)

        assert result.exit_code == 0
        pair = read_pair(out)
        assert space_intersection(pair.p_range, pair.q_range).rank == 1

    def test_rank_too_large(self, tmp_path):
        from projcalc.cli_tools.projcalc import main

        args = ["gen", "--dim", "2", "--rank-p", "3", "--rank-q", "1"]
        args += ["--out", str(tmp_path / "pair.json")]
        result = CliRunner().invoke(main, args)

        assert result.exit_code == 1
        assert "Error" in result.output


class TestVerify:
    def test_all_statements(self, tmp_path):
        path = write_pair(
            tmp_path / "pair.json", [[1, 0], [0, 0]], [[HALF, HALF], [HALF, HALF]]
        )
        result = run("verify", "--statement", "all", "--in", path)

        assert result.exit_code == 0
        assert "Verification" in result.output

    def test_json_records(self, tmp_path):
        from projcalc.cli_tools.projcalc import main
        from projcalc.harness import STATEMENT_IDS

        path = write_pair(
            tmp_path / "pair.json", [[1, 0], [0, 0]], [[HALF, HALF], [HALF, HALF]]
        )
        args = ["verify", "--statement", "all", "--in", path, "--json"]
        result = CliRunner().invoke(main, args)
        records = [json.loads(line) for line in result.output.splitlines()]

        assert [r["statement_id"] for r in records] == list(STATEMENT_IDS)
        assert all(r["pair_fingerprint"] for r in records)

    def test_hypothesis_not_met(self, tmp_path):
        path = write_pair(tmp_path / "pair.json", [[1, 0], [0, 0]], [[1, 0], [0, 0]])
        result = run("verify", "--statement", "C3.5", "--in", path)

        assert result.exit_code == 2

    def test_unknown_statement(self, tmp_path):
        path = write_pair(tmp_path / "pair.json", [[1]], [[0]])
        result = run("verify", "--statement", "L9.9", "--in", path)

        assert result.exit_code == 1

    def test_not_a_projection(self, tmp_path):
        path = write_pair(tmp_path / "pair.json", [[2]], [[0]])
        result = run("verify", "--statement", "L2.2", "--in", path)

        assert result.exit_code == 1

    def test_bad_env_tolerance(self, tmp_path):
        path = write_pair(tmp_path / "pair.json", [[1]], [[0]])
        result = run(
            "verify", "--statement", "L2.2", "--in", path, env={"PROJCALC_TOL": "tight"}
        )

        assert result.exit_code == 2


class TestMp:
    def test_mp(self, tmp_path):
        from projcalc.cli_tools.projcalc import main

        path = tmp_path / "x.json"
        path.write_text(json.dumps(exact_matrix([["2", "0"], ["0", "0"]])))
        result = CliRunner().invoke(main, ["mp", "--in", str(path)])

        assert result.exit_code == 0
        assert "rank 1" in result.output
        assert '"1/2"' in result.output

    def test_mp_out(self, tmp_path):
        from projcalc.cli_tools.projcalc import main
        from projcalc.harness import read_element

        path, out = tmp_path / "x.json", tmp_path / "x_dag.json"
        path.write_text(json.dumps(exact_matrix([["1", "1"], ["1", "1"]])))
        result = CliRunner().invoke(main, ["mp", "--in", str(path), "--out", str(out)])

        assert result.exit_code == 0
        x_dag = read_element(out)
        assert all(v == gaussian("1/4") for v in x_dag.data.flat)


class TestSubspace:
    def test_meet(self, tmp_path):
        from projcalc.cli_tools.projcalc import main

        path = write_pair(
            tmp_path / "pair.json",
            [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 1, 0], [0, 0, 1]],
        )
        result = CliRunner().invoke(main, ["subspace", "--op", "meet", "--in", path])

        assert result.exit_code == 0
        assert "meet: projection of rank 1" in result.output

    def test_join_and_decomp(self, tmp_path):
        from projcalc.cli_tools.projcalc import main
        from projcalc.harness import read_element

        path = write_pair(
            tmp_path / "pair.json",
            [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 1, 0], [0, 0, 0]],
        )
        runner = CliRunner()
        out = tmp_path / "join.json"
        args = ["subspace", "--op", "join", "--in", path, "--out", str(out)]
        result = runner.invoke(main, args)

        assert result.exit_code == 0
        assert not read_element(out).data[2, 2]

        result = runner.invoke(main, ["subspace", "--op", "decomp", "--in", path])
        assert "decomp: projection of rank 2" in result.output

    def test_decomp_rejects_non_projection(self, tmp_path, monkeypatch):
        from projcalc.idempotents import idempotents

        monkeypatch.setattr(idempotents, "mp_transfer", lambda pair: 2 * pair.one)
        path = write_pair(
            tmp_path / "pair.json", [[1, 0], [0, 0]], [[HALF, HALF], [HALF, HALF]]
        )
        result = run("subspace", "--op", "decomp", "--in", path)

        assert result.exit_code == 1
        assert "Error" in result.output
        assert "decomp: projection" not in result.output


class TestCampaign:
    def test_campaign(self, tmp_path):
        from projcalc.cli_tools.projcalc import main

        config = tmp_path / "campaign.toml"
        config.write_text(
            'backend = "exact"\n'
            "dims = [2]\n"
            "trials_per_dim = 2\n"
            "seed = 1\n"
            'theorems = ["L2.2", "R3.8"]\n'
        )
        report = tmp_path / "out" / "report.jsonl"
        args = ["campaign", "--config", str(config), "--report", str(report)]
        result = CliRunner().invoke(main, args)

        assert result.exit_code == 0
        lines = report.read_text().splitlines()
        assert len(lines) == 2 * 8 + 1
        assert "exit code 0" in result.output

    def test_bad_config(self, tmp_path):
        from projcalc.cli_tools.projcalc import main

        config = tmp_path / "campaign.toml"
        config.write_text('backend = "exact"\ndims = [2]\n')
        args = ["campaign", "--config", str(config), "--report", str(tmp_path / "r")]
        result = CliRunner().invoke(main, args)

        assert result.exit_code == 1


class TestProbe:
    def test_probe(self):
        from projcalc.cli_tools.projcalc import main

        args = ["probe", "--dims", "2", "--dims", "3", "--trials", "5"]
        result = CliRunner().invoke(main, args)

        assert result.exit_code == 0
        assert "Disagreements" in result.output
