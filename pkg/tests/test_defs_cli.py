import json
import os
import subprocess
import sys

import pytest

from powdom.cli import main
from powdom.defs import Workspace, load_workspace, transformer_literal
from powdom.errors import ParseError, UnknownName
from powdom.extnum import ExtNN
from powdom.monad import p_transform, q_transform

SAMPLE = """
# definitions exercising every statement kind
poset P3
elems lo mid hi
le lo mid
le mid hi
end

algebra twojoin on P3
op sup arity 2 tag EQ
op bot arity 0 tag EQ
table sup { (lo,lo)->lo; (lo,mid)->mid; (lo,hi)->hi;
            (mid,lo)->mid; (mid,mid)->mid; (mid,hi)->hi;
            (hi,lo)->hi; (hi,mid)->hi; (hi,hi)->hi }
table bot { () -> lo }
end

algebra rmix on extnn
op add arity 2 tag LE
op max arity 2 tag GE
op scale arity 1 tag EQ
op zero arity 0 tag EQ
builtin add add
builtin max max
builtin scale scale 1/2
builtin zero const 0
end

map u : C2 -> C2 { bot |-> bot; top |-> top }
valuation mu on C2 val { 1/2 @ bot; 1/3 @ top }
valuation nu on A2 val { 1/2 @ a }
subfn phi on A2 sup{ val{ 1 @ a }; val{ 1 @ b } }
supfn psi on A2 inf{ val{ 1 @ a }; val{ 1 @ b } }
predicate f on A2 pred { a -> 1; b -> 2 }

transformer t : C2 -> C2 with 2_ang
at bot { [0,0] -> 0; [0,1] -> 0; [1,1] -> 1 }
at top { [0,0] -> 0; [0,1] -> 1; [1,1] -> 1 }
end
"""


@pytest.fixture
def sample_path(tmp_path):
    path = tmp_path / "sample.defs"
    path.write_text(SAMPLE, encoding="utf-8")
    return str(path)


class TestParser:
    def test_loads_everything(self, sample_path):
        ws = load_workspace([sample_path])
        assert ws.poset("P3").size == 3
        assert ws.algebra("twojoin").apply("sup", (0, 2)) == 2
        assert ws.algebra("rmix").apply("scale", (ExtNN(4),)) is not None
        assert ws.valuation("mu").mass() == ExtNN.parse("5/6")
        assert ws.functional("phi").components
        assert ws.predicates["f"].values[1] == ExtNN(2)
        assert ws.transformer("t").source.labels == ("bot", "top")

    def test_scale_builtin_uses_fixed_factor(self, sample_path):
        ws = load_workspace([sample_path])
        # the declared factor realises the op; law checks quantify over the
        # parametric family separately
        assert ws.algebra("rmix").apply("scale", (ExtNN(4),), ExtNN.parse("1/2")) == ExtNN(2)

    def test_parse_error_carries_location(self, tmp_path):
        path = tmp_path / "broken.defs"
        path.write_text("poset X\nelems a b\nle a c\nend\n", encoding="utf-8")
        with pytest.raises(ParseError) as err:
            load_workspace([str(path)])
        assert "broken.defs" in str(err.value)

    def test_cycle_reported(self, tmp_path):
        path = tmp_path / "cycle.defs"
        path.write_text("poset X\nelems a b\nle a b\nle b a\nend\n", encoding="utf-8")
        with pytest.raises(ParseError) as err:
            load_workspace([str(path)])
        assert "cycle" in str(err.value).lower()

    def test_builtin_names_protected(self, tmp_path):
        path = tmp_path / "clash.defs"
        path.write_text("poset C2\nelems a b\nend\n", encoding="utf-8")
        with pytest.raises(ParseError) as err:
            load_workspace([str(path)])
        assert "already defined" in str(err.value)

    def test_unknown_reference(self, tmp_path):
        path = tmp_path / "ref.defs"
        path.write_text("map u : nowhere -> C2 { }\n", encoding="utf-8")
        with pytest.raises(UnknownName):
            load_workspace([str(path)])

    def test_undeclared_realisation_rejected(self, tmp_path):
        path = tmp_path / "typo.defs"
        path.write_text(
            "algebra bad on C2\n"
            "op join arity 2 tag EQ\n"
            "table join { (bot,bot)->bot; (bot,top)->top; (top,bot)->top; (top,top)->top }\n"
            "table typo { () -> bot }\n"
            "end\n",
            encoding="utf-8",
        )
        with pytest.raises(ParseError) as err:
            load_workspace([str(path)])
        assert "typo" in str(err.value)

    def test_non_monotone_map_rejected(self, tmp_path):
        path = tmp_path / "mono.defs"
        path.write_text(
            "map u : C2 -> C2 { bot |-> top; top |-> bot }\n", encoding="utf-8"
        )
        with pytest.raises(ParseError) as err:
            load_workspace([str(path)])
        assert "monoton" in str(err.value)

    def test_transformer_roundtrips_via_literal(self, sample_path):
        ws = load_workspace([sample_path])
        t = ws.transformer("t")
        literal = transformer_literal("t2", t, "C2", "C2", "2_ang")
        ws2 = Workspace()
        ws2.load_text("<inline>", literal)
        assert ws2.transformer("t2") == t

    def test_pq_on_parsed_transformer(self, sample_path):
        ws = load_workspace([sample_path])
        t = ws.transformer("t")
        assert q_transform(p_transform(t)) == t


def run_cli(args, env_extra=None):
    env = dict(os.environ)
    env.pop("POWDOM_SEED", None)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run(
        [sys.executable, "-m", "powdom.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )
    return proc


class TestCli:
    def test_check_entropic_pass(self):
        proc = run_cli(["check", "--entropic", "2_ang"])
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["verdict"] == "pass"

    def test_check_non_entropic_exit_one(self):
        proc = run_cli(["check", "--entropic", "lattice2"])
        assert proc.returncode == 1
        data = json.loads(proc.stdout)
        assert data["verdict"] == "fail"

    def test_unknown_name_exit_two(self):
        proc = run_cli(["check", "--entropic", "nosuch"])
        assert proc.returncode == 2

    def test_usage_error_exit_two(self):
        proc = run_cli(["check", "2_ang"])  # missing mode flag
        assert proc.returncode == 2

    def test_size_guard_exit_three(self):
        proc = run_cli(["homs", "grid2", "2_ang", "--size-guard", "10"])
        assert proc.returncode == 3

    def test_parse_error_exit_two(self, tmp_path):
        bad = tmp_path / "bad.defs"
        bad.write_text("poset X\nelems a a\nend\n", encoding="utf-8")
        proc = run_cli(["check", "--entropic", "2_ang", "-f", str(bad)])
        assert proc.returncode == 2
        assert "bad.defs" in proc.stderr

    def test_env_seed_override(self):
        proc = run_cli(
            ["check", "--relaxed", "rplus_max", "--trials", "50", "--seed", "7"],
            env_extra={"POWDOM_SEED": "99"},
        )
        data = json.loads(proc.stdout)
        assert data["config"]["seed"] == 99

    def test_powerdomain_hoare(self, tmp_path):
        dot = tmp_path / "h.dot"
        proc = run_cli(["powerdomain", "hoare", "C2", "--dot", str(dot)])
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["powerdomain"]["count"] == 3
        assert dot.read_text().startswith('digraph "hoare_C2"')

    def test_powerdomain_smyth(self):
        proc = run_cli(["powerdomain", "smyth", "A2"])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["powerdomain"]["count"] == 4

    def test_powerdomain_sober(self):
        proc = run_cli(["powerdomain", "sober", "C2"])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["count"] == 2

    def test_families(self):
        for cmd, key in (("homs", "homs"), ("free", "free"), ("relaxed", "relaxed")):
            proc = run_cli([cmd, "A2", "2_ang"])
            assert proc.returncode == 0
            data = json.loads(proc.stdout)
            assert data[key]["count"] == 4
        data = json.loads(run_cli(["free", "A2", "2_ang"]).stdout)
        assert data["comparison"]["equal"] is True

    def test_transform_roundtrip_via_files(self, tmp_path, sample_path):
        p2q = run_cli(["transform", "p2q", "t", "-f", sample_path])
        assert p2q.returncode == 0
        data = json.loads(p2q.stdout)
        assert data["classification"] == "hom"
        back_file = tmp_path / "back.defs"
        back_file.write_text(data["result"], encoding="utf-8")
        q2p = run_cli(["transform", "q2p", "t_p", "-f", str(back_file)])
        assert q2p.returncode == 0
        out = json.loads(q2p.stdout)["result"]
        lines = [l for l in out.splitlines() if l.startswith("at ")]
        original = [
            "at bot { [0,0] -> 0; [0,1] -> 0; [1,1] -> 1 }",
            "at top { [0,0] -> 0; [0,1] -> 1; [1,1] -> 1 }",
        ]
        assert lines == original

    def test_transform_classifies_relaxed(self, tmp_path):
        # over an oplax-tagged join, the detector that fires only on the
        # constant-1 predicate is a relaxed morphism but not a homomorphism
        defs = tmp_path / "relaxed.defs"
        defs.write_text(
            "poset B2\n"
            "elems 0 1\n"
            "le 0 1\n"
            "end\n"
            "algebra lax_join on B2\n"
            "op join arity 2 tag GE\n"
            "op zero arity 0 tag EQ\n"
            "table join { (0,0)->0; (0,1)->1; (1,0)->1; (1,1)->1 }\n"
            "table zero { () -> 0 }\n"
            "end\n"
            "transformer tr : A2 -> A2 with lax_join\n"
            "at a { [0,0] -> 0; [0,1] -> 0; [1,0] -> 0; [1,1] -> 1 }\n"
            "at b { [0,0] -> 0; [0,1] -> 0; [1,0] -> 0; [1,1] -> 1 }\n"
            "end\n",
            encoding="utf-8",
        )
        proc = run_cli(["transform", "p2q", "tr", "-f", str(defs)])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["classification"] == "relaxed"

    def test_valuation_command(self, sample_path):
        proc = run_cli(["valuation", "mu", "-f", sample_path, "--trials", "100"])
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["verdict"] == "pass"

    def test_valuation_against(self, sample_path):
        proc = run_cli(
            ["valuation", "nu", "--against", "phi", "-f", sample_path, "--trials", "100"]
        )
        assert proc.returncode == 0
        data = json.loads(proc.stdout)
        assert data["against"] == "phi"

    def test_export_dot(self, tmp_path):
        dot = tmp_path / "c2.dot"
        proc = run_cli(["export-dot", "C2", "--dot", str(dot)])
        assert proc.returncode == 0
        assert '"bot" -> "top"' in dot.read_text()

    def test_in_process_main_matches_subprocess(self, capsys):
        code = main(["check", "--entropic", "2_dem"])
        out = capsys.readouterr().out
        assert code == 0
        assert json.loads(out)["verdict"] == "pass"
