"""End-to-end checks of the tuttebraid executable: schema, determinism, exit codes, cache."""
import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BIN = os.environ.get("TUTTEBRAID_BIN", "tuttebraid")
HERE = os.path.dirname(os.path.abspath(__file__))
DATA = os.path.join(HERE, "data")
ROOT = os.path.dirname(os.path.dirname(HERE))

with open(os.path.join(ROOT, "docs", "report.schema.json")) as f:
    SCHEMA = json.load(f)
VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


def run(*args, env=None, stdin=""):
    full_env = dict(os.environ)
    full_env.pop("TUTTEBRAID_CACHE_DIR", None)
    full_env.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env, input=stdin, timeout=600)


def data(name):
    return os.path.join(DATA, name)


# one invocation per subcommand, all fast
COMMANDS = [
    ["graph", "gen", "--family", "apollonian", "--n", "7"],
    ["graph", "transform", "--family", "cycle", "--n", "4", "--op", "thicken", "--times", "3"],
    ["graph", "info", "--graph", "gen:wheel:k=5"],
    ["tutte", "eval", "--family", "complete", "--n", "5", "--x", "B5", "--y", "1/2"],
    ["tutte", "eval", "--family", "cycle", "--n", "5", "--x", "z:0,1,0,0,0,0,0,0", "--y", "2"],
    ["tutte", "poly", "--family", "wheel", "--k", "4"],
    ["tutte", "brute", "--family", "complete", "--n", "4", "--x", "2", "--y", "3"],
    ["chromatic", "eval", "--family", "complete", "--n", "4", "--lambda", "B10", "--approx"],
    ["chromatic", "sign", "--family", "gnp", "--n", "7", "--p", "0.5", "--lambda", "-3/2"],
    ["chromatic", "bounds", "--family", "complete", "--n", "4", "--lambda", "B5"],
    ["chromatic", "beraha-survey", "--family", "maximal_outerplanar", "--index", "5", "--max-n", "7", "--per-size", "2"],
    ["verify", "golden", "--family", "apollonian", "--max-n", "8", "--count", "5"],
    ["verify", "cone", "--family", "cycle", "--n", "5"],
    ["verify", "signs", "--count", "10"],
    ["verify", "gadgets"],
    ["verify", "tait"],
    ["braid", "amplitude", "--braid", data("id4.braid")],
    ["braid", "bracket", "--word", "m=2 s1 s1 s1"],
    ["braid", "invariants", "--word", "m=4 s2 s2 s2"],
    ["braid", "sample", "--word", "m=4 s2 s1^-1 s3", "--shots", "200"],
    ["braid", "estimate", "--word", "m=4 s2 s2 s2"],
    ["braid", "decide", "--word", "m=4 s2 s2 s2"],
    ["braid", "decide", "--word", "m=4 s2 s2 s2", "--mode", "sign"],
    ["aa", "run", "--problem", "colorings:gen:complete:n=3:3", "--exact"],
    ["aa", "run", "--problem", "ham-m1:gen:complete:n=5", "--exact"],
    ["aa", "run", "--problem", "dnf:" + data("small.dnf"), "--exact"],
    ["aa", "quartile", "--problem", "stable-sets:gen:cycle:n=6", "--r", "4"],
    ["aa", "gap", "--plus", "stable-sets:gen:path:n=6", "--minus", "stable-sets:gen:cycle:n=6"],
    ["aa", "combine", "--op", "add", "--f", "all-accept:3", "--g", "stable-sets:gen:path:n=3"],
    ["aa", "combine", "--op", "neg", "--f", "all-reject:3"],
    ["ss", "quartile", "--family", "gnp", "--n", "12", "--p", "0.3", "--r", "64"],
    ["dnf", "count", "--dnf", data("small.dnf")],
    ["dnf", "fpras", "--dnf", data("small.dnf")],
    ["sat", "identity", "--cnf", data("small.cnf")],
    ["rc", "sample", "--family", "wheel", "--k", "4", "--x", "2", "--y", "3"],
    ["rc", "sample", "--family", "cycle", "--n", "5", "--x", "1", "--y", "2"],
    ["experiment", "list"],
    ["experiment", "run", "--spec", data("empty.json")],
]


class SchemaAndDeterminism(unittest.TestCase):
    def test_every_command_validates_and_repeats(self):
        for argv in COMMANDS:
            with self.subTest(argv=" ".join(argv)):
                full = ["--seed", "11", *argv]
                a, b = run(*full), run(*full)
                self.assertEqual(a.returncode, 0, a.stderr)
                self.assertEqual(a.stdout, b.stdout)
                doc = json.loads(a.stdout)
                VALIDATOR.validate(doc)
                self.assertEqual(doc["command"], " ".join(argv[:2]))
                self.assertEqual(doc["seed"], 11)

    def test_seed_changes_sampled_output(self):
        # medians of batch means are quantized, so two seeds may still agree
        argv = ["aa", "run", "--problem", "stable-sets:gen:cycle:n=8"]
        seen = {json.loads(run("--seed", str(s), *argv).stdout)["result"]["aa"]["estimate"] for s in range(1, 7)}
        self.assertGreater(len(seen), 1)
        argv = ["braid", "sample", "--word", "m=4 s2 s2 s2", "--shots", "1000"]
        a = json.loads(run("--seed", "1", *argv).stdout)["result"]
        b = json.loads(run("--seed", "2", *argv).stdout)["result"]
        self.assertNotEqual(a, b)

    def test_pretty_format_is_same_document(self):
        argv = ["tutte", "poly", "--family", "complete", "--n", "4"]
        self.assertEqual(json.loads(run(*argv).stdout), json.loads(run("--format", "pretty", *argv).stdout))

    def test_timing_is_opt_in(self):
        argv = ["tutte", "eval", "--family", "complete", "--n", "4"]
        self.assertNotIn("timing", json.loads(run(*argv).stdout))
        doc = json.loads(run("--timing", *argv).stdout)
        VALIDATOR.validate(doc)
        self.assertIn("seconds", doc["timing"])

    def test_graph_from_stdin(self):
        g = {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}
        out = run("tutte", "eval", "--graph", "-", "--x", "2", "--y", "3", stdin=json.dumps(g))
        self.assertEqual(out.returncode, 0, out.stderr)
        self.assertEqual(json.loads(out.stdout)["result"]["value"], "17")


class Examples(unittest.TestCase):
    def test_chromatic_k4_at_b5(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "k4.json")
            with open(path, "w") as f:
                json.dump({"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}, f)
            out = run("chromatic", "eval", "--graph", path, "--lambda", "B5")
        self.assertEqual(out.returncode, 0, out.stderr)
        self.assertEqual(json.loads(out.stdout)["result"]["value"], {"a": "-1", "b": "0"})

    def test_identity_braid_amplitude(self):
        out = run("braid", "amplitude", "--braid", data("id4.braid"))
        self.assertEqual(out.returncode, 0, out.stderr)
        r = json.loads(out.stdout)["result"]
        self.assertEqual(r["amplitude"], ["1", "0", "0", "0", "0", "0", "0", "0"])
        d = (1 + 5 ** 0.5) / 2
        self.assertAlmostEqual(r["absV"], d * d, places=12)

    def test_verify_golden(self):
        out = run("verify", "golden", "--family", "apollonian", "--max-n", "12", "--count", "50")
        self.assertEqual(out.returncode, 0, out.stderr)
        r = json.loads(out.stdout)["result"]
        self.assertEqual(r["count"], 50)
        self.assertTrue(r["all_equal"])
        self.assertTrue(all(g["lhs"] == g["rhs"] for g in r["graphs"]))
        self.assertIn({"a": "3", "b": "4"}, [g["lhs"] for g in r["graphs"] if g["n"] == 4])

    def test_empty_experiment(self):
        with tempfile.TemporaryDirectory() as tmp:
            out_path = os.path.join(tmp, "report.json")
            out = run("experiment", "run", "--spec", data("empty.json"), "--out", out_path)
            self.assertEqual(out.returncode, 0, out.stderr)
            self.assertEqual(json.loads(out.stdout)["result"]["checks"], [])
            with open(out_path) as f:
                self.assertEqual(json.load(f)["checks"], [])

    def test_concentration_experiment(self):
        out = run("experiment", "run", "--spec", data("concentration.json"))
        self.assertEqual(out.returncode, 0, out.stderr)
        doc = json.loads(out.stdout)
        VALIDATOR.validate(doc)
        checks = {c["check"]: c for c in doc["result"]["checks"]}
        self.assertTrue(checks["aa-contract"]["pass"])
        for row in checks["aa-contract"]["details"]["problems"]:
            self.assertLess(float(row["violation_rate"]), 0.15)

    def test_unknown_check_lists_names(self):
        out = run("experiment", "run", "--spec", data("unknown.json"))
        self.assertEqual(out.returncode, 2)
        doc = json.loads(out.stdout)
        VALIDATOR.validate(doc)
        for name in ("golden-identity", "aa-contract", "hyperbola"):
            self.assertIn(name, doc["error"]["message"])


class ExitCodes(unittest.TestCase):
    def check_error(self, code, kind, *argv):
        out = run(*argv)
        self.assertEqual(out.returncode, code, out.stdout + out.stderr)
        doc = json.loads(out.stdout)
        VALIDATOR.validate(doc)
        self.assertEqual(doc["error"]["kind"], kind)

    def test_precondition(self):
        self.check_error(2, "precondition", "graph", "gen", "--family", "cycle", "--n", "2")
        self.check_error(2, "precondition", "rc", "sample", "--family", "cycle", "--n", "4", "--x", "1/2", "--y", "1/2")
        self.check_error(2, "precondition", "braid", "amplitude", "--word", "m=3 s1")
        self.check_error(2, "precondition", "aa", "run", "--problem", "all-accept:99999999999")

    def test_parse(self):
        self.check_error(2, "parse", "tutte", "eval", "--family", "cycle", "--n", "4", "--x", "one")
        self.check_error(2, "parse", "dnf", "count", "--dnf", data("id4.braid"))
        self.check_error(2, "parse", "tutte", "eval", "--graph", "-")
        self.check_error(2, "parse", "aa", "run", "--problem", "all-accept:99999999999999999999")
        self.check_error(2, "parse", "aa", "run", "--problem", "colorings:gen:complete:n=3:three")

    def test_cap(self):
        self.check_error(3, "cap_exceeded", "tutte", "eval", "--family", "complete", "--n", "17")
        self.check_error(3, "cap_exceeded", "tutte", "eval", "--family", "cycle", "--n", "12", "--cap-vertices", "8")

    def test_usage(self):
        for argv in (["frobnicate"], ["tutte"], ["tutte", "eval", "--nope"], [], ["--format", "xml", "verify", "tait"]):
            with self.subTest(argv=argv):
                out = run(*argv)
                self.assertEqual(out.returncode, 64)
                self.assertEqual(out.stdout, "")

    def test_help(self):
        self.assertEqual(run("--help").returncode, 0)


class Cache(unittest.TestCase):
    def test_hits_keep_stdout_identical(self):
        with tempfile.TemporaryDirectory() as tmp:
            env = {"TUTTEBRAID_CACHE_DIR": tmp}
            for argv in (["tutte", "eval", "--family", "wheel", "--k", "6", "--x", "3", "--y", "B10"],
                         ["chromatic", "eval", "--family", "apollonian", "--n", "9", "--lambda", "B10"]):
                with self.subTest(argv=argv):
                    cold = run(*argv, env=env)
                    warm = run(*argv, env=env)
                    plain = run(*argv)
                    self.assertEqual(cold.returncode, 0, cold.stderr)
                    self.assertNotIn("cache hit", cold.stderr)
                    self.assertIn("cache hit", warm.stderr)
                    self.assertEqual(cold.stdout, warm.stdout)
                    self.assertEqual(cold.stdout, plain.stdout)
            self.assertEqual(len(os.listdir(tmp)), 2)

    def test_isomorphic_graphs_share_entries(self):
        with tempfile.TemporaryDirectory() as tmp:
            env = {"TUTTEBRAID_CACHE_DIR": tmp}
            a = {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [1, 3]]}
            b = {"n": 4, "edges": [[3, 2], [2, 0], [0, 1], [2, 1]]}
            first = run("tutte", "eval", "--graph", "-", "--x", "2", "--y", "2", env=env, stdin=json.dumps(a))
            second = run("tutte", "eval", "--graph", "-", "--x", "2", "--y", "2", env=env, stdin=json.dumps(b))
            self.assertIn("cache hit", second.stderr)
            self.assertEqual(json.loads(first.stdout)["result"], json.loads(second.stdout)["result"])

    def test_unwritable_cache_is_ignored(self):
        out = run("tutte", "eval", "--family", "complete", "--n", "4", env={"TUTTEBRAID_CACHE_DIR": "/proc/nope"})
        self.assertEqual(out.returncode, 0, out.stderr)


if __name__ == "__main__":
    if len(sys.argv) > 1:
        BIN = sys.argv.pop(1)
    unittest.main(verbosity=2)
