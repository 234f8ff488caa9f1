"""End-to-end checks of the infops command-line tool.

Usage: cli_test.py <path-to-infops> <data-dir>
"""

import json
import os
import re
import shutil
import subprocess
import sys
import tempfile
import unittest

import networkx as nx

BIN = ""
DATA = ""


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("INFOPS_TAXONOMY", None)
    full_env.pop("INFOPS_CATALOG", None)
    if env:
        full_env.update(env)
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=full_env)


def data(rel):
    return os.path.join(DATA, rel)


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def write(self, name, text):
        path = os.path.join(self.tmp, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        return path

    # validate

    def test_validate_bundled_inputs(self):
        r = run("--corpus", data("fixtures/derived_fixture_corpus.csv"), "validate")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("81 incidents", r.stdout)

    def test_validate_shared_technique(self):
        with open(data("catalog.json"), encoding="utf-8") as f:
            catalog = json.load(f)
        catalog["strategies"][1]["preparation_techniques"].append("T0085")
        path = self.write("catalog.json", json.dumps(catalog))
        r = run("--catalog", path, "validate")
        self.assertEqual(r.returncode, 1)
        self.assertIn("DisjointnessViolation", r.stderr)

    def test_validate_missing_file(self):
        r = run("--taxonomy", os.path.join(self.tmp, "absent.json"), "validate")
        self.assertEqual(r.returncode, 2)
        r = run("--corpus", os.path.join(self.tmp, "absent.csv"), "validate")
        self.assertEqual(r.returncode, 2)

    def test_env_overrides_default_paths(self):
        r = run("validate", env={"INFOPS_TAXONOMY": os.path.join(self.tmp, "absent.json")})
        self.assertEqual(r.returncode, 2)
        tax = self.write("tax.json", open(data("taxonomy.json"), encoding="utf-8").read())
        cat = self.write("cat.json", open(data("catalog.json"), encoding="utf-8").read())
        r = run("validate", env={"INFOPS_TAXONOMY": tax, "INFOPS_CATALOG": cat})
        self.assertEqual(r.returncode, 0, r.stderr)
        # flag wins over the environment
        r = run("--taxonomy", data("taxonomy.json"), "validate", env={"INFOPS_TAXONOMY": "/absent"})
        self.assertEqual(r.returncode, 0, r.stderr)

    # stats

    def test_stats_fixture(self):
        r = run("--corpus", data("fixtures/derived_fixture_corpus.csv"), "stats")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        nr = next(e for e in doc["prevalence"]["strategies"] if e["id"] == "NR")
        self.assertEqual(nr["fraction"]["percent"], "97.5")
        self.assertEqual(doc["prevalence"]["denominator"], 80)
        self.assertEqual(doc["coverage"]["fraction"]["numerator"], 80)
        self.assertEqual(doc["coverage"]["fraction"]["denominator"], 81)

    def test_stats_hand_corpus(self):
        r = run("--corpus", data("fixtures/hand4.csv"), "stats")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        counts = {e["id"]: e["count"] for e in doc["prevalence"]["strategies"]}
        self.assertEqual(counts, {"NR": 3, "NS": 0, "NA": 0, "CNR": 0, "NM": 2, "TD": 0, "IP": 2})
        self.assertEqual(doc["size_distribution"]["multi_strategy"], 2)
        self.assertEqual(doc["patterns"]["distinct"], 4)

    def test_stats_empty_corpus(self):
        path = self.write("empty.csv", "incident_id,title,year,targets,techniques\n")
        r = run("--corpus", path, "stats")
        self.assertEqual(r.returncode, 1)
        self.assertIn("EmptyCorpus", r.stderr)

    def test_stats_requires_corpus(self):
        self.assertEqual(run("stats").returncode, 1)

    def test_stats_is_byte_identical_and_out_file_matches(self):
        args = ("--corpus", data("fixtures/derived_fixture_corpus.csv"), "stats")
        a, b = run(*args), run(*args)
        self.assertEqual(a.stdout, b.stdout)
        out = os.path.join(self.tmp, "stats.json")
        self.assertEqual(run("--out", out, *args).returncode, 0)
        with open(out, encoding="utf-8") as f:
            self.assertEqual(f.read(), a.stdout)

    def test_pretty_output(self):
        r = run("--corpus", data("fixtures/derived_fixture_corpus.csv"), "--pretty", "stats")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("97.5%", r.stdout)
        self.assertIn("80/81", r.stdout)

    def test_unwritable_out_is_io_error(self):
        r = run("--corpus", data("fixtures/hand4.csv"), "--out", os.path.join(self.tmp, "no", "dir.json"), "stats")
        self.assertEqual(r.returncode, 2)

    # ingestion modes

    def test_strict_and_lenient(self):
        path = self.write("c.csv", "incident_id,title,year,targets,techniques\nA,t,2020,,T0115|T9999\n")
        strict = run("--corpus", path, "classify")
        self.assertEqual(strict.returncode, 1)
        self.assertIn("T9999", strict.stderr)
        lenient = run("--corpus", path, "--lenient", "classify")
        self.assertEqual(lenient.returncode, 0, lenient.stderr)
        self.assertIn("T9999", lenient.stderr)
        self.assertEqual(json.loads(lenient.stdout)["mapped"], 1)
        self.assertEqual(run("--corpus", path, "--strict", "--lenient", "classify").returncode, 1)

    def test_strict_prep_only_removes(self):
        base = json.loads(run("--corpus", data("fixtures/hand4.csv"), "classify").stdout)
        prep = json.loads(run("--corpus", data("fixtures/hand4.csv"), "--strict-prep", "classify").stdout)
        for a, b in zip(base["incidents"], prep["incidents"]):
            self.assertTrue(set(b["strategies"]) <= set(a["strategies"]))
        self.assertEqual(next(i for i in prep["incidents"] if i["incident_id"] == "H2")["strategies"], ["IP"])

    # graph

    def test_single_incident_dot(self):
        r = run("--corpus", data("fixtures/single_nr.csv"), "graph", "--kind", "cooccurrence", "--format", "dot")
        self.assertEqual(r.returncode, 0, r.stderr)
        text = r.stdout.strip()
        self.assertTrue(text.startswith("graph cooccurrence {"))
        self.assertTrue(text.endswith("}"))
        self.assertEqual(text.count("{"), text.count("}"))
        nodes = re.findall(r'^\s*"(\w+)"\s*\[', text, re.M)
        edges = re.findall(r"--", text)
        self.assertEqual(nodes, ["NR"])
        self.assertEqual(edges, [])

    def test_conditional_json(self):
        r = run("--corpus", data("fixtures/hand4.csv"), "graph", "--kind", "conditional", "--format", "json")
        self.assertEqual(r.returncode, 0, r.stderr)
        doc = json.loads(r.stdout)
        edge = next(e for e in doc["edges"] if e["source"] == "NR" and e["target"] == "IP")
        self.assertEqual((edge["numerator"], edge["denominator"]), (2, 3))
        self.assertAlmostEqual(edge["decimal"], 2 / 3, places=6)

    def test_graphml_round_trip(self):
        for kind in ("cooccurrence", "conditional"):
            r = run("--corpus", data("fixtures/derived_fixture_corpus.csv"), "graph", "--kind", kind,
                    "--format", "graphml")
            self.assertEqual(r.returncode, 0, r.stderr)
            j = json.loads(run("--corpus", data("fixtures/derived_fixture_corpus.csv"), "graph", "--kind", kind,
                               "--format", "json").stdout)
            path = self.write(kind + ".graphml", r.stdout)
            g = nx.read_graphml(path)
            self.assertEqual(g.is_directed(), kind == "conditional")
            self.assertEqual(sorted(g.nodes), sorted(n["id"] for n in j["nodes"]))
            for n in j["nodes"]:
                self.assertEqual(int(g.nodes[n["id"]]["count"]), n["count"])
            self.assertEqual(g.number_of_edges(), len(j["edges"]))
            for e in j["edges"]:
                w = g.edges[e["source"], e["target"]]["weight"]
                expected = e["weight"] if kind == "cooccurrence" else e["decimal"]
                self.assertAlmostEqual(float(w), expected, places=6)

    def test_graph_outputs_are_deterministic(self):
        for kind in ("cooccurrence", "conditional"):
            for fmt in ("dot", "graphml", "json"):
                args = ("--corpus", data("fixtures/derived_fixture_corpus.csv"), "graph", "--kind", kind,
                        "--format", fmt)
                self.assertEqual(run(*args).stdout, run(*args).stdout)

    def test_unknown_format(self):
        r = run("--corpus", data("fixtures/hand4.csv"), "graph", "--format", "svg")
        self.assertEqual(r.returncode, 1)
        self.assertIn("UnknownFormat", r.stderr)

    def test_negative_support(self):
        r = run("--corpus", data("fixtures/hand4.csv"), "--min-support", "-1", "graph")
        self.assertEqual(r.returncode, 1)

    # generate

    def test_generate_fixture_is_deterministic(self):
        spec = data("fixtures/derived_fixture_spec.json")
        a = run("generate", "--spec", spec, "--seed", "7")
        b = run("generate", "--spec", spec, "--seed", "7")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(a.stdout, b.stdout)
        self.assertEqual(len(a.stdout.strip().splitlines()), 82)
        with open(data("fixtures/derived_fixture_corpus.csv"), encoding="utf-8") as f:
            self.assertEqual(a.stdout, f.read())
        out = os.path.join(self.tmp, "fx.json")
        self.assertEqual(run("--out", out, "generate", "--spec", spec).returncode, 0)
        with open(out, encoding="utf-8") as f:
            self.assertEqual(len(json.load(f)), 81)

    def test_generate_infeasible(self):
        path = self.write("bad.json", json.dumps({
            "mode": "marginal-solver", "seed": 1,
            "marginals": {"NR": 3}, "size_distribution": {"1": 1, "2": 2}}))
        r = run("generate", "--spec", path)
        self.assertEqual(r.returncode, 1)
        self.assertIn("handshake identity", r.stderr)

    def test_generate_exact_patterns_feed_through(self):
        spec = self.write("exact.json", json.dumps({
            "mode": "exact-patterns", "seed": 3, "unmapped_count": 2,
            "pattern_counts": [
                {"strategies": ["NR", "IP"], "count": 4},
                {"strategies": ["TD"], "count": 3},
                {"strategies": ["NS", "NA", "CNR"], "count": 1}]}))
        out = os.path.join(self.tmp, "exact.csv")
        self.assertEqual(run("--out", out, "generate", "--spec", spec).returncode, 0)
        doc = json.loads(run("--corpus", out, "stats").stdout)
        rows = {tuple(r["strategies"]): r["exact"] for r in doc["patterns"]["rows"]}
        self.assertEqual(rows, {("NR", "IP"): 4, ("TD",): 3, ("NS", "NA", "CNR"): 1})
        self.assertEqual(doc["coverage"]["unmapped"], 2)

    def test_generate_missing_spec(self):
        r = run("generate", "--spec", os.path.join(self.tmp, "absent.json"))
        self.assertEqual(r.returncode, 2)

    # misc

    def test_summary(self):
        r = run("--corpus", data("fixtures/hand4.csv"), "summary")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("T0115", r.stdout)

    def test_usage_errors(self):
        self.assertEqual(run().returncode, 1)
        self.assertEqual(run("frobnicate").returncode, 1)
        self.assertEqual(run("--help").returncode, 0)


if __name__ == "__main__":
    BIN, DATA = sys.argv[1], sys.argv[2]
    unittest.main(argv=[sys.argv[0], "-v"])
