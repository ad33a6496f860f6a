"""Command line behaviour: exit codes, text output and --json against the schemas.

Run as: cli_test.py <pact binary> <fixtures dir> <schemas dir>
"""

import json
import os
import shutil
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

PACT, FIXTURES, SCHEMAS = sys.argv[1:4]
del sys.argv[1:4]


def load_schema(name):
    with open(os.path.join(SCHEMAS, name)) as f:
        return json.load(f)


INSTANCE = load_schema("instance.schema.json")
OUTPUT = load_schema("cli-output.schema.json")
REGISTRY = Registry().with_resources(
    [(s["$id"], Resource.from_contents(s)) for s in (INSTANCE, OUTPUT)]
)


def fixture(name):
    return os.path.join(FIXTURES, name)


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("PACT_FIXTURES", None)
    full_env.update(env or {})
    return subprocess.run([PACT, *args], capture_output=True, text=True, env=full_env)


class Base(unittest.TestCase):
    def expect(self, proc, code):
        self.assertEqual(proc.returncode, code, proc.stdout + proc.stderr)

    def json_out(self, proc, schema):
        doc = json.loads(proc.stdout)
        jsonschema.validate(doc, schema, registry=REGISTRY)
        return doc


class Fixtures(Base):
    def test_fixtures_match_instance_schema(self):
        for name in sorted(os.listdir(FIXTURES)):
            with open(fixture(name)) as f:
                jsonschema.validate(json.load(f), INSTANCE, registry=REGISTRY)

    def test_every_fixture_but_remark_x_validates(self):
        for name in sorted(os.listdir(FIXTURES)):
            proc = run("validate", fixture(name))
            self.expect(proc, 1 if name == "remark-x.json" else 0)


class Commands(Base):
    def test_classify(self):
        proc = run("classify", fixture("fix-c.json"))
        self.expect(proc, 0)
        self.assertEqual(proc.stdout, "transitive: true, free: true\n")
        doc = self.json_out(run("classify", fixture("fix-b.json"), "--json"), OUTPUT)
        self.assertEqual((doc["transitive"], doc["free"]), (False, False))

    def test_validate_remark_x(self):
        proc = run("validate", fixture("remark-x.json"), "--json")
        self.expect(proc, 1)
        doc = self.json_out(proc, OUTPUT)
        first = doc["report"]["violations"][0]
        self.assertEqual(first["condition"], "(i)")
        self.assertIn("x2", first["witness"])

    def test_remark_x_needs_bypass(self):
        self.expect(run("orbits", fixture("remark-x.json")), 2)
        proc = run("orbits", fixture("remark-x.json"), "--bypass-validation")
        self.expect(proc, 0)
        self.assertIn("one-step relation not transitive: x1~x2, x2~x3, x1!~x3", proc.stdout)
        doc = self.json_out(run("orbits", fixture("remark-x.json"), "--bypass-validation", "--json"), OUTPUT)
        self.assertTrue(doc["tainted"])
        self.assertEqual(doc["non_transitivity_witness"], ["x1", "x2", "x3"])

    def test_globalize_fix_b(self):
        proc = run("globalize", fixture("fix-b.json"), "--json")
        self.expect(proc, 0)
        doc = self.json_out(proc, INSTANCE)
        self.assertEqual([c[0] for c in doc["classes"]], ["[e,a]", "[e,b]", "[s,b]"])
        self.assertEqual(doc["classes"][0][1], [["e", "a"], ["s", "a"]])
        self.assertEqual(doc["embedding"], [["a", "[e,a]"], ["b", "[e,b]"]])
        self.assertNotIn("tainted", doc)

    def test_globalize_output_file_reloads(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = os.path.join(tmp, "envelope.json")
            self.expect(run("globalize", fixture("fix-b.json"), "-o", out), 0)
            env = {"PACT_FIXTURES": FIXTURES}
            self.expect(run("validate", out, env=env), 0)
            info = self.json_out(run("info", out, "--json", env=env), OUTPUT)
            self.assertTrue(info["global"])
            self.assertEqual(info["carrier_size"], 3)
            proc = run("coset-check", fixture("fix-c.json"), "--at", "u", "--envelope", out, env=env)
            self.expect(proc, 2)  # envelope over another groupoid
            out_c = os.path.join(tmp, "envelope-c.json")
            self.expect(run("globalize", fixture("fix-c.json"), "-o", out_c), 0)
            proc = run("coset-check", fixture("fix-c.json"), "--at", "v", "--envelope", out_c, env=env)
            self.expect(proc, 0)

    def test_globalize_with_topology(self):
        proc = run("globalize", fixture("sierp-act.json"), "--topology", "--json")
        self.expect(proc, 0)
        doc = self.json_out(proc, INSTANCE)
        topo = doc["payload"]["topology"]
        self.assertEqual(topo["carrier"], doc["payload"]["carrier"])
        self.assertEqual(len(topo["carrier"]), 3)

    def test_globalize_tainted(self):
        proc = run("globalize", fixture("remark-x.json"), "--bypass-validation", "--json")
        self.expect(proc, 0)
        self.assertTrue(self.json_out(proc, INSTANCE)["tainted"])

    def test_topology_report(self):
        proc = run("topology-report", fixture("sierp-act.json"))
        self.expect(proc, 1)
        self.assertEqual(proc.stdout.splitlines()[0], "graph_open: true, graph_closed: false, MG_hausdorff: false")
        doc = self.json_out(run("topology-report", fixture("sierp-act.json"), "--json"), OUTPUT)
        self.assertTrue(doc["pi_open"] and doc["iota_open_embedding"] and doc["fiber_formula_holds"])
        self.expect(run("topology-report", fixture("fix-b-discrete.json")), 0)
        self.expect(run("topology-report", fixture("fix-b.json")), 2)

    def test_coset_check(self):
        proc = run("coset-check", fixture("fix-c.json"), "--at", "u")
        self.expect(proc, 0)
        self.assertIn("classes: 2", proc.stdout)
        doc = self.json_out(run("coset-check", fixture("z4-two.json"), "--at", "a", "--json"), OUTPUT)
        self.assertEqual(doc["classes"], 2)
        self.assertTrue(doc["isotropy_isomorphic"])
        proc = run("coset-check", fixture("fix-b.json"), "--at", "a")
        self.expect(proc, 1)
        self.assertTrue(proc.stdout.startswith("precondition failed"))
        self.expect(run("coset-check", fixture("fix-c.json"), "--at", "w"), 2)

    def test_isomorphic(self):
        proc = run("isomorphic", fixture("fix-b.json"), fixture("z2-swap.json"))
        self.expect(proc, 1)
        self.assertEqual(proc.stdout, "none\n")
        doc = self.json_out(run("isomorphic", fixture("fix-c.json"), fixture("fix-c.json"), "--json"), OUTPUT)
        self.assertEqual(doc["witness"], {"u": "u", "v": "v"})
        self.expect(run("isomorphic", fixture("fix-b.json"), fixture("fix-c.json")), 2)

    def test_json_outputs_match_schema(self):
        for name in ("fix-b.json", "fix-c.json", "sierp-act.json", "z2-swap.json", "z4-two.json"):
            for cmd in ("validate", "info", "orbits", "classify"):
                proc = run(cmd, fixture(name), "--json")
                self.expect(proc, 0)
                self.json_out(proc, OUTPUT)
        self.json_out(run("info", fixture("remark-g.json"), "--json"), OUTPUT)


class Errors(Base):
    def test_usage(self):
        for args in ((), ("frobnicate",), ("classify",)):
            proc = run(*args)
            self.expect(proc, 2)
            self.assertIn("Usage", proc.stderr)

    def test_missing_and_malformed_files(self):
        self.expect(run("info", fixture("absent.json")), 2)
        with tempfile.TemporaryDirectory() as tmp:
            bad = os.path.join(tmp, "bad.json")
            with open(bad, "w") as f:
                f.write('{\n  "kind": "action",\n  "meta": {,\n}\n')
            proc = run("info", bad)
            self.expect(proc, 2)
            self.assertIn("line 3", proc.stderr)

    def test_fixture_directory_override(self):
        with tempfile.TemporaryDirectory() as tmp:
            shutil.copy(fixture("fix-b.json"), tmp)
            moved = os.path.join(tmp, "fix-b.json")
            self.expect(run("classify", moved, env={"PACT_FIXTURES": FIXTURES}), 0)
            self.expect(run("classify", moved, env={"PACT_FIXTURES": tmp}), 2)


if __name__ == "__main__":
    unittest.main(verbosity=2)
