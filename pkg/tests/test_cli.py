import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from pathlib import Path

from src.cli import (EXIT_FAIL, EXIT_PASS, EXIT_USAGE, REGISTERED_COMMANDS, SEED_VARIABLE, RunConfig,
                     build_parser, resolve_config, run)
from src.errors import DegreeError, ParseError

SMALL_CONFIG = """\
Truncation:
  order: 3
Hopf:
  degree: 3
  max_degree: 8
Sampling:
  seed: 7
  instances: 2
  seeds: 2
Report:
  format: text
  out: null
Logging:
  level: WARNING
"""


class CLITest(unittest.TestCase):
    """End to end runs with a small configuration, reports written to a file."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.config = self.dir / "config.yml"
        self.config.write_text(SMALL_CONFIG, encoding="utf-8")
        self.out = self.dir / "report"

    def tearDown(self):
        self.tmp.cleanup()

    def invoke(self, *argv, environ=None) -> int:
        stderr = StringIO()
        with redirect_stderr(stderr), redirect_stdout(StringIO()):
            code = run([*argv, "--config", str(self.config), "--out", str(self.out)], environ or {})
        self.stderr = stderr.getvalue()
        return code

    def report(self) -> dict:
        return json.loads(self.out.read_text(encoding="utf-8"))

    def test_bch_json(self):
        self.assertEqual(self.invoke("bch", "--degree", "4", "--format", "json"), EXIT_PASS)
        data = self.report()
        self.assertEqual([e["name"] for e in data["entries"]], ["bch-expansion", "bch-terms"])
        self.assertEqual(data["config"]["degree"], 4)
        self.assertEqual(data["config"]["seed"], 7)
        expansion = data["entries"][0]
        self.assertEqual(expansion["status"], "pass")
        self.assertIn("2: 1/2*[x,y]", expansion["details"]["info"]["terms"])

    def test_text(self):
        self.assertEqual(self.invoke("polar"), EXIT_PASS)
        text = self.out.read_text(encoding="utf-8")
        self.assertIn("PASS polar-table", text)
        self.assertIn("    X-(2) = -1/2*[Z-,Z+]", text)
        self.assertTrue(text.endswith("2/2 entries passed\n"))

    def test_symbolic_chi(self):
        self.assertEqual(self.invoke("chi", "--order", "3", "--symbolic", "--format", "json"), EXIT_PASS)
        entries = self.report()["entries"]
        self.assertEqual([e["name"] for e in entries],
                         ["chi-components", "chi-expansion", "defining-identity", "variant-agreement"])
        self.assertIn("2: -1/2*[P[a],a]", entries[0]["details"]["info"]["terms"])

    def test_only(self):
        self.assertEqual(self.invoke("verify-all", "--only", "bernoulli", "--format", "json"), EXIT_PASS)
        self.assertEqual([e["name"] for e in self.report()["entries"]], ["bernoulli"])

    def test_deterministic(self):
        self.invoke("magnus", "--format", "json")
        first = self.out.read_text(encoding="utf-8")
        self.invoke("magnus", "--format", "json")
        self.assertEqual(self.out.read_text(encoding="utf-8"), first)

    def test_seed_variable(self):
        self.assertEqual(self.invoke("bch", "--format", "json", "--seed", "3", environ={SEED_VARIABLE: "11"}),
                         EXIT_PASS)
        self.assertEqual(self.report()["config"]["seed"], 11)
        self.assertEqual(self.invoke("bch", environ={SEED_VARIABLE: "eleven"}), EXIT_USAGE)
        self.assertIn(SEED_VARIABLE, self.stderr)

    def test_errors(self):
        self.assertEqual(self.invoke("bch", "--degree", "9"), EXIT_FAIL)
        self.assertIn("DegreeError", self.stderr)
        self.assertEqual(self.invoke("nonsense"), EXIT_USAGE)
        with redirect_stderr(StringIO()):
            self.assertEqual(run([], {}), EXIT_USAGE)
            self.assertEqual(run(["bch", "--config", str(self.dir / "missing.yml")], {}), EXIT_USAGE)

    def test_algebra(self):
        self.assertEqual(self.invoke("chi", "--algebra", "matrix-poly", "--format", "json"), EXIT_PASS)
        entries = {e["name"]: e for e in self.report()["entries"]}
        self.assertEqual(entries["defining-identity"]["details"]["info"]["instances"], {"matrix-poly": 2})
        self.assertEqual(self.invoke("chi", "--algebra", "quaternions"), EXIT_USAGE)

    def write_character(self, values: dict) -> str:
        path = self.dir / "character.json"
        path.write_text(json.dumps(values), encoding="utf-8")
        return str(path)

    def test_birkhoff_character(self):
        path = self.write_character({"*": "eps^-1 + eps^3", "*[*]": "1/2*eps^-2"})
        self.assertEqual(self.invoke("birkhoff", "--character", path, "--format", "json"), EXIT_PASS)
        entries = self.report()["entries"]
        self.assertEqual([e["name"] for e in entries], ["birkhoff-character", "connes-kreimer"])
        info = entries[0]["details"]["info"]
        self.assertEqual(info["minus"]["*"], "-eps^-1")
        self.assertEqual(info["plus"]["*"], "eps^3")
        self.assertEqual(entries[0]["status"], "pass")

    def test_evenodd_character(self):
        path = self.write_character({"*": "2", "*[*]": "1/3"})
        self.assertEqual(self.invoke("evenodd", "--character", path, "--format", "json"), EXIT_PASS)
        entry = self.report()["entries"][0]
        self.assertEqual(entry["name"], "even-odd-character")
        self.assertEqual(entry["status"], "pass")
        self.assertEqual(entry["details"]["info"]["minus"]["*"], "2")
        self.assertEqual(entry["details"]["info"]["plus"]["*"], "0")

    def test_character_errors(self):
        path = self.write_character({"*[*[*[*]]]": "1"})
        self.assertEqual(self.invoke("birkhoff", "--character", path), EXIT_USAGE)
        self.assertIn("degree cap", self.stderr)
        self.assertEqual(self.invoke("evenodd", "--character", str(self.dir / "missing.json")), EXIT_USAGE)
        self.assertIn("Cannot read character file", self.stderr)
        self.assertEqual(self.invoke("bch", "--character", path), EXIT_USAGE)

    def test_version(self):
        stdout = StringIO()
        with redirect_stdout(stdout):
            self.assertEqual(run(["--version"], {}), EXIT_PASS)
        self.assertIn("Python-Benedict", stdout.getvalue())


class ResolveConfigTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.config = Path(self.tmp.name) / "config.yml"
        self.config.write_text(SMALL_CONFIG, encoding="utf-8")

    def tearDown(self):
        self.tmp.cleanup()

    def resolve(self, *argv, environ=None) -> RunConfig:
        args = build_parser().parse_args([*argv, "--config", str(self.config)])
        return resolve_config(args, environ or {})

    def test_precedence(self):
        cfg = self.resolve("spitzer", "--seed", "9")
        self.assertEqual((cfg.order, cfg.degree, cfg.seed, cfg.instances), (3, 3, 9, 2))
        self.assertEqual(self.resolve("spitzer", environ={SEED_VARIABLE: "4"}).seed, 4)
        self.assertEqual(self.resolve("spitzer", "-n", "6").order, 6)
        self.assertEqual(self.resolve("spitzer", "-v").log_level, "DEBUG")
        self.assertEqual(self.resolve("spitzer").command, "spitzer")

    def test_validation(self):
        with self.assertRaises(DegreeError):
            self.resolve("bch", "--order", "0")
        with self.assertRaises(DegreeError):
            self.resolve("bch", "--degree", "0")
        self.config.write_text(SMALL_CONFIG.replace("format: text", "format: xml"), encoding="utf-8")
        with self.assertRaises(ParseError):
            self.resolve("bch")

    def test_algebra(self):
        self.assertIsNone(self.resolve("chi").algebra)
        self.assertEqual(self.resolve("chi", "--algebra", "bivariate").algebra, "bivariate")
        self.config.write_text(SMALL_CONFIG.replace("seeds: 2", "seeds: 2\n  algebra: operated"), encoding="utf-8")
        self.assertEqual(self.resolve("factorize").algebra, "operated")
        self.assertEqual(self.resolve("factorize", "--algebra", "matrix-poly").algebra, "matrix-poly")
        self.config.write_text(SMALL_CONFIG.replace("seeds: 2", "seeds: 2\n  algebra: quaternions"), encoding="utf-8")
        with self.assertRaises(ParseError):
            self.resolve("chi")

    def test_character_flag(self):
        self.assertEqual(self.resolve("birkhoff", "--character", "phi.json").character, "phi.json")
        self.assertIsNone(self.resolve("evenodd").character)

    def test_commands(self):
        self.assertEqual(list(REGISTERED_COMMANDS), ["bch", "chi", "factorize", "spitzer", "magnus", "evenodd",
                                                     "birkhoff", "polar", "uniformize", "verify-all"])
        self.assertEqual(len(REGISTERED_COMMANDS["verify-all"].suites), 17)
