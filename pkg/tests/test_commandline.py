import io
import json
import os
import unittest
from pathlib import Path
from tempfile import TemporaryDirectory
from unittest.mock import patch

from lensknots.commandline import run
from lensknots.laurent import LaurentPoly, torus_alexander
from lensknots.lens import LensSpace
from lensknots.surgery import Slope

FIXTURES = Path(__file__).parent / "fixtures"


class CommandLineTestCase(unittest.TestCase):
    def setUp(self):
        environ = patch.dict(os.environ)
        environ.start()
        self.addCleanup(environ.stop)
        os.environ.pop("LENSKNOTS_FORMAT", None)

    def run_cli(self, *argv: str):
        stdout = io.StringIO()
        code = run(list(argv), stdout=stdout)
        return code, stdout.getvalue()


class TestQueries(CommandLineTestCase):
    def test_cf(self):
        self.assertEqual(
            self.run_cli("cf", "eval", "1", "-1", "-1", "3"), (0, "5/1\n")
        )
        self.assertEqual(
            self.run_cli("cf", "expand", "15", "4"), (0, "[3, -2, -2, -2]\n")
        )
        self.assertEqual(self.run_cli("cf", "eval"), (0, "1/0\n"))

    def test_cf_json(self):
        code, out = self.run_cli(
            "cf", "eval", "2", "-1", "-2", "3", "-f", "json"
        )
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), [15, 4])

    def test_lens(self):
        self.assertEqual(
            self.run_cli("lens", "normalize", "5", "-1"), (0, "L(5,4)\n")
        )
        self.assertEqual(
            self.run_cli("lens", "normalize", "-5", "1"),
            (0, "L(5,4) (mirrored)\n"),
        )
        self.assertEqual(
            self.run_cli("lens", "unknot", "5"), (0, "L(5,-1) = L(5,4)\n")
        )

    def test_classes(self):
        self.assertEqual(
            self.run_cli("classes", "berge7", "--p", "5"), (0, "{}\n")
        )
        self.assertEqual(
            self.run_cli("classes", "berge7", "--p", "7"), (0, "{2, 4}\n")
        )
        self.assertEqual(
            self.run_cli("classes", "inverse", "2", "4"), (0, "none\n")
        )

    def test_surgery(self):
        self.assertEqual(
            self.run_cli("torus-surgery", "2", "3", "1"),
            (0, "NotLensIntegral S^2(2,3,5)\n"),
        )
        self.assertEqual(
            self.run_cli("slope", "distance", "1/0", "0/1"), (0, "1\n")
        )
        self.assertEqual(
            self.run_cli("slope", "dual-linking", "5"), (0, "4/5\n")
        )

    def test_family_report(self):
        code, out = self.run_cli("family", "report", "--n", "1", "-f", "json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual((data["p"], data["q"]), (5, -1))
        self.assertEqual(data["delta_K"], "t^3 - t^2 + 1 - t^-2 + t^-3")
        self.assertEqual(data["tunnel"], "TunnelNumberOne (G1)")

        code, out = self.run_cli("family", "report", "--n", "1", "--verify")
        self.assertEqual(code, 0)
        self.assertIn("p: 5\n", out)

    def test_family_params(self):
        self.assertEqual(
            self.run_cli("family", "params", "--n", "2"), (0, "p=15 q=-4\n")
        )

    def test_help_panels(self):
        with patch("sys.stdout", new_callable=io.StringIO) as out:
            code = run(["cf", "--help"])
        self.assertEqual(code, 0)
        self.assertIn("Usage", out.getvalue())
        self.assertIn("Argument", out.getvalue())

    def test_json_decodes_to_values(self):
        code, out = self.run_cli("alex", "torus", "2", "3", "-f", "json")
        self.assertEqual(code, 0)
        self.assertEqual(
            LaurentPoly.from_json(json.loads(out)), torus_alexander(2, 3)
        )

        code, out = self.run_cli("lens", "normalize", "5", "-1", "-f", "json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(LensSpace.from_json(data["lens"]), LensSpace(5, 4))
        self.assertFalse(data["mirrored"])

        code, out = self.run_cli(
            "slope", "involution", "3/2", "-f", "json"
        )
        self.assertEqual(code, 0)
        self.assertEqual(Slope.from_json(json.loads(out)), Slope(-3, 2))


class TestErrors(CommandLineTestCase):
    def test_usage(self):
        self.assertEqual(self.run_cli("frobnicate")[0], 2)
        self.assertEqual(self.run_cli()[0], 2)
        self.assertEqual(self.run_cli("cf", "expand", "15")[0], 2)

    def test_domain(self):
        self.assertEqual(self.run_cli("lens", "normalize", "4", "2"), (1, ""))
        self.assertEqual(self.run_cli("cf", "eval", "1", "0"), (1, ""))

    def test_config(self):
        code, _ = self.run_cli("--set", "census.threads=1", "cf", "eval", "1")
        self.assertEqual(code, 2)
        code, _ = self.run_cli("-c", "missing.yaml", "cf", "eval", "1")
        self.assertEqual(code, 2)

    def test_malformed_config(self):
        code, out = self.run_cli(
            "-c", str(FIXTURES / "malformed.yaml"), "cf", "eval", "1"
        )
        self.assertEqual((code, out), (2, ""))

    def test_verify_failure(self):
        argv = ("alex", "tilde", "3*t", "--p", "3")
        code, out = self.run_cli(*argv)
        self.assertEqual(code, 0)
        self.assertIn("constraints_ok: false", out)

        code, _ = self.run_cli("--set", "verify=true", *argv)
        self.assertEqual(code, 1)

    def test_show_config(self):
        code, out = self.run_cli("--show-config", "--set", "verify=true")
        self.assertEqual(code, 0)
        self.assertIn("verify: true", out)
        self.assertIn("census:", out)


class TestCensus(CommandLineTestCase):
    def test_json_lines(self):
        code, out = self.run_cli("census", "--from", "1", "--to", "3")
        self.assertEqual(code, 0)
        records = [json.loads(line) for line in out.splitlines()]
        self.assertEqual([r["n"] for r in records], [1, 2, 3])
        self.assertEqual(records[1]["p"], 15)

    def test_deterministic(self):
        argv = ("census", "--from", "-2", "--to", "4")
        self.assertEqual(self.run_cli(*argv), self.run_cli(*argv))

    def test_csv(self):
        code, out = self.run_cli(
            "census", "--from", "1", "--to", "2", "-f", "csv"
        )
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[0].startswith("n,p,q,torus_knot"))
        self.assertTrue(lines[1].startswith("1,5,-1,"))

    def test_output_file(self):
        with TemporaryDirectory() as d:
            path = Path(d) / "census.jsonl"
            code, out = self.run_cli(
                "census", "--from", "1", "--to", "2", "--output", str(path)
            )
            self.assertEqual((code, out), (0, ""))
            self.assertEqual(len(path.read_text().splitlines()), 2)

    def test_output_directory_missing(self):
        with TemporaryDirectory() as d:
            path = Path(d) / "missing" / "census.jsonl"
            code, out = self.run_cli(
                "census", "--from", "1", "--to", "1", "--output", str(path)
            )
            self.assertEqual((code, out), (2, ""))
            self.assertFalse(path.parent.exists())

    def test_output_not_writable(self):
        with TemporaryDirectory() as d:
            code, out = self.run_cli(
                "census", "--from", "1", "--to", "1", "--output", d
            )
            self.assertEqual((code, out), (1, ""))

    def test_empty_range(self):
        code, _ = self.run_cli("census", "--from", "3", "--to", "1")
        self.assertEqual(code, 1)
