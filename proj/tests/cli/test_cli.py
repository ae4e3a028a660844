"""End-to-end checks of the iosc command-line tool.

Usage: python3 test_cli.py /path/to/iosc
"""
import json
import os
import subprocess
import sys
import tempfile
import unittest

IOSC = None

VINOGRADOV = {
    "n": 4,
    "groups": [
        {"degree": 1, "gens": ["x1 + x2 - x3 - x4"]},
        {"degree": 2, "gens": ["x1^2 + x2^2 - x3^2 - x4^2"]},
        {"degree": 3, "gens": ["x1^3 + x2^3 - x3^3 - x4^3"]},
    ],
}


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("IOSC_BUDGET", None)
    if env:
        full_env.update(env)
    proc = subprocess.run([IOSC, *args], capture_output=True, text=True, env=full_env)
    return proc.returncode, proc.stdout, proc.stderr


def report(*args, env=None):
    code, out, err = run(*args, env=env)
    if code != 0:
        raise AssertionError(f"exit {code}: {err}")
    return json.loads(out)


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, obj):
        path = os.path.join(self.tmp.name, name)
        with open(path, "w") as fh:
            json.dump(obj, fh)
        return path

    def test_expsum_verify(self):
        f = self.write("f.json", {"n": 1, "gens": ["x1^2"]})
        rep = report("expsum", "--ideal", f, "-p", "3", "-m", "2", "--verify")
        res = rep["result"]
        self.assertEqual(res["E_counts"], "2/9")
        self.assertTrue(res["verify_moidef"])
        self.assertEqual(res["E_charsum"]["rational"], "2/9")
        self.assertEqual(res["E_charsum"]["order"], 9)

    def test_sigma0_vinogradov(self):
        v = self.write("vinogradov.json", VINOGRADOV)
        self.assertEqual(report("bounds", "sigma0", "--ideal", v)["result"]["value"], "4/3")

    def test_zeta_reconstruct(self):
        f = self.write("f.json", {"n": 1, "gens": ["x1"]})
        res = report("zeta", "--ideal", f, "-p", "3", "--max-order", "4", "--reconstruct")["result"]
        self.assertEqual(res["series"], ["2/3", "2/9", "2/27", "2/81", "2/243"])
        rec = res["reconstruction"]
        self.assertEqual(rec["status"], "found")
        self.assertEqual(rec["numerator"], ["2/3"])
        self.assertEqual(rec["denominator"], ["1/1", "-1/3"])
        self.assertEqual(rec["pole_multiplicity"], 1)

    def test_inline_ideal_and_flat_gens_grouping(self):
        inline = json.dumps({"n": 2, "gens": ["x1^2 + x2^2", "x1"]})
        res = report("bounds", "sigmaw", "--ideal", inline)["result"]
        self.assertEqual(sorted(res["per_degree"]), ["1", "2"])

    def test_config_echo_and_round_trip(self):
        rep = report("circle", "jintegral", "--gens", "x1^2 + x2^2 - x3^2", "--samples", "50000",
                     "--eps", "0.1,0.05", "--seed", "17")
        cfg = rep["config"]
        self.assertEqual(cfg["command"], "circle jintegral")
        self.assertEqual(cfg["params"]["seed"], 17)
        self.assertEqual(cfg["ideal"]["n"], 3)
        path = self.write("report.json", rep)
        again = report("run", "--config", path)
        self.assertEqual(json.dumps(again["result"]), json.dumps(rep["result"]))
        # Worker count never changes the payload.
        cfg8 = dict(cfg, threads=8)
        again8 = report("run", "--config", self.write("cfg8.json", cfg8))
        self.assertEqual(json.dumps(again8["result"]), json.dumps(rep["result"]))

    def test_round_trip_exact_payloads(self):
        for args in (["count", "--gens", "x1^2 - x2^3", "-p", "3", "-m", "3"],
                     ["expsum", "--gens", "x1*x2 - 1; x1 + x2", "-p", "2", "-m", "2", "--verify"],
                     ["sseries", "--gens", "x1^2 + x2^2 - x3^2", "--qmax", "12"]):
            rep = report(*args)
            again = report("run", "--config", self.write("r.json", rep))
            self.assertEqual(again, rep)

    def test_csv_output(self):
        code, out, _ = run("bounds", "thresholds", "-r", "1", "-R", "1", "-D", "2", "--format", "csv")
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], "key,value")
        self.assertIn("result.N,6", lines)
        self.assertIn("result.N_prime,9", lines)

    def test_exit_code_invalid_input(self):
        self.assertEqual(run("expsum", "--gens", "x1^2 +", "-p", "3", "-m", "1")[0], 2)
        self.assertEqual(run("expsum", "--gens", "x1", "-p", "4", "-m", "1")[0], 2)
        self.assertEqual(run("expsum", "--ideal", "/nonexistent.json", "-p", "3", "-m", "1")[0], 2)
        self.assertEqual(run("bounds", "birch", "-n", "4", "-s", "0", "-r", "1", "-d", "1")[0], 2)
        self.assertEqual(run("nosuchcommand")[0], 2)
        self.assertEqual(run("count", "--gens", "x1", "-p", "3", "-m", "1", env={"IOSC_BUDGET": "lots"})[0], 2)

    def test_exit_code_budget(self):
        args = ["count", "--gens", "x1^3 + x2^3 + x3^3", "-p", "7", "-m", "2", "--method", "naive"]
        code, _, err = run(*args, env={"IOSC_BUDGET": "1000"})
        self.assertEqual(code, 3)
        self.assertIn("budget", err)
        code, out, err = run(*args, "--force", env={"IOSC_BUDGET": "1000"})
        self.assertEqual(code, 0)
        self.assertIn("warning", err)
        self.assertEqual(json.loads(out)["config"]["budget"], 1000)

    def test_exit_code_inconsistency_via_fault_injection(self):
        code, _, err = run("expsum", "--gens", "x1^2", "-p", "3", "-m", "2", "--verify", "--fault-inject")
        self.assertEqual(code, 4)
        self.assertIn("inconsistency", err)
        code, _, _ = run("zeta", "--gens", "x1*x2", "-p", "3", "--max-order", "3", "--compa", "--fault-inject")
        self.assertEqual(code, 4)

    def test_circle_examples(self):
        self.assertEqual(report("circle", "count", "--gens", "x1^2 + x2^2 - x3^2", "-B", "1")["result"]["count"], "9")
        res = report("circle", "waring", "--gens", "x1^2", "-p", "7", "-m", "1", "-l", "1")["result"]
        self.assertFalse(res["surjective"])
        self.assertEqual(res["missing"], [[3], [5], [6]])

    def test_jet_expand(self):
        res = report("jet", "expand", "--gens", "x1^2", "-m", "2")["result"]
        self.assertEqual(res["coefficients"], [["x1_0^2", "2*x1_0*x1_1", "2*x1_0*x1_2 + x1_1^2"]])


if __name__ == "__main__":
    IOSC = sys.argv.pop(1)
    unittest.main()
