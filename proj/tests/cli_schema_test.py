#!/usr/bin/env python3
"""Runs the spreadlab binary and validates its JSON output against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema

exe = sys.argv[1]
schemas = pathlib.Path(sys.argv[2])
failures = []


def load(name):
    return json.loads((schemas / name).read_text())


def run(args, want_exit=0):
    p = subprocess.run([exe, *args], capture_output=True, text=True)
    if p.returncode != want_exit:
        failures.append(f"{' '.join(args)}: exit {p.returncode}, wanted {want_exit}\n{p.stderr}")
        return None
    return p.stdout


def validate(args, schema, check=None):
    out = run(args)
    if out is None:
        return
    try:
        doc = json.loads(out)
        jsonschema.validate(doc, load(schema))
        if check and not check(doc):
            failures.append(f"{' '.join(args)}: content check failed")
    except (json.JSONDecodeError, jsonschema.ValidationError) as e:
        failures.append(f"{' '.join(args)}: {e}")


validate(["spread", "--group", "A:5", "--json"], "result.schema.json", lambda d: d["value"] == 2)
validate(["uniform-spread", "--group", "S:5"], "result.schema.json")
validate(["gamma-t", "--group", "A:5"], "result.schema.json")
validate(["gamma-u", "--group", "PSL2:7"], "result.schema.json")
validate(["gamma-u-ell", "--group", "PSL2:11", "--class", "torus-minus", "--ell", "2"], "result.schema.json",
         lambda d: d["value"] == 3)
validate(["p2", "--group", "PSL2:11", "--class", "torus-minus", "--exact"], "result.schema.json",
         lambda d: d["value"]["num"] == "24" and d["value"]["den"] == "55")
validate(["p2", "--group", "PSL2:11", "--class", "torus-minus", "--trials", "200", "--seed", "4"],
         "result.schema.json")
validate(["subdegrees", "--group", "PSL2:11", "--class", "torus-minus"], "result.schema.json")
validate(["saxl", "--group", "PSL2:11", "--class", "torus-minus", "--k", "3"], "result.schema.json")
validate(["dihedral-cover", "--group", "PSL2:11"], "result.schema.json")
validate(["binder", "--n", "8", "--json"], "result.schema.json")
validate(["classes", "--group", "S:4"], "result.schema.json")
validate(["qhat", "--group", "A:13", "--class", "n-cycle", "--c", "2"], "certificate.schema.json")
validate(["usl", "--group", "PSL2:13", "--class", "torus-minus"], "certificate.schema.json",
         lambda d: d["k_max"] == 12)
validate(["fpr", "--group", "PSL2:11", "--class", "torus-minus", "--json"], "fpr-table.schema.json")
validate(["fpr", "--n", "9", "--l", "3", "--shape", "3,1,1,1,1,1,1", "--json"], "fpr-table.schema.json")
validate(["properties", "--json", "--seed", "1"], "properties.schema.json",
         lambda d: all(p["violations"] == 0 for p in d["value"]))
validate(["verify", "--json", "--budget", "0", "--no-timing"], "verify-report.schema.json",
         lambda d: all(c["status"] == "skipped-budget" for c in d["checks"]))
validate(["verify", "--json", "--criterion", "5"], "verify-report.schema.json")

# byte-identical reruns
a = run(["verify", "--json", "--criterion", "2", "--no-timing"])
b = run(["verify", "--json", "--criterion", "2", "--no-timing"])
if a != b:
    failures.append("verify --no-timing output differs between runs")

# exit codes
run(["spread", "--group", "A:5", "--bogus"], want_exit=2)
run(["spread"], want_exit=2)
run(["spread", "--group", "S:7", "--budget", "10"], want_exit=3)
run(["fpr", "--n", "9", "--l", "3", "--shape", "3,1,1,1,1,1,1"])  # CSV default

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
