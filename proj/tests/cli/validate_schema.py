"""Runs every gtank subcommand with JSON output and validates it against the schema."""

import json
import subprocess
import sys

import jsonschema


def cases(data_dir):
    return [
        ["estimate", "--k", "5", "--stat", "9"],
        ["estimate", "--observations", f"{data_dir}/serials.txt", "--estimators", "d1_max,d1_spread,d1_lth:2,weighted:0.5"],
        ["estimate", "--geometry", "square", "--observations", f"{data_dir}/square_pairs.txt",
         "--estimators", "square_discrete,square_recursive"],
        ["estimate", "--geometry", "ball", "--mode", "continuous", "--dim", "3",
         "--observations", f"{data_dir}/ball3_continuous.txt"],
        ["estimate", "--geometry", "ball", "--k", "10", "--stat", "10001"],
        ["simulate", "--N", "100", "--k", "5", "--trials", "2000", "--seed", "1"],
        ["simulate", "--geometry", "square", "--N", "50", "--k", "4", "--trials", "500", "--timing"],
        ["simulate", "--geometry", "ball", "--r", "20", "--k", "3", "--trials", "500"],
        ["simulate", "--geometry", "ball", "--mode", "continuous", "--dim", "3", "--r", "1", "--k", "20",
         "--trials", "500"],
        ["oracle", "--max-N", "10"],
        ["verify", "--identities", "--max-N", "8"],
        ["verify", "--euler-maclaurin", "--falling-factorial", "--main-term"],
        ["verify", "--gauss-circle", "--max-r", "100"],
        ["compare", "--N", "20", "--k", "2", "--trials", "2000"],
        ["compare", "--N", "20", "--k", "2", "--trials", "500", "--recursive"],
    ]


def main():
    gtank, schema_path, data_dir = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)

    failures = 0
    for args in cases(data_dir):
        proc = subprocess.run([gtank, *args], capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=lambda e: list(e.path))
        if errors:
            failures += 1
            print(f"FAIL {label}")
            for e in errors[:5]:
                print(f"  {'/'.join(map(str, e.path))}: {e.message}")
        else:
            print(f"ok   {label}")

    # A record that breaks the contract must be rejected.
    bad = {"schema_version": "1.0", "command": "simulate", "inputs": {}, "results": {"trials": 0}, "provenance": []}
    if validator.is_valid(bad):
        print("FAIL schema accepts a malformed simulate record")
        failures += 1
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
