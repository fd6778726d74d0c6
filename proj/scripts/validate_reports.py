#!/usr/bin/env python3
"""Generates one report per CLI command and validates each against the
published JSON schema. Usage: validate_reports.py <pspca-cli> <schema.json>"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def run(args):
    proc = subprocess.run(args, capture_output=True, text=True)
    if proc.returncode != 0:
        sys.exit(f"command failed ({proc.returncode}): {' '.join(args)}\n{proc.stderr}")


def main():
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    cli, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft7Validator(schema)

    with tempfile.TemporaryDirectory(prefix="pspca_schema_") as tmp:
        tmp = Path(tmp)
        data_csv = tmp / "x.csv"
        run([cli, "simulate", "--n", "80", "--p", "14", "--spikes", "9,4.5",
             "--support-size", "3", "--sigma", "0.25", "--seed", "17",
             "--out", str(data_csv)])

        reports = {}
        reports["pca"] = tmp / "pca.json"
        run([cli, "pca", "--input", str(data_csv), "--k", "3",
             "--out", str(reports["pca"])])

        reports["spca"] = tmp / "spca.json"
        run([cli, "spca", "--input", str(data_csv), "--k", "2",
             "--alpha", "0.9", "--method", "forward",
             "--out", str(reports["spca"])])

        spec = tmp / "spec.json"
        spec.write_text(json.dumps({"n": 80, "p": 14, "spikes": [9, 4.5],
                                    "support_size": 3, "sigma": 0.25,
                                    "seed": 17}))
        reports["bench"] = tmp / "bench.json"
        run([cli, "bench", "--simulate", str(spec),
             "--methods", "forward,threshold,exhaustive", "--k", "2",
             "--alpha", "0.9", "--out", str(reports["bench"])])

        failures = 0
        for name, path in reports.items():
            doc = json.loads(path.read_text())
            errors = sorted(validator.iter_errors(doc), key=lambda e: e.json_path)
            if errors:
                failures += 1
                print(f"FAIL {name}: {len(errors)} schema violation(s)")
                for err in errors[:5]:
                    print(f"  {err.json_path}: {err.message}")
            else:
                print(f"ok {name}: report validates")
        sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
