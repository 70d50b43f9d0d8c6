"""Runs each tplab subcommand on a small input and validates the JSON output against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

CASES = [
    ("hecke-table", ["hecke", "table", "--d", "2", "--n", "5"]),
    ("lfactor-triple", ["lfactor", "triple", "--case", "ram2", "--p", "7", "--theta", "0.4", "--sign", "1", "-1"]),
    ("lfactor-dirichlet", ["lfactor", "dirichlet", "--N", "60", "--lift", "triple", "--seed", "3"]),
    ("kloosterman", ["kloosterman", "--m", "3", "--n", "5", "--c", "91"]),
    ("transforms-hplus", ["transforms", "hplus", "--r", "5", "--x", "0.1"]),
    ("transforms-geometric", ["transforms", "geometric", "--N", "101", "--m", "1", "--n", "1", "--r", "3", "--c-max", "500"]),
    ("simulate", ["simulate", "--x", "1000", "--samples", "2000", "--seed", "11", "--k-max", "3"]),
    ("pipeline", ["pipeline", "--q", "1e12", "--epsilon", "0.005"]),
    ("pipeline", ["pipeline", "--q", "1e9", "1e12"]),
    ("primes-count", ["primes", "count", "--x", "1000"]),
    ("verify-all", ["verify-all", "--only", "1", "2", "10"]),
]


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        resources.append((path.name, Resource.from_contents(doc)))
    registry = Registry().with_resources(resources)
    failures = 0
    for name, args in CASES:
        proc = subprocess.run([exe, *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        validator = jsonschema.Draft202012Validator(schema, registry=registry)
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        if errors:
            failures += 1
            for e in errors[:5]:
                print(f"FAIL {name}: {list(e.absolute_path)}: {e.message[:200]}")
        else:
            print(f"ok   {name} {' '.join(args)}")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
