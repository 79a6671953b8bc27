import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

corb, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
resources = []
for p in schema_dir.glob("*.schema.json"):
    doc = json.loads(p.read_text())
    Draft202012Validator.check_schema(doc)
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)
base = json.loads((schema_dir / "common.schema.json").read_text())["$id"].rsplit("/", 1)[0] + "/"

cases = [
    ("fan", ["fan", "build", "--family", "C", "--n", "2"]),
    ("fan_report", ["fan", "check", "--family", "Bcan", "--n", "2"]),
    ("fan_export", ["fan", "export", "--family", "A", "--n", "2"]),
    ("stabilizer", ["point", "stab", "--family", "A", "--n", "2", "--coords", "0,0,1,1", "--field", "F7"]),
    ("point", ["point", "canon", "--family", "A", "--n", "1", "--coords", "2,3", "--field", "F5"]),
    ("orbit_eq", ["point", "orbit-eq", "--family", "A", "--n", "1", "--coords", "1,1", "--other", "2,4", "--field", "F7"]),
    ("count", ["point", "count", "--family", "A", "--n", "2", "--q", "4"]),
    ("orbits", ["point", "enumerate", "--family", "A", "--n", "1", "--p", "3"]),
    ("chain", ["chain", "from-point", "--family", "A", "--n", "1", "--coords", "1,0", "--field", "Q"]),
    ("from_poly", ["chain", "from-poly", "--poly", "1,4,1,1", "--field", "F7"]),
    ("fiber", ["chain", "fiber", "--poly", "x1^2 - 2*x1 + 1", "--field", "F7"]),
    ("embed", ["chain", "embed", "--family", "C", "--n", "2", "--coords", "1,3,1,1", "--field", "F7"]),
    ("parity", ["chain", "parity", "--coeffs", "1,3,1", "--field", "F7"]),
    ("polytope", ["polytope", "permutohedron", "--n", "4"]),
    ("polytope", ["polytope", "minkowski", "--n", "3", "--decomposition", "segments"]),
    ("verify_report", ["verify", "divisor", "--n", "4"]),
    ("verify_all", ["verify", "all", "--n", "3"]),
]
failed = 0
for name, args in cases:
    out = subprocess.run([corb, "--json", *args], capture_output=True, text=True)
    schema = registry.contents(base + name + ".schema.json")
    errors = []
    if out.returncode != 0:
        errors.append(f"exit {out.returncode}: {out.stderr.strip()}")
    else:
        v = Draft202012Validator(schema, registry=registry)
        errors = [e.message for e in v.iter_errors(json.loads(out.stdout))]
    print(("ok   " if not errors else "FAIL ") + name + " " + " ".join(args))
    for e in errors:
        print("     " + e)
    failed += bool(errors)
sys.exit(1 if failed else 0)
