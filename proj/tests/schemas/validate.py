"""Validates gfcoh output and the input corpus against schemas/v1."""
import glob
import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

gfcoh, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas, registry = {}, Registry()
for p in (root / "schemas" / "v1").glob("*.schema.json"):
    s = json.loads(p.read_text())
    Draft202012Validator.check_schema(s)
    schemas[p.name] = s
    registry = registry.with_resource(s["$id"], Resource.from_contents(s))

failures = 0


def check(schema, doc, what):
    global failures
    errors = list(Draft202012Validator(schemas[schema], registry=registry).iter_errors(doc))
    if errors:
        failures += 1
        print(f"FAIL {what} against {schema}: {errors[0].message[:300]}")


def run(*args):
    out = subprocess.run([gfcoh, *args], capture_output=True, text=True)
    if out.returncode != 0:
        return None
    return json.loads(out.stdout)


corpus = sorted(p for p in glob.glob(str(root / "tests" / "corpus" / "*.json")) if not p.endswith("index.json"))
for path in corpus + [str(root / "tests" / "cli" / "quaternion_group.json")]:
    check("action.schema.json", json.loads(open(path).read()), path)

for path in corpus:
    dec = run("decompose", "--input", path)
    if dec is not None:
        check("decomposition.schema.json", dec, f"decompose {path}")
    cls = run("classes", "--input", path, "--max-degree", "5")
    if cls is not None:
        check("ring-report.schema.json", cls, f"classes {path}")
        for c in cls["components"]:
            check("ring-report.schema.json", c["report"], f"report {c['label']} of {path}")
    if dec is not None:
        field = dec["field"]
        modes = ["absolute", "relative-gl"] + (["relative-so", "relative-o"] if field == "real" else [])
        for mode in modes:
            doc = run("cohomology", "--input", path, "--mode", mode)
            if doc is not None:
                check("betti-table.schema.json", doc, f"cohomology {mode} {path}")
        doc = run("oracle", "--input", path, "--max-degree", "4")
        if doc is not None:
            check("comparison.schema.json", doc, f"oracle {path}")

for r, s, v0, w in [(0, 0, 1, 1), (2, 1, 1, 2), (1, 2, 2, 1)]:
    check("comparison.schema.json", run("invariants", "--r", str(r), "--s", str(s), "--dim-v0", str(v0), "--dim-w", str(w)),
          f"invariants {r} {s} {v0} {w}")

print(f"{failures} schema failure(s)")
sys.exit(1 if failures else 0)
