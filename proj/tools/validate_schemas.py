#!/usr/bin/env python3
"""Validate isokit JSON output and spec files against the schemas in schemas/."""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

KINDS = ["thm1-quadric", "thm1-semi-quadric-u", "thm1-semi-quadric-v", "thm2-quadric",
         "thm2-semi-quadric-u", "thm2-semi-quadric-v", "thm3-harmonic", "thm3-exp", "thm3-trig",
         "thm4-axis-log", "thm4-affine-log", "example1", "example2", "example3"]


def load_schemas(directory):
    schemas = {}
    registry = Registry()
    for path in sorted(directory.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        jsonschema.Draft202012Validator.check_schema(doc)
        schemas[path.name] = doc
        registry = registry.with_resource(doc["$id"], Resource.from_contents(doc))
    return schemas, registry


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("isokit")
    parser.add_argument("--schemas", type=pathlib.Path, required=True)
    parser.add_argument("--data", type=pathlib.Path, required=True)
    args = parser.parse_args()

    schemas, registry = load_schemas(args.schemas)
    validators = {name: jsonschema.Draft202012Validator(doc, registry=registry) for name, doc in schemas.items()}
    failures = 0
    checked = 0

    def validate(schema, doc, label):
        nonlocal failures, checked
        checked += 1
        errors = sorted(validators[schema].iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"FAIL {label}: {'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)

    def run(*argv):
        done = subprocess.run([args.isokit, *argv], capture_output=True, text=True)
        if done.returncode not in (0, 1):
            raise SystemExit(f"isokit {' '.join(argv)} exited {done.returncode}: {done.stderr}")
        return json.loads(done.stdout)

    specs = sorted(args.data.glob("*.json"))
    for spec in specs:
        validate("surface-spec.schema.json", json.loads(spec.read_text()), spec.name)

    good = ["example1_affine.json", "example2_graph.json", "example3_affine.json", "plane.json",
            "perturbed_graph.json"]
    for name in good:
        spec = str(args.data / name)
        validate("analyze.schema.json", run("analyze", spec, "--grid", "5,5", "--json"), f"analyze {name}")
        for condition in ("weingarten", "linear-weingarten", "eigen-i"):
            validate("report.schema.json", run("check", spec, "--condition", condition, "--grid", "5,5", "--json"),
                     f"check {condition} {name}")
    validate("report.schema.json",
             run("check", str(args.data / "example3_affine.json"), "--condition", "eigen-ii", "--json"),
             "check eigen-ii example3_affine.json")

    with tempfile.TemporaryDirectory() as scratch:
        for kind in KINDS:
            path = pathlib.Path(scratch) / f"{kind}.json"
            argv = ["family", kind, "--out", str(path)]
            if kind.startswith("thm"):
                argv += ["--seed", "7"]
            subprocess.run([args.isokit, *argv], check=True)
            validate("surface-spec.schema.json", json.loads(path.read_text()), f"family {kind}")
            validate("report.schema.json", run("check", str(path), "--grid", "5,5", "--json"), f"certificate {kind}")
            validate("analyze.schema.json", run("analyze", str(path), "--grid", "5,5", "--json"), f"analyze {kind}")

    print(f"{checked - failures}/{checked} documents valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
