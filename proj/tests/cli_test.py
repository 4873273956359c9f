"""Runs every cayley-geom subcommand on the data/ fixtures and validates the output."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema
from referencing import Registry, Resource

BIN, ROOT = sys.argv[1], pathlib.Path(sys.argv[2])
DATA, SCHEMAS = ROOT / "data", ROOT / "schemas"

registry = Registry().with_resources(
    (p.name, Resource.from_contents(json.loads(p.read_text()))) for p in SCHEMAS.glob("*.schema.json")
)
failures = []


def validator(schema):
    contents = registry.get_or_retrieve(f"{schema}.schema.json").value.contents
    return jsonschema.Draft202012Validator(contents, registry=registry)


def run(*args):
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True)


def check(schema, *args):
    r = run(*args)
    label = " ".join(map(str, args))
    if r.returncode != 0:
        failures.append(f"{label}: exit {r.returncode}: {r.stderr.strip()}")
        return None
    doc = json.loads(r.stdout)
    for err in validator(schema).iter_errors(doc):
        failures.append(f"{label}: {err.json_path}: {err.message}")
    if run(*args).stdout != r.stdout:
        failures.append(f"{label}: output differs between runs")
    return doc


def expect_error(code, *args):
    r = run(*args)
    label = " ".join(map(str, args))
    if r.returncode != 2:
        failures.append(f"{label}: expected exit 2, got {r.returncode}")
        return
    err = json.loads(r.stderr)
    for e in validator("error").iter_errors(err):
        failures.append(f"{label}: {e.message}")
    if err["error"]["code"] != code:
        failures.append(f"{label}: expected {code}, got {err['error']['code']}")


z3, z412, z413 = DATA / "z3.json", DATA / "z4_12.json", DATA / "z4_13.json"
eucl, tetra = DATA / "euclidean2.json", DATA / "z4_12_metric.json"
sph, folded = DATA / "z3_spherical.json", DATA / "z4_12_folded.json"

info = check("lattice-info", "lattice-info", "--lattice", z3)
if info and info["counts"] != {"biangles": 2, "triangles": 2, "quadrangles": 0}:
    failures.append(f"lattice-info z3 counts {info['counts']}")
check("lattice-info", "lattice-info", "--lattice", DATA / "s3.json")
check("metric-check", "metric-check", "--lattice", z412, "--metric", tetra)
check("metric-check", "metric-check", "--metric", tetra)
check("compat-check", "compat-check", "--lattice", z3, "--metric", eucl, "--connection", sph)
check("torsion", "torsion", "--lattice", z3, "--connection", sph)
check("torsion", "torsion", "--lattice", z3, "--connection", sph, "--backend", "float")
curv = check("curvature", "curvature", "--lattice", z3, "--connection", sph)
if curv and curv["curvature"]["triangle"]["1,1"]["sites"]["0"] != [["-1", "-1"], ["1", "-1"]]:
    failures.append("curvature z3 triangle 1,1")
ric = check("ricci", "ricci", "--lattice", z3, "--metric", eucl, "--connection", sph)
if ric and set(ric["scalar"]["values"].values()) != {"-2"}:
    failures.append("ricci z3 scalar")
solved = check("solve-lc", "solve-lc", "--lattice", z412, "--metric", tetra, "--mask", "biangle,triangle",
               "--grid", "default")
if solved and solved["count"] != 4:
    failures.append(f"solve-lc count {solved['count']}")
check("solve-lc", "solve-lc", "--lattice", z412, "--metric", tetra, "--mask", "biangle,triangle", "--grid",
      "default", "--site-dependent")
check("solve-lc", "solve-lc", "--lattice", z413, "--metric", tetra, "--mask", "biangle,triangle",
      "--restarts", "32", "--threads", "2")
check("develop", "develop", "--lattice", z412, "--metric", tetra, "--connection", folded, "--depth", "3",
      "--format", "json")
check("coords-z4", "coords", "z4-demo")
check("coords-hypercubic", "coords", "hypercubic", "--torus", "3,3", "--connection", DATA / "torus_identity.json",
      "--report", "all")
check("coframe", "coframe", "--lattice", z3, "--metric", eucl, "--connection", sph)

with tempfile.TemporaryDirectory() as tmp:
    svg = pathlib.Path(tmp) / "dev.svg"
    r = run("develop", "--lattice", z3, "--metric", eucl, "--connection", sph, "--depth", "2", "--out", svg)
    if r.returncode != 0 or not svg.read_text().startswith("<svg"):
        failures.append("develop --out dev.svg did not write an SVG")

expect_error("E_ASYMMETRIC", "metric-check", "--metric", DATA / "bad_metric.json")
expect_error("E_FILE_NOT_FOUND", "torsion", "--lattice", DATA / "missing.json", "--connection", sph)
expect_error("E_ARROW_MISMATCH", "torsion", "--lattice", z413, "--connection", sph)
expect_error("E_USAGE", "develop", "--lattice", z3, "--metric", eucl, "--connection", sph, "--format", "svg",
             "--projection", "0,5")

for f in failures:
    print("FAIL", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
