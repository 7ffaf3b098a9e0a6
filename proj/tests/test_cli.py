#!/usr/bin/env python3
"""End-to-end checks of the rittlab command line.

Drives the built binary as a subprocess: output schemas, exit codes,
batch semantics, and determinism. The binary path arrives as argv[1].
"""

import json
import subprocess
import sys
import tempfile
import os

BIN = sys.argv[1]
failures = []


def run(*args, stdin=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, timeout=300)


def check(name, cond, detail=""):
    if cond:
        print(f"ok   {name}")
    else:
        print(f"FAIL {name} {detail}")
        failures.append(name)


def jout(res):
    return json.loads(res.stdout)


# --- basic subcommands ----------------------------------------------------
r = run("iterate", "z^2", "3")
check("iterate z^2 3 -> z^8", r.returncode == 0 and jout(r)["map"] == "z^8")

r = run("compose", "z^2", "z^3+1")
check("compose two maps", r.returncode == 0 and jout(r) == {"map": "z^6+2*z^3+1", "degree": 6})

r = run("decompose", "((z-1)^2/(z+1)^2) @ ((z-1)^2/(z+1)^2)", "--split", "2,2")
j = jout(r)
pairs = [tuple(d["factors"]) for d in j["decompositions"]]
check(
    "decompose finds the power-map split",
    r.returncode == 0 and ("(4*z)/(z^2+2*z+1)", "z^2") in pairs,
    str(pairs),
)
check("decompose record schema", all(
    set(d) == {"product", "split", "factors", "certified", "budgetExhausted"}
    for d in j["decompositions"]))

r2 = run("decompose", "((z-1)^2/(z+1)^2) @ ((z-1)^2/(z+1)^2)", "--split", "2,2",
         "--tier", "exact")
check("exact tier agrees with numeric", jout(r2)["decompositions"] == j["decompositions"])

r = run("vscan", "(z-1)^2/(z+1)^2", "--maxN", "2")
check("vscan reports alphaLowerBound 2", r.returncode == 0 and jout(r)["alphaLowerBound"] == 2)

r = run("equiv", "z^2,z^2", "4*z^2, z^2/2")
check("equiv finds a witness", r.returncode == 0 and jout(r)["status"] == "equivalent"
      and len(jout(r)["witness"]) == 1)

r = run("prime-check", "z*(z-8)^3/(z+1)^3")
check("prime-check verdict", r.returncode == 0 and jout(r)["verdict"] == "prime")

r = run("commute", "z^2", "z^4", "--maxN", "4")
check("commute + common iterate", r.returncode == 0
      and jout(r)["commute"] is True and jout(r)["commonIterate"] == {"n": 2, "m": 1})

r = run("detect", "2*z^2-1")
check("detect chebyshev", r.returncode == 0 and jout(r)["form"] == "chebyshev"
      and jout(r)["degree"] == 2)

r = run("conj", "z^2", "z^2-2*z+2")
check("conj finds a witness", r.returncode == 0 and jout(r)["status"] == "conjugate"
      and "witness" in jout(r))

r = run("classify", "z^2-1")
j = jout(r)
check("classify schema", r.returncode == 0
      and set(j) == {"map", "criticalPoints", "orbits", "verdict"}
      and j["verdict"] == "hyperbolic")

r = run("critical", "z^3")
check("critical indices", r.returncode == 0
      and [p["index"] for p in jout(r)["criticalPoints"]] == [3, 3])

r = run("graph", "(z^4+4*z^2+5)^2")
j = jout(r)
check("graph json schema", r.returncode == 0
      and set(j) == {"vertices", "edges", "basepoint", "complete"}
      and len(j["vertices"]) == 3 and j["complete"] is True)

r = run("graph", "z^4", "--format", "dot")
check("graph dot output", r.returncode == 0 and r.stdout.startswith("digraph"))

r = run("homology", "(z^4+4*z^2+5)^2")
check("homology filled betti", r.returncode == 0 and jout(r)["betti"] == [1, 0, 0])

r = run("homology", "(z^4+4*z^2+5)^2", "--bare")
check("homology bare betti", r.returncode == 0 and jout(r)["betti"] == [1, 1])

# --- exit codes -----------------------------------------------------------
r = run("decompose", "z^2+")
check("parse error -> exit 1 with position", r.returncode == 1
      and "parse error at 4" in r.stderr and r.stdout == "")

r = run("decompose", "z^4", "--split", "2,3")
check("impossible split -> exit 1", r.returncode == 1 and "rittlab:" in r.stderr)

r = run("nonsense")
check("unknown subcommand -> exit 2", r.returncode == 2)

r = run("decompose", "z^4", "--frobnicate")
check("unknown flag -> exit 2", r.returncode == 2)

r = run("--help")
check("--help -> exit 0", r.returncode == 0 and "decompose" in r.stdout)

r = run("decompose", "z^4", "--split", "2,2", "--partition-cap", "1")
check("budget exhaustion -> exit 3 with partial output", r.returncode == 3
      and jout(r)["budgetExhausted"] is True)

r = run("iterate", "z^2", "20")
check("degree budget blowup -> exit 3", r.returncode == 3)

r = run("graph", "(z^4+4*z^2+5)^2", "--max-vertices", "1")
check("partial graph -> exit 3", r.returncode == 3 and jout(r)["complete"] is False)

# --- pretty is cosmetic only ------------------------------------------------
a = run("decompose", "z^4", "--split", "2,2")
b = run("decompose", "z^4", "--split", "2,2", "--pretty")
check("--pretty cosmetic only", jout(a) == jout(b) and a.stdout != b.stdout)

# --- determinism ------------------------------------------------------------
a = run("graph", "(z^4+4*z^2+5)^2")
b = run("graph", "(z^4+4*z^2+5)^2")
check("byte-identical reruns", a.stdout == b.stdout)

# --- batch ------------------------------------------------------------------
with tempfile.TemporaryDirectory() as td:
    good_bad = os.path.join(td, "jobs.txt")
    with open(good_bad, "w") as f:
        f.write("# comment\n")
        f.write('compose "z^2" "z^3+1"\n')
        f.write('iterate "z^2+" 2\n')
    r = run("batch", good_bad)
    j = jout(r)
    check("batch: bad job errors, good job completes, exit 1",
          r.returncode == 1 and j["failed"] == 1 and j["total"] == 2
          and j["jobs"][0]["exit"] == 0 and j["jobs"][1]["exit"] == 1
          and j["jobs"][1]["line"] == 3
          and "parse error" in j["jobs"][1]["error"])

    empty = os.path.join(td, "empty.txt")
    open(empty, "w").close()
    r = run("batch", empty)
    check("batch: empty file -> empty report, exit 0",
          r.returncode == 0 and jout(r) == {"jobs": [], "total": 0, "failed": 0})

    jl = os.path.join(td, "jobs.json")
    with open(jl, "w") as f:
        json.dump(["iterate \"z^2\" 2", ["compose", "z^3", "z^2"]], f)
    r = run("batch", jl)
    j = jout(r)
    check("batch: JSON job list in input order", r.returncode == 0 and j["failed"] == 0
          and [e["output"]["map"] for e in j["jobs"]] == ["z^4", "z^6"])

    many = os.path.join(td, "many.txt")
    with open(many, "w") as f:
        for d in range(2, 8):
            f.write(f'primes "z^{d}"\n')
    seq = run("batch", many)
    par = run("batch", many, "--jobs", "4")
    check("batch: --jobs output byte-identical", seq.stdout == par.stdout)

    nest = os.path.join(td, "nest.txt")
    with open(nest, "w") as f:
        f.write(f"batch {many}\n")
    r = run("batch", nest)
    check("batch: nested batch rejected", r.returncode == 1
          and jout(r)["jobs"][0]["exit"] == 2)

print()
if failures:
    print(f"{len(failures)} failing: {failures}")
    sys.exit(1)
print("all cli checks passed")
