"""Runs one case from cases.json: checks exit code and a regex on stdout+stderr."""
import json
import pathlib
import re
import subprocess
import sys

exe, name = sys.argv[1], sys.argv[2]
here = pathlib.Path(__file__).parent
case = json.loads((here / "cases.json").read_text())[name]
args = [a.replace("@DATA@", str(here)) for a in case["args"]]
proc = subprocess.run([exe, *args], capture_output=True, text=True, timeout=600)
out = proc.stdout + proc.stderr
print(out[:4000])
if proc.returncode != case["code"]:
    sys.exit(f"exit code {proc.returncode}, expected {case['code']}")
if case["match"] and not re.search(case["match"], out, re.MULTILINE):
    sys.exit(f"output does not match {case['match']!r}")
