"""sup_alpha of an SL(2) boundary sweep against 1/|cos(t pi/2)|."""
import csv
import math
import subprocess
import sys

exe = sys.argv[1]
out = subprocess.run(
    [exe, "sweep", "--n", "2", "--x", "1,-1", "--t-grid", "0.5,0.75,0.9,0.99,0.999", "--haar", "64"],
    check=True, capture_output=True, text=True).stdout
rows = list(csv.DictReader(out.splitlines()))
assert len(rows) == 5, rows
for r in rows:
    t = float(r["t"])
    expect = 1.0 / abs(math.cos(t * math.pi / 2))
    got = float(r["sup_alpha"])
    assert abs(got / expect - 1) < 0.01, (t, got, expect)
print("ok", len(rows))
