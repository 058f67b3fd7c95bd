"""Two sweeps with the same seed (and different thread counts) are byte-identical."""
import pathlib
import subprocess
import sys
import tempfile

exe = sys.argv[1]
outs = []
with tempfile.TemporaryDirectory() as d:
    for i, threads in enumerate(["1", "3"]):
        path = pathlib.Path(d) / f"run{i}.json"
        subprocess.run([exe, "sweep", "--n", "3", "--seed", "7", "--t-grid", "0.5,0.9,0.99", "--haar", "64",
                        "--threads", threads, "--format", "json", "--out", str(path)], check=True)
        outs.append(path.read_bytes())
assert len(outs[0]) > 100, outs[0]
assert outs[0] == outs[1], "outputs differ"
print("identical", len(outs[0]), "bytes")
