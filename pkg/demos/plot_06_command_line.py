"""
The command line
================

Instances are JSON files. ``hybridmat eval`` prints the result, ``check``
compares it with a plain dense computation, and ``fuzz`` runs many random
instances. Here we drive it from Python.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

instance = {
    "operation": "add",
    "env": {"n": 2, "m": 3, "q": 1, "r": 2},
    "operands": [
        {"name": "A", "row_cuts": [0, "q", "n"], "col_cuts": [0, "r", "m"],
         "blocks": {"1,1": [[1, 2]], "1,2": [["1/2"]], "2,1": [[-3, 4]], "2,2": [[5]]}},
        {"name": "B", "row_cuts": [0, "q", "n"], "col_cuts": [0, "r", "m"]},
    ],
    # B lists no blocks, so its entries are generated from the seed
    "seed": 11,
}

# with every block generated the cuts can move, so a sweep makes sense
seeded = {
    "operation": "mul",
    "seed": 7,
    "env": {"n": 4, "m": 4, "p": 3, "q": 1, "r": 3, "s": 2, "t": 2},
    "operands": [
        {"name": "A", "row_cuts": [0, "q", "n"], "col_cuts": [0, "r", "m"]},
        {"name": "B", "row_cuts": [0, "s", "m"], "col_cuts": [0, "t", "p"]},
    ],
}


def hybridmat(*args):
    proc = subprocess.run([sys.executable, "-m", "hybridmat", *args], capture_output=True, text=True)
    print("$ hybridmat", " ".join(args), f"  (exit {proc.returncode})")
    print(proc.stdout or proc.stderr)


with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "inst.json"
    path.write_text(json.dumps(instance))
    hybridmat("eval", str(path), "--format", "text")
    hybridmat("check", str(path))
    path = Path(tmp) / "seeded.json"
    path.write_text(json.dumps(seeded))
    hybridmat("check", str(path), "--sweep", "q=0..4,r=0..4,s=0..4,t=0..3")

hybridmat("fuzz", "--n", "50", "--seed", "1")
