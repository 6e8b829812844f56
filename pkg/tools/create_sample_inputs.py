import sys
import os
import json
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.discrete_hardy import WeightedSequence
from core.weights import weight_from_dict

# name -> JSON body; the CLI's worked examples use these.
SAMPLES = {
    "seq_ones.json": {"a": [1, 1, 1], "lam": [1, 1, 1]},
    "seq_1_2.json": {"a": [1, 2], "lam": [1, 1]},
    "seq_1_3.json": {"a": [1, 3]},
    "constant.json": {"kind": "piecewise", "breakpoints": [0, 1], "values": [1]},
    "linear.json": {"kind": "power", "a": 1.0, "origin": 0.0},
    "sqrt.json": {"kind": "power", "a": 0.5, "origin": 0.0},
    "step_1_2.json": {"kind": "piecewise", "breakpoints": [0, 0.5, 1], "values": [1, 2], "monotone": True},
    "step_2_1_2.json": {"kind": "piecewise", "breakpoints": [0, 0.25, 0.75, 1], "values": [2, 1, 2]},
}

def random_monotone_weight(rng: np.random.Generator, cells: int):
    inner = np.sort(rng.uniform(0.0, 1.0, cells - 1)).tolist()
    values = np.sort(10.0 ** rng.uniform(-1.0, 1.0, cells)).tolist()
    return {
        "kind": "piecewise",
        "breakpoints": [0.0] + inner + [1.0],
        "values": values,
        "monotone": True,
    }

def write_json(path, body):
    # Validate before writing so a bad sample never lands on disk.
    if "kind" in body:
        weight_from_dict(body)
    else:
        WeightedSequence.from_dict(body)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(body, f, indent=2)

def main():
    if len(sys.argv) not in (2, 3):
        print(f"Usage: {sys.argv[0]} /path/to/dir [N random monotone weights]")
        sys.exit(1)

    out_dir = sys.argv[1]
    count = int(sys.argv[2]) if len(sys.argv) == 3 else 0

    if not os.path.isdir(out_dir):
        print(f"Error: {out_dir} is not a directory")
        sys.exit(1)

    for name, body in SAMPLES.items():
        write_json(Path(out_dir) / name, body)
    print(f"Wrote {len(SAMPLES)} sample inputs")

    rng = np.random.default_rng(0)
    for i in range(count):
        body = random_monotone_weight(rng, int(rng.integers(1, 21)))
        write_json(Path(out_dir) / f"monotone_{i:03d}.json", body)
        if (i + 1) % 100 == 0:
            print(f"Created {i+1} weights...")

    print("Done")

if __name__ == '__main__':
    main()
