#!/usr/bin/env python3
"""Write a starter set of input files for the rigidlab CLI."""

import argparse
import math
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from rigidlab.fileio import write_json

TWO_PI = 2 * math.pi

INPUTS = {
    # rigid triangle in the plane
    "triangle.json": {
        "dimension": 2,
        "points": [[0, 0], [1, 0], [0, 1]],
        "edges": [[0, 1], [0, 2], [1, 2]],
    },
    # K_{3,3} on six rational points of the circle x^2 + y^2 = 25: flexible,
    # one stress, vertices on a quadric
    "circle_k33.json": {
        "dimension": 2,
        "A": [[5, 0], [4, 3], [3, 4]],
        "B": [[0, 5], [-3, 4], [-4, 3]],
    },
    # generic K_{3,3}: infinitesimally rigid
    "generic_k33.json": {
        "dimension": 2,
        "A": [["1/2", 2], [3, "-1/3"], [-2, 1]],
        "B": [[1, 1], ["-5/2", "7/4"], [4, -3]],
    },
    # sides on two orthogonal lines: the spanning hypothesis fails
    "axes_k22.json": {
        "dimension": 2,
        "A": [["1", "0"], ["2", "0"]],
        "B": [["0", "1"], ["0", "2"]],
    },
    "circle_r1.json": {
        "kind": "helix", "dimension": 2, "blocks": [[1.0, 1.0, 0.0]],
        "w": [], "offset": [0.0, 0.0], "domain": [0.0, TWO_PI],
    },
    "circle_r2.json": {
        "kind": "helix", "dimension": 2, "blocks": [[2.0, 1.0, 0.0]],
        "w": [], "offset": [0.0, 0.0], "domain": [0.0, TWO_PI],
    },
    "helix_a.json": {
        "kind": "helix", "dimension": 3, "blocks": [[1.0, 1.4, 0.2]],
        "w": [0.8], "offset": [0.0, 0.0, 0.0], "domain": [0.0, 9.0],
    },
    "helix_b.json": {
        "kind": "helix", "dimension": 3, "blocks": [[1.7, 1.4, 1.0]],
        "w": [0.8], "offset": [0.0, 0.0, 0.6], "domain": [0.0, 9.0],
    },
    "line_y0.json": {"kind": "polynomial", "coeffs": [[0, 1], [0]], "domain": [0.0, 1.0]},
    "line_y1.json": {"kind": "polynomial", "coeffs": [[0, 1], [1]], "domain": [0.0, 1.0]},
    "moment.json": {
        "kind": "polynomial", "coeffs": [[0, 1], [0, 0, 1], [0, 0, 0, 1]],
        "domain": [-1.0, 1.0],
    },
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="inputs", help="destination directory")
    args = parser.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)
    for name, obj in INPUTS.items():
        path = os.path.join(args.out_dir, name)
        write_json(path, obj)
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
